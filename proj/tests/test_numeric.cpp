#include <gtest/gtest.h>

#include <random>
#include <set>

#include "gbs/lattice.hpp"
#include "gbs/numeric.hpp"

using namespace gbs;

namespace {

std::mt19937_64 rng(0x1234);

long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

ZMatrix random_zmatrix(std::size_t n, long bound) {
  ZMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = uniform(-bound, bound);
  return m;
}

ZMatrix random_nonsingular(std::size_t n, long bound) {
  for (;;) {
    ZMatrix m = random_zmatrix(n, bound);
    if (determinant(m) != 0) return m;
  }
}

ZVector random_zvector(std::size_t n, long bound) {
  ZVector v(n);
  for (auto& x : v) x = uniform(-bound, bound);
  return v;
}

// Cofactor expansion along the first row.
Integer laplace(const ZMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    ZMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != c) minor(i - 1, k++) = m(i, j);
    Integer term = m(0, c) * laplace(minor);
    total += (c % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

}  // namespace

TEST(Numeric, RationalsAreCanonical) {
  Rat r = make_rat(6, -4);
  EXPECT_EQ(r.get_num(), -3);
  EXPECT_EQ(r.get_den(), 2);
  EXPECT_EQ(to_string(make_rat(4, 2)), "2");
}

TEST(Numeric, DeterminantMatchesCofactorExpansion) {
  for (int trial = 0; trial < 200; ++trial) {
    const ZMatrix m = random_zmatrix(static_cast<std::size_t>(uniform(1, 5)), 6);
    EXPECT_EQ(determinant(m), laplace(m)) << m;
    EXPECT_EQ(determinant(to_rational(m)), Rat(laplace(m)));
  }
}

TEST(Numeric, InverseAndAdjugate) {
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(1, 4));
    const ZMatrix m = random_nonsingular(n, 5);
    const QMatrix q = to_rational(m);
    EXPECT_TRUE((q * inverse(q)).is_identity());
    EXPECT_TRUE((inverse(q) * q).is_identity());
    const ZMatrix adj = adjugate(m);
    EXPECT_EQ(to_rational(m * adj), Rat(determinant(m)) * QMatrix::identity(n));
  }
}

TEST(Numeric, SingularInverseThrows) {
  try {
    inverse(QMatrix{{1, 2}, {2, 4}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMatrix);
  }
}

TEST(Numeric, PowersAreConsistent) {
  const QMatrix a{{2, 1}, {1, 1}};
  EXPECT_TRUE(power(a, 0).is_identity());
  EXPECT_EQ(power(a, 3), a * a * a);
  EXPECT_TRUE((power(a, 5) * power(a, -5)).is_identity());
}

TEST(Numeric, NullspaceRankNullity) {
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = static_cast<std::size_t>(uniform(1, 4)), cols = static_cast<std::size_t>(uniform(1, 5));
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(-2, 2);
    const auto kernel = nullspace(m);
    EXPECT_EQ(rank(m) + kernel.size(), cols);
    for (const auto& v : kernel) EXPECT_TRUE(is_zero(m * v));
  }
}

TEST(Numeric, SolveRecoversVector) {
  const QMatrix m{{2, 1, 0}, {0, 3, 1}, {1, 0, 4}};
  const QVector x{make_rat(1, 2), Rat(-3), Rat(7)};
  EXPECT_EQ(solve(m, m * x), x);
}

TEST(Lattice, HermiteNormalForm) {
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(1, 4));
    const ZMatrix m = random_nonsingular(n, 6);
    const auto [h, u] = hermite_normal_form(m);
    EXPECT_EQ(h, u * m);
    EXPECT_EQ(abs(determinant(u)), 1);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_GT(h(i, i), 0);
      for (std::size_t j = i + 1; j < n; ++j) EXPECT_EQ(h(i, j), 0);
    }
  }
}

TEST(Lattice, ResidueIsACosetInvariant) {
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(1, 3));
    const SubLattice lat(random_nonsingular(n, 4));
    const ZVector v = random_zvector(n, 20);
    const ZVector shifted = v + lat.image(random_zvector(n, 5));
    EXPECT_EQ(lat.residue(v), lat.residue(shifted));
    const auto [r, a] = lat.decompose(v);
    EXPECT_EQ(r + lat.image(a), v);
    EXPECT_EQ(lat.residue(r), r);
  }
}

TEST(Lattice, RepresentativesFormATransversal) {
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(1, 3));
    const ZMatrix m = random_nonsingular(n, 3);
    const SubLattice lat(m);
    const auto reps = lat.representatives();
    EXPECT_EQ(Integer(static_cast<long>(reps.size())), abs(determinant(m)));
    std::set<std::string> seen;
    for (const auto& r : reps) {
      EXPECT_EQ(lat.residue(r), r);
      EXPECT_TRUE(seen.insert(to_string(r)).second);
    }
    EXPECT_EQ(coset_reps(m), reps);
  }
}

TEST(Lattice, Membership) {
  const ZMatrix m{{2, 0}, {0, 3}};
  EXPECT_EQ(solve_membership(m, zvector({4, 9})), zvector({2, 3}));
  EXPECT_FALSE(solve_membership(m, zvector({1, 0})).has_value());
  EXPECT_THROW(solve_membership(ZMatrix{{1, 1}, {1, 1}}, zvector({0, 0})), Error);
}
