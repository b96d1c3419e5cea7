#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <random>

#include "gbs/poly.hpp"

using namespace gbs;

namespace {

QPoly poly(std::vector<long> c) {
  std::vector<Rat> q;
  for (long x : c) q.emplace_back(x);
  return QPoly(q);
}

struct Counts {
  int lt = 0, eq = 0, gt = 0;
};

// Factors with known root moduli.
struct Factor {
  QPoly p;
  Counts c;
};

const std::vector<Factor>& factor_table() {
  static const std::vector<Factor> table{
      {poly({-2, 1}), {0, 0, 1}},          // 2
      {poly({1, 2}), {1, 0, 0}},           // -1/2
      {poly({-1, 1}), {0, 1, 0}},          // 1
      {poly({1, 1}), {0, 1, 0}},           // -1
      {poly({1, 0, 1}), {0, 2, 0}},        // ±i
      {poly({1, 1, 1}), {0, 2, 0}},        // primitive cube roots
      {poly({1, -1, 1}), {0, 2, 0}},       // primitive sixth roots
      {poly({1, -3, 1}), {1, 0, 1}},       // golden pair
      {poly({2, 0, 1}), {0, 0, 2}},        // ±i sqrt 2
      {poly({1, 0, 0, 2}), {3, 0, 0}},     // 2x^3 + 1
      {poly({1, 1, 1, 1, 1}), {0, 4, 0}},  // fifth roots
      {poly({1, -1, 1, 1}), {2, 0, 1}},    // no unit roots
      {poly({4, 0, 1}), {0, 0, 2}},        // ±2i
      {poly({0, 1}), {1, 0, 0}},           // 0
  };
  return table;
}

// Numerical oracle through companion-matrix eigenvalues.
std::optional<Counts> numeric_counts(const QPoly& p) {
  const int d = p.degree();
  if (d < 1) return Counts{};
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
  const double lead = p.leading().get_d();
  for (int i = 1; i < d; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) c(i, d - 1) = -p.coeff(static_cast<std::size_t>(i)).get_d() / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
  Counts out;
  for (int i = 0; i < d; ++i) {
    const double m = std::abs(es.eigenvalues()[i]);
    const double gap = std::abs(m - 1.0);
    if (gap > 1e-4 && gap < 1e-2) return std::nullopt;
    if (gap <= 1e-4)
      ++out.eq;
    else if (m < 1)
      ++out.lt;
    else
      ++out.gt;
  }
  return out;
}

}  // namespace

TEST(Poly, ArithmeticAndDivision) {
  const QPoly a = poly({-1, 0, 1});
  const QPoly b = poly({1, 1});
  const auto [q, r] = divmod(a, b);
  EXPECT_EQ(q, poly({-1, 1}));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(gcd(poly({-1, 0, 1}), poly({1, 2, 1})), poly({1, 1}));
  EXPECT_EQ(poly({1, 2, 3}).reversal(), poly({3, 2, 1}));
  EXPECT_EQ(poly({1, 2, 3}).derivative(), poly({2, 6}));
}

TEST(Poly, SquarefreeDecompositionReassembles) {
  const QPoly p = poly({-1, 1}) * poly({-1, 1}) * poly({1, 0, 1}) * poly({2, 1}) * poly({2, 1}) * poly({2, 1});
  const auto parts = squarefree_decomposition(p);
  QPoly prod = QPoly::constant(p.leading());
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t k = 0; k <= i; ++k) prod = prod * parts[i];
  EXPECT_EQ(prod, p);
}

TEST(Poly, SturmCounts) {
  EXPECT_EQ(count_real_roots(poly({-2, 0, 1}), Rat(-2), Rat(2)), 2);
  EXPECT_EQ(count_real_roots(poly({-2, 0, 1}), Rat(0), Rat(2)), 1);
  EXPECT_EQ(count_real_roots(poly({1, 0, 1}), Rat(-10), Rat(10)), 0);
}

TEST(Poly, CharPolyAgreesWithDeterminants) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    QMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = make_rat(static_cast<long>(rng() % 9) - 4, 1 + rng() % 3);
    const QPoly chi = char_poly(a);
    ASSERT_EQ(chi.degree(), static_cast<int>(n));
    for (long x = -2; x <= static_cast<long>(n) + 1; ++x) {
      QMatrix shifted = Rat(x) * QMatrix::identity(n) - a;
      EXPECT_EQ(chi(Rat(x)), determinant(shifted));
    }
    // Cayley-Hamilton.
    EXPECT_TRUE(evaluate(chi, a).is_zero());
  }
}

TEST(Poly, GoldenClassifications) {
  EXPECT_EQ(classify_root_moduli(poly({-2, 1})), (RootModuli{0, 0, 1}));
  EXPECT_EQ(classify_root_moduli(poly({1, -2, 1})), (RootModuli{0, 2, 0}));
  EXPECT_EQ(classify_root_moduli(poly({1, -3, 1})), (RootModuli{1, 0, 1}));
  EXPECT_EQ(classify_root_moduli(poly({1, 0, 1})), (RootModuli{0, 2, 0}));
  EXPECT_THROW(classify_root_moduli(QPoly()), Error);
}

TEST(Poly, ProductsOfKnownFactors) {
  std::mt19937_64 rng(11);
  const auto& table = factor_table();
  for (int trial = 0; trial < 150; ++trial) {
    QPoly p = QPoly::constant(Rat(1 + static_cast<long>(rng() % 3)));
    Counts expected;
    const int k = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < k; ++i) {
      const auto& f = table[rng() % table.size()];
      p = p * f.p;
      expected.lt += f.c.lt;
      expected.eq += f.c.eq;
      expected.gt += f.c.gt;
    }
    const RootModuli r = classify_root_moduli(p);
    EXPECT_TRUE(r.certified);
    EXPECT_EQ(r.count_lt1, expected.lt) << p.str();
    EXPECT_EQ(r.count_eq1, expected.eq) << p.str();
    EXPECT_EQ(r.count_gt1, expected.gt) << p.str();
  }
}

TEST(Poly, RandomPolynomialsAgreeWithEigenvalues) {
  std::mt19937_64 rng(13);
  int compared = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 6);
    std::vector<long> c(static_cast<std::size_t>(d) + 1);
    for (auto& x : c) x = static_cast<long>(rng() % 11) - 5;
    if (c.back() == 0) c.back() = 1;
    const QPoly p = poly(c);
    const auto oracle = numeric_counts(p);
    if (!oracle) continue;
    ++compared;
    const RootModuli r = classify_root_moduli(p);
    EXPECT_EQ(r.count_lt1, oracle->lt) << p.str();
    EXPECT_EQ(r.count_eq1, oracle->eq) << p.str();
    EXPECT_EQ(r.count_gt1, oracle->gt) << p.str();
  }
  EXPECT_GT(compared, 250);
}

TEST(Poly, UnitCircleFactor) {
  const QPoly p = poly({1, 0, 1}) * poly({-2, 1}) * poly({1, 1}) * poly({1, 1});
  auto u = unit_circle_factor(p);
  ASSERT_TRUE(u.has_value());
  EXPECT_EQ(u->monic(), (poly({1, 0, 1}) * poly({1, 1}) * poly({1, 1})).monic());
  auto none = unit_circle_factor(poly({-2, 1}));
  ASSERT_TRUE(none.has_value());
  EXPECT_EQ(none->degree(), 0);
}
