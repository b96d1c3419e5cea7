#include <gtest/gtest.h>

#include "gbs/lingroup.hpp"
#include "support.hpp"

using namespace gbs;

namespace {

QMatrix transpose(const QMatrix& a) {
  QMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

QMatrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    QMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) = Rat(static_cast<long>(rng() % 7) - 3);
    if (determinant(p) != 0) return p;
  }
}

// Random signed permutation matrix: generates a finite group.
QMatrix signed_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, perm[i]) = Rat((rng() & 1) ? 1 : -1);
  return m;
}

QMatrix random_upper(std::mt19937_64& rng, std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = Rat(1 + static_cast<long>(rng() % 3));
    for (std::size_t j = i + 1; j < n; ++j) m(i, j) = Rat(static_cast<long>(rng() % 5) - 2);
  }
  return m;
}

void expect_invariant(const std::vector<QMatrix>& gens, const QMatrix& q) {
  EXPECT_TRUE(positive_definite(q));
  EXPECT_EQ(q, transpose(q));
  for (const auto& g : gens) EXPECT_EQ(transpose(g) * q * g, q);
}

}  // namespace

TEST(LinGroup, FreeWordEvaluation) {
  const std::vector<QMatrix> gens{QMatrix{{1, 2}, {0, 1}}, QMatrix{{1, 0}, {2, 1}}};
  EXPECT_TRUE(eval_free_word(gens, {}).is_identity());
  EXPECT_TRUE(eval_free_word(gens, {1, -1}).is_identity());
  EXPECT_EQ(eval_free_word(gens, {1, 2}), gens[0] * gens[1]);
  EXPECT_EQ(eval_free_word(gens, {-2}), inverse(gens[1]));
}

TEST(LinGroup, PositiveDefiniteness) {
  EXPECT_TRUE(positive_definite(QMatrix{{2, 1}, {1, 2}}));
  EXPECT_FALSE(positive_definite(QMatrix{{1, 2}, {2, 1}}));
  EXPECT_FALSE(positive_definite(QMatrix{{0, 0}, {0, 1}}));
}

TEST(LinGroup, InvariantFormsOfConjugatedFiniteGroups) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    const QMatrix p = random_invertible(rng, n), pinv = inverse(p);
    std::vector<QMatrix> gens;
    for (int k = 0; k < 2; ++k) gens.push_back(p * signed_permutation(rng, n) * pinv);
    const auto q = invariant_form(gens);
    ASSERT_TRUE(q.has_value());
    expect_invariant(gens, *q);
  }
}

TEST(LinGroup, NoInvariantFormForUnipotents) {
  EXPECT_FALSE(invariant_form({QMatrix{{1, 1}, {0, 1}}}).has_value());
  EXPECT_FALSE(invariant_form({QMatrix{{2, 0}, {0, 1}}}).has_value());
  EXPECT_EQ(invariant_form_dimension({QMatrix::identity(3)}), 6u);
  EXPECT_EQ(invariant_form_dimension({QMatrix{{-1, 0}, {0, 1}}}), 2u);
}

TEST(LinGroup, Triangularizability) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    const QMatrix p = random_invertible(rng, n), pinv = inverse(p);
    std::vector<QMatrix> gens{p * random_upper(rng, n) * pinv, p * random_upper(rng, n) * pinv};
    EXPECT_TRUE(simultaneously_triangularizable(gens));
  }
  EXPECT_FALSE(simultaneously_triangularizable({QMatrix{{1, 1}, {0, 1}}, QMatrix{{1, 0}, {1, 1}}}));
  // A rotation has no rational invariant line but is still triangularizable over C.
  EXPECT_TRUE(simultaneously_triangularizable({QMatrix{{0, -1}, {1, 0}}}));
  EXPECT_FALSE(simultaneously_triangularizable({QMatrix{{0, -1}, {1, 0}}, QMatrix{{1, 0}, {0, -1}}}));
}

TEST(LinGroup, SchottkyCertificates) {
  const std::vector<QMatrix> gens{QMatrix{{1, 2}, {0, 1}}, QMatrix{{1, 0}, {2, 1}}};
  const auto cert = schottky_search(gens, 3);
  ASSERT_TRUE(cert.has_value());
  EXPECT_TRUE(verify_schottky(gens, *cert));

  SchottkyCertificate same = *cert;
  same.word2 = same.word1;
  EXPECT_FALSE(verify_schottky(gens, same));
  SchottkyCertificate wide = *cert;
  wide.epsilon = Rat(4);
  EXPECT_FALSE(verify_schottky(gens, wide));

  // Finite and triangular groups contain no free subgroup.
  EXPECT_FALSE(schottky_search({QMatrix{{0, -1}, {1, 0}}, QMatrix{{1, 0}, {0, -1}}}, 3).has_value());
  EXPECT_FALSE(schottky_search({QMatrix{{2, 1}, {0, 1}}, QMatrix{{1, 3}, {0, 1}}}, 3).has_value());
}
