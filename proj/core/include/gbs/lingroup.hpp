#pragma once

// Finitely generated subgroups of GL_n(Q): invariant quadratic forms,
// simultaneous triangularisability, and projective Schottky certificates.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "gbs/numeric.hpp"
#include "gbs/words.hpp"

namespace gbs {

/// Product of generators along a free word (entry j+1 is gens[j], -(j+1) its
/// inverse).
QMatrix eval_free_word(const std::vector<QMatrix>& gens, const FreeWord& w);

/// Sylvester's criterion.
bool positive_definite(const QMatrix& q);

/// A positive definite symmetric Q with g^T Q g = Q for every generator, if
/// one of the deterministic candidates drawn from the solution space works.
std::optional<QMatrix> invariant_form(const std::vector<QMatrix>& gens);

/// Dimension of the solution space {Q symmetric : g^T Q g = Q for all g}.
std::size_t invariant_form_dimension(const std::vector<QMatrix>& gens);

/// Whether the matrices are simultaneously triangularisable over C, decided
/// exactly: the ideal generated by all commutators in the algebra they
/// generate must be nilpotent.
bool simultaneously_triangularizable(const std::vector<QMatrix>& gens);

/// Projective ping-pong data for M1 = W1^k, M2 = W2^k. For each of M1, M1^-1,
/// M2, M2^-1 (in that order) the cone {x : |P x|_inf <= eps |w.x|} with
/// P = I - v w^T around the attracting direction v. The cones are pairwise
/// disjoint and each M maps every cone except that of M^-1 into its own, so
/// <M1, M2> is free and discrete.
struct SchottkyCertificate {
  FreeWord word1;
  FreeWord word2;
  int power = 1;
  Rat epsilon;
  std::array<QVector, 4> attracting;
  std::array<QVector, 4> dual;
};

constexpr std::size_t kDefaultSchottkyAttempts = 20'000;

/// Numerical candidates (bi-proximal words up to `depth`), each verified
/// exactly before being returned.
std::optional<SchottkyCertificate> schottky_search(const std::vector<QMatrix>& gens, int depth,
                                                   std::size_t attempt_cap = kDefaultSchottkyAttempts);

/// Exact replay of every inequality of the certificate.
bool verify_schottky(const std::vector<QMatrix>& gens, const SchottkyCertificate& c);

}  // namespace gbs
