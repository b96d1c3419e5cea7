#pragma once

// The modular homomorphism mu : G -> Q^n ⋊ GL_n(Q).

#include <cstddef>
#include <vector>

#include "gbs/graph.hpp"
#include "gbs/numeric.hpp"

namespace gbs {

struct Word;
struct PathWord;
class NormalForm;

/// x -> linear * x + translation.
struct AffineMap {
  QMatrix linear;
  QVector translation;

  static AffineMap identity(std::size_t n);
  static AffineMap translation_by(const QVector& b);
  static AffineMap linear_map(const QMatrix& a);

  bool is_identity() const;
  AffineMap inverse() const;
  QVector apply(const QVector& x) const;

  friend AffineMap operator*(const AffineMap& f, const AffineMap& g);
  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

struct ModularData {
  /// tau[v], with tau[base] = I.
  std::vector<QMatrix> tau;
  /// mu(t_e) for the stable edges, in Gbs::stable_edges() order.
  std::vector<QMatrix> mu_stable;
};

/// 0 when e is off the tree path from the base to v, +1 when it lies on it
/// pointing away from the base, -1 when pointing towards it. e must be a tree
/// edge in the orientation.
int epsilon(const Gbs& g, std::size_t v, std::size_t e);

ModularData compute_modular(const Gbs& g);

/// tau_{e-} sigma_{bar e} sigma_e^{-1} tau_{e+}^{-1} for any oriented edge
/// (the identity on tree edges).
QMatrix mu_edge(const ModularData& md, const Gbs& g, std::size_t e);

AffineMap mu_eval(const ModularData& md, const Gbs& g, const Word& w);
/// Elements act as translations by tau_v z, edges by mu_edge.
AffineMap mu_eval(const ModularData& md, const Gbs& g, const PathWord& p);
AffineMap mu_eval(const ModularData& md, const Gbs& g, const NormalForm& nf);

}  // namespace gbs
