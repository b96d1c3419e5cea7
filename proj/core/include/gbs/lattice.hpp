#pragma once

// Integer lattices M·Z^n: Hermite normal form, canonical coset
// representatives and exact membership.

#include <optional>
#include <utility>
#include <vector>

#include "gbs/numeric.hpp"

namespace gbs {

struct HermiteResult {
  ZMatrix h;  ///< lower triangular, positive diagonal, off-diagonal reduced
  ZMatrix u;  ///< unimodular, h = u * m
};

/// Row-style Hermite normal form of a square integer matrix. Singular input
/// is allowed and yields zero diagonal entries.
HermiteResult hermite_normal_form(const ZMatrix& m);

/// The sublattice spanned by the columns of a nonsingular integer matrix,
/// with precomputed data for fast residue and membership queries.
class SubLattice {
 public:
  explicit SubLattice(ZMatrix m);

  std::size_t dim() const { return m_.rows(); }
  const ZMatrix& matrix() const { return m_; }
  /// |det M|, the index of the lattice in Z^n.
  const Integer& index() const { return index_; }
  bool unimodular() const { return index_ == 1; }

  /// Canonical representative of v + M·Z^n inside the Hermite residue box.
  ZVector residue(const ZVector& v) const;

  /// Splits v = r + M·a with r = residue(v).
  std::pair<ZVector, ZVector> decompose(const ZVector& v) const;

  /// x with M·x = v when v lies in the lattice.
  std::optional<ZVector> solve(const ZVector& v) const;

  /// Apply M.
  ZVector image(const ZVector& a) const { return m_ * a; }

  /// All residue-box vectors, lexicographic in box coordinates.
  std::vector<ZVector> representatives() const;

  /// Diagonal of the triangular basis (the box side lengths).
  const ZVector& box() const { return diag_; }

 private:
  ZMatrix m_;
  ZMatrix adj_;
  Integer det_;
  Integer index_;
  ZMatrix basis_;  // upper triangular, columns span M·Z^n
  ZVector diag_;
};

/// Canonical transversal of Z^n / M·Z^n. Throws SingularMatrix when det M = 0.
std::vector<ZVector> coset_reps(const ZMatrix& m);

/// x with M·x = v if v ∈ M·Z^n. Throws SingularMatrix when det M = 0.
std::optional<ZVector> solve_membership(const ZMatrix& m, const ZVector& v);

}  // namespace gbs
