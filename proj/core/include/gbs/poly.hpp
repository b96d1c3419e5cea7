#pragma once

// Univariate polynomials over Q, characteristic polynomials and exact
// classification of root moduli relative to the unit circle.

#include <string>
#include <vector>

#include "gbs/numeric.hpp"

namespace gbs {

/// Dense polynomial, coefficients in increasing degree. The zero polynomial
/// has no coefficients; otherwise the leading coefficient is nonzero.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rat> coeffs);
  static QPoly monomial(const Rat& c, std::size_t degree);
  static QPoly constant(const Rat& c) { return monomial(c, 0); }
  /// x - root
  static QPoly linear(const Rat& root);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  Rat coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rat(0); }
  const Rat& leading() const { return coeffs_.back(); }

  Rat operator()(const Rat& x) const;
  QPoly monic() const;
  QPoly derivative() const;
  /// x^deg · p(1/x); drops trailing zero roots.
  QPoly reversal() const;

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const Rat& s, const QPoly& a);
  friend QPoly operator-(const QPoly& a);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.coeffs_ == b.coeffs_; }

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rat> coeffs_;
};

struct DivMod {
  QPoly quotient;
  QPoly remainder;
};

DivMod divmod(const QPoly& a, const QPoly& b);
/// Monic gcd (zero if both are zero).
QPoly gcd(const QPoly& a, const QPoly& b);
/// Exact quotient; caller guarantees divisibility.
QPoly exact_div(const QPoly& a, const QPoly& b);

/// Yun square-free factorisation: p = lc · Π f_i^i, returned as f_1, f_2, ...
/// (entries may be the constant 1).
std::vector<QPoly> squarefree_decomposition(const QPoly& p);

/// Number of distinct real roots of a nonzero polynomial in the open
/// interval (lo, hi), via a Sturm sequence. Endpoints must not be roots.
int count_real_roots(const QPoly& p, const Rat& lo, const Rat& hi);

/// Cauchy index of num/den over the whole real line.
int cauchy_index(const QPoly& num, const QPoly& den);

/// det(x I - A), computed division-free (Berkowitz) on the integer matrix
/// obtained by clearing denominators.
QPoly char_poly(const QMatrix& a);

/// Evaluate p at a square matrix.
QMatrix evaluate(const QPoly& p, const QMatrix& a);

struct RootModuli {
  int count_lt1 = 0;
  int count_eq1 = 0;
  int count_gt1 = 0;
  bool certified = true;
  bool precision_exhausted = false;

  friend bool operator==(const RootModuli&, const RootModuli&) = default;
};

/// Counts roots (with multiplicity) of modulus < 1, = 1, > 1. Throws
/// DomainError for the zero polynomial.
RootModuli classify_root_moduli(const QPoly& p);

/// The factor of p collecting exactly its unit-circle roots (with
/// multiplicity), when that factor is rational and certified by the same
/// analysis as classify_root_moduli. Empty optional when the unit-circle
/// roots are not cut out by a rational factor this analysis can isolate.
std::optional<QPoly> unit_circle_factor(const QPoly& p);

}  // namespace gbs
