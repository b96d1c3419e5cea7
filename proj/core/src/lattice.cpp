#include "gbs/lattice.hpp"

#include <utility>

namespace gbs {

namespace {

void row_combine(ZMatrix& m, std::size_t i, std::size_t j, const Integer& a, const Integer& b,
                 const Integer& c, const Integer& d) {
  // (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j)
  for (std::size_t k = 0; k < m.cols(); ++k) {
    Integer x = m(i, k);
    Integer y = m(j, k);
    m(i, k) = a * x + b * y;
    m(j, k) = c * x + d * y;
  }
}

void row_axpy(ZMatrix& m, std::size_t target, std::size_t source, const Integer& q) {
  for (std::size_t k = 0; k < m.cols(); ++k) m(target, k) -= q * m(source, k);
}

}  // namespace

HermiteResult hermite_normal_form(const ZMatrix& m) {
  if (!m.square()) throw std::invalid_argument("hermite_normal_form: square matrix expected");
  const std::size_t n = m.rows();
  ZMatrix h = m;
  ZMatrix u = ZMatrix::identity(n);

  // Column c gets its pivot on row c; rows above c are cleared in column c.
  for (std::size_t c = n; c-- > 0;) {
    for (std::size_t i = 0; i < c; ++i) {
      if (h(i, c) == 0) continue;
      if (h(c, c) == 0) {
        row_combine(h, c, i, 0, 1, 1, 0);
        row_combine(u, c, i, 0, 1, 1, 0);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(c, c).get_mpz_t(), h(i, c).get_mpz_t());
      Integer p = h(c, c) / g;
      Integer q = h(i, c) / g;
      // [s t; -q p] has determinant s p + t q = 1.
      row_combine(h, c, i, s, t, -q, p);
      row_combine(u, c, i, s, t, -q, p);
    }
    if (h(c, c) < 0) {
      for (std::size_t k = 0; k < n; ++k) {
        h(c, k) = -h(c, k);
        u(c, k) = -u(c, k);
      }
    }
  }
  // Reduce entries below each positive pivot.
  for (std::size_t c = n; c-- > 0;) {
    if (h(c, c) == 0) continue;
    for (std::size_t i = c + 1; i < n; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(c, c).get_mpz_t());
      if (q == 0) continue;
      row_axpy(h, i, c, q);
      row_axpy(u, i, c, q);
    }
  }
  return {std::move(h), std::move(u)};
}

SubLattice::SubLattice(ZMatrix m) : m_(std::move(m)) {
  if (!m_.square()) throw std::invalid_argument("SubLattice: square matrix expected");
  det_ = determinant(m_);
  if (det_ == 0) throw Error(ErrorCode::SingularMatrix, "lattice matrix is singular");
  index_ = abs(det_);
  adj_ = adjugate(m_);
  // Row HNF of M^T is lower triangular; its transpose is an upper
  // triangular column basis of the same lattice.
  basis_ = hermite_normal_form(m_.transpose()).h.transpose();
  diag_.resize(dim());
  for (std::size_t k = 0; k < dim(); ++k) diag_[k] = basis_(k, k);
}

ZVector SubLattice::residue(const ZVector& v) const {
  ZVector r = v;
  Integer q;
  for (std::size_t k = dim(); k-- > 0;) {
    mpz_fdiv_q(q.get_mpz_t(), r[k].get_mpz_t(), diag_[k].get_mpz_t());
    if (q == 0) continue;
    for (std::size_t i = 0; i <= k; ++i) r[i] -= q * basis_(i, k);
  }
  return r;
}

std::optional<ZVector> SubLattice::solve(const ZVector& v) const {
  ZVector x = adj_ * v;
  for (auto& xi : x) {
    if (!mpz_divisible_p(xi.get_mpz_t(), det_.get_mpz_t())) return std::nullopt;
    mpz_divexact(xi.get_mpz_t(), xi.get_mpz_t(), det_.get_mpz_t());
  }
  return x;
}

std::pair<ZVector, ZVector> SubLattice::decompose(const ZVector& v) const {
  ZVector r = residue(v);
  ZVector diff = v - r;
  if (is_zero(diff)) return {std::move(r), zero_zvector(dim())};
  auto a = solve(diff);
  // v - residue(v) always lies in the lattice.
  return {std::move(r), std::move(*a)};
}

std::vector<ZVector> SubLattice::representatives() const {
  std::vector<ZVector> reps;
  ZVector cur = zero_zvector(dim());
  while (true) {
    reps.push_back(cur);
    std::size_t k = dim();
    while (k-- > 0) {
      cur[k] += 1;
      if (cur[k] < diag_[k]) break;
      cur[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return reps;
}

std::vector<ZVector> coset_reps(const ZMatrix& m) { return SubLattice(m).representatives(); }

std::optional<ZVector> solve_membership(const ZMatrix& m, const ZVector& v) {
  return SubLattice(m).solve(v);
}

}  // namespace gbs
