#include "gbs/lingroup.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>

namespace gbs {

QMatrix eval_free_word(const std::vector<QMatrix>& gens, const FreeWord& w) {
  if (gens.empty()) throw std::invalid_argument("eval_free_word: no generators");
  QMatrix m = QMatrix::identity(gens[0].rows());
  std::vector<std::optional<QMatrix>> inv(gens.size());
  for (int x : w) {
    auto j = static_cast<std::size_t>(std::abs(x) - 1);
    if (x > 0) {
      m = m * gens.at(j);
    } else {
      if (!inv.at(j)) inv[j] = inverse(gens[j]);
      m = m * *inv[j];
    }
  }
  return m;
}

bool positive_definite(const QMatrix& q) {
  for (std::size_t k = 1; k <= q.rows(); ++k) {
    QMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = q(i, j);
    if (determinant(minor) <= 0) return false;
  }
  return true;
}

namespace {

std::vector<QMatrix> invariant_form_basis(const std::vector<QMatrix>& gens) {
  const std::size_t n = gens.empty() ? 0 : gens[0].rows();
  // unknowns q_ij, i <= j
  std::vector<std::pair<std::size_t, std::size_t>> vars;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) vars.emplace_back(i, j);
  auto var_index = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(std::find(vars.begin(), vars.end(), std::make_pair(i, j)) - vars.begin());
  };
  std::vector<QVector> rows;
  for (const auto& g : gens) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) {
        // (g^T Q g)_{ab} - Q_{ab}
        QVector row(vars.size());
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) row[var_index(i, j)] += g(i, a) * g(j, b);
        row[var_index(a, b)] -= 1;
        rows.push_back(std::move(row));
      }
  }
  QMatrix sys(rows.size(), vars.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < vars.size(); ++c) sys(r, c) = rows[r][c];
  std::vector<QMatrix> basis;
  for (const auto& v : nullspace(sys)) {
    QMatrix q(n, n);
    for (std::size_t k = 0; k < vars.size(); ++k) {
      q(vars[k].first, vars[k].second) = v[k];
      q(vars[k].second, vars[k].first) = v[k];
    }
    basis.push_back(std::move(q));
  }
  return basis;
}

}  // namespace

std::size_t invariant_form_dimension(const std::vector<QMatrix>& gens) { return invariant_form_basis(gens).size(); }

namespace {

QMatrix combine(const std::vector<QMatrix>& basis, const std::vector<Rat>& c) {
  QMatrix q = c[0] * basis[0];
  for (std::size_t k = 1; k < basis.size(); ++k) q = q + c[k] * basis[k];
  return q;
}

Eigen::MatrixXd dense(const QMatrix& m) {
  Eigen::MatrixXd d(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).get_d();
  return d;
}

// Coefficients of a form in the span with the largest smallest eigenvalue,
// by projected supergradient ascent on the unit sphere of coefficients.
std::vector<double> ascend_min_eigenvalue(const std::vector<QMatrix>& basis) {
  std::vector<Eigen::MatrixXd> b;
  for (const auto& q : basis) b.push_back(dense(q));
  const std::size_t k = b.size();
  // Start from the Frobenius projection of the identity.
  Eigen::MatrixXd gram(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) {
    rhs(static_cast<Eigen::Index>(i)) = b[i].trace();
    for (std::size_t j = 0; j < k; ++j)
      gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (b[i].array() * b[j].array()).sum();
  }
  Eigen::VectorXd c = gram.ldlt().solve(rhs);
  if (c.norm() == 0) c = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(k));
  c.normalize();
  Eigen::VectorXd best = c;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int it = 0; it < 400; ++it) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(b[0].rows(), b[0].cols());
    for (std::size_t i = 0; i < k; ++i) s += c(static_cast<Eigen::Index>(i)) * b[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    const double value = es.eigenvalues()(0);
    if (value > best_value) {
      best_value = value;
      best = c;
    }
    const Eigen::VectorXd v = es.eigenvectors().col(0);
    Eigen::VectorXd grad(static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) grad(static_cast<Eigen::Index>(i)) = v.dot(b[i] * v);
    c += (0.5 / std::sqrt(1.0 + it)) * grad;
    c.normalize();
  }
  return {best.data(), best.data() + best.size()};
}

}  // namespace

std::optional<QMatrix> invariant_form(const std::vector<QMatrix>& gens) {
  auto basis = invariant_form_basis(gens);
  if (basis.empty()) return std::nullopt;
  std::vector<QMatrix> candidates;
  candidates.push_back(combine(basis, std::vector<Rat>(basis.size(), Rat(1))));
  candidates.insert(candidates.end(), basis.begin(), basis.end());
  for (const auto& q : candidates) {
    if (positive_definite(q)) return q;
    QMatrix neg = Rat(-1) * q;
    if (positive_definite(neg)) return neg;
  }
  // Rounded numeric optimum, checked exactly.
  const std::vector<double> c = ascend_min_eigenvalue(basis);
  for (long scale : {1L << 10, 1L << 20}) {
    std::vector<Rat> r;
    for (double x : c) r.push_back(make_rat(std::lround(x * static_cast<double>(scale)), scale));
    QMatrix q = combine(basis, r);
    if (positive_definite(q)) return q;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Triangularisation

namespace {

/// Incrementally maintained reduced row echelon basis of a subspace of Q^N.
class Span {
 public:
  bool add(QVector v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rat c = v[pivots_[r]];
      if (c == 0) continue;
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * rows_[r][k];
    }
    std::size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size()) return false;
    Rat inv = 1 / v[p];
    for (auto& x : v) x *= inv;
    for (auto& row : rows_) {
      const Rat c = row[p];
      if (c == 0) continue;
      for (std::size_t k = 0; k < row.size(); ++k) row[k] -= c * v[k];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }
  std::size_t size() const { return rows_.size(); }
  const std::vector<QVector>& rows() const { return rows_; }

 private:
  std::vector<QVector> rows_;
  std::vector<std::size_t> pivots_;
};

QVector flatten(const QMatrix& m) {
  QVector v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

/// Closure of span(seeds) under left and right multiplication by gens.
std::vector<QMatrix> bimodule_closure(const std::vector<QMatrix>& seeds, const std::vector<QMatrix>& gens,
                                      std::size_t n) {
  Span span;
  std::vector<QMatrix> basis;
  std::vector<QMatrix> queue;
  for (const auto& s : seeds)
    if (span.add(flatten(s))) queue.push_back(s);
  while (!queue.empty()) {
    QMatrix x = std::move(queue.back());
    queue.pop_back();
    basis.push_back(x);
    for (const auto& g : gens) {
      for (QMatrix y : {QMatrix(g * x), QMatrix(x * g)})
        if (span.add(flatten(y))) queue.push_back(std::move(y));
    }
  }
  (void)n;
  return basis;
}

}  // namespace

bool simultaneously_triangularizable(const std::vector<QMatrix>& gens) {
  if (gens.size() <= 1) return true;
  const std::size_t n = gens[0].rows();
  std::vector<QMatrix> commutators;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      QMatrix c = gens[i] * gens[j] - gens[j] * gens[i];
      if (!c.is_zero()) commutators.push_back(std::move(c));
    }
  if (commutators.empty()) return true;
  std::vector<QMatrix> ideal = bimodule_closure(commutators, gens, n);
  // J^k = span{ x y : x in J^{k-1}, y in J }; nilpotent iff J^n = 0.
  std::vector<QMatrix> power = ideal;
  for (std::size_t k = 1; k < n && !power.empty(); ++k) {
    Span span;
    std::vector<QMatrix> next;
    for (const auto& x : power)
      for (const auto& y : ideal) {
        QMatrix p = x * y;
        if (span.add(flatten(p))) next.push_back(std::move(p));
      }
    power = std::move(next);
  }
  return power.empty();
}

// ---------------------------------------------------------------------------
// Schottky certificates

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd to_double(const QMatrix& m) {
  MatrixXd d(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).get_d();
  return d;
}

/// Real eigenvector for the eigenvalue of largest (or smallest) modulus when
/// that eigenvalue is real and strictly dominant.
std::optional<VectorXd> proximal_direction(const MatrixXd& m, bool largest) {
  Eigen::EigenSolver<MatrixXd> es(m);
  if (es.info() != Eigen::Success) return std::nullopt;
  const auto& ev = es.eigenvalues();
  const Eigen::Index n = ev.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) {
    return largest ? std::abs(ev[a]) > std::abs(ev[b]) : std::abs(ev[a]) < std::abs(ev[b]);
  });
  const auto top = ev[order[0]];
  if (std::abs(top.imag()) > 1e-12 * std::max(1.0, std::abs(top))) return std::nullopt;
  if (n > 1) {
    double a = std::abs(top), b = std::abs(ev[order[1]]);
    if (largest ? !(a > b * (1 + 1e-6)) : !(a * (1 + 1e-6) < b)) return std::nullopt;
  }
  VectorXd v = es.eigenvectors().col(order[0]).real();
  double scale = v.cwiseAbs().maxCoeff();
  if (!(scale > 0)) return std::nullopt;
  return VectorXd(v / scale);
}

QVector rationalize(const VectorXd& v) {
  constexpr double kDen = 1048576.0;  // 2^20
  QVector q(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    q[static_cast<std::size_t>(i)] = make_rat(static_cast<long>(std::llround(v[i] * kDen)), 1048576L);
  return q;
}

Rat dot(const QVector& a, const QVector& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat inf_norm(const QVector& v) {
  Rat m = 0;
  for (const auto& x : v) m = std::max<Rat>(m, abs(x));
  return m;
}

Rat one_norm(const QVector& v) {
  Rat s = 0;
  for (const auto& x : v) s += abs(x);
  return s;
}

Rat inf_operator_norm(const QMatrix& m) {
  Rat best = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) best = std::max(best, one_norm(m.row(i)));
  return best;
}

QVector row_times(const QVector& w, const QMatrix& m) {
  QVector out(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out[j] += w[i] * m(i, j);
  return out;
}

struct Cone {
  QVector v;
  QVector w;  // w.v = 1
  QMatrix p;  // I - v w^T
};

std::optional<Cone> make_cone(const QVector& v, const QVector& w_raw) {
  Rat s = dot(w_raw, v);
  if (s == 0) return std::nullopt;
  Cone c;
  c.v = v;
  c.w = w_raw;
  for (auto& x : c.w) x /= s;
  const std::size_t n = v.size();
  c.p = QMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c.p(i, j) -= v[i] * c.w[j];
  return c;
}

/// Every x in cone y (eps) lies outside cone x.
bool cones_disjoint(const Cone& x, const Cone& y, const Rat& eps) {
  Rat lhs = inf_norm(x.p * y.v) - eps * inf_operator_norm(x.p);
  Rat rhs = eps * (abs(dot(x.w, y.v)) + eps * one_norm(x.w));
  return lhs > rhs;
}

/// m maps cone y into cone x.
bool maps_into(const QMatrix& m, const Cone& x, const Cone& y, const Rat& eps) {
  QMatrix pm = x.p * m;
  QVector mv = m * y.v;
  QVector wm = row_times(x.w, m);
  Rat lhs = inf_norm(x.p * mv) + eps * inf_operator_norm(pm);
  Rat rhs = eps * (abs(dot(x.w, mv)) - eps * one_norm(wm));
  return lhs < rhs;
}

bool check_exact(const std::array<QMatrix, 4>& mats, const std::array<Cone, 4>& cones, const Rat& eps) {
  static constexpr std::array<std::size_t, 4> kInverse{1, 0, 3, 2};
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      if (a != b && !cones_disjoint(cones[a], cones[b], eps)) return false;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      if (b != kInverse[a] && !maps_into(mats[a], cones[a], cones[b], eps)) return false;
  return true;
}

// Double-precision mirror of check_exact used as a cheap filter.
struct ConeD {
  VectorXd v, w;
  MatrixXd p;
};

ConeD make_cone_d(const VectorXd& v, const VectorXd& w_raw) {
  ConeD c;
  c.v = v;
  c.w = w_raw / w_raw.dot(v);
  c.p = MatrixXd::Identity(v.size(), v.size()) - c.v * c.w.transpose();
  return c;
}

double op_inf(const MatrixXd& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

bool check_double(const std::array<MatrixXd, 4>& mats, const std::array<ConeD, 4>& cones, double eps) {
  static constexpr std::array<std::size_t, 4> kInverse{1, 0, 3, 2};
  const double margin = 1e-9;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      if (a == b) continue;
      const auto& x = cones[a];
      const auto& y = cones[b];
      double lhs = (x.p * y.v).cwiseAbs().maxCoeff() - eps * op_inf(x.p);
      double rhs = eps * (std::abs(x.w.dot(y.v)) + eps * x.w.cwiseAbs().sum());
      if (!(lhs > rhs + margin)) return false;
    }
  for (std::size_t a = 0; a < 4; ++a) {
    MatrixXd m = mats[a] / op_inf(mats[a]);
    for (std::size_t b = 0; b < 4; ++b) {
      if (b == kInverse[a]) continue;
      const auto& x = cones[a];
      const auto& y = cones[b];
      VectorXd mv = m * y.v;
      double lhs = (x.p * mv).cwiseAbs().maxCoeff() + eps * op_inf(x.p * m);
      double rhs = eps * (std::abs(x.w.dot(mv)) - eps * (x.w.transpose() * m).cwiseAbs().sum());
      if (!(lhs + margin < rhs)) return false;
    }
  }
  return true;
}

struct Candidate {
  FreeWord word;
  MatrixXd m;
  VectorXd attract, attract_dual, repel, repel_dual;
};

std::optional<Candidate> biproximal(const FreeWord& w, const QMatrix& m) {
  MatrixXd d = to_double(m);
  auto a = proximal_direction(d, true);
  auto ad = proximal_direction(d.transpose(), true);
  auto r = proximal_direction(d, false);
  auto rd = proximal_direction(d.transpose(), false);
  if (!a || !ad || !r || !rd) return std::nullopt;
  return Candidate{w, d, *a, *ad, *r, *rd};
}

MatrixXd normalized_power(const MatrixXd& m, int k) {
  MatrixXd r = MatrixXd::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) {
    r = r * m;
    r /= op_inf(r);
  }
  return r;
}

constexpr std::array<int, 7> kPowers{1, 2, 4, 8, 16, 32, 64};
constexpr int kEpsilonSteps = 10;  // 1/2 .. 1/1024
constexpr std::size_t kMaxCandidates = 64;

}  // namespace

bool verify_schottky(const std::vector<QMatrix>& gens, const SchottkyCertificate& c) {
  if (c.power < 1 || c.epsilon <= 0) return false;
  QMatrix w1 = eval_free_word(gens, c.word1);
  QMatrix w2 = eval_free_word(gens, c.word2);
  std::array<QMatrix, 4> mats{power(w1, c.power), power(w1, -c.power), power(w2, c.power), power(w2, -c.power)};
  std::array<Cone, 4> cones;
  for (std::size_t i = 0; i < 4; ++i) {
    if (c.attracting[i].size() != w1.rows() || c.dual[i].size() != w1.rows()) return false;
    auto cone = make_cone(c.attracting[i], c.dual[i]);
    if (!cone) return false;
    cones[i] = std::move(*cone);
  }
  return check_exact(mats, cones, c.epsilon);
}

std::optional<SchottkyCertificate> schottky_search(const std::vector<QMatrix>& gens, int depth,
                                                   std::size_t attempt_cap) {
  if (gens.empty()) return std::nullopt;
  std::vector<int> letters;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    letters.push_back(static_cast<int>(j) + 1);
    letters.push_back(-static_cast<int>(j) - 1);
  }
  std::vector<Candidate> candidates;
  for (int len = 1; len <= depth && candidates.size() < kMaxCandidates; ++len) {
    FreeWord w;
    std::function<void(int)> extend = [&](int remaining) {
      if (candidates.size() >= kMaxCandidates) return;
      if (remaining == 0) {
        if (auto c = biproximal(w, eval_free_word(gens, w))) candidates.push_back(std::move(*c));
        return;
      }
      for (int x : letters) {
        if (!w.empty() && w.back() == -x) continue;
        w.push_back(x);
        extend(remaining - 1);
        w.pop_back();
      }
    };
    extend(len);
  }

  std::size_t attempts = 0;
  for (std::size_t j = 1; j < candidates.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const auto& a = candidates[i];
      const auto& b = candidates[j];
      std::array<ConeD, 4> cones_d{make_cone_d(a.attract, a.attract_dual), make_cone_d(a.repel, a.repel_dual),
                                   make_cone_d(b.attract, b.attract_dual), make_cone_d(b.repel, b.repel_dual)};
      bool finite = true;
      for (const auto& c : cones_d) finite = finite && c.w.allFinite() && c.p.allFinite();
      if (!finite) continue;
      for (int k : kPowers) {
        std::array<MatrixXd, 4> mats_d{normalized_power(a.m, k), normalized_power(a.m.inverse(), k),
                                       normalized_power(b.m, k), normalized_power(b.m.inverse(), k)};
        for (int s = 1; s <= kEpsilonSteps; ++s) {
          if (++attempts > attempt_cap) return std::nullopt;
          double eps = std::ldexp(1.0, -s);
          if (!check_double(mats_d, cones_d, eps)) continue;
          SchottkyCertificate cert;
          cert.word1 = a.word;
          cert.word2 = b.word;
          cert.power = k;
          cert.epsilon = make_rat(1, 1L << s);
          cert.attracting = {rationalize(a.attract), rationalize(a.repel), rationalize(b.attract),
                             rationalize(b.repel)};
          cert.dual = {rationalize(a.attract_dual), rationalize(a.repel_dual), rationalize(b.attract_dual),
                       rationalize(b.repel_dual)};
          if (verify_schottky(gens, cert)) return cert;
        }
      }
    }
  return std::nullopt;
}

}  // namespace gbs
