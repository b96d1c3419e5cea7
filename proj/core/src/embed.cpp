#include "gbs/embed.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "gbs/poly.hpp"

namespace gbs {

double hyperbolic_distance(std::complex<double> z, std::complex<double> w) {
  if (!(z.imag() > 0) || !(w.imag() > 0))
    throw Error(ErrorCode::DomainError, "hyperbolic_distance: points must lie in the upper half-plane");
  return 2.0 * std::asinh(std::abs(z - w) / (2.0 * std::sqrt(z.imag() * w.imag())));
}

std::size_t free_distance(const FreeWord& x, const FreeWord& y) {
  std::size_t common = 0;
  while (common < x.size() && common < y.size() && x[common] == y[common]) ++common;
  return x.size() + y.size() - 2 * common;
}

const char* to_string(EmbeddingCase c) {
  switch (c) {
    case EmbeddingCase::Generic: return "generic";
    case EmbeddingCase::DOneSplit: return "d1";
    case EmbeddingCase::NOneHyperbolic: return "n1";
  }
  return "?";
}

EmbeddingCase parse_embedding_case(std::string_view s) {
  if (s == "generic") return EmbeddingCase::Generic;
  if (s == "d1") return EmbeddingCase::DOneSplit;
  if (s == "n1") return EmbeddingCase::NOneHyperbolic;
  throw Error(ErrorCode::BadParams, "unknown embedding case '" + std::string(s) + "' (generic|d1|n1)");
}

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;

MatrixXd to_eigen(const QMatrix& m) {
  MatrixXd d(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).get_d();
  return d;
}

std::vector<double> row_major(const MatrixXd& m) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  return out;
}

std::vector<double> mat_vec(const std::vector<double>& m, const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i] += m[i * n + j] * v[j];
  return out;
}

double norm2(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

/// Trapezoidal rule for (1 / 2 pi i) ∮_{|z|=1} (z - A)^-1 dz, refined until
/// two successive approximations agree and the result is idempotent.
MatrixXd riesz_inside(const MatrixXd& a, double tolerance) {
  const Eigen::Index n = a.rows();
  const MatrixXcd ac = a.cast<std::complex<double>>();
  const MatrixXcd id = MatrixXcd::Identity(n, n);
  MatrixXd previous = MatrixXd::Zero(n, n);
  for (int samples = 64; samples <= (1 << 16); samples *= 2) {
    MatrixXcd sum = MatrixXcd::Zero(n, n);
    for (int k = 0; k < samples; ++k) {
      const std::complex<double> z = std::polar(1.0, 2.0 * M_PI * k / samples);
      sum += z * (z * id - ac).inverse();
    }
    MatrixXd p = (sum / static_cast<double>(samples)).real();
    const double scale = std::max(1.0, p.cwiseAbs().maxCoeff());
    if ((p - previous).cwiseAbs().maxCoeff() < tolerance * scale &&
        (p * p - p).cwiseAbs().maxCoeff() < tolerance * scale)
      return p;
    previous = std::move(p);
  }
  throw Error(ErrorCode::PrecisionExhausted, "spectral projector did not converge");
}

long exponent_sum(const FreeWord& w) {
  long t = 0;
  for (int x : w) t += x > 0 ? 1 : -1;
  return t;
}

}  // namespace

EmbeddingMap::EmbeddingMap(const Gbs& g, EmbeddingCase c, double tolerance)
    : g_(&g), kind_(c), md_(compute_modular(g)), n_(static_cast<std::size_t>(g.n())) {
  switch (c) {
    case EmbeddingCase::Generic:
      break;
    case EmbeddingCase::NOneHyperbolic:
      if (g.n() != 1) throw Error(ErrorCode::NotApplicable, "the hyperbolic embedding needs n = 1");
      break;
    case EmbeddingCase::DOneSplit: {
      if (g.rank_d() != 1) throw Error(ErrorCode::NotApplicable, "the split embedding needs d = 1");
      const QMatrix& a = md_.mu_stable[0];
      const RootModuli rm = classify_root_moduli(char_poly(a));
      if (!rm.certified || rm.count_eq1 != 0)
        throw Error(ErrorCode::NotApplicable, "mu(t) has an eigenvalue of modulus 1");
      const MatrixXd ad = to_eigen(a);
      a_ = row_major(ad);
      a_inv_ = row_major(to_eigen(inverse(a)));
      projector_ = row_major(riesz_inside(ad, tolerance));
      break;
    }
  }
}

std::vector<double> EmbeddingMap::apply_power(long k, std::vector<double> v) const {
  const auto& m = k >= 0 ? a_ : a_inv_;
  for (long i = 0; i < std::abs(k); ++i) v = mat_vec(m, v);
  return v;
}

EmbeddedPoint EmbeddingMap::embed(const NormalForm& nf) const {
  EmbeddedPoint pt;
  pt.tree = act(*g_, nf, base_vertex(*g_));
  const AffineMap mu = mu_eval(md_, *g_, nf);
  std::vector<double> b;
  for (const auto& x : mu.translation) b.push_back(x.get_d());
  switch (kind_) {
    case EmbeddingCase::Generic:
      pt.translation = std::move(b);
      pt.free = phi(*g_, nf);
      break;
    case EmbeddingCase::NOneHyperbolic:
      pt.free = phi(*g_, nf);
      pt.hyperbolic = {b[0], std::abs(mu.linear(0, 0).get_d())};
      break;
    case EmbeddingCase::DOneSplit: {
      const long t = exponent_sum(phi(*g_, nf));
      std::vector<double> minus = mat_vec(projector_, b);
      std::vector<double> plus(n_);
      for (std::size_t i = 0; i < n_; ++i) plus[i] = b[i] - minus[i];
      pt.expanding = {std::move(plus), t};
      pt.contracting = {std::move(minus), t};
      break;
    }
  }
  return pt;
}

EmbeddedPoint EmbeddingMap::embed(const Word& w) const { return embed(normal_form(*g_, w)); }

double EmbeddingMap::horo(const HoroPoint& x, const HoroPoint& y, bool expanding) const {
  std::vector<double> diff(n_);
  for (std::size_t i = 0; i < n_; ++i) diff[i] = x.v[i] - y.v[i];
  const long m = expanding ? std::min(x.t, y.t) : std::max(x.t, y.t);
  return static_cast<double>(std::abs(x.t - y.t)) + std::log1p(norm2(apply_power(-m, std::move(diff))));
}

std::vector<double> EmbeddingMap::component_distances(const EmbeddedPoint& x, const EmbeddedPoint& y) const {
  std::vector<double> c{static_cast<double>(gbs::distance(x.tree, y.tree))};
  switch (kind_) {
    case EmbeddingCase::Generic: {
      double s = 0;
      for (std::size_t i = 0; i < x.translation.size(); ++i) s += std::pow(x.translation[i] - y.translation[i], 2);
      c.push_back(std::sqrt(s));
      c.push_back(static_cast<double>(free_distance(x.free, y.free)));
      break;
    }
    case EmbeddingCase::NOneHyperbolic:
      c.push_back(static_cast<double>(free_distance(x.free, y.free)));
      c.push_back(hyperbolic_distance(x.hyperbolic, y.hyperbolic));
      break;
    case EmbeddingCase::DOneSplit:
      c.push_back(horo(x.expanding, y.expanding, true));
      c.push_back(horo(x.contracting, y.contracting, false));
      break;
  }
  return c;
}

double EmbeddingMap::distance(const EmbeddedPoint& x, const EmbeddedPoint& y, double p) const {
  if (!(p >= 1)) throw Error(ErrorCode::DomainError, "distance: p must be >= 1");
  double s = 0;
  for (double c : component_distances(x, y)) s += std::pow(c, p);
  return std::pow(s, 1.0 / p);
}

std::vector<double> properness_profile(const EmbeddingMap& map, int r_max, double p, std::size_t cap) {
  const Ball b = ball(map.gbs(), r_max, {}, cap);
  const EmbeddedPoint origin = map.embed(NormalForm::identity(map.gbs()));
  std::vector<double> profile(static_cast<std::size_t>(r_max) + 1, std::numeric_limits<double>::infinity());
  profile[0] = 0.0;
  for (std::size_t i = 1; i < b.size(); ++i) {
    auto& slot = profile[static_cast<std::size_t>(b.lengths()[i])];
    slot = std::min(slot, map.distance(origin, map.embed(b.elements()[i]), p));
  }
  return profile;
}

std::string CompressionEstimate::csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "r,rho\n";
  for (std::size_t r = 1; r < rho.size(); ++r) os << r << ',' << rho[r] << '\n';
  return os.str();
}

namespace {

struct LineFit {
  double slope = 0, intercept = 0, slope_se = 0, rms = 0, r2 = 0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  LineFit f;
  const double n = static_cast<double>(x.size());
  if (x.size() < 2) return f;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sse += std::pow(y[i] - f.slope * x[i] - f.intercept, 2);
  f.rms = std::sqrt(sse / n);
  f.r2 = syy > 0 ? 1.0 - sse / syy : 1.0;
  if (x.size() > 2) f.slope_se = std::sqrt(sse / (n - 2) / sxx);
  return f;
}

}  // namespace

CompressionEstimate estimate_compression(const EmbeddingMap& map, int radius, double p, std::uint64_t seed,
                                         std::size_t pair_cap, std::size_t ball_cap) {
  if (radius < 2) throw Error(ErrorCode::DomainError, "estimate_compression needs radius >= 2");
  const Gbs& g = map.gbs();
  const Ball b = ball(g, radius, {}, ball_cap);
  std::vector<EmbeddedPoint> points;
  points.reserve(b.size());
  for (const auto& nf : b.elements()) points.push_back(map.embed(nf));

  CompressionEstimate est;
  est.radius = radius;
  est.p = p;
  est.seed = seed;
  est.rho.assign(static_cast<std::size_t>(radius) + 1, std::numeric_limits<double>::infinity());
  // best[r]: least target distance at G-distance exactly r.
  std::vector<double> best(static_cast<std::size_t>(radius) + 1, std::numeric_limits<double>::infinity());

  auto record = [&](std::size_t i, std::size_t j, int dg) {
    if (dg <= 0) return;
    const double dt = map.distance(points[i], points[j], p);
    auto& slot = best[static_cast<std::size_t>(dg)];
    slot = std::min(slot, dt);
    est.upper_lipschitz = std::max(est.upper_lipschitz, dt / dg);
    ++est.pair_count;
  };

  for (std::size_t j = 1; j < b.size(); ++j) record(0, j, b.lengths()[j]);

  const int half = radius / 2;
  std::size_t inner = 0;
  while (inner < b.size() && b.lengths()[inner] <= half) ++inner;
  std::vector<NormalForm> inverses;
  inverses.reserve(inner);
  for (std::size_t i = 0; i < inner; ++i) inverses.push_back(inverse(g, b.elements()[i]));
  auto pair_distance = [&](std::size_t i, std::size_t j) {
    auto len = b.length_of(multiply(g, inverses[i], b.elements()[j]));
    if (!len) throw Error(ErrorCode::ResourceLimit, "pair distance outside the explored ball");
    return *len;
  };

  const std::size_t all_pairs = inner * (inner - 1) / 2;
  if (all_pairs <= pair_cap) {
    for (std::size_t i = 1; i < inner; ++i)
      for (std::size_t j = i + 1; j < inner; ++j) record(i, j, pair_distance(i, j));
  } else {
    est.sampled = true;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, inner - 1);
    for (std::size_t k = 0; k < pair_cap; ++k) {
      std::size_t i = pick(rng), j = pick(rng);
      if (i != j) record(i, j, pair_distance(i, j));
    }
  }

  double running = std::numeric_limits<double>::infinity();
  for (int r = radius; r >= 1; --r) {
    running = std::min(running, best[static_cast<std::size_t>(r)]);
    est.rho[static_cast<std::size_t>(r)] = running;
  }

  // Small radii carry the additive constants of the embedding; the log-log
  // fit uses r >= max(2, R/4) once that leaves three points.
  est.fit_from = std::max(2, (radius + 3) / 4);
  if (radius - est.fit_from < 2) est.fit_from = 1;
  std::vector<double> lx, ly, rx, ry;
  for (int r = 1; r <= radius; ++r) {
    const double v = est.rho[static_cast<std::size_t>(r)];
    if (!std::isfinite(v)) continue;
    rx.push_back(r);
    ry.push_back(v);
    if (v > 0 && r >= est.fit_from) {
      lx.push_back(std::log(static_cast<double>(r)));
      ly.push_back(std::log(v));
    }
  }
  const LineFit loglog = least_squares(lx, ly);
  est.raw_slope = loglog.slope;
  est.exponent = std::clamp(loglog.slope, 0.0, 1.0);
  est.standard_error = loglog.slope_se;
  est.residual_rms = loglog.rms;
  const LineFit lin = least_squares(rx, ry);
  est.lower_slope = lin.slope;
  est.lower_intercept = lin.intercept;
  est.linear_r2 = lin.r2;
  if (lin.slope > 0 && lin.r2 >= 0.9) {
    est.qi_multiplicative = std::max(est.upper_lipschitz, 1.0 / lin.slope);
    est.qi_additive = std::max(0.0, -lin.intercept);
  }
  return est;
}

}  // namespace gbs
