#pragma once

// Explicit embeddings of G into products of trees, Euclidean space, free
// groups, the hyperbolic plane and horospherical spaces, with the target
// distances, properness profiles and an empirical compression estimator.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gbs/modular.hpp"
#include "gbs/tree.hpp"
#include "gbs/words.hpp"

namespace gbs {

/// Upper half-plane distance 2 asinh(|z - w| / (2 sqrt(Im z Im w))). Throws
/// DomainError unless both imaginary parts are positive.
double hyperbolic_distance(std::complex<double> z, std::complex<double> w);

/// Word distance in a free group, |x| + |y| - 2 |common prefix|.
std::size_t free_distance(const FreeWord& x, const FreeWord& y);

/// A point (v, t) of V ⋊ R with A expanding on V.
struct HoroPoint {
  std::vector<double> v;
  long t = 0;
};

enum class EmbeddingCase { Generic, DOneSplit, NOneHyperbolic };
const char* to_string(EmbeddingCase c);
EmbeddingCase parse_embedding_case(std::string_view s);  ///< generic|d1|n1

/// Coordinates of one element. Which components are set depends on the case:
///   Generic         tree, translation, free
///   NOneHyperbolic  tree, free, hyperbolic
///   DOneSplit       tree, expanding, contracting
struct EmbeddedPoint {
  TreeVertex tree;
  std::vector<double> translation;
  FreeWord free;
  std::complex<double> hyperbolic{0.0, 1.0};
  HoroPoint expanding;
  HoroPoint contracting;
};

class EmbeddingMap {
 public:
  /// Throws NotApplicable when the case's hypotheses are not certified
  /// (DOneSplit: d = 1 and no eigenvalue of modulus 1; NOneHyperbolic: n = 1)
  /// and PrecisionExhausted when the spectral projector does not converge to
  /// `tolerance`.
  EmbeddingMap(const Gbs& g, EmbeddingCase c, double tolerance = 1e-9);

  EmbeddingCase kind() const { return kind_; }
  const Gbs& gbs() const { return *g_; }
  const ModularData& modular() const { return md_; }

  EmbeddedPoint embed(const NormalForm& nf) const;
  EmbeddedPoint embed(const Word& w) const;

  /// l^p combination of the component distances (p >= 1). For DOneSplit the
  /// horospherical parts are quasi-metrics
  /// D((v,t),(v',t')) = |t - t'| + log(1 + |A^-m (v - v')|) with m = min(t, t')
  /// on the expanding side (max on the contracting one).
  double distance(const EmbeddedPoint& x, const EmbeddedPoint& y, double p = 1.0) const;
  std::vector<double> component_distances(const EmbeddedPoint& x, const EmbeddedPoint& y) const;

  /// Row-major projector onto the contracting subspace (DOneSplit only).
  const std::vector<double>& contracting_projector() const { return projector_; }

 private:
  double horo(const HoroPoint& x, const HoroPoint& y, bool expanding) const;

  const Gbs* g_;
  EmbeddingCase kind_;
  ModularData md_;
  std::size_t n_ = 0;
  std::vector<double> projector_;
  std::vector<double> a_, a_inv_;  ///< row-major mu(t) and its inverse
  std::vector<double> apply_power(long k, std::vector<double> v) const;
};

/// For R = 0..r_max, the least target distance between the image of the
/// identity and the image of an element of word length exactly R.
std::vector<double> properness_profile(const EmbeddingMap& map, int r_max, double p = 1.0,
                                      std::size_t cap = kDefaultBallCap);

struct CompressionEstimate {
  int radius = 0;
  double p = 2.0;
  std::uint64_t seed = 0;
  bool sampled = false;
  std::size_t pair_count = 0;
  /// rho[r] = least target distance over sampled pairs at G-distance >= r,
  /// r = 1..radius (index 0 unused).
  std::vector<double> rho;
  int fit_from = 1;       ///< smallest r in the log-log fit
  double exponent = 0.0;  ///< log-log slope, clamped to [0, 1]
  double raw_slope = 0.0;
  double standard_error = 0.0;
  double residual_rms = 0.0;
  /// rho(r) ~ lower_slope * r + lower_intercept.
  double lower_slope = 0.0;
  double lower_intercept = 0.0;
  double linear_r2 = 0.0;
  /// max target distance / G-distance over the sample.
  double upper_lipschitz = 0.0;
  /// Multiplicative and additive constants, when the linear fit holds.
  std::optional<double> qi_multiplicative;
  std::optional<double> qi_additive;

  std::string csv() const;
};

constexpr std::size_t kDefaultPairCap = 1'000'000;
constexpr std::uint64_t kDefaultSeed = 20240601;

/// Samples all pairs of ball(radius / 2) (a seeded uniform sample beyond
/// pair_cap) together with (1, y) for every y in ball(radius), so that every
/// G-distance is read exactly off ball(radius). Target distances combine the
/// components in l^p.
CompressionEstimate estimate_compression(const EmbeddingMap& map, int radius, double p = 2.0,
                                         std::uint64_t seed = kDefaultSeed,
                                         std::size_t pair_cap = kDefaultPairCap, std::size_t ball_cap = kDefaultBallCap);

}  // namespace gbs
