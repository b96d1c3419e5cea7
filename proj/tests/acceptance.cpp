// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status if
// any criterion fails.

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gbs/embed.hpp"
#include "gbs/poly.hpp"
#include "gbs/verdicts.hpp"
#include "support.hpp"

using namespace gbs;
using gbs::testing::Stopwatch;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome modular_golden() {
  Stopwatch clock;
  std::string bad;
  for (auto [m, n] : {std::pair{1L, 2L}, {2L, 3L}, {3L, 5L}}) {
    const Gbs g = builtin("bs", {m, n});
    const auto md = compute_modular(g);
    QMatrix expected(1, 1);
    expected(0, 0) = make_rat(n, m);
    if (md.mu_stable.size() != 1 || md.mu_stable[0] != expected)
      bad += " bs(" + std::to_string(m) + "," + std::to_string(n) + ")";
  }
  {
    const Gbs g = builtin("heisenberg");
    const auto md = compute_modular(g);
    if (md.mu_stable.size() != 1 || md.mu_stable[0] != to_rational(ZMatrix{{1, 1}, {0, 1}})) bad += " heisenberg";
  }
  {
    const Gbs g = builtin("z2-f2");
    const auto md = compute_modular(g);
    if (md.mu_stable.size() != 2 || md.mu_stable[0] != to_rational(ZMatrix{{1, 2}, {0, 1}}) ||
        md.mu_stable[1] != to_rational(ZMatrix{{1, 0}, {2, 1}}))
      bad += " z2-f2";
  }
  const double t = clock.seconds();
  return {bad.empty() && t < 1.0, (bad.empty() ? "all exact" : "mismatch:" + bad) + ", " + std::to_string(t) + " s"};
}

Outcome relation_preservation() {
  Stopwatch clock;
  std::mt19937_64 rng(0x5eed0002);
  std::size_t relations = 0, failures = 0;
  for (int k = 0; k < 200; ++k) {
    const Gbs g(gbs::testing::random_gbs_data(rng));
    const auto md = compute_modular(g);
    for (const auto& w : gbs::testing::defining_relations(g)) {
      ++relations;
      if (!mu_eval(md, g, w).is_identity()) ++failures;
    }
  }
  const double t = clock.seconds();
  return {failures == 0 && t < 30.0, std::to_string(relations) + " relations over 200 graphs, " +
                                         std::to_string(failures) + " failures, " + std::to_string(t) + " s"};
}

Outcome word_problem_oracle() {
  Stopwatch clock;
  std::size_t words = 0, trivial = 0, disagreements = 0;
  for (auto spec : {"bs:1,2", "bs:2,3"}) {
    const Gbs g = builtin_from_spec(spec);
    const auto md = compute_modular(g);
    gbs::testing::for_each_word(gbs::testing::bt_letters(g), 6, [&](const Word& w) {
      ++words;
      const bool nf_trivial = normal_form(g, w).is_identity();
      const bool oracle = mu_eval(md, g, w).is_identity() && gbs::testing::fixes_tree_ball(g, w, 8);
      trivial += nf_trivial;
      disagreements += nf_trivial != oracle;
    });
  }
  const double t = clock.seconds();
  return {disagreements == 0 && t < 120.0, std::to_string(words) + " words, " + std::to_string(trivial) +
                                               " trivial, " + std::to_string(disagreements) + " disagreements, " +
                                               std::to_string(t) + " s"};
}

Outcome amenability() {
  std::string bad;
  for (long n : {2L, 3L, 4L}) {
    auto v = decide_amenable(builtin("bs", {1, n}));
    if (v.status != AmenabilityVerdict::Status::Amenable || v.reason != AmenabilityVerdict::Reason::AscendingHNN)
      bad += " bs(1," + std::to_string(n) + ")";
  }
  for (auto spec : {"bs:2,3", "bs:3,5", "z2-f2"}) {
    const Gbs g = builtin_from_spec(spec);
    auto v = decide_amenable(g, 6);
    if (v.status != AmenabilityVerdict::Status::NonAmenable || !v.certificate || !verify_ping_pong(g, *v.certificate) ||
        v.certificate->first.size() > 6 || v.certificate->second.size() > 6)
      bad += std::string(" ") + spec;
  }
  if (decide_amenable(builtin("tree-amalgam")).status != AmenabilityVerdict::Status::Amenable)
    bad += " tree-amalgam";
  return {bad.empty(), bad.empty() ? "all verdicts and certificates replay" : "wrong:" + bad};
}

Outcome haagerup_table() {
  std::string bad;
  auto expect_yes = [&](const Gbs& g, const std::string& name) {
    auto h = haagerup_report(g);
    if (h.haagerup != Tri::Yes || h.weakly_amenable != Tri::Yes || h.lambda != 1) bad += " " + name;
  };
  expect_yes(builtin("bs", {2, 3}), "bs(2,3)");
  expect_yes(builtin("heisenberg"), "heisenberg");
  expect_yes(builtin("tree-amalgam"), "tree-amalgam");
  expect_yes(builtin("tree-amalgam", {2, 1, 1, 1}), "tree-amalgam(2,1,1,1)");
  expect_yes(parse_gbs("rank n = 2\nvertex v\n"), "Z^2");
  auto h = haagerup_report(builtin("z2-f2"));
  if (h.haagerup != Tri::No || h.weakly_amenable != Tri::No || h.lambda) bad += " z2-f2";
  return {bad.empty(), bad.empty() ? "table reproduced" : "wrong:" + bad};
}

Outcome distortion() {
  std::string bad;
  const Gbs bs12 = builtin("bs", {1, 2});
  auto d12 = distortion_report(compute_modular(bs12), bs12);
  if (d12.exp_distorted != Tri::Yes || !d12.certified || !d12.distal_dual_part.empty()) bad += " bs(1,2) verdict";
  // t^k b t^-k is a word of length 2k + 1 for b^(2^k).
  for (int k = 0; k <= 8; ++k) {
    Word conj;
    for (int i = 0; i < k; ++i) conj.letters.push_back(Letter::stable_letter(0, 1));
    conj.letters.push_back(Letter::gen(0, zvector({1})));
    for (int i = 0; i < k; ++i) conj.letters.push_back(Letter::stable_letter(0, -1));
    Word power{{Letter::gen(0, zvector({1L << k}))}};
    if (normal_form(bs12, conj) != normal_form(bs12, power) || conj.size() > static_cast<std::size_t>(2 * k + 1))
      bad += " |b^(2^" + std::to_string(k) + ")|";
  }
  const Gbs heis = builtin("heisenberg");
  auto dh = distortion_report(compute_modular(heis), heis);
  if (dh.exp_distorted != Tri::No || !dh.certified || dh.distal_dual_part.size() != 2) bad += " heisenberg";
  return {bad.empty(), bad.empty() ? "bs(1,2) distorted, heisenberg distal on the full dual" : "wrong:" + bad};
}

Outcome compression_values() {
  std::string bad;
  const Gbs bs23 = builtin("bs", {2, 3});
  const auto am = decide_amenable(bs23);
  const std::vector<std::pair<long, Rat>> expected{{1, Rat(1)}, {2, make_rat(1, 2)}, {4, make_rat(1, 2)}};
  for (const auto& [p, sharp] : expected) {
    auto c = compression_report(bs23, Rat(p), am);
    if (!c.applicable || c.alpha_p != Rat(1) || c.alpha_p_sharp != std::vector<Rat>{sharp})
      bad += " bs(2,3) p=" + std::to_string(p);
  }
  const Gbs bs12 = builtin("bs", {1, 2});
  for (long p : {1L, 2L, 4L}) {
    auto c = compression_report(bs12, Rat(p));
    if (!c.applicable || c.alpha_p != Rat(1) || c.alpha_p_sharp != std::vector<Rat>{Rat(1)})
      bad += " bs(1,2) p=" + std::to_string(p);
  }
  return {bad.empty(), bad.empty() ? "alpha_1# = 1, alpha_2# = alpha_4# = 1/2; bs(1,2) alpha_p# = 1" : "wrong:" + bad};
}

Outcome tree_geometry() {
  Stopwatch clock;
  const Gbs g = builtin("bs", {2, 3});
  const TreeVertex o = base_vertex(g);
  std::string bad;
  if (neighbors(g, o).size() != 5) bad += " degree";
  const TreeBall tb = tree_ball(g, o, 6);
  std::size_t expected = 5;
  for (int r = 1; r <= 6; ++r, expected *= 4)
    if (tb.sphere_size(r) != expected) bad += " S(" + std::to_string(r) + ")";
  const double t = clock.seconds();
  return {bad.empty() && t < 10.0,
          (bad.empty() ? "degree 5, spheres 5*4^(r-1) up to r = 6" : "wrong:" + bad) + ", " + std::to_string(t) + " s"};
}

Outcome hyperbolic_formula() {
  using C = std::complex<double>;
  const double a = std::abs(hyperbolic_distance(C(0, 1), C(2, 1)) - 2.0 * std::asinh(1.0));
  const double b = std::abs(hyperbolic_distance(C(0, 1), C(0, 4)) - std::log(4.0));
  char buf[96];
  std::snprintf(buf, sizeof buf, "errors %.3g and %.3g", a, b);
  return {a <= 1e-12 && b <= 1e-12, buf};
}

Outcome properness() {
  Stopwatch clock;
  const Gbs g = builtin("bs", {2, 3});
  const EmbeddingMap m(g, EmbeddingCase::Generic);
  const auto profile = properness_profile(m, 8);
  bool positive = true;
  for (int r = 1; r <= 8; ++r) positive = positive && profile[static_cast<std::size_t>(r)] > 0;
  bool monotone = true;
  double previous = 0;
  for (int r = 1; r <= 8; ++r) {
    double suffix_min = profile[static_cast<std::size_t>(r)];
    for (int s = r; s <= 8; ++s) suffix_min = std::min(suffix_min, profile[static_cast<std::size_t>(s)]);
    monotone = monotone && suffix_min >= previous;
    previous = suffix_min;
  }
  const double t = clock.seconds();
  std::string detail = "profile";
  for (int r = 1; r <= 8; ++r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " %.4g", profile[static_cast<std::size_t>(r)]);
    detail += buf;
  }
  return {positive && monotone && t < 120.0, detail + ", " + std::to_string(t) + " s"};
}

Outcome compression_estimate() {
  Stopwatch clock;
  const Gbs g = builtin("bs", {2, 3});
  const EmbeddingMap m(g, EmbeddingCase::Generic);
  const auto est = estimate_compression(m, 10, 2.0, kDefaultSeed);
  const double t = clock.seconds();
  char buf[160];
  std::snprintf(buf, sizeof buf, "exponent %.4f (slope %.4f +- %.4f), seed %llu, %zu pairs, %.2f s", est.exponent,
                est.raw_slope, 2 * est.standard_error, static_cast<unsigned long long>(est.seed), est.pair_count, t);
  return {est.exponent >= 0.7 && t < 300.0, buf};
}

Outcome root_moduli() {
  auto poly = [](std::vector<long> c) {
    std::vector<Rat> q;
    for (long x : c) q.emplace_back(x);
    return QPoly(q);
  };
  struct Case {
    std::vector<long> coeffs;
    int lt, eq, gt;
  };
  const std::vector<Case> cases{{{-2, 1}, 0, 0, 1}, {{1, -2, 1}, 0, 2, 0}, {{1, -3, 1}, 1, 0, 1}, {{1, 0, 1}, 0, 2, 0}};
  std::string bad;
  for (const auto& c : cases) {
    const RootModuli r = classify_root_moduli(poly(c.coeffs));
    if (!r.certified || r.count_lt1 != c.lt || r.count_eq1 != c.eq || r.count_gt1 != c.gt)
      bad += " " + poly(c.coeffs).str();
  }
  return {bad.empty(), bad.empty() ? "4 polynomials classified and certified" : "wrong:" + bad};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"modular map golden values", modular_golden},
      {"relation preservation (200 random graphs)", relation_preservation},
      {"word problem vs faithful oracle", word_problem_oracle},
      {"amenability verdicts", amenability},
      {"haagerup table", haagerup_table},
      {"distortion", distortion},
      {"compression report", compression_values},
      {"tree geometry", tree_geometry},
      {"hyperbolic formula", hyperbolic_formula},
      {"properness profile", properness},
      {"compression estimate", compression_estimate},
      {"root moduli classification", root_moduli},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
