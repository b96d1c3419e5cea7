#include "gbs/verdicts.hpp"

#include <algorithm>
#include <functional>

#include "gbs/poly.hpp"

namespace gbs {

const char* to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "unknown";
  }
  return "?";
}

const char* to_string(AmenabilityVerdict::Status s) {
  switch (s) {
    case AmenabilityVerdict::Status::Amenable: return "Amenable";
    case AmenabilityVerdict::Status::NonAmenable: return "NonAmenable";
    case AmenabilityVerdict::Status::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(AmenabilityVerdict::Reason r) {
  switch (r) {
    case AmenabilityVerdict::Reason::SingleVertexNoEdges: return "SingleVertexNoEdges";
    case AmenabilityVerdict::Reason::AscendingHNN: return "AscendingHNN";
    case AmenabilityVerdict::Reason::IndexTwoAmalgam: return "IndexTwoAmalgam";
  }
  return "?";
}

const char* to_string(ClosureVerdict::Status s) {
  switch (s) {
    case ClosureVerdict::Status::Amenable: return "Amenable";
    case ClosureVerdict::Status::NonAmenable: return "NonAmenable";
    case ClosureVerdict::Status::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(ClosureVerdict::Case c) {
  switch (c) {
    case ClosureVerdict::Case::DZero: return "DZero";
    case ClosureVerdict::Case::DOne: return "DOne";
    case ClosureVerdict::Case::NOne: return "NOne";
    case ClosureVerdict::Case::InvariantForm: return "InvariantForm";
    case ClosureVerdict::Case::Triangularizable: return "Triangularizable";
  }
  return "?";
}

// ---------------------------------------------------------------------------

AmenabilityVerdict decide_amenable(const Gbs& g, int depth) {
  AmenabilityVerdict v;
  const Gbs r = reduce_graph(g);
  auto amenable = [&](AmenabilityVerdict::Reason reason) {
    v.status = AmenabilityVerdict::Status::Amenable;
    v.reason = reason;
    return v;
  };
  if (r.edge_count() == 0) return amenable(AmenabilityVerdict::Reason::SingleVertexNoEdges);
  if (r.vertex_count() == 1 && r.edge_count() == 1 &&
      (r.sublattice(0).unimodular() || r.sublattice(1).unimodular()))
    return amenable(AmenabilityVerdict::Reason::AscendingHNN);
  if (r.vertex_count() == 2 && r.edge_count() == 1 && r.sublattice(0).index() == 2 && r.sublattice(1).index() == 2)
    return amenable(AmenabilityVerdict::Reason::IndexTwoAmalgam);

  v.depth = depth;
  try {
    if (auto cert = ping_pong_search(g, depth)) {
      v.status = AmenabilityVerdict::Status::NonAmenable;
      v.certificate = std::move(cert);
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ResourceLimit && e.code() != ErrorCode::RadiusTooSmall) throw;
    v.note = e.what();
  }
  return v;
}

ClosureVerdict closure_amenability(const ModularData& md, const Gbs& g, int depth) {
  ClosureVerdict v;
  auto amenable = [&](ClosureVerdict::Case c) {
    v.status = ClosureVerdict::Status::Amenable;
    v.rule = c;
    return v;
  };
  const std::size_t d = g.rank_d();
  if (d == 0) return amenable(ClosureVerdict::Case::DZero);
  if (d == 1) return amenable(ClosureVerdict::Case::DOne);
  if (g.n() == 1) return amenable(ClosureVerdict::Case::NOne);
  if (auto q = invariant_form(md.mu_stable)) {
    v.form = std::move(q);
    return amenable(ClosureVerdict::Case::InvariantForm);
  }
  if (simultaneously_triangularizable(md.mu_stable)) return amenable(ClosureVerdict::Case::Triangularizable);
  v.depth = depth;
  if (auto cert = schottky_search(md.mu_stable, depth)) {
    v.status = ClosureVerdict::Status::NonAmenable;
    v.certificate = std::move(cert);
  }
  return v;
}

HaagerupReport haagerup_report(const ModularData& md, const Gbs& g, int depth) {
  HaagerupReport h;
  h.closure = closure_amenability(md, g, depth);
  switch (h.closure.status) {
    case ClosureVerdict::Status::Amenable:
      h.haagerup = h.weakly_amenable = Tri::Yes;
      h.lambda = 1;
      break;
    case ClosureVerdict::Status::NonAmenable:
      h.haagerup = h.weakly_amenable = Tri::No;
      break;
    case ClosureVerdict::Status::Unknown:
      break;
  }
  return h;
}

HaagerupReport haagerup_report(const Gbs& g, int depth) { return haagerup_report(compute_modular(g), g, depth); }

// ---------------------------------------------------------------------------
// Distortion

namespace {

QMatrix dual_action(const QMatrix& m) { return inverse(m).transpose(); }

QMatrix stack(const std::vector<QMatrix>& blocks, std::size_t n) {
  std::size_t rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  QMatrix s(rows, n);
  std::size_t r = 0;
  for (const auto& b : blocks)
    for (std::size_t i = 0; i < b.rows(); ++i, ++r)
      for (std::size_t j = 0; j < n; ++j) s(r, j) = b(i, j);
  return s;
}

/// Matrix of m restricted to span(basis), or nothing if it is not invariant.
std::optional<QMatrix> restrict_to(const QMatrix& m, const std::vector<QVector>& basis) {
  const std::size_t n = m.rows();
  const std::size_t k = basis.size();
  QMatrix c(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    QVector image = m * basis[j];
    QMatrix aug(n, k + 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t b = 0; b < k; ++b) aug(i, b) = basis[b][i];
      aug(i, k) = image[i];
    }
    auto pivots = rref(aug);
    if (std::find(pivots.begin(), pivots.end(), k) != pivots.end()) return std::nullopt;
    for (std::size_t i = 0; i < k; ++i) c(i, j) = aug(i, k);
  }
  return c;
}

std::vector<QMatrix> words_up_to(const std::vector<QMatrix>& gens, int depth) {
  std::vector<QMatrix> out;
  FreeWord w;
  std::function<void()> rec = [&]() {
    if (!w.empty()) out.push_back(eval_free_word(gens, w));
    if (static_cast<int>(w.size()) == depth) return;
    for (std::size_t j = 0; j < gens.size(); ++j)
      for (int s : {1, -1}) {
        int x = s * static_cast<int>(j + 1);
        if (!w.empty() && w.back() == -x) continue;
        w.push_back(x);
        rec();
        w.pop_back();
      }
  };
  rec();
  return out;
}

}  // namespace

DistortionReport distortion_report(const ModularData& md, const Gbs& g) {
  DistortionReport r;
  const std::size_t n = static_cast<std::size_t>(g.n());
  auto full_dual = [&] {
    std::vector<QVector> basis;
    for (std::size_t i = 0; i < n; ++i) {
      QVector e(n);
      e[i] = 1;
      basis.push_back(std::move(e));
    }
    return basis;
  };
  auto settle = [&](std::vector<QVector> distal, const std::string& note) {
    r.exp_distorted = distal.empty() ? Tri::Yes : Tri::No;
    r.distal_dual_part = std::move(distal);
    r.certified = true;
    r.note = note;
    return r;
  };

  if (md.mu_stable.empty()) return settle(full_dual(), "mu(H_d) is trivial; the whole dual is distal");

  if (md.mu_stable.size() == 1) {
    const QMatrix a = dual_action(md.mu_stable[0]);
    const QPoly chi = char_poly(a);
    const RootModuli moduli = classify_root_moduli(chi);
    if (moduli.count_eq1 == 0)
      return settle({}, "no eigenvalue of modulus 1; the dual has no distal part");
    auto u = unit_circle_factor(chi);
    if (!u) {
      r.note = "modulus-1 characteristic subspace not isolated by a rational factor";
      return r;
    }
    return settle(nullspace(evaluate(*u, a)), "modulus-1 characteristic subspace of the dual action");
  }

  // Any invariant subspace of the dual on which the group is distal lies in
  // the modulus-1 characteristic subspace of every element.
  std::vector<QMatrix> kernels;
  for (const auto& m : words_up_to(md.mu_stable, kDistalityWordDepth)) {
    const QMatrix a = dual_action(m);
    const QPoly chi = char_poly(a);
    if (classify_root_moduli(chi).count_eq1 == 0)
      return settle({}, "an element without modulus-1 eigenvalues excludes any distal part");
    if (auto u = unit_circle_factor(chi)) kernels.push_back(evaluate(*u, a));
  }
  std::vector<QVector> candidate = kernels.empty() ? full_dual() : nullspace(stack(kernels, n));
  if (candidate.empty()) return settle({}, "modulus-1 characteristic subspaces intersect trivially");

  // The candidate is itself distal when it is invariant and the restricted
  // generators are simultaneously triangularisable with unimodular spectrum.
  std::vector<QMatrix> restricted;
  bool ok = true;
  for (const auto& m : md.mu_stable) {
    auto c = restrict_to(dual_action(m), candidate);
    if (!c) {
      ok = false;
      break;
    }
    const RootModuli rm = classify_root_moduli(char_poly(*c));
    if (rm.count_eq1 != static_cast<int>(candidate.size())) {
      ok = false;
      break;
    }
    restricted.push_back(std::move(*c));
  }
  if (ok && simultaneously_triangularizable(restricted))
    return settle(std::move(candidate), "invariant triangularisable subspace with unimodular spectrum");

  r.distal_dual_part = std::move(candidate);
  r.note = "bounded word test up to depth " + std::to_string(kDistalityWordDepth) +
           "; distal part not certified (upper bound reported)";
  return r;
}

// ---------------------------------------------------------------------------

CompressionReport compression_report(const Gbs& g, const Rat& p, const AmenabilityVerdict& amenable) {
  if (p < 1) throw Error(ErrorCode::DomainError, "compression exponents need p >= 1");
  CompressionReport c;
  const std::size_t d = g.rank_d();
  c.applicable = d == 0 || d == 1 || g.n() == 1;
  if (!c.applicable) {
    c.assumptions.push_back("requires d = 0, d = 1 or n = 1");
    return c;
  }
  c.assumptions.push_back(d == 0 ? "d = 0" : d == 1 ? "d = 1" : "n = 1");
  c.alpha_p = Rat(1);
  c.alpha_p_symbolic = "1";
  const Rat non_amenable = std::max<Rat>(Rat(1) / p, make_rat(1, 2));
  switch (amenable.status) {
    case AmenabilityVerdict::Status::Amenable:
      c.alpha_p_sharp = {Rat(1)};
      c.alpha_p_sharp_symbolic = "1";
      c.assumptions.push_back(std::string("amenable (") + to_string(*amenable.reason) + ")");
      break;
    case AmenabilityVerdict::Status::NonAmenable:
      c.alpha_p_sharp = {non_amenable};
      c.alpha_p_sharp_symbolic = "max{1/p, 1/2}";
      c.assumptions.push_back("non-amenable (ping-pong certificate)");
      break;
    case AmenabilityVerdict::Status::Unknown:
      c.alpha_p_sharp = {Rat(1), non_amenable};
      c.alpha_p_sharp_symbolic = "1 if amenable, max{1/p, 1/2} otherwise";
      c.assumptions.push_back("amenability unresolved");
      break;
  }
  return c;
}

CompressionReport compression_report(const Gbs& g, const Rat& p, int depth) {
  return compression_report(g, p, decide_amenable(g, depth));
}

StructureReport structure_report(const ModularData& md, const Gbs& g, const ClosureVerdict& closure) {
  StructureReport s;
  if (g.rank_d() <= 1) {
    s.free_by_amenable = Tri::Yes;
    s.reason = "mu(H_d) is cyclic";
  } else if (g.n() == 1) {
    s.free_by_amenable = Tri::Yes;
    s.reason = "mu(H_d) is abelian";
  } else if (closure.rule == ClosureVerdict::Case::Triangularizable || simultaneously_triangularizable(md.mu_stable)) {
    s.free_by_amenable = Tri::Yes;
    s.reason = "mu(H_d) is triangularisable, hence solvable";
  } else if (closure.certificate) {
    s.free_by_amenable = Tri::No;
    s.reason = "mu(H_d) contains a Schottky pair, so it is not virtually solvable";
  } else {
    s.reason = "no solvability or Schottky certificate found";
  }
  return s;
}

StructureReport structure_report(const ModularData& md, const Gbs& g, int depth) {
  return structure_report(md, g, closure_amenability(md, g, depth));
}

}  // namespace gbs
