#include "gbs/modular.hpp"

#include <algorithm>

#include "gbs/words.hpp"

namespace gbs {

AffineMap AffineMap::identity(std::size_t n) { return {QMatrix::identity(n), QVector(n)}; }

AffineMap AffineMap::translation_by(const QVector& b) { return {QMatrix::identity(b.size()), b}; }

AffineMap AffineMap::linear_map(const QMatrix& a) { return {a, QVector(a.rows())}; }

bool AffineMap::is_identity() const { return linear.is_identity() && is_zero(translation); }

AffineMap AffineMap::inverse() const {
  QMatrix inv = gbs::inverse(linear);
  QVector t = inv * translation;
  for (auto& x : t) x = -x;
  return {std::move(inv), std::move(t)};
}

QVector AffineMap::apply(const QVector& x) const {
  QVector y = linear * x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += translation[i];
  return y;
}

AffineMap operator*(const AffineMap& f, const AffineMap& g) {
  QVector t = f.linear * g.translation;
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += f.translation[i];
  return {f.linear * g.linear, std::move(t)};
}

int epsilon(const Gbs& g, std::size_t v, std::size_t e) {
  const auto& path = g.tree_path(v);
  if (std::find(path.begin(), path.end(), e) != path.end()) return 1;
  if (std::find(path.begin(), path.end(), Gbs::bar(e)) != path.end()) return -1;
  return 0;
}

namespace {

QMatrix edge_ratio(const Gbs& g, std::size_t e) {
  // sigma_{bar e} sigma_e^{-1}
  return to_rational(g.sigma(Gbs::bar(e))) * inverse(to_rational(g.sigma(e)));
}

}  // namespace

ModularData compute_modular(const Gbs& g) {
  const std::size_t n = static_cast<std::size_t>(g.n());
  ModularData md;
  md.tau.reserve(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    // Ordered product over the path from the base, nearest factor leftmost.
    QMatrix tau = QMatrix::identity(n);
    for (std::size_t p : g.tree_path(v)) {
      std::size_t a = g.in_orientation(p) ? p : Gbs::bar(p);
      int eps = epsilon(g, v, a);
      QMatrix factor = edge_ratio(g, a);
      tau = tau * (eps > 0 ? factor : inverse(factor));
    }
    md.tau.push_back(std::move(tau));
  }
  for (std::size_t e : g.stable_edges()) md.mu_stable.push_back(mu_edge(md, g, e));
  return md;
}

QMatrix mu_edge(const ModularData& md, const Gbs& g, std::size_t e) {
  return md.tau[g.origin(e)] * edge_ratio(g, e) * inverse(md.tau[g.terminus(e)]);
}

AffineMap mu_eval(const ModularData& md, const Gbs& g, const Word& w) {
  const std::size_t n = static_cast<std::size_t>(g.n());
  AffineMap acc = AffineMap::identity(n);
  std::vector<QMatrix> inv_cache(md.mu_stable.size());
  std::vector<bool> have_inv(md.mu_stable.size(), false);
  for (const auto& letter : w.letters) {
    if (letter.kind == Letter::Kind::Vertex) {
      if (letter.z.size() != n) throw Error(ErrorCode::MalformedWord, "generator has wrong dimension");
      QVector t = md.tau.at(letter.vertex) * to_rational(letter.z);
      QVector shifted = acc.linear * t;
      for (std::size_t i = 0; i < n; ++i) acc.translation[i] += shifted[i];
    } else {
      if (letter.stable >= md.mu_stable.size()) throw Error(ErrorCode::MalformedWord, "unknown stable letter");
      const QMatrix* m = &md.mu_stable[letter.stable];
      if (letter.exponent < 0) {
        if (!have_inv[letter.stable]) {
          inv_cache[letter.stable] = inverse(*m);
          have_inv[letter.stable] = true;
        }
        m = &inv_cache[letter.stable];
      }
      acc.linear = acc.linear * *m;
    }
  }
  return acc;
}

AffineMap mu_eval(const ModularData& md, const Gbs& g, const PathWord& p) {
  const std::size_t n = static_cast<std::size_t>(g.n());
  if (p.elements.size() != p.edges.size() + 1) throw Error(ErrorCode::MalformedWord, "path word shape");
  AffineMap acc = AffineMap::identity(n);
  for (std::size_t i = 0; i < p.elements.size(); ++i) {
    const std::size_t v = i < p.edges.size() ? g.origin(p.edges[i]) : g.base();
    if (!is_zero(p.elements[i])) {
      QVector shifted = acc.linear * (md.tau.at(v) * to_rational(p.elements[i]));
      for (std::size_t k = 0; k < n; ++k) acc.translation[k] += shifted[k];
    }
    if (i < p.edges.size()) acc.linear = acc.linear * mu_edge(md, g, p.edges[i]);
  }
  return acc;
}

AffineMap mu_eval(const ModularData& md, const Gbs& g, const NormalForm& nf) {
  return mu_eval(md, g, nf.to_path_word());
}

}  // namespace gbs
