#pragma once

// Shared generators and oracles for the test programs.

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gbs/graph.hpp"
#include "gbs/modular.hpp"
#include "gbs/tree.hpp"
#include "gbs/words.hpp"

namespace gbs::testing {

/// Random connected graph with nonsingular integer matrices: a random
/// spanning tree plus extra edges (loops allowed), random tree/orientation
/// choices by way of edge order and direction flags.
inline GbsData random_gbs_data(std::mt19937_64& rng, int max_n = 3, int max_vertices = 4, int max_edges = 5,
                               long entry_bound = 3) {
  auto uniform = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  GbsData d;
  d.rank = static_cast<int>(uniform(1, max_n));
  const auto nv = static_cast<std::size_t>(uniform(1, max_vertices));
  for (std::size_t v = 0; v < nv; ++v) d.vertices.push_back("v" + std::to_string(v));
  const auto n = static_cast<std::size_t>(d.rank);
  auto random_matrix = [&] {
    for (;;) {
      ZMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = uniform(-entry_bound, entry_bound);
      if (determinant(m) != 0) return m;
    }
  };
  const long ne = uniform(static_cast<long>(nv) - 1, std::max<long>(static_cast<long>(nv) - 1, max_edges));
  for (long k = 0; k < ne; ++k) {
    std::string from, to;
    if (k + 1 < static_cast<long>(nv)) {
      from = d.vertices[static_cast<std::size_t>(uniform(0, k))];
      to = d.vertices[static_cast<std::size_t>(k + 1)];
      if (uniform(0, 1)) std::swap(from, to);
    } else {
      from = d.vertices[static_cast<std::size_t>(uniform(0, static_cast<long>(nv) - 1))];
      to = d.vertices[static_cast<std::size_t>(uniform(0, static_cast<long>(nv) - 1))];
    }
    d.edges.push_back({"e" + std::to_string(k), from, to, random_matrix(), random_matrix()});
  }
  for (const auto& e : d.edges)
    if (uniform(0, 1)) d.orientation.emplace_back(e.id, false);
  if (uniform(0, 1)) d.base = d.vertices[static_cast<std::size_t>(uniform(0, static_cast<long>(nv) - 1))];
  return d;
}

inline ZVector basis_vector(std::size_t n, std::size_t i) {
  ZVector v = zero_zvector(n);
  v[i] = 1;
  return v;
}

/// Words that must be trivial in G: commutators of basis elements in every
/// vertex group, t sigma_e(a) t^-1 sigma_bar(a)^-1 for stable edges and
/// sigma_e(a) sigma_bar(a)^-1 for tree edges, for every basis vector a.
inline std::vector<Word> defining_relations(const Gbs& g) {
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<Word> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Letter a = Letter::gen(v, basis_vector(n, i));
        Letter b = Letter::gen(v, basis_vector(n, j));
        out.push_back(Word{{a, b, a.inverse(), b.inverse()}});
      }
  for (std::size_t e = 0; e < g.oriented_count(); e += 2) {
    const std::size_t f = g.in_orientation(e) ? e : Gbs::bar(e);
    for (std::size_t i = 0; i < n; ++i) {
      const ZVector a = basis_vector(n, i);
      Letter into_to = Letter::gen(g.terminus(f), g.sublattice(f).image(a));
      Letter into_from = Letter::gen(g.origin(f), g.sublattice(Gbs::bar(f)).image(a));
      if (g.in_tree(f)) {
        out.push_back(Word{{into_to, into_from.inverse()}});
      } else {
        Letter t = Letter::stable_letter(*g.stable_index(f), 1);
        out.push_back(Word{{t, into_to, t.inverse(), into_from.inverse()}});
      }
    }
  }
  return out;
}

/// Whether w fixes every vertex of the tree ball of the given radius around
/// the base vertex. Walks the ball depth first, extending the canonical path
/// of w·x by one step per child instead of recomputing w·x from scratch.
inline bool fixes_tree_ball(const Gbs& g, const Word& w, int radius) {
  TreeWalker start(g);
  start.append(to_path_word(g, w));
  std::vector<TreeVertex::Step> path;
  std::function<bool(const TreeWalker&, std::size_t)> visit = [&](const TreeWalker& walker, std::size_t type) {
    if (walker.current_type() != type || walker.steps() != path) return false;
    if (static_cast<int>(path.size()) == radius) return true;
    for (std::size_t e : g.out_edges(type)) {
      for (const auto& r : g.sublattice(Gbs::bar(e)).representatives()) {
        if (is_zero(r) && !path.empty() && path.back().edge == Gbs::bar(e)) continue;
        TreeWalker next = walker;
        next.append_element(r);
        next.append_edge(e);
        path.push_back({r, e});
        const bool ok = visit(next, g.terminus(e));
        path.pop_back();
        if (!ok) return false;
      }
    }
    return true;
  };
  return visit(start, g.base());
}

/// All words of length <= max_len over the given letters (no reduction).
inline void for_each_word(const std::vector<Letter>& letters, int max_len, const std::function<void(const Word&)>& f) {
  Word w;
  std::function<void()> rec = [&] {
    f(w);
    if (static_cast<int>(w.size()) == max_len) return;
    for (const auto& l : letters) {
      w.letters.push_back(l);
      rec();
      w.letters.pop_back();
    }
  };
  rec();
}

/// b, b^-1, t, t^-1 for a one-vertex, one-loop group over Z.
inline std::vector<Letter> bt_letters(const Gbs& g) {
  Letter b = Letter::gen(g.base(), basis_vector(1, 0));
  Letter t = Letter::stable_letter(0, 1);
  return {b, b.inverse(), t, t.inverse()};
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace gbs::testing
