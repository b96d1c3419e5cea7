#include "gbs/tree.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <sstream>
#include <unordered_set>

namespace gbs {

std::string TreeVertex::key() const {
  std::string k;
  auto t = static_cast<std::uint32_t>(type);
  k.append(reinterpret_cast<const char*>(&t), sizeof t);
  for (const auto& s : steps) {
    auto e = static_cast<std::uint32_t>(s.edge);
    k.append(reinterpret_cast<const char*>(&e), sizeof e);
    append_key(k, s.rep);
  }
  return k;
}

std::string TreeVertex::str(const Gbs& g) const {
  std::string s;
  for (const auto& st : steps) {
    if (!s.empty()) s += " ";
    s += to_string(st.rep) + g.oriented_name(st.edge);
  }
  if (!s.empty()) s += " ";
  return s + "@" + g.vertex_name(type);
}

TreeVertex base_vertex(const Gbs& g) {
  TreeVertex x;
  x.type = g.base();
  return x;
}

namespace {

TreeVertex prefix(const Gbs& g, const TreeVertex& x, std::size_t len) {
  TreeVertex p;
  p.steps.assign(x.steps.begin(), x.steps.begin() + static_cast<std::ptrdiff_t>(len));
  p.type = len == 0 ? g.base() : g.terminus(p.steps.back().edge);
  return p;
}

std::size_t common_prefix(const TreeVertex& x, const TreeVertex& y) {
  std::size_t k = 0;
  while (k < x.steps.size() && k < y.steps.size() && x.steps[k] == y.steps[k]) ++k;
  return k;
}

}  // namespace

std::vector<TreeVertex> neighbors(const Gbs& g, const TreeVertex& x) {
  std::vector<TreeVertex> out;
  for (std::size_t e : g.out_edges(x.type)) {
    for (auto& r : g.sublattice(Gbs::bar(e)).representatives()) {
      if (is_zero(r) && !x.steps.empty() && x.steps.back().edge == Gbs::bar(e)) {
        out.push_back(prefix(g, x, x.steps.size() - 1));
        continue;
      }
      TreeVertex y = x;
      y.steps.push_back({std::move(r), e});
      y.type = g.terminus(e);
      out.push_back(std::move(y));
    }
  }
  return out;
}

TreeWalker::TreeWalker(const Gbs& g) : g_(&g), pending_(zero_zvector(static_cast<std::size_t>(g.n()))) {}

std::size_t TreeWalker::current_type() const {
  return steps_.empty() ? g_->base() : g_->terminus(steps_.back().edge);
}

void TreeWalker::append_element(const ZVector& z) { pending_ += z; }

void TreeWalker::append_edge(std::size_t e) {
  if (g_->origin(e) != current_type()) throw Error(ErrorCode::MalformedWord, "edge does not continue the path");
  // h e = r sigma_{bar e}(a) e = r e sigma_e(a)
  auto [r, a] = g_->sublattice(Gbs::bar(e)).decompose(pending_);
  ZVector moved = g_->sublattice(e).image(a);
  if (is_zero(r) && !steps_.empty() && steps_.back().edge == Gbs::bar(e)) {
    // ... r' f sigma_f(a) bar(f) = ... r' sigma_{bar f}(a)
    moved += steps_.back().rep;
    steps_.pop_back();
    pending_ = std::move(moved);
    return;
  }
  steps_.push_back({std::move(r), e});
  pending_ = std::move(moved);
}

void TreeWalker::append(const PathWord& p) {
  append_element(p.elements.at(0));
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    append_edge(p.edges[i]);
    append_element(p.elements[i + 1]);
  }
}

void TreeWalker::append(const TreeVertex& x) {
  for (const auto& s : x.steps) {
    append_element(s.rep);
    append_edge(s.edge);
  }
}

TreeVertex TreeWalker::vertex() const {
  TreeVertex x;
  x.steps = steps_;
  x.type = current_type();
  return x;
}

TreeVertex act(const Gbs& g, const PathWord& w, const TreeVertex& x) {
  TreeWalker walker(g);
  walker.append(w);
  walker.append(x);
  return walker.vertex();
}

TreeVertex act(const Gbs& g, const Word& w, const TreeVertex& x) { return act(g, to_path_word(g, w), x); }

TreeVertex act(const Gbs& g, const NormalForm& w, const TreeVertex& x) { return act(g, w.to_path_word(), x); }

std::size_t distance(const TreeVertex& x, const TreeVertex& y) {
  std::size_t k = common_prefix(x, y);
  return x.steps.size() + y.steps.size() - 2 * k;
}

std::vector<TreeVertex> geodesic(const Gbs& g, const TreeVertex& x, const TreeVertex& y) {
  std::size_t k = common_prefix(x, y);
  std::vector<TreeVertex> path;
  for (std::size_t len = x.steps.size(); len > k; --len) path.push_back(prefix(g, x, len));
  for (std::size_t len = k; len <= y.steps.size(); ++len) path.push_back(prefix(g, y, len));
  return path;
}

std::size_t TreeBall::sphere_size(int r) const {
  return static_cast<std::size_t>(std::count(depth.begin(), depth.end(), r));
}

TreeBall tree_ball(const Gbs& g, const TreeVertex& center, int radius, std::size_t cap) {
  if (radius < 0) throw Error(ErrorCode::DomainError, "negative radius");
  TreeBall b;
  b.center = center;
  b.radius = radius;
  b.vertices.push_back(center);
  b.depth.push_back(0);
  b.parent.push_back(0);
  b.index.emplace(center.key(), 0);
  for (std::size_t i = 0; i < b.vertices.size(); ++i) {
    if (b.depth[i] == radius) continue;
    for (auto& y : neighbors(g, b.vertices[i])) {
      auto [it, inserted] = b.index.emplace(y.key(), b.vertices.size());
      if (!inserted) continue;
      if (b.vertices.size() >= cap)
        throw Error(ErrorCode::ResourceLimit, "tree ball exceeds " + std::to_string(cap) + " vertices");
      b.edges.emplace_back(i, b.vertices.size());
      b.vertices.push_back(std::move(y));
      b.depth.push_back(b.depth[i] + 1);
      b.parent.push_back(i);
    }
  }
  return b;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

/// The edge of the tree joining a vertex to its neighbour one step further
/// from the base, or the reverse of the last step when moving up.
std::string edge_label(const Gbs& g, const TreeVertex& from, const TreeVertex& to) {
  if (to.steps.size() > from.steps.size()) return g.oriented_name(to.steps.back().edge);
  return g.oriented_name(Gbs::bar(from.steps.back().edge));
}

}  // namespace

std::string to_dot(const Gbs& g, const TreeBall& ball) {
  std::ostringstream os;
  os << "digraph tree {\n";
  for (std::size_t i = 0; i < ball.vertices.size(); ++i)
    os << "  n" << i << " [label=\"" << dot_escape(ball.vertices[i].str(g)) << "\"];\n";
  for (const auto& [a, b] : ball.edges)
    os << "  n" << a << " -> n" << b << " [label=\"" << dot_escape(edge_label(g, ball.vertices[a], ball.vertices[b]))
       << "\"];\n";
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Dynamics

namespace {

/// First vertex after x on the geodesic to y (x != y).
TreeVertex step_towards(const Gbs& g, const TreeVertex& x, const TreeVertex& y) {
  std::size_t k = common_prefix(x, y);
  if (x.steps.size() > k) return prefix(g, x, x.steps.size() - 1);
  return prefix(g, y, k + 1);
}

}  // namespace

ElementDynamics dynamics(const Gbs& g, const Word& w, int search_radius) {
  const PathWord pw = to_path_word(g, w);
  TreeVertex x = base_vertex(g);
  TreeVertex gx = act(g, pw, x);
  std::size_t disp = distance(x, gx);
  int moves = 0;
  while (disp > 0) {
    TreeVertex y = step_towards(g, x, gx);
    TreeVertex gy = act(g, pw, y);
    std::size_t dy = distance(y, gy);
    if (dy >= disp) break;
    if (++moves > search_radius)
      throw Error(ErrorCode::RadiusTooSmall, "minimal displacement not reached within radius " +
                                                 std::to_string(search_radius));
    x = std::move(y);
    gx = std::move(gy);
    disp = dy;
  }

  ElementDynamics d;
  d.point = x;
  if (disp == 0) {
    d.kind = ElementDynamics::Kind::Elliptic;
    d.axis_segment = {x};
    return d;
  }
  d.kind = ElementDynamics::Kind::Hyperbolic;
  d.translation_length = disp;

  const PathWord inv = to_path_word(g, w.inverse());
  std::vector<TreeVertex> orbit{x};  // g^{-K} x, ..., g^{K} x
  for (int j = 0; j < kAxisPeriods; ++j) orbit.insert(orbit.begin(), act(g, inv, orbit.front()));
  for (int j = 0; j < kAxisPeriods; ++j) orbit.push_back(act(g, pw, orbit.back()));
  d.axis_segment.push_back(orbit.front());
  for (std::size_t j = 0; j + 1 < orbit.size(); ++j) {
    auto piece = geodesic(g, orbit[j], orbit[j + 1]);
    d.axis_segment.insert(d.axis_segment.end(), piece.begin() + 1, piece.end());
  }
  return d;
}

std::optional<std::size_t> axis_overlap_certificate(const ElementDynamics& a, const ElementDynamics& b) {
  using Kind = ElementDynamics::Kind;
  if (a.kind != Kind::Hyperbolic || b.kind != Kind::Hyperbolic) return std::nullopt;
  std::unordered_map<std::string, std::size_t> pos_a;
  for (std::size_t i = 0; i < a.axis_segment.size(); ++i) pos_a.emplace(a.axis_segment[i].key(), i);

  std::vector<std::pair<std::size_t, std::size_t>> common;  // (pos in b, pos in a)
  for (std::size_t j = 0; j < b.axis_segment.size(); ++j) {
    auto it = pos_a.find(b.axis_segment[j].key());
    if (it != pos_a.end()) common.emplace_back(j, it->second);
  }
  if (common.empty()) return std::nullopt;
  const std::size_t len = common.size() - 1;
  for (std::size_t k = 1; k < common.size(); ++k) {
    if (common[k].first != common[k - 1].first + 1) return std::nullopt;
    std::size_t pa = common[k].second, qa = common[k - 1].second;
    if (pa != qa + 1 && qa != pa + 1) return std::nullopt;
  }
  auto [amin, amax] = std::minmax({common.front().second, common.back().second});
  if (common.front().first == 0 || common.back().first + 1 == b.axis_segment.size()) return std::nullopt;
  if (amin == 0 || amax + 1 == a.axis_segment.size()) return std::nullopt;
  if (len >= std::min(a.translation_length, b.translation_length)) return std::nullopt;
  return len;
}

std::optional<PingPongCertificate> ping_pong_search(const Gbs& g, int depth, int search_radius,
                                                    std::size_t word_cap) {
  const auto gens = standard_generators(g);
  struct Candidate {
    Word word;
    ElementDynamics dyn;
  };
  std::vector<Candidate> hyperbolic;
  std::unordered_set<std::string> seen;
  std::optional<PingPongCertificate> found;

  auto consider = [&](const Word& w) -> bool {
    NormalForm nf = normal_form(g, w);
    if (!seen.insert(nf.key()).second) return false;
    if (seen.size() > word_cap)
      throw Error(ErrorCode::ResourceLimit, "ping-pong search exceeds " + std::to_string(word_cap) + " elements");
    ElementDynamics dyn;
    try {
      dyn = dynamics(g, w, search_radius);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::RadiusTooSmall) return false;
      throw;
    }
    if (dyn.kind != ElementDynamics::Kind::Hyperbolic) return false;
    for (const auto& c : hyperbolic) {
      if (auto overlap = axis_overlap_certificate(c.dyn, dyn)) {
        found = PingPongCertificate{c.word, w, c.dyn.translation_length, dyn.translation_length, *overlap};
        return true;
      }
    }
    hyperbolic.push_back({w, std::move(dyn)});
    return false;
  };

  for (int len = 1; len <= depth; ++len) {
    Word w;
    std::function<bool(int)> extend = [&](int remaining) -> bool {
      if (remaining == 0) return consider(w);
      for (const auto& s : gens) {
        if (!w.letters.empty() && w.letters.back().inverse() == s) continue;
        w.letters.push_back(s);
        bool done = extend(remaining - 1);
        w.letters.pop_back();
        if (done) return true;
      }
      return false;
    };
    if (extend(len)) return found;
  }
  return std::nullopt;
}

bool verify_ping_pong(const Gbs& g, const PingPongCertificate& c, int search_radius) {
  try {
    ElementDynamics a = dynamics(g, c.first, search_radius);
    ElementDynamics b = dynamics(g, c.second, search_radius);
    auto overlap = axis_overlap_certificate(a, b);
    return overlap && *overlap == c.overlap && a.translation_length == c.length_first &&
           b.translation_length == c.length_second;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace gbs
