#include "gbs/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace gbs {

std::string ValidationReport::summary() const {
  std::string s;
  for (const auto& issue : issues) {
    if (!s.empty()) s += "; ";
    s += issue.code;
    if (!issue.location.empty()) s += " at " + issue.location;
    s += ": " + issue.message;
  }
  return s;
}

namespace {

int index_of(const std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

ValidationReport validate(const GbsData& d) {
  ValidationReport rep;
  auto add = [&](std::string code, std::string loc, std::string msg) {
    rep.issues.push_back({std::move(code), std::move(loc), std::move(msg)});
  };
  if (d.rank < 1) add("bad-rank", "rank", "rank must be at least 1");
  if (d.vertices.empty()) add("no-vertices", "", "the vertex set is empty");

  std::set<std::string> seen;
  for (const auto& v : d.vertices)
    if (!seen.insert(v).second) add("duplicate-vertex", v, "vertex declared twice");

  std::set<std::string> edge_ids;
  bool endpoints_ok = true;
  for (const auto& e : d.edges) {
    if (!edge_ids.insert(e.id).second) add("duplicate-edge", e.id, "edge declared twice");
    if (index_of(d.vertices, e.from) < 0 || index_of(d.vertices, e.to) < 0) {
      add("unknown-vertex", e.id, "edge endpoint is not a declared vertex");
      endpoints_ok = false;
    }
    for (const auto* m : {&e.sigma, &e.sigma_bar}) {
      const char* which = m == &e.sigma ? "sigma" : "sigma_bar";
      if (d.rank >= 1 && (m->rows() != static_cast<std::size_t>(d.rank) ||
                          m->cols() != static_cast<std::size_t>(d.rank))) {
        add("bad-dimension", e.id, std::string(which) + " is not " + std::to_string(d.rank) + "x" +
                                       std::to_string(d.rank));
      } else if (m->square() && m->rows() > 0 && determinant(*m) == 0) {
        add("singular-matrix", e.id, std::string(which) + " has determinant 0");
      }
    }
  }

  const std::size_t nv = d.vertices.size();
  if (endpoints_ok && nv > 0) {
    UnionFind uf(nv);
    for (const auto& e : d.edges)
      uf.unite(static_cast<std::size_t>(index_of(d.vertices, e.from)),
               static_cast<std::size_t>(index_of(d.vertices, e.to)));
    std::size_t root = uf.find(0);
    for (std::size_t v = 1; v < nv; ++v)
      if (uf.find(v) != root) {
        add("disconnected", d.vertices[v], "graph is not connected");
        break;
      }
  }

  if (d.tree && endpoints_ok) {
    std::set<std::string> tree_seen;
    UnionFind uf(nv);
    bool tree_ok = true;
    for (const auto& id : *d.tree) {
      auto it = std::find_if(d.edges.begin(), d.edges.end(), [&](const EdgeDecl& e) { return e.id == id; });
      if (it == d.edges.end()) {
        add("bad-tree", id, "tree lists an unknown edge");
        tree_ok = false;
        continue;
      }
      if (!tree_seen.insert(id).second) {
        add("bad-tree", id, "tree lists an edge twice");
        tree_ok = false;
        continue;
      }
      if (!uf.unite(static_cast<std::size_t>(index_of(d.vertices, it->from)),
                    static_cast<std::size_t>(index_of(d.vertices, it->to)))) {
        add("bad-tree", id, "tree contains a cycle");
        tree_ok = false;
      }
    }
    if (tree_ok && nv > 0 && tree_seen.size() + 1 != nv)
      add("bad-tree", "tree", "tree does not span the graph");
  }

  std::set<std::string> orient_seen;
  for (const auto& [id, fwd] : d.orientation) {
    (void)fwd;
    if (!edge_ids.count(id)) add("bad-orientation", id, "orientation lists an unknown edge");
    if (!orient_seen.insert(id).second) add("bad-orientation", id, "orientation lists an edge twice");
  }

  if (d.base && index_of(d.vertices, *d.base) < 0) add("bad-base", *d.base, "base is not a declared vertex");
  return rep;
}

namespace {

GbsData fill_defaults(GbsData d) {
  const std::size_t nv = d.vertices.size();
  std::string smallest = *std::min_element(d.vertices.begin(), d.vertices.end());
  if (!d.base) d.base = smallest;

  std::set<std::string> tree_ids;
  if (d.tree) {
    tree_ids.insert(d.tree->begin(), d.tree->end());
  } else {
    // Breadth-first from the smallest vertex, incident edges by identifier.
    std::vector<std::size_t> order(d.edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d.edges[a].id < d.edges[b].id; });
    std::vector<bool> visited(nv, false);
    std::deque<std::size_t> queue;
    auto start = static_cast<std::size_t>(index_of(d.vertices, smallest));
    visited[start] = true;
    queue.push_back(start);
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t k : order) {
        const auto& e = d.edges[k];
        auto a = static_cast<std::size_t>(index_of(d.vertices, e.from));
        auto b = static_cast<std::size_t>(index_of(d.vertices, e.to));
        std::size_t other;
        if (a == v)
          other = b;
        else if (b == v)
          other = a;
        else
          continue;
        if (visited[other]) continue;
        visited[other] = true;
        tree_ids.insert(e.id);
        queue.push_back(other);
      }
    }
  }
  std::vector<std::string> tree;
  for (const auto& e : d.edges)
    if (tree_ids.count(e.id)) tree.push_back(e.id);
  d.tree = std::move(tree);

  std::map<std::string, bool> given(d.orientation.begin(), d.orientation.end());
  d.orientation.clear();
  for (const auto& e : d.edges) {
    auto it = given.find(e.id);
    d.orientation.emplace_back(e.id, it == given.end() ? true : it->second);
  }
  return d;
}

}  // namespace

Gbs::Gbs(GbsData data) {
  ValidationReport rep = validate(data);
  if (!rep.ok()) throw Error(ErrorCode::ValidationError, rep.summary());
  data_ = fill_defaults(std::move(data));

  const std::size_t ne = data_.edges.size();
  const std::size_t nv = data_.vertices.size();
  origin_.resize(2 * ne);
  lattices_.reserve(2 * ne);
  in_tree_.assign(ne, false);
  forward_.assign(ne, true);
  for (std::size_t k = 0; k < ne; ++k) {
    const auto& e = data_.edges[k];
    origin_[2 * k] = static_cast<std::size_t>(index_of(data_.vertices, e.from));
    origin_[2 * k + 1] = static_cast<std::size_t>(index_of(data_.vertices, e.to));
    lattices_.emplace_back(e.sigma);
    lattices_.emplace_back(e.sigma_bar);
    in_tree_[k] = std::find(data_.tree->begin(), data_.tree->end(), e.id) != data_.tree->end();
    forward_[k] = data_.orientation[k].second;
  }
  base_ = static_cast<std::size_t>(index_of(data_.vertices, *data_.base));

  for (std::size_t k = 0; k < ne; ++k)
    if (!in_tree_[k]) stable_.push_back(forward_[k] ? 2 * k : 2 * k + 1);

  out_.assign(nv, {});
  for (std::size_t e = 0; e < 2 * ne; ++e) out_[origin_[e]].push_back(e);

  paths_.assign(nv, {});
  std::vector<bool> reached(nv, false);
  reached[base_] = true;
  std::deque<std::size_t> queue{base_};
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t e : out_[v]) {
      if (!in_tree(e)) continue;
      std::size_t w = terminus(e);
      if (reached[w]) continue;
      reached[w] = true;
      paths_[w] = paths_[v];
      paths_[w].push_back(e);
      queue.push_back(w);
    }
  }
}

std::optional<std::size_t> Gbs::find_vertex(std::string_view name) const {
  for (std::size_t v = 0; v < data_.vertices.size(); ++v)
    if (data_.vertices[v] == name) return v;
  return std::nullopt;
}

std::optional<std::size_t> Gbs::find_edge(std::string_view name) const {
  for (std::size_t k = 0; k < data_.edges.size(); ++k)
    if (data_.edges[k].id == name) return 2 * k;
  return std::nullopt;
}

std::string Gbs::oriented_name(std::size_t e) const {
  return (e % 2 == 0 ? "" : "~") + edge_name(e);
}

std::optional<std::size_t> Gbs::stable_index(std::size_t e) const {
  for (std::size_t j = 0; j < stable_.size(); ++j)
    if (stable_[j] == e) return j;
  return std::nullopt;
}

Integer Gbs::tree_degree(std::size_t v) const {
  Integer deg = 0;
  for (std::size_t e = 0; e < oriented_count(); ++e)
    if (terminus(e) == v) deg += sublattice(e).index();
  return deg;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Cursor {
 public:
  Cursor(std::string_view text, int line) : text_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, column(), msg); }
  int column() const { return static_cast<int>(pos_) + 1; }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool accept(std::string_view s) {
    skip_ws();
    if (text_.substr(pos_, s.size()) == s) {
      pos_ += s.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "'");
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'')
        ++pos_;
      else
        break;
    }
    if (start == pos_) fail("expected an identifier");
    return std::string(text_.substr(start, pos_ - start));
  }
  Integer integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (digits == pos_) {
      pos_ = start;
      fail("expected an integer");
    }
    std::string s(text_.substr(start, pos_ - start));
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s);
  }
  ZMatrix matrix() {
    expect("[");
    std::vector<std::vector<Integer>> rows;
    if (peek('[')) {
      do {
        expect("[");
        std::vector<Integer> row;
        if (!peek(']')) {
          do row.push_back(integer());
          while (accept(","));
        }
        expect("]");
        rows.push_back(std::move(row));
      } while (accept(","));
    } else {
      // [a] is accepted as the 1x1 matrix [[a]]
      rows.push_back({integer()});
    }
    int col = column();
    expect("]");
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (const auto& r : rows)
      if (r.size() != cols) throw ParseError(line_, col, "ragged matrix");
    ZMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
  }

 private:
  std::string_view text_;
  int line_;
  std::size_t pos_ = 0;
};

}  // namespace

GbsData parse_document(std::string_view text) {
  GbsData d;
  bool have_rank = false;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Cursor c(line, line_no);
    if (c.done()) {
      if (end == text.size()) break;
      continue;
    }
    if (c.accept("rank")) {
      if (have_rank) c.fail("rank declared twice");
      c.accept("n");
      c.expect("=");
      Integer r = c.integer();
      if (!r.fits_sint_p()) c.fail("rank out of range");
      d.rank = static_cast<int>(r.get_si());
      have_rank = true;
    } else if (c.accept("vertex")) {
      d.vertices.push_back(c.ident());
    } else if (c.accept("edge")) {
      EdgeDecl e;
      e.id = c.ident();
      c.expect(":");
      e.from = c.ident();
      c.expect("->");
      e.to = c.ident();
      bool have_sigma = false, have_bar = false;
      while (!c.done()) {
        if (c.accept("sigma_bar")) {
          if (have_bar) c.fail("sigma_bar given twice");
          c.expect("=");
          e.sigma_bar = c.matrix();
          have_bar = true;
        } else if (c.accept("sigma")) {
          if (have_sigma) c.fail("sigma given twice");
          c.expect("=");
          e.sigma = c.matrix();
          have_sigma = true;
        } else {
          c.fail("expected 'sigma' or 'sigma_bar'");
        }
      }
      if (!have_sigma || !have_bar) c.fail("edge needs both sigma and sigma_bar");
      d.edges.push_back(std::move(e));
    } else if (c.accept("tree")) {
      if (d.tree) c.fail("tree given twice");
      c.expect(":");
      std::vector<std::string> ids;
      if (!c.done()) {
        do ids.push_back(c.ident());
        while (c.accept(","));
      }
      d.tree = std::move(ids);
    } else if (c.accept("orientation")) {
      c.expect(":");
      if (!c.done()) {
        do {
          std::string id = c.ident();
          c.expect(":");
          bool fwd;
          if (c.accept("fwd"))
            fwd = true;
          else if (c.accept("rev"))
            fwd = false;
          else
            c.fail("expected 'fwd' or 'rev'");
          d.orientation.emplace_back(std::move(id), fwd);
        } while (c.accept(","));
      }
    } else if (c.accept("base")) {
      if (d.base) c.fail("base given twice");
      c.expect(":");
      d.base = c.ident();
    } else {
      c.fail("unknown statement");
    }
    if (!c.done()) c.fail("unexpected trailing text");
    if (end == text.size()) break;
  }
  if (!have_rank) throw ParseError(line_no, 1, "missing 'rank n = <int>'");
  return d;
}

Gbs parse_gbs(std::string_view text) { return Gbs(parse_document(text)); }

namespace {

std::string matrix_literal(const ZMatrix& m) { return to_string(m); }

}  // namespace

std::string render(const Gbs& g) {
  const GbsData& d = g.data();
  std::ostringstream os;
  os << "rank n = " << d.rank << "\n";
  for (const auto& v : d.vertices) os << "vertex " << v << "\n";
  for (const auto& e : d.edges)
    os << "edge " << e.id << ": " << e.from << " -> " << e.to << "  sigma = " << matrix_literal(e.sigma)
       << "  sigma_bar = " << matrix_literal(e.sigma_bar) << "\n";
  os << "tree:";
  for (std::size_t i = 0; i < d.tree->size(); ++i) os << (i ? "," : " ") << (*d.tree)[i];
  os << "\norientation:";
  for (std::size_t i = 0; i < d.orientation.size(); ++i)
    os << (i ? "," : " ") << d.orientation[i].first << ":" << (d.orientation[i].second ? "fwd" : "rev");
  os << "\nbase: " << *d.base << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Fixtures

namespace {

ZMatrix scalar_matrix(long x) { return ZMatrix{{x}}; }

[[noreturn]] void bad_params(std::string_view name, const std::string& why) {
  throw Error(ErrorCode::BadParams, std::string(name) + ": " + why);
}

}  // namespace

Gbs builtin(std::string_view name, const std::vector<long>& params) {
  GbsData d;
  if (name == "bs") {
    if (params.size() != 2) bad_params(name, "expects two parameters m,n");
    if (params[0] == 0 || params[1] == 0) bad_params(name, "m and n must be nonzero");
    d.rank = 1;
    d.vertices = {"v"};
    d.edges.push_back({"e", "v", "v", scalar_matrix(params[0]), scalar_matrix(params[1])});
  } else if (name == "heisenberg") {
    if (!params.empty()) bad_params(name, "takes no parameters");
    d.rank = 2;
    d.vertices = {"v"};
    d.edges.push_back({"e", "v", "v", ZMatrix::identity(2), ZMatrix{{1, 1}, {0, 1}}});
  } else if (name == "z2-f2") {
    if (!params.empty()) bad_params(name, "takes no parameters");
    d.rank = 2;
    d.vertices = {"v"};
    d.edges.push_back({"e1", "v", "v", ZMatrix::identity(2), ZMatrix{{1, 2}, {0, 1}}});
    d.edges.push_back({"e2", "v", "v", ZMatrix::identity(2), ZMatrix{{1, 0}, {2, 1}}});
  } else if (name == "tree-amalgam") {
    std::vector<long> entries = params.empty() ? std::vector<long>{1} : params;
    std::size_t n = 0;
    while ((n + 1) * (n + 1) <= entries.size()) ++n;
    if (n * n != entries.size()) bad_params(name, "expects n^2 matrix entries");
    ZMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = entries[i * n + j];
    if (determinant(m) == 0) bad_params(name, "matrix is singular");
    d.rank = static_cast<int>(n);
    d.vertices = {"u", "w"};
    d.edges.push_back({"e", "u", "w", ZMatrix::identity(n), m});
  } else {
    throw Error(ErrorCode::UnknownBuiltin, "unknown builtin '" + std::string(name) + "'");
  }
  return Gbs(std::move(d));
}

Gbs builtin_from_spec(std::string_view spec) {
  auto colon = spec.find(':');
  std::string_view name = spec.substr(0, colon);
  std::vector<long> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      auto comma = rest.find(',');
      std::string_view tok = rest.substr(0, comma);
      long value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        bad_params(name, "bad parameter '" + std::string(tok) + "'");
      params.push_back(value);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  return builtin(name, params);
}

// ---------------------------------------------------------------------------
// Collapse

namespace {

ZMatrix unimodular_inverse(const ZMatrix& m) {
  Integer det = determinant(m);
  ZMatrix adj = adjugate(m);
  return det == 1 ? adj : Integer(-1) * adj;
}

}  // namespace

Gbs reduce_graph(const Gbs& g) {
  GbsData d = g.data();
  while (true) {
    auto it = std::find_if(d.edges.begin(), d.edges.end(), [&](const EdgeDecl& e) {
      bool tree = std::find(d.tree->begin(), d.tree->end(), e.id) != d.tree->end();
      if (!tree) return false;
      Integer a = determinant(e.sigma), b = determinant(e.sigma_bar);
      return abs(a) == 1 || abs(b) == 1;
    });
    if (it == d.edges.end()) break;
    EdgeDecl e = *it;
    std::string survivor, removed;
    ZMatrix psi;  // G_removed -> G_survivor
    if (abs(determinant(e.sigma)) == 1) {
      survivor = e.from;
      removed = e.to;
      psi = e.sigma_bar * unimodular_inverse(e.sigma);
    } else {
      survivor = e.to;
      removed = e.from;
      psi = e.sigma * unimodular_inverse(e.sigma_bar);
    }
    d.edges.erase(it);
    d.tree->erase(std::find(d.tree->begin(), d.tree->end(), e.id));
    d.orientation.erase(std::find_if(d.orientation.begin(), d.orientation.end(),
                                     [&](const auto& p) { return p.first == e.id; }));
    for (auto& f : d.edges) {
      if (f.to == removed) {
        f.sigma = psi * f.sigma;
        f.to = survivor;
      }
      if (f.from == removed) {
        f.sigma_bar = psi * f.sigma_bar;
        f.from = survivor;
      }
    }
    d.vertices.erase(std::find(d.vertices.begin(), d.vertices.end(), removed));
    if (*d.base == removed) d.base = survivor;
  }
  return Gbs(std::move(d));
}

}  // namespace gbs
