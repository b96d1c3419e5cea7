#include "gbs/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>

namespace gbs {

Letter Letter::gen(std::size_t vertex, ZVector z) {
  Letter l;
  l.kind = Kind::Vertex;
  l.vertex = vertex;
  l.z = std::move(z);
  return l;
}

Letter Letter::stable_letter(std::size_t index, int exponent) {
  Letter l;
  l.kind = Kind::Stable;
  l.stable = index;
  l.exponent = exponent < 0 ? -1 : 1;
  return l;
}

Letter Letter::inverse() const {
  if (kind == Kind::Vertex) return gen(vertex, -z);
  return stable_letter(stable, -exponent);
}

Word Word::inverse() const {
  Word w;
  w.letters.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back(it->inverse());
  return w;
}

Word operator*(const Word& a, const Word& b) {
  Word w = a;
  w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
  return w;
}

// ---------------------------------------------------------------------------
// Word syntax

namespace {

[[noreturn]] void malformed(const std::string& token, const std::string& why) {
  throw Error(ErrorCode::MalformedWord, "'" + token + "': " + why);
}

long parse_long(const std::string& token, std::string_view s, const char* what) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) malformed(token, std::string("bad ") + what);
  return v;
}

void parse_token(const Gbs& g, const std::string& token, Word& out) {
  if (token == "1") return;
  std::string_view body = token;
  long exponent = 1;
  if (auto caret = body.find('^'); caret != std::string_view::npos) {
    exponent = parse_long(token, body.substr(caret + 1), "exponent");
    body = body.substr(0, caret);
  }
  if (body.empty()) malformed(token, "empty letter");
  const std::size_t n = static_cast<std::size_t>(g.n());

  if (body[0] == 'b') {
    std::size_t vertex = g.base();
    if (auto at = body.find('@'); at != std::string_view::npos) {
      auto v = g.find_vertex(body.substr(at + 1));
      if (!v) malformed(token, "unknown vertex");
      vertex = *v;
      body = body.substr(0, at);
    }
    long k = body.size() == 1 ? 1 : parse_long(token, body.substr(1), "generator index");
    if (k < 1 || static_cast<std::size_t>(k) > n) malformed(token, "generator index out of range");
    if (exponent == 0) return;
    ZVector z = zero_zvector(n);
    z[static_cast<std::size_t>(k - 1)] = exponent;
    out.letters.push_back(Letter::gen(vertex, std::move(z)));
    return;
  }

  if (body[0] == 't') {
    std::size_t index = 0;
    if (body.size() == 1) {
      if (g.rank_d() != 1) malformed(token, "bare 't' needs exactly one stable letter");
    } else if (body[1] == '_') {
      auto e = g.find_edge(body.substr(2));
      if (!e) malformed(token, "unknown edge");
      if (g.in_tree(*e)) malformed(token, "tree edges carry no stable letter");
      std::size_t a = g.in_orientation(*e) ? *e : Gbs::bar(*e);
      index = *g.stable_index(a);
    } else {
      long k = parse_long(token, body.substr(1), "stable letter index");
      if (k < 1 || static_cast<std::size_t>(k) > g.rank_d()) malformed(token, "stable letter index out of range");
      index = static_cast<std::size_t>(k - 1);
    }
    if (exponent > 1'000'000 || exponent < -1'000'000) malformed(token, "exponent too large");
    for (long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i)
      out.letters.push_back(Letter::stable_letter(index, exponent < 0 ? -1 : 1));
    return;
  }
  malformed(token, "unknown letter");
}

}  // namespace

Word parse_word(const Gbs& g, std::string_view text) {
  Word w;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) parse_token(g, token, w);
    token.clear();
  };
  for (char c : text) {
    if (c == '*' || std::isspace(static_cast<unsigned char>(c)))
      flush();
    else
      token.push_back(c);
  }
  flush();
  return w;
}

std::string format_word(const Gbs& g, const Word& w) {
  std::string s;
  auto emit = [&](const std::string& tok) {
    if (!s.empty()) s += " * ";
    s += tok;
  };
  for (const auto& l : w.letters) {
    if (l.kind == Letter::Kind::Vertex) {
      for (std::size_t k = 0; k < l.z.size(); ++k) {
        if (l.z[k] == 0) continue;
        std::string tok = "b" + std::to_string(k + 1);
        if (l.vertex != g.base()) tok += "@" + g.vertex_name(l.vertex);
        if (l.z[k] != 1) tok += "^" + l.z[k].get_str();
        emit(tok);
      }
    } else {
      std::string tok = "t_" + g.edge_name(g.stable_edges()[l.stable]);
      if (l.exponent < 0) tok += "^-1";
      emit(tok);
    }
  }
  return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------------------
// Path words

namespace {

void append_edge(PathWord& p, std::size_t e, std::size_t n) {
  p.edges.push_back(e);
  p.elements.push_back(zero_zvector(n));
}

void append_tree_path(PathWord& p, const std::vector<std::size_t>& path, bool backwards, std::size_t n) {
  if (!backwards) {
    for (std::size_t e : path) append_edge(p, e, n);
  } else {
    for (auto it = path.rbegin(); it != path.rend(); ++it) append_edge(p, Gbs::bar(*it), n);
  }
}

/// The oriented edge a letter traverses (stable letters only).
std::size_t letter_edge(const Gbs& g, const Letter& l) {
  std::size_t a = g.stable_edges().at(l.stable);
  return l.exponent > 0 ? a : Gbs::bar(a);
}

void check_letter(const Gbs& g, const Letter& l) {
  if (l.kind == Letter::Kind::Vertex) {
    if (l.vertex >= g.vertex_count()) throw Error(ErrorCode::MalformedWord, "unknown vertex in word");
    if (l.z.size() != static_cast<std::size_t>(g.n()))
      throw Error(ErrorCode::MalformedWord, "generator has wrong dimension");
  } else if (l.stable >= g.rank_d()) {
    throw Error(ErrorCode::MalformedWord, "unknown stable letter");
  }
}

}  // namespace

PathWord to_path_word(const Gbs& g, const Word& w) {
  const std::size_t n = static_cast<std::size_t>(g.n());
  PathWord p;
  p.elements.push_back(zero_zvector(n));
  for (const auto& l : w.letters) {
    check_letter(g, l);
    if (l.kind == Letter::Kind::Vertex) {
      append_tree_path(p, g.tree_path(l.vertex), false, n);
      p.elements.back() += l.z;
      append_tree_path(p, g.tree_path(l.vertex), true, n);
    } else {
      std::size_t e = letter_edge(g, l);
      append_tree_path(p, g.tree_path(g.origin(e)), false, n);
      append_edge(p, e, n);
      append_tree_path(p, g.tree_path(g.terminus(e)), true, n);
    }
  }
  return p;
}

PathWord reduce(const Gbs& g, const PathWord& p) {
  PathWord out;
  out.elements.push_back(p.elements.at(0));
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    std::size_t e = p.edges[i];
    if (!out.edges.empty() && out.edges.back() == Gbs::bar(e)) {
      std::size_t f = out.edges.back();
      if (auto a = g.sublattice(f).solve(out.elements.back())) {
        // f sigma_f(a) bar(f) = sigma_{bar f}(a)
        out.edges.pop_back();
        out.elements.pop_back();
        out.elements.back() += g.sublattice(Gbs::bar(f)).image(*a);
        out.elements.back() += p.elements[i + 1];
        continue;
      }
    }
    out.edges.push_back(e);
    out.elements.push_back(p.elements[i + 1]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normal forms

NormalForm NormalForm::identity(const Gbs& g) {
  NormalForm nf;
  nf.head_ = zero_zvector(static_cast<std::size_t>(g.n()));
  return nf;
}

void NormalForm::prepend_element(const ZVector& z) { head_ += z; }

void NormalForm::prepend_edge(const Gbs& g, std::size_t e) {
  if (g.terminus(e) != leading_vertex(g)) throw Error(ErrorCode::MalformedWord, "edge does not continue the path");
  // e h = sigma_{bar e}(a) e r  with  h = r + sigma_e(a)
  auto [r, a] = g.sublattice(e).decompose(head_);
  ZVector moved = g.sublattice(Gbs::bar(e)).image(a);
  if (is_zero(r) && !rev_.empty() && rev_.back().edge == Gbs::bar(e)) {
    moved += rev_.back().rep;
    rev_.pop_back();
    head_ = std::move(moved);
    return;
  }
  rev_.push_back({e, std::move(r)});
  head_ = std::move(moved);
}

void NormalForm::prepend(const Gbs& g, const Letter& l) {
  check_letter(g, l);
  auto prepend_path_backwards = [&](const std::vector<std::size_t>& path) {
    // Left multiplication by gamma^{-1} = bar(p_m) ... bar(p_1): rightmost first.
    for (std::size_t e : path) prepend_edge(g, Gbs::bar(e));
  };
  auto prepend_path = [&](const std::vector<std::size_t>& path) {
    for (auto it = path.rbegin(); it != path.rend(); ++it) prepend_edge(g, *it);
  };
  if (l.kind == Letter::Kind::Vertex) {
    const auto& path = g.tree_path(l.vertex);
    prepend_path_backwards(path);
    prepend_element(l.z);
    prepend_path(path);
  } else {
    std::size_t e = letter_edge(g, l);
    prepend_path_backwards(g.tree_path(g.terminus(e)));
    prepend_edge(g, e);
    prepend_path(g.tree_path(g.origin(e)));
  }
}

PathWord NormalForm::to_path_word() const {
  PathWord p;
  p.elements.push_back(head_);
  for (auto it = rev_.rbegin(); it != rev_.rend(); ++it) {
    p.edges.push_back(it->edge);
    p.elements.push_back(it->rep);
  }
  return p;
}

std::string NormalForm::key() const {
  std::string k;
  k.reserve(16 * (rev_.size() + 1));
  append_key(k, head_);
  for (auto it = rev_.rbegin(); it != rev_.rend(); ++it) {
    auto e = static_cast<std::uint32_t>(it->edge);
    k.append(reinterpret_cast<const char*>(&e), sizeof e);
    append_key(k, it->rep);
  }
  return k;
}

std::string NormalForm::str(const Gbs& g) const {
  std::string s = to_string(head_);
  for (auto it = rev_.rbegin(); it != rev_.rend(); ++it) s += " " + g.oriented_name(it->edge) + " " + to_string(it->rep);
  return s;
}

NormalForm normal_form(const Gbs& g, const Word& w) {
  NormalForm nf = NormalForm::identity(g);
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) nf.prepend(g, *it);
  return nf;
}

NormalForm normal_form(const Gbs& g, const PathWord& p) {
  if (p.elements.size() != p.edges.size() + 1) throw Error(ErrorCode::MalformedWord, "path word shape");
  NormalForm nf = NormalForm::identity(g);
  nf.prepend_element(p.elements.back());
  for (std::size_t i = p.edges.size(); i-- > 0;) {
    nf.prepend_edge(g, p.edges[i]);
    nf.prepend_element(p.elements[i]);
  }
  if (nf.leading_vertex(g) != g.base()) throw Error(ErrorCode::MalformedWord, "path word does not close at the base");
  return nf;
}

NormalForm multiply(const Gbs& g, const NormalForm& a, const NormalForm& b) {
  NormalForm nf = b;
  auto syl = a.syllables();
  for (std::size_t i = syl.size(); i-- > 0;) {
    nf.prepend_element(syl[i].rep);
    nf.prepend_edge(g, syl[i].edge);
  }
  nf.prepend_element(a.head());
  return nf;
}

NormalForm inverse(const Gbs& g, const NormalForm& a) {
  PathWord p = a.to_path_word();
  PathWord q;
  for (auto it = p.elements.rbegin(); it != p.elements.rend(); ++it) q.elements.push_back(-*it);
  for (auto it = p.edges.rbegin(); it != p.edges.rend(); ++it) q.edges.push_back(Gbs::bar(*it));
  return normal_form(g, q);
}

// ---------------------------------------------------------------------------
// Free group image

FreeWord free_reduce(const FreeWord& w) {
  FreeWord out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

FreeWord phi(const Gbs& g, const Word& w) {
  FreeWord f;
  for (const auto& l : w.letters) {
    check_letter(g, l);
    if (l.kind == Letter::Kind::Stable) {
      int s = static_cast<int>(l.stable) + 1;
      f.push_back(l.exponent > 0 ? s : -s);
    }
  }
  return free_reduce(f);
}

FreeWord phi(const Gbs& g, const NormalForm& nf) {
  FreeWord f;
  for (const auto& s : nf.syllables()) {
    std::size_t e = s.edge;
    if (g.in_tree(e)) continue;
    bool forward = g.in_orientation(e);
    int idx = static_cast<int>(*g.stable_index(forward ? e : Gbs::bar(e))) + 1;
    f.push_back(forward ? idx : -idx);
  }
  return free_reduce(f);
}

std::string format_free_word(const Gbs& g, const FreeWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (int x : w) {
    if (!s.empty()) s += " * ";
    s += "t_" + g.edge_name(g.stable_edges()[static_cast<std::size_t>(std::abs(x) - 1)]);
    if (x < 0) s += "^-1";
  }
  return s;
}

// ---------------------------------------------------------------------------
// Balls

std::vector<Letter> standard_generators(const Gbs& g) {
  const std::size_t n = static_cast<std::size_t>(g.n());
  std::vector<Letter> gens;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    for (std::size_t k = 0; k < n; ++k)
      for (long sign : {1L, -1L}) {
        ZVector z = zero_zvector(n);
        z[k] = sign;
        gens.push_back(Letter::gen(v, std::move(z)));
      }
  for (std::size_t j = 0; j < g.rank_d(); ++j) {
    gens.push_back(Letter::stable_letter(j, 1));
    gens.push_back(Letter::stable_letter(j, -1));
  }
  return gens;
}

std::optional<std::size_t> Ball::index_of(const NormalForm& nf) const {
  auto it = index_.find(nf.key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Ball::length_of(const NormalForm& nf) const {
  auto i = index_of(nf);
  if (!i) return std::nullopt;
  return lengths_[*i];
}

std::vector<std::size_t> Ball::sphere(int r) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < lengths_.size(); ++i)
    if (lengths_[i] == r) out.push_back(i);
  return out;
}

Ball ball(const Gbs& g, int radius, const std::vector<Letter>& generators, std::size_t cap) {
  if (radius < 0) throw Error(ErrorCode::DomainError, "negative radius");
  const std::vector<Letter> gens = generators.empty() ? standard_generators(g) : generators;
  Ball b;
  b.radius_ = radius;
  NormalForm id = NormalForm::identity(g);
  b.index_.emplace(id.key(), 0);
  b.elements_.push_back(std::move(id));
  b.lengths_.push_back(0);
  std::size_t layer_begin = 0;
  for (int r = 1; r <= radius; ++r) {
    std::size_t layer_end = b.elements_.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const auto& s : gens) {
        NormalForm next = b.elements_[i];
        next.prepend(g, s);
        auto [it, inserted] = b.index_.emplace(next.key(), b.elements_.size());
        if (!inserted) continue;
        if (b.elements_.size() >= cap)
          throw Error(ErrorCode::ResourceLimit, "ball exceeds " + std::to_string(cap) + " elements");
        b.elements_.push_back(std::move(next));
        b.lengths_.push_back(r);
      }
    }
    layer_begin = layer_end;
  }
  return b;
}

}  // namespace gbs
