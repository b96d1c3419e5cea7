#pragma once

// Elements of the fundamental group: words in vertex generators and stable
// letters, loop (path) words at the base vertex, Britton reduction, canonical
// normal forms, the projection to the free group on the stable letters, and
// word-metric balls.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gbs/graph.hpp"
#include "gbs/numeric.hpp"

namespace gbs {

struct Letter {
  enum class Kind { Vertex, Stable };
  Kind kind = Kind::Vertex;
  /// Vertex generator: element z of the group at `vertex`.
  std::size_t vertex = 0;
  ZVector z;
  /// Stable letter: index into Gbs::stable_edges(), exponent ±1.
  std::size_t stable = 0;
  int exponent = 1;

  static Letter gen(std::size_t vertex, ZVector z);
  static Letter stable_letter(std::size_t index, int exponent);
  Letter inverse() const;

  friend bool operator==(const Letter&, const Letter&) = default;
};

struct Word {
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  Word inverse() const;
  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;
};

/// Syntax: tokens separated by '*' or whitespace.
///   b, bK        K-th standard generator (b = b1) at the base vertex
///   bK@v         ... at vertex v
///   t_<edge>     stable letter of a non-tree edge
///   t, tK        the only / K-th stable letter
///   any of the above with ^k, k a signed integer; "1" is the empty word.
/// Throws MalformedWord.
Word parse_word(const Gbs& g, std::string_view text);
std::string format_word(const Gbs& g, const Word& w);

/// g_0 e_1 g_1 ... e_k g_k, a loop at the base vertex. elements[i] lies in
/// the group at the terminus of edges[i-1] (the base for i = 0).
struct PathWord {
  std::vector<ZVector> elements;
  std::vector<std::size_t> edges;

  friend bool operator==(const PathWord&, const PathWord&) = default;
};

PathWord to_path_word(const Gbs& g, const Word& w);

/// Britton reduction: removes every pinch e g bar(e) with g in sigma_e(Z^n),
/// leftmost first.
PathWord reduce(const Gbs& g, const PathWord& p);

/// Canonical form h e_1 r_1 ... e_k r_k with each r_i the canonical
/// representative modulo sigma_{e_i}(Z^n) and no cancelling pair e, bar(e)
/// around a zero representative. Built by prepending from the right.
class NormalForm {
 public:
  struct Syllable {
    std::size_t edge;
    ZVector rep;
    friend bool operator==(const Syllable&, const Syllable&) = default;
  };

  NormalForm() = default;
  static NormalForm identity(const Gbs& g);

  const ZVector& head() const { return head_; }
  std::size_t edge_length() const { return rev_.size(); }
  /// Left to right.
  std::vector<Syllable> syllables() const { return {rev_.rbegin(), rev_.rend()}; }
  bool is_identity() const { return rev_.empty() && is_zero(head_); }
  /// Vertex carrying the head.
  std::size_t leading_vertex(const Gbs& g) const { return rev_.empty() ? g.base() : g.origin(rev_.back().edge); }

  /// Left multiplication by an element of the group at the leading vertex.
  void prepend_element(const ZVector& z);
  /// Left multiplication by the edge e, which must end at the leading vertex.
  void prepend_edge(const Gbs& g, std::size_t e);
  /// Left multiplication by a letter (the leading vertex must be the base).
  void prepend(const Gbs& g, const Letter& letter);

  PathWord to_path_word() const;
  /// Injective serialisation, used as a hash key.
  std::string key() const;
  std::string str(const Gbs& g) const;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;

 private:
  ZVector head_;
  std::vector<Syllable> rev_;  // right to left
};

NormalForm normal_form(const Gbs& g, const Word& w);
NormalForm normal_form(const Gbs& g, const PathWord& p);
NormalForm multiply(const Gbs& g, const NormalForm& a, const NormalForm& b);
NormalForm inverse(const Gbs& g, const NormalForm& a);

/// Reduced word in the free group on the stable letters: entry j+1 stands
/// for t_j, -(j+1) for its inverse.
using FreeWord = std::vector<int>;
FreeWord free_reduce(const FreeWord& w);
FreeWord phi(const Gbs& g, const Word& w);
FreeWord phi(const Gbs& g, const NormalForm& nf);
std::string format_free_word(const Gbs& g, const FreeWord& w);

/// ± standard basis vectors at every vertex, then ± each stable letter.
std::vector<Letter> standard_generators(const Gbs& g);

constexpr std::size_t kDefaultBallCap = 1'000'000;

/// Every element of word length <= radius exactly once, in breadth-first
/// order, with its word length.
class Ball {
 public:
  int radius() const { return radius_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<NormalForm>& elements() const { return elements_; }
  const std::vector<int>& lengths() const { return lengths_; }
  std::optional<int> length_of(const NormalForm& nf) const;
  std::optional<std::size_t> index_of(const NormalForm& nf) const;
  /// Indices of the elements of length exactly r.
  std::vector<std::size_t> sphere(int r) const;

 private:
  friend Ball ball(const Gbs&, int, const std::vector<Letter>&, std::size_t);
  int radius_ = 0;
  std::vector<NormalForm> elements_;
  std::vector<int> lengths_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Throws ResourceLimit beyond `cap` elements. An empty generator list means
/// standard_generators(g).
Ball ball(const Gbs& g, int radius, const std::vector<Letter>& generators = {},
          std::size_t cap = kDefaultBallCap);

}  // namespace gbs
