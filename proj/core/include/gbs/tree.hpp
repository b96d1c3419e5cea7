#pragma once

// The Bass-Serre tree: canonical vertex addresses, the action of G, explored
// balls, elliptic/hyperbolic dynamics and ping-pong certificates.

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gbs/graph.hpp"
#include "gbs/words.hpp"

namespace gbs {

/// The coset r_1 e_1 r_2 e_2 ... r_k e_k G_type, with r_i the canonical
/// representative modulo sigma_{bar e_i}(Z^n) in the group at the origin of
/// e_i, and no step (0, bar e) right after a step along e.
struct TreeVertex {
  struct Step {
    ZVector rep;
    std::size_t edge;
    friend bool operator==(const Step&, const Step&) = default;
  };
  std::vector<Step> steps;
  std::size_t type = 0;

  std::size_t depth() const { return steps.size(); }
  std::string key() const;
  std::string str(const Gbs& g) const;
  friend bool operator==(const TreeVertex&, const TreeVertex&) = default;
};

TreeVertex base_vertex(const Gbs& g);

/// Neighbours in a fixed order: outgoing edges by index, then representatives
/// in box order. Their number is Gbs::tree_degree(type).
std::vector<TreeVertex> neighbors(const Gbs& g, const TreeVertex& x);

/// Left-to-right canonicalisation of a path read from the base vertex. The
/// pending element lives at the current vertex and is absorbed by its
/// stabiliser when the vertex is read off.
class TreeWalker {
 public:
  explicit TreeWalker(const Gbs& g);
  void append_element(const ZVector& z);
  void append_edge(std::size_t e);
  void append(const PathWord& p);
  void append(const TreeVertex& x);
  std::size_t current_type() const;
  TreeVertex vertex() const;
  const std::vector<TreeVertex::Step>& steps() const { return steps_; }

 private:
  const Gbs* g_;
  std::vector<TreeVertex::Step> steps_;
  ZVector pending_;
};

TreeVertex act(const Gbs& g, const PathWord& w, const TreeVertex& x);
TreeVertex act(const Gbs& g, const Word& w, const TreeVertex& x);
TreeVertex act(const Gbs& g, const NormalForm& w, const TreeVertex& x);

std::size_t distance(const TreeVertex& x, const TreeVertex& y);
/// Vertices of the geodesic from x to y, both ends included.
std::vector<TreeVertex> geodesic(const Gbs& g, const TreeVertex& x, const TreeVertex& y);

struct TreeBall {
  TreeVertex center;
  int radius = 0;
  std::vector<TreeVertex> vertices;  ///< breadth-first order
  std::vector<int> depth;            ///< distance from the center
  std::vector<std::size_t> parent;   ///< index of the parent (self for the center)
  std::vector<std::pair<std::size_t, std::size_t>> edges;  ///< parent -> child
  std::unordered_map<std::string, std::size_t> index;

  std::size_t sphere_size(int r) const;
};

TreeBall tree_ball(const Gbs& g, const TreeVertex& center, int radius, std::size_t cap = kDefaultBallCap);
std::string to_dot(const Gbs& g, const TreeBall& ball);

struct ElementDynamics {
  enum class Kind { Elliptic, Hyperbolic };
  Kind kind = Kind::Elliptic;
  /// A fixed vertex (elliptic) or a vertex on the axis (hyperbolic).
  TreeVertex point;
  std::size_t translation_length = 0;
  /// Consecutive axis vertices, 2 * kAxisPeriods * translation_length edges.
  std::vector<TreeVertex> axis_segment;
};

constexpr int kAxisPeriods = 2;
constexpr int kDefaultSearchRadius = 64;

/// Throws RadiusTooSmall when the descent towards the minimal-displacement
/// set needs more than `search_radius` steps.
ElementDynamics dynamics(const Gbs& g, const Word& w, int search_radius = kDefaultSearchRadius);

struct PingPongCertificate {
  Word first;
  Word second;
  std::size_t length_first = 0;
  std::size_t length_second = 0;
  /// Edges shared by the two axes.
  std::size_t overlap = 0;
};

/// Two explored axis segments certify distinct endpoint pairs when their
/// intersection is a nonempty segment, interior to both, shorter than both
/// translation lengths. Returns the overlap length in edges on success.
std::optional<std::size_t> axis_overlap_certificate(const ElementDynamics& a, const ElementDynamics& b);

constexpr int kDefaultPingPongDepth = 6;
constexpr std::size_t kDefaultPingPongWordCap = 200'000;

/// Shortlex search over freely reduced words in the standard generators of
/// length <= depth; the first certified pair wins. Throws ResourceLimit when
/// more than word_cap distinct elements would be examined.
std::optional<PingPongCertificate> ping_pong_search(const Gbs& g, int depth = kDefaultPingPongDepth,
                                                    int search_radius = kDefaultSearchRadius,
                                                    std::size_t word_cap = kDefaultPingPongWordCap);

/// Recomputes both axes from scratch and rechecks the certificate.
bool verify_ping_pong(const Gbs& g, const PingPongCertificate& c, int search_radius = kDefaultSearchRadius);

}  // namespace gbs
