#pragma once

// Finite graphs of groups with all vertex and edge groups Z^n: the document
// model, validation, the resolved (indexed) form used by every algorithm,
// built-in fixtures and the collapse normalisation.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gbs/lattice.hpp"
#include "gbs/numeric.hpp"

namespace gbs {

/// One geometric edge `id: from -> to`. sigma maps the edge group into the
/// group at `to`, sigma_bar into the group at `from`.
struct EdgeDecl {
  std::string id;
  std::string from;
  std::string to;
  ZMatrix sigma;
  ZMatrix sigma_bar;

  friend bool operator==(const EdgeDecl&, const EdgeDecl&) = default;
};

/// A graph-of-groups document. Optional fields are filled with defaults by
/// Gbs; a Gbs always exposes a fully explicit GbsData.
struct GbsData {
  int rank = 0;
  std::vector<std::string> vertices;
  std::vector<EdgeDecl> edges;
  std::optional<std::vector<std::string>> tree;
  /// (edge id, forward?) pairs; edges not listed are forward.
  std::vector<std::pair<std::string, bool>> orientation;
  std::optional<std::string> base;

  friend bool operator==(const GbsData&, const GbsData&) = default;
};

struct Issue {
  std::string code;
  std::string location;
  std::string message;
};

struct ValidationReport {
  std::vector<Issue> issues;
  bool ok() const { return issues.empty(); }
  std::string summary() const;
};

ValidationReport validate(const GbsData& data);

/// Validated graph of groups with integer indices. Oriented edges are
/// numbered 2k (the edge as declared) and 2k+1 (its reverse), so bar(e) = e^1.
class Gbs {
 public:
  /// Validates and fills defaults. Throws ValidationError.
  explicit Gbs(GbsData data);

  const GbsData& data() const { return data_; }
  int n() const { return data_.rank; }

  std::size_t vertex_count() const { return data_.vertices.size(); }
  const std::string& vertex_name(std::size_t v) const { return data_.vertices[v]; }
  std::optional<std::size_t> find_vertex(std::string_view name) const;

  std::size_t edge_count() const { return data_.edges.size(); }
  std::size_t oriented_count() const { return 2 * data_.edges.size(); }
  /// Oriented index of the declared direction of a geometric edge.
  std::optional<std::size_t> find_edge(std::string_view name) const;
  const std::string& edge_name(std::size_t e) const { return data_.edges[e / 2].id; }
  /// Name with direction, e.g. "e" or "e~" for the reverse.
  std::string oriented_name(std::size_t e) const;

  static std::size_t bar(std::size_t e) { return e ^ 1U; }
  std::size_t origin(std::size_t e) const { return origin_[e]; }
  std::size_t terminus(std::size_t e) const { return origin_[bar(e)]; }
  /// sigma_e : Z^n -> G_{terminus(e)}.
  const ZMatrix& sigma(std::size_t e) const { return sublattice(e).matrix(); }
  const SubLattice& sublattice(std::size_t e) const { return lattices_[e]; }

  bool in_tree(std::size_t e) const { return in_tree_[e / 2]; }
  /// Whether e is the chosen orientation of its geometric edge.
  bool in_orientation(std::size_t e) const { return forward_[e / 2] == (e % 2 == 0); }
  std::size_t base() const { return base_; }

  /// Oriented edges of A \ T, in declaration order.
  const std::vector<std::size_t>& stable_edges() const { return stable_; }
  std::optional<std::size_t> stable_index(std::size_t e) const;
  /// d = |A \ T|.
  std::size_t rank_d() const { return stable_.size(); }

  /// Oriented tree edges from the base to v.
  const std::vector<std::size_t>& tree_path(std::size_t v) const { return paths_[v]; }

  /// Oriented edges leaving v, ascending index.
  const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_[v]; }

  /// Sum of |det sigma_e| over edges entering v: the Bass-Serre tree degree.
  Integer tree_degree(std::size_t v) const;

 private:
  GbsData data_;
  std::vector<std::size_t> origin_;
  std::vector<SubLattice> lattices_;
  std::vector<bool> in_tree_;
  std::vector<bool> forward_;
  std::size_t base_ = 0;
  std::vector<std::size_t> stable_;
  std::vector<std::vector<std::size_t>> paths_;
  std::vector<std::vector<std::size_t>> out_;
};

/// Parses the line-oriented document format. Throws ParseError (with line and
/// column) or ValidationError.
Gbs parse_gbs(std::string_view text);
GbsData parse_document(std::string_view text);

/// Canonical document with every default made explicit.
std::string render(const Gbs& g);

/// Built-in fixtures: "bs" (m, n), "heisenberg", "z2-f2", "tree-amalgam"
/// (n^2 entries of M, default [[1]]).
Gbs builtin(std::string_view name, const std::vector<long>& params = {});
/// "name" or "name:p1,p2,..."
Gbs builtin_from_spec(std::string_view spec);

inline std::size_t rank_d(const Gbs& g) { return g.rank_d(); }

/// Repeatedly collapses tree edges with a unimodular side.
Gbs reduce_graph(const Gbs& g);

}  // namespace gbs
