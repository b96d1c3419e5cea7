#include <gtest/gtest.h>

#include "gbs/graph.hpp"
#include "support.hpp"

using namespace gbs;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::DomainError;
}

}  // namespace

TEST(Graph, ParsesDocument) {
  const Gbs g = parse_gbs(
      "# Baumslag-Solitar (2,3)\n"
      "rank n = 1\n"
      "vertex v\n"
      "edge e: v -> v sigma = [2] sigma_bar = [3]\n");
  EXPECT_EQ(g.n(), 1);
  EXPECT_EQ(g.vertex_count(), 1u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.rank_d(), 1u);
  EXPECT_FALSE(g.in_tree(0));
  EXPECT_EQ(g.sigma(0), ZMatrix{{2}});
  EXPECT_EQ(g.sigma(1), ZMatrix{{3}});
  EXPECT_EQ(g.data(), builtin("bs", {2, 3}).data());
}

TEST(Graph, RenderRoundTrips) {
  for (auto spec : {"bs:2,3", "heisenberg", "z2-f2", "tree-amalgam:2,1,1,1"}) {
    const Gbs g = builtin_from_spec(spec);
    EXPECT_EQ(parse_gbs(render(g)).data(), g.data()) << spec;
    EXPECT_EQ(render(parse_gbs(render(g))), render(g));
  }
}

TEST(Graph, RandomDocumentsRoundTrip) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 100; ++k) {
    const Gbs g(gbs::testing::random_gbs_data(rng));
    const Gbs back = parse_gbs(render(g));
    EXPECT_EQ(back.data(), g.data());
    EXPECT_EQ(back.rank_d(), g.edge_count() + 1 - g.vertex_count());
  }
}

TEST(Graph, ParseErrorsCarryPositions) {
  try {
    parse_gbs("rank n = 1\nvertex v\nedge e v -> v\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 8);
  }
  EXPECT_EQ(code_of([] { parse_gbs("rank n = x\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_gbs("frobnicate\n"); }), ErrorCode::ParseError);
}

TEST(Graph, ValidationIssues) {
  EXPECT_EQ(code_of([] { parse_gbs("rank n = 1\nvertex v\nedge e: v -> w sigma = [2] sigma_bar = [3]\n"); }),
            ErrorCode::ValidationError);
  EXPECT_EQ(code_of([] { parse_gbs("rank n = 1\nvertex v\nedge e: v -> v sigma = [0] sigma_bar = [3]\n"); }),
            ErrorCode::ValidationError);
  const auto report = validate(parse_document("rank n = 2\nvertex a\nvertex b\n"));
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.issues[0].code, "disconnected");
}

TEST(Graph, Builtins) {
  const Gbs z = builtin("z2-f2");
  EXPECT_EQ(z.n(), 2);
  EXPECT_EQ(z.rank_d(), 2u);
  const Gbs h = builtin("heisenberg");
  EXPECT_EQ(h.sigma(1), (ZMatrix{{1, 1}, {0, 1}}));
  const Gbs t = builtin("tree-amalgam", {2, 0, 0, 3});
  EXPECT_EQ(t.vertex_count(), 2u);
  EXPECT_EQ(t.rank_d(), 0u);
  EXPECT_TRUE(t.in_tree(0));
  // Degree at u counts the cosets of sigma_bar = M, at w those of I.
  EXPECT_EQ(t.tree_degree(0), 6);
  EXPECT_EQ(t.tree_degree(1), 1);
  EXPECT_EQ(builtin("bs", {2, 3}).tree_degree(0), 5);
  EXPECT_EQ(code_of([] { builtin("bs", {2}); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([] { builtin("nope"); }), ErrorCode::UnknownBuiltin);
  EXPECT_EQ(code_of([] { builtin("tree-amalgam", {1, 1, 1, 1}); }), ErrorCode::BadParams);
}

TEST(Graph, ExplicitChoicesAreHonoured) {
  const Gbs g = parse_gbs(
      "rank n = 1\nvertex a\nvertex b\n"
      "edge f: a -> b sigma = [1] sigma_bar = [2]\n"
      "edge g: a -> b sigma = [3] sigma_bar = [1]\n"
      "tree: g\norientation: f:rev\nbase: b\n");
  EXPECT_EQ(g.base(), *g.find_vertex("b"));
  EXPECT_TRUE(g.in_tree(2));
  EXPECT_FALSE(g.in_tree(0));
  ASSERT_EQ(g.stable_edges().size(), 1u);
  EXPECT_EQ(g.stable_edges()[0], 1u);  // f reversed
  EXPECT_EQ(g.tree_path(*g.find_vertex("a")), std::vector<std::size_t>{3});
}

TEST(Graph, ReduceCollapsesUnimodularTreeEdges) {
  const Gbs r = reduce_graph(builtin("tree-amalgam"));
  EXPECT_EQ(r.vertex_count(), 1u);
  EXPECT_EQ(r.edge_count(), 0u);
  const Gbs keep = reduce_graph(builtin("bs", {2, 3}));
  EXPECT_EQ(keep.data(), builtin("bs", {2, 3}).data());

  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    const Gbs g(gbs::testing::random_gbs_data(rng));
    const Gbs red = reduce_graph(g);
    EXPECT_EQ(red.rank_d(), g.rank_d());
    for (std::size_t e = 0; e < red.oriented_count(); ++e)
      if (red.in_tree(e)) {
        EXPECT_FALSE(red.sublattice(e).unimodular());
      }
  }
}
