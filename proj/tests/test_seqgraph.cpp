#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "stackup/error.hpp"
#include "stackup/exact.hpp"
#include "stackup/seqgraph.hpp"

using namespace stackup;

namespace {

std::set<std::pair<std::string, std::string>> labelled_arcs(const SequenceDigraph& g) {
  std::set<std::pair<std::string, std::string>> out;
  for (auto [u, v] : g.arcs()) out.emplace(g.label(u), g.label(v));
  return out;
}

SequenceDigraph digraph_from(std::vector<std::string> labels, std::vector<std::pair<int, int>> arcs) {
  SequenceDigraph g(std::move(labels));
  for (auto [u, v] : arcs) g.add_arc(static_cast<VertexId>(u), static_cast<VertexId>(v));
  return g;
}

}  // namespace

TEST_CASE("sequence graph of the three-sequence example") {
  const auto inst = example6();
  const auto g = build_sequence_graph(inst);
  const std::set<std::pair<std::string, std::string>> expected = {
      {"a", "d"}, {"a", "e"}, {"d", "e"}, {"e", "d"}, {"c", "b"}, {"c", "d"}, {"b", "d"}, {"c", "e"}};
  CHECK(labelled_arcs(g) == expected);
  CHECK(oracle::sequence_graph_arcs(inst) == expected);
  CHECK(g.arc_count() == 8);
}

TEST_CASE("sequence graph of the worked example") {
  const auto g = build_sequence_graph(example1());
  const std::set<std::pair<std::string, std::string>> expected = {
      {"a", "b"}, {"b", "a"}, {"c", "d"}, {"d", "c"}, {"c", "a"}, {"c", "b"}, {"d", "a"}, {"d", "b"}};
  CHECK(labelled_arcs(g) == expected);
}

TEST_CASE("sequence graph without arcs") {
  const auto g = build_sequence_graph(parse_instance("k=1\na a\n"));
  CHECK(g.vertex_count() == 1);
  CHECK(g.arc_count() == 0);
}

TEST_CASE("sequence graph matches the pairwise scan on random instances") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = oracle::random_instance(rng, 1 + trial % 5, 1 + trial % 9, 1, 5);
    CHECK(labelled_arcs(build_sequence_graph(inst)) == oracle::sequence_graph_arcs(inst));
  }
}

TEST_CASE("sequence system of the seven-arc digraph") {
  const auto g = parse_digraph(read_data("example3.digraph"));
  CHECK(g.vertex_count() == 6);
  CHECK(g.arc_count() == 7);
  const auto q = build_sequence_system(g);
  const std::vector<std::vector<std::string>> expected = {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"},
                                                          {"e", "a"}, {"e", "f"}, {"f", "a"}};
  REQUIRE(q.k() == expected.size());
  for (std::size_t j = 0; j < q.k(); ++j) {
    CHECK(q.token(q.pallet_at(j, 0)) == expected[j][0]);
    CHECK(q.token(q.pallet_at(j, 1)) == expected[j][1]);
  }
  CHECK(roundtrip_check(g));
}

TEST_CASE("sequence system corner cases") {
  const auto empty = build_sequence_system(SequenceDigraph({"x", "y"}));
  CHECK(empty.k() == 0);
  CHECK(roundtrip_check(SequenceDigraph{}));
  CHECK(roundtrip_check(SequenceDigraph({"x", "y"})));

  const auto one = build_sequence_system(digraph_from({"u", "v"}, {{0, 1}}));
  REQUIRE(one.k() == 1);
  CHECK(one.n() == 2);
  CHECK(one.token(one.pallet_at(0, 0)) == "u");
}

TEST_CASE("round trip on random digraphs") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::random_digraph(rng, 8, 0.1 + 0.05 * (trial % 10));
    CHECK(roundtrip_check(g));
    const auto back = build_sequence_graph(build_sequence_system(g));
    CHECK(back.same_as(g, true));
  }
}

TEST_CASE("digraph add_arc rules") {
  SequenceDigraph g({"a", "b"});
  CHECK(g.add_arc(0, 1));
  CHECK_FALSE(g.add_arc(0, 1));
  CHECK_THROWS_AS(g.add_arc(1, 1), PreconditionError);
  CHECK(g.has_arc(0, 1));
  CHECK_FALSE(g.has_arc(1, 0));
  CHECK(g.in_neighbours(1) == std::vector<VertexId>{0});
}

TEST_CASE("digraph text format") {
  const auto g = parse_digraph("digraph\n# comment\nz\na b\nb a\n");
  CHECK(g.vertex_count() == 3);
  CHECK(g.arc_count() == 2);
  CHECK(g.is_isolated(static_cast<VertexId>(g.find("z"))));
  CHECK(parse_digraph(emit_digraph(g)).same_as(g, false));
  CHECK_THROWS_AS(parse_digraph("a b\n"), ParseError);
  CHECK_THROWS_AS(parse_digraph("digraph\na a\n"), ParseError);
  CHECK_THROWS_AS(parse_digraph("digraph\na b c\n"), ParseError);
}

TEST_CASE("vertex separation of the worked example") {
  const auto g = build_sequence_graph(example1());
  const auto layout = directed_vertex_separation(g);
  CHECK(layout.width == 1);
  CHECK(oracle::separation_by_permutations(g) == 1);
  std::vector<std::string> order;
  for (auto v : layout.order) order.push_back(g.label(v));
  CHECK(order == std::vector<std::string>{"c", "d", "a", "b"});
  CHECK(layout_width(g, layout.order) == 1);
}

TEST_CASE("vertex separation small cases") {
  const auto complete = digraph_from({"a", "b", "c"}, {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}});
  CHECK(directed_vertex_separation(complete).width == 2);
  CHECK(directed_vertex_separation(SequenceDigraph({"a", "b", "c"})).width == 0);
  CHECK(directed_vertex_separation(SequenceDigraph{}).width == 0);
  CHECK_THROWS_AS(layout_width(complete, {0, 1}), PreconditionError);
  CHECK_THROWS_AS(layout_width(complete, {0, 1, 1}), PreconditionError);

  const auto cycle = parse_digraph(read_data("example3.digraph"));
  const auto layout = directed_vertex_separation(cycle);
  CHECK(layout.width == oracle::separation_by_permutations(cycle));
  CHECK(oracle::ordering_width(cycle, layout.order) == layout.width);
}

TEST_CASE("vertex separation agrees with all orderings") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 120; ++trial) {
    const auto g = oracle::random_digraph(rng, 1 + trial % 7, 0.15 + 0.07 * (trial % 9));
    const auto layout = directed_vertex_separation(g);
    CHECK(layout.width == oracle::separation_by_permutations(g));
    CHECK(layout_width(g, layout.order) == layout.width);
    CHECK(oracle::ordering_width(g, layout.order) == layout.width);
  }
}

TEST_CASE("vertex separation size guard") {
  std::vector<std::string> labels;
  for (int i = 0; i < 25; ++i) labels.push_back("v" + std::to_string(i));
  CHECK_THROWS_AS(directed_vertex_separation(SequenceDigraph(labels)), CapacityError);
}

TEST_CASE("places via vertex separation") {
  CHECK(optimum_places_via_dpw(example1()) == 2);
  CHECK(optimum_places_via_dpw(parse_instance("k=1\na a\n")) == 1);
  const auto cycle = parse_digraph(read_data("example3.digraph"));
  const auto q = build_sequence_system(cycle);
  CHECK(optimum_places_via_dpw(q) == oracle::separation_by_permutations(cycle) + 1);
  CHECK(optimum_places_via_dpw(q) == oracle::interleaving_optimum(q));
  CHECK(optimum_places_via_dpw(example6()) == oracle::interleaving_optimum(example6()));
}
