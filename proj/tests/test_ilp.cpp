#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "stackup/error.hpp"
#include "stackup/exact.hpp"
#include "stackup/ilp.hpp"
#include "stackup/seqgraph.hpp"

using namespace stackup;

namespace {

std::size_t bin_model_vars(std::size_t n, std::size_t m) { return n * n + 3 * m * (n - 1) + 1; }
std::size_t pallet_model_vars(std::size_t m) { return m * m + m * m * m * m + m * (m - 1) / 2 + 1; }

SequenceDigraph path3() {
  SequenceDigraph g({"a", "b", "c"});
  g.add_arc(0, 1);
  g.add_arc(1, 2);
  return g;
}

}  // namespace

TEST_CASE("bin model size") {
  const auto inst = parse_instance("k=1\na b a b\n");
  const auto model = build_bin_model(inst, "abab");
  CHECK(model.variables().size() == 35);
  CHECK(model.variables().size() == bin_model_vars(4, 2));
  CHECK(model.count(VarKind::Integer) == 1);
  CHECK(model.variables()[model.objective()].name == "p");
  CHECK(model.find("x_4_4"));
  CHECK(model.find("f_2_3"));
  CHECK_FALSE(model.find("f_2_4"));

  const auto ex = build_bin_model(example1());
  CHECK(ex.variables().size() == bin_model_vars(10, 4));
}

TEST_CASE("pallet model size") {
  const auto model = build_pallet_model(path3(), "path");
  CHECK(model.variables().size() == 94);
  CHECK(model.variables().size() == pallet_model_vars(3));
  CHECK(model.variables()[model.objective()].name == "w");
  CHECK(model.find("Y_1_2"));
  CHECK_FALSE(model.find("Y_2_1"));
  const auto g4 = build_sequence_graph(example1());
  CHECK(build_pallet_model(g4).variables().size() == pallet_model_vars(4));
}

TEST_CASE("solving the worked example models") {
  const auto inst = example1();
  const auto bin = build_bin_model(inst);
  const auto sol = solve_tiny(bin);
  REQUIRE(sol.status == IlpStatus::Optimal);
  CHECK(sol.objective_value == 2);
  CHECK(satisfies(bin, sol.assignment));
  const auto order = bin_order_from(bin, inst, sol);
  CHECK(verify_bin_solution(inst, order, 2).ok);

  const auto g = build_sequence_graph(inst);
  const auto pallet = build_pallet_model(g);
  const auto psol = solve_tiny(pallet);
  REQUIRE(psol.status == IlpStatus::Optimal);
  CHECK(psol.objective_value == 1);
  CHECK(layout_width(g, vertex_order_from(pallet, g.vertex_count(), psol)) == 1);
}

TEST_CASE("tiny models") {
  const auto single = parse_instance("k=1\na a\n");
  const auto sol = solve_tiny(build_bin_model(single));
  REQUIRE(sol.status == IlpStatus::Optimal);
  CHECK(sol.objective_value == 1);

  const auto arcless = build_pallet_model(SequenceDigraph({"a", "b", "c"}));
  const auto w = solve_tiny(arcless);
  REQUIRE(w.status == IlpStatus::Optimal);
  CHECK(w.objective_value == 0);

  IlpModel bad;
  const auto x = bad.add_var("x");
  const auto z = bad.add_var("z", VarKind::Integer);
  bad.set_objective(z);
  bad.add_constraint("zero", {{x, 1}}, Relation::Equal, 0);
  bad.add_constraint("one", {{x, 1}}, Relation::Equal, 1);
  CHECK(solve_tiny(bad).status == IlpStatus::Infeasible);

  CHECK(solve_tiny(build_bin_model(example1()), 3).status == IlpStatus::BudgetExceeded);
}

TEST_CASE("LP text round trip") {
  const auto model = build_pallet_model(path3(), "path");
  const auto text = emit_lp(model);
  CHECK(text.rfind("\\ model: pallet\n", 0) == 0);
  CHECK(text.find("Minimize\n obj: w\nSubject To\n") != std::string::npos);
  CHECK(text.find("\nBinary\n") != std::string::npos);
  CHECK(text.find("\nGeneral\n w\nEnd\n") != std::string::npos);
  CHECK(validate_lp(text).empty());

  const auto back = parse_lp(text);
  CHECK(back.kind == ModelKind::Pallet);
  CHECK(back.instance_id == "path");
  CHECK(back.variables().size() == 94);
  REQUIRE(back.constraints().size() == model.constraints().size());
  CHECK(back.constraints() == model.constraints());
  CHECK(emit_lp(back) == text);

  const auto bin = build_bin_model(example1(), "ex1");
  const auto bin_text = emit_lp(bin);
  CHECK(validate_lp(bin_text).empty());
  CHECK(parse_lp(bin_text).constraints() == bin.constraints());
}

TEST_CASE("LP validation finds structural problems") {
  const std::string undeclared = "Minimize\n obj: p\nSubject To\n c1: x + y <= 1\nBinary\n x\nGeneral\n p\nEnd\n";
  const auto problems = validate_lp(undeclared);
  REQUIRE(problems.size() == 1);
  CHECK(problems[0].find("'y'") != std::string::npos);
  CHECK_THROWS_AS(parse_lp(undeclared), ParseError);
  CHECK_FALSE(validate_lp("Minimize\n obj: p\nGeneral\n p\n").empty());
  CHECK_THROWS_AS(parse_lp("Minimize\n obj: p\nSubject To\n c1: p\nGeneral\n p\nEnd\n"), ParseError);
}

TEST_CASE("LP coefficients and wrapping") {
  IlpModel m;
  std::vector<Term> terms;
  for (int i = 0; i < 12; ++i) terms.push_back({m.add_var("v" + std::to_string(i)), i % 2 ? -2 : 1});
  const auto z = m.add_var("z", VarKind::Integer);
  m.set_objective(z);
  m.add_constraint("wide", terms, Relation::GreaterEq, -3);
  const auto text = emit_lp(m);
  CHECK(text.find(" wide: v0 - 2 v1 + v2") != std::string::npos);
  CHECK(parse_lp(text).constraints() == m.constraints());
}

TEST_CASE("bin model objective equals the search optimum") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 15; ++trial) {
    const auto inst = oracle::random_instance(rng, 1 + trial % 3, 2 + trial % 2, 2, 3);
    if (inst.n() > 8) continue;
    const auto model = build_bin_model(inst);
    const auto sol = solve_tiny(model);
    REQUIRE(sol.status == IlpStatus::Optimal);
    CHECK(sol.objective_value == oracle::interleaving_optimum(inst));
    CHECK(verify_bin_solution(inst, bin_order_from(model, inst, sol), static_cast<int>(sol.objective_value)).ok);
  }
}

TEST_CASE("pallet model objective equals the separation width") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = oracle::random_digraph(rng, 2 + trial % 3, 0.2 + 0.1 * (trial % 6));
    const auto model = build_pallet_model(g);
    const auto sol = solve_tiny(model);
    REQUIRE(sol.status == IlpStatus::Optimal);
    CHECK(sol.objective_value == oracle::separation_by_permutations(g));
    CHECK(oracle::ordering_width(g, vertex_order_from(model, g.vertex_count(), sol)) == sol.objective_value);
  }
}
