#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "stackup/error.hpp"
#include "stackup/exact.hpp"
#include "stackup/gen.hpp"
#include "stackup/seqgraph.hpp"

using namespace stackup;

namespace {

int witness_max_open(const Instance& inst, const Solution& sol) {
  const auto v = verify_solution(inst, sol, static_cast<int>(inst.m()) + 1);
  return v.ok ? v.max_open : -1;
}

}  // namespace

TEST_CASE("processing search on the worked example") {
  const auto inst = example1();
  const auto rep = solve_processing_bfs(inst);
  CHECK(rep.optimum == 2);
  CHECK(witness_max_open(inst, rep.solution) == 2);
  CHECK(oracle::replay_bin_order(inst, std::get<BinOrder>(rep.solution).bins) == 2);
  CHECK(rep.path.front().config == Configuration{0, 0});
  CHECK(rep.path.back().config == Configuration{4, 6});
  CHECK(rep.nodes_expanded <= 35);
}

TEST_CASE("processing search forced and trivial cases") {
  CHECK(solve_processing_bfs(parse_instance("k=1\na b a b\n")).optimum == 2);
  CHECK(solve_processing_bfs(parse_instance("k=3\na a\nb b b\nc c\n")).optimum == 1);
  SearchOptions tiny;
  tiny.node_budget = 10;
  CHECK_THROWS_AS(solve_processing_bfs(example1(), tiny), CapacityError);
}

TEST_CASE("decision search on the worked example") {
  const auto inst = example1();
  const auto rep = solve_decision_bfs(inst);
  CHECK(rep.optimum == 2);
  REQUIRE(std::holds_alternative<PalletOrder>(rep.solution));
  CHECK(verify_solution(inst, rep.solution, 2).ok);
  CHECK_THROWS_AS(solve_decision_bfs(inst, 1), NotFoundUnderCut);
  CHECK(solve_decision_bfs(inst, 2).optimum == 2);

  const auto lone = parse_instance("k=1\na a a\n");
  const auto one = solve_decision_bfs(lone);
  CHECK(one.optimum == 1);
  CHECK(std::get<PalletOrder>(one.solution).pallets == std::vector<PalletId>{0});
}

TEST_CASE("automatic closure on the worked example") {
  const auto inst = example1();
  const FirstLastTable tbl(inst);
  const PalletId c = *inst.find_pallet("c");
  const PalletId a = *inst.find_pallet("a");
  const std::vector<PalletId> open_c{c};
  CHECK(automatic_closure(inst, tbl, Configuration{0, 1}, open_c) == Configuration{0, 1});
  CHECK(automatic_closure(inst, tbl, Configuration{0, 4}, {}) == Configuration{0, 4});
  // a open at (1, 4): q_2's front a goes, then b blocks both sequences
  const std::vector<PalletId> open_a{a};
  CHECK(automatic_closure(inst, Configuration{1, 4}, open_a) == Configuration{1, 5});
}

TEST_CASE("closure is confluent") {
  std::mt19937_64 rng(29);
  int tested = 0;
  while (tested < 60) {
    const auto inst = oracle::random_instance(rng, 1 + rng() % 4, 2 + rng() % 6, 2, 5);
    const auto cfg = oracle::random_configuration(inst, rng);
    const auto open_ids = oracle::open_pallets(inst, cfg);
    if (open_ids.empty()) continue;
    ++tested;
    const std::vector<PalletId> open(open_ids.begin(), open_ids.end());
    const auto closed = automatic_closure(inst, cfg, open);
    for (int r = 0; r < 10; ++r) CHECK(oracle::shuffled_closure(inst, cfg, rng) == closed);
  }
}

TEST_CASE("cutting") {
  const auto inst = example1();
  const auto first = solve_with_cutting(inst, 5);
  CHECK(first.optimum == 2);
  CHECK(first.cut_iterations == 1);
  const auto unit = solve_with_cutting(inst, 1);
  CHECK(unit.optimum == 2);
  CHECK(unit.cut_iterations == 2);
  CHECK_THROWS_AS(solve_with_cutting(inst, 0), PreconditionError);
}

TEST_CASE("cutting with optimum above the first step") {
  // find a generated instance whose optimum is exactly 7
  std::optional<Instance> found;
  for (std::uint64_t seed = 0; seed < 200 && !found; ++seed) {
    GenParams p{7, 4, 12, 2, 4, 3, seed};
    auto inst = generate(p);
    if (solve_decision_bfs(inst).optimum == 7) found = std::move(inst);
  }
  REQUIRE(found);
  CHECK(optimum_places_via_dpw(*found) == 7);
  const auto rep = solve_with_cutting(*found, 5);
  CHECK(rep.optimum == 7);
  CHECK(rep.cut_iterations == 2);
  CHECK(verify_solution(*found, rep.solution, 7).ok);
}

TEST_CASE("oracles on the worked example") {
  const auto inst = example1();
  const auto perm = brute_force_pallet_perm(inst);
  CHECK(perm.optimum == 2);
  CHECK(perm.evaluated == 24);
  CHECK(verify_solution(inst, perm.witness, 2).ok);

  const auto orders = brute_force_sequence_orders(inst);
  CHECK(orders.optimum == 2);
  CHECK(orders.evaluated == 16);
  CHECK(verify_sequence_solution(inst, SequenceOrder{{1, 1, 0, 0}}, 2).ok);

  const auto forced = brute_force_sequence_orders(parse_instance("k=1\na b a b\n"));
  CHECK(forced.optimum == 2);
  CHECK(forced.evaluated == 1);
  CHECK(brute_force_pallet_perm(parse_instance("k=1\nz z\n")).optimum == 1);
}

TEST_CASE("oracle size guards") {
  std::vector<std::vector<std::string>> seqs(1);
  for (int t = 0; t < 10; ++t) seqs[0].insert(seqs[0].end(), 2, "t" + std::to_string(t));
  CHECK_THROWS_AS(brute_force_pallet_perm(Instance::from_tokens(seqs)), CapacityError);
  std::vector<std::vector<std::string>> many(10);
  for (int t = 0; t < 10; ++t) many[t] = {"t" + std::to_string(t), "t" + std::to_string(t)};
  CHECK_THROWS_AS(brute_force_sequence_orders(Instance::from_tokens(many)), CapacityError);
}

TEST_CASE("all exact methods agree with exhaustive interleaving") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 120; ++trial) {
    const auto inst = oracle::random_instance(rng, 1 + trial % 3, 2 + trial % 4, 2, 3);
    const int truth = oracle::interleaving_optimum(inst);
    CAPTURE(emit_instance(inst));
    const auto proc = solve_processing_bfs(inst);
    const auto dec = solve_decision_bfs(inst);
    CHECK(proc.optimum == truth);
    CHECK(dec.optimum == truth);
    CHECK(solve_with_cutting(inst, 1).optimum == truth);
    CHECK(brute_force_pallet_perm(inst).optimum == truth);
    CHECK(brute_force_sequence_orders(inst).optimum == truth);
    CHECK(optimum_places_via_dpw(inst) == truth);
    CHECK(witness_max_open(inst, proc.solution) == truth);
    CHECK(witness_max_open(inst, dec.solution) == truth);
  }
}

TEST_CASE("csv report") {
  const auto rep = solve_decision_bfs(example1());
  CHECK(report_csv_header() == "instance,algo,optimum,nodes,time_ms,iterations");
  const auto row = report_csv_row("ex1", rep);
  CHECK(row.rfind("ex1," + rep.algorithm + ",2,", 0) == 0);
}
