#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "stackup/error.hpp"
#include "stackup/exact.hpp"
#include "stackup/gen.hpp"

using namespace stackup;

TEST_CASE("splitmix64 reference values") {
  // first outputs for seed 0 and seed 1234567 of the reference splitmix64
  SplitMix64 zero(0);
  CHECK(zero.next() == 0xE220A8397B1DCDAFull);
  CHECK(zero.next() == 0x6E789E6AA1B965F4ull);
  CHECK(zero.next() == 0x06C45D188009454Full);
  SplitMix64 other(1234567);
  CHECK(other.next() == 6457827717110365317ull);
  CHECK(other.next() == 3203168211198807973ull);
}

TEST_CASE("uniform stays in range") {
  SplitMix64 rng(9);
  for (int i = 0; i < 10000; ++i) {
    const auto v = rng.uniform(3, 7);
    CHECK(v >= 3);
    CHECK(v <= 7);
  }
  CHECK(rng.uniform(5, 5) == 5);
}

TEST_CASE("parameter validation") {
  GenParams odd{2, 2, 3, 2, 3, 2, 0};
  CHECK_FALSE(validate_params(odd).ok());
  CHECK_THROWS_AS(generate(odd), PreconditionError);

  GenParams wide{10, 2, 4, 2, 3, 2, 0};
  const auto check = validate_params(wide);
  CHECK(check.ok());
  CHECK(check.warnings.size() == 1);

  GenParams row1{14, 8, 100, 10, 20, 4, 0};
  CHECK(validate_params(row1).ok());
  CHECK(validate_params(row1).warnings.empty());

  CHECK_FALSE(validate_params({2, 2, 4, 3, 2, 2, 0}).ok());  // r_min > r_max
  CHECK_FALSE(validate_params({2, 2, 4, 2, 3, 3, 0}).ok());  // d > k
  CHECK_FALSE(validate_params({0, 2, 4, 2, 3, 2, 0}).ok());
  CHECK_FALSE(validate_params({2, 0, 4, 2, 3, 1, 0}).ok());
  CHECK_FALSE(validate_params({2, 2, 4, 0, 3, 2, 0}).ok());
  CHECK(validate_params({2, 2, 4, 1, 3, 2, 0}).ok());
  CHECK(validate_params({2, 2, 4, 1, 3, 2, 0}).warnings.size() == 1);
  CHECK(validate_params({2, 4, 4, 2, 3, 2, 0}).warnings.size() == 1);  // k >= m
}

TEST_CASE("generation is deterministic") {
  GenParams p{2, 2, 4, 2, 3, 2, 42};
  const auto a = emit_generated(p, generate(p));
  const auto b = emit_generated(p, generate(p));
  CHECK(a == b);
  CHECK(a.rfind("# generated pmax=2 k=2 m=4 rmin=2 rmax=3 d=2 seed=42\n", 0) == 0);
  p.seed = 43;
  CHECK(emit_generated(p, generate(p)) != a);
}

TEST_CASE("golden generated files") {
  for (std::uint64_t seed : {1, 2, 3}) {
    GenParams p{3, 3, 6, 2, 4, 2, seed};
    CAPTURE(seed);
    CHECK(emit_generated(p, generate(p)) == read_data("gen_seed" + std::to_string(seed) + ".txt"));
  }
}

TEST_CASE("generated instances respect the construction") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GenParams p{1 + static_cast<int>(seed % 4), 1 + static_cast<int>(seed % 3), 2 + 2 * static_cast<int>(seed % 3),
                2, 2 + static_cast<int>(seed % 3), 1, seed};
    p.d = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(p.k));
    const auto gen = generate_traced(p);
    const auto& inst = gen.instance;
    CAPTURE(seed);
    CHECK(inst.k() == static_cast<std::size_t>(p.k));
    CHECK(inst.m() == static_cast<std::size_t>(p.m));
    std::size_t total = 0;
    for (int c : gen.bins_per_pallet) {
      CHECK(c >= p.r_min);
      CHECK(c <= p.r_max);
      total += static_cast<std::size_t>(c);
    }
    CHECK(total == inst.n());
    CHECK(inst.n() == static_cast<std::size_t>(p.m * ((p.r_min + p.r_max) / 2)));
    for (int open : gen.open_after_step) CHECK(open <= p.p_max);
    CHECK(compute_stats(inst).d_q <= static_cast<std::size_t>(p.d));

    const auto v = verify_bin_solution(inst, gen.order, p.p_max);
    CHECK(v.ok);
    CHECK(oracle::replay_bin_order(inst, gen.order.bins) <= p.p_max);
    CHECK(solve_decision_bfs(inst).optimum <= p.p_max);
  }
}

TEST_CASE("single sequence generation is a forced processing") {
  GenParams p{3, 1, 6, 2, 4, 1, 99};
  const auto gen = generate_traced(p);
  CHECK(gen.instance.k() == 1);
  const int forced = *std::max_element(gen.open_after_step.begin(), gen.open_after_step.end());
  CHECK(solve_decision_bfs(gen.instance).optimum == forced);
  CHECK(oracle::replay_bin_order(gen.instance, gen.order.bins) == forced);
}
