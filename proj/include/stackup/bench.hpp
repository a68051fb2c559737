#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stackup/exact.hpp"
#include "stackup/gen.hpp"
#include "stackup/instance.hpp"

namespace stackup {

/// Algorithm names accepted by solve_by_name, in CLI order.
const std::vector<std::string>& algorithm_names();

struct SolveConfig {
  SearchOptions search;
  int cut_step = 5;
  std::string instance_id;
};

enum class SolveStatus { Ok, Capacity, NotFound, Skipped, Invalid };
const char* to_string(SolveStatus status);

struct SolveOutcome {
  std::string algorithm;
  SolveStatus status = SolveStatus::Ok;
  int optimum = 0;
  std::optional<Solution> solution;  // absent when no witness could be produced
  std::uint64_t nodes = 0;
  int iterations = 0;  // cut rounds for decision-cut
  double wall_ms = 0;
  std::string detail;  // error text for non-ok outcomes
};

/// Runs one named algorithm. Budget and time exhaustion come back as
/// SolveStatus::Capacity; an unknown name throws PreconditionError.
SolveOutcome solve_by_name(const Instance& inst, std::string_view algorithm, const SolveConfig& cfg = {});

struct BenchRow {
  std::string id;
  std::size_t n = 0;
  GenParams params;
  std::string algo;
  std::optional<int> optimum;
  double wall_time_ms = 0;
  std::uint64_t nodes = 0;
  std::string status;
};

/// The 27 rows of the large random-instance table.
std::vector<GenParams> table1_grid();
/// The 6 small rows used for the ILP comparison.
std::vector<GenParams> table3_grid();
/// CSV with header p_max,k,m,r_min,r_max,d (extra columns ignored).
std::vector<GenParams> parse_grid_csv(std::string_view text);

struct BenchConfig {
  int reps = 10;
  std::uint64_t seed0 = 0;
  std::vector<std::string> algorithms;  // run in this order on every instance
  SolveConfig solve;
  std::size_t ilp_bin_max_n = 10;
  std::size_t ilp_pallet_max_m = 5;
};

using BenchProgress = std::function<void(const BenchRow&)>;

/// One row per (grid row, rep, algorithm). Ids are "r<row>s<seed>", rows 1-based.
std::vector<BenchRow> run_bench(const std::vector<GenParams>& grid, const BenchConfig& cfg,
                                const BenchProgress& progress = {});
/// Mean wall time and nodes per (grid row, algorithm); id "r<row>", status
/// "ok" or "<ok>/<total> ok", optimum kept only when all reps agree.
std::vector<BenchRow> summarize_bench(const std::vector<BenchRow>& rows);

std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& row);

}  // namespace stackup
