#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stackup/instance.hpp"

namespace stackup {

inline constexpr std::uint64_t kDefaultProcessingBudget = 100'000'000;
inline constexpr std::uint64_t kDefaultDecisionBudget = 10'000'000;

struct SearchOptions {
  /// Processing search: total configurations. Decision search: configurations
  /// resident in the two live levels. 0 selects the per-solver default.
  std::uint64_t node_budget = 0;
  /// Wall-clock limit in seconds; <= 0 disables it.
  double time_limit_s = 0;
};

/// One configuration on the returned optimal path.
struct PathStep {
  Configuration config;
  int open_count = 0;
  int val = 0;   // min over paths of the max open count seen, up to this node
  int peak = 0;  // open count right after the removal that led here (decision arcs)
};

struct SearchReport {
  std::string algorithm;
  int optimum = 0;
  Solution solution;
  std::vector<PathStep> path;
  std::uint64_t nodes_expanded = 0;
  std::uint64_t peak_frontier = 0;
  double wall_ms = 0;
  int cut_iterations = 0;
  std::optional<int> cut;
};

std::string report_csv_header();
std::string report_csv_row(const std::string& instance_id, const SearchReport& report);

/// Level-synchronous search over all configurations (levels = bins removed).
/// Each node takes val = max(#open, min val over predecessors); the witness is a
/// bin order. Throws CapacityError if prod(|q_j|+1) exceeds the node budget.
SearchReport solve_processing_bfs(const Instance& inst, const SearchOptions& opts = {});

/// Search over decision configurations, one level per opened pallet. An arc
/// removes one front bin (opening its pallet) and then drains bins of open
/// pallets. With `cut`, arcs whose open count exceeds the cut are dropped and
/// NotFoundUnderCut is thrown if the final configuration is not reached.
SearchReport solve_decision_bfs(const Instance& inst, std::optional<int> cut = std::nullopt,
                                const SearchOptions& opts = {});

/// Decision search with cut = step, 2*step, ... until a path survives.
SearchReport solve_with_cutting(const Instance& inst, int step = 5, const SearchOptions& opts = {});

/// Removes front bins of open pallets until every front bin targets a non-open
/// pallet. `open` must be the open set of `cfg`.
Configuration automatic_closure(const Instance& inst, const FirstLastTable& tbl, ConfigView cfg,
                                std::span<const PalletId> open);
Configuration automatic_closure(const Instance& inst, ConfigView cfg, std::span<const PalletId> open);

struct OracleResult {
  int optimum = 0;
  Solution witness;
  std::uint64_t evaluated = 0;
};

inline constexpr std::size_t kMaxPermutationPallets = 9;
inline constexpr std::uint64_t kMaxSequenceOrders = 10'000'000;

/// Minimum over all m! pallet orders of the max open count (m <= 9).
OracleResult brute_force_pallet_perm(const Instance& inst);
/// Minimum over all k^m sequence orders accepted by the sequence-order checker (k^m <= 10^7).
OracleResult brute_force_sequence_orders(const Instance& inst);

}  // namespace stackup
