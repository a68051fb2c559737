#include "stackup/exact.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <numeric>
#include <sstream>

#include "config_table.hpp"
#include "stackup/error.hpp"

namespace stackup {

namespace {

using Clock = std::chrono::steady_clock;

class Deadline {
 public:
  explicit Deadline(double seconds)
      : active_(seconds > 0),
        end_(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                std::chrono::duration<double>(seconds > 0 ? seconds : 0))),
        seconds_(seconds) {}

  void check() {
    if (!active_ || (++ticks_ & 1023) != 0) return;
    if (Clock::now() > end_) {
      std::ostringstream msg;
      msg << "time limit of " << seconds_ << " s exceeded";
      throw CapacityError(msg.str());
    }
  }

 private:
  bool active_;
  Clock::time_point end_;
  double seconds_;
  std::uint64_t ticks_ = 0;
};

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Back-links of every admitted node: enough to rebuild the chosen path.
struct PathArena {
  struct Link {
    std::uint32_t pred;
    std::uint32_t label;  // sequence (processing search) or pallet (decision search)
    std::int16_t val;
    std::int16_t peak;
  };
  static constexpr std::uint32_t kRoot = UINT32_MAX;
  std::vector<Link> links;

  std::uint32_t add(std::uint32_t pred, std::uint32_t label, int val, int peak) {
    if (links.size() >= UINT32_MAX - 1) throw CapacityError("path arena exhausted");
    links.push_back({pred, label, static_cast<std::int16_t>(val), static_cast<std::int16_t>(peak)});
    return static_cast<std::uint32_t>(links.size() - 1);
  }

  /// Links from the root's child to `node`, in path order.
  std::vector<Link> trace(std::uint32_t node) const {
    std::vector<Link> out;
    while (links[node].pred != kRoot) {
      out.push_back(links[node]);
      node = links[node].pred;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }
};

std::vector<std::uint32_t> sorted_indices(const detail::ConfigTable& table) {
  std::vector<std::uint32_t> order(table.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    auto x = table.at(a);
    auto y = table.at(b);
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  });
  return order;
}

}  // namespace

std::string report_csv_header() { return "instance,algo,optimum,nodes,time_ms,iterations"; }

std::string report_csv_row(const std::string& instance_id, const SearchReport& report) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  out << instance_id << ',' << report.algorithm << ',' << report.optimum << ','
      << report.nodes_expanded << ',' << report.wall_ms << ',' << report.cut_iterations;
  return out.str();
}

// ---------------------------------------------------------------------------
// Processing graph

SearchReport solve_processing_bfs(const Instance& inst, const SearchOptions& opts) {
  const auto start = Clock::now();
  const std::uint64_t budget = opts.node_budget ? opts.node_budget : kDefaultProcessingBudget;
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < inst.k(); ++j) {
    const std::uint64_t factor = inst.length(j) + 1;
    if (total > budget / factor + 1) {
      total = budget + 1;
      break;
    }
    total *= factor;
  }
  if (total > budget) {
    throw CapacityError("processing graph exceeds the node budget of " + std::to_string(budget) +
                        " configurations");
  }

  const FirstLastTable tbl(inst);
  const std::size_t k = inst.k();
  Deadline deadline(opts.time_limit_s);
  PathArena arena;

  detail::ConfigTable current(k);
  std::vector<int> cur_open{0};
  std::vector<std::uint32_t> cur_node{arena.add(PathArena::kRoot, 0, 0, 0)};
  current.insert(inst.initial_configuration());

  SearchReport report;
  report.algorithm = "processing";
  Configuration succ(k);
  for (std::size_t level = 0; level < inst.n(); ++level) {
    report.peak_frontier = std::max<std::uint64_t>(report.peak_frontier, current.size());
    detail::ConfigTable next(k);
    std::vector<int> next_open;
    std::vector<int> next_best;
    std::vector<std::uint32_t> next_pred;
    std::vector<std::uint32_t> next_seq;
    for (std::uint32_t idx : sorted_indices(current)) {
      deadline.check();
      ++report.nodes_expanded;
      const auto cfg = current.at(idx);
      const int val = arena.links[cur_node[idx]].val;
      for (std::size_t j = 0; j < k; ++j) {
        if (cfg[j] >= inst.length(j)) continue;
        const int open = cur_open[idx] + delta_open(inst, tbl, cfg, j);
        std::copy(cfg.begin(), cfg.end(), succ.begin());
        ++succ[j];
        auto [s, inserted] = next.insert(succ);
        if (inserted) {
          next_open.push_back(open);
          next_best.push_back(val);
          next_pred.push_back(cur_node[idx]);
          next_seq.push_back(static_cast<std::uint32_t>(j));
        } else if (val < next_best[s]) {
          next_best[s] = val;
          next_pred[s] = cur_node[idx];
          next_seq[s] = static_cast<std::uint32_t>(j);
        }
      }
    }
    cur_node.resize(next.size());
    for (std::uint32_t s = 0; s < next.size(); ++s) {
      const int val = std::max(next_open[s], next_best[s]);
      cur_node[s] = arena.add(next_pred[s], next_seq[s], val, next_open[s]);
    }
    current = std::move(next);
    cur_open = std::move(next_open);
  }

  const std::uint32_t final_node = cur_node.at(0);
  report.optimum = arena.links[final_node].val;

  BinOrder order;
  Configuration cfg = inst.initial_configuration();
  report.path.push_back({cfg, 0, 0, 0});
  for (const auto& link : arena.trace(final_node)) {
    order.bins.push_back(inst.bin_index(link.label, cfg[link.label]));
    ++cfg[link.label];
    report.path.push_back({cfg, link.peak, link.val, link.peak});
  }
  report.solution = std::move(order);
  report.wall_ms = elapsed_ms(start);
  return report;
}

// ---------------------------------------------------------------------------
// Decision graph

Configuration automatic_closure(const Instance& inst, const FirstLastTable& tbl, ConfigView cfg,
                                std::span<const PalletId> open) {
  Processor proc(inst, tbl);
  proc.record_trail(false);
  proc.reset(cfg, open);
  proc.close_automatically();
  return Configuration(proc.config().begin(), proc.config().end());
}

Configuration automatic_closure(const Instance& inst, ConfigView cfg, std::span<const PalletId> open) {
  return automatic_closure(inst, FirstLastTable(inst), cfg, open);
}

SearchReport solve_decision_bfs(const Instance& inst, std::optional<int> cut, const SearchOptions& opts) {
  const auto start = Clock::now();
  const std::uint64_t budget = opts.node_budget ? opts.node_budget : kDefaultDecisionBudget;
  const FirstLastTable tbl(inst);
  const std::size_t k = inst.k();
  Deadline deadline(opts.time_limit_s);
  Processor proc(inst, tbl);
  proc.record_trail(false);

  // One level of the decision graph: configurations, their open sets and path links.
  struct Level {
    explicit Level(std::size_t width) : configs(width) {}
    detail::ConfigTable configs;
    std::vector<std::uint32_t> open_begin{0};
    std::vector<PalletId> open_data;
    std::vector<std::uint32_t> node;
    std::span<const PalletId> open(std::uint32_t idx) const {
      return {open_data.data() + open_begin[idx], open_data.data() + open_begin[idx + 1]};
    }
  };

  PathArena arena;
  Level current(k);
  current.configs.insert(inst.initial_configuration());
  current.open_begin.push_back(0);
  current.node.push_back(arena.add(PathArena::kRoot, 0, 0, 0));

  SearchReport report;
  report.algorithm = cut ? "decision-cut" : "decision";
  report.cut = cut;

  std::vector<int> best;
  std::vector<int> peaks;
  std::vector<std::uint32_t> pred;
  std::vector<PalletId> label;
  std::vector<PalletId> tried;
  for (std::size_t level = 0; level < inst.m(); ++level) {
    if (current.configs.empty()) break;
    report.peak_frontier = std::max<std::uint64_t>(report.peak_frontier, current.configs.size());
    Level next(k);
    best.clear();
    peaks.clear();
    pred.clear();
    label.clear();
    for (std::uint32_t idx : sorted_indices(current.configs)) {
      deadline.check();
      ++report.nodes_expanded;
      const auto cfg = current.configs.at(idx);
      const auto open = current.open(idx);
      const int val = arena.links[current.node[idx]].val;
      tried.clear();
      for (std::size_t j = 0; j < k; ++j) {
        if (cfg[j] >= inst.length(j)) continue;
        const PalletId t = inst.pallet_at(j, cfg[j]);
        // Two sequences offering the same pallet lead to the same successor.
        if (std::find(tried.begin(), tried.end(), t) != tried.end()) continue;
        tried.push_back(t);
        proc.reset(cfg, open);
        proc.remove(j);
        const int peak = proc.open_count();
        if (cut && peak > *cut) continue;
        proc.close_automatically();
        const int candidate = std::max(val, peak);
        auto [s, inserted] = next.configs.insert(proc.config());
        if (inserted) {
          const auto now_open = proc.open_pallets();
          next.open_data.insert(next.open_data.end(), now_open.begin(), now_open.end());
          next.open_begin.push_back(static_cast<std::uint32_t>(next.open_data.size()));
          best.push_back(candidate);
          peaks.push_back(peak);
          pred.push_back(current.node[idx]);
          label.push_back(t);
        } else if (candidate < best[s]) {
          best[s] = candidate;
          peaks[s] = peak;
          pred[s] = current.node[idx];
          label[s] = t;
        }
      }
      if (current.configs.size() + next.configs.size() > budget) {
        throw CapacityError("decision search exceeds the budget of " + std::to_string(budget) +
                            " resident configurations");
      }
    }
    next.node.resize(next.configs.size());
    for (std::uint32_t s = 0; s < next.configs.size(); ++s) {
      next.node[s] = arena.add(pred[s], label[s], best[s], peaks[s]);
    }
    current = std::move(next);
  }

  if (current.configs.size() != 1 || !inst.is_final(current.configs.at(0))) {
    if (cut) throw NotFoundUnderCut(*cut);
    throw std::logic_error("decision search did not reach the final configuration");
  }

  const std::uint32_t final_node = current.node[0];
  report.optimum = arena.links[final_node].val;

  PalletOrder order;
  Configuration cfg = inst.initial_configuration();
  report.path.push_back({cfg, 0, 0, 0});
  proc.reset(cfg, {});
  for (const auto& link : arena.trace(final_node)) {
    order.pallets.push_back(link.label);
    std::size_t j = 0;
    while (proc.exhausted(j) || proc.front_pallet(j) != link.label) ++j;
    proc.remove(j);
    proc.close_automatically();
    cfg.assign(proc.config().begin(), proc.config().end());
    report.path.push_back({cfg, proc.open_count(), link.val, link.peak});
  }
  report.solution = std::move(order);
  report.wall_ms = elapsed_ms(start);
  return report;
}

SearchReport solve_with_cutting(const Instance& inst, int step, const SearchOptions& opts) {
  if (step < 1) throw PreconditionError("cut step must be at least 1");
  const auto start = Clock::now();
  std::uint64_t nodes = 0;
  for (int cut = step, iteration = 1;; cut += step, ++iteration) {
    SearchOptions round = opts;
    if (opts.time_limit_s > 0) {
      round.time_limit_s = opts.time_limit_s - elapsed_ms(start) / 1000.0;
      if (round.time_limit_s <= 0) throw CapacityError("time limit exceeded between cut rounds");
    }
    try {
      SearchReport report = solve_decision_bfs(inst, cut, round);
      report.algorithm = "decision-cut";
      report.cut_iterations = iteration;
      report.nodes_expanded += nodes;
      report.wall_ms = elapsed_ms(start);
      return report;
    } catch (const NotFoundUnderCut&) {
      // Every path has a peak of at most m, so a cut of m cannot fail.
      if (cut >= static_cast<int>(inst.m())) throw;
    }
  }
}

// ---------------------------------------------------------------------------
// Enumeration oracles

OracleResult brute_force_pallet_perm(const Instance& inst) {
  if (inst.m() > kMaxPermutationPallets) {
    throw CapacityError("pallet-permutation oracle supports at most " +
                        std::to_string(kMaxPermutationPallets) + " pallets, got " +
                        std::to_string(inst.m()));
  }
  const FirstLastTable tbl(inst);
  const int cap = static_cast<int>(inst.m());
  PalletOrder order;
  order.pallets.resize(inst.m());
  std::iota(order.pallets.begin(), order.pallets.end(), PalletId{0});

  OracleResult result;
  result.optimum = INT_MAX;
  do {
    ++result.evaluated;
    const auto processing = pallet_order_to_processing(inst, tbl, order, cap);
    if (processing.verdict.ok && processing.verdict.max_open < result.optimum) {
      result.optimum = processing.verdict.max_open;
      result.witness = order;
    }
  } while (std::next_permutation(order.pallets.begin(), order.pallets.end()));
  if (inst.m() == 0) result.optimum = 0;
  return result;
}

OracleResult brute_force_sequence_orders(const Instance& inst) {
  const std::size_t m = inst.m();
  const std::size_t k = inst.k();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < m; ++i) {
    count *= k;
    if (count > kMaxSequenceOrders) {
      throw CapacityError("sequence-order oracle supports at most " +
                          std::to_string(kMaxSequenceOrders) + " orders");
    }
  }
  const FirstLastTable tbl(inst);
  const int cap = static_cast<int>(m);
  SequenceOrder order;
  order.sequences.assign(m, 0);

  OracleResult result;
  result.optimum = m == 0 ? 0 : INT_MAX;
  for (std::uint64_t it = 0; it < count; ++it) {
    ++result.evaluated;
    const auto processing = sequence_order_to_processing(inst, tbl, order, cap);
    if (processing.verdict.ok && processing.verdict.max_open < result.optimum) {
      result.optimum = processing.verdict.max_open;
      result.witness = order;
    }
    // Odometer increment, last position fastest.
    for (std::size_t pos = m; pos-- > 0;) {
      if (++order.sequences[pos] < k) break;
      order.sequences[pos] = 0;
    }
  }
  return result;
}

}  // namespace stackup
