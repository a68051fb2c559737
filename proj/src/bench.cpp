#include "stackup/bench.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "stackup/error.hpp"
#include "stackup/ilp.hpp"
#include "stackup/seqgraph.hpp"
#include "text_util.hpp"

namespace stackup {

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {
      "decision",   "decision-cut", "processing",   "perm-oracle",
      "seqorder-oracle", "dpw",     "ilp-bin-tiny", "ilp-pallet-tiny"};
  return names;
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Ok: return "ok";
    case SolveStatus::Capacity: return "over_budget";
    case SolveStatus::NotFound: return "not_found";
    case SolveStatus::Skipped: return "skipped";
    case SolveStatus::Invalid: return "invalid";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void from_report(SolveOutcome& out, const SearchReport& rep) {
  out.optimum = rep.optimum;
  out.solution = rep.solution;
  out.nodes = rep.nodes_expanded;
  out.iterations = rep.cut_iterations;
}

void from_oracle(SolveOutcome& out, const OracleResult& res) {
  out.optimum = res.optimum;
  out.solution = res.witness;
  out.nodes = res.evaluated;
}

/// Opens, at every decision point, the front pallet placed earliest in `order`.
PalletOrder guided_pallet_order(const Instance& inst, const std::vector<VertexId>& order) {
  const FirstLastTable tbl(inst);
  std::vector<std::size_t> rank(inst.m());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  Processor proc(inst, tbl);
  proc.reset(inst.initial_configuration());
  proc.record_trail(false);
  PalletOrder out;
  proc.close_automatically();
  while (!proc.is_final()) {
    std::size_t pick = inst.k();
    for (std::size_t j = 0; j < inst.k(); ++j) {
      if (proc.exhausted(j)) continue;
      if (pick == inst.k() || rank[proc.front_pallet(j)] < rank[proc.front_pallet(pick)]) pick = j;
    }
    out.pallets.push_back(proc.front_pallet(pick));
    proc.remove(pick);
    proc.close_automatically();
  }
  return out;
}

/// A vertex ordering turned into a pallet solution; kept only if it verifies.
std::optional<Solution> pallet_witness(const Instance& inst, const std::vector<VertexId>& order, int p) {
  PalletOrder literal;
  literal.pallets.assign(order.begin(), order.end());
  if (verify_solution(inst, literal, p).ok) return Solution{literal};
  PalletOrder guided = guided_pallet_order(inst, order);
  if (verify_solution(inst, guided, p).ok) return Solution{guided};
  return std::nullopt;
}

std::uint64_t ilp_budget(const SolveConfig& cfg) {
  return cfg.search.node_budget ? cfg.search.node_budget : 10'000'000;
}

void run_named(SolveOutcome& out, const Instance& inst, std::string_view algo, const SolveConfig& cfg) {
  if (algo == "decision") {
    from_report(out, solve_decision_bfs(inst, std::nullopt, cfg.search));
  } else if (algo == "decision-cut") {
    from_report(out, solve_with_cutting(inst, cfg.cut_step, cfg.search));
  } else if (algo == "processing") {
    from_report(out, solve_processing_bfs(inst, cfg.search));
  } else if (algo == "perm-oracle") {
    from_oracle(out, brute_force_pallet_perm(inst));
  } else if (algo == "seqorder-oracle") {
    from_oracle(out, brute_force_sequence_orders(inst));
  } else if (algo == "dpw") {
    const auto g = build_sequence_graph(inst);
    const auto layout = directed_vertex_separation(g);
    out.optimum = inst.m() == 0 ? 0 : layout.width + 1;
    out.nodes = std::uint64_t{1} << g.vertex_count();
    out.solution = pallet_witness(inst, layout.order, out.optimum);
  } else if (algo == "ilp-bin-tiny") {
    const auto model = build_bin_model(inst, cfg.instance_id);
    const auto sol = solve_tiny(model, ilp_budget(cfg));
    out.nodes = sol.nodes;
    if (sol.status != IlpStatus::Optimal) {
      out.status = SolveStatus::Capacity;
      out.detail = std::string("tiny ILP: ") + to_string(sol.status);
      return;
    }
    out.optimum = static_cast<int>(sol.objective_value);
    out.solution = Solution{bin_order_from(model, inst, sol)};
  } else if (algo == "ilp-pallet-tiny") {
    const auto g = build_sequence_graph(inst);
    const auto model = build_pallet_model(g, cfg.instance_id);
    const auto sol = solve_tiny(model, ilp_budget(cfg));
    out.nodes = sol.nodes;
    if (sol.status != IlpStatus::Optimal) {
      out.status = SolveStatus::Capacity;
      out.detail = std::string("tiny ILP: ") + to_string(sol.status);
      return;
    }
    out.optimum = inst.m() == 0 ? 0 : static_cast<int>(sol.objective_value) + 1;
    out.solution = pallet_witness(inst, vertex_order_from(model, g.vertex_count(), sol), out.optimum);
  } else {
    throw PreconditionError("unknown algorithm '" + std::string(algo) + "'");
  }
}

}  // namespace

SolveOutcome solve_by_name(const Instance& inst, std::string_view algorithm, const SolveConfig& cfg) {
  SolveOutcome out;
  out.algorithm = std::string(algorithm);
  const auto start = Clock::now();
  try {
    run_named(out, inst, algorithm, cfg);
  } catch (const CapacityError& e) {
    out.status = SolveStatus::Capacity;
    out.detail = e.what();
  } catch (const NotFoundUnderCut& e) {
    out.status = SolveStatus::NotFound;
    out.detail = e.what();
  }
  out.wall_ms = ms_since(start);
  return out;
}

// ---------------------------------------------------------------------------
// Grids

std::vector<GenParams> table1_grid() {
  struct Block {
    int p_max, m, k, r_min;
    int r_max[3];
    int d[3];
  };
  const Block blocks[] = {
      {14, 100, 8, 10, {20, 30, 40}, {4, 6, 8}},
      {18, 300, 10, 15, {25, 35, 45}, {5, 7, 10}},
      {22, 500, 12, 20, {30, 40, 50}, {6, 9, 12}},
  };
  std::vector<GenParams> grid;
  for (const auto& b : blocks) {
    for (int r_max : b.r_max) {
      for (int d : b.d) grid.push_back({b.p_max, b.k, b.m, b.r_min, r_max, d, 0});
    }
  }
  return grid;
}

std::vector<GenParams> table3_grid() {
  // p_max, k, m, r_min, r_max, d
  return {
      {2, 2, 3, 4, 6, 2, 0},  {2, 2, 4, 4, 6, 2, 0},  {4, 4, 5, 4, 8, 2, 0},
      {4, 4, 6, 6, 10, 2, 0}, {4, 5, 8, 6, 10, 2, 0}, {5, 5, 10, 5, 15, 2, 0},
  };
}

std::vector<GenParams> parse_grid_csv(std::string_view text) {
  const auto lines = detail::split_lines(text);
  std::vector<GenParams> grid;
  std::map<std::string, std::size_t> column;
  bool header = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = detail::trim(lines[i]);
    if (line.empty() || detail::is_comment(line)) continue;
    std::vector<std::string> cells;
    std::stringstream ss{std::string(line)};
    for (std::string cell; std::getline(ss, cell, ',');) cells.emplace_back(detail::trim(cell));
    if (!header) {
      for (std::size_t c = 0; c < cells.size(); ++c) column[cells[c]] = c;
      for (const char* need : {"p_max", "k", "m", "r_min", "r_max", "d"}) {
        if (!column.count(need)) throw ParseError(i + 1, std::string("grid header lacks '") + need + "'");
      }
      header = true;
      continue;
    }
    auto get = [&](const char* name) {
      const std::size_t c = column.at(name);
      if (c >= cells.size()) throw ParseError(i + 1, std::string("missing '") + name + "'");
      auto v = detail::parse_int(cells[c]);
      if (!v) throw ParseError(i + 1, std::string("'") + name + "' is not an integer");
      return static_cast<int>(*v);
    };
    grid.push_back({get("p_max"), get("k"), get("m"), get("r_min"), get("r_max"), get("d"), 0});
  }
  if (!header) throw ParseError("empty grid file");
  return grid;
}

// ---------------------------------------------------------------------------
// Runs

std::vector<BenchRow> run_bench(const std::vector<GenParams>& grid, const BenchConfig& cfg,
                                const BenchProgress& progress) {
  if (cfg.reps < 1) throw PreconditionError("reps must be at least 1");
  std::vector<BenchRow> rows;
  for (std::size_t r = 0; r < grid.size(); ++r) {
    for (int rep = 0; rep < cfg.reps; ++rep) {
      GenParams params = grid[r];
      params.seed = cfg.seed0 + static_cast<std::uint64_t>(rep);
      BenchRow base;
      base.id = "r" + std::to_string(r + 1) + "s" + std::to_string(params.seed);
      base.params = params;

      const auto check = validate_params(params);
      std::optional<Instance> inst;
      if (check.ok()) inst = generate(params);
      if (inst) base.n = inst->n();

      for (const auto& algo : cfg.algorithms) {
        BenchRow row = base;
        row.algo = algo;
        if (!inst) {
          row.status = "param_error";
        } else if ((algo == "ilp-bin-tiny" && inst->n() > cfg.ilp_bin_max_n) ||
                   (algo == "ilp-pallet-tiny" && inst->m() > cfg.ilp_pallet_max_m)) {
          row.status = to_string(SolveStatus::Skipped);
        } else {
          SolveConfig sc = cfg.solve;
          sc.instance_id = row.id;
          const auto out = solve_by_name(*inst, algo, sc);
          row.status = to_string(out.status);
          row.wall_time_ms = out.wall_ms;
          row.nodes = out.nodes;
          if (out.status == SolveStatus::Ok) row.optimum = out.optimum;
        }
        if (progress) progress(row);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::vector<BenchRow> summarize_bench(const std::vector<BenchRow>& rows) {
  struct Acc {
    BenchRow first;
    std::size_t total = 0, ok = 0;
    double time = 0, nodes = 0, n = 0;
    std::optional<int> optimum;
    bool optimum_agrees = true;
  };
  std::vector<std::pair<std::string, Acc>> groups;  // keeps first-seen order
  std::map<std::string, std::size_t> index;
  for (const auto& row : rows) {
    const std::string grid_id = row.id.substr(0, row.id.find('s'));
    const std::string key = grid_id + "|" + row.algo;
    auto [it, fresh] = index.emplace(key, groups.size());
    if (fresh) {
      groups.emplace_back(key, Acc{});
      groups.back().second.first = row;
      groups.back().second.first.id = grid_id;
    }
    Acc& acc = groups[it->second].second;
    ++acc.total;
    acc.n += static_cast<double>(row.n);
    if (row.status != "ok") {
      acc.optimum_agrees = false;
      continue;
    }
    ++acc.ok;
    acc.time += row.wall_time_ms;
    acc.nodes += static_cast<double>(row.nodes);
    if (acc.optimum && acc.optimum != row.optimum) acc.optimum_agrees = false;
    acc.optimum = row.optimum;
  }
  std::vector<BenchRow> out;
  for (auto& [key, acc] : groups) {
    BenchRow row = acc.first;
    row.n = static_cast<std::size_t>(std::lround(acc.n / static_cast<double>(acc.total)));
    row.wall_time_ms = acc.ok ? acc.time / static_cast<double>(acc.ok) : 0;
    row.nodes = acc.ok ? static_cast<std::uint64_t>(std::llround(acc.nodes / static_cast<double>(acc.ok))) : 0;
    row.optimum = acc.optimum_agrees ? acc.optimum : std::nullopt;
    row.params.seed = 0;
    if (acc.ok == acc.total) {
      row.status = "ok";
    } else if (acc.ok == 0) {
      row.status = acc.first.status;
    } else {
      row.status = std::to_string(acc.ok) + "/" + std::to_string(acc.total) + " ok";
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::string bench_csv_header() { return "id,n,p_max,m,k,r_min,r_max,d,algo,optimum,wall_time_ms,nodes,status"; }

std::string bench_csv_row(const BenchRow& row) {
  std::ostringstream out;
  out << row.id << ',' << row.n << ',' << row.params.p_max << ',' << row.params.m << ',' << row.params.k << ','
      << row.params.r_min << ',' << row.params.r_max << ',' << row.params.d << ',' << row.algo << ',';
  if (row.optimum) out << *row.optimum;
  out << ',';
  out.setf(std::ios::fixed);
  out.precision(3);
  out << row.wall_time_ms << ',' << row.nodes << ',' << row.status;
  return out.str();
}

}  // namespace stackup
