// stackup: solve, generate, verify and benchmark FIFO stack-up instances.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "stackup/bench.hpp"
#include "stackup/error.hpp"
#include "stackup/exact.hpp"
#include "stackup/gen.hpp"
#include "stackup/ilp.hpp"
#include "stackup/instance.hpp"
#include "stackup/seqgraph.hpp"

using namespace stackup;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCapacity = 2;
constexpr int kExitRejected = 3;

struct Globals {
  std::uint64_t budget_nodes = 0;
  double time_limit_s = 1800;
  int cut_step = 5;
  std::uint64_t seed = 0;

  SolveConfig solve_config(const std::string& id) const {
    SolveConfig cfg;
    cfg.search.node_budget = budget_nodes;
    cfg.search.time_limit_s = time_limit_s;
    cfg.cut_step = cut_step;
    cfg.instance_id = id;
    return cfg;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

std::string stem(const std::string& path) {
  const auto slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = name.find_last_of('.');
  return dot == std::string::npos || dot == 0 ? name : name.substr(0, dot);
}

IlpModel build_model(const Instance& inst, const std::string& kind, const std::string& id) {
  if (kind == "pallet") return build_pallet_model(build_sequence_graph(inst), id);
  return build_bin_model(inst, id);
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  std::string input;
  std::string algo = "decision-cut";
  std::string solution_out;
  std::string export_lp;
};

int cmd_solve(const Globals& g, const SolveArgs& a) {
  const Instance inst = load_instance(a.input);
  const std::string id = stem(a.input);
  if (!a.export_lp.empty()) {
    write_file(a.export_lp, emit_lp(build_model(inst, a.algo == "ilp-pallet-tiny" ? "pallet" : "bin", id)));
  }
  const auto out = solve_by_name(inst, a.algo, g.solve_config(id));
  if (out.status != SolveStatus::Ok) {
    std::cerr << "error: " << out.detail << '\n';
    return kExitCapacity;
  }
  std::cout << "optimum: " << out.optimum << '\n';
  if (out.solution) {
    const std::string text = emit_solution(*out.solution, inst);
    if (!a.solution_out.empty()) write_file(a.solution_out, text);
    std::cout << text;
  } else {
    std::cout << "# no witness\n";
  }
  SearchReport rep;
  rep.algorithm = out.algorithm;
  rep.optimum = out.optimum;
  rep.nodes_expanded = out.nodes;
  rep.wall_ms = out.wall_ms;
  rep.cut_iterations = out.iterations;
  std::cout << report_csv_header() << '\n' << report_csv_row(id, rep) << '\n';
  return kExitOk;
}

struct GenArgs {
  GenParams params;
  bool seed_given = false;
  std::string out;
};

int cmd_gen(const Globals& g, GenArgs a) {
  if (!a.seed_given) a.params.seed = g.seed;
  const auto check = validate_params(a.params);
  for (const auto& w : check.warnings) std::cerr << "warning: " << w << '\n';
  if (!check.ok()) {
    for (const auto& e : check.errors) std::cerr << "error: " << e << '\n';
    return kExitUsage;
  }
  const std::string text = emit_generated(a.params, generate(a.params));
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_file(a.out, text);
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string input, solution;
  int p = 0;
};

int cmd_verify(const VerifyArgs& a) {
  const Instance inst = load_instance(a.input);
  const Solution sol = parse_solution(read_file(a.solution), inst);
  const Verdict v = verify_solution(inst, sol, a.p);
  if (v.ok) {
    std::cout << "ok: max open " << v.max_open << " <= " << a.p << '\n';
    return kExitOk;
  }
  std::cout << "rejected";
  if (v.failed_step) std::cout << " at step " << *v.failed_step;
  std::cout << ": " << v.message << '\n';
  return kExitRejected;
}

struct BenchArgs {
  std::string suite = "table1-like";
  std::string grid;
  int reps = 10;
  std::vector<std::string> algos;
  std::string out;
  bool raw = false;
};

int cmd_bench(const Globals& g, const BenchArgs& a) {
  std::vector<GenParams> grid;
  BenchConfig cfg;
  if (a.suite == "table1-like") {
    grid = table1_grid();
    cfg.algorithms = {"decision-cut"};
  } else if (a.suite == "table3-like") {
    grid = table3_grid();
    cfg.algorithms = {"ilp-bin-tiny", "ilp-pallet-tiny", "decision-cut"};
  } else {
    if (a.grid.empty()) throw ParseError("custom suite needs --grid");
    grid = parse_grid_csv(read_file(a.grid));
    cfg.algorithms = {"decision-cut"};
  }
  if (!a.algos.empty()) cfg.algorithms = a.algos;
  cfg.reps = a.reps;
  cfg.seed0 = g.seed;
  cfg.solve = g.solve_config("");

  std::ostringstream csv;
  csv << bench_csv_header() << '\n';
  auto rows = run_bench(grid, cfg, [](const BenchRow& row) { std::cerr << bench_csv_row(row) << '\n'; });
  if (!a.raw) rows = summarize_bench(rows);
  for (const auto& row : rows) csv << bench_csv_row(row) << '\n';
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    write_file(a.out, csv.str());
  }
  return kExitOk;
}

struct ExportArgs {
  std::string input;
  std::string model = "bin";
  std::string out;
};

int cmd_export_lp(const ExportArgs& a) {
  const std::string text = emit_lp(build_model(load_instance(a.input), a.model, stem(a.input)));
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_file(a.out, text);
  }
  return kExitOk;
}

struct StatsArgs {
  std::string input;
  bool arcs = false;
};

int cmd_stats(const StatsArgs& a) {
  const Instance inst = load_instance(a.input);
  const auto st = compute_stats(inst);
  const auto g = build_sequence_graph(inst);
  std::cout << "n=" << st.n << " m=" << st.m << " k=" << st.k << " N=" << st.max_length << " d_Q=" << st.d_q
            << '\n';
  std::cout << "arcs=" << g.arc_count() << '\n';
  std::cout << "single_bin_pallets=" << st.single_bin_pallets << " empty_sequences=" << st.empty_sequences
            << '\n';
  std::cout << "k<m=" << (st.k_below_m ? "yes" : "no") << " m<=n/2=" << (st.m_at_most_half_n ? "yes" : "no")
            << '\n';
  for (const auto& w : st.warnings) std::cout << "warning: " << w << '\n';
  if (a.arcs) {
    for (auto [u, v] : g.sorted_arcs()) std::cout << g.label(u) << ' ' << g.label(v) << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solvers for the FIFO stack-up problem"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--budget-nodes", g.budget_nodes, "Node budget (0 = solver default)");
  app.add_option("--time-limit-s", g.time_limit_s, "Wall-clock limit per solve in seconds")->capture_default_str();
  app.add_option("--cut-step", g.cut_step, "Cut increment for decision-cut")->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for gen and first seed for bench")->capture_default_str();

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Compute the minimum number of stack-up places");
  solve_cmd->add_option("input", solve.input, "Instance file")->required();
  solve_cmd->add_option("--algo", solve.algo, "Algorithm")->capture_default_str()
      ->check(CLI::IsMember(algorithm_names()));
  solve_cmd->add_option("--solution-out", solve.solution_out, "Write the witness solution here");
  solve_cmd->add_option("--export-lp", solve.export_lp, "Also write the ILP model in LP format");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--pmax", gen.params.p_max)->capture_default_str();
  gen_cmd->add_option("--k", gen.params.k)->capture_default_str();
  gen_cmd->add_option("--m", gen.params.m)->capture_default_str();
  gen_cmd->add_option("--rmin", gen.params.r_min)->capture_default_str();
  gen_cmd->add_option("--rmax", gen.params.r_max)->capture_default_str();
  gen_cmd->add_option("--d", gen.params.d)->capture_default_str();
  auto* gen_seed = gen_cmd->add_option("--seed", gen.params.seed);
  gen_cmd->add_option("--out", gen.out, "Output file (stdout if omitted)");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check a solution file against a place limit");
  verify_cmd->add_option("input", verify.input)->required();
  verify_cmd->add_option("solution", verify.solution)->required();
  verify_cmd->add_option("--p", verify.p, "Available stack-up places")->required();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark suite and print CSV");
  bench_cmd->add_option("--suite", bench.suite)->capture_default_str()
      ->check(CLI::IsMember({"table1-like", "table3-like", "custom"}));
  bench_cmd->add_option("--grid", bench.grid, "CSV grid for the custom suite");
  bench_cmd->add_option("--reps", bench.reps)->capture_default_str()->check(CLI::PositiveNumber);
  bench_cmd->add_option("--algo", bench.algos, "Algorithms to run")->check(CLI::IsMember(algorithm_names()));
  bench_cmd->add_option("--out", bench.out, "CSV output file");
  bench_cmd->add_flag("--raw", bench.raw, "One row per instance instead of means");

  ExportArgs exp;
  auto* export_cmd = app.add_subcommand("export-lp", "Write an ILP model in LP format");
  export_cmd->add_option("input", exp.input)->required();
  export_cmd->add_option("--model", exp.model)->capture_default_str()->check(CLI::IsMember({"bin", "pallet"}));
  export_cmd->add_option("--out", exp.out);

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Instance statistics and sequence-graph size");
  stats_cmd->add_option("input", stats.input)->required();
  stats_cmd->add_flag("--arcs", stats.arcs, "List the sequence-graph arcs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(g, solve);
    if (*gen_cmd) {
      gen.seed_given = gen_seed->count() > 0;
      return cmd_gen(g, gen);
    }
    if (*verify_cmd) return cmd_verify(verify);
    if (*bench_cmd) return cmd_bench(g, bench);
    if (*export_cmd) return cmd_export_lp(exp);
    if (*stats_cmd) return cmd_stats(stats);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
