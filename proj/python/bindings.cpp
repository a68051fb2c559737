#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stackup/bench.hpp"
#include "stackup/error.hpp"
#include "stackup/exact.hpp"
#include "stackup/gen.hpp"
#include "stackup/ilp.hpp"
#include "stackup/instance.hpp"
#include "stackup/seqgraph.hpp"

namespace py = pybind11;
using namespace stackup;

namespace {

std::vector<std::vector<std::string>> token_sequences(const Instance& inst) {
  std::vector<std::vector<std::string>> out(inst.k());
  for (std::size_t j = 0; j < inst.k(); ++j) {
    for (PalletId t : inst.sequence(j)) out[j].push_back(inst.token(t));
  }
  return out;
}

py::dict solve(const Instance& inst, const std::string& algo, std::uint64_t budget_nodes, double time_limit_s,
               int cut_step) {
  SolveConfig cfg;
  cfg.search.node_budget = budget_nodes;
  cfg.search.time_limit_s = time_limit_s;
  cfg.cut_step = cut_step;
  SolveOutcome out;
  {
    py::gil_scoped_release release;
    out = solve_by_name(inst, algo, cfg);
  }
  py::dict d;
  d["algorithm"] = out.algorithm;
  d["status"] = to_string(out.status);
  d["optimum"] = out.status == SolveStatus::Ok ? py::cast(out.optimum) : py::none();
  d["solution"] = out.solution ? py::cast(emit_solution(*out.solution, inst)) : py::none();
  d["nodes"] = out.nodes;
  d["iterations"] = out.iterations;
  d["wall_ms"] = out.wall_ms;
  d["detail"] = out.detail;
  return d;
}

py::dict verify(const Instance& inst, const std::string& solution_text, int p) {
  const auto v = verify_solution(inst, parse_solution(solution_text, inst), p);
  py::dict d;
  d["ok"] = v.ok;
  d["max_open"] = v.max_open;
  d["failed_step"] = v.failed_step ? py::cast(*v.failed_step) : py::none();
  d["message"] = v.message;
  return d;
}

py::dict stats(const Instance& inst) {
  const auto st = compute_stats(inst);
  py::dict d;
  d["n"] = st.n;
  d["m"] = st.m;
  d["k"] = st.k;
  d["N"] = st.max_length;
  d["d_Q"] = st.d_q;
  d["arcs"] = build_sequence_graph(inst).arc_count();
  d["warnings"] = st.warnings;
  return d;
}

std::vector<std::pair<std::string, std::string>> sequence_graph(const Instance& inst) {
  const auto g = build_sequence_graph(inst);
  std::vector<std::pair<std::string, std::string>> out;
  for (auto [u, v] : g.sorted_arcs()) out.emplace_back(g.label(u), g.label(v));
  return out;
}

std::string generate_text(int p_max, int k, int m, int r_min, int r_max, int d, std::uint64_t seed) {
  const GenParams p{p_max, k, m, r_min, r_max, d, seed};
  return emit_generated(p, generate(p));
}

std::string export_lp(const Instance& inst, const std::string& model) {
  if (model == "pallet") return emit_lp(build_pallet_model(build_sequence_graph(inst)));
  if (model == "bin") return emit_lp(build_bin_model(inst));
  throw PreconditionError("model must be 'bin' or 'pallet'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact solvers for the FIFO stack-up problem";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

  py::class_<Instance>(m, "Instance")
      .def(py::init(&Instance::from_tokens), py::arg("sequences"))
      .def_static("parse", &parse_instance, py::arg("text"))
      .def("emit", [](const Instance& i) { return emit_instance(i); })
      .def_property_readonly("n", &Instance::n)
      .def_property_readonly("m", &Instance::m)
      .def_property_readonly("k", &Instance::k)
      .def_property_readonly("tokens", &Instance::tokens)
      .def_property_readonly("sequences", &token_sequences)
      .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; })
      .def("__repr__", [](const Instance& i) {
        return "<Instance n=" + std::to_string(i.n()) + " m=" + std::to_string(i.m()) +
               " k=" + std::to_string(i.k()) + ">";
      });

  m.attr("ALGORITHMS") = algorithm_names();
  m.def("solve", &solve, py::arg("instance"), py::arg("algo") = "decision-cut", py::arg("budget_nodes") = 0,
        py::arg("time_limit_s") = 1800.0, py::arg("cut_step") = 5);
  m.def("verify", &verify, py::arg("instance"), py::arg("solution"), py::arg("p"));
  m.def("stats", &stats, py::arg("instance"));
  m.def("sequence_graph", &sequence_graph, py::arg("instance"));
  m.def("places_via_dpw", &optimum_places_via_dpw, py::arg("instance"));
  m.def("generate", &generate_text, py::arg("p_max"), py::arg("k"), py::arg("m"), py::arg("r_min"),
        py::arg("r_max"), py::arg("d"), py::arg("seed") = 0);
  m.def("export_lp", &export_lp, py::arg("instance"), py::arg("model") = "bin");
}
