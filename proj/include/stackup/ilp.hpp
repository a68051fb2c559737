#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stackup/instance.hpp"
#include "stackup/seqgraph.hpp"

namespace stackup {

enum class VarKind { Binary, Integer };
enum class Relation { LessEq, GreaterEq, Equal };
enum class ModelKind { Bin, Pallet };

struct Term {
  std::uint32_t var;
  std::int64_t coef;
  bool operator==(const Term&) const = default;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Relation rel = Relation::LessEq;
  std::int64_t rhs = 0;
  bool operator==(const Constraint&) const = default;
};

struct Variable {
  std::string name;
  VarKind kind = VarKind::Binary;
};

/// 0/1 model with one integer objective variable, minimised.
class IlpModel {
 public:
  ModelKind kind = ModelKind::Bin;
  std::string instance_id;

  std::uint32_t add_var(std::string name, VarKind kind = VarKind::Binary);
  void add_constraint(std::string name, std::vector<Term> terms, Relation rel, std::int64_t rhs);
  void set_objective(std::uint32_t var) { objective_ = var; }

  const std::vector<Variable>& variables() const noexcept { return vars_; }
  const std::vector<Constraint>& constraints() const noexcept { return cons_; }
  std::uint32_t objective() const noexcept { return objective_; }
  std::optional<std::uint32_t> find(std::string_view name) const;
  std::size_t count(VarKind kind) const;

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> cons_;
  std::unordered_map<std::string, std::uint32_t> by_name_;
  std::uint32_t objective_ = 0;
};

/// Bin-order model: x_i_j (bin i at position j), g/h/f per pallet and cut,
/// integer p. n^2 + 3m(n-1) + 1 variables.
IlpModel build_bin_model(const Instance& inst, const std::string& instance_id = "");

/// Vertex-order model: x_i_j, X_i_ip_j_jp, Y_j_c (j <= c), integer w.
/// m^2 + m^4 + m(m-1)/2 + 1 variables.
IlpModel build_pallet_model(const SequenceDigraph& g, const std::string& instance_id = "");

/// LP-format text: Minimize / Subject To / Binary / General / End.
std::string emit_lp(const IlpModel& model);
/// Reads back exactly the dialect emit_lp writes.
IlpModel parse_lp(std::string_view text);
/// Structural problems of LP text (undeclared or unused variables, bad sections).
std::vector<std::string> validate_lp(std::string_view text);

enum class IlpStatus { Optimal, Infeasible, BudgetExceeded };

struct IlpSolution {
  IlpStatus status = IlpStatus::Infeasible;
  std::vector<std::int64_t> assignment;
  std::int64_t objective_value = 0;
  std::uint64_t nodes = 0;
};

/// Depth-first branch and bound with bound propagation; binaries branched in
/// declaration order, 0 before 1.
IlpSolution solve_tiny(const IlpModel& model, std::uint64_t node_budget = 10'000'000);

bool satisfies(const IlpModel& model, const std::vector<std::int64_t>& assignment);

/// Bin removal order encoded by the x variables of a solved bin model.
BinOrder bin_order_from(const IlpModel& model, const Instance& inst, const IlpSolution& sol);
/// Vertex ordering encoded by the x variables of a solved pallet model.
std::vector<VertexId> vertex_order_from(const IlpModel& model, std::size_t vertex_count,
                                        const IlpSolution& sol);

const char* to_string(IlpStatus status);

}  // namespace stackup
