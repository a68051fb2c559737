#include "stackup/ilp.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "stackup/error.hpp"
#include "text_util.hpp"

namespace stackup {

// ---------------------------------------------------------------------------
// Model container

std::uint32_t IlpModel::add_var(std::string name, VarKind kind) {
  const auto idx = static_cast<std::uint32_t>(vars_.size());
  if (!by_name_.emplace(name, idx).second) {
    throw PreconditionError("duplicate variable '" + name + "'");
  }
  vars_.push_back({std::move(name), kind});
  return idx;
}

void IlpModel::add_constraint(std::string name, std::vector<Term> terms, Relation rel, std::int64_t rhs) {
  for (const auto& t : terms) {
    if (t.var >= vars_.size()) throw PreconditionError("constraint '" + name + "' references an unknown variable");
  }
  cons_.push_back({std::move(name), std::move(terms), rel, rhs});
}

std::optional<std::uint32_t> IlpModel::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::size_t IlpModel::count(VarKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(vars_.begin(), vars_.end(), [kind](const Variable& v) { return v.kind == kind; }));
}

namespace {

std::string idx_name(std::string_view family, std::initializer_list<std::size_t> indices) {
  std::string out(family);
  for (std::size_t i : indices) {
    out += '_';
    out += std::to_string(i);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Bin-order model

IlpModel build_bin_model(const Instance& inst, const std::string& instance_id) {
  IlpModel model;
  model.kind = ModelKind::Bin;
  model.instance_id = instance_id;
  const std::size_t n = inst.n();
  const std::size_t m = inst.m();
  const std::size_t cuts = n > 0 ? n - 1 : 0;

  // 1-based bins, positions, pallets and cuts in names; vectors are 0-based.
  std::vector<std::uint32_t> x(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) x[i * n + j] = model.add_var(idx_name("x", {i + 1, j + 1}));
  }
  auto family = [&](const char* name) {
    std::vector<std::uint32_t> v(m * cuts);
    for (std::size_t t = 0; t < m; ++t) {
      for (std::size_t c = 0; c < cuts; ++c) v[t * cuts + c] = model.add_var(idx_name(name, {t + 1, c + 1}));
    }
    return v;
  };
  const auto g = family("g");
  const auto h = family("h");
  const auto f = family("f");
  const auto p = model.add_var("p", VarKind::Integer);
  model.set_objective(p);

  // Permutation(n, x)
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Term> row;
    for (std::size_t j = 0; j < n; ++j) row.push_back({x[i * n + j], 1});
    model.add_constraint("perm_r" + std::to_string(i + 1), std::move(row), Relation::Equal, 1);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Term> col;
    for (std::size_t i = 0; i < n; ++i) col.push_back({x[i * n + j], 1});
    model.add_constraint("perm_c" + std::to_string(j + 1), std::move(col), Relation::Equal, 1);
  }

  // SequenceOrder(Q, x): x_{i'}^{j'} <= 1 - x_i^j for order-violating placements.
  for (std::size_t s = 0; s < inst.k(); ++s) {
    const std::size_t lo = inst.bin_index(s, 0);
    const std::size_t hi = lo + inst.length(s);
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        // later bins of the sequence are not placed before b_i
        for (std::size_t ip = i + 1; ip < hi; ++ip) {
          for (std::size_t jp = 0; jp < j; ++jp) {
            model.add_constraint(idx_name("seqord_nb", {i + 1, j + 1, ip + 1, jp + 1}),
                                 {{x[ip * n + jp], 1}, {x[i * n + j], 1}}, Relation::LessEq, 1);
          }
        }
        // earlier bins of the sequence are not placed after b_i
        for (std::size_t ip = lo; ip < i; ++ip) {
          for (std::size_t jp = j + 1; jp < n; ++jp) {
            model.add_constraint(idx_name("seqord_na", {i + 1, j + 1, ip + 1, jp + 1}),
                                 {{x[ip * n + jp], 1}, {x[i * n + j], 1}}, Relation::LessEq, 1);
          }
        }
      }
    }
  }

  // Open pallets after each cut are bounded by p.
  for (std::size_t c = 0; c < cuts; ++c) {
    std::vector<Term> row;
    for (std::size_t t = 0; t < m; ++t) row.push_back({f[t * cuts + c], 1});
    row.push_back({p, -1});
    model.add_constraint("cut_" + std::to_string(c + 1), std::move(row), Relation::LessEq, 0);
  }

  std::vector<std::vector<std::size_t>> bins_of(m);
  for (std::size_t i = 0; i < n; ++i) bins_of[inst.bin_pallet(i)].push_back(i);

  for (std::size_t t = 0; t < m; ++t) {
    for (std::size_t c = 0; c < cuts; ++c) {
      const std::uint32_t gv = g[t * cuts + c];
      const std::uint32_t hv = h[t * cuts + c];
      const std::uint32_t fv = f[t * cuts + c];
      const std::size_t cut = c + 1;  // positions 1..cut are left of the cut
      std::vector<Term> g_sum;
      std::vector<Term> h_sum;
      for (std::size_t i : bins_of[t]) {
        for (std::size_t j = 0; j < n; ++j) {
          const std::size_t pos = j + 1;
          if (pos <= cut) {
            model.add_constraint(idx_name("lin_xxz1", {i + 1, pos, t + 1, cut}),
                                 {{x[i * n + j], 1}, {gv, -1}}, Relation::LessEq, 0);
            g_sum.push_back({x[i * n + j], 1});
          } else {
            model.add_constraint(idx_name("lin_xxz3", {i + 1, pos, t + 1, cut}),
                                 {{x[i * n + j], 1}, {hv, -1}}, Relation::LessEq, 0);
            h_sum.push_back({x[i * n + j], 1});
          }
        }
      }
      g_sum.push_back({gv, -1});
      h_sum.push_back({hv, -1});
      model.add_constraint(idx_name("lin_xxz2", {t + 1, cut}), std::move(g_sum), Relation::GreaterEq, 0);
      model.add_constraint(idx_name("lin_xxz4", {t + 1, cut}), std::move(h_sum), Relation::GreaterEq, 0);
      model.add_constraint(idx_name("lin_xxz5", {t + 1, cut}), {{fv, 1}, {gv, -1}}, Relation::LessEq, 0);
      model.add_constraint(idx_name("lin_xxz6", {t + 1, cut}), {{fv, 1}, {hv, -1}}, Relation::LessEq, 0);
      model.add_constraint(idx_name("lin_xxz7", {t + 1, cut}), {{gv, 1}, {hv, 1}, {fv, -1}},
                           Relation::LessEq, 1);
    }
  }
  return model;
}

// ---------------------------------------------------------------------------
// Vertex-order model

IlpModel build_pallet_model(const SequenceDigraph& graph, const std::string& instance_id) {
  IlpModel model;
  model.kind = ModelKind::Pallet;
  model.instance_id = instance_id;
  const std::size_t m = graph.vertex_count();

  std::vector<std::uint32_t> x(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) x[i * m + j] = model.add_var(idx_name("x", {i + 1, j + 1}));
  }
  auto big_x = [m](std::size_t i, std::size_t ip, std::size_t j, std::size_t jp) {
    return ((i * m + ip) * m + j) * m + jp;
  };
  std::vector<std::uint32_t> xx(m * m * m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t ip = 0; ip < m; ++ip) {
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t jp = 0; jp < m; ++jp) {
          xx[big_x(i, ip, j, jp)] = model.add_var(idx_name("X", {i + 1, ip + 1, j + 1, jp + 1}));
        }
      }
    }
  }
  // Y(j, c) for 1 <= j <= c <= m-1, stored at [(c-1) * m + (j-1)].
  std::vector<std::uint32_t> y(m * m, 0);
  for (std::size_t c = 1; c < m; ++c) {
    for (std::size_t j = 1; j <= c; ++j) y[(c - 1) * m + (j - 1)] = model.add_var(idx_name("Y", {j, c}));
  }
  const auto w = model.add_var("w", VarKind::Integer);
  model.set_objective(w);

  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Term> row;
    for (std::size_t j = 0; j < m; ++j) row.push_back({x[i * m + j], 1});
    model.add_constraint("perm_r" + std::to_string(i + 1), std::move(row), Relation::Equal, 1);
  }
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Term> col;
    for (std::size_t i = 0; i < m; ++i) col.push_back({x[i * m + j], 1});
    model.add_constraint("perm_c" + std::to_string(j + 1), std::move(col), Relation::Equal, 1);
  }

  for (std::size_t c = 1; c < m; ++c) {
    std::vector<Term> row;
    for (std::size_t j = 1; j <= c; ++j) row.push_back({y[(c - 1) * m + (j - 1)], 1});
    row.push_back({w, -1});
    model.add_constraint("cut_" + std::to_string(c), std::move(row), Relation::LessEq, 0);
  }

  // X = x_i^j AND x_{i'}^{j'}
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t ip = 0; ip < m; ++ip) {
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t jp = 0; jp < m; ++jp) {
          const auto v = xx[big_x(i, ip, j, jp)];
          const auto ij = x[i * m + j];
          const auto ipjp = x[ip * m + jp];
          const auto suffix = {i + 1, ip + 1, j + 1, jp + 1};
          model.add_constraint(idx_name("lin_x1", suffix), {{v, 1}, {ij, -1}}, Relation::LessEq, 0);
          model.add_constraint(idx_name("lin_x2", suffix), {{v, 1}, {ipjp, -1}}, Relation::LessEq, 0);
          model.add_constraint(idx_name("lin_x3", suffix), {{ij, 1}, {ipjp, 1}, {v, -1}}, Relation::LessEq, 1);
        }
      }
    }
  }

  // Y(j, c) = OR of X(i, i', j, j') over arcs (v_{i'}, v_i) and j' > c.
  for (std::size_t c = 1; c < m; ++c) {
    for (std::size_t j = 1; j <= c; ++j) {
      const auto yv = y[(c - 1) * m + (j - 1)];
      std::vector<Term> sum;
      for (std::size_t jp = c + 1; jp <= m; ++jp) {
        for (auto [from, to] : graph.arcs()) {
          const std::size_t i = to;
          const std::size_t ip = from;
          const auto v = xx[big_x(i, ip, j - 1, jp - 1)];
          model.add_constraint(idx_name("lin_xx1", {i + 1, ip + 1, j, jp, c}), {{v, 1}, {yv, -1}},
                               Relation::LessEq, 0);
          sum.push_back({v, 1});
        }
      }
      sum.push_back({yv, -1});
      model.add_constraint(idx_name("lin_xx2", {j, c}), std::move(sum), Relation::GreaterEq, 0);
    }
  }
  return model;
}

// ---------------------------------------------------------------------------
// LP text

namespace {

const char* relation_text(Relation rel) {
  switch (rel) {
    case Relation::LessEq: return "<=";
    case Relation::GreaterEq: return ">=";
    case Relation::Equal: return "=";
  }
  return "=";
}

constexpr std::size_t kTermsPerLine = 10;

void write_name_block(std::ostringstream& out, const std::vector<const std::string*>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << (i % kTermsPerLine == 0 ? " " : " ") << *names[i];
    if (i % kTermsPerLine == kTermsPerLine - 1 || i + 1 == names.size()) out << '\n';
  }
}

}  // namespace

std::string emit_lp(const IlpModel& model) {
  std::ostringstream out;
  out << "\\ model: " << (model.kind == ModelKind::Bin ? "bin" : "pallet") << '\n';
  if (!model.instance_id.empty()) out << "\\ instance: " << model.instance_id << '\n';
  const auto& vars = model.variables();
  out << "Minimize\n obj: " << vars[model.objective()].name << '\n';
  out << "Subject To\n";
  for (const auto& con : model.constraints()) {
    out << ' ' << con.name << ':';
    for (std::size_t i = 0; i < con.terms.size(); ++i) {
      if (i > 0 && i % kTermsPerLine == 0) out << "\n  ";
      const auto& term = con.terms[i];
      const std::int64_t mag = term.coef < 0 ? -term.coef : term.coef;
      if (term.coef < 0) {
        out << " -";
      } else if (i > 0) {
        out << " +";
      }
      if (mag != 1) out << ' ' << mag;
      out << ' ' << vars[term.var].name;
    }
    out << ' ' << relation_text(con.rel) << ' ' << con.rhs << '\n';
  }
  std::vector<const std::string*> binaries;
  std::vector<const std::string*> generals;
  for (const auto& v : vars) (v.kind == VarKind::Binary ? binaries : generals).push_back(&v.name);
  if (!binaries.empty()) {
    out << "Binary\n";
    write_name_block(out, binaries);
  }
  if (!generals.empty()) {
    out << "General\n";
    write_name_block(out, generals);
  }
  out << "End\n";
  return out.str();
}

namespace {

struct RawConstraint {
  std::size_t line = 0;
  std::string name;
  std::vector<std::pair<std::int64_t, std::string>> terms;
  Relation rel = Relation::LessEq;
  std::int64_t rhs = 0;
};

struct RawLp {
  std::string kind;
  std::string instance_id;
  std::string objective;
  std::vector<RawConstraint> constraints;
  std::vector<std::string> binaries;
  std::vector<std::string> generals;
  bool saw_minimize = false, saw_subject = false, saw_end = false;
};

bool is_relation(const std::string& tok) { return tok == "<=" || tok == ">=" || tok == "="; }

RawLp read_lp(std::string_view text) {
  RawLp lp;
  enum class Section { None, Objective, Constraints, Binary, General, Done } section = Section::None;
  std::vector<std::pair<std::size_t, std::string>> tokens;  // constraint tokens with line numbers
  const auto lines = detail::split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string_view raw = detail::trim(lines[li]);
    if (raw.empty()) continue;
    if (raw.front() == '\\') {
      auto body = detail::trim(raw.substr(1));
      if (body.starts_with("model:")) lp.kind = std::string(detail::trim(body.substr(6)));
      if (body.starts_with("instance:")) lp.instance_id = std::string(detail::trim(body.substr(9)));
      continue;
    }
    if (raw == "Minimize") {
      section = Section::Objective;
      lp.saw_minimize = true;
      continue;
    }
    if (raw == "Subject To") {
      section = Section::Constraints;
      lp.saw_subject = true;
      continue;
    }
    if (raw == "Binary") {
      section = Section::Binary;
      continue;
    }
    if (raw == "General") {
      section = Section::General;
      continue;
    }
    if (raw == "End") {
      section = Section::Done;
      lp.saw_end = true;
      continue;
    }
    const auto words = detail::split_ws(raw);
    switch (section) {
      case Section::Objective:
        if (words.size() != 2 || words[0] != "obj:") throw ParseError(li + 1, "expected 'obj: <var>'");
        lp.objective = words[1];
        break;
      case Section::Constraints:
        for (const auto& w : words) tokens.emplace_back(li + 1, w);
        break;
      case Section::Binary:
        lp.binaries.insert(lp.binaries.end(), words.begin(), words.end());
        break;
      case Section::General:
        lp.generals.insert(lp.generals.end(), words.begin(), words.end());
        break;
      case Section::None:
      case Section::Done:
        throw ParseError(li + 1, "text outside of a section");
    }
  }

  for (std::size_t i = 0; i < tokens.size();) {
    RawConstraint con;
    con.line = tokens[i].first;
    const auto& head = tokens[i].second;
    if (head.size() < 2 || head.back() != ':') throw ParseError(con.line, "expected '<name>:'");
    con.name = head.substr(0, head.size() - 1);
    ++i;
    std::int64_t sign = 1;
    std::int64_t coef = 1;
    bool closed = false;
    for (; i < tokens.size(); ++i) {
      const auto& tok = tokens[i].second;
      if (is_relation(tok)) {
        con.rel = tok == "<=" ? Relation::LessEq : (tok == ">=" ? Relation::GreaterEq : Relation::Equal);
        if (i + 1 >= tokens.size()) throw ParseError(tokens[i].first, "missing right-hand side");
        auto rhs = detail::parse_int(tokens[i + 1].second);
        if (!rhs) throw ParseError(tokens[i + 1].first, "right-hand side is not an integer");
        con.rhs = *rhs;
        i += 2;
        closed = true;
        break;
      }
      if (tok == "+") continue;
      if (tok == "-") {
        sign = -sign;
        continue;
      }
      if (auto v = detail::parse_int(tok)) {
        coef = *v;
        continue;
      }
      con.terms.emplace_back(sign * coef, tok);
      sign = 1;
      coef = 1;
    }
    if (!closed) throw ParseError(con.line, "constraint '" + con.name + "' has no relation");
    lp.constraints.push_back(std::move(con));
  }
  return lp;
}

}  // namespace

IlpModel parse_lp(std::string_view text) {
  const RawLp lp = read_lp(text);
  if (!lp.saw_minimize || !lp.saw_subject || !lp.saw_end) {
    throw ParseError("LP text lacks a Minimize, Subject To or End section");
  }
  IlpModel model;
  model.kind = lp.kind == "pallet" ? ModelKind::Pallet : ModelKind::Bin;
  model.instance_id = lp.instance_id;
  for (const auto& name : lp.binaries) model.add_var(name, VarKind::Binary);
  for (const auto& name : lp.generals) model.add_var(name, VarKind::Integer);
  auto obj = model.find(lp.objective);
  if (!obj) throw ParseError("objective variable '" + lp.objective + "' is not declared");
  model.set_objective(*obj);
  for (const auto& con : lp.constraints) {
    std::vector<Term> terms;
    for (const auto& [coef, name] : con.terms) {
      auto v = model.find(name);
      if (!v) throw ParseError(con.line, "undeclared variable '" + name + "'");
      terms.push_back({*v, coef});
    }
    model.add_constraint(con.name, std::move(terms), con.rel, con.rhs);
  }
  return model;
}

std::vector<std::string> validate_lp(std::string_view text) {
  std::vector<std::string> problems;
  RawLp lp;
  try {
    lp = read_lp(text);
  } catch (const ParseError& e) {
    problems.emplace_back(e.what());
    return problems;
  }
  if (!lp.saw_minimize) problems.emplace_back("missing Minimize section");
  if (!lp.saw_subject) problems.emplace_back("missing Subject To section");
  if (!lp.saw_end) problems.emplace_back("missing End");
  std::set<std::string> declared;
  for (const auto& name : lp.binaries) {
    if (!declared.insert(name).second) problems.push_back("variable '" + name + "' declared twice");
  }
  for (const auto& name : lp.generals) {
    if (!declared.insert(name).second) problems.push_back("variable '" + name + "' declared twice");
  }
  if (!declared.count(lp.objective)) problems.push_back("objective '" + lp.objective + "' is undeclared");
  std::set<std::string> names;
  for (const auto& con : lp.constraints) {
    if (!names.insert(con.name).second) problems.push_back("constraint name '" + con.name + "' repeated");
    for (const auto& term : con.terms) {
      if (!declared.count(term.second)) {
        problems.push_back("constraint '" + con.name + "' uses undeclared '" + term.second + "'");
      }
    }
  }
  return problems;
}

// ---------------------------------------------------------------------------
// Branch and bound

namespace {

constexpr std::int64_t kIntegerUpper = 1'000'000'000;

/// Row in the form sum(coef * var) <= rhs.
struct Row {
  std::vector<Term> terms;
  std::int64_t rhs;
};

class BranchAndBound {
 public:
  BranchAndBound(const IlpModel& model, std::uint64_t budget) : model_(model), budget_(budget) {
    const std::size_t nv = model.variables().size();
    lb_.assign(nv, 0);
    ub_.resize(nv);
    rows_of_.resize(nv);
    for (std::size_t v = 0; v < nv; ++v) {
      ub_[v] = model.variables()[v].kind == VarKind::Binary ? 1 : kIntegerUpper;
      if (model.variables()[v].kind == VarKind::Binary) binaries_.push_back(static_cast<std::uint32_t>(v));
    }
    for (const auto& con : model.constraints()) {
      auto negated = [&] {
        Row r{con.terms, -con.rhs};
        for (auto& t : r.terms) t.coef = -t.coef;
        return r;
      };
      if (con.rel != Relation::GreaterEq) add_row({con.terms, con.rhs});
      if (con.rel != Relation::LessEq) add_row(negated());
    }
    in_queue_.assign(rows_.size(), 0);
  }

  IlpSolution run() {
    IlpSolution out;
    std::vector<std::uint32_t> all(rows_.size());
    for (std::uint32_t r = 0; r < rows_.size(); ++r) all[r] = r;
    if (propagate(all)) search();
    out.nodes = nodes_;
    if (have_incumbent_) {
      out.assignment = incumbent_;
      out.objective_value = incumbent_[model_.objective()];
      out.status = aborted_ ? IlpStatus::BudgetExceeded : IlpStatus::Optimal;
    } else {
      out.status = aborted_ ? IlpStatus::BudgetExceeded : IlpStatus::Infeasible;
    }
    return out;
  }

 private:
  void add_row(Row row) {
    const auto idx = static_cast<std::uint32_t>(rows_.size());
    for (const auto& t : row.terms) rows_of_[t.var].push_back(idx);
    rows_.push_back(std::move(row));
  }

  bool set_bounds(std::uint32_t v, std::int64_t lo, std::int64_t hi) {
    if (lo <= lb_[v] && hi >= ub_[v]) return true;
    trail_.push_back({v, lb_[v], ub_[v]});
    lb_[v] = std::max(lb_[v], lo);
    ub_[v] = std::min(ub_[v], hi);
    if (lb_[v] > ub_[v]) return false;
    for (std::uint32_t r : rows_of_[v]) {
      if (!in_queue_[r]) {
        in_queue_[r] = 1;
        queue_.push_back(r);
      }
    }
    return true;
  }

  bool propagate(const std::vector<std::uint32_t>& seed) {
    for (std::uint32_t r : seed) {
      if (!in_queue_[r]) {
        in_queue_[r] = 1;
        queue_.push_back(r);
      }
    }
    bool ok = true;
    while (ok && !queue_.empty()) {
      const std::uint32_t r = queue_.back();
      queue_.pop_back();
      in_queue_[r] = 0;
      ok = propagate_row(rows_[r]);
    }
    for (std::uint32_t r : queue_) in_queue_[r] = 0;
    queue_.clear();
    return ok;
  }

  bool propagate_row(const Row& row) {
    std::int64_t min_activity = 0;
    for (const auto& t : row.terms) min_activity += t.coef > 0 ? t.coef * lb_[t.var] : t.coef * ub_[t.var];
    if (min_activity > row.rhs) return false;
    const std::int64_t slack = row.rhs - min_activity;
    for (const auto& t : row.terms) {
      if (t.coef > 0) {
        const std::int64_t hi = lb_[t.var] + slack / t.coef;
        if (hi < ub_[t.var] && !set_bounds(t.var, lb_[t.var], hi)) return false;
      } else if (t.coef < 0) {
        const std::int64_t lo = ub_[t.var] - slack / (-t.coef);
        if (lo > lb_[t.var] && !set_bounds(t.var, lo, ub_[t.var])) return false;
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const auto& e = trail_.back();
      lb_[e.var] = e.lb;
      ub_[e.var] = e.ub;
      trail_.pop_back();
    }
  }

  void search() {
    if (aborted_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    const std::uint32_t obj = model_.objective();
    if (have_incumbent_) {
      const std::size_t mark = trail_.size();
      const std::int64_t cutoff = incumbent_[obj] - 1;
      if (lb_[obj] > cutoff || !set_bounds(obj, lb_[obj], cutoff) || !propagate({})) {
        undo(mark);
        return;
      }
      descend();
      undo(mark);
      return;
    }
    descend();
  }

  void descend() {
    auto it = std::find_if(binaries_.begin(), binaries_.end(),
                           [&](std::uint32_t v) { return lb_[v] != ub_[v]; });
    if (it == binaries_.end()) {
      record_leaf();
      return;
    }
    const std::uint32_t v = *it;
    for (std::int64_t value = 0; value <= 1 && !aborted_; ++value) {
      const std::size_t mark = trail_.size();
      if (set_bounds(v, value, value) && propagate({})) search();
      undo(mark);
    }
  }

  void record_leaf() {
    // Integer variables take their smallest value consistent with the rows.
    std::vector<std::int64_t> assignment(lb_.begin(), lb_.end());
    if (!satisfies(model_, assignment)) return;
    if (!have_incumbent_ || assignment[model_.objective()] < incumbent_[model_.objective()]) {
      incumbent_ = std::move(assignment);
      have_incumbent_ = true;
    }
  }

  struct TrailEntry {
    std::uint32_t var;
    std::int64_t lb, ub;
  };

  const IlpModel& model_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::vector<Row> rows_;
  std::vector<std::vector<std::uint32_t>> rows_of_;
  std::vector<std::uint32_t> binaries_;
  std::vector<std::int64_t> lb_, ub_;
  std::vector<TrailEntry> trail_;
  std::vector<std::uint32_t> queue_;
  std::vector<std::uint8_t> in_queue_;
  bool have_incumbent_ = false;
  std::vector<std::int64_t> incumbent_;
};

}  // namespace

IlpSolution solve_tiny(const IlpModel& model, std::uint64_t node_budget) {
  if (node_budget < 1) throw PreconditionError("node budget must be at least 1");
  if (model.variables().empty()) throw PreconditionError("model has no variables");
  return BranchAndBound(model, node_budget).run();
}

bool satisfies(const IlpModel& model, const std::vector<std::int64_t>& assignment) {
  if (assignment.size() != model.variables().size()) return false;
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    if (assignment[v] < 0) return false;
    if (model.variables()[v].kind == VarKind::Binary && assignment[v] > 1) return false;
  }
  for (const auto& con : model.constraints()) {
    std::int64_t lhs = 0;
    for (const auto& t : con.terms) lhs += t.coef * assignment[t.var];
    const bool ok = con.rel == Relation::LessEq    ? lhs <= con.rhs
                    : con.rel == Relation::GreaterEq ? lhs >= con.rhs
                                                     : lhs == con.rhs;
    if (!ok) return false;
  }
  return true;
}

namespace {

std::vector<std::size_t> decode_permutation(const IlpModel& model, std::size_t size, const IlpSolution& sol) {
  if (sol.status == IlpStatus::Infeasible || sol.assignment.empty()) {
    throw PreconditionError("no assignment to decode");
  }
  std::vector<std::size_t> at_position(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      auto v = model.find(idx_name("x", {i + 1, j + 1}));
      if (!v) throw PreconditionError("model lacks x variables");
      if (sol.assignment[*v] == 1) at_position[j] = i;
    }
  }
  return at_position;
}

}  // namespace

BinOrder bin_order_from(const IlpModel& model, const Instance& inst, const IlpSolution& sol) {
  BinOrder order;
  order.bins = decode_permutation(model, inst.n(), sol);
  return order;
}

std::vector<VertexId> vertex_order_from(const IlpModel& model, std::size_t vertex_count,
                                        const IlpSolution& sol) {
  const auto positions = decode_permutation(model, vertex_count, sol);
  return {positions.begin(), positions.end()};
}

const char* to_string(IlpStatus status) {
  switch (status) {
    case IlpStatus::Optimal: return "optimal";
    case IlpStatus::Infeasible: return "infeasible";
    case IlpStatus::BudgetExceeded: return "budget_exceeded";
  }
  return "unknown";
}

}  // namespace stackup
