#include "stackup/instance.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "stackup/error.hpp"
#include "text_util.hpp"

namespace stackup {

// ---------------------------------------------------------------------------
// Instance

Instance Instance::from_tokens(const std::vector<std::vector<std::string>>& sequences) {
  std::vector<std::vector<PalletId>> ids(sequences.size());
  std::vector<std::string> tokens;
  std::unordered_map<std::string, PalletId> seen;
  for (std::size_t j = 0; j < sequences.size(); ++j) {
    ids[j].reserve(sequences[j].size());
    for (const auto& tok : sequences[j]) {
      if (tok.empty() || !detail::is_token(tok)) {
        throw PreconditionError("pallet token '" + tok + "' is empty or contains whitespace");
      }
      auto [it, inserted] = seen.try_emplace(tok, static_cast<PalletId>(tokens.size()));
      if (inserted) tokens.push_back(tok);
      ids[j].push_back(it->second);
    }
  }
  return Instance(std::move(ids), std::move(tokens));
}

Instance::Instance(std::vector<std::vector<PalletId>> sequences, std::vector<std::string> tokens)
    : sequences_(std::move(sequences)), tokens_(std::move(tokens)) {
  std::vector<bool> used(tokens_.size(), false);
  for (const auto& q : sequences_) {
    for (PalletId t : q) {
      if (t >= tokens_.size()) throw PreconditionError("pallet id out of range");
      used[t] = true;
    }
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) {
    throw PreconditionError("every pallet must occur in some sequence");
  }
  index();
}

void Instance::index() {
  by_token_.clear();
  for (PalletId t = 0; t < tokens_.size(); ++t) {
    if (!by_token_.emplace(tokens_[t], t).second) {
      throw PreconditionError("duplicate pallet token '" + tokens_[t] + "'");
    }
  }
  offsets_.assign(sequences_.size() + 1, 0);
  for (std::size_t j = 0; j < sequences_.size(); ++j) {
    offsets_[j + 1] = offsets_[j] + sequences_[j].size();
  }
}

std::optional<PalletId> Instance::find_pallet(std::string_view token) const {
  auto it = by_token_.find(std::string(token));
  if (it == by_token_.end()) return std::nullopt;
  return it->second;
}

std::pair<std::size_t, std::size_t> Instance::bin_location(std::size_t bin) const {
  if (bin >= n()) throw PreconditionError("bin index out of range");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), bin);
  std::size_t j = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  return {j, bin - offsets_[j]};
}

PalletId Instance::bin_pallet(std::size_t bin) const {
  auto [j, pos] = bin_location(bin);
  return sequences_[j][pos];
}

Configuration Instance::final_configuration() const {
  Configuration cfg(k());
  for (std::size_t j = 0; j < k(); ++j) cfg[j] = static_cast<std::uint32_t>(length(j));
  return cfg;
}

bool Instance::is_final(ConfigView cfg) const {
  for (std::size_t j = 0; j < k(); ++j) {
    if (cfg[j] != length(j)) return false;
  }
  return true;
}

bool Instance::is_valid(ConfigView cfg) const {
  if (cfg.size() != k()) return false;
  for (std::size_t j = 0; j < k(); ++j) {
    if (cfg[j] > length(j)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Text format

Instance parse_instance(std::string_view text) {
  const auto lines = detail::split_lines(text);
  std::size_t i = 0;
  // Leading comments and blank lines.
  while (i < lines.size() && (detail::is_comment(lines[i]) || detail::is_blank(lines[i]))) ++i;
  if (i == lines.size()) throw ParseError("missing 'k=<int>' header");

  std::string_view header = detail::trim(lines[i]);
  if (header.size() < 2 || header[0] != 'k') {
    throw ParseError(i + 1, "expected 'k=<int>' header, got '" + std::string(header) + "'");
  }
  header.remove_prefix(1);
  header = detail::trim(header);
  if (header.empty() || header[0] != '=') throw ParseError(i + 1, "expected '=' after 'k'");
  header.remove_prefix(1);
  auto k = detail::parse_uint(detail::trim(header));
  if (!k) throw ParseError(i + 1, "header value is not a non-negative integer");
  if (*k < 1) throw ParseError(i + 1, "k must be at least 1");
  ++i;

  std::vector<std::vector<std::string>> sequences;
  sequences.reserve(*k);
  for (; i < lines.size() && sequences.size() < *k; ++i) {
    if (detail::is_comment(lines[i])) continue;
    sequences.push_back(detail::split_ws(lines[i]));
  }
  if (sequences.size() < *k) {
    throw ParseError(lines.size(), "header promises k=" + std::to_string(*k) + " sequences, found " +
                                       std::to_string(sequences.size()));
  }
  for (; i < lines.size(); ++i) {
    if (detail::is_comment(lines[i]) || detail::is_blank(lines[i])) continue;
    throw ParseError(i + 1, "more sequence lines than k=" + std::to_string(*k));
  }
  return Instance::from_tokens(sequences);
}

std::string emit_instance(const Instance& inst, const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) {
    out += "# ";
    out += c;
    out += '\n';
  }
  out += "k=" + std::to_string(inst.k()) + '\n';
  for (const auto& q : inst.sequences()) {
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (i) out += ' ';
      out += inst.token(q[i]);
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// first / last and open pallets

FirstLastTable::FirstLastTable(const Instance& inst)
    : m_(inst.m()),
      first_(inst.k() * inst.m()),
      last_(inst.k() * inst.m(), 0),
      count_(inst.m(), 0) {
  for (std::size_t j = 0; j < inst.k(); ++j) {
    const auto& q = inst.sequence(j);
    const auto absent = static_cast<std::uint32_t>(q.size() + 1);
    std::fill_n(first_.begin() + static_cast<std::ptrdiff_t>(j * m_), m_, absent);
    for (std::size_t pos = 0; pos < q.size(); ++pos) {
      const PalletId t = q[pos];
      const auto one_based = static_cast<std::uint32_t>(pos + 1);
      auto& f = first_[j * m_ + t];
      if (f == absent) f = one_based;
      last_[j * m_ + t] = one_based;
      ++count_[t];
    }
  }
}

bool is_open(ConfigView cfg, PalletId t, const FirstLastTable& tbl) {
  bool started = false;
  bool pending = false;
  for (std::size_t j = 0; j < cfg.size(); ++j) {
    started = started || tbl.first(j, t) <= cfg[j];
    pending = pending || tbl.last(j, t) > cfg[j];
  }
  return started && pending;
}

OpenSet open_set(const Instance& inst, ConfigView cfg, const FirstLastTable& tbl) {
  OpenSet out;
  for (PalletId t = 0; t < inst.m(); ++t) {
    if (is_open(cfg, t, tbl)) out.pallets.push_back(t);
  }
  return out;
}

std::vector<PalletId> front(ConfigView cfg, const Instance& inst) {
  std::vector<PalletId> out;
  for (std::size_t j = 0; j < inst.k(); ++j) {
    if (cfg[j] < inst.length(j)) out.push_back(inst.pallet_at(j, cfg[j]));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int delta_open(const Instance& inst, const FirstLastTable& tbl, ConfigView cfg, std::size_t j) {
  if (j >= inst.k() || cfg[j] >= inst.length(j)) {
    throw PreconditionError("delta_open: sequence " + std::to_string(j + 1) + " is exhausted");
  }
  const PalletId t = inst.pallet_at(j, cfg[j]);
  const std::uint32_t pos = cfg[j] + 1;
  bool opens = tbl.first(j, t) == pos;
  bool closes = tbl.last(j, t) == pos;
  for (std::size_t l = 0; l < cfg.size() && (opens || closes); ++l) {
    if (l == j) continue;
    opens = opens && tbl.first(l, t) > cfg[l];
    closes = closes && tbl.last(l, t) <= cfg[l];
  }
  if (opens && closes) return 0;
  return opens ? 1 : (closes ? -1 : 0);
}

Configuration step(ConfigView cfg, std::size_t j) {
  Configuration out(cfg.begin(), cfg.end());
  ++out.at(j);
  return out;
}

InstanceStats compute_stats(const Instance& inst) {
  InstanceStats s;
  s.n = inst.n();
  s.m = inst.m();
  s.k = inst.k();
  s.bins_per_pallet.assign(s.m, 0);
  s.sequences_per_pallet.assign(s.m, 0);
  std::vector<std::size_t> last_seen(s.m, static_cast<std::size_t>(-1));
  for (std::size_t j = 0; j < s.k; ++j) {
    const auto& q = inst.sequence(j);
    s.max_length = std::max(s.max_length, q.size());
    if (q.empty()) ++s.empty_sequences;
    for (PalletId t : q) {
      ++s.bins_per_pallet[t];
      if (last_seen[t] != j) {
        last_seen[t] = j;
        ++s.sequences_per_pallet[t];
      }
    }
  }
  for (PalletId t = 0; t < s.m; ++t) {
    s.d_q = std::max(s.d_q, s.sequences_per_pallet[t]);
    if (s.bins_per_pallet[t] == 1) ++s.single_bin_pallets;
  }
  s.k_below_m = s.k < s.m;
  s.m_at_most_half_n = 2 * s.m <= s.n;

  if (s.empty_sequences) {
    s.warnings.push_back(std::to_string(s.empty_sequences) + " empty sequence(s)");
  }
  if (s.single_bin_pallets) {
    s.warnings.push_back(std::to_string(s.single_bin_pallets) +
                         " pallet(s) with a single bin; they never occupy a place");
  }
  if (!s.k_below_m) s.warnings.push_back("k >= m: every pallet could get its own sequence");
  if (!s.m_at_most_half_n) s.warnings.push_back("m > n/2: some pallet has fewer than two bins");
  return s;
}

// ---------------------------------------------------------------------------
// Solutions

Solution parse_solution(std::string_view text, const Instance& inst) {
  const auto lines = detail::split_lines(text);
  std::vector<std::pair<std::size_t, std::string_view>> body;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (detail::is_comment(lines[i])) continue;
    body.emplace_back(i + 1, lines[i]);
  }
  while (!body.empty() && detail::is_blank(body.back().second)) body.pop_back();
  if (body.empty()) throw ParseError("empty solution file");
  const auto [kind_line, kind_text] = body.front();
  const std::string kind(detail::trim(kind_text));
  if (body.size() > 2) throw ParseError(body[2].first, "unexpected extra line in solution file");
  const std::size_t line_no = body.size() > 1 ? body[1].first : kind_line;
  const auto tokens = body.size() > 1 ? detail::split_ws(body[1].second) : std::vector<std::string>{};

  auto index_in = [&](const std::string& tok, std::size_t upper) {
    auto v = detail::parse_uint(tok);
    if (!v || *v < 1 || *v > upper) {
      throw ParseError(line_no, "index '" + tok + "' outside 1.." + std::to_string(upper));
    }
    return static_cast<std::size_t>(*v - 1);
  };

  if (kind == "bin") {
    BinOrder sol;
    if (tokens.size() != inst.n()) {
      throw ParseError(line_no, "bin solution lists " + std::to_string(tokens.size()) + " bins, instance has " +
                                    std::to_string(inst.n()));
    }
    for (const auto& tok : tokens) sol.bins.push_back(index_in(tok, inst.n()));
    return sol;
  }
  if (kind == "pallet") {
    PalletOrder sol;
    for (const auto& tok : tokens) {
      auto t = inst.find_pallet(tok);
      if (!t) throw ParseError(line_no, "unknown pallet '" + tok + "'");
      sol.pallets.push_back(*t);
    }
    if (sol.pallets.size() != inst.m()) {
      throw ParseError(line_no, "pallet solution lists " + std::to_string(sol.pallets.size()) +
                                    " pallets, instance has " + std::to_string(inst.m()));
    }
    return sol;
  }
  if (kind == "sequence") {
    SequenceOrder sol;
    for (const auto& tok : tokens) sol.sequences.push_back(index_in(tok, inst.k()));
    return sol;
  }
  throw ParseError(kind_line, "solution kind must be bin, pallet or sequence, got '" + kind + "'");
}

std::string emit_solution(const Solution& sol, const Instance& inst) {
  std::ostringstream out;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BinOrder>) {
          out << "bin\n";
          for (std::size_t i = 0; i < s.bins.size(); ++i) out << (i ? " " : "") << s.bins[i] + 1;
        } else if constexpr (std::is_same_v<T, PalletOrder>) {
          out << "pallet\n";
          for (std::size_t i = 0; i < s.pallets.size(); ++i) {
            out << (i ? " " : "") << inst.token(s.pallets[i]);
          }
        } else {
          out << "sequence\n";
          for (std::size_t i = 0; i < s.sequences.size(); ++i) {
            out << (i ? " " : "") << s.sequences[i] + 1;
          }
        }
      },
      sol);
  out << '\n';
  return out.str();
}

namespace {

Verdict reject(std::size_t step, int max_open, std::string message) {
  Verdict v;
  v.ok = false;
  v.max_open = max_open;
  v.failed_step = step;
  v.message = std::move(message);
  return v;
}

}  // namespace

Verdict verify_bin_solution(const Instance& inst, const BinOrder& sol, int p) {
  const FirstLastTable tbl(inst);
  Processor proc(inst, tbl);
  proc.record_trail(false);
  if (sol.bins.size() != inst.n()) {
    return reject(0, 0, "bin order has " + std::to_string(sol.bins.size()) + " entries, expected " +
                            std::to_string(inst.n()));
  }
  Verdict v;
  v.ok = true;
  for (std::size_t s = 0; s < sol.bins.size(); ++s) {
    if (sol.bins[s] >= inst.n()) return reject(s + 1, proc.max_open(), "bin index out of range");
    const auto [j, pos] = inst.bin_location(sol.bins[s]);
    if (proc.config()[j] != pos) {
      return reject(s + 1, proc.max_open(),
                    "bin " + std::to_string(sol.bins[s] + 1) + " is not at the front of sequence " +
                        std::to_string(j + 1));
    }
    proc.remove(j);
    if (v.ok && proc.open_count() > p) {
      v.ok = false;
      v.failed_step = s + 1;
      v.message = std::to_string(proc.open_count()) + " pallets open after removal " +
                  std::to_string(s + 1) + ", limit " + std::to_string(p);
    }
  }
  v.max_open = proc.max_open();
  return v;
}

Processing pallet_order_to_processing(const Instance& inst, const PalletOrder& sol, int p) {
  return pallet_order_to_processing(inst, FirstLastTable(inst), sol, p);
}

Processing sequence_order_to_processing(const Instance& inst, const SequenceOrder& sol, int p) {
  return sequence_order_to_processing(inst, FirstLastTable(inst), sol, p);
}

Processing pallet_order_to_processing(const Instance& inst, const FirstLastTable& tbl,
                                      const PalletOrder& sol, int p) {
  Processor proc(inst, tbl);
  Processing out;
  auto fail = [&](std::size_t step, std::string msg) {
    out.order.bins = proc.removed();
    out.verdict = reject(step, proc.max_open(), std::move(msg));
    return out;
  };

  if (sol.pallets.size() != inst.m()) {
    return fail(0, "pallet order has " + std::to_string(sol.pallets.size()) + " entries, expected " +
                       std::to_string(inst.m()));
  }
  std::vector<bool> listed(inst.m(), false);
  for (PalletId t : sol.pallets) {
    if (t >= inst.m() || listed[t]) return fail(0, "pallet order is not a permutation");
    listed[t] = true;
  }

  proc.close_automatically();
  for (std::size_t i = 0; i < sol.pallets.size(); ++i) {
    const PalletId t = sol.pallets[i];
    std::size_t chosen = inst.k();
    for (std::size_t j = 0; j < inst.k(); ++j) {
      if (!proc.exhausted(j) && proc.front_pallet(j) == t) {
        chosen = j;
        break;
      }
    }
    if (chosen == inst.k()) {
      return fail(i + 1, "pallet " + inst.token(t) + " has no front bin at decision " +
                             std::to_string(i + 1));
    }
    proc.remove(chosen);
    if (proc.open_count() > p) {
      return fail(i + 1, "opening pallet " + inst.token(t) + " exceeds " + std::to_string(p) +
                             " places");
    }
    proc.close_automatically();
  }
  if (!proc.is_final()) return fail(sol.pallets.size(), "bins remain after the last decision");
  out.order.bins = proc.removed();
  out.verdict.ok = true;
  out.verdict.max_open = proc.max_open();
  return out;
}

Processing sequence_order_to_processing(const Instance& inst, const FirstLastTable& tbl,
                                        const SequenceOrder& sol, int p) {
  Processor proc(inst, tbl);
  Processing out;
  auto fail = [&](std::size_t step, std::string msg) {
    out.order.bins = proc.removed();
    out.verdict = reject(step, proc.max_open(), std::move(msg));
    return out;
  };
  if (sol.sequences.size() != inst.m()) {
    return fail(0, "sequence order has " + std::to_string(sol.sequences.size()) +
                       " entries, expected " + std::to_string(inst.m()));
  }
  proc.close_automatically();
  for (std::size_t i = 0; i < sol.sequences.size(); ++i) {
    const std::size_t j = sol.sequences[i];
    if (j >= inst.k() || proc.exhausted(j)) {
      return fail(i + 1, "sequence " + std::to_string(j + 1) + " has no bin at decision " +
                             std::to_string(i + 1));
    }
    if (proc.is_open(proc.front_pallet(j))) {
      return fail(i + 1, "front bin of sequence " + std::to_string(j + 1) + " opens no pallet");
    }
    proc.remove(j);
    if (proc.open_count() > p) {
      return fail(i + 1, "decision " + std::to_string(i + 1) + " exceeds " + std::to_string(p) +
                             " places");
    }
    proc.close_automatically();
  }
  if (!proc.is_final()) return fail(sol.sequences.size(), "bins remain after the last decision");
  out.order.bins = proc.removed();
  out.verdict.ok = true;
  out.verdict.max_open = proc.max_open();
  return out;
}

Verdict verify_sequence_solution(const Instance& inst, const SequenceOrder& sol, int p) {
  return sequence_order_to_processing(inst, sol, p).verdict;
}

Verdict verify_solution(const Instance& inst, const Solution& sol, int p) {
  return std::visit(
      [&](const auto& s) -> Verdict {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BinOrder>) {
          return verify_bin_solution(inst, s, p);
        } else if constexpr (std::is_same_v<T, PalletOrder>) {
          return pallet_order_to_processing(inst, s, p).verdict;
        } else {
          return verify_sequence_solution(inst, s, p);
        }
      },
      sol);
}

// ---------------------------------------------------------------------------
// Processor

Processor::Processor(const Instance& inst, const FirstLastTable& tbl)
    : inst_(&inst), tbl_(&tbl), cfg_(inst.k(), 0), open_mark_(inst.m(), 0) {}

void Processor::reset(ConfigView cfg, std::span<const PalletId> open) {
  for (PalletId t : open_list_) open_mark_[t] = 0;
  cfg_.assign(cfg.begin(), cfg.end());
  open_list_.assign(open.begin(), open.end());
  for (PalletId t : open_list_) open_mark_[t] = 1;
  max_open_ = static_cast<int>(open_list_.size());
  removed_.clear();
}

void Processor::reset(ConfigView cfg) {
  const auto open = open_set(*inst_, cfg, *tbl_);
  reset(cfg, open.pallets);
}

std::vector<PalletId> Processor::open_pallets() const {
  std::vector<PalletId> out = open_list_;
  std::sort(out.begin(), out.end());
  return out;
}

bool Processor::is_final() const { return inst_->is_final(cfg_); }

bool Processor::is_decision() const {
  for (std::size_t j = 0; j < cfg_.size(); ++j) {
    if (!exhausted(j) && is_open(front_pallet(j))) return false;
  }
  return true;
}

int Processor::remove(std::size_t j) {
  const int delta = delta_open(*inst_, *tbl_, cfg_, j);
  const PalletId t = front_pallet(j);
  if (record_) removed_.push_back(inst_->bin_index(j, cfg_[j]));
  ++cfg_[j];
  if (delta > 0) {
    open_mark_[t] = 1;
    open_list_.push_back(t);
    max_open_ = std::max(max_open_, open_count());
  } else if (delta < 0) {
    open_mark_[t] = 0;
    open_list_.erase(std::find(open_list_.begin(), open_list_.end(), t));
  }
  return delta;
}

std::size_t Processor::close_automatically() {
  std::size_t removed = 0;
  // Closure never opens a pallet, so a sequence drained here cannot become
  // drainable again later in the pass.
  for (std::size_t j = 0; j < cfg_.size(); ++j) {
    while (!exhausted(j) && is_open(front_pallet(j))) {
      remove(j);
      ++removed;
    }
  }
  return removed;
}

}  // namespace stackup
