#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace stackup {

/// Dense pallet index in [0, m). External labels live in Instance::token().
using PalletId = std::uint32_t;

/// Per-sequence removal counters (i_1, ..., i_k).
using Configuration = std::vector<std::uint32_t>;
using ConfigView = std::span<const std::uint32_t>;

/// k FIFO sequences of pallet-labelled bins. Immutable after construction.
///
/// Bins are numbered globally in sequence order (all of q_1, then q_2, ...);
/// the public API uses 0-based bin, sequence and position indices, file formats
/// and reports are 1-based.
class Instance {
 public:
  Instance() = default;

  /// Builds from token sequences; pallet ids are assigned by first appearance.
  static Instance from_tokens(const std::vector<std::vector<std::string>>& sequences);

  /// Builds from dense ids. Every id in [0, tokens.size()) must occur at least once.
  Instance(std::vector<std::vector<PalletId>> sequences, std::vector<std::string> tokens);

  std::size_t k() const noexcept { return sequences_.size(); }
  std::size_t m() const noexcept { return tokens_.size(); }
  std::size_t n() const noexcept { return offsets_.empty() ? 0 : offsets_.back(); }

  const std::vector<std::vector<PalletId>>& sequences() const noexcept { return sequences_; }
  const std::vector<PalletId>& sequence(std::size_t j) const { return sequences_.at(j); }
  std::size_t length(std::size_t j) const { return sequences_[j].size(); }
  PalletId pallet_at(std::size_t j, std::size_t pos) const { return sequences_[j][pos]; }

  const std::string& token(PalletId t) const { return tokens_.at(t); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  std::optional<PalletId> find_pallet(std::string_view token) const;

  /// Global 0-based bin index of position `pos` (0-based) in sequence `j`.
  std::size_t bin_index(std::size_t j, std::size_t pos) const { return offsets_[j] + pos; }
  /// Inverse of bin_index: (sequence, position), both 0-based.
  std::pair<std::size_t, std::size_t> bin_location(std::size_t bin) const;
  PalletId bin_pallet(std::size_t bin) const;

  Configuration initial_configuration() const { return Configuration(k(), 0); }
  Configuration final_configuration() const;
  bool is_final(ConfigView cfg) const;
  bool is_valid(ConfigView cfg) const;

  bool operator==(const Instance& other) const {
    return sequences_ == other.sequences_ && tokens_ == other.tokens_;
  }

 private:
  void index();

  std::vector<std::vector<PalletId>> sequences_;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, PalletId> by_token_;
  std::vector<std::size_t> offsets_;  // k+1 prefix sums of sequence lengths
};

Instance parse_instance(std::string_view text);
std::string emit_instance(const Instance& inst, const std::vector<std::string>& comments = {});

/// first/last positions (1-based) of every pallet in every sequence, with the
/// absent sentinel (|q_j|+1, 0).
class FirstLastTable {
 public:
  FirstLastTable() = default;
  explicit FirstLastTable(const Instance& inst);

  std::uint32_t first(std::size_t j, PalletId t) const { return first_[j * m_ + t]; }
  std::uint32_t last(std::size_t j, PalletId t) const { return last_[j * m_ + t]; }
  bool occurs(std::size_t j, PalletId t) const { return last(j, t) != 0; }
  std::size_t bins_of(PalletId t) const { return count_[t]; }

 private:
  std::size_t m_ = 0;
  std::vector<std::uint32_t> first_;
  std::vector<std::uint32_t> last_;
  std::vector<std::uint32_t> count_;
};

inline FirstLastTable build_first_last(const Instance& inst) { return FirstLastTable(inst); }

bool is_open(ConfigView cfg, PalletId t, const FirstLastTable& tbl);

struct OpenSet {
  std::vector<PalletId> pallets;  // ascending
  std::size_t count() const noexcept { return pallets.size(); }
};

OpenSet open_set(const Instance& inst, ConfigView cfg, const FirstLastTable& tbl);

/// Pallets of the bins at positions i_j+1, ascending; exhausted sequences contribute nothing.
std::vector<PalletId> front(ConfigView cfg, const Instance& inst);

/// Change of the open-pallet count caused by removing the front bin of sequence j.
/// A pallet with a single bin opens and closes in the same step and yields 0.
int delta_open(const Instance& inst, const FirstLastTable& tbl, ConfigView cfg, std::size_t j);

/// cfg with one more bin removed from sequence j.
Configuration step(ConfigView cfg, std::size_t j);

struct InstanceStats {
  std::size_t n = 0, m = 0, k = 0;
  std::size_t max_length = 0;  // N
  std::size_t d_q = 0;
  std::vector<std::size_t> bins_per_pallet;
  std::vector<std::size_t> sequences_per_pallet;  // d_Q(t)
  std::size_t single_bin_pallets = 0;
  std::size_t empty_sequences = 0;
  // Practicality bounds for a stack-up system (all expected to hold).
  bool k_below_m = false;
  bool m_at_most_half_n = false;
  std::vector<std::string> warnings;
};

InstanceStats compute_stats(const Instance& inst);

// ---------------------------------------------------------------------------
// Solutions

struct BinOrder {
  std::vector<std::size_t> bins;  // 0-based global bin indices in removal order
  bool operator==(const BinOrder&) const = default;
};
struct PalletOrder {
  std::vector<PalletId> pallets;
  bool operator==(const PalletOrder&) const = default;
};
struct SequenceOrder {
  std::vector<std::size_t> sequences;  // 0-based
  bool operator==(const SequenceOrder&) const = default;
};

using Solution = std::variant<BinOrder, PalletOrder, SequenceOrder>;

/// Solution file: kind line (`bin|pallet|sequence`) then one line of 1-based
/// bin indices, pallet tokens or 1-based sequence indices.
Solution parse_solution(std::string_view text, const Instance& inst);
std::string emit_solution(const Solution& sol, const Instance& inst);

struct Verdict {
  bool ok = false;
  int max_open = 0;
  std::optional<std::size_t> failed_step;  // 1-based removal / decision index
  std::string message;
};

struct Processing {
  BinOrder order;
  Verdict verdict;
};

Verdict verify_bin_solution(const Instance& inst, const BinOrder& sol, int p);
Processing pallet_order_to_processing(const Instance& inst, const PalletOrder& sol, int p);
Processing sequence_order_to_processing(const Instance& inst, const SequenceOrder& sol, int p);
Processing pallet_order_to_processing(const Instance& inst, const FirstLastTable& tbl,
                                      const PalletOrder& sol, int p);
Processing sequence_order_to_processing(const Instance& inst, const FirstLastTable& tbl,
                                        const SequenceOrder& sol, int p);
Verdict verify_sequence_solution(const Instance& inst, const SequenceOrder& sol, int p);
Verdict verify_solution(const Instance& inst, const Solution& sol, int p);

// ---------------------------------------------------------------------------

/// Incremental processing state: configuration, open pallets and the
/// removed-bin trail. Open counts follow the transformation-step recurrence.
class Processor {
 public:
  Processor(const Instance& inst, const FirstLastTable& tbl);

  /// Resets to `cfg`; `open` must equal open_set(cfg).
  void reset(ConfigView cfg, std::span<const PalletId> open);
  void reset(ConfigView cfg);

  ConfigView config() const noexcept { return cfg_; }
  int open_count() const noexcept { return static_cast<int>(open_list_.size()); }
  int max_open() const noexcept { return max_open_; }
  bool is_open(PalletId t) const { return open_mark_[t] != 0; }
  std::vector<PalletId> open_pallets() const;

  bool exhausted(std::size_t j) const { return cfg_[j] >= inst_->length(j); }
  PalletId front_pallet(std::size_t j) const { return inst_->pallet_at(j, cfg_[j]); }
  bool is_final() const;
  /// Every non-exhausted front bin is destined for a non-open pallet.
  bool is_decision() const;

  /// Removes the front bin of sequence j and returns the open-count delta.
  int remove(std::size_t j);
  /// Removes front bins of open pallets until none is left; returns the number removed.
  std::size_t close_automatically();

  const std::vector<std::size_t>& removed() const noexcept { return removed_; }
  void clear_trail() { removed_.clear(); }
  void record_trail(bool on) { record_ = on; }

 private:
  const Instance* inst_;
  const FirstLastTable* tbl_;
  Configuration cfg_;
  std::vector<std::uint8_t> open_mark_;
  std::vector<PalletId> open_list_;
  int max_open_ = 0;
  bool record_ = true;
  std::vector<std::size_t> removed_;
};

}  // namespace stackup
