#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stackup/instance.hpp"

namespace stackup {

/// splitmix64; identical seeds give identical streams on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Value in [lo, hi] by modulo reduction (bias is negligible at these ranges).
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) { return lo + next() % (hi - lo + 1); }

 private:
  std::uint64_t state_;
};

struct GenParams {
  int p_max = 2;
  int k = 2;
  int m = 4;
  int r_min = 2;
  int r_max = 3;
  int d = 2;
  std::uint64_t seed = 0;
};

struct ParamCheck {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const noexcept { return errors.empty(); }
};

ParamCheck validate_params(const GenParams& params);

/// Instance plus the processing the generator built it from.
struct Generated {
  Instance instance;
  BinOrder order;                      // removal order; uses at most p_max places
  std::vector<int> open_after_step;    // open pallets after each generated bin
  std::vector<int> bins_per_pallet;    // indexed by generator pallet number - 1
};

/// Builds a random bin order using at most p_max places, then deals each bin to
/// one of its pallet's candidate sequences. Pallet tokens are "1".."m".
/// Throws PreconditionError when validate_params reports errors.
Generated generate_traced(const GenParams& params);
Instance generate(const GenParams& params);

/// Instance file text with a comment header recording all parameters.
std::string emit_generated(const GenParams& params, const Instance& inst);

}  // namespace stackup
