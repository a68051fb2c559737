#include "stackup/gen.hpp"

#include <algorithm>

#include "stackup/error.hpp"

namespace stackup {

ParamCheck validate_params(const GenParams& p) {
  ParamCheck check;
  if (p.p_max < 1) check.errors.push_back("p_max must be at least 1");
  if (p.k < 1) check.errors.push_back("k must be at least 1");
  if (p.m < 2 || p.m % 2 != 0) check.errors.push_back("m must be even and at least 2");
  if (p.r_min < 1) check.errors.push_back("r_min must be at least 1");
  if (p.r_min > p.r_max) check.errors.push_back("r_min must not exceed r_max");
  if (p.d < 1 || p.d > p.k) check.errors.push_back("d must lie in [1, k]");
  if (p.r_min == 1) check.warnings.push_back("r_min = 1 allows pallets with a single bin");
  if (p.m >= 2 && p.p_max >= p.m) {
    check.warnings.push_back("p_max >= m: every pallet could get its own place");
  }
  if (p.k >= 1 && p.m >= 2 && p.k >= p.m) {
    check.warnings.push_back("k >= m: every pallet could get its own sequence");
  }
  return check;
}

Generated generate_traced(const GenParams& params) {
  const auto check = validate_params(params);
  if (!check.ok()) throw PreconditionError("invalid generator parameters: " + check.errors.front());

  SplitMix64 rng(params.seed);
  const auto m = static_cast<std::size_t>(params.m);
  const auto k = static_cast<std::size_t>(params.k);
  const auto d = static_cast<std::size_t>(params.d);

  // Paired counts avg+r / avg-r keep the total at m*avg. r is drawn from half
  // the spread so both stay inside [r_min, r_max].
  const int avg = (params.r_min + params.r_max) / 2;
  const int half = (params.r_max - params.r_min) / 2;
  std::vector<int> remaining(m);
  for (std::size_t i = 0; i < m; i += 2) {
    const auto r = static_cast<int>(rng.uniform(0, static_cast<std::uint64_t>(half)));
    remaining[i] = avg + r;
    remaining[i + 1] = avg - r;
  }

  std::vector<std::size_t> candidates(m * d);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < d; ++j) candidates[i * d + j] = rng.uniform(1, k) - 1;
  }

  Generated out;
  out.bins_per_pallet = remaining;
  std::size_t n = 0;
  for (int c : remaining) n += static_cast<std::size_t>(c);

  std::vector<std::vector<std::string>> sequences(k);
  std::vector<std::pair<std::size_t, std::size_t>> placed;  // (sequence, position) per step
  placed.reserve(n);
  std::vector<bool> unprocessed(m, true);
  std::vector<std::size_t> open;  // ascending
  std::vector<std::size_t> pool;
  out.open_after_step.reserve(n);

  for (std::size_t i = 0; i < n; ++i) {
    pool.clear();
    if (open.size() == static_cast<std::size_t>(params.p_max)) {
      pool = open;
    } else {
      for (std::size_t t = 0; t < m; ++t) {
        if (unprocessed[t] || std::binary_search(open.begin(), open.end(), t)) pool.push_back(t);
      }
    }
    const std::size_t plt = pool[rng.uniform(0, pool.size() - 1)];
    if (unprocessed[plt]) {
      unprocessed[plt] = false;
      open.insert(std::lower_bound(open.begin(), open.end(), plt), plt);
    }
    const std::size_t s = candidates[plt * d + rng.uniform(1, d) - 1];
    placed.emplace_back(s, sequences[s].size());
    sequences[s].push_back(std::to_string(plt + 1));
    if (--remaining[plt] == 0) open.erase(std::lower_bound(open.begin(), open.end(), plt));
    out.open_after_step.push_back(static_cast<int>(open.size()));
  }

  out.instance = Instance::from_tokens(sequences);
  out.order.bins.reserve(n);
  for (auto [s, pos] : placed) out.order.bins.push_back(out.instance.bin_index(s, pos));
  return out;
}

Instance generate(const GenParams& params) { return generate_traced(params).instance; }

std::string emit_generated(const GenParams& params, const Instance& inst) {
  const std::string header = "generated pmax=" + std::to_string(params.p_max) +
                             " k=" + std::to_string(params.k) + " m=" + std::to_string(params.m) +
                             " rmin=" + std::to_string(params.r_min) +
                             " rmax=" + std::to_string(params.r_max) +
                             " d=" + std::to_string(params.d) + " seed=" + std::to_string(params.seed);
  return emit_instance(inst, {header, "n=" + std::to_string(inst.n())});
}

}  // namespace stackup
