#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace stackup::detail {

/// Open-addressing set of fixed-width configurations stored back to back.
/// Entries are numbered in insertion order.
class ConfigTable {
 public:
  static constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();

  explicit ConfigTable(std::size_t width) : width_(width) { rehash(16); }

  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  std::size_t width() const noexcept { return width_; }

  std::span<const std::uint32_t> at(std::uint32_t idx) const {
    return {data_.data() + std::size_t{idx} * width_, width_};
  }

  /// Returns (index, inserted).
  std::pair<std::uint32_t, bool> insert(std::span<const std::uint32_t> cfg) {
    if ((count_ + 1) * 4 > slots_.size() * 3) rehash(slots_.size() * 2);
    const std::uint64_t h = hash(cfg);
    std::size_t slot = h & mask_;
    while (true) {
      const std::uint32_t idx = slots_[slot];
      if (idx == kEmpty) break;
      if (std::equal(cfg.begin(), cfg.end(), data_.begin() + std::ptrdiff_t(std::size_t{idx} * width_))) {
        return {idx, false};
      }
      slot = (slot + 1) & mask_;
    }
    const auto idx = static_cast<std::uint32_t>(count_++);
    slots_[slot] = idx;
    data_.insert(data_.end(), cfg.begin(), cfg.end());
    return {idx, true};
  }

  void clear() {
    count_ = 0;
    data_.clear();
    rehash(16);
  }

  std::size_t memory_bytes() const {
    return data_.capacity() * sizeof(std::uint32_t) + slots_.capacity() * sizeof(std::uint32_t);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t hash(std::span<const std::uint32_t> cfg) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    for (std::uint32_t v : cfg) h = mix(h ^ v) + 0x9E3779B97F4A7C15ull;
    return mix(h);
  }

  void rehash(std::size_t capacity) {
    slots_.assign(capacity, kEmpty);
    mask_ = capacity - 1;
    for (std::size_t idx = 0; idx < count_; ++idx) {
      std::size_t slot = hash(at(static_cast<std::uint32_t>(idx))) & mask_;
      while (slots_[slot] != kEmpty) slot = (slot + 1) & mask_;
      slots_[slot] = static_cast<std::uint32_t>(idx);
    }
  }

  std::size_t width_;
  std::size_t count_ = 0;
  std::size_t mask_ = 0;
  std::vector<std::uint32_t> data_;
  std::vector<std::uint32_t> slots_;
};

}  // namespace stackup::detail
