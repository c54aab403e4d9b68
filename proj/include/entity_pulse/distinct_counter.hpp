// Copyright 2026 The Entity Pulse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

namespace entity_pulse {

/// SplitMix64 output function; a cheap bijective mixer for integer keys.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Approximate distinct counter over 32-bit keys.
///
/// Keeps an exact sorted set until it holds kExactLimit keys, then switches
/// to a HyperLogLog with 2^14 registers (standard error about 0.8%).
class DistinctCounter {
 public:
  static constexpr std::size_t kExactLimit = 4096;
  static constexpr int kPrecision = 14;
  static constexpr std::size_t kRegisters = std::size_t{1} << kPrecision;

  void add(std::uint32_t key) {
    if (registers_.empty()) {
      auto it = std::lower_bound(exact_.begin(), exact_.end(), key);
      if (it != exact_.end() && *it == key) return;
      exact_.insert(it, key);
      if (exact_.size() > kExactLimit) promote();
      return;
    }
    insert_hashed(mix64(key + 0x9E3779B97F4A7C15ULL));
  }

  std::uint64_t estimate() const {
    if (registers_.empty()) return exact_.size();
    double sum = 0.0;
    std::size_t zeros = 0;
    for (std::uint8_t r : registers_) {
      sum += std::ldexp(1.0, -static_cast<int>(r));
      if (r == 0) ++zeros;
    }
    constexpr double m = static_cast<double>(kRegisters);
    const double alpha = 0.7213 / (1.0 + 1.079 / m);
    double e = alpha * m * m / sum;
    // Linear counting is more accurate while many registers are empty.
    if (zeros > 0) {
      const double lc = m * std::log(m / static_cast<double>(zeros));
      if (lc <= 11500.0) e = lc;
    }
    return static_cast<std::uint64_t>(std::llround(e));
  }

  bool is_exact() const { return registers_.empty(); }

 private:
  void promote() {
    registers_.assign(kRegisters, 0);
    for (std::uint32_t k : exact_) insert_hashed(mix64(k + 0x9E3779B97F4A7C15ULL));
    exact_.clear();
    exact_.shrink_to_fit();
  }

  void insert_hashed(std::uint64_t h) {
    const std::size_t idx = h >> (64 - kPrecision);
    const std::uint64_t rest = (h << kPrecision) | (std::uint64_t{1} << (kPrecision - 1));
    const auto rank = static_cast<std::uint8_t>(std::countl_zero(rest) + 1);
    registers_[idx] = std::max(registers_[idx], rank);
  }

  std::vector<std::uint32_t> exact_;
  std::vector<std::uint8_t> registers_;
};

}  // namespace entity_pulse
