/*
 * Copyright 2026 The tamed Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A draw is a
// pure function of (key, counter), so any (seed, sample, mode, interval)
// entry of a noise table can be produced independently of every other.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace tamed {

class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter generate(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kW0;
        key[1] += kW1;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

  static constexpr Key key_from_seed(std::uint64_t seed) noexcept {
    return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  }

 private:
  static constexpr std::uint32_t kM0 = 0xD2511F53u;
  static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kW0 = 0x9E3779B9u;
  static constexpr std::uint32_t kW1 = 0xBB67AE85u;
};

/// 53-bit uniform on [0, 1) from two 32-bit words.
inline double to_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi >> 5) << 26) | (lo >> 6);
  return static_cast<double>(bits) * 0x1.0p-53;
}

/// Two independent standard normals from one Philox block (Box-Muller).
inline std::pair<double, double> normal_pair(const Philox4x32::Counter& block) noexcept {
  const double u1 = 1.0 - to_unit(block[0], block[1]);  // (0, 1]
  const double u2 = to_unit(block[2], block[3]);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

/// Sequential stream over a Philox key: counter = (index, stream_lo, stream_hi, tag).
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream, std::uint32_t tag = 0) noexcept
      : key_(Philox4x32::key_from_seed(seed)),
        stream_lo_(static_cast<std::uint32_t>(stream)),
        stream_hi_(static_cast<std::uint32_t>(stream >> 32)),
        tag_(tag) {}

  double uniform() noexcept {
    if (used_ == 2) refill();
    const double u = to_unit(block_[2 * used_], block_[2 * used_ + 1]);
    ++used_;
    return u;
  }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

 private:
  void refill() noexcept {
    block_ = Philox4x32::generate({index_++, stream_lo_, stream_hi_, tag_}, key_);
    used_ = 0;
  }

  Philox4x32::Key key_;
  std::uint32_t stream_lo_, stream_hi_, tag_;
  std::uint32_t index_ = 0;
  Philox4x32::Counter block_{};
  int used_ = 2;
};

}  // namespace tamed
