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

// Truncated cylindrical Wiener increments on a common fine time grid.
//
// Entry (j, i) of a path is a pure function of (seed, sample, j, i), so paths
// are reproducible regardless of generation order or worker count, and every
// discretisation level reads the same Brownian motion through coarsen() (block
// sums) and truncate_modes() (mode prefix).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace tamed {

/// Row-major k x n table of increments: row j holds Delta W_{j+1} on n intervals.
class IncrementTable {
 public:
  IncrementTable() = default;
  IncrementTable(std::size_t modes, std::size_t steps, double horizon);

  std::size_t modes() const noexcept { return modes_; }
  std::size_t steps() const noexcept { return steps_; }
  double horizon() const noexcept { return horizon_; }
  double dt() const noexcept { return horizon_ / static_cast<double>(steps_); }

  std::span<const double> row(std::size_t j) const { return {data_.data() + j * steps_, steps_}; }
  std::span<double> row(std::size_t j) { return {data_.data() + j * steps_, steps_}; }
  double at(std::size_t j, std::size_t i) const { return data_[j * steps_ + i]; }
  double& at(std::size_t j, std::size_t i) { return data_[j * steps_ + i]; }
  std::span<const double> data() const noexcept { return data_; }

  /// Increments of all modes over interval i, written into out (size >= modes()).
  void column(std::size_t i, std::span<double> out) const;

  bool operator==(const IncrementTable&) const = default;

 private:
  std::size_t modes_ = 0;
  std::size_t steps_ = 0;
  double horizon_ = 0.0;
  std::vector<double> data_;
};

/// Non-owning view onto the first k rows of a table.
class IncrementView {
 public:
  IncrementView(const IncrementTable& table, std::size_t k);

  std::size_t modes() const noexcept { return modes_; }
  std::size_t steps() const noexcept { return table_->steps(); }
  double horizon() const noexcept { return table_->horizon(); }
  double dt() const noexcept { return table_->dt(); }
  double at(std::size_t j, std::size_t i) const { return table_->at(j, i); }
  void column(std::size_t i, std::span<double> out) const;

 private:
  const IncrementTable* table_;
  std::size_t modes_;
};

struct NoisePath {
  std::uint64_t seed = 0;
  std::uint64_t sample = 0;
  IncrementTable increments;  // at the finest resolution n_max

  std::size_t n_max() const noexcept { return increments.steps(); }
  std::size_t k_max() const noexcept { return increments.modes(); }
  double horizon() const noexcept { return increments.horizon(); }
};

/// Single N(0, 1) draw keyed by (seed, sample, mode, interval).
double standard_normal(std::uint64_t seed, std::uint64_t sample, std::uint32_t mode,
                       std::uint64_t interval);

/// Increments i.i.d. N(0, T / n_max).
NoisePath sample_path(std::uint64_t seed, std::uint64_t sample, std::size_t n_max,
                      std::size_t k_max, double horizon);

/// Sum of a block of increments. Power-of-two lengths are summed as a balanced
/// binary tree, so dyadic coarsenings nest bit-exactly:
/// coarsen(coarsen(P, n1), n2) == coarsen(P, n2) whenever the ratios are powers of two.
double block_sum(std::span<const double> x);

/// Block sums down to n intervals; n must divide the table's step count.
IncrementTable coarsen(const IncrementTable& table, std::size_t n);
IncrementTable coarsen(const NoisePath& path, std::size_t n);

/// Modes 1..k of a table.
IncrementView truncate_modes(const IncrementTable& table, std::size_t k);

/// Binary replay format: little-endian u64 seed, sample, n_max, k_max, f64 T,
/// then k_max * n_max f64 increments, row-major by mode.
void dump(const NoisePath& path, std::ostream& out);
NoisePath load(std::istream& in);
void dump(const NoisePath& path, const std::string& file);
NoisePath load(const std::string& file);

}  // namespace tamed
