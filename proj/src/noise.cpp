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

#include "tamed/noise.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "tamed/error.hpp"
#include "tamed/philox.hpp"

namespace tamed {

IncrementTable::IncrementTable(std::size_t modes, std::size_t steps, double horizon)
    : modes_(modes), steps_(steps), horizon_(horizon), data_(modes * steps, 0.0) {}

void IncrementTable::column(std::size_t i, std::span<double> out) const {
  for (std::size_t j = 0; j < modes_; ++j) out[j] = data_[j * steps_ + i];
}

IncrementView::IncrementView(const IncrementTable& table, std::size_t k)
    : table_(&table), modes_(k) {
  if (k > table.modes())
    throw ConfigError("truncate_modes: k = " + std::to_string(k) + " exceeds k_max = " +
                      std::to_string(table.modes()));
}

void IncrementView::column(std::size_t i, std::span<double> out) const {
  for (std::size_t j = 0; j < modes_; ++j) out[j] = table_->at(j, i);
}

double block_sum(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) return 0.0;
  if (n == 1) return x[0];
  if ((n & (n - 1)) == 0) return block_sum(x.first(n / 2)) + block_sum(x.subspan(n / 2));
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

namespace {

Philox4x32::Counter block_for(std::uint64_t sample, std::uint32_t mode, std::uint64_t pair) {
  // (pair index, mode, sample lo, sample hi); the pair index fits 32 bits for any
  // table that fits in memory.
  return {static_cast<std::uint32_t>(pair), mode, static_cast<std::uint32_t>(sample),
          static_cast<std::uint32_t>(sample >> 32)};
}

}  // namespace

double standard_normal(std::uint64_t seed, std::uint64_t sample, std::uint32_t mode,
                       std::uint64_t interval) {
  const auto block =
      Philox4x32::generate(block_for(sample, mode, interval >> 1), Philox4x32::key_from_seed(seed));
  const auto [a, b] = normal_pair(block);
  return (interval & 1u) ? b : a;
}

NoisePath sample_path(std::uint64_t seed, std::uint64_t sample, std::size_t n_max,
                      std::size_t k_max, double horizon) {
  if (n_max < 1 || k_max < 1) throw ConfigError("sample_path: n_max and k_max must be >= 1");
  if (!(horizon > 0.0)) throw ConfigError("sample_path: T must be > 0");
  NoisePath path;
  path.seed = seed;
  path.sample = sample;
  path.increments = IncrementTable(k_max, n_max, horizon);
  const double scale = std::sqrt(horizon / static_cast<double>(n_max));
  const auto key = Philox4x32::key_from_seed(seed);
  for (std::size_t j = 0; j < k_max; ++j) {
    auto row = path.increments.row(j);
    for (std::size_t pair = 0; 2 * pair < n_max; ++pair) {
      const auto [a, b] =
          normal_pair(Philox4x32::generate(block_for(sample, static_cast<std::uint32_t>(j), pair), key));
      row[2 * pair] = scale * a;
      if (2 * pair + 1 < n_max) row[2 * pair + 1] = scale * b;
    }
  }
  return path;
}

IncrementTable coarsen(const IncrementTable& table, std::size_t n) {
  if (n == 0 || table.steps() % n != 0)
    throw ConfigError("coarsen: n = " + std::to_string(n) + " does not divide n_max = " +
                      std::to_string(table.steps()));
  if (n == table.steps()) return table;
  const std::size_t r = table.steps() / n;
  IncrementTable out(table.modes(), n, table.horizon());
  for (std::size_t j = 0; j < table.modes(); ++j) {
    auto src = table.row(j);
    auto dst = out.row(j);
    for (std::size_t i = 0; i < n; ++i) dst[i] = block_sum(src.subspan(i * r, r));
  }
  return out;
}

IncrementTable coarsen(const NoisePath& path, std::size_t n) {
  return coarsen(path.increments, n);
}

IncrementView truncate_modes(const IncrementTable& table, std::size_t k) {
  return IncrementView(table, k);
}

namespace {

template <class T>
void put(std::ostream& out, T value) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  std::memcpy(&bits, &value, 8);
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

template <class T>
T get(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw Error("noise path: truncated input");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  T value;
  std::memcpy(&value, &bits, 8);
  return value;
}

}  // namespace

void dump(const NoisePath& path, std::ostream& out) {
  put<std::uint64_t>(out, path.seed);
  put<std::uint64_t>(out, path.sample);
  put<std::uint64_t>(out, path.n_max());
  put<std::uint64_t>(out, path.k_max());
  put<double>(out, path.horizon());
  for (double x : path.increments.data()) put<double>(out, x);
  if (!out) throw Error("noise path: write failed");
}

NoisePath load(std::istream& in) {
  NoisePath path;
  path.seed = get<std::uint64_t>(in);
  path.sample = get<std::uint64_t>(in);
  const auto n = get<std::uint64_t>(in);
  const auto k = get<std::uint64_t>(in);
  const double T = get<double>(in);
  if (n == 0 || k == 0 || n > (1ull << 40) / k) throw Error("noise path: bad header");
  path.increments = IncrementTable(k, n, T);
  for (std::size_t j = 0; j < k; ++j)
    for (double& x : path.increments.row(j)) x = get<double>(in);
  return path;
}

void dump(const NoisePath& path, const std::string& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot open " + file + " for writing");
  dump(path, out);
}

NoisePath load(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open " + file);
  return load(in);
}

}  // namespace tamed
