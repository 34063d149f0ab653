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

// Monte Carlo studies over coupled level schedules.
//
// Every sample draws one noise path at the finest resolution; each level reads
// it through block sums and a mode prefix. Per-sample results are stored by
// index and reduced with a fixed pairwise tree, so reports are bit-identical
// for any worker count.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tamed/model.hpp"
#include "tamed/stepper.hpp"

namespace tamed {

enum class ScheduleRule { paper_m2, exact_c4 };

std::string_view to_string(ScheduleRule rule);
ScheduleRule parse_schedule_rule(std::string_view s);

struct Level {
  int m = 1;
  std::size_t n = 1;
  std::size_t k = 1;
  std::size_t n_target = 1;  // before divisor adjustment
  double c_exact = 0.0;
  double c_paper = 0.0;
  double c_m = 0.0;          // the form selected by the rule

  double c_m_tau(double T) const { return c_m * T / static_cast<double>(n); }
  LevelConfig config(double T) const { return {m, n, k, T, c_m}; }
};

struct Schedule {
  std::vector<Level> levels;
  double delta = 0.5;
  ScheduleRule rule = ScheduleRule::paper_m2;
  std::size_t n_max = 1;
  double T = 1.0;
  std::vector<std::string> notes;  // divisor adjustments

  std::size_t k_max() const;
};

/// floor(m^{2 + delta}).
std::size_t paper_target(int m, double delta);
/// floor(c_exact(m)^{1 + delta / 2}).
std::size_t exact_target(double c_exact, double delta);
/// Smallest divisor of n_max that is >= target, if any.
std::optional<std::size_t> divisor_at_or_above(std::size_t n_max, std::size_t target);

Schedule make_schedule(const ModelSpec& model, const std::vector<int>& m_list, double delta,
                       ScheduleRule rule, std::size_t n_max, double T = 1.0);
/// Fixed cutoff with varying step counts, as used by the time-step gap study.
Schedule fixed_cutoff_schedule(const ModelSpec& model, int m, const std::vector<std::size_t>& n_list,
                               double T = 1.0);

struct Estimate {
  double mean = 0.0;
  double se = 0.0;  // standard error of the mean
  std::size_t samples = 0;
};

/// Pairwise sum with a tree fixed by index.
double pairwise_sum(std::span<const double> x);
Estimate estimate(std::span<const double> x);

/// Runs fn(i) for i < count on up to `workers` threads. The exception of the
/// lowest failing index is rethrown.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

struct StudyOptions {
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  int workers = 1;
  double u0_scale = 1.0;
  double guard_epsilon = 1.0;
  bool override_guard = false;
};

struct MomentLevel {
  Level level;
  std::vector<Estimate> sup;  // E sup_i |u(t_i)|^{2q}, one per q
  std::vector<Estimate> v1;   // E (sum_i ||u(t_i)||_{V1}^2 dt)^q
  std::size_t divergences = 0;
};

struct MomentReport {
  std::vector<int> q;
  std::vector<MomentLevel> levels;
  double T = 1.0;

  /// max / min of E sup|u|^2 over levels.
  double uniformity_ratio() const;
  /// E X^2 >= (E X)^2 - se for the sup and V1 statistics at q = 1, 2.
  bool jensen_holds() const;
  std::size_t divergences() const;
  bool passed() const;
};

MomentReport run_moments(const ModelSpec& model, const Schedule& schedule,
                         const StudyOptions& opt, const std::vector<int>& q = {1, 2});

struct ConvergenceLevel {
  Level level;
  Estimate error;  // E |u_l(T) - u_ref(T)|^2
};

struct ConvergenceReport {
  std::vector<ConvergenceLevel> levels;
  LevelConfig reference;
  Scheme reference_scheme = Scheme::tamed;
  double T = 1.0;
  /// Paired differences e_l - e_{l+1}, one per consecutive pair.
  std::vector<Estimate> decrease;
  /// E |u_ref,tamed(T) - u_ref,implicit(T)|^2 when the cross-check was run.
  std::optional<Estimate> cross_check;

  /// Every consecutive decrease exceeds its own standard error.
  bool monotone() const;
  bool passed() const { return monotone(); }
};

struct ConvergenceOptions {
  int m_ref = 16;
  std::size_t n_ref = std::size_t{1} << 14;
  Scheme reference_scheme = Scheme::tamed;
  bool cross_check = false;
};

ConvergenceReport run_convergence(const ModelSpec& model, const Schedule& schedule,
                                  const StudyOptions& opt, const ConvergenceOptions& conv);

struct DivergenceReport {
  double u0 = 5.0;
  double dt = 0.1;
  std::size_t steps = 20;
  std::size_t samples = 0;
  double untamed_fraction = 0.0;
  std::size_t untamed_last_step = 0;  // latest divergence step among diverged samples
  std::size_t tamed_divergences = 0;
  double tamed_max_abs = 0.0;         // max over samples and steps of |u(t_i)|
  double tamed_bound = 0.0;           // |u0| + sqrt(T dt) steps
  std::size_t untamed_within_20 = 0;  // samples exceeding the threshold within 20 steps

  bool passed() const {
    return tamed_divergences == 0 && tamed_max_abs <= tamed_bound;
  }
};

DivergenceReport run_divergence_contrast(const ModelSpec& model, double u0_scale, double dt,
                                         std::size_t steps, const StudyOptions& opt);

struct GapLevel {
  Level level;
  double tau = 0.0;
  Estimate gap;
};

struct GapReport {
  std::vector<GapLevel> levels;
  double T = 1.0;
  double slope = 0.0;  // least squares slope of log mean gap against log tau
  bool noisy = true;

  bool passed() const { return !noisy || (slope >= 0.7 && slope <= 1.3); }
};

GapReport run_gap_study(const ModelSpec& model, const Schedule& schedule, const StudyOptions& opt);

/// Least squares slope of y against x.
double regression_slope(std::span<const double> x, std::span<const double> y);

}  // namespace tamed
