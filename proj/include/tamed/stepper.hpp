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

// Time integrators on V_m.
//
//   tamed      u+ = u + dt (A1 u + T_l(u) A2 u) + Pi_m B(u) dW
//   untamed    the same recursion with T_l = 1
//   reference  (I - dt L) u+ = u + dt (A2 u + (A1 - L) u) + Pi_m B(u) dW
//
// where L is the diagonal stiff part returned by linear_multiplier().

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tamed/model.hpp"
#include "tamed/noise.hpp"
#include "tamed/spectral.hpp"

namespace tamed {

enum class Scheme { tamed, untamed, reference };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view s);

struct LevelConfig {
  int m = 1;            // Galerkin cutoff
  std::size_t n = 1;    // time steps
  std::size_t k = 1;    // noise modes
  double T = 1.0;       // horizon
  double c_m = 0.0;     // c(m) used by the stability guard; 0 selects paper_form

  double dt() const noexcept { return T / static_cast<double>(n); }
};

void validate(const LevelConfig& cfg);

struct IntegrateOptions {
  Scheme scheme = Scheme::tamed;
  double guard_epsilon = 1.0;
  bool override_guard = false;
  double divergence_threshold = 1e10;
  bool snapshots = false;
};

struct TrajectoryRecord {
  SpectralField endpoint;
  double max_h_sq = 0.0;       // max_i |u(t_i)|^2, t_0 and t_n included
  double v1_integral = 0.0;    // sum_i ||u(t_i)||_{V1}^2 dt
  double v2_integral = 0.0;    // sum_i ||u(t_i)||_{V2}^p dt
  std::size_t steps = 0;       // steps actually taken
  bool diverged = false;
  std::optional<std::size_t> divergence_step;
  std::vector<double> times;                 // filled when snapshots are requested
  std::vector<std::vector<double>> states;
};

/// One step. dW holds the k increments of interval `step`; the index is only
/// used in error messages.
SpectralField step_tamed(const ModelSpec& model, const SpectralField& u, const LevelConfig& cfg,
                         std::span<const double> dW, std::size_t step = 0);
/// Never throws on overflow: non-finite output is the caller's divergence signal.
SpectralField step_untamed(const ModelSpec& model, const SpectralField& u,
                           const LevelConfig& cfg, std::span<const double> dW);
SpectralField step_reference(const ModelSpec& model, const SpectralField& u,
                             const LevelConfig& cfg, std::span<const double> dW,
                             std::size_t step = 0);

/// c(m) dt > epsilon for the explicit schemes raises StabilityGuardError unless overridden.
void check_stability_guard(const ModelSpec& model, const LevelConfig& cfg,
                           const IntegrateOptions& opt);

/// Runs n steps driven by the path coarsened to n intervals and truncated to k modes.
TrajectoryRecord integrate(const ModelSpec& model, const LevelConfig& cfg, const NoisePath& path,
                           const SpectralField& u0, const IntegrateOptions& opt = {});
TrajectoryRecord integrate(const ModelSpec& model, const LevelConfig& cfg,
                           const IncrementTable& increments, const SpectralField& u0,
                           const IntegrateOptions& opt = {});

/// int_0^T |u(s) - ubar(s)|^2 ds for the tamed scheme along one path. The drift
/// part is integrated exactly; the noise part uses the trapezoid rule on four
/// sub-intervals, read from the path at 4n intervals (4n must divide n_max).
double timestep_gap(const ModelSpec& model, const LevelConfig& cfg, const NoisePath& path,
                    const SpectralField& u0, const IntegrateOptions& opt = {});

/// CSV with columns t, c1, c2, ... for a record with snapshots.
void write_snapshots(const TrajectoryRecord& record, std::ostream& out);

}  // namespace tamed
