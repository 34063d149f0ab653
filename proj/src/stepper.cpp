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

#include "tamed/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "tamed/operators.hpp"
#include "tamed/taming.hpp"

namespace tamed {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::tamed: return "tamed";
    case Scheme::untamed: return "untamed";
    case Scheme::reference: return "reference";
  }
  return "?";
}

Scheme parse_scheme(std::string_view s) {
  if (s == "tamed") return Scheme::tamed;
  if (s == "untamed") return Scheme::untamed;
  if (s == "reference") return Scheme::reference;
  throw ConfigError("unknown scheme '" + std::string(s) + "' (expected tamed, untamed, reference)");
}

void validate(const LevelConfig& cfg) {
  if (cfg.m < 1) throw ConfigError("level: m must be >= 1");
  if (cfg.n < 1) throw ConfigError("level: n must be >= 1");
  if (cfg.k < 1) throw ConfigError("level: k must be >= 1");
  if (!(cfg.T > 0.0) || !std::isfinite(cfg.T)) throw ConfigError("level: T must be > 0");
}

namespace {

bool finite(const SpectralField& u) {
  for (double c : u.coeffs())
    if (!std::isfinite(c)) return false;
  return true;
}

void require_shape(const SpectralField& u, const LevelConfig& cfg, std::span<const double> dW) {
  if (u.basis().cutoff() != cfg.m)
    throw ConfigError("state lives in V_" + std::to_string(u.basis().cutoff()) +
                      " but the level has m = " + std::to_string(cfg.m));
  if (dW.size() != cfg.k)
    throw ConfigError("expected " + std::to_string(cfg.k) + " increments, got " +
                      std::to_string(dW.size()));
}

SpectralField explicit_step(const ModelSpec& model, const SpectralField& u,
                            const LevelConfig& cfg, std::span<const double> dW, bool tame) {
  require_shape(u, cfg, dW);
  const double dt = cfg.dt();
  DualField a1 = apply_A1(model, u);
  DualField a2 = apply_A2(model, u);
  double t = 1.0;
  if (tame) {
    const double x = projected_norm(a2, cfg.m);
    t = 1.0 / (1.0 + x / std::sqrt(static_cast<double>(cfg.n)));
  }
  SpectralField out = apply_noise(model, u, dW);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += u[i] + dt * (a1[i] + t * a2[i]);
  return out;
}

}  // namespace

SpectralField step_tamed(const ModelSpec& model, const SpectralField& u, const LevelConfig& cfg,
                         std::span<const double> dW, std::size_t step) {
  if (!finite(u)) throw IntegrationError("tamed scheme: non-finite input state", step);
  SpectralField out = explicit_step(model, u, cfg, dW, true);
  if (!finite(out)) throw IntegrationError("tamed scheme: non-finite state", step + 1);
  return out;
}

SpectralField step_untamed(const ModelSpec& model, const SpectralField& u,
                           const LevelConfig& cfg, std::span<const double> dW) {
  return explicit_step(model, u, cfg, dW, false);
}

SpectralField step_reference(const ModelSpec& model, const SpectralField& u,
                             const LevelConfig& cfg, std::span<const double> dW,
                             std::size_t step) {
  require_shape(u, cfg, dW);
  const double dt = cfg.dt();
  const std::vector<double> lam = linear_multiplier(model, u.basis());
  DualField a1 = apply_A1(model, u);
  DualField a2 = apply_A2(model, u);
  SpectralField out = apply_noise(model, u, dW);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double denom = 1.0 - dt * lam[i];
    if (!(denom > 0.0))
      throw ConfigError("reference scheme: 1 - dt * lambda <= 0 for coefficient " +
                        std::to_string(i));
    out[i] = (out[i] + u[i] + dt * (a2[i] + a1[i] - lam[i] * u[i])) / denom;
  }
  if (!finite(out)) throw IntegrationError("reference scheme: non-finite state", step + 1);
  return out;
}

void check_stability_guard(const ModelSpec& model, const LevelConfig& cfg,
                           const IntegrateOptions& opt) {
  if (opt.scheme == Scheme::reference || opt.override_guard) return;
  const double c = cfg.c_m > 0.0 ? cfg.c_m : galerkin_constant(model, cfg.m).paper_form;
  const double ct = c * cfg.dt();
  if (ct > opt.guard_epsilon) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "stability guard: c(m) * dt = %.6g exceeds epsilon = %.6g (m = %d, n = %zu); "
                  "refine n or pass the override flag",
                  ct, opt.guard_epsilon, cfg.m, cfg.n);
    throw StabilityGuardError(buf);
  }
}

namespace {

struct Accumulator {
  const ModelSpec& model;
  std::vector<BlockNorm> spec;
  double dt;
  TrajectoryRecord& rec;

  void at_grid_point(const SpectralField& u) {
    const double h = u.l2_norm();
    rec.max_h_sq = std::max(rec.max_h_sq, h * h);
  }
  void left_endpoint(const SpectralField& u) {
    const double v1 = norm(u, Space::V1, spec);
    rec.v1_integral += v1 * v1 * dt;
    rec.v2_integral += std::pow(norm(u, Space::V2, spec), model.p) * dt;
  }
};

}  // namespace

TrajectoryRecord integrate(const ModelSpec& model, const LevelConfig& cfg,
                           const IncrementTable& increments, const SpectralField& u0,
                           const IntegrateOptions& opt) {
  validate(cfg);
  if (u0.basis().cutoff() != cfg.m)
    throw ConfigError("initial state is not in V_" + std::to_string(cfg.m));
  if (cfg.k > u0.basis().size())
    throw ConfigError("noise truncation k = " + std::to_string(cfg.k) + " exceeds dim V_m = " +
                      std::to_string(u0.basis().size()));
  if (increments.steps() % cfg.n != 0)
    throw ConfigError("path with " + std::to_string(increments.steps()) +
                      " intervals cannot be coarsened to n = " + std::to_string(cfg.n));
  if (increments.modes() < cfg.k)
    throw ConfigError("path has " + std::to_string(increments.modes()) + " modes, level needs k = " +
                      std::to_string(cfg.k));
  if (std::abs(increments.horizon() - cfg.T) > 1e-12 * cfg.T)
    throw ConfigError("path horizon does not match the level's T");
  check_stability_guard(model, cfg, opt);

  const IncrementTable coarse = coarsen(increments, cfg.n);
  const IncrementView dW(coarse, cfg.k);
  std::vector<double> column(cfg.k);

  TrajectoryRecord rec;
  Accumulator acc{model, model.norms(), cfg.dt(), rec};
  SpectralField u = u0;
  acc.at_grid_point(u);
  auto snapshot = [&](std::size_t i) {
    if (!opt.snapshots) return;
    rec.times.push_back(static_cast<double>(i) * cfg.dt());
    rec.states.emplace_back(u.coeffs().begin(), u.coeffs().end());
  };
  snapshot(0);

  for (std::size_t i = 0; i < cfg.n; ++i) {
    acc.left_endpoint(u);
    dW.column(i, column);
    switch (opt.scheme) {
      case Scheme::tamed: u = step_tamed(model, u, cfg, column, i); break;
      case Scheme::untamed: u = step_untamed(model, u, cfg, column); break;
      case Scheme::reference: u = step_reference(model, u, cfg, column, i); break;
    }
    rec.steps = i + 1;
    const double h = u.l2_norm();
    if (!std::isfinite(h) || h > opt.divergence_threshold) {
      rec.diverged = true;
      rec.divergence_step = i + 1;
      rec.max_h_sq = std::isfinite(h) ? std::max(rec.max_h_sq, h * h) : HUGE_VAL;
      snapshot(i + 1);
      break;
    }
    acc.at_grid_point(u);
    snapshot(i + 1);
  }
  rec.endpoint = std::move(u);
  return rec;
}

TrajectoryRecord integrate(const ModelSpec& model, const LevelConfig& cfg, const NoisePath& path,
                           const SpectralField& u0, const IntegrateOptions& opt) {
  return integrate(model, cfg, path.increments, u0, opt);
}

double timestep_gap(const ModelSpec& model, const LevelConfig& cfg, const NoisePath& path,
                    const SpectralField& u0, const IntegrateOptions& opt) {
  validate(cfg);
  constexpr std::size_t sub = 4;
  if (path.n_max() % (sub * cfg.n) != 0)
    throw ConfigError("timestep_gap needs a path with a multiple of 4n = " +
                      std::to_string(sub * cfg.n) + " intervals");
  if (path.k_max() < cfg.k) throw ConfigError("path has fewer modes than the level needs");
  if (u0.basis().cutoff() != cfg.m) throw ConfigError("initial state is not in V_m");
  if (opt.scheme == Scheme::reference)
    throw ConfigError("timestep_gap is defined for the explicit schemes only");
  check_stability_guard(model, cfg, opt);

  const IncrementTable fine = coarsen(path.increments, sub * cfg.n);
  const IncrementTable coarse = coarsen(fine, cfg.n);
  const double dt = cfg.dt();
  const double h = dt / sub;
  const bool tame = opt.scheme == Scheme::tamed;

  std::vector<double> column(cfg.k), partial(cfg.k);
  SpectralField u = u0;
  double gap = 0.0;
  for (std::size_t i = 0; i < cfg.n; ++i) {
    DualField a1 = apply_A1(model, u);
    DualField a2 = apply_A2(model, u);
    const double t =
        tame ? 1.0 / (1.0 + projected_norm(a2, cfg.m) / std::sqrt(static_cast<double>(cfg.n)))
             : 1.0;
    std::vector<double> drift(u.size());
    for (std::size_t c = 0; c < drift.size(); ++c) drift[c] = a1[c] + t * a2[c];
    const double d2 = dot(drift, drift);
    double interval = dt * dt * dt * d2 / 3.0;

    std::fill(partial.begin(), partial.end(), 0.0);
    double noise_sq = 0.0, cross = 0.0;
    for (std::size_t q = 1; q <= sub; ++q) {
      for (std::size_t j = 0; j < cfg.k; ++j) partial[j] += fine.at(j, i * sub + q - 1);
      const SpectralField g = apply_noise(model, u, partial);
      const double w = q == sub ? 0.5 : 1.0;
      const double s = static_cast<double>(q) * h;
      noise_sq += w * dot(g.coeffs(), g.coeffs());
      cross += w * s * dot(drift, g.coeffs());
    }
    interval += h * noise_sq + 2.0 * h * cross;
    gap += interval;

    for (std::size_t j = 0; j < cfg.k; ++j) column[j] = coarse.at(j, i);
    u = tame ? step_tamed(model, u, cfg, column, i) : step_untamed(model, u, cfg, column);
    if (!finite(u)) throw IntegrationError("timestep_gap: non-finite state", i + 1);
  }
  return gap;
}

void write_snapshots(const TrajectoryRecord& record, std::ostream& out) {
  if (record.states.empty()) return;
  out << "t";
  for (std::size_t c = 0; c < record.states.front().size(); ++c) out << ",c" << c + 1;
  out << '\n';
  char buf[32];
  for (std::size_t r = 0; r < record.states.size(); ++r) {
    std::snprintf(buf, sizeof buf, "%.17g", record.times[r]);
    out << buf;
    for (double c : record.states[r]) {
      std::snprintf(buf, sizeof buf, "%.17g", c);
      out << ',' << buf;
    }
    out << '\n';
  }
}

}  // namespace tamed
