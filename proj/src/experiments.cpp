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

#include "tamed/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "tamed/noise.hpp"
#include "tamed/operators.hpp"

namespace tamed {

double pairwise_sum(std::span<const double> x) {
  if (x.empty()) return 0.0;
  if (x.size() <= 8) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t h = x.size() / 2;
  return pairwise_sum(x.first(h)) + pairwise_sum(x.subspan(h));
}

Estimate estimate(std::span<const double> x) {
  Estimate e;
  e.samples = x.size();
  if (x.empty()) return e;
  e.mean = pairwise_sum(x) / static_cast<double>(x.size());
  if (x.size() > 1) {
    std::vector<double> dev(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) dev[i] = (x[i] - e.mean) * (x[i] - e.mean);
    const double var = pairwise_sum(dev) / static_cast<double>(x.size() - 1);
    e.se = std::sqrt(var / static_cast<double>(x.size()));
  }
  return e;
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  const std::size_t threads =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, workers)));
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_index = std::numeric_limits<std::size_t>::max();
  std::exception_ptr failure;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  if (threads == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

namespace {

IntegrateOptions explicit_options(const StudyOptions& opt, Scheme scheme = Scheme::tamed) {
  IntegrateOptions io;
  io.scheme = scheme;
  io.guard_epsilon = opt.guard_epsilon;
  io.override_guard = opt.override_guard;
  return io;
}

void require_levels(const Schedule& schedule) {
  if (schedule.levels.empty()) throw ConfigError("study: schedule has no levels");
  for (const Level& l : schedule.levels)
    if (schedule.n_max % l.n != 0)
      throw ConfigError("study: level n = " + std::to_string(l.n) + " does not divide n_max");
}

double squared_distance(const SpectralField& coarse, const SpectralField& fine) {
  const SpectralField e = embed(coarse, fine.basis_ptr());
  double s = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double d = e[i] - fine[i];
    s += d * d;
  }
  return s;
}

}  // namespace

double MomentReport::uniformity_ratio() const {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const MomentLevel& l : levels) {
    if (l.sup.empty()) continue;
    lo = std::min(lo, l.sup[0].mean);
    hi = std::max(hi, l.sup[0].mean);
  }
  if (hi == 0.0) return 1.0;
  return hi / lo;
}

bool MomentReport::jensen_holds() const {
  const auto i1 = std::find(q.begin(), q.end(), 1);
  const auto i2 = std::find(q.begin(), q.end(), 2);
  if (i1 == q.end() || i2 == q.end()) return true;
  const std::size_t a = i1 - q.begin(), b = i2 - q.begin();
  for (const MomentLevel& l : levels) {
    if (l.sup[b].mean < l.sup[a].mean * l.sup[a].mean - l.sup[b].se) return false;
    if (l.v1[b].mean < l.v1[a].mean * l.v1[a].mean - l.v1[b].se) return false;
  }
  return true;
}

std::size_t MomentReport::divergences() const {
  std::size_t d = 0;
  for (const MomentLevel& l : levels) d += l.divergences;
  return d;
}

bool MomentReport::passed() const {
  for (const MomentLevel& l : levels)
    for (std::size_t i = 0; i < q.size(); ++i)
      if (!std::isfinite(l.sup[i].mean) || !std::isfinite(l.v1[i].mean)) return false;
  return divergences() == 0 && jensen_holds();
}

MomentReport run_moments(const ModelSpec& model, const Schedule& schedule,
                         const StudyOptions& opt, const std::vector<int>& q) {
  validate(model);
  require_levels(schedule);
  if (q.empty()) throw ConfigError("moments: q list is empty");
  for (int v : q)
    if (v < 1) throw ConfigError("moments: q values must be >= 1");
  const std::size_t L = schedule.levels.size();
  const std::size_t Q = q.size();
  const std::size_t S = opt.samples;
  if (S < 2) throw ConfigError("moments: at least 2 samples are needed");

  std::vector<SpectralField> u0;
  for (const Level& l : schedule.levels)
    u0.push_back(default_initial(model, make_model_basis(model, l.m), opt.u0_scale));
  const IntegrateOptions io = explicit_options(opt);
  for (const Level& l : schedule.levels) check_stability_guard(model, l.config(schedule.T), io);

  // [level][q][sample]
  std::vector<std::vector<std::vector<double>>> sup(L, std::vector<std::vector<double>>(Q, std::vector<double>(S)));
  auto v1 = sup;
  std::vector<std::vector<char>> diverged(L, std::vector<char>(S, 0));

  parallel_for(S, opt.workers, [&](std::size_t s) {
    const NoisePath path = sample_path(opt.seed, s, schedule.n_max, schedule.k_max(), schedule.T);
    for (std::size_t l = 0; l < L; ++l) {
      const TrajectoryRecord r =
          integrate(model, schedule.levels[l].config(schedule.T), path, u0[l], io);
      diverged[l][s] = r.diverged;
      for (std::size_t i = 0; i < Q; ++i) {
        sup[l][i][s] = std::pow(r.max_h_sq, q[i]);
        v1[l][i][s] = std::pow(r.v1_integral, q[i]);
      }
    }
  });

  MomentReport rep;
  rep.q = q;
  rep.T = schedule.T;
  for (std::size_t l = 0; l < L; ++l) {
    MomentLevel ml;
    ml.level = schedule.levels[l];
    for (std::size_t i = 0; i < Q; ++i) {
      ml.sup.push_back(estimate(sup[l][i]));
      ml.v1.push_back(estimate(v1[l][i]));
    }
    ml.divergences = static_cast<std::size_t>(std::count(diverged[l].begin(), diverged[l].end(), 1));
    rep.levels.push_back(std::move(ml));
  }
  return rep;
}

bool ConvergenceReport::monotone() const {
  for (const Estimate& d : decrease)
    if (!(d.mean > d.se)) return false;
  return true;
}

ConvergenceReport run_convergence(const ModelSpec& model, const Schedule& schedule,
                                  const StudyOptions& opt, const ConvergenceOptions& conv) {
  validate(model);
  if (schedule.levels.empty()) throw ConfigError("convergence: schedule has no levels");
  const std::size_t S = opt.samples;
  if (S < 2) throw ConfigError("convergence: at least 2 samples are needed");
  const BasisPtr ref_basis = make_model_basis(model, conv.m_ref);
  LevelConfig ref{conv.m_ref, conv.n_ref, ref_basis->size(), schedule.T,
                  galerkin_constant(model, conv.m_ref).paper_form};
  if (schedule.rule == ScheduleRule::exact_c4) ref.c_m = galerkin_constant(model, conv.m_ref).exact;
  validate(ref);
  for (const Level& l : schedule.levels) {
    if (l.m >= conv.m_ref || l.n >= conv.n_ref)
      throw ConfigError("convergence: the reference (m = " + std::to_string(conv.m_ref) +
                        ", n = " + std::to_string(conv.n_ref) +
                        ") must be strictly finer than every level");
    if (conv.n_ref % l.n != 0)
      throw ConfigError("convergence: level n = " + std::to_string(l.n) +
                        " does not divide the reference n = " + std::to_string(conv.n_ref));
  }

  const std::size_t L = schedule.levels.size();
  std::vector<SpectralField> u0;
  for (const Level& l : schedule.levels)
    u0.push_back(default_initial(model, make_model_basis(model, l.m), opt.u0_scale));
  const SpectralField u0_ref = default_initial(model, ref_basis, opt.u0_scale);
  const IntegrateOptions io = explicit_options(opt);
  const IntegrateOptions ref_io = explicit_options(opt, conv.reference_scheme);
  for (const Level& l : schedule.levels) check_stability_guard(model, l.config(schedule.T), io);
  check_stability_guard(model, ref, ref_io);

  std::vector<std::vector<double>> err(L, std::vector<double>(S));
  std::vector<double> cross(conv.cross_check ? S : 0);

  parallel_for(S, opt.workers, [&](std::size_t s) {
    const NoisePath path = sample_path(opt.seed, s, conv.n_ref, ref.k, schedule.T);
    const TrajectoryRecord r = integrate(model, ref, path, u0_ref, ref_io);
    if (r.diverged) throw IntegrationError("convergence: reference run diverged", r.steps);
    if (conv.cross_check) {
      IntegrateOptions other = ref_io;
      other.scheme = conv.reference_scheme == Scheme::reference ? Scheme::tamed : Scheme::reference;
      const TrajectoryRecord c = integrate(model, ref, path, u0_ref, other);
      cross[s] = squared_distance(c.endpoint, r.endpoint);
    }
    for (std::size_t l = 0; l < L; ++l) {
      const TrajectoryRecord x =
          integrate(model, schedule.levels[l].config(schedule.T), path, u0[l], io);
      err[l][s] = x.diverged ? std::numeric_limits<double>::infinity()
                             : squared_distance(x.endpoint, r.endpoint);
    }
  });

  ConvergenceReport rep;
  rep.reference = ref;
  rep.reference_scheme = conv.reference_scheme;
  rep.T = schedule.T;
  for (std::size_t l = 0; l < L; ++l) rep.levels.push_back({schedule.levels[l], estimate(err[l])});
  for (std::size_t l = 0; l + 1 < L; ++l) {
    std::vector<double> d(S);
    for (std::size_t s = 0; s < S; ++s) d[s] = err[l][s] - err[l + 1][s];
    rep.decrease.push_back(estimate(d));
  }
  if (conv.cross_check) rep.cross_check = estimate(cross);
  return rep;
}

DivergenceReport run_divergence_contrast(const ModelSpec& model, double u0_scale, double dt,
                                         std::size_t steps, const StudyOptions& opt) {
  validate(model);
  if (!(dt > 0.0)) throw ConfigError("divergence: dt must be > 0");
  if (steps < 1) throw ConfigError("divergence: steps must be >= 1");
  if (opt.samples < 1) throw ConfigError("divergence: at least 1 sample is needed");
  const double T = dt * static_cast<double>(steps);
  const BasisPtr basis = make_model_basis(model, 1);
  const SpectralField u0 = default_initial(model, basis, u0_scale);
  const LevelConfig cfg{1, steps, 1, T, 0.0};

  IntegrateOptions untamed = explicit_options(opt, Scheme::untamed);
  untamed.override_guard = true;
  const IntegrateOptions tamed = explicit_options(opt, Scheme::tamed);

  const std::size_t S = opt.samples;
  std::vector<char> u_div(S, 0), t_div(S, 0);
  std::vector<std::size_t> u_step(S, 0);
  std::vector<double> t_max(S, 0.0);
  parallel_for(S, opt.workers, [&](std::size_t s) {
    const NoisePath path = sample_path(opt.seed, s, steps, 1, T);
    const TrajectoryRecord a = integrate(model, cfg, path, u0, untamed);
    u_div[s] = a.diverged;
    u_step[s] = a.divergence_step.value_or(0);
    const TrajectoryRecord b = integrate(model, cfg, path, u0, tamed);
    t_div[s] = b.diverged;
    t_max[s] = std::sqrt(b.max_h_sq);
  });

  DivergenceReport rep;
  rep.u0 = u0_scale;
  rep.dt = dt;
  rep.steps = steps;
  rep.samples = S;
  std::size_t diverged = 0;
  for (std::size_t s = 0; s < S; ++s) {
    if (u_div[s]) {
      ++diverged;
      rep.untamed_last_step = std::max(rep.untamed_last_step, u_step[s]);
      if (u_step[s] <= 20) ++rep.untamed_within_20;
    }
    rep.tamed_divergences += t_div[s] ? 1 : 0;
    rep.tamed_max_abs = std::max(rep.tamed_max_abs, t_max[s]);
  }
  rep.untamed_fraction = static_cast<double>(diverged) / static_cast<double>(S);
  rep.tamed_bound = std::abs(u0_scale) + std::sqrt(T * dt) * static_cast<double>(steps);
  return rep;
}

double regression_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) throw ConfigError("regression needs at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

GapReport run_gap_study(const ModelSpec& model, const Schedule& schedule, const StudyOptions& opt) {
  validate(model);
  if (schedule.levels.size() < 2) throw ConfigError("gap study: at least two levels are needed");
  const std::size_t L = schedule.levels.size();
  const std::size_t S = opt.samples;
  if (S < 2) throw ConfigError("gap study: at least 2 samples are needed");
  std::size_t n_path = 1;
  for (const Level& l : schedule.levels) n_path = std::lcm(n_path, 4 * l.n);
  const IntegrateOptions io = explicit_options(opt);
  std::vector<SpectralField> u0;
  for (const Level& l : schedule.levels) {
    check_stability_guard(model, l.config(schedule.T), io);
    u0.push_back(default_initial(model, make_model_basis(model, l.m), opt.u0_scale));
  }

  std::vector<std::vector<double>> gap(L, std::vector<double>(S));
  parallel_for(S, opt.workers, [&](std::size_t s) {
    const NoisePath path = sample_path(opt.seed, s, n_path, schedule.k_max(), schedule.T);
    for (std::size_t l = 0; l < L; ++l)
      gap[l][s] = timestep_gap(model, schedule.levels[l].config(schedule.T), path, u0[l], io);
  });

  GapReport rep;
  rep.T = schedule.T;
  rep.noisy = model.noise.amplitude != 0.0;
  std::vector<double> lx, ly;
  for (std::size_t l = 0; l < L; ++l) {
    GapLevel g;
    g.level = schedule.levels[l];
    g.tau = schedule.T / static_cast<double>(g.level.n);
    g.gap = estimate(gap[l]);
    if (g.gap.mean > 0.0) {
      lx.push_back(std::log(g.tau));
      ly.push_back(std::log(g.gap.mean));
    }
    rep.levels.push_back(g);
  }
  rep.slope = lx.size() >= 2 ? regression_slope(lx, ly) : 0.0;
  return rep;
}

}  // namespace tamed
