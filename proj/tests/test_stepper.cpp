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

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "tamed/checks.hpp"
#include "tamed/noise.hpp"
#include "tamed/operators.hpp"
#include "tamed/stepper.hpp"
#include "tamed/taming.hpp"

using namespace tamed;

namespace {

ModelSpec quiet(ModelKind kind) {
  ModelSpec m = make_model(kind);
  m.noise.amplitude = 0.0;
  return m;
}

SpectralField scalar(const BasisPtr& b, double x) {
  SpectralField u(b);
  u[0] = x;
  return u;
}

const std::vector<double> kNoNoise(64, 0.0);

}  // namespace

TEST_SUITE("stepper") {
  TEST_CASE("linear GL without noise decays phi_1 by 1 - dt") {
    ModelSpec gl = quiet(ModelKind::ginzburg_landau);
    gl.nonlinear_sign = 0.0;
    const BasisPtr b = make_model_basis(gl, 4);
    const LevelConfig cfg{4, 10, 4, 1.0};
    const SpectralField u = step_tamed(gl, scalar(b, 1.0), cfg, std::span(kNoNoise).first(4));
    CHECK(u[0] == doctest::Approx(0.9).epsilon(1e-14));
    for (std::size_t j = 1; j < u.size(); ++j) CHECK(u[j] == 0.0);
  }

  TEST_CASE("scalar toy: tamed drift at u = 5 with n = 100") {
    const ModelSpec toy = make_model(ModelKind::scalar_toy);
    const BasisPtr b = make_model_basis(toy, 1);
    const LevelConfig cfg{1, 100, 1, 1.0};
    // T = 1 / (1 + 125 / 10)
    const SpectralField u = step_tamed(toy, scalar(b, 5.0), cfg, std::span(kNoNoise).first(1));
    CHECK(u[0] - 5.0 == doctest::Approx(-0.01 * 125.0 / 13.5).epsilon(1e-12));
  }

  TEST_CASE("scalar toy: untamed steps from u = 5 with dt = 0.1") {
    const ModelSpec toy = make_model(ModelKind::scalar_toy);
    const BasisPtr b = make_model_basis(toy, 1);
    const LevelConfig cfg{1, 10, 1, 1.0};
    SpectralField u = step_untamed(toy, scalar(b, 5.0), cfg, std::span(kNoNoise).first(1));
    CHECK(u[0] == doctest::Approx(-7.5).epsilon(1e-13));
    u = step_untamed(toy, u, cfg, std::span(kNoNoise).first(1));
    CHECK(u[0] == doctest::Approx(34.6875).epsilon(1e-13));
  }

  TEST_CASE("reference scheme divides each mode by 1 - dt lambda") {
    ModelSpec gl = quiet(ModelKind::ginzburg_landau);
    gl.nonlinear_sign = 0.0;
    const BasisPtr b = make_model_basis(gl, 8);
    SpectralField u = step_reference(gl, scalar(b, 1.0), {8, 10, 8, 1.0}, std::span(kNoNoise).first(8));
    CHECK(u[0] == doctest::Approx(1.0 / 1.1).epsilon(1e-14));
    SpectralField stiff(b);
    stiff[7] = 1.0;
    u = step_reference(gl, stiff, {8, 1, 8, 1.0}, std::span(kNoNoise).first(8));
    CHECK(u[7] == doctest::Approx(1.0 / 65.0).epsilon(1e-14));
  }

  TEST_CASE("step arguments are validated") {
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    const BasisPtr b = make_model_basis(gl, 4);
    CHECK_THROWS_AS(step_tamed(gl, scalar(b, 1.0), {8, 10, 8, 1.0}, std::span(kNoNoise).first(8)),
                    ConfigError);
    CHECK_THROWS_AS(step_tamed(gl, scalar(b, 1.0), {4, 10, 4, 1.0}, std::span(kNoNoise).first(3)),
                    ConfigError);
    CHECK_THROWS_AS(validate(LevelConfig{4, 0, 4, 1.0}), ConfigError);
    CHECK_THROWS_AS(validate(LevelConfig{4, 10, 4, -1.0}), ConfigError);
  }

  TEST_CASE("integrating with n = 1 is a single step on the summed increments") {
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    const BasisPtr b = make_model_basis(gl, 2);
    const NoisePath path = sample_path(1, 0, 16, 2, 0.1);
    const LevelConfig cfg{2, 1, 2, 0.1};
    const SpectralField u0 = default_initial(gl, b);
    const TrajectoryRecord r = integrate(gl, cfg, path, u0);
    const IncrementTable one = coarsen(path, 1);
    const std::vector<double> dW{one.at(0, 0), one.at(1, 0)};
    const SpectralField u = step_tamed(gl, u0, cfg, dW);
    CHECK(r.steps == 1);
    for (std::size_t j = 0; j < u.size(); ++j) CHECK(r.endpoint[j] == u[j]);
  }

  TEST_CASE("tamed toy run from u = 5 stays below 5") {
    const ModelSpec toy = make_model(ModelKind::scalar_toy);
    const BasisPtr b = make_model_basis(toy, 1);
    const NoisePath path = sample_path(1, 0, 20, 1, 2.0);
    const TrajectoryRecord r = integrate(toy, {1, 20, 1, 2.0}, path, scalar(b, 5.0));
    CHECK_FALSE(r.diverged);
    CHECK(std::abs(r.endpoint[0]) < 5.0);
    CHECK(r.max_h_sq == doctest::Approx(25.0));
  }

  TEST_CASE("untamed toy run from u = 5 with dt = 0.1 blows up within 20 steps") {
    const ModelSpec toy = make_model(ModelKind::scalar_toy);
    const BasisPtr b = make_model_basis(toy, 1);
    const NoisePath path = sample_path(1, 0, 20, 1, 2.0);
    IntegrateOptions opt;
    opt.scheme = Scheme::untamed;
    opt.override_guard = true;
    const TrajectoryRecord r = integrate(toy, {1, 20, 1, 2.0}, path, scalar(b, 5.0), opt);
    CHECK(r.diverged);
    REQUIRE(r.divergence_step.has_value());
    CHECK(*r.divergence_step <= 20);
    CHECK(r.steps == *r.divergence_step);
  }

  TEST_CASE("tamed and linearly implicit reference agree at fine resolution") {
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    const BasisPtr b = make_model_basis(gl, 8);
    const std::size_t n = std::size_t{1} << 14;
    const NoisePath path = sample_path(3, 0, n, 8, 1.0);
    const SpectralField u0 = default_initial(gl, b);
    const LevelConfig cfg{8, n, 8, 1.0};
    const TrajectoryRecord a = integrate(gl, cfg, path, u0);
    IntegrateOptions ref;
    ref.scheme = Scheme::reference;
    const TrajectoryRecord r = integrate(gl, cfg, path, u0, ref);
    double d = 0.0;
    for (std::size_t j = 0; j < b->size(); ++j) d += std::pow(a.endpoint[j] - r.endpoint[j], 2);
    CHECK(d <= 1e-2);
  }

  TEST_CASE("tamed equals untamed bitwise when the superlinear part is absent") {
    ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    gl.nonlinear_sign = 0.0;
    const BasisPtr b = make_model_basis(gl, 4);
    const NoisePath path = sample_path(2, 0, 64, 4, 1.0);
    IntegrateOptions u;
    u.scheme = Scheme::untamed;
    const SpectralField u0 = default_initial(gl, b, 2.0);
    const TrajectoryRecord a = integrate(gl, {4, 64, 4, 1.0}, path, u0);
    const TrajectoryRecord c = integrate(gl, {4, 64, 4, 1.0}, path, u0, u);
    for (std::size_t j = 0; j < b->size(); ++j) CHECK(a.endpoint[j] == c.endpoint[j]);
  }

  TEST_CASE("additive noise enters the step linearly") {
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    const BasisPtr b = make_model_basis(gl, 6);
    const LevelConfig cfg{6, 100, 6, 1.0};
    const std::vector<double> dW{0.1, -0.05, 0.02, 0.3, -0.2, 0.01};
    for (std::uint64_t s = 0; s < 20; ++s) {
      const SpectralField u = random_field(b, 1, 2.0, 8, s);
      const SpectralField with = step_tamed(gl, u, cfg, dW);
      const SpectralField without = step_tamed(gl, u, cfg, std::span(kNoNoise).first(6));
      const SpectralField noise = apply_noise(gl, u, dW);
      for (std::size_t j = 0; j < u.size(); ++j)
        CHECK(std::abs(with[j] - without[j] - noise[j]) < 1e-12);
    }
  }

  TEST_CASE("tamed drift increment is at most sqrt(T dt)") {
    const ModelSpec gl = quiet(ModelKind::ginzburg_landau);
    const BasisPtr b = make_model_basis(gl, 8);
    for (std::size_t n : {10u, 100u, 1000u}) {
      const LevelConfig cfg{8, n, 8, 1.0};
      for (std::uint64_t s = 0; s < 50; ++s) {
        const SpectralField u = random_field(b, 1, 50.0, 6, s);
        const SpectralField next = step_tamed(gl, u, cfg, std::span(kNoNoise).first(8));
        const DualField a1 = apply_A1(gl, u);
        double sq = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) sq += std::pow(next[j] - u[j] - cfg.dt() * a1[j], 2);
        CHECK(std::sqrt(sq) <= std::sqrt(cfg.T * cfg.dt()) * (1.0 + 1e-12));
      }
    }
  }

  TEST_CASE("stability guard refuses coarse steps unless overridden") {
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    const BasisPtr b = make_model_basis(gl, 16);
    const NoisePath path = sample_path(1, 0, 16, 16, 1.0);
    const LevelConfig cfg{16, 16, 16, 1.0};
    CHECK_THROWS_AS(integrate(gl, cfg, path, default_initial(gl, b)), StabilityGuardError);
    IntegrateOptions opt;
    opt.override_guard = true;
    CHECK_NOTHROW(integrate(gl, cfg, path, default_initial(gl, b), opt));
    opt.override_guard = false;
    opt.scheme = Scheme::reference;
    CHECK_NOTHROW(integrate(gl, cfg, path, default_initial(gl, b), opt));
  }

  TEST_CASE("snapshots are written as CSV with one row per time point") {
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    const BasisPtr b = make_model_basis(gl, 2);
    IntegrateOptions opt;
    opt.snapshots = true;
    const TrajectoryRecord r =
        integrate(gl, {2, 8, 2, 1.0}, sample_path(1, 0, 8, 2, 1.0), default_initial(gl, b), opt);
    std::ostringstream out;
    write_snapshots(r, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,c1,c2");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 9);
    CHECK(r.times.back() == doctest::Approx(1.0));
  }

  TEST_CASE("gap vanishes without drift and noise") {
    ModelSpec gl = quiet(ModelKind::ginzburg_landau);
    const BasisPtr b = make_model_basis(gl, 4);
    const NoisePath path = sample_path(1, 0, 64, 4, 1.0);
    CHECK(timestep_gap(gl, {4, 16, 4, 1.0}, path, SpectralField(b)) == 0.0);
  }

  TEST_CASE("deterministic linear gap matches dt^3/3 sum |a_i|^2") {
    ModelSpec gl = quiet(ModelKind::ginzburg_landau);
    gl.nonlinear_sign = 0.0;
    const BasisPtr b = make_model_basis(gl, 4);
    const std::size_t n = 32;
    const double dt = 1.0 / n;
    const NoisePath path = sample_path(1, 0, 4 * n, 4, 1.0);
    // u_i = (1 - dt)^i phi_1 and the drift is -u_i
    double want = 0.0;
    for (std::size_t i = 0; i < n; ++i) want += std::pow(1.0 - dt, 2.0 * i);
    want *= dt * dt * dt / 3.0;
    CHECK(timestep_gap(gl, {4, n, 4, 1.0}, path, scalar(b, 1.0)) ==
          doctest::Approx(want).epsilon(1e-12));
    CHECK_THROWS_AS(timestep_gap(gl, {4, n, 4, 1.0}, sample_path(1, 0, 2 * n, 4, 1.0), scalar(b, 1.0)),
                    ConfigError);
  }

  TEST_CASE("pure additive noise gap has mean close to the Brownian value") {
    // u = sigma_1 W_1 phi_1 with A = 0 on the toy: E int |W(s) - W(t_i)|^2 = sigma^2 T dt / 2
    ModelSpec toy = make_model(ModelKind::scalar_toy);
    toy.noise.amplitude = 1.0;
    toy.nonlinear_sign = 0.0;
    const BasisPtr b = make_model_basis(toy, 1);
    const std::size_t n = 16;
    double sum = 0.0;
    const int S = 4000;
    for (int s = 0; s < S; ++s)
      sum += timestep_gap(toy, {1, n, 1, 1.0}, sample_path(9, s, 4 * n, 1, 1.0), SpectralField(b));
    // trapezoid on four sub-intervals of E|W(s)|^2 = s is exact
    CHECK(sum / S == doctest::Approx(0.5 / n).epsilon(0.05));
  }
}
