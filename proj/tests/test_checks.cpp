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

#include "doctest.h"
#include "tamed/checks.hpp"
#include "tamed/operators.hpp"

using namespace tamed;

TEST_SUITE("checks") {
  TEST_CASE("shipped models pass monotonicity, coercivity and growth") {
    const CheckOptions opt{8, 200, 5.0, 3};
    for (ModelKind k : {ModelKind::ginzburg_landau, ModelKind::swift_hohenberg,
                        ModelKind::fitzhugh_nagumo}) {
      const ModelSpec model = make_model(k);
      INFO(to_string(k));
      CHECK(check_monotonicity(model, opt).violations() == 0);
      CHECK(check_coercivity(model, opt).violations() == 0);
      CHECK(check_growth(model, opt).violations() == 0);
    }
  }

  TEST_CASE("GL with additive noise is monotone with K = 1") {
    ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    gl.noise = {NoiseKind::additive, 0.5, 1.0};
    const CheckReport r = check_monotonicity(gl, {8, 500, 5.0, 1});
    CHECK(r.passed());
    CHECK(r.max_violation() <= 0.0);
  }

  TEST_CASE("flipping the sign of the cubic term is caught") {
    ModelSpec bad = make_model(ModelKind::ginzburg_landau);
    bad.nonlinear_sign = +1.0;
    const CheckOptions opt{8, 200, 5.0, 1};
    CHECK(check_monotonicity(bad, opt).violations() > 0);
    CHECK(check_coercivity(bad, opt).violations() > 0);
  }

  TEST_CASE("every inequality is evaluated once per sample") {
    const CheckReport r = check_growth(make_model(ModelKind::fitzhugh_nagumo), {4, 37, 2.0, 1});
    REQUIRE(!r.inequalities.empty());
    for (const auto& q : r.inequalities) CHECK(q.evaluations == 37);
  }

  TEST_CASE("hemicontinuity") {
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    const BasisPtr b = make_model_basis(gl, 8);
    const SpectralField v = random_field(b, 1, 1.0, 1, 0);
    const SpectralField w = random_field(b, 1, 1.0, 1, 1);
    const SpectralField z = random_field(b, 1, 1.0, 1, 2);
    const std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};

    const HemicontinuityReport r = check_hemicontinuity(gl, v, w, z, eps);
    CHECK(r.passed);
    CHECK(r.monotone);

    const HemicontinuityReport zero = check_hemicontinuity(gl, v, SpectralField(b), z, eps);
    for (double d : zero.differences) CHECK(d == 0.0);

    // a linear operator gives differences exactly proportional to epsilon
    ModelSpec linear = gl;
    linear.nonlinear_sign = 0.0;
    const HemicontinuityReport lin = check_hemicontinuity(linear, v, w, z, eps);
    for (std::size_t i = 1; i < eps.size(); ++i)
      CHECK(lin.differences[i] / eps[i] ==
            doctest::Approx(lin.differences[0] / eps[0]).epsilon(1e-6));
  }

  TEST_CASE("interpolation exponent and its admissibility") {
    CHECK(interpolation_exponent(1, 4.0) == doctest::Approx(0.25));
    CHECK(interpolation_exponent(2, 3.0) == doctest::Approx(1.0 / 3.0));
    ModelSpec bad = make_model(ModelKind::ginzburg_landau);
    bad.domain.dimension = 2;
    bad.p = 4.0;
    CHECK_THROWS_AS(check_interpolation(bad, 10, {4, 8}), ConfigError);
  }

  TEST_CASE("empirical interpolation constant stays bounded in m") {
    for (ModelKind k : {ModelKind::ginzburg_landau, ModelKind::swift_hohenberg,
                        ModelKind::fitzhugh_nagumo}) {
      const InterpolationReport r = check_interpolation(make_model(k), 100, {4, 8, 16, 32});
      INFO(to_string(k));
      CHECK(r.lambda < r.lambda_bound);
      CHECK(r.stable);
      CHECK(r.max_growth < 0.05);
    }
  }

  TEST_CASE("interpolation ratio of phi_1 is a fixed computable number") {
    // ||phi_1||_{L^4} / ||phi_1||_{H^1}^{1/4} with |phi_1| = 1 on (0, pi)
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    const BasisPtr b = make_model_basis(gl, 4);
    SpectralField phi(b);
    phi[0] = 1.0;
    const auto spec = gl.norms();
    const double ratio = norm(phi, Space::V2, spec) / std::pow(norm(phi, Space::V1, spec), 0.25);
    const double l4 = std::pow(3.0 / (2.0 * std::numbers::pi), 0.25);
    CHECK(ratio == doctest::Approx(l4 / std::pow(2.0, 0.125)).epsilon(1e-12));
  }

  TEST_CASE("projection properties hold to 1e-12") {
    for (ModelKind k : {ModelKind::ginzburg_landau, ModelKind::swift_hohenberg,
                        ModelKind::fitzhugh_nagumo}) {
      const ProjectionReport r = check_projection(make_model(k), 6, 100);
      CHECK(r.passed(1e-12));
      CHECK(r.max_contraction_excess <= 0.0);
    }
  }

  TEST_CASE("assumption suite report serializes deterministically") {
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    const CheckOptions opt{8, 50, 5.0, 1};
    const std::string a = serialize(run_assumption_suite(gl, opt));
    const std::string b = serialize(run_assumption_suite(gl, opt));
    CHECK(a == b);
    CHECK(a.find("passed = 1") != std::string::npos);
  }
}
