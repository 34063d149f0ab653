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
#include "tamed/taming.hpp"

using namespace tamed;

TEST_SUITE("taming") {
  TEST_CASE("factor is 1 at zero drift and 1/2 when |Pi A2 v| = sqrt(n)") {
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    const BasisPtr b = make_model_basis(gl, 4);
    DualField f(b);
    CHECK(taming_factor(f, {100, 4}) == 1.0);
    f[0] = 10.0;
    CHECK(taming_factor(f, {100, 4}) == doctest::Approx(0.5));
    CHECK(taming_factor(gl, SpectralField(b), {7, 4}) == 1.0);
  }

  TEST_CASE("tamed magnitude never exceeds sqrt(n)") {
    for (std::size_t n : {1u, 10u, 100u, 10000u}) {
      double prev = -1.0;
      for (int i = 0; i <= 10000; ++i) {
        const double x = std::pow(10.0, -6.0 + 18.0 * i / 10000.0);
        const double t = tamed_magnitude(x, n);
        CHECK(t <= std::sqrt(static_cast<double>(n)));
        CHECK(t <= x);
        CHECK(t >= prev);
        prev = t;
      }
    }
    CHECK(tamed_magnitude(1e300, 1) == doctest::Approx(1.0));
  }

  TEST_CASE("factor on non-finite drift is a numeric error") {
    const BasisPtr b = make_model_basis(make_model(ModelKind::ginzburg_landau), 2);
    DualField f(b);
    f[1] = std::nan("");
    CHECK_THROWS_AS(taming_factor(f, {10, 2}), NumericError);
    CHECK_THROWS_AS(validate(TamingContext{0, 2}), ConfigError);
  }

  TEST_CASE("tame bound holds on random fields for every shipped model") {
    for (ModelKind k : {ModelKind::ginzburg_landau, ModelKind::swift_hohenberg,
                        ModelKind::fitzhugh_nagumo}) {
      const ModelSpec model = make_model(k);
      for (int m : {4, 8})
        for (std::size_t n : {1u, 100u, 10000u}) {
          const TamingReport r = verify_tame_bound(model, {n, m}, {200, 5.0, 2});
          CHECK(r.passed());
          CHECK(r.max_ratio <= 1.0);
        }
    }
  }

  TEST_CASE("huge fields saturate at sqrt(n) but never exceed it") {
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    for (std::size_t n : {1u, 100u}) {
      const TamingReport r = verify_tame_bound(gl, {n, 8}, {100, 1e6, 4});
      CHECK(r.passed());
      CHECK(r.max_ratio > 0.999);
    }
  }

  TEST_CASE("taming commutes with the projection") {
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    const BasisPtr b = make_model_basis(gl, 8);
    const BasisPtr c = make_model_basis(gl, 4);
    const TamingContext ctx{100, 8};
    for (std::uint64_t s = 0; s < 50; ++s) {
      const SpectralField v = random_field(b, 1, 5.0, 9, s);
      const DualField tamed = apply_tamed_A2(gl, v, ctx);
      const DualField raw = apply_A2(gl, v);
      const double t = taming_factor(raw, ctx);
      const SpectralField lhs = project(tamed, c);
      const SpectralField rhs = project(raw, c);
      for (std::size_t j = 0; j < lhs.size(); ++j)
        CHECK(lhs[j] == doctest::Approx(t * rhs[j]).epsilon(1e-14));
    }
  }

  TEST_CASE("growth and weak coercivity survive taming") {
    for (ModelKind k : {ModelKind::ginzburg_landau, ModelKind::swift_hohenberg,
                        ModelKind::fitzhugh_nagumo}) {
      const ModelSpec model = make_model(k);
      for (std::size_t n : {1u, 100u, 10000u}) {
        CHECK(verify_growth_preserved(model, {n, 8}, {200, 5.0, 3}).passed());
        CHECK(verify_weak_coercivity(model, {n, 8}, {200, 5.0, 3}).passed());
      }
    }
  }

  TEST_CASE("flipping the sign breaks weak coercivity") {
    ModelSpec bad = make_model(ModelKind::ginzburg_landau);
    bad.nonlinear_sign = +1.0;
    CHECK_FALSE(verify_weak_coercivity(bad, {10000, 8}, {200, 5.0, 3}).passed());
  }

  TEST_CASE("taming defect decreases in n and vanishes in the limit") {
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    const BasisPtr b = make_model_basis(gl, 8);
    const SpectralField v = random_field(b, 1, 2.0, 1, 0);
    const std::vector<double> d = taming_defect(gl, v, 8, {100, 1000, 10000, 100000});
    REQUIRE(d.size() == 4);
    for (std::size_t i = 1; i < d.size(); ++i) CHECK(d[i] < d[i - 1]);
    // defect = (1 - T) ||A2 v|| with 1 - T = x / (sqrt(n) + x)
    const double x = projected_norm(apply_A2(gl, v), 8);
    CHECK(d[3] / d[1] == doctest::Approx((std::sqrt(1e3) + x) / (std::sqrt(1e5) + x)).epsilon(1e-12));
    const std::vector<double> far = taming_defect(gl, v, 8, {std::size_t{1} << 60});
    CHECK(far[0] < 1e-6 * d[0]);
  }
}
