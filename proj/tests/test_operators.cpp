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
#include <numbers>

#include "doctest.h"
#include "tamed/checks.hpp"
#include "tamed/model.hpp"
#include "tamed/operators.hpp"

using namespace tamed;
using std::numbers::pi;

namespace {

SpectralField unit(const ModelSpec& model, const BasisPtr& b, std::size_t j) {
  SpectralField f(b, model.blocks());
  f[j] = 1.0;
  return f;
}

}  // namespace

TEST_SUITE("operators") {
  TEST_CASE("shipped models validate") {
    for (ModelKind k : {ModelKind::ginzburg_landau, ModelKind::swift_hohenberg,
                        ModelKind::fitzhugh_nagumo, ModelKind::scalar_toy})
      CHECK_NOTHROW(validate(make_model(k)));
  }

  TEST_CASE("admissible exponent ranges by dimension") {
    ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    gl.domain.dimension = 2;
    gl.p = 4.0;
    try {
      validate(gl);
      FAIL("expected rejection");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("[2, 4)") != std::string::npos);
    }
    gl.p = 3.9;
    CHECK_NOTHROW(validate(gl));
    gl.domain.dimension = 1;
    gl.p = 6.0;
    CHECK_THROWS_AS(validate(gl), ConfigError);
    gl.p = 1.5;
    CHECK_THROWS_AS(validate(gl), ConfigError);
    gl.domain.dimension = 3;
    gl.p = 2.5;
    CHECK_THROWS_AS(validate(gl), ConfigError);
  }

  TEST_CASE("A1 of phi_1 for the identity flux is -phi_1") {
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    const BasisPtr b = make_model_basis(gl, 4);
    const DualField f = apply_A1(gl, unit(gl, b, 0));
    CHECK(f[0] == doctest::Approx(-1.0));
    for (std::size_t j = 1; j < f.size(); ++j) CHECK(f[j] == 0.0);
  }

  TEST_CASE("A1 on eigenfunctions matches the analytic multipliers") {
    for (ModelKind k : {ModelKind::ginzburg_landau, ModelKind::swift_hohenberg}) {
      const ModelSpec model = make_model(k);
      const BasisPtr b = make_model_basis(model, 6);
      for (std::size_t j = 0; j < b->size(); ++j) {
        const DualField f = apply_A1(model, unit(model, b, j));
        const double k2 = b->wavenumber_squared(j);
        const double want = k == ModelKind::ginzburg_landau
                                ? -k2
                                : model.gamma * model.gamma - (1.0 - k2) * (1.0 - k2);
        CHECK(std::abs(f[j] - want) <= 1e-10 * std::max(1.0, std::abs(want)));
      }
    }
  }

  TEST_CASE("Swift-Hohenberg annihilates phi_11 when gamma = 1") {
    const ModelSpec sh = make_model(ModelKind::swift_hohenberg);
    const BasisPtr b = make_model_basis(sh, 3);
    const DualField f = apply_A1(sh, unit(sh, b, 0));
    for (double c : f.coeffs()) CHECK(std::abs(c) < 1e-12);
  }

  TEST_CASE("sigmoid flux has zero divergence at v = 0") {
    ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    gl.flux = Flux::sigmoid;
    const BasisPtr b = make_model_basis(gl, 8);
    const DualField f = apply_A1(gl, SpectralField(b));
    for (double c : f.coeffs()) CHECK(std::abs(c) < 1e-12);
  }

  TEST_CASE("A2 of zero is zero") {
    for (ModelKind k : {ModelKind::ginzburg_landau, ModelKind::swift_hohenberg,
                        ModelKind::fitzhugh_nagumo, ModelKind::scalar_toy}) {
      const ModelSpec model = make_model(k);
      const BasisPtr b = make_model_basis(model, 4);
      const DualField f = apply_A2(model, SpectralField(b, model.blocks()));
      for (double c : f.coeffs()) CHECK(c == 0.0);
    }
  }

  TEST_CASE("A2 of phi_1 for p = 4 is -phi_1^3 expanded in sines") {
    // phi_1^3 = (2/pi)^{3/2} (3 sin x - sin 3x) / 4 and sin(nx) = sqrt(pi/2) phi_n
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    const BasisPtr b = make_model_basis(gl, 6);
    const DualField f = apply_A2(gl, unit(gl, b, 0));
    CHECK(f[0] == doctest::Approx(-3.0 / (2.0 * pi)).epsilon(1e-13));
    CHECK(f[2] == doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-13));
    for (std::size_t j : {1u, 3u, 4u, 5u}) CHECK(std::abs(f[j]) < 1e-13);
  }

  TEST_CASE("A2 is odd and dissipative on random fields") {
    for (ModelKind k : {ModelKind::ginzburg_landau, ModelKind::swift_hohenberg,
                        ModelKind::fitzhugh_nagumo}) {
      const ModelSpec model = make_model(k);
      const BasisPtr b = make_model_basis(model, 8);
      for (std::uint64_t s = 0; s < 100; ++s) {
        const SpectralField v = random_field(b, model.blocks(), 5.0, 11, s);
        SpectralField minus = v;
        for (double& c : minus.coeffs()) c = -c;
        const DualField a = apply_A2(model, v);
        const DualField am = apply_A2(model, minus);
        for (std::size_t i = 0; i < a.size(); ++i)
          CHECK(std::abs(a[i] + am[i]) <= 1e-12 * std::max(1.0, std::abs(a[i])));
        CHECK(pairing(a, v) <= 0.0);
      }
    }
  }

  TEST_CASE("dual V2 norm of A2 v to the p* equals ||v||_{L^p}^p") {
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    const BasisPtr b = make_model_basis(gl, 8);
    const double p_star = gl.p / (gl.p - 1.0);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const SpectralField v = random_field(b, 1, 3.0, 5, s);
      const double lhs = std::pow(dual_norm_v2(gl, *b, a2_grid(gl, v)), p_star);
      const double rhs = std::pow(lp_norm(to_physical(v), *b, gl.p), gl.p);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }

  TEST_CASE("noise columns") {
    ModelSpec m = make_model(ModelKind::ginzburg_landau);
    const BasisPtr b = make_model_basis(m, 6);
    SpectralField v = random_field(b, 1, 2.0, 1, 0);

    m.noise = {NoiseKind::additive, 0.5, 1.0};
    SpectralField col = apply_B(m, v, 1);
    CHECK(col[0] == doctest::Approx(0.5));
    for (std::size_t j = 1; j < col.size(); ++j) CHECK(col[j] == 0.0);

    m.noise = {NoiseKind::diagonal_multiplicative, 0.5, 1.0};
    SpectralField two(b);
    two[0] = 2.0;
    col = apply_B(m, two, 1);
    CHECK(col[0] == doctest::Approx(1.0));

    // pointwise: <sigma_1 phi_1^2, phi_n> = sigma_1 (2/pi)^{3/2} int sin^2 x sin nx dx.
    // The odd extension of phi_1^2 has a kink, so the quadrature projection
    // converges only like N^-2.
    m.noise = {NoiseKind::pointwise_multiplicative, 0.5, 1.0};
    auto worst_error = [&](int cutoff) {
      const BasisPtr bb = make_model_basis(m, cutoff);
      SpectralField phi(bb);
      phi[0] = 1.0;
      const SpectralField c = apply_B(m, phi, 1);
      double worst = 0.0;
      for (int n = 1; n <= 6; ++n) {
        const double integral =
            n % 2 == 0 ? 0.0 : 1.0 / n - 0.5 * (1.0 / (n + 2) + 1.0 / (n - 2));
        worst = std::max(worst, std::abs(c[n - 1] - 0.5 * std::pow(2.0 / pi, 1.5) * integral));
      }
      return worst;
    };
    const double e6 = worst_error(6), e48 = worst_error(48);
    CHECK(e6 < 5e-5);
    CHECK(e48 < e6 / 30.0);
    SpectralField phi(b);
    phi[0] = 1.0;
    CHECK_THROWS_AS(apply_B(m, phi, 7), ConfigError);
  }

  TEST_CASE("apply_noise is the sum of the columns") {
    for (NoiseKind kind : {NoiseKind::additive, NoiseKind::diagonal_multiplicative,
                           NoiseKind::pointwise_multiplicative}) {
      ModelSpec m = make_model(ModelKind::ginzburg_landau);
      m.noise = {kind, 0.7, 1.0};
      const BasisPtr b = make_model_basis(m, 5);
      const SpectralField v = random_field(b, 1, 2.0, 2, 3);
      const std::vector<double> dW{0.3, -0.2, 0.1, 0.05, -0.4};
      const SpectralField total = apply_noise(m, v, dW);
      for (std::size_t i = 0; i < total.size(); ++i) {
        double want = 0.0;
        for (std::size_t j = 0; j < dW.size(); ++j) want += apply_B(m, v, j + 1)[i] * dW[j];
        CHECK(total[i] == doctest::Approx(want).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("diagonal Hilbert-Schmidt norm is bounded by sup sigma^2 |v|^2") {
    ModelSpec m = make_model(ModelKind::ginzburg_landau);
    m.noise = {NoiseKind::diagonal_multiplicative, 0.5, 1.0};
    const BasisPtr b = make_model_basis(m, 8);
    for (std::uint64_t s = 0; s < 50; ++s) {
      const SpectralField v = random_field(b, 1, 5.0, 4, s);
      double want = 0.0;
      for (std::size_t j = 0; j < 8; ++j) want += std::pow(m.noise.sigma(j + 1) * v[j], 2);
      CHECK(hilbert_schmidt_sq(m, v, 8) == doctest::Approx(want));
      CHECK(hilbert_schmidt_sq(m, v, 8) <= 0.25 * v.l2_norm() * v.l2_norm());
    }
  }

  TEST_CASE("FitzHugh-Nagumo noise drives the u component only") {
    const ModelSpec f = make_model(ModelKind::fitzhugh_nagumo);
    const BasisPtr b = make_model_basis(f, 4);
    const SpectralField v = random_field(b, 2, 1.0, 1, 0);
    const std::vector<double> dW(b->size(), 1.0);
    const SpectralField n = apply_noise(f, v, dW);
    for (double c : n.block(1)) CHECK(c == 0.0);
    for (double c : n.block(0)) CHECK(c != 0.0);
  }

  TEST_CASE("reference multipliers are non-positive for the shipped models") {
    for (ModelKind k : {ModelKind::ginzburg_landau, ModelKind::swift_hohenberg,
                        ModelKind::fitzhugh_nagumo}) {
      const ModelSpec model = make_model(k);
      const BasisPtr b = make_model_basis(model, 8);
      for (double l : linear_multiplier(model, *b)) CHECK(l <= 0.0);
    }
  }
}
