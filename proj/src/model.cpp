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

#include "tamed/model.hpp"

#include <cmath>
#include <sstream>

namespace tamed {

double NoiseSpec::sigma(std::size_t j) const {
  if (j == 0) throw ConfigError("noise mode indices are 1-based");
  if (decay == 0.0) return amplitude;
  return amplitude * std::pow(static_cast<double>(j), -decay);
}

std::vector<BlockNorm> ModelSpec::norms() const {
  switch (kind) {
    case ModelKind::swift_hohenberg: return {BlockNorm{2, p}};
    case ModelKind::fitzhugh_nagumo: return {BlockNorm{1, p}, BlockNorm{0, 2.0}};
    case ModelKind::scalar_toy: return {BlockNorm{0, p}};
    case ModelKind::ginzburg_landau: break;
  }
  return {BlockNorm{1, p}};
}

ModelSpec make_model(ModelKind kind) {
  ModelSpec m;
  m.kind = kind;
  switch (kind) {
    case ModelKind::ginzburg_landau:
      m.domain = Domain{1, {std::numbers::pi, std::numbers::pi}, Boundary::dirichlet};
      m.p = 4.0;
      m.noise = NoiseSpec{NoiseKind::pointwise_multiplicative, 0.5, 1.0};
      m.K = 1.0;
      m.mu = 1.0;
      break;
    case ModelKind::swift_hohenberg:
      m.domain = Domain{2, {std::numbers::pi, std::numbers::pi}, Boundary::dirichlet};
      m.p = 3.0;
      m.gamma = 1.0;
      m.noise = NoiseSpec{NoiseKind::additive, 0.5, 1.0};
      m.K = 10.0;
      m.mu = 1.0;
      break;
    case ModelKind::fitzhugh_nagumo:
      m.domain = Domain{1, {1.0, 1.0}, Boundary::neumann};
      m.p = 4.0;
      m.noise = NoiseSpec{NoiseKind::additive, 0.5, 1.0};
      m.K = 6.0;
      m.mu = 1.0;
      break;
    case ModelKind::scalar_toy:
      m.domain = Domain{1, {1.0, 1.0}, Boundary::none};
      m.p = 4.0;
      m.noise = NoiseSpec{NoiseKind::additive, 0.0, 1.0};
      m.K = 1.0;
      m.mu = 1.0;
      break;
  }
  return m;
}

double max_exponent(int dimension) {
  switch (dimension) {
    case 1: return 6.0;
    case 2: return 4.0;
    case 3: return 10.0 / 3.0;
  }
  return 2.0;
}

void validate(const ModelSpec& model) {
  std::vector<std::string> errors;
  auto fail = [&](const std::string& s) { errors.push_back(s); };

  const int d = model.domain.dimension;
  if (d == 3) {
    fail("d = 3 is not supported (no three-dimensional basis)");
  } else {
    try {
      validate(model.domain);
    } catch (const ConfigError& e) {
      fail(e.what());
    }
  }
  if (d == 1 || d == 2) {
    const double upper = max_exponent(d);
    if (!(model.p >= 2.0 && model.p < upper)) {
      std::ostringstream os;
      os << "p = " << model.p << " is outside the admissible range [2, " << upper
         << ") for d = " << d;
      fail(os.str());
    }
  }
  if (!(model.K > 0.0)) fail("K must be > 0");
  if (!(model.mu > 0.0)) fail("mu must be > 0");
  if (!(model.noise.amplitude >= 0.0)) fail("noise amplitude must be >= 0");
  switch (model.noise.kind) {
    case NoiseKind::additive:
    case NoiseKind::pointwise_multiplicative:
      if (!(model.noise.decay > 0.5))
        fail("noise decay must exceed 1/2 so that sum sigma_j^2 < infinity");
      break;
    case NoiseKind::diagonal_multiplicative:
      if (!(model.noise.decay >= 0.0)) fail("noise decay must be >= 0 (bounded sigma_j)");
      break;
  }
  switch (model.kind) {
    case ModelKind::ginzburg_landau:
    case ModelKind::swift_hohenberg:
      if (model.domain.boundary != Boundary::dirichlet)
        fail(std::string(to_string(model.kind)) + " uses Dirichlet boundary conditions");
      break;
    case ModelKind::fitzhugh_nagumo:
      if (model.domain.boundary != Boundary::neumann || d != 1)
        fail("fitzhugh_nagumo is posed on an interval with Neumann conditions");
      break;
    case ModelKind::scalar_toy:
      if (model.domain.boundary != Boundary::none)
        fail("scalar_toy uses the single-mode realisation");
      break;
  }
  if (model.kind == ModelKind::swift_hohenberg && d != 2)
    fail("swift_hohenberg is posed in two dimensions");
  if (!errors.empty()) throw ConfigError(errors);
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::ginzburg_landau: return "ginzburg_landau";
    case ModelKind::swift_hohenberg: return "swift_hohenberg";
    case ModelKind::fitzhugh_nagumo: return "fitzhugh_nagumo";
    case ModelKind::scalar_toy: return "scalar_toy";
  }
  return "?";
}

std::string_view to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::additive: return "additive";
    case NoiseKind::diagonal_multiplicative: return "diagonal_multiplicative";
    case NoiseKind::pointwise_multiplicative: return "pointwise_multiplicative";
  }
  return "?";
}

std::string_view to_string(Flux flux) {
  return flux == Flux::identity ? "identity" : "sigmoid";
}

ModelKind parse_model_kind(std::string_view s) {
  for (auto k : {ModelKind::ginzburg_landau, ModelKind::swift_hohenberg,
                 ModelKind::fitzhugh_nagumo, ModelKind::scalar_toy})
    if (s == to_string(k)) return k;
  throw ConfigError("unknown model '" + std::string(s) + "'");
}

NoiseKind parse_noise_kind(std::string_view s) {
  for (auto k : {NoiseKind::additive, NoiseKind::diagonal_multiplicative,
                 NoiseKind::pointwise_multiplicative})
    if (s == to_string(k)) return k;
  throw ConfigError("unknown noise kind '" + std::string(s) + "'");
}

Flux parse_flux(std::string_view s) {
  if (s == "identity") return Flux::identity;
  if (s == "sigmoid") return Flux::sigmoid;
  throw ConfigError("unknown flux '" + std::string(s) + "'");
}

BasisPtr make_model_basis(const ModelSpec& model, int m) {
  return make_basis(model.domain, m, model.p);
}

SpectralField default_initial(const ModelSpec& model, const BasisPtr& basis, double scale) {
  SpectralField u(basis, model.blocks());
  u[0] = scale;
  return u;
}

}  // namespace tamed
