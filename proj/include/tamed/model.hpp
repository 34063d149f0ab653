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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tamed/spectral.hpp"

namespace tamed {

enum class ModelKind { ginzburg_landau, swift_hohenberg, fitzhugh_nagumo, scalar_toy };
enum class Flux { identity, sigmoid };
enum class NoiseKind { additive, diagonal_multiplicative, pointwise_multiplicative };

/// Diffusion B through its columns B(v) chi_j, with sigma_j = amplitude * j^-decay.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::additive;
  double amplitude = 0.5;
  double decay = 1.0;

  double sigma(std::size_t j) const;  // j is 1-based
};

struct ModelSpec {
  ModelKind kind = ModelKind::ginzburg_landau;
  Domain domain{};
  double p = 4.0;
  Flux flux = Flux::identity;
  double gamma = 1.0;                    // Swift-Hohenberg
  double c1 = 0.08, c2 = 0.8, c3 = 0.7;  // FitzHugh-Nagumo
  NoiseSpec noise{};
  double K = 1.0;
  double mu = 1.0;
  // -1 gives the dissipative -|u|^{p-2}u; +1 is a deliberately broken variant
  // used to exercise the checkers.
  double nonlinear_sign = -1.0;

  int blocks() const { return kind == ModelKind::fitzhugh_nagumo ? 2 : 1; }
  std::vector<BlockNorm> norms() const;
  /// V1 Sobolev order of the first component (2 for Swift-Hohenberg).
  int sobolev_order() const { return kind == ModelKind::swift_hohenberg ? 2 : 1; }
};

/// Shipped parameter sets.
ModelSpec make_model(ModelKind kind);

/// Rejects (d, p) outside [2, 6) in 1D and [2, 4) in 2D, non-positive K or mu,
/// and noise decays that do not give a Hilbert-Schmidt B.
void validate(const ModelSpec& model);

std::string_view to_string(ModelKind kind);
std::string_view to_string(NoiseKind kind);
std::string_view to_string(Flux flux);
ModelKind parse_model_kind(std::string_view s);
NoiseKind parse_noise_kind(std::string_view s);
Flux parse_flux(std::string_view s);

/// Admissible exponent range [2, upper) for dimension d.
double max_exponent(int dimension);

/// Basis of V_m for this model.
BasisPtr make_model_basis(const ModelSpec& model, int m);

/// phi_1 (or phi_11) in every component's first mode slot of the first block:
/// the default smooth initial datum.
SpectralField default_initial(const ModelSpec& model, const BasisPtr& basis, double scale = 1.0);

}  // namespace tamed
