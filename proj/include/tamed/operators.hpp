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

// Concrete drift and diffusion operators for the shipped models.
//
//   ginzburg_landau  du = [div a(grad u) - |u|^{p-2} u] dt + B(u) dW
//   swift_hohenberg  du = [(gamma^2 - (1 + Lap)^2) u - |u|^{p-2} u] dt + B dW
//   fitzhugh_nagumo  du = [Lap u + u - u^3 - v] dt + B dW,
//                    dv = c1 (u - c2 v + c3) dt
//   scalar_toy       du = -u^3 dt (+ sigma dW)
//
// A1 is the linear / divergence-form part, A2 the superlinear term. Operators
// return dual coefficients <A v, phi_j> for every mode of v's basis.

#include <cstddef>
#include <span>
#include <vector>

#include "tamed/model.hpp"
#include "tamed/spectral.hpp"

namespace tamed {

DualField apply_A1(const ModelSpec& model, const SpectralField& v);
DualField apply_A2(const ModelSpec& model, const SpectralField& v);
DualField apply_A(const ModelSpec& model, const SpectralField& v);

/// Pointwise grid values of A2 v, one grid per component (zero for components
/// without a nonlinearity). Used for the V2* norm.
std::vector<std::vector<double>> a2_grid(const ModelSpec& model, const SpectralField& v);

/// ||f||_{V2*}: max over components of the L^{p*} quadrature norm of the grid
/// values (L^2 for components whose V2 factor is L^2).
double dual_norm_v2(const ModelSpec& model, const Basis& basis,
                    const std::vector<std::vector<double>>& grids);

/// j-th column Pi_m B(v) chi_j, j 1-based, j <= dim V_m.
SpectralField apply_B(const ModelSpec& model, const SpectralField& v, std::size_t j);

/// sum_j Pi_m B(v) chi_j dW_j for j = 1..dW.size().
SpectralField apply_noise(const ModelSpec& model, const SpectralField& v,
                          std::span<const double> dW);

/// ||Pi_m B v||^2_{L_2(U,H)} over the first k columns.
double hilbert_schmidt_sq(const ModelSpec& model, const SpectralField& v, std::size_t k);

/// Per-coefficient eigenvalue of the stiff linear part L (diagonal in the
/// basis) used by the linearly implicit reference scheme.
std::vector<double> linear_multiplier(const ModelSpec& model, const Basis& basis);

/// c(m) for the model's own V1 and V2 norms.
GalerkinConstant galerkin_constant(const ModelSpec& model, int m);

}  // namespace tamed
