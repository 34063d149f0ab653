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

#include "tamed/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tamed {

namespace {

void require_basis(const ModelSpec& model, const SpectralField& v) {
  const Domain& d = v.basis().domain();
  if (d.dimension != model.domain.dimension || d.boundary != model.domain.boundary ||
      v.blocks() != model.blocks())
    throw ConfigError("field basis does not match the model");
  for (int a = 0; a < d.dimension; ++a)
    if (d.length[a] != model.domain.length[a])
      throw ConfigError("field basis does not match the model domain");
}

double flux(Flux f, double z) {
  if (f == Flux::identity) return z;
  return (2.0 + std::exp(-z)) / (1.0 + std::exp(-z));
}

double superlinear(const ModelSpec& model, double u) {
  // sign * |u|^{p-2} u
  return model.nonlinear_sign * abs_pow(u, model.p - 2.0) * u;
}

}  // namespace

DualField apply_A1(const ModelSpec& model, const SpectralField& v) {
  require_basis(model, v);
  const Basis& basis = v.basis();
  const std::size_t M = basis.size();
  DualField f(v.basis_ptr(), model.blocks());

  switch (model.kind) {
    case ModelKind::ginzburg_landau:
      if (model.flux == Flux::identity) {
        for (std::size_t j = 0; j < M; ++j) f[j] = -basis.wavenumber_squared(j) * v[j];
      } else {
        // <div a(grad v), phi_j> = -<a(grad v), grad phi_j> (phi_j vanishes on the boundary)
        std::vector<double> grad(basis.grid_size());
        std::vector<double> part(M);
        for (int axis = 0; axis < basis.dimension(); ++axis) {
          basis.gradient_to_physical(v.block(0), axis, grad);
          for (double& g : grad) g = flux(model.flux, g);
          basis.gradient_to_spectral(grad, axis, part);
          for (std::size_t j = 0; j < M; ++j) f[j] -= part[j];
        }
      }
      break;
    case ModelKind::swift_hohenberg: {
      const double g2 = model.gamma * model.gamma;
      for (std::size_t j = 0; j < M; ++j) {
        const double s = 1.0 - basis.wavenumber_squared(j);
        f[j] = (g2 - s * s) * v[j];
      }
      break;
    }
    case ModelKind::fitzhugh_nagumo: {
      auto u = v.block(0);
      auto w = v.block(1);
      auto fu = f.block(0);
      auto fw = f.block(1);
      for (std::size_t j = 0; j < M; ++j) {
        fu[j] = (1.0 - basis.wavenumber_squared(j)) * u[j] - w[j];
        fw[j] = model.c1 * (u[j] - model.c2 * w[j]);
      }
      // <c1 c3, phi_0> with phi_0 = 1/sqrt(L)
      fw[0] += model.c1 * model.c3 * std::sqrt(basis.domain().length[0]);
      break;
    }
    case ModelKind::scalar_toy: break;
  }
  return f;
}

std::vector<std::vector<double>> a2_grid(const ModelSpec& model, const SpectralField& v) {
  require_basis(model, v);
  const Basis& basis = v.basis();
  std::vector<std::vector<double>> grids(model.blocks(),
                                         std::vector<double>(basis.grid_size(), 0.0));
  auto& g = grids[0];
  basis.to_physical(v.block(0), g);
  for (double& x : g) x = superlinear(model, x);
  return grids;
}

DualField apply_A2(const ModelSpec& model, const SpectralField& v) {
  const auto grids = a2_grid(model, v);
  DualField f(v.basis_ptr(), model.blocks());
  v.basis().to_spectral(grids[0], f.block(0));
  return f;
}

DualField apply_A(const ModelSpec& model, const SpectralField& v) {
  DualField f = apply_A1(model, v);
  const DualField g = apply_A2(model, v);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] += g[i];
  return f;
}

double dual_norm_v2(const ModelSpec& model, const Basis& basis,
                    const std::vector<std::vector<double>>& grids) {
  const auto spec = model.norms();
  double out = 0.0;
  for (std::size_t b = 0; b < grids.size(); ++b) {
    const double q = spec[b].lebesgue;
    const double q_star = q / (q - 1.0);
    out = std::max(out, lp_norm(grids[b], basis, q_star));
  }
  return out;
}

SpectralField apply_B(const ModelSpec& model, const SpectralField& v, std::size_t j) {
  require_basis(model, v);
  const Basis& basis = v.basis();
  if (j < 1 || j > basis.size())
    throw ConfigError("noise column " + std::to_string(j) + " out of range 1.." +
                      std::to_string(basis.size()));
  const double s = model.noise.sigma(j);
  SpectralField out(v.basis_ptr(), model.blocks());
  switch (model.noise.kind) {
    case NoiseKind::additive: out[j - 1] = s; break;
    case NoiseKind::diagonal_multiplicative: out[j - 1] = s * v[j - 1]; break;
    case NoiseKind::pointwise_multiplicative: {
      std::vector<double> unit(basis.size(), 0.0), phi(basis.grid_size()), vg(basis.grid_size());
      unit[j - 1] = 1.0;
      basis.to_physical(unit, phi);
      basis.to_physical(v.block(0), vg);
      for (std::size_t i = 0; i < vg.size(); ++i) vg[i] *= s * phi[i];
      basis.to_spectral(vg, out.block(0));
      break;
    }
  }
  return out;
}

SpectralField apply_noise(const ModelSpec& model, const SpectralField& v,
                          std::span<const double> dW) {
  const Basis& basis = v.basis();
  const std::size_t k = dW.size();
  if (k > basis.size())
    throw ConfigError("noise truncation k = " + std::to_string(k) +
                      " exceeds dim V_m = " + std::to_string(basis.size()));
  SpectralField out(v.basis_ptr(), model.blocks());
  switch (model.noise.kind) {
    case NoiseKind::additive:
      for (std::size_t j = 0; j < k; ++j) out[j] = model.noise.sigma(j + 1) * dW[j];
      break;
    case NoiseKind::diagonal_multiplicative:
      for (std::size_t j = 0; j < k; ++j) out[j] = model.noise.sigma(j + 1) * v[j] * dW[j];
      break;
    case NoiseKind::pointwise_multiplicative: {
      // Pi_m (v * sum_j sigma_j dW_j phi_j)
      std::vector<double> eta(basis.size(), 0.0), eg(basis.grid_size()), vg(basis.grid_size());
      for (std::size_t j = 0; j < k; ++j) eta[j] = model.noise.sigma(j + 1) * dW[j];
      basis.to_physical(eta, eg);
      basis.to_physical(v.block(0), vg);
      for (std::size_t i = 0; i < vg.size(); ++i) vg[i] *= eg[i];
      basis.to_spectral(vg, out.block(0));
      break;
    }
  }
  return out;
}

double hilbert_schmidt_sq(const ModelSpec& model, const SpectralField& v, std::size_t k) {
  const Basis& basis = v.basis();
  if (k > basis.size()) k = basis.size();
  double s = 0.0;
  switch (model.noise.kind) {
    case NoiseKind::additive:
      for (std::size_t j = 1; j <= k; ++j) s += model.noise.sigma(j) * model.noise.sigma(j);
      break;
    case NoiseKind::diagonal_multiplicative:
      for (std::size_t j = 1; j <= k; ++j) {
        const double c = model.noise.sigma(j) * v[j - 1];
        s += c * c;
      }
      break;
    case NoiseKind::pointwise_multiplicative:
      for (std::size_t j = 1; j <= k; ++j) {
        const double n = apply_B(model, v, j).l2_norm();
        s += n * n;
      }
      break;
  }
  return s;
}

std::vector<double> linear_multiplier(const ModelSpec& model, const Basis& basis) {
  const std::size_t M = basis.size();
  std::vector<double> lam(M * model.blocks(), 0.0);
  switch (model.kind) {
    case ModelKind::ginzburg_landau: {
      // sigmoid flux: a'(0) = 1/4
      const double slope = model.flux == Flux::identity ? 1.0 : 0.25;
      for (std::size_t j = 0; j < M; ++j) lam[j] = -slope * basis.wavenumber_squared(j);
      break;
    }
    case ModelKind::swift_hohenberg:
      for (std::size_t j = 0; j < M; ++j) {
        const double s = 1.0 - basis.wavenumber_squared(j);
        lam[j] = model.gamma * model.gamma - s * s;
      }
      break;
    case ModelKind::fitzhugh_nagumo:
      for (std::size_t j = 0; j < M; ++j) lam[j] = -basis.wavenumber_squared(j);
      break;
    case ModelKind::scalar_toy: break;
  }
  return lam;
}

GalerkinConstant galerkin_constant(const ModelSpec& model, int m) {
  const BasisPtr basis = make_model_basis(model, m);
  const auto spec = model.norms();
  const std::size_t M = basis->size();
  GalerkinConstant out;
  SpectralField e(basis, model.blocks());
  for (int b = 0; b < model.blocks(); ++b) {
    const BlockNorm& bn = spec[static_cast<std::size_t>(b)];
    for (std::size_t j = 0; j < M; ++j) {
      std::fill(e.coeffs().begin(), e.coeffs().end(), 0.0);
      e[b * M + j] = 1.0;
      const double v1 = norm(e, Space::V1, spec);
      const double v2 = bn.lebesgue == 2.0 ? 1.0 : mode_lp_norm(*basis, j, bn.lebesgue);
      out.exact += (v1 + v2) * (v1 + v2);
    }
  }
  const double lp_first = mode_lp_norm(*basis, 0, model.p);
  out.paper_form = static_cast<double>(M * model.blocks()) *
                   (1.0 + basis->wavenumber_squared(0) + std::pow(lp_first, 2.0 / model.p));
  return out;
}

}  // namespace tamed
