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

// Tensor-product trigonometric Galerkin spaces on boxes.
//
// Dirichlet problems use sine modes, Neumann problems cosine modes (with the
// constant), and Boundary::none is the one-mode space used for scalar ODE
// toys. In 2D the modes are enumerated shell by shell (max(n1, n2) = 1, 2, ...)
// so that the m x m block of any cutoff is a prefix of every finer basis;
// projection onto V_m is therefore a truncation of the coefficient vector.
//
// Nonlinear terms are evaluated on a midpoint grid with
//   N = max(2m, ceil((p/2 + 1) m))
// nodes per axis. The midpoint rule integrates cos(kx) exactly on (0, pi) for
// 0 <= k < 2N, which makes degree-p polynomial pairings against retained modes
// exact.

#include <array>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

#include "tamed/error.hpp"

namespace tamed {

enum class Boundary { dirichlet, neumann, none };

struct Domain {
  int dimension = 1;
  std::array<double, 2> length{std::numbers::pi, std::numbers::pi};
  Boundary boundary = Boundary::dirichlet;
};

void validate(const Domain& domain);

/// Mode indices; n[1] is zero in 1D.
struct Mode {
  std::array<int, 2> n{0, 0};
};

class Basis {
 public:
  Basis(const Domain& domain, int m, double p);

  const Domain& domain() const noexcept { return domain_; }
  int cutoff() const noexcept { return m_; }
  double exponent() const noexcept { return p_; }
  int dimension() const noexcept { return domain_.dimension; }

  /// Number of modes, i.e. dim V_m.
  std::size_t size() const noexcept { return modes_.size(); }
  std::span<const Mode> modes() const noexcept { return modes_; }

  int points_per_axis() const noexcept { return points_; }
  std::size_t grid_size() const noexcept { return grid_size_; }
  double node(int axis, int i) const;
  /// Quadrature weight of a single grid node.
  double node_weight() const noexcept { return weight_; }

  /// |k|^2 with k_i = n_i pi / L_i; the Laplacian eigenvalue is -|k|^2.
  double wavenumber_squared(std::size_t j) const;

  /// Direct evaluation of mode j at a point (no tables).
  double evaluate(std::size_t j, std::array<double, 2> x) const;

  void to_physical(std::span<const double> coeffs, std::span<double> grid) const;
  /// Quadrature approximation of <g, phi_j> for every mode.
  void to_spectral(std::span<const double> grid, std::span<double> coeffs) const;
  /// Grid values of d/dx_axis of the expansion.
  void gradient_to_physical(std::span<const double> coeffs, int axis,
                            std::span<double> grid) const;
  /// Quadrature of <g, d/dx_axis phi_j> for every mode.
  void gradient_to_spectral(std::span<const double> grid, int axis,
                            std::span<double> coeffs) const;

  static std::size_t mode_count(const Domain& domain, int m);
  static int quadrature_points(int m, double p);

 private:
  void transform(std::span<const double> in, std::span<double> out,
                 const std::array<const std::vector<double>*, 2>& tables,
                 bool forward) const;

  Domain domain_;
  int m_;
  double p_;
  int per_axis_;  // 1D indices per axis
  int offset_;    // first 1D index (1 for sine, 0 otherwise)
  int points_;
  std::size_t grid_size_;
  double weight_;
  std::vector<Mode> modes_;
  std::vector<std::size_t> dense_;  // mode j -> a * per_axis + b
  std::array<std::vector<double>, 2> values_;  // [axis][node * per_axis + a]
  std::array<std::vector<double>, 2> derivs_;
};

using BasisPtr = std::shared_ptr<const Basis>;

/// Orthonormal basis of V_m with a grid dealiased for exponent p.
BasisPtr make_basis(const Domain& domain, int m, double p);

namespace detail {

template <class Tag>
class CoefficientField {
 public:
  CoefficientField() = default;
  explicit CoefficientField(BasisPtr basis, int blocks = 1)
      : basis_(std::move(basis)), blocks_(blocks), coeffs_(basis_->size() * blocks, 0.0) {}
  CoefficientField(BasisPtr basis, std::vector<double> coeffs, int blocks = 1)
      : basis_(std::move(basis)), blocks_(blocks), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != basis_->size() * static_cast<std::size_t>(blocks_))
      throw ConfigError("coefficient vector does not match basis size");
  }

  const Basis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const noexcept { return basis_; }
  int blocks() const noexcept { return blocks_; }
  std::size_t block_size() const { return basis_->size(); }
  std::size_t size() const noexcept { return coeffs_.size(); }

  std::span<double> coeffs() noexcept { return coeffs_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::span<double> block(int b) { return {coeffs_.data() + b * block_size(), block_size()}; }
  std::span<const double> block(int b) const {
    return {coeffs_.data() + b * block_size(), block_size()};
  }
  double& operator[](std::size_t i) { return coeffs_[i]; }
  double operator[](std::size_t i) const { return coeffs_[i]; }

  /// Euclidean norm of the coefficients (equals the H-norm by orthonormality).
  double l2_norm() const;

 private:
  BasisPtr basis_;
  int blocks_ = 1;
  std::vector<double> coeffs_;
};

struct PrimalTag {};
struct DualTag {};

}  // namespace detail

/// Element of V_m: c_j are the coordinates in the orthonormal basis.
using SpectralField = detail::CoefficientField<detail::PrimalTag>;
/// Functional restricted to the basis: f_j = <f, phi_j>.
using DualField = detail::CoefficientField<detail::DualTag>;

std::vector<double> to_physical(const SpectralField& field, int block = 0);
SpectralField to_spectral(std::span<const double> grid, const BasisPtr& basis);

/// Pi_m: keep the first m-block of each component (Riesz identification).
SpectralField project(const DualField& f, int m);
SpectralField project(const DualField& f, const BasisPtr& target);
/// Pi_m on primal fields.
SpectralField project(const SpectralField& h, const BasisPtr& target);
/// Zero-pads a field into a finer basis with the same domain.
SpectralField embed(const SpectralField& field, const BasisPtr& finer);

double dot(std::span<const double> a, std::span<const double> b);
double pairing(const DualField& f, const SpectralField& v);

enum class Space { H, V1, V2, V };

/// Per-component realisation of V1 (H^s, s = 0 meaning L^2) and V2 (L^q).
struct BlockNorm {
  int sobolev_order = 1;
  double lebesgue = 2.0;
};

/// V1 norms combine components in l^2; V2 norms are summed (so the V2* norm is
/// the max over components).
double norm(const SpectralField& field, Space space, std::span<const BlockNorm> spec);
double dual_norm_v1(const DualField& f, std::span<const BlockNorm> spec);

double lp_norm(std::span<const double> grid, const Basis& basis, double p);
/// Sobolev multiplier (1 + |k_j|^2)^order.
double sobolev_weight(const Basis& basis, std::size_t j, int order);

/// |x|^p with fast paths for small integer p.
double abs_pow(double x, double p);

/// ||phi_j||_{L^p}, resolved far beyond the solver quadrature (exact up to
/// rounding for any p, not only even integers).
double mode_lp_norm(const Basis& basis, std::size_t j, double p);

struct GalerkinConstant {
  double exact = 0.0;       // sum_j (||phi_j||_{V1} + ||phi_j||_{V2})^2
  double paper_form = 0.0;  // M (1 + |k_1|^2 + ||phi_1||_{L^p}^{2/p})
};

/// V1 = H^1 (through quadrature of phi^2 + |grad phi|^2), V2 = L^p.
GalerkinConstant galerkin_constant(const Basis& basis, int m, double p);

}  // namespace tamed
