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

#include "tamed/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace tamed {

void validate(const Domain& domain) {
  if (domain.dimension != 1 && domain.dimension != 2)
    throw ConfigError("domain dimension must be 1 or 2, got " +
                      std::to_string(domain.dimension));
  for (int a = 0; a < domain.dimension; ++a)
    if (!(domain.length[a] > 0.0) || !std::isfinite(domain.length[a]))
      throw ConfigError("domain side lengths must be positive");
  if (domain.boundary == Boundary::none && domain.dimension != 1)
    throw ConfigError("the scalar (single-mode) realisation is one-dimensional");
}

namespace {

int per_axis_count(Boundary b, int m) {
  switch (b) {
    case Boundary::dirichlet: return m;
    case Boundary::neumann: return m + 1;
    case Boundary::none: return 1;
  }
  return 0;
}

}  // namespace

std::size_t Basis::mode_count(const Domain& domain, int m) {
  const auto q = static_cast<std::size_t>(per_axis_count(domain.boundary, m));
  return domain.dimension == 1 ? q : q * q;
}

int Basis::quadrature_points(int m, double p) {
  return std::max(2 * m, static_cast<int>(std::ceil((p / 2.0 + 1.0) * m)));
}

Basis::Basis(const Domain& domain, int m, double p) : domain_(domain), m_(m), p_(p) {
  validate(domain);
  if (m < 1) throw ConfigError("Galerkin cutoff m must be >= 1, got " + std::to_string(m));
  if (!(p >= 2.0) || !std::isfinite(p))
    throw ConfigError("exponent p must be >= 2, got " + std::to_string(p));

  per_axis_ = per_axis_count(domain.boundary, m);
  offset_ = domain.boundary == Boundary::dirichlet ? 1 : 0;
  points_ = domain.boundary == Boundary::none ? 1 : quadrature_points(m, p);
  const int d = domain.dimension;
  grid_size_ = d == 1 ? static_cast<std::size_t>(points_)
                      : static_cast<std::size_t>(points_) * points_;
  weight_ = 1.0;
  for (int a = 0; a < d; ++a) weight_ *= domain.length[a] / points_;

  if (d == 1) {
    for (int a = 0; a < per_axis_; ++a) {
      modes_.push_back(Mode{{a + offset_, 0}});
      dense_.push_back(static_cast<std::size_t>(a));
    }
  } else {
    auto push = [&](int a, int b) {
      modes_.push_back(Mode{{a + offset_, b + offset_}});
      dense_.push_back(static_cast<std::size_t>(a) * per_axis_ + b);
    };
    for (int s = 0; s < per_axis_; ++s) {
      if (s == 0) {
        push(0, 0);
        continue;
      }
      for (int a = 0; a < s; ++a) push(a, s);
      for (int b = 0; b < s; ++b) push(s, b);
      push(s, s);
    }
  }

  for (int axis = 0; axis < d; ++axis) {
    const double len = domain.length[axis];
    auto& val = values_[axis];
    auto& der = derivs_[axis];
    val.assign(static_cast<std::size_t>(points_) * per_axis_, 0.0);
    der.assign(val.size(), 0.0);
    for (int i = 0; i < points_; ++i) {
      const double x = node(axis, i);
      for (int a = 0; a < per_axis_; ++a) {
        const int n = a + offset_;
        const double k = n * std::numbers::pi / len;
        const std::size_t at = static_cast<std::size_t>(i) * per_axis_ + a;
        switch (domain.boundary) {
          case Boundary::dirichlet:
            val[at] = std::sqrt(2.0 / len) * std::sin(k * x);
            der[at] = std::sqrt(2.0 / len) * k * std::cos(k * x);
            break;
          case Boundary::neumann:
            if (n == 0) {
              val[at] = 1.0 / std::sqrt(len);
              der[at] = 0.0;
            } else {
              val[at] = std::sqrt(2.0 / len) * std::cos(k * x);
              der[at] = -std::sqrt(2.0 / len) * k * std::sin(k * x);
            }
            break;
          case Boundary::none:
            val[at] = 1.0 / std::sqrt(len);
            der[at] = 0.0;
            break;
        }
      }
    }
  }
}

double Basis::node(int axis, int i) const {
  return (i + 0.5) * domain_.length[axis] / points_;
}

double Basis::wavenumber_squared(std::size_t j) const {
  double k2 = 0.0;
  for (int a = 0; a < domain_.dimension; ++a) {
    const double k = modes_[j].n[a] * std::numbers::pi / domain_.length[a];
    k2 += k * k;
  }
  return k2;
}

double Basis::evaluate(std::size_t j, std::array<double, 2> x) const {
  double v = 1.0;
  for (int a = 0; a < domain_.dimension; ++a) {
    const double len = domain_.length[a];
    const int n = modes_[j].n[a];
    const double k = n * std::numbers::pi / len;
    switch (domain_.boundary) {
      case Boundary::dirichlet: v *= std::sqrt(2.0 / len) * std::sin(k * x[a]); break;
      case Boundary::neumann:
        v *= n == 0 ? 1.0 / std::sqrt(len) : std::sqrt(2.0 / len) * std::cos(k * x[a]);
        break;
      case Boundary::none: v *= 1.0 / std::sqrt(len); break;
    }
  }
  return v;
}

void Basis::transform(std::span<const double> in, std::span<double> out,
                      const std::array<const std::vector<double>*, 2>& tables,
                      bool forward) const {
  const std::size_t q = static_cast<std::size_t>(per_axis_);
  const std::size_t N = static_cast<std::size_t>(points_);
  const auto& t0 = *tables[0];

  if (domain_.dimension == 1) {
    if (forward) {
      for (std::size_t i = 0; i < N; ++i) {
        const double* row = t0.data() + i * q;
        double s = 0.0;
        for (std::size_t a = 0; a < q; ++a) s += row[a] * in[a];
        out[i] = s;
      }
    } else {
      std::fill(out.begin(), out.end(), 0.0);
      for (std::size_t i = 0; i < N; ++i) {
        const double* row = t0.data() + i * q;
        const double g = in[i] * weight_;
        for (std::size_t a = 0; a < q; ++a) out[a] += row[a] * g;
      }
    }
    return;
  }

  const auto& t1 = *tables[1];
  thread_local std::vector<double> dense, mid;
  if (forward) {
    dense.assign(q * q, 0.0);
    for (std::size_t j = 0; j < modes_.size(); ++j) dense[dense_[j]] = in[j];
    // mid[x1][b] = sum_a T0[x1][a] C[a][b]
    mid.assign(N * q, 0.0);
    for (std::size_t x1 = 0; x1 < N; ++x1) {
      const double* row = t0.data() + x1 * q;
      double* m = mid.data() + x1 * q;
      for (std::size_t a = 0; a < q; ++a) {
        const double r = row[a];
        if (r == 0.0) continue;
        const double* c = dense.data() + a * q;
        for (std::size_t b = 0; b < q; ++b) m[b] += r * c[b];
      }
    }
    for (std::size_t x1 = 0; x1 < N; ++x1) {
      const double* m = mid.data() + x1 * q;
      for (std::size_t x2 = 0; x2 < N; ++x2) {
        const double* row = t1.data() + x2 * q;
        double s = 0.0;
        for (std::size_t b = 0; b < q; ++b) s += row[b] * m[b];
        out[x1 * N + x2] = s;
      }
    }
  } else {
    // mid[x1][b] = sum_x2 T1[x2][b] G[x1][x2]
    mid.assign(N * q, 0.0);
    for (std::size_t x1 = 0; x1 < N; ++x1) {
      double* m = mid.data() + x1 * q;
      for (std::size_t x2 = 0; x2 < N; ++x2) {
        const double g = in[x1 * N + x2];
        const double* row = t1.data() + x2 * q;
        for (std::size_t b = 0; b < q; ++b) m[b] += row[b] * g;
      }
    }
    dense.assign(q * q, 0.0);
    for (std::size_t x1 = 0; x1 < N; ++x1) {
      const double* row = t0.data() + x1 * q;
      const double* m = mid.data() + x1 * q;
      for (std::size_t a = 0; a < q; ++a) {
        const double r = row[a] * weight_;
        double* c = dense.data() + a * q;
        for (std::size_t b = 0; b < q; ++b) c[b] += r * m[b];
      }
    }
    for (std::size_t j = 0; j < modes_.size(); ++j) out[j] = dense[dense_[j]];
  }
}

void Basis::to_physical(std::span<const double> coeffs, std::span<double> grid) const {
  if (coeffs.size() != size() || grid.size() != grid_size())
    throw ConfigError("to_physical: size mismatch");
  transform(coeffs, grid, {&values_[0], &values_[1]}, true);
}

void Basis::to_spectral(std::span<const double> grid, std::span<double> coeffs) const {
  if (coeffs.size() != size() || grid.size() != grid_size())
    throw ConfigError("to_spectral: grid has " + std::to_string(grid.size()) +
                      " values, basis quadrature expects " + std::to_string(grid_size()));
  transform(grid, coeffs, {&values_[0], &values_[1]}, false);
}

void Basis::gradient_to_physical(std::span<const double> coeffs, int axis,
                                 std::span<double> grid) const {
  if (axis < 0 || axis >= dimension()) throw ConfigError("gradient axis out of range");
  if (coeffs.size() != size() || grid.size() != grid_size())
    throw ConfigError("gradient_to_physical: size mismatch");
  std::array<const std::vector<double>*, 2> t{&values_[0], &values_[1]};
  t[axis] = &derivs_[axis];
  transform(coeffs, grid, t, true);
}

void Basis::gradient_to_spectral(std::span<const double> grid, int axis,
                                 std::span<double> coeffs) const {
  if (axis < 0 || axis >= dimension()) throw ConfigError("gradient axis out of range");
  if (coeffs.size() != size() || grid.size() != grid_size())
    throw ConfigError("gradient_to_spectral: size mismatch");
  std::array<const std::vector<double>*, 2> t{&values_[0], &values_[1]};
  t[axis] = &derivs_[axis];
  transform(grid, coeffs, t, false);
}

BasisPtr make_basis(const Domain& domain, int m, double p) {
  return std::make_shared<const Basis>(domain, m, p);
}

namespace detail {
template <class Tag>
double CoefficientField<Tag>::l2_norm() const {
  return std::sqrt(dot(coeffs_, coeffs_));
}
template class CoefficientField<PrimalTag>;
template class CoefficientField<DualTag>;
}  // namespace detail

std::vector<double> to_physical(const SpectralField& field, int block) {
  std::vector<double> grid(field.basis().grid_size());
  field.basis().to_physical(field.block(block), grid);
  return grid;
}

SpectralField to_spectral(std::span<const double> grid, const BasisPtr& basis) {
  SpectralField out(basis);
  basis->to_spectral(grid, out.coeffs());
  return out;
}

namespace {

bool same_geometry(const Basis& a, const Basis& b) {
  const auto& da = a.domain();
  const auto& db = b.domain();
  if (da.dimension != db.dimension || da.boundary != db.boundary) return false;
  for (int i = 0; i < da.dimension; ++i)
    if (da.length[i] != db.length[i]) return false;
  return true;
}

template <class In>
SpectralField transfer(const In& in, const BasisPtr& target) {
  if (!same_geometry(in.basis(), *target))
    throw ConfigError("basis transfer between different domains");
  SpectralField out(target, in.blocks());
  const std::size_t n = std::min(in.block_size(), target->size());
  for (int b = 0; b < in.blocks(); ++b) {
    auto src = in.block(b);
    auto dst = out.block(b);
    std::copy_n(src.begin(), n, dst.begin());
  }
  return out;
}

}  // namespace

SpectralField project(const DualField& f, const BasisPtr& target) {
  if (target->cutoff() > f.basis().cutoff())
    throw ConfigError("projection cutoff " + std::to_string(target->cutoff()) +
                      " exceeds available modes (cutoff " +
                      std::to_string(f.basis().cutoff()) + ")");
  return transfer(f, target);
}

SpectralField project(const DualField& f, int m) {
  if (m == f.basis().cutoff()) return SpectralField(f.basis_ptr(), {f.coeffs().begin(), f.coeffs().end()}, f.blocks());
  if (m > f.basis().cutoff())
    throw ConfigError("projection cutoff " + std::to_string(m) +
                      " exceeds available modes (cutoff " +
                      std::to_string(f.basis().cutoff()) + ")");
  return transfer(f, make_basis(f.basis().domain(), m, f.basis().exponent()));
}

SpectralField project(const SpectralField& h, const BasisPtr& target) {
  if (target->cutoff() > h.basis().cutoff())
    throw ConfigError("projection target is finer than the field");
  return transfer(h, target);
}

SpectralField embed(const SpectralField& field, const BasisPtr& finer) {
  if (finer->cutoff() < field.basis().cutoff())
    throw ConfigError("embed target is coarser than the field");
  return transfer(field, finer);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double pairing(const DualField& f, const SpectralField& v) {
  if (f.basis().size() != v.basis().size() || f.blocks() != v.blocks())
    throw ConfigError("pairing: basis mismatch");
  return dot(f.coeffs(), v.coeffs());
}

double abs_pow(double x, double p) {
  const double a = std::fabs(x);
  if (p == 2.0) return a * a;
  if (p == 3.0) return a * a * a;
  if (p == 4.0) {
    const double s = a * a;
    return s * s;
  }
  if (p == 1.0) return a;
  return std::pow(a, p);
}

double lp_norm(std::span<const double> grid, const Basis& basis, double p) {
  double s = 0.0;
  for (double g : grid) s += abs_pow(g, p);
  s *= basis.node_weight();
  if (p == 2.0) return std::sqrt(s);
  return std::pow(s, 1.0 / p);
}

double sobolev_weight(const Basis& basis, std::size_t j, int order) {
  const double w = 1.0 + basis.wavenumber_squared(j);
  double out = 1.0;
  for (int i = 0; i < order; ++i) out *= w;
  return out;
}

namespace {

double block_sobolev_sq(const Basis& basis, std::span<const double> c, int order) {
  double s = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) s += sobolev_weight(basis, j, order) * c[j] * c[j];
  return s;
}

}  // namespace

double norm(const SpectralField& field, Space space, std::span<const BlockNorm> spec) {
  if (spec.size() != static_cast<std::size_t>(field.blocks()))
    throw ConfigError("norm: one BlockNorm per component required");
  const Basis& basis = field.basis();
  switch (space) {
    case Space::H: return field.l2_norm();
    case Space::V1: {
      double s = 0.0;
      for (int b = 0; b < field.blocks(); ++b)
        s += block_sobolev_sq(basis, field.block(b), spec[b].sobolev_order);
      return std::sqrt(s);
    }
    case Space::V2: {
      double s = 0.0;
      std::vector<double> grid(basis.grid_size());
      for (int b = 0; b < field.blocks(); ++b) {
        if (spec[b].lebesgue == 2.0) {
          s += std::sqrt(dot(field.block(b), field.block(b)));
          continue;
        }
        basis.to_physical(field.block(b), grid);
        s += lp_norm(grid, basis, spec[b].lebesgue);
      }
      return s;
    }
    case Space::V:
      return norm(field, Space::V1, spec) + norm(field, Space::V2, spec);
  }
  return 0.0;
}

double dual_norm_v1(const DualField& f, std::span<const BlockNorm> spec) {
  if (spec.size() != static_cast<std::size_t>(f.blocks()))
    throw ConfigError("dual norm: one BlockNorm per component required");
  double s = 0.0;
  for (int b = 0; b < f.blocks(); ++b) {
    auto c = f.block(b);
    for (std::size_t j = 0; j < c.size(); ++j)
      s += c[j] * c[j] / sobolev_weight(f.basis(), j, spec[b].sobolev_order);
  }
  return std::sqrt(s);
}

namespace {

// int_0^pi |sin t|^p dt on a fine midpoint grid; the integrand is periodic, so
// the rule converges like N^-(p+1) even for non-even p.
double sine_power_integral(double p) {
  thread_local double cached_p = -1.0, cached = 0.0;
  if (p == cached_p) return cached;
  constexpr int kPoints = 1 << 14;
  const double h = std::numbers::pi / kPoints;
  double s = 0.0;
  for (int i = 0; i < kPoints; ++i) s += abs_pow(std::sin((i + 0.5) * h), p);
  cached_p = p;
  cached = s * h;
  return cached;
}

}  // namespace

double mode_lp_norm(const Basis& basis, std::size_t j, double p) {
  if (j >= basis.size()) throw ConfigError("mode_lp_norm: mode index out of range");
  const Domain& dom = basis.domain();
  // every non-constant factor sqrt(2/L) sin(n pi x / L) has the same L^p norm
  const double oscillating_integral = sine_power_integral(p) / std::numbers::pi;
  double out = 1.0;
  for (int a = 0; a < dom.dimension; ++a) {
    const double len = dom.length[a];
    const bool constant = dom.boundary == Boundary::none ||
                          (dom.boundary == Boundary::neumann && basis.modes()[j].n[a] == 0);
    out *= constant ? std::pow(len, 1.0 / p - 0.5)
                    : std::sqrt(2.0 / len) * std::pow(len * oscillating_integral, 1.0 / p);
  }
  return out;
}

GalerkinConstant galerkin_constant(const Basis& basis, int m, double p) {
  const Basis sub(basis.domain(), m, p);
  const std::size_t M = sub.size();
  const int d = sub.dimension();
  std::vector<double> unit(M, 0.0), grid(sub.grid_size()), grad(sub.grid_size());

  GalerkinConstant out;
  double lp_first = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    std::fill(unit.begin(), unit.end(), 0.0);
    unit[j] = 1.0;
    double h1 = 0.0;
    sub.to_physical(unit, grid);
    for (double g : grid) h1 += g * g;
    for (int a = 0; a < d; ++a) {
      sub.gradient_to_physical(unit, a, grad);
      for (double g : grad) h1 += g * g;
    }
    const double v1 = std::sqrt(h1 * sub.node_weight());
    const double v2 = mode_lp_norm(sub, j, p);
    out.exact += (v1 + v2) * (v1 + v2);
    if (j == 0) lp_first = v2;
  }
  const double c_p = std::pow(lp_first, 2.0 / p);
  out.paper_form = static_cast<double>(M) * (1.0 + sub.wavenumber_squared(0) + c_p);
  return out;
}

}  // namespace tamed
