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

// Numerical falsification of the structural assumptions on (A, B): random
// fields in V_m are plugged into each inequality and the worst excess of the
// left side over the right side is reported. A non-positive maximum means the
// sample failed to refute the inequality; it is not a proof.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tamed/model.hpp"
#include "tamed/spectral.hpp"

namespace tamed {

struct CheckOptions {
  int m = 8;
  std::size_t samples = 500;
  double radius = 5.0;
  std::uint64_t seed = 1;
};

struct Inequality {
  std::string name;
  double max_violation = -1e300;  // max over samples of (lhs - rhs)
  std::size_t violations = 0;     // samples with lhs - rhs > 0
  std::size_t evaluations = 0;

  void record(double excess);
};

struct CheckReport {
  std::string name;
  std::vector<Inequality> inequalities;
  std::vector<double> worst_v;  // coefficients of the worst sample (first inequality)
  std::vector<double> worst_w;

  bool passed() const;
  double max_violation() const;
  std::size_t violations() const;
};

/// Coefficients i.i.d. uniform on [-radius, radius] over every component's m-block.
SpectralField random_field(const BasisPtr& basis, int blocks, double radius,
                           std::uint64_t seed, std::uint64_t index);

/// 2<Av - Aw, v - w> + ||Bv - Bw||^2 <= K |v - w|^2
CheckReport check_monotonicity(const ModelSpec& model, const CheckOptions& opt);
/// 2<A1 v, v> + ||B1 v||^2 <= -mu ||v||_{V1}^2 + K(1 + |v|^2) and
/// 2<A2 v, v> + ||B2 v||^2 <= K(1 + |v|^2), with B1 = B, B2 = 0.
CheckReport check_coercivity(const ModelSpec& model, const CheckOptions& opt);
/// ||A1 v||_{V1*}^2 <= K(1 + ||v||_{V1}^2), ||A2 v||_{V2*}^{p*} <= K(1 + ||v||_{V2}^p),
/// ||B v||^2 <= K(1 + |v|^2).
CheckReport check_growth(const ModelSpec& model, const CheckOptions& opt);

struct HemicontinuityReport {
  std::vector<double> epsilons;
  std::vector<double> differences;  // |<A(v + eps w), z> - <A v, z>|
  double tolerance = 1e-6;
  bool monotone = false;
  bool passed = false;
};

/// epsilons must be positive and strictly decreasing. Passes when the
/// differences never increase and the last one is below
/// tolerance * max(1, 2 d_0 / eps_0), i.e. relative to the observed slope.
HemicontinuityReport check_hemicontinuity(const ModelSpec& model, const SpectralField& v,
                                          const SpectralField& w, const SpectralField& z,
                                          const std::vector<double>& epsilons,
                                          double tolerance = 1e-6);

/// Gagliardo-Nirenberg exponent d (1/2 - 1/p).
double interpolation_exponent(int dimension, double p);

struct InterpolationReport {
  double lambda = 0.0;
  double lambda_bound = 0.0;  // 2/p
  std::vector<int> m_values;
  std::vector<double> lambda_hat;  // empirical Lambda per m
  double max_growth = 0.0;         // max_m Lambda(m) / Lambda(m_0) - 1
  bool stable = false;             // max_growth < 5%
};

/// Empirical Lambda = max ||v||_{V2} / (||v||_{V1}^lambda |v|^{1-lambda}) over
/// random trigonometric polynomials with random spectral decay. Throws
/// ConfigError when lambda >= 2/p.
InterpolationReport check_interpolation(const ModelSpec& model, std::size_t samples,
                                        const std::vector<int>& m_values,
                                        std::uint64_t seed = 1);

struct ProjectionReport {
  double idempotence_error = 0.0;     // |Pi_m v - v| for v in V_m
  double duality_error = 0.0;         // |<f, Pi_m v> - <v, Pi_m f>|
  double self_adjoint_error = 0.0;    // |(Pi_m g, h) - (Pi_m h, g)|
  double riesz_error = 0.0;           // |(Pi_m f, g) - <f, g>| for g in V_m
  double max_contraction_excess = 0.0;  // max(|Pi_m h| - |h|)
  std::size_t samples = 0;
  bool passed(double tol = 1e-12) const;
};

/// Pi_m from a basis with cutoff 2m onto V_m.
ProjectionReport check_projection(const ModelSpec& model, int m, std::size_t samples,
                                  std::uint64_t seed = 1);

struct AssumptionSuite {
  ModelSpec model;
  CheckOptions options;
  CheckReport monotonicity, coercivity, growth;
  HemicontinuityReport hemicontinuity;
  InterpolationReport interpolation;
  ProjectionReport projection;

  bool passed() const;
};

AssumptionSuite run_assumption_suite(const ModelSpec& model, const CheckOptions& opt,
                                     const std::vector<int>& interpolation_m = {4, 8, 16, 32});

/// Flat `key = value` block, one entry per line.
std::string serialize(const AssumptionSuite& suite);

}  // namespace tamed
