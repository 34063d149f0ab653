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

// Taming of the superlinear drift:
//
//   A2_l v = T_l(v) A2 v,   T_l(v) = 1 / (1 + n^{-1/2} |Pi_m A2 v|),
//
// so that |Pi_m A2_l v| <= sqrt(n) whatever v is.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tamed/model.hpp"
#include "tamed/spectral.hpp"

namespace tamed {

struct TamingContext {
  std::size_t n = 1;  // time steps
  int m = 1;          // Galerkin cutoff
};

void validate(const TamingContext& ctx);

/// x / (1 + x / sqrt(n)): the tamed magnitude of a drift of H-norm x.
double tamed_magnitude(double x, std::size_t n);

/// |Pi_m f|: l2 norm of the first m-block of each component.
double projected_norm(const DualField& f, int m);

/// T_l from an already evaluated A2 v. Throws NumericError on non-finite input.
double taming_factor(const DualField& a2v, const TamingContext& ctx);
double taming_factor(const ModelSpec& model, const SpectralField& v, const TamingContext& ctx);

DualField apply_tamed_A2(const ModelSpec& model, const SpectralField& v, const TamingContext& ctx);

struct TamingReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double max_ratio = 0.0;    // max of lhs / rhs (<= 1 when the bound holds)
  double max_excess = -1e300;  // max of lhs - rhs
  bool passed() const { return violations == 0; }
};

struct TamingCheckOptions {
  std::size_t samples = 1000;
  double radius = 5.0;
  std::uint64_t seed = 1;
};

/// |Pi_m A2_l v| <= sqrt(n).
TamingReport verify_tame_bound(const ModelSpec& model, const TamingContext& ctx,
                               const TamingCheckOptions& opt);
/// ||A2_l v||_{V2*} <= ||A2 v||_{V2*} and ||A2_l v||_{V2*}^{p*} <= K(1 + ||v||_{V2}^p);
/// the report's ratio is the growth inequality.
TamingReport verify_growth_preserved(const ModelSpec& model, const TamingContext& ctx,
                                     const TamingCheckOptions& opt);
/// 2 <A2_l v, v> <= K(1 + |v|^2).
TamingReport verify_weak_coercivity(const ModelSpec& model, const TamingContext& ctx,
                                    const TamingCheckOptions& opt);

/// ||A2_l v - A2 v||_{V2*} for each n (fixed v).
std::vector<double> taming_defect(const ModelSpec& model, const SpectralField& v, int m,
                                  const std::vector<std::size_t>& n_values);

}  // namespace tamed
