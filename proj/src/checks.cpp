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

#include "tamed/checks.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "tamed/operators.hpp"
#include "tamed/philox.hpp"

namespace tamed {

void Inequality::record(double excess) {
  ++evaluations;
  if (excess > max_violation) max_violation = excess;
  if (excess > 0.0) ++violations;
}

bool CheckReport::passed() const {
  return std::all_of(inequalities.begin(), inequalities.end(),
                     [](const Inequality& q) { return q.violations == 0; });
}

double CheckReport::max_violation() const {
  double out = -1e300;
  for (const auto& q : inequalities) out = std::max(out, q.max_violation);
  return out;
}

std::size_t CheckReport::violations() const {
  std::size_t n = 0;
  for (const auto& q : inequalities) n += q.violations;
  return n;
}

SpectralField random_field(const BasisPtr& basis, int blocks, double radius,
                           std::uint64_t seed, std::uint64_t index) {
  CounterStream rng(seed, index, 0x43484b);
  SpectralField v(basis, blocks);
  for (double& c : v.coeffs()) c = rng.uniform(-radius, radius);
  return v;
}

namespace {

double hs_difference_sq(const ModelSpec& model, const SpectralField& v, const SpectralField& w) {
  if (model.noise.kind == NoiseKind::additive) return 0.0;
  SpectralField e = v;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= w[i];
  // B is linear for the multiplicative kinds: Bv - Bw = B(v - w)
  return hilbert_schmidt_sq(model, e, v.basis().size());
}

double sq(double x) { return x * x; }

}  // namespace

CheckReport check_monotonicity(const ModelSpec& model, const CheckOptions& opt) {
  validate(model);
  const BasisPtr basis = make_model_basis(model, opt.m);
  CheckReport rep;
  rep.name = "monotonicity";
  rep.inequalities.push_back({"monotonicity"});
  auto& q = rep.inequalities[0];
  for (std::size_t s = 0; s < opt.samples; ++s) {
    const SpectralField v = random_field(basis, model.blocks(), opt.radius, opt.seed, 2 * s);
    const SpectralField w = random_field(basis, model.blocks(), opt.radius, opt.seed, 2 * s + 1);
    const DualField av = apply_A(model, v);
    const DualField aw = apply_A(model, w);
    double pair = 0.0, diff_sq = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double e = v[i] - w[i];
      pair += (av[i] - aw[i]) * e;
      diff_sq += e * e;
    }
    const double excess = 2.0 * pair + hs_difference_sq(model, v, w) - model.K * diff_sq;
    if (excess > q.max_violation) {
      rep.worst_v.assign(v.coeffs().begin(), v.coeffs().end());
      rep.worst_w.assign(w.coeffs().begin(), w.coeffs().end());
    }
    q.record(excess);
  }
  return rep;
}

CheckReport check_coercivity(const ModelSpec& model, const CheckOptions& opt) {
  validate(model);
  const BasisPtr basis = make_model_basis(model, opt.m);
  const auto spec = model.norms();
  CheckReport rep;
  rep.name = "coercivity";
  rep.inequalities = {Inequality{"coercivity.A1"}, Inequality{"coercivity.A2"}};
  for (std::size_t s = 0; s < opt.samples; ++s) {
    const SpectralField v = random_field(basis, model.blocks(), opt.radius, opt.seed, s);
    const double h2 = sq(v.l2_norm());
    const double v1 = norm(v, Space::V1, spec);
    const double lhs1 = 2.0 * pairing(apply_A1(model, v), v) +
                        hilbert_schmidt_sq(model, v, basis->size());
    const double rhs1 = -model.mu * v1 * v1 + model.K * (1.0 + h2);
    if (lhs1 - rhs1 > rep.inequalities[0].max_violation)
      rep.worst_v.assign(v.coeffs().begin(), v.coeffs().end());
    rep.inequalities[0].record(lhs1 - rhs1);
    const double lhs2 = 2.0 * pairing(apply_A2(model, v), v);
    rep.inequalities[1].record(lhs2 - model.K * (1.0 + h2));
  }
  return rep;
}

CheckReport check_growth(const ModelSpec& model, const CheckOptions& opt) {
  validate(model);
  const BasisPtr basis = make_model_basis(model, opt.m);
  const auto spec = model.norms();
  const double p = model.p;
  const double p_star = p / (p - 1.0);
  CheckReport rep;
  rep.name = "growth";
  rep.inequalities = {Inequality{"growth.A1"}, Inequality{"growth.A2"}, Inequality{"growth.B"}};
  for (std::size_t s = 0; s < opt.samples; ++s) {
    const SpectralField v = random_field(basis, model.blocks(), opt.radius, opt.seed, s);
    const double v1 = norm(v, Space::V1, spec);
    const double v2 = norm(v, Space::V2, spec);
    const double a1 = dual_norm_v1(apply_A1(model, v), spec);
    rep.inequalities[0].record(a1 * a1 - model.K * (1.0 + v1 * v1));
    const double a2 = dual_norm_v2(model, *basis, a2_grid(model, v));
    rep.inequalities[1].record(std::pow(a2, p_star) - model.K * (1.0 + std::pow(v2, p)));
    rep.inequalities[2].record(hilbert_schmidt_sq(model, v, basis->size()) -
                               model.K * (1.0 + sq(v.l2_norm())));
  }
  return rep;
}

HemicontinuityReport check_hemicontinuity(const ModelSpec& model, const SpectralField& v,
                                          const SpectralField& w, const SpectralField& z,
                                          const std::vector<double>& epsilons,
                                          double tolerance) {
  if (epsilons.empty()) throw ConfigError("hemicontinuity: no epsilons given");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) throw ConfigError("hemicontinuity: epsilons must be positive");
    if (i && !(epsilons[i] < epsilons[i - 1]))
      throw ConfigError("hemicontinuity: epsilons must be strictly decreasing");
  }
  HemicontinuityReport rep;
  rep.epsilons = epsilons;
  rep.tolerance = tolerance;
  const double base = pairing(apply_A(model, v), z);
  for (double eps : epsilons) {
    SpectralField shifted = v;
    for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += eps * w[i];
    rep.differences.push_back(std::fabs(pairing(apply_A(model, shifted), z) - base));
  }
  rep.monotone = true;
  for (std::size_t i = 1; i < rep.differences.size(); ++i) {
    const double prev = rep.differences[i - 1];
    if (rep.differences[i] > prev * (1.0 + 1e-9) + 1e-300) rep.monotone = false;
  }
  const double slope = rep.differences.front() / epsilons.front();
  rep.passed = rep.monotone && rep.differences.back() <= tolerance * std::max(1.0, 2.0 * slope);
  return rep;
}

double interpolation_exponent(int dimension, double p) {
  return dimension * (0.5 - 1.0 / p);
}

InterpolationReport check_interpolation(const ModelSpec& model, std::size_t samples,
                                        const std::vector<int>& m_values, std::uint64_t seed) {
  const int d = model.domain.dimension;
  InterpolationReport rep;
  rep.lambda = interpolation_exponent(d, model.p);
  rep.lambda_bound = 2.0 / model.p;
  if (!(rep.lambda < rep.lambda_bound)) {
    std::ostringstream os;
    os << "interpolation exponent lambda = " << rep.lambda << " is not below 2/p = "
       << rep.lambda_bound << ": p = " << model.p << " is outside the admissible range [2, "
       << max_exponent(d) << ") for d = " << d;
    throw ConfigError(os.str());
  }
  const auto spec = model.norms();
  const double lam = rep.lambda;
  rep.m_values = m_values;
  for (std::size_t mi = 0; mi < m_values.size(); ++mi) {
    const BasisPtr basis = make_model_basis(model, m_values[mi]);
    CounterStream rng(seed, static_cast<std::uint64_t>(m_values[mi]), 0x495450);
    double best = 0.0;
    SpectralField v(basis, model.blocks());
    for (std::size_t s = 0; s <= samples; ++s) {
      if (s == samples) {
        // the first mode on its own
        std::fill(v.coeffs().begin(), v.coeffs().end(), 0.0);
        v[0] = 1.0;
      } else {
        const double decay = rng.uniform(0.0, 3.0);
        for (int b = 0; b < model.blocks(); ++b) {
          auto c = v.block(b);
          for (std::size_t j = 0; j < c.size(); ++j)
            c[j] = rng.uniform(-1.0, 1.0) *
                   std::pow(1.0 + basis->wavenumber_squared(j), -0.5 * decay);
        }
      }
      const double h = v.l2_norm();
      if (h == 0.0) continue;
      const double ratio = norm(v, Space::V2, spec) /
                           (std::pow(norm(v, Space::V1, spec), lam) * std::pow(h, 1.0 - lam));
      best = std::max(best, ratio);
    }
    rep.lambda_hat.push_back(best);
  }
  rep.max_growth = 0.0;
  for (double L : rep.lambda_hat)
    rep.max_growth = std::max(rep.max_growth, L / rep.lambda_hat.front() - 1.0);
  rep.stable = rep.max_growth < 0.05;
  return rep;
}

bool ProjectionReport::passed(double tol) const {
  return idempotence_error <= tol && duality_error <= tol && self_adjoint_error <= tol &&
         riesz_error <= tol && max_contraction_excess <= 0.0;
}

ProjectionReport check_projection(const ModelSpec& model, int m, std::size_t samples,
                                  std::uint64_t seed) {
  const BasisPtr fine = make_model_basis(model, 2 * m);
  const BasisPtr coarse = make_model_basis(model, m);
  const int blocks = model.blocks();
  ProjectionReport rep;
  rep.samples = samples;
  auto as_dual = [](const SpectralField& h) {
    return DualField(h.basis_ptr(), {h.coeffs().begin(), h.coeffs().end()}, h.blocks());
  };
  for (std::size_t s = 0; s < samples; ++s) {
    const SpectralField g = random_field(fine, blocks, 1.0, seed, 4 * s);
    const SpectralField h = random_field(fine, blocks, 1.0, seed, 4 * s + 1);
    const SpectralField vm = random_field(coarse, blocks, 1.0, seed, 4 * s + 2);
    const DualField f = as_dual(random_field(fine, blocks, 1.0, seed, 4 * s + 3));

    // (1) Pi_m v = v on V_m
    const SpectralField v_fine = embed(vm, fine);
    const SpectralField pv = project(v_fine, coarse);
    double e = 0.0;
    for (std::size_t i = 0; i < pv.size(); ++i) e = std::max(e, std::fabs(pv[i] - vm[i]));
    rep.idempotence_error = std::max(rep.idempotence_error, e);

    // (2) <f, Pi_m v> = <v, Pi_m f> for v in the fine space
    const SpectralField ph = embed(project(h, coarse), fine);
    const SpectralField pf = embed(project(f, coarse), fine);
    rep.duality_error =
        std::max(rep.duality_error, std::fabs(dot(f.coeffs(), ph.coeffs()) - dot(h.coeffs(), pf.coeffs())));

    // (3) (Pi_m g, h) = (Pi_m h, g) and |Pi_m h| <= |h|
    const SpectralField pg = embed(project(g, coarse), fine);
    rep.self_adjoint_error = std::max(
        rep.self_adjoint_error, std::fabs(dot(pg.coeffs(), h.coeffs()) - dot(ph.coeffs(), g.coeffs())));
    rep.max_contraction_excess =
        std::max(rep.max_contraction_excess, ph.l2_norm() - h.l2_norm());

    // Riesz: (Pi_m f, v) = <f, v> for v in V_m
    rep.riesz_error = std::max(
        rep.riesz_error, std::fabs(dot(pf.coeffs(), v_fine.coeffs()) - dot(f.coeffs(), v_fine.coeffs())));
  }
  return rep;
}

bool AssumptionSuite::passed() const {
  return monotonicity.passed() && coercivity.passed() && growth.passed() &&
         hemicontinuity.passed && interpolation.stable && projection.passed();
}

AssumptionSuite run_assumption_suite(const ModelSpec& model, const CheckOptions& opt,
                                     const std::vector<int>& interpolation_m) {
  AssumptionSuite suite;
  suite.model = model;
  suite.options = opt;
  suite.monotonicity = check_monotonicity(model, opt);
  suite.coercivity = check_coercivity(model, opt);
  suite.growth = check_growth(model, opt);

  const BasisPtr basis = make_model_basis(model, opt.m);
  const SpectralField v = random_field(basis, model.blocks(), 1.0, opt.seed, 1u << 30);
  const SpectralField w = random_field(basis, model.blocks(), 1.0, opt.seed, (1u << 30) + 1);
  const SpectralField z = random_field(basis, model.blocks(), 1.0, opt.seed, (1u << 30) + 2);
  suite.hemicontinuity =
      check_hemicontinuity(model, v, w, z, {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6});
  suite.interpolation = check_interpolation(model, opt.samples, interpolation_m, opt.seed);
  suite.projection = check_projection(model, opt.m, std::min<std::size_t>(opt.samples, 200), opt.seed);
  return suite;
}

std::string serialize(const AssumptionSuite& s) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "name = " << to_string(s.model.kind) << '\n';
  os << "dimension = " << s.model.domain.dimension << '\n';
  os << "p = " << s.model.p << '\n';
  os << "K = " << s.model.K << '\n';
  os << "mu = " << s.model.mu << '\n';
  os << "m = " << s.options.m << '\n';
  os << "samples = " << s.options.samples << '\n';
  os << "radius = " << s.options.radius << '\n';
  os << "lambda = " << s.interpolation.lambda << '\n';
  os << "lambda_bound = " << s.interpolation.lambda_bound << '\n';
  for (std::size_t i = 0; i < s.interpolation.m_values.size(); ++i)
    os << "Lambda_hat.m" << s.interpolation.m_values[i] << " = " << s.interpolation.lambda_hat[i]
       << '\n';
  os << "Lambda_hat = "
     << (s.interpolation.lambda_hat.empty()
             ? 0.0
             : *std::max_element(s.interpolation.lambda_hat.begin(), s.interpolation.lambda_hat.end()))
     << '\n';
  os << "Lambda_hat.max_growth = " << s.interpolation.max_growth << '\n';
  for (const CheckReport* r : {&s.monotonicity, &s.coercivity, &s.growth})
    for (const auto& q : r->inequalities) {
      os << q.name << ".max_violation = " << q.max_violation << '\n';
      os << q.name << ".violations = " << q.violations << '\n';
    }
  os << "hemicontinuity.difference_at_min_eps = "
     << (s.hemicontinuity.differences.empty() ? 0.0 : s.hemicontinuity.differences.back()) << '\n';
  os << "hemicontinuity.monotone = " << (s.hemicontinuity.monotone ? 1 : 0) << '\n';
  os << "projection.idempotence_error = " << s.projection.idempotence_error << '\n';
  os << "projection.duality_error = " << s.projection.duality_error << '\n';
  os << "projection.self_adjoint_error = " << s.projection.self_adjoint_error << '\n';
  os << "projection.riesz_error = " << s.projection.riesz_error << '\n';
  os << "projection.max_contraction_excess = " << s.projection.max_contraction_excess << '\n';
  os << "passed = " << (s.passed() ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace tamed
