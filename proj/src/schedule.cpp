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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tamed/experiments.hpp"
#include "tamed/operators.hpp"

namespace tamed {

std::string_view to_string(ScheduleRule rule) {
  return rule == ScheduleRule::paper_m2 ? "paper_m2" : "exact_c4";
}

ScheduleRule parse_schedule_rule(std::string_view s) {
  if (s == "paper_m2") return ScheduleRule::paper_m2;
  if (s == "exact_c4") return ScheduleRule::exact_c4;
  throw ConfigError("unknown schedule rule '" + std::string(s) +
                    "' (expected paper_m2 or exact_c4)");
}

std::size_t Schedule::k_max() const {
  std::size_t k = 1;
  for (const Level& l : levels) k = std::max(k, l.k);
  return k;
}

namespace {

// floor that does not lose exact integers to pow() rounding
std::size_t floor_power(double base, double exponent) {
  const double r = std::pow(base, exponent);
  const double nearest = std::round(r);
  if (std::abs(r - nearest) <= 1e-9 * nearest) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::floor(r));
}

}  // namespace

std::size_t paper_target(int m, double delta) { return floor_power(m, 2.0 + delta); }

std::size_t exact_target(double c_exact, double delta) {
  return floor_power(c_exact, 1.0 + delta / 2.0);
}

std::optional<std::size_t> divisor_at_or_above(std::size_t n_max, std::size_t target) {
  if (target == 0) target = 1;
  for (std::size_t d = target; d <= n_max; ++d)
    if (n_max % d == 0) return d;
  return std::nullopt;
}

Schedule make_schedule(const ModelSpec& model, const std::vector<int>& m_list, double delta,
                       ScheduleRule rule, std::size_t n_max, double T) {
  if (m_list.empty()) throw ConfigError("schedule: m list is empty");
  if (!(delta > 0.0)) throw ConfigError("schedule: delta must be > 0");
  if (n_max < 1) throw ConfigError("schedule: n_max must be >= 1");
  if (!(T > 0.0)) throw ConfigError("schedule: T must be > 0");
  for (std::size_t i = 0; i < m_list.size(); ++i) {
    if (m_list[i] < 1) throw ConfigError("schedule: m values must be >= 1");
    if (i > 0 && m_list[i] <= m_list[i - 1])
      throw ConfigError("schedule: m values must be strictly increasing");
  }
  Schedule s;
  s.delta = delta;
  s.rule = rule;
  s.n_max = n_max;
  s.T = T;
  for (int m : m_list) {
    Level l;
    l.m = m;
    const GalerkinConstant c = galerkin_constant(model, m);
    l.c_exact = c.exact;
    l.c_paper = c.paper_form;
    l.c_m = rule == ScheduleRule::paper_m2 ? c.paper_form : c.exact;
    l.n_target = rule == ScheduleRule::paper_m2 ? paper_target(m, delta) : exact_target(c.exact, delta);
    const auto n = divisor_at_or_above(n_max, l.n_target);
    if (!n)
      throw ConfigError("schedule: n_max = " + std::to_string(n_max) +
                        " is too small for level m = " + std::to_string(m) + " (target n = " +
                        std::to_string(l.n_target) + ")");
    l.n = *n;
    if (l.n != l.n_target)
      s.notes.push_back("m = " + std::to_string(m) + ": n target " + std::to_string(l.n_target) +
                        " adjusted to divisor " + std::to_string(l.n) + " of n_max");
    l.k = Basis::mode_count(model.domain, m);
    s.levels.push_back(l);
  }
  for (std::size_t i = 1; i < s.levels.size(); ++i) {
    const Level& a = s.levels[i - 1];
    const Level& b = s.levels[i];
    if (!(b.c_m / static_cast<double>(b.n) < a.c_m / static_cast<double>(a.n)))
      throw ConfigError("schedule: c(m)/n is not decreasing between m = " + std::to_string(a.m) +
                        " and m = " + std::to_string(b.m) + "; increase delta");
  }
  return s;
}

Schedule fixed_cutoff_schedule(const ModelSpec& model, int m, const std::vector<std::size_t>& n_list,
                               double T) {
  if (n_list.empty()) throw ConfigError("schedule: n list is empty");
  if (m < 1) throw ConfigError("schedule: m must be >= 1");
  Schedule s;
  s.T = T;
  s.delta = 0.0;
  const GalerkinConstant c = galerkin_constant(model, m);
  std::size_t n_max = 1;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw ConfigError("schedule: n values must be >= 1");
    if (i > 0 && n_list[i] <= n_list[i - 1])
      throw ConfigError("schedule: n values must be strictly increasing");
    n_max = std::lcm(n_max, n_list[i]);
    Level l;
    l.m = m;
    l.n = l.n_target = n_list[i];
    l.k = Basis::mode_count(model.domain, m);
    l.c_exact = c.exact;
    l.c_paper = c.paper_form;
    l.c_m = c.paper_form;
    s.levels.push_back(l);
  }
  s.n_max = n_max;
  return s;
}

}  // namespace tamed
