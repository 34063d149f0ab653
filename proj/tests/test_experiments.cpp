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

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "tamed/experiments.hpp"
#include "tamed/operators.hpp"

using namespace tamed;

namespace {

constexpr std::size_t kNmax = std::size_t{1} << 14;

bool same(const Estimate& a, const Estimate& b) {
  return a.mean == b.mean && a.se == b.se && a.samples == b.samples;
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("m^{2+delta} targets for m = 2, 4, 8 with delta = 0.5") {
    CHECK(paper_target(2, 0.5) == 5);
    CHECK(paper_target(4, 0.5) == 32);
    CHECK(paper_target(8, 0.5) == 181);
    CHECK(paper_target(4, 1.0) == 64);
    CHECK(exact_target(100.0, 0.5) == 316);
  }

  TEST_CASE("divisor adjustment") {
    CHECK(divisor_at_or_above(kNmax, 5) == 8);
    CHECK(divisor_at_or_above(kNmax, 32) == 32);
    CHECK(divisor_at_or_above(kNmax, 181) == 256);
    CHECK_FALSE(divisor_at_or_above(kNmax, kNmax + 1).has_value());
    CHECK(divisor_at_or_above(360, 7) == 8);
  }

  TEST_CASE("GL schedule (2, 4, 8) and its notes") {
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    const Schedule s = make_schedule(gl, {2, 4, 8}, 0.5, ScheduleRule::paper_m2, kNmax);
    REQUIRE(s.levels.size() == 3);
    CHECK(s.levels[0].n_target == 5);
    CHECK(s.levels[1].n_target == 32);
    CHECK(s.levels[2].n_target == 181);
    CHECK(s.levels[0].n == 8);
    CHECK(s.levels[2].n == 256);
    CHECK(s.notes.size() == 2);
    for (std::size_t i = 1; i < 3; ++i) {
      CHECK(s.levels[i].m > s.levels[i - 1].m);
      CHECK(s.levels[i].n > s.levels[i - 1].n);
      CHECK(s.levels[i].c_m_tau(1.0) < s.levels[i - 1].c_m_tau(1.0));
    }
    CHECK(s.k_max() == 8);
  }

  TEST_CASE("single-level schedule") {
    const Schedule s = make_schedule(make_model(ModelKind::ginzburg_landau), {4}, 0.5,
                                     ScheduleRule::paper_m2, kNmax);
    CHECK(s.levels.size() == 1);
    CHECK(s.notes.empty());
  }

  TEST_CASE("invalid schedules are rejected") {
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    CHECK_THROWS_AS(make_schedule(gl, {2, 4}, 0.0, ScheduleRule::paper_m2, kNmax), ConfigError);
    CHECK_THROWS_AS(make_schedule(gl, {4, 2}, 0.5, ScheduleRule::paper_m2, kNmax), ConfigError);
    CHECK_THROWS_AS(make_schedule(gl, {2, 4, 8}, 0.5, ScheduleRule::paper_m2, 64), ConfigError);
    CHECK_THROWS_AS(make_schedule(gl, {}, 0.5, ScheduleRule::paper_m2, kNmax), ConfigError);
    // two levels rounded onto the same divisor cannot have a decreasing c/n
    const ModelSpec sh = make_model(ModelKind::swift_hohenberg);
    CHECK_THROWS_AS(make_schedule(sh, {2, 4}, 0.5, ScheduleRule::paper_m2, kNmax), ConfigError);
    CHECK_NOTHROW(make_schedule(sh, {2, 4}, 1.0, ScheduleRule::paper_m2, kNmax, 0.1));
  }

  TEST_CASE("exact rule uses the exact constant") {
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    const Schedule s = make_schedule(gl, {2, 4}, 0.5, ScheduleRule::exact_c4, std::size_t{1} << 20);
    for (const Level& l : s.levels) {
      CHECK(l.c_m == l.c_exact);
      CHECK(l.n_target == exact_target(l.c_exact, 0.5));
    }
  }

  TEST_CASE("fixed cutoff schedule") {
    const Schedule s =
        fixed_cutoff_schedule(make_model(ModelKind::ginzburg_landau), 8, {256, 512, 1024}, 1.0);
    REQUIRE(s.levels.size() == 3);
    for (const Level& l : s.levels) CHECK(l.m == 8);
    CHECK(s.n_max % 1024 == 0);
  }

  TEST_CASE("pairwise sum and estimate") {
    std::vector<double> x(100);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i + 1);
    CHECK(pairwise_sum(x) == 5050.0);
    const Estimate e = estimate(x);
    CHECK(e.mean == doctest::Approx(50.5));
    // sample variance of 1..100 is 100 * 101 / 12
    CHECK(e.se == doctest::Approx(std::sqrt(100.0 * 101.0 / 12.0 / 100.0)));
    CHECK(estimate(std::vector<double>{3.0}).se == 0.0);
  }

  TEST_CASE("parallel_for visits each index once and rethrows the lowest failure") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    for (int w : {1, 4}) {
      try {
        parallel_for(100, w, [](std::size_t i) {
          if (i == 37 || i == 81) throw std::runtime_error(std::to_string(i));
        });
        FAIL("expected an exception");
      } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "37");
      }
    }
  }

  TEST_CASE("moments vanish for zero noise and zero data") {
    ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    gl.noise.amplitude = 0.0;
    const Schedule s = make_schedule(gl, {2, 4}, 0.5, ScheduleRule::paper_m2, 1024);
    StudyOptions opt;
    opt.samples = 4;
    opt.u0_scale = 0.0;
    const MomentReport r = run_moments(gl, s, opt);
    for (const MomentLevel& l : r.levels)
      for (std::size_t i = 0; i < 2; ++i) {
        CHECK(l.sup[i].mean == 0.0);
        CHECK(l.v1[i].mean == 0.0);
      }
    CHECK(r.passed());
  }

  TEST_CASE("moments are finite, satisfy Jensen and do not depend on the worker count") {
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    const Schedule s = make_schedule(gl, {2, 4}, 0.5, ScheduleRule::paper_m2, 1024);
    StudyOptions opt;
    opt.samples = 40;
    const MomentReport a = run_moments(gl, s, opt);
    opt.workers = 8;
    const MomentReport b = run_moments(gl, s, opt);
    CHECK(a.passed());
    CHECK(a.jensen_holds());
    CHECK(a.uniformity_ratio() < 2.0);
    for (std::size_t l = 0; l < a.levels.size(); ++l)
      for (std::size_t i = 0; i < 2; ++i) {
        CHECK(same(a.levels[l].sup[i], b.levels[l].sup[i]));
        CHECK(same(a.levels[l].v1[i], b.levels[l].v1[i]));
      }
  }

  TEST_CASE("divergence contrast on the scalar toy") {
    const ModelSpec toy = make_model(ModelKind::scalar_toy);
    StudyOptions opt;
    opt.samples = 10;
    const DivergenceReport hot = run_divergence_contrast(toy, 5.0, 0.1, 20, opt);
    CHECK(hot.untamed_fraction == 1.0);
    CHECK(hot.untamed_within_20 == 10);
    CHECK(hot.passed());

    const DivergenceReport calm = run_divergence_contrast(toy, 0.1, 0.1, 20, opt);
    CHECK(calm.untamed_fraction == 0.0);
    CHECK(calm.passed());

    const DivergenceReport huge = run_divergence_contrast(toy, 1000.0, 0.01, 1000, opt);
    CHECK(huge.tamed_divergences == 0);
    CHECK(huge.tamed_max_abs <= huge.tamed_bound);
    CHECK(huge.tamed_max_abs == doctest::Approx(1000.0));
  }

  TEST_CASE("convergence errors are zero when nothing moves, and that is not a decrease") {
    ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    gl.noise.amplitude = 0.0;
    const Schedule s = make_schedule(gl, {2, 4}, 0.5, ScheduleRule::paper_m2, 1024);
    StudyOptions opt;
    opt.samples = 3;
    opt.u0_scale = 0.0;
    const ConvergenceReport r = run_convergence(gl, s, opt, {8, 1024, Scheme::tamed, false});
    for (const ConvergenceLevel& l : r.levels) CHECK(l.error.mean == 0.0);
    CHECK_FALSE(r.monotone());
  }

  TEST_CASE("convergence rejects a reference that is not finer") {
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    const Schedule s = make_schedule(gl, {2, 4}, 0.5, ScheduleRule::paper_m2, 1024);
    StudyOptions opt;
    opt.samples = 2;
    CHECK_THROWS_AS(run_convergence(gl, s, opt, {4, 1024, Scheme::tamed, false}), ConfigError);
    CHECK_THROWS_AS(run_convergence(gl, s, opt, {8, 1000, Scheme::tamed, false}), ConfigError);
  }

  TEST_CASE("small GL convergence run decreases level by level") {
    const ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    const Schedule s = make_schedule(gl, {2, 4}, 0.5, ScheduleRule::paper_m2, 4096);
    StudyOptions opt;
    opt.samples = 10;
    const ConvergenceReport r = run_convergence(gl, s, opt, {8, 4096, Scheme::tamed, true});
    CHECK(r.levels[0].error.mean > r.levels[1].error.mean);
    CHECK(r.monotone());
    REQUIRE(r.cross_check.has_value());
    CHECK(r.cross_check->mean < r.levels[1].error.mean);
  }

  TEST_CASE("deterministic gap decays like tau^2") {
    ModelSpec gl = make_model(ModelKind::ginzburg_landau);
    gl.noise.amplitude = 0.0;
    const Schedule s = fixed_cutoff_schedule(gl, 4, {64, 128, 256, 512});
    StudyOptions opt;
    opt.samples = 2;
    const GapReport r = run_gap_study(gl, s, opt);
    CHECK_FALSE(r.noisy);
    CHECK(r.slope == doctest::Approx(2.0).epsilon(0.05));
    CHECK(r.passed());
  }

  TEST_CASE("regression slope") {
    const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
    const std::vector<double> y{1.0, 3.0, 5.0, 7.0};
    CHECK(regression_slope(x, y) == doctest::Approx(2.0));
    CHECK_THROWS_AS(regression_slope(std::span(x).first(1), std::span(y).first(1)), ConfigError);
  }
}
