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

// Line-oriented run configuration:
//
//   # comment
//   model.kind = ginzburg_landau
//   schedule.m = 2, 4, 8
//
// Keys are `section.key`; unknown keys, duplicates and malformed values are
// errors that carry line numbers. Every violation is collected before a
// ConfigError is thrown.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tamed/checks.hpp"
#include "tamed/experiments.hpp"
#include "tamed/model.hpp"
#include "tamed/stepper.hpp"

namespace tamed {

enum class Study { simulate, moments, converge, gap, diverge, check, schedule };

std::string_view to_string(Study study);
Study parse_study(std::string_view s);

struct RunConfig {
  ModelSpec model = make_model(ModelKind::ginzburg_landau);
  double u0_scale = 1.0;

  std::vector<int> m_list{2, 4, 8};
  double delta = 0.5;
  ScheduleRule rule = ScheduleRule::paper_m2;
  std::size_t n_max = std::size_t{1} << 14;
  double T = 1.0;

  Study study = Study::simulate;
  std::uint64_t seed = 1;
  std::size_t samples = 200;
  int workers = 1;
  std::string out_dir = "out";
  double epsilon = 1.0;
  bool override_guard = false;
  Scheme scheme = Scheme::tamed;      // simulate
  bool snapshots = true;              // simulate
  std::vector<int> q{1, 2};           // moments
  int m_ref = 16;                     // converge
  std::size_t n_ref = std::size_t{1} << 14;
  Scheme reference_scheme = Scheme::tamed;
  bool cross_check = false;
  int gap_m = 8;                      // gap
  std::vector<std::size_t> gap_n{256, 512, 1024, 2048};
  double dt = 0.1;                    // diverge
  std::size_t steps = 20;

  CheckOptions check{};
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Re-validates a configuration after programmatic edits.
void validate(const RunConfig& cfg);

/// Every accepted key, for documentation and tests.
std::vector<std::string> config_keys();

}  // namespace tamed
