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

#include <string>
#include <vector>

#include "tamed/config.hpp"

namespace tamed {

struct RunResult {
  bool passed = false;
  std::string summary;             // human-readable, one fact per line
  std::vector<std::string> files;  // written into cfg.out_dir
};

/// Runs the configured study and writes its CSV tables, metadata.txt and
/// plot.gp into the output directory. A failed in-study assertion leaves a
/// FAILED marker next to the partial outputs; so does an exception, which is
/// then rethrown.
RunResult run(const RunConfig& cfg);

}  // namespace tamed
