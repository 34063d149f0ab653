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

// CSV tables, metadata sidecars and gnuplot scripts for study reports. Every
// numeric CSV field is printed with 17 significant digits; wall time and other
// run-dependent facts live only in the sidecar.

#include <string>
#include <utility>
#include <vector>

#include "tamed/experiments.hpp"

namespace tamed {

struct CsvFile {
  std::string name;  // file name inside the output directory
  std::string body;
  bool per_level = true;  // level,m,n,k,c_m,c_m_tau,estimate,stderr,samples layout
};

std::string format_number(double x);

/// Header of the per-level layout.
std::string level_csv_header();

std::vector<CsvFile> to_csv(const MomentReport& report);
std::vector<CsvFile> to_csv(const ConvergenceReport& report);
std::vector<CsvFile> to_csv(const GapReport& report);
std::vector<CsvFile> to_csv(const DivergenceReport& report);
std::vector<CsvFile> to_csv(const Schedule& schedule);

/// gnuplot script drawing estimate against c(m) tau (log-log) for each per-level table.
std::string plot_script(const std::vector<CsvFile>& files);

using Metadata = std::vector<std::pair<std::string, std::string>>;

void write_text(const std::string& dir, const std::string& name, const std::string& body);
void write_metadata(const std::string& dir, const Metadata& meta);
void write_failed_marker(const std::string& dir, const std::string& reason);
void remove_failed_marker(const std::string& dir);

}  // namespace tamed
