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

#include "tamed/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace tamed {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string level_csv_header() { return "level,m,n,k,c_m,c_m_tau,estimate,stderr,samples\n"; }

namespace {

void level_row(std::ostringstream& os, std::size_t index, const Level& l, double T,
               const Estimate& e) {
  os << index << ',' << l.m << ',' << l.n << ',' << l.k << ',' << format_number(l.c_m) << ','
     << format_number(l.c_m_tau(T)) << ',' << format_number(e.mean) << ',' << format_number(e.se)
     << ',' << e.samples << '\n';
}

}  // namespace

std::vector<CsvFile> to_csv(const MomentReport& r) {
  std::vector<CsvFile> out;
  for (std::size_t i = 0; i < r.q.size(); ++i) {
    for (int kind = 0; kind < 2; ++kind) {
      std::ostringstream os;
      os << level_csv_header();
      for (std::size_t l = 0; l < r.levels.size(); ++l) {
        const MomentLevel& ml = r.levels[l];
        level_row(os, l, ml.level, r.T, kind == 0 ? ml.sup[i] : ml.v1[i]);
      }
      out.push_back({std::string(kind == 0 ? "moments_sup_q" : "moments_v1_q") +
                         std::to_string(r.q[i]) + ".csv",
                     os.str()});
    }
  }
  return out;
}

std::vector<CsvFile> to_csv(const ConvergenceReport& r) {
  std::ostringstream os;
  os << level_csv_header();
  for (std::size_t l = 0; l < r.levels.size(); ++l)
    level_row(os, l, r.levels[l].level, r.T, r.levels[l].error);
  std::vector<CsvFile> out{{"convergence.csv", os.str()}};

  std::ostringstream d;
  d << "pair,m_coarse,m_fine,mean_decrease,stderr,samples\n";
  for (std::size_t i = 0; i < r.decrease.size(); ++i)
    d << i << ',' << r.levels[i].level.m << ',' << r.levels[i + 1].level.m << ','
      << format_number(r.decrease[i].mean) << ',' << format_number(r.decrease[i].se) << ','
      << r.decrease[i].samples << '\n';
  out.push_back({"convergence_decrease.csv", d.str(), false});
  if (r.cross_check) {
    std::ostringstream c;
    c << "m_ref,n_ref,estimate,stderr,samples\n"
      << r.reference.m << ',' << r.reference.n << ',' << format_number(r.cross_check->mean) << ','
      << format_number(r.cross_check->se) << ',' << r.cross_check->samples << '\n';
    out.push_back({"convergence_cross_check.csv", c.str(), false});
  }
  return out;
}

std::vector<CsvFile> to_csv(const GapReport& r) {
  std::ostringstream os;
  os << level_csv_header();
  for (std::size_t l = 0; l < r.levels.size(); ++l)
    level_row(os, l, r.levels[l].level, r.T, r.levels[l].gap);
  std::ostringstream s;
  s << "slope,noisy\n" << format_number(r.slope) << ',' << (r.noisy ? 1 : 0) << '\n';
  return {{"gap.csv", os.str()}, {"gap_slope.csv", s.str(), false}};
}

std::vector<CsvFile> to_csv(const DivergenceReport& r) {
  std::ostringstream os;
  os << "scheme,u0,dt,steps,samples,divergence_fraction,divergence_step,max_abs,bound\n";
  os << "untamed," << format_number(r.u0) << ',' << format_number(r.dt) << ',' << r.steps << ','
     << r.samples << ',' << format_number(r.untamed_fraction) << ',' << r.untamed_last_step
     << ",,\n";
  os << "tamed," << format_number(r.u0) << ',' << format_number(r.dt) << ',' << r.steps << ','
     << r.samples << ','
     << format_number(static_cast<double>(r.tamed_divergences) / static_cast<double>(r.samples))
     << ",," << format_number(r.tamed_max_abs) << ',' << format_number(r.tamed_bound) << '\n';
  return {{"divergence.csv", os.str(), false}};
}

std::vector<CsvFile> to_csv(const Schedule& s) {
  std::ostringstream os;
  os << "level,m,n_target,n,k,c_exact,c_paper,c_m,c_m_tau\n";
  for (std::size_t l = 0; l < s.levels.size(); ++l) {
    const Level& v = s.levels[l];
    os << l << ',' << v.m << ',' << v.n_target << ',' << v.n << ',' << v.k << ','
       << format_number(v.c_exact) << ',' << format_number(v.c_paper) << ','
       << format_number(v.c_m) << ',' << format_number(v.c_m_tau(s.T)) << '\n';
  }
  return {{"schedule.csv", os.str(), false}};
}

std::string plot_script(const std::vector<CsvFile>& files) {
  std::ostringstream os;
  os << "# gnuplot script: estimate against c(m) tau, one panel per table\n"
     << "set datafile separator ','\n"
     << "set logscale xy\n"
     << "set key top left\n"
     << "set xlabel 'c(m) tau'\n"
     << "set grid\n"
     << "set terminal pngcairo size 800,600\n";
  for (const CsvFile& f : files) {
    if (!f.per_level) continue;
    const std::string stem = f.name.substr(0, f.name.rfind('.'));
    os << "\nset output '" << stem << ".png'\n"
       << "set ylabel '" << stem << "'\n"
       << "plot '" << f.name << "' every ::1 using 6:7:8 with yerrorlines title '" << stem
       << "'\n";
  }
  return os.str();
}

void write_text(const std::string& dir, const std::string& name, const std::string& body) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << body;
  if (!out) throw Error("write to " + path.string() + " failed");
}

void write_metadata(const std::string& dir, const Metadata& meta) {
  std::ostringstream os;
  for (const auto& [k, v] : meta) os << k << " = " << v << '\n';
  write_text(dir, "metadata.txt", os.str());
}

void write_failed_marker(const std::string& dir, const std::string& reason) {
  write_text(dir, "FAILED", reason + '\n');
}

void remove_failed_marker(const std::string& dir) {
  std::error_code ec;
  std::filesystem::remove(std::filesystem::path(dir) / "FAILED", ec);
}

}  // namespace tamed
