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

// Command-line front end. Talks to the library only through tamed.h.
//
// Exit status: 0 when every in-study assertion held, 1 when one failed,
// 2 for usage or configuration errors, 3 for runtime errors.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tamed/tamed.h"

namespace {

struct ConfigDeleter {
  void operator()(tamed_config* c) const { tamed_config_free(c); }
};
struct ReportDeleter {
  void operator()(tamed_report* r) const { tamed_report_free(r); }
};

int report_error(tamed_status status) {
  std::fprintf(stderr, "error (%s): %s\n", tamed_status_string(status), tamed_last_error());
  return status == TAMED_ERR_CONFIG || status == TAMED_ERR_ARGUMENT ? 2 : 3;
}

std::optional<int> workers_from_env() {
  const char* env = std::getenv("WORKERS");
  if (!env || !*env) return std::nullopt;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 4096) {
    std::fprintf(stderr, "warning: ignoring invalid WORKERS=%s\n", env);
    return std::nullopt;
  }
  return static_cast<int>(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tamed explicit Euler-Galerkin studies for SPDEs with superlinear drift"};
  app.set_version_flag("--version", std::string(tamed_version()));
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed, samples;
  std::optional<int> workers;
  std::string out_dir;
  bool override_guard = false;

  const char* studies[][2] = {
      {"simulate", "integrate one path per schedule level and export trajectories"},
      {"moments", "Monte Carlo moment bounds across schedule levels"},
      {"converge", "strong error against a fine reference on coupled noise"},
      {"gap", "time-step gap between the Euler polygon and its step function"},
      {"diverge", "tamed versus untamed explicit Euler on the scalar toy model"},
      {"check", "assumption and taming checkers on random fields"},
      {"schedule", "print the level schedule with both forms of c(m)"},
  };
  for (const auto& s : studies) {
    CLI::App* sub = app.add_subcommand(s[0], s[1]);
    sub->add_option("--config", config_path, "configuration file (section.key = value)")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "master seed");
    sub->add_option("--samples", samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
    sub->add_option("--workers", workers, "worker threads (overrides WORKERS)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", out_dir, "output directory");
    sub->add_flag("--override-stability-guard", override_guard,
                  "run explicit schemes even when c(m) dt exceeds epsilon");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;  // --help and --version exit cleanly
  }
  const std::string study = app.get_subcommands().front()->get_name();

  tamed_config* raw = nullptr;
  tamed_status st = config_path.empty() ? tamed_config_new(&raw)
                                        : tamed_config_load(config_path.c_str(), &raw);
  if (st != TAMED_OK) return report_error(st);
  std::unique_ptr<tamed_config, ConfigDeleter> cfg(raw);

  if ((st = tamed_config_set_study(cfg.get(), study.c_str())) != TAMED_OK) return report_error(st);
  if (seed && (st = tamed_config_set_seed(cfg.get(), *seed)) != TAMED_OK) return report_error(st);
  if (samples && (st = tamed_config_set_samples(cfg.get(), *samples)) != TAMED_OK)
    return report_error(st);
  if (!workers) workers = workers_from_env();
  if (workers && (st = tamed_config_set_workers(cfg.get(), *workers)) != TAMED_OK)
    return report_error(st);
  if (!out_dir.empty() && (st = tamed_config_set_out_dir(cfg.get(), out_dir.c_str())) != TAMED_OK)
    return report_error(st);
  if (override_guard && (st = tamed_config_set_override_guard(cfg.get(), 1)) != TAMED_OK)
    return report_error(st);

  tamed_report* rep_raw = nullptr;
  if ((st = tamed_run(cfg.get(), &rep_raw)) != TAMED_OK) return report_error(st);
  std::unique_ptr<tamed_report, ReportDeleter> rep(rep_raw);

  std::fputs(tamed_report_summary(rep.get()), stdout);
  for (std::size_t i = 0; i < tamed_report_file_count(rep.get()); ++i)
    std::printf("wrote %s\n", tamed_report_file(rep.get(), i));
  if (!tamed_report_passed(rep.get())) {
    std::fprintf(stderr, "study %s: assertion failed\n", study.c_str());
    return 1;
  }
  return 0;
}
