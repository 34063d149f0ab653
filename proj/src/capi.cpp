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

#include "tamed/tamed.h"

#include <filesystem>
#include <new>
#include <string>

#include "tamed/config.hpp"
#include "tamed/run.hpp"

struct tamed_config {
  tamed::RunConfig cfg;
};

struct tamed_report {
  tamed::RunResult result;
};

namespace {

thread_local std::string last_error;

tamed_status fail(tamed_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
tamed_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const tamed::StabilityGuardError& e) {
    return fail(TAMED_ERR_GUARD, e.what());
  } catch (const tamed::ConfigError& e) {
    return fail(TAMED_ERR_CONFIG, e.what());
  } catch (const tamed::NumericError& e) {
    return fail(TAMED_ERR_NUMERIC, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(TAMED_ERR_IO, e.what());
  } catch (const tamed::Error& e) {
    return fail(TAMED_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(TAMED_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TAMED_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TAMED_ERR_INTERNAL, "unknown error");
  }
}

}  // namespace

extern "C" {

const char* tamed_version(void) { return "0.1.0"; }

const char* tamed_status_string(tamed_status status) {
  switch (status) {
    case TAMED_OK: return "ok";
    case TAMED_ERR_ARGUMENT: return "invalid argument";
    case TAMED_ERR_CONFIG: return "configuration error";
    case TAMED_ERR_GUARD: return "stability guard";
    case TAMED_ERR_NUMERIC: return "numeric error";
    case TAMED_ERR_IO: return "i/o error";
    case TAMED_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* tamed_last_error(void) { return last_error.c_str(); }

tamed_status tamed_config_new(tamed_config** out) {
  if (!out) return fail(TAMED_ERR_ARGUMENT, "out is null");
  return guarded([&] {
    *out = new tamed_config{};
    return TAMED_OK;
  });
}

tamed_status tamed_config_parse(const char* text, tamed_config** out) {
  if (!text || !out) return fail(TAMED_ERR_ARGUMENT, "text and out must not be null");
  *out = nullptr;
  return guarded([&] {
    *out = new tamed_config{tamed::parse_config(text)};
    return TAMED_OK;
  });
}

tamed_status tamed_config_load(const char* path, tamed_config** out) {
  if (!path || !out) return fail(TAMED_ERR_ARGUMENT, "path and out must not be null");
  *out = nullptr;
  return guarded([&] {
    *out = new tamed_config{tamed::load_config(path)};
    return TAMED_OK;
  });
}

void tamed_config_free(tamed_config* config) { delete config; }

tamed_status tamed_config_set_study(tamed_config* config, const char* study) {
  if (!config || !study) return fail(TAMED_ERR_ARGUMENT, "config and study must not be null");
  return guarded([&] {
    config->cfg.study = tamed::parse_study(study);
    return TAMED_OK;
  });
}

tamed_status tamed_config_set_seed(tamed_config* config, uint64_t seed) {
  if (!config) return fail(TAMED_ERR_ARGUMENT, "config is null");
  config->cfg.seed = seed;
  return TAMED_OK;
}

tamed_status tamed_config_set_samples(tamed_config* config, uint64_t samples) {
  if (!config) return fail(TAMED_ERR_ARGUMENT, "config is null");
  if (samples < 1) return fail(TAMED_ERR_ARGUMENT, "samples must be >= 1");
  config->cfg.samples = samples;
  return TAMED_OK;
}

tamed_status tamed_config_set_workers(tamed_config* config, int workers) {
  if (!config) return fail(TAMED_ERR_ARGUMENT, "config is null");
  if (workers < 1) return fail(TAMED_ERR_ARGUMENT, "workers must be >= 1");
  config->cfg.workers = workers;
  return TAMED_OK;
}

tamed_status tamed_config_set_out_dir(tamed_config* config, const char* dir) {
  if (!config || !dir || !*dir) return fail(TAMED_ERR_ARGUMENT, "config and dir must be non-empty");
  config->cfg.out_dir = dir;
  return TAMED_OK;
}

tamed_status tamed_config_set_override_guard(tamed_config* config, int enabled) {
  if (!config) return fail(TAMED_ERR_ARGUMENT, "config is null");
  config->cfg.override_guard = enabled != 0;
  return TAMED_OK;
}

tamed_status tamed_run(const tamed_config* config, tamed_report** out) {
  if (!config || !out) return fail(TAMED_ERR_ARGUMENT, "config and out must not be null");
  *out = nullptr;
  return guarded([&] {
    *out = new tamed_report{tamed::run(config->cfg)};
    return TAMED_OK;
  });
}

int tamed_report_passed(const tamed_report* report) {
  return report && report->result.passed ? 1 : 0;
}

const char* tamed_report_summary(const tamed_report* report) {
  return report ? report->result.summary.c_str() : "";
}

size_t tamed_report_file_count(const tamed_report* report) {
  return report ? report->result.files.size() : 0;
}

const char* tamed_report_file(const tamed_report* report, size_t index) {
  if (!report || index >= report->result.files.size()) return nullptr;
  return report->result.files[index].c_str();
}

void tamed_report_free(tamed_report* report) { delete report; }

}  // extern "C"
