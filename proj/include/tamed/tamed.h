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

#ifndef TAMED_TAMED_H
#define TAMED_TAMED_H

/* C interface to the tamed Euler-Galerkin studies.
 *
 * All objects are opaque and owned by the caller once returned. Functions
 * report failure through tamed_status; the message of the most recent failure
 * on the calling thread is available from tamed_last_error(). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TAMED_BUILDING_LIBRARY)
#    define TAMED_API __declspec(dllexport)
#  else
#    define TAMED_API __declspec(dllimport)
#  endif
#else
#  define TAMED_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tamed_status {
  TAMED_OK = 0,
  TAMED_ERR_ARGUMENT = 1,  /* null pointer or out-of-range argument */
  TAMED_ERR_CONFIG = 2,    /* malformed or invalid configuration */
  TAMED_ERR_GUARD = 3,     /* stability guard refused an explicit run */
  TAMED_ERR_NUMERIC = 4,   /* non-finite state in a tamed or reference run */
  TAMED_ERR_IO = 5,        /* files could not be read or written */
  TAMED_ERR_INTERNAL = 6
} tamed_status;

typedef struct tamed_config tamed_config;
typedef struct tamed_report tamed_report;

TAMED_API const char* tamed_version(void);
TAMED_API const char* tamed_status_string(tamed_status status);
/* Message of the last failure on this thread; empty when none. */
TAMED_API const char* tamed_last_error(void);

TAMED_API tamed_status tamed_config_new(tamed_config** out);
TAMED_API tamed_status tamed_config_parse(const char* text, tamed_config** out);
TAMED_API tamed_status tamed_config_load(const char* path, tamed_config** out);
TAMED_API void tamed_config_free(tamed_config* config);

/* study: simulate, moments, converge, gap, diverge, check or schedule */
TAMED_API tamed_status tamed_config_set_study(tamed_config* config, const char* study);
TAMED_API tamed_status tamed_config_set_seed(tamed_config* config, uint64_t seed);
TAMED_API tamed_status tamed_config_set_samples(tamed_config* config, uint64_t samples);
TAMED_API tamed_status tamed_config_set_workers(tamed_config* config, int workers);
TAMED_API tamed_status tamed_config_set_out_dir(tamed_config* config, const char* dir);
TAMED_API tamed_status tamed_config_set_override_guard(tamed_config* config, int enabled);

/* Runs the study and writes its outputs. TAMED_OK means the study ran to the
 * end; whether its assertions held is tamed_report_passed(). */
TAMED_API tamed_status tamed_run(const tamed_config* config, tamed_report** out);
TAMED_API int tamed_report_passed(const tamed_report* report);
TAMED_API const char* tamed_report_summary(const tamed_report* report);
TAMED_API size_t tamed_report_file_count(const tamed_report* report);
TAMED_API const char* tamed_report_file(const tamed_report* report, size_t index);
TAMED_API void tamed_report_free(tamed_report* report);

#ifdef __cplusplus
}
#endif

#endif /* TAMED_TAMED_H */
