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

#include "tamed/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace tamed {

std::string_view to_string(Study study) {
  switch (study) {
    case Study::simulate: return "simulate";
    case Study::moments: return "moments";
    case Study::converge: return "converge";
    case Study::gap: return "gap";
    case Study::diverge: return "diverge";
    case Study::check: return "check";
    case Study::schedule: return "schedule";
  }
  return "?";
}

Study parse_study(std::string_view s) {
  for (Study st : {Study::simulate, Study::moments, Study::converge, Study::gap, Study::diverge,
                   Study::check, Study::schedule})
    if (to_string(st) == s) return st;
  throw ConfigError("unknown study '" + std::string(s) +
                    "' (expected simulate, moments, converge, gap, diverge, check, schedule)");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view s) {
  const std::string str(trim(s));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    throw ConfigError("expected a number, got '" + str + "'");
  }
  if (used != str.size() || !std::isfinite(v))
    throw ConfigError("expected a finite number, got '" + str + "'");
  return v;
}

std::int64_t to_int(std::string_view s) {
  s = trim(s);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ConfigError("expected an integer, got '" + std::string(s) + "'");
  return v;
}

std::uint64_t to_unsigned(std::string_view s) {
  const std::int64_t v = to_int(s);
  if (v < 0) throw ConfigError("expected a non-negative integer, got '" + std::string(trim(s)) + "'");
  return static_cast<std::uint64_t>(v);
}

bool to_bool(std::string_view s) {
  s = trim(s);
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  throw ConfigError("expected true or false, got '" + std::string(s) + "'");
}

template <class T, class F>
std::vector<T> to_list(std::string_view s, F each) {
  std::vector<T> out;
  while (true) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    if (item.empty()) throw ConfigError("empty entry in list");
    out.push_back(static_cast<T>(each(item)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      // model.kind and model.dimension are applied first; see parse_config
      {"model.kind", [](RunConfig& c, std::string_view v) { c.model = make_model(parse_model_kind(trim(v))); }},
      {"model.dimension",
       [](RunConfig& c, std::string_view v) { c.model.domain.dimension = static_cast<int>(to_int(v)); }},
      {"model.length",
       [](RunConfig& c, std::string_view v) {
         const double l = to_double(v);
         c.model.domain.length = {l, l};
       }},
      {"model.p", [](RunConfig& c, std::string_view v) { c.model.p = to_double(v); }},
      {"model.flux", [](RunConfig& c, std::string_view v) { c.model.flux = parse_flux(trim(v)); }},
      {"model.gamma", [](RunConfig& c, std::string_view v) { c.model.gamma = to_double(v); }},
      {"model.c1", [](RunConfig& c, std::string_view v) { c.model.c1 = to_double(v); }},
      {"model.c2", [](RunConfig& c, std::string_view v) { c.model.c2 = to_double(v); }},
      {"model.c3", [](RunConfig& c, std::string_view v) { c.model.c3 = to_double(v); }},
      {"model.K", [](RunConfig& c, std::string_view v) { c.model.K = to_double(v); }},
      {"model.mu", [](RunConfig& c, std::string_view v) { c.model.mu = to_double(v); }},
      {"model.sign", [](RunConfig& c, std::string_view v) { c.model.nonlinear_sign = to_double(v); }},
      {"model.u0", [](RunConfig& c, std::string_view v) { c.u0_scale = to_double(v); }},
      {"noise.kind", [](RunConfig& c, std::string_view v) { c.model.noise.kind = parse_noise_kind(trim(v)); }},
      {"noise.amplitude", [](RunConfig& c, std::string_view v) { c.model.noise.amplitude = to_double(v); }},
      {"noise.decay", [](RunConfig& c, std::string_view v) { c.model.noise.decay = to_double(v); }},
      {"schedule.m",
       [](RunConfig& c, std::string_view v) { c.m_list = to_list<int>(v, to_int); }},
      {"schedule.delta", [](RunConfig& c, std::string_view v) { c.delta = to_double(v); }},
      {"schedule.rule", [](RunConfig& c, std::string_view v) { c.rule = parse_schedule_rule(trim(v)); }},
      {"schedule.n_max", [](RunConfig& c, std::string_view v) { c.n_max = to_unsigned(v); }},
      {"schedule.T", [](RunConfig& c, std::string_view v) { c.T = to_double(v); }},
      {"study.kind", [](RunConfig& c, std::string_view v) { c.study = parse_study(trim(v)); }},
      {"study.seed", [](RunConfig& c, std::string_view v) { c.seed = to_unsigned(v); }},
      {"study.samples", [](RunConfig& c, std::string_view v) { c.samples = to_unsigned(v); }},
      {"study.workers", [](RunConfig& c, std::string_view v) { c.workers = static_cast<int>(to_int(v)); }},
      {"study.out", [](RunConfig& c, std::string_view v) { c.out_dir = std::string(trim(v)); }},
      {"study.epsilon", [](RunConfig& c, std::string_view v) { c.epsilon = to_double(v); }},
      {"study.override_stability_guard",
       [](RunConfig& c, std::string_view v) { c.override_guard = to_bool(v); }},
      {"study.scheme", [](RunConfig& c, std::string_view v) { c.scheme = parse_scheme(trim(v)); }},
      {"study.snapshots", [](RunConfig& c, std::string_view v) { c.snapshots = to_bool(v); }},
      {"study.q", [](RunConfig& c, std::string_view v) { c.q = to_list<int>(v, to_int); }},
      {"study.m_ref", [](RunConfig& c, std::string_view v) { c.m_ref = static_cast<int>(to_int(v)); }},
      {"study.n_ref", [](RunConfig& c, std::string_view v) { c.n_ref = to_unsigned(v); }},
      {"study.reference_scheme",
       [](RunConfig& c, std::string_view v) { c.reference_scheme = parse_scheme(trim(v)); }},
      {"study.cross_check", [](RunConfig& c, std::string_view v) { c.cross_check = to_bool(v); }},
      {"study.gap_m", [](RunConfig& c, std::string_view v) { c.gap_m = static_cast<int>(to_int(v)); }},
      {"study.gap_n",
       [](RunConfig& c, std::string_view v) { c.gap_n = to_list<std::size_t>(v, to_unsigned); }},
      {"study.dt", [](RunConfig& c, std::string_view v) { c.dt = to_double(v); }},
      {"study.steps", [](RunConfig& c, std::string_view v) { c.steps = to_unsigned(v); }},
      {"check.m", [](RunConfig& c, std::string_view v) { c.check.m = static_cast<int>(to_int(v)); }},
      {"check.samples", [](RunConfig& c, std::string_view v) { c.check.samples = to_unsigned(v); }},
      {"check.radius", [](RunConfig& c, std::string_view v) { c.check.radius = to_double(v); }},
      {"check.seed", [](RunConfig& c, std::string_view v) { c.check.seed = to_unsigned(v); }},
  };
  return table;
}

struct Entry {
  std::string key;
  std::string value;
  std::size_t line;
};

std::vector<std::string> validation_errors(const RunConfig& c) {
  std::vector<std::string> errors;
  auto check = [&](bool ok, const std::string& msg) {
    if (!ok) errors.push_back(msg);
  };
  try {
    validate(c.model);
  } catch (const ConfigError& e) {
    for (const auto& m : e.messages()) errors.push_back(m);
  }
  check(!c.m_list.empty(), "schedule.m must list at least one cutoff");
  for (std::size_t i = 0; i < c.m_list.size(); ++i) {
    check(c.m_list[i] >= 1, "schedule.m values must be >= 1");
    check(i == 0 || c.m_list[i] > c.m_list[i - 1], "schedule.m must be strictly increasing");
  }
  check(c.delta > 0.0, "schedule.delta must be > 0");
  check(c.n_max >= 1, "schedule.n_max must be >= 1");
  check(c.T > 0.0, "schedule.T must be > 0");
  check(c.samples >= 1, "study.samples must be >= 1");
  check(c.workers >= 1, "study.workers must be >= 1");
  check(c.epsilon > 0.0, "study.epsilon must be > 0");
  check(!c.out_dir.empty(), "study.out must not be empty");
  check(!c.q.empty(), "study.q must list at least one exponent");
  for (int q : c.q) check(q >= 1, "study.q values must be >= 1");
  check(c.m_ref >= 1, "study.m_ref must be >= 1");
  check(c.n_ref >= 1, "study.n_ref must be >= 1");
  check(c.gap_m >= 1, "study.gap_m must be >= 1");
  check(c.gap_n.size() >= 2, "study.gap_n must list at least two step counts");
  for (std::size_t i = 0; i < c.gap_n.size(); ++i)
    check(c.gap_n[i] >= 1 && (i == 0 || c.gap_n[i] > c.gap_n[i - 1]),
          "study.gap_n must be positive and strictly increasing");
  check(c.dt > 0.0, "study.dt must be > 0");
  check(c.steps >= 1, "study.steps must be >= 1");
  check(c.check.m >= 1, "check.m must be >= 1");
  check(c.check.samples >= 1, "check.samples must be >= 1");
  check(c.check.radius > 0.0, "check.radius must be > 0");
  return errors;
}

}  // namespace

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : setters()) keys.push_back(k);
  return keys;
}

void validate(const RunConfig& cfg) {
  auto errors = validation_errors(cfg);
  if (!errors.empty()) throw ConfigError(std::move(errors));
}

RunConfig parse_config(std::string_view text) {
  std::vector<std::string> errors;
  std::vector<Entry> entries;
  std::map<std::string, std::size_t, std::less<>> seen;
  const auto& table = setters();

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) {
      errors.push_back(where + "expected 'section.key = value'");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.find('.') == std::string::npos) {
      errors.push_back(where + "key '" + key + "' has no section (expected section.key)");
      continue;
    }
    if (!table.count(key)) {
      errors.push_back(where + "unknown key '" + key + "'");
      continue;
    }
    if (value.empty()) {
      errors.push_back(where + "key '" + key + "' has no value");
      continue;
    }
    if (auto it = seen.find(key); it != seen.end()) {
      errors.push_back(where + "duplicate key '" + key + "' (first set on line " +
                       std::to_string(it->second) + ", again on line " + std::to_string(line_no) +
                       ")");
      continue;
    }
    seen.emplace(key, line_no);
    entries.push_back({key, value, line_no});
  }

  RunConfig cfg;
  // the preset replaces the whole model, so it goes first; dimension precedes p
  auto rank = [](const std::string& k) { return k == "model.kind" ? 0 : k == "model.dimension" ? 1 : 2; };
  std::stable_sort(entries.begin(), entries.end(),
                   [&](const Entry& a, const Entry& b) { return rank(a.key) < rank(b.key); });
  for (const Entry& e : entries) {
    try {
      table.find(e.key)->second(cfg, e.value);
    } catch (const ConfigError& err) {
      errors.push_back("line " + std::to_string(e.line) + ": " + e.key + ": " + err.what());
    }
  }
  if (errors.empty()) {
    for (const std::string& msg : validation_errors(cfg)) {
      std::vector<std::string> keys;
      if (msg.rfind("p = ", 0) == 0) keys = {"model.p", "model.dimension"};
      else if (msg.rfind("d = ", 0) == 0) keys = {"model.dimension"};
      else if (msg.rfind("K ", 0) == 0) keys = {"model.K"};
      else if (msg.rfind("mu ", 0) == 0) keys = {"model.mu"};
      else if (msg.rfind("noise amplitude", 0) == 0) keys = {"noise.amplitude"};
      else if (msg.rfind("noise decay", 0) == 0) keys = {"noise.decay", "noise.kind"};
      else if (msg.find('.') != std::string::npos) keys = {msg.substr(0, msg.find(' '))};
      else keys = {"model.kind", "model.dimension"};
      std::string lines;
      for (const std::string& k : keys)
        if (auto it = seen.find(k); it != seen.end())
          lines += (lines.empty() ? "" : ", ") + std::to_string(it->second);
      errors.push_back(lines.empty() ? msg
                                     : (keys.size() > 1 && lines.find(',') != std::string::npos
                                            ? "lines " : "line ") + lines + ": " + msg);
    }
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace tamed
