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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tamed {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters, malformed configuration, mismatched shapes.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what), messages_{what} {}
  explicit ConfigError(std::vector<std::string> messages)
      : Error(join(messages)), messages_(std::move(messages)) {}

  const std::vector<std::string>& messages() const noexcept { return messages_; }

 private:
  static std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out += '\n';
      out += parts[i];
    }
    return out;
  }
  std::vector<std::string> messages_;
};

/// Non-finite intermediate values.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Non-finite state produced by a time integrator; carries the step index.
class IntegrationError : public NumericError {
 public:
  IntegrationError(const std::string& what, std::size_t step)
      : NumericError(what + " (step " + std::to_string(step) + ")"), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// The explicit schemes were asked to run with c(m) * tau above the guard.
class StabilityGuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace tamed
