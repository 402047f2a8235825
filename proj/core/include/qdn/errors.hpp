// Copyright 2026 The qdn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qdn {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

class InvalidDetector : public Error {
 public:
  using Error::Error;
};

class InvalidLabel : public Error {
 public:
  using Error::Error;
};

class InvalidStage : public Error {
 public:
  using Error::Error;
};

class MissingBinding : public Error {
 public:
  explicit MissingBinding(const std::string& parameter)
      : Error("missing binding for parameter '" + parameter + "'"),
        parameter_(parameter) {}
  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class RuleError : public Error {
 public:
  using Error::Error;
};

class IncompleteMap : public Error {
 public:
  using Error::Error;
};

class CompositionError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  explicit NormalizationError(double norm);
  double norm() const noexcept { return norm_; }

 private:
  double norm_;
};

class ModuleError : public Error {
 public:
  using Error::Error;
};

class UnknownScenario : public Error {
 public:
  using Error::Error;
};

}  // namespace qdn
