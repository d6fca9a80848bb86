// Copyright 2026 driftsim contributors
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

namespace driftsim {

/** Base class for all errors raised by the library. */
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonHermitianInput : public Error {
 public:
  using Error::Error;
};

class InvalidVariant : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class MissingCost : public Error {
 public:
  using Error::Error;
};

class NonPositiveCost : public Error {
 public:
  using Error::Error;
};

class UnboundedWeight : public Error {
 public:
  using Error::Error;
};

class EpsilonOutOfRange : public Error {
 public:
  using Error::Error;
};

class ZeroCommutatorTerm : public Error {
 public:
  using Error::Error;
};

class NotTracePreserving : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace driftsim
