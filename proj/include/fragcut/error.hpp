// Copyright 2026 The fragcut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fragcut {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Circuit source could not be parsed. Carries a 1-based source position.
class ParseError : public Error {
   public:
    ParseError(const std::string &message, size_t line, size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {
    }

    size_t line() const {
        return line_;
    }
    size_t column() const {
        return column_;
    }

   private:
    size_t line_;
    size_t column_;
};

/// Calibration document is malformed or non-physical.
class ProfileError : public Error {
   public:
    using Error::Error;
};

/// Graph construction or a graph document failed validation.
class GraphError : public Error {
   public:
    using Error::Error;
};

/// Partition vectors or solver parameters are inconsistent.
class PartitionError : public Error {
   public:
    using Error::Error;
};

/// A fragment plan, cut specification or set of fragment outputs is inconsistent.
class PlanError : public Error {
   public:
    using Error::Error;
};

/// Simulation limits exceeded or a channel is non-physical.
class SimulationError : public Error {
   public:
    using Error::Error;
};

}  // namespace fragcut
