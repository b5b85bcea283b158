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

#include <filesystem>
#include <string>
#include <string_view>

#include "fragcut/circuit.hpp"

namespace fragcut {

/// Parses an OpenQASM 2.0 program restricted to a single quantum register and the
/// gate set {h x y z s sdg t tdg rx ry rz u1 u2 u3 cx cz swap}.
///
/// `barrier` is discarded, `swap` is rewritten as three `cx`, and `measure` is kept
/// as a terminal marker. Classical control, gate definitions, `reset`, mid-circuit
/// measurement and gates on three or more qubits are rejected with a ParseError
/// carrying the offending line and column.
Circuit parse_qasm(std::string_view text, std::string name = {});

Circuit load_qasm_file(const std::filesystem::path &path);

/// Emits OpenQASM 2.0 that parses back to an identical circuit.
std::string to_qasm(const Circuit &c);

}  // namespace fragcut
