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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace fragcut {

/// Dense outcome distribution over `width` qubits.
///
/// Index bit q of an outcome is the value of qubit q. In bitstrings, character q is
/// qubit q (qubit 0 leftmost).
struct Distribution {
    size_t width = 0;
    std::vector<double> probs;
    /// Set while the values may be negative or unnormalized (reconstruction intermediate).
    bool quasi = false;
    std::optional<uint64_t> shots;
    std::optional<double> negative_mass_clipped;

    Distribution() = default;
    explicit Distribution(size_t w) : width(w), probs(size_t{1} << w, 0.0) {
    }

    double operator()(const std::string &bitstring) const;
    double total() const;
};

std::string outcome_to_bitstring(uint64_t outcome, size_t width);
uint64_t bitstring_to_outcome(const std::string &bits);

nlohmann::json distribution_to_json(const Distribution &d);
Distribution distribution_from_json(const nlohmann::json &doc);

}  // namespace fragcut
