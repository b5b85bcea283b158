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
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fragcut/gate_graph.hpp"

namespace fragcut {

/// Side assignment per vertex: 0 for the first part, 1 for the second.
class PartitionVector {
   public:
    PartitionVector() = default;
    explicit PartitionVector(std::vector<uint8_t> bits);
    PartitionVector(std::initializer_list<uint8_t> bits) : PartitionVector(std::vector<uint8_t>(bits)) {
    }

    size_t size() const {
        return bits_.size();
    }
    uint8_t operator[](size_t i) const {
        return bits_[i];
    }
    void flip(size_t i) {
        bits_[i] ^= 1;
    }
    const std::vector<uint8_t> &bits() const {
        return bits_;
    }

    /// Both sides non-empty.
    bool is_proper() const;
    PartitionVector complement() const;
    std::string to_string() const;

    bool operator==(const PartitionVector &other) const = default;

   private:
    std::vector<uint8_t> bits_;
};

/// Cost of a one-sided vector.
inline constexpr double IMPROPER_COST = std::numeric_limits<double>::infinity();

/// Weighted number of edges whose endpoints lie on different sides.
uint32_t cut_size(const PartitionVector &pv, const GateGraph &g);

/// cut_size * (1/Omega_0 + 1/Omega_1) where Omega_s is the vertex weight on side s.
/// IMPROPER_COST when a side is empty.
double partition_cost(const PartitionVector &pv, const GateGraph &g);

/// First floor(c1*N) bits of v1 followed by the remaining bits of v2.
PartitionVector crossover(const PartitionVector &v1, const PartitionVector &v2, double c1);

struct GaParams {
    double c1 = 0.5;          ///< crossover split fraction, in (0,1)
    size_t c2 = 3;            ///< passes without improvement tolerated before stopping
    size_t max_passes = 0;    ///< hard cap; 0 means 50 * N
    size_t restarts = 64;     ///< independent runs from random vectors; the best is kept
    double mutation = 0.0;    ///< per-bit flip probability applied after crossover
    uint64_t seed = 0;

    void validate() const;
};

struct CutResult {
    PartitionVector partition;
    double cost = IMPROPER_COST;
    uint32_t cut_size = 0;
    size_t passes = 0;
    std::string algorithm;
    uint64_t seed = 0;
    /// Best cost over all runs so far, after each pass; non-increasing.
    std::vector<double> min_cost_trace;
};

/// Error-balanced min-cut search.
///
/// One run keeps a working vector and the best vector seen. Each pass walks the working
/// vector bit by bit: a flip is kept when it beats the best cost and undone otherwise.
/// After the pass the working vector becomes `crossover(best, working, c1)`. A run stops
/// after more than `c2` consecutive passes without improvement or at `max_passes`.
///
/// `restarts` independent runs are made, each seeded from `seed` and the run index; the
/// first starts from `initial` when given. The cheapest vector over all runs is returned.
CutResult find_min_cut_ga(const GateGraph &g, const GaParams &params,
                          const std::optional<PartitionVector> &initial = std::nullopt);

nlohmann::json cut_result_to_json(const CutResult &r);
CutResult cut_result_from_json(const nlohmann::json &doc);

}  // namespace fragcut
