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

// Exhaustive reference implementations for tests. They depend only on the domain types
// and re-derive every formula on their own.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "fragcut/annealer.hpp"
#include "fragcut/circuit.hpp"
#include "fragcut/gate_graph.hpp"
#include "fragcut/noise.hpp"
#include "fragcut/partition.hpp"

namespace fragcut::oracle {

inline constexpr size_t MAX_BRUTE_FORCE_VERTICES = 20;
inline constexpr size_t MAX_BRUTE_FORCE_SPINS = 20;
inline constexpr size_t MAX_REFERENCE_WIDTH = 6;

struct MinCost {
    PartitionVector partition;
    double cost = 0;
};

/// Cheapest proper bipartition over all 2^N vectors (first found on ties).
MinCost brute_force_min_cost(const GateGraph &g);

struct IsingGround {
    SpinConfig spins;
    double energy = 0;
};

/// Lowest-energy spin configuration over all 2^n configurations.
IsingGround brute_force_ising_ground(const IsingModel &m);

using ReferenceMatrix = Eigen::MatrixXcd;

/// Noisy evolution built from explicit 2^w x 2^w Kraus operators: gate unitary, then a
/// Pauli channel per operand (gate error split over X, Y, Z and over operands), with
/// amplitude and phase damping on idle gaps of the as-soon-as-possible schedule.
ReferenceMatrix reference_density_evolution(const Circuit &c, const NoiseProfile &p);

struct OracleReport {
    std::string instance;
    double oracle_value = 0;
    double production_value = 0;
    double tolerance = 0;
    bool agree = false;
};

OracleReport compare(std::string instance, double oracle_value, double production_value, double tolerance);
nlohmann::json reports_to_json(const std::vector<OracleReport> &reports);

}  // namespace fragcut::oracle
