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
#include <map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fragcut/gate_graph.hpp"
#include "fragcut/partition.hpp"

namespace fragcut {

using SpinConfig = std::vector<int8_t>;

/// E(s) = sum_i h_i s_i + sum_{i<j} J_ij s_i s_j + offset, with s_i in {-1,+1}.
struct IsingModel {
    size_t n = 0;
    std::vector<double> h;
    std::map<std::pair<size_t, size_t>, double> j;  ///< keys have first < second
    double offset = 0;

    /// Adds `value` to J_ab (order of a, b irrelevant).
    void add_coupling(size_t a, size_t b, double value);
    void validate() const;
};

/// E(x) = sum_{i<=j} Q_ij x_i x_j + offset, with x_i in {0,1}.
struct QuboModel {
    size_t n = 0;
    std::map<std::pair<size_t, size_t>, double> q;  ///< keys have first <= second
    double offset = 0;
};

double energy(const IsingModel &m, const SpinConfig &s);
double qubo_energy(const QuboModel &m, const std::vector<uint8_t> &x);

/// Substitutes s = 2x - 1. Energies agree pointwise, offsets included.
QuboModel ising_to_qubo(const IsingModel &m);
IsingModel qubo_to_ising(const QuboModel &m);

/// Encodes balanced bipartitioning of `g` as an Ising model:
///
///   sum_edges w^2 (1 - s_i s_j)/2 + alpha (sum_i v_i s_i)^2 + (sum_i v_i - n/2)^2
///     + beta (sum_i x_i - n/2)^2
///
/// The first term counts cut wires, the alpha term penalizes error-weight imbalance
/// and the beta term (off by default) penalizes vertex-count imbalance. With
/// alpha = 1 and beta = 0 the energy equals a literal reading of the objective in
/// which the last term is a spin-independent constant.
IsingModel build_ising(const GateGraph &g, double alpha = 1.0, double beta = 0.0);

struct AnnealSchedule {
    double t_start = 0;
    double t_end = 0;
    size_t sweeps = 1000;

    void validate() const;
    /// t_start from the largest local field magnitude, t_end = 1e-3 * t_start.
    static AnnealSchedule automatic(const IsingModel &m, size_t sweeps);
};

struct AnnealResult {
    SpinConfig spins;
    double energy = 0;
    /// Best energy of each restart, in restart order.
    std::vector<double> restart_energies;
    std::vector<SpinConfig> restart_spins;
};

/// Classical simulated annealing: single uniformly chosen spin flips, Metropolis
/// acceptance, geometric temperature schedule. Returns the lowest-energy
/// configuration seen across `restarts` independent chains. Deterministic in `seed`.
AnnealResult simulated_anneal(const IsingModel &m, const AnnealSchedule &schedule, uint64_t seed,
                              size_t restarts = 1);

/// s_i = +1 -> 1, s_i = -1 -> 0.
PartitionVector spins_to_partition(const SpinConfig &s);
SpinConfig partition_to_spins(const PartitionVector &pv);

struct AnnealPartitionOptions {
    std::vector<double> alphas{1, 2, 4, 8, 16};
    double beta = 0;
    size_t sweeps = 2000;
    size_t restarts = 4;
    double t_start = 0;  ///< 0 selects AnnealSchedule::automatic
    double t_end = 0;
    uint64_t seed = 0;
};

/// Solves the bipartition through the Ising encoding for each balance weight in
/// `alphas`, decodes every restart's best configuration and keeps the partition
/// with the lowest partition_cost. Never trusts Ising energies across encodings.
CutResult anneal_partition(const GateGraph &g, const AnnealPartitionOptions &options);

nlohmann::json ising_to_json(const IsingModel &m);
IsingModel ising_from_json(const nlohmann::json &doc);

}  // namespace fragcut
