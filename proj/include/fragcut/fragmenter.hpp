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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fragcut/annealer.hpp"
#include "fragcut/circuit.hpp"
#include "fragcut/gate_graph.hpp"
#include "fragcut/noise.hpp"
#include "fragcut/partition.hpp"

namespace fragcut {

/// A wire cut placed right after `upstream_gate` on `qubit`, before the gates that lead
/// into `downstream_gate`. Gate indices refer to the circuit the cut was derived from.
struct CutPoint {
    Qubit qubit = 0;
    size_t upstream_gate = 0;
    size_t downstream_gate = 0;
    size_t id = 0;

    bool operator==(const CutPoint &other) const = default;
};

struct CutSpec {
    std::vector<CutPoint> cuts;

    size_t k() const {
        return cuts.size();
    }
};

/// One local qubit of a fragment. It starts in |0> or is initialized from cut `in_cut`,
/// and ends either as an output bit of original qubit `origin` or measured into cut `out_cut`.
struct LocalWire {
    Qubit origin = 0;
    std::optional<size_t> in_cut;
    std::optional<size_t> out_cut;

    bool operator==(const LocalWire &other) const = default;
};

struct Fragment {
    Circuit circuit;               ///< over compacted local qubits; no measurements
    std::vector<LocalWire> wires;  ///< one per local qubit
    std::vector<size_t> gate_origin;  ///< index in the original circuit of each gate

    /// (cut id, local qubit) pairs.
    std::vector<std::pair<size_t, Qubit>> in_cuts() const;
    std::vector<std::pair<size_t, Qubit>> out_cuts() const;
    /// Local qubit -> original qubit.
    std::vector<Qubit> qubit_map() const;

    bool operator==(const Fragment &other) const = default;
};

/// The whole circuit as a single fragment: every wire starts in |0> and is an output.
Fragment root_fragment(const Circuit &c);

/// One cut per wire segment whose endpoints lie on different sides, numbered from
/// `first_id`. k equals cut_size(pv, g). Throws PlanError for an improper vector.
CutSpec derive_cut_points(const PartitionVector &pv, const GateGraph &g, const Circuit &c, size_t first_id = 0);

/// Splits `parent` in two along `spec`. Two-qubit gates go to their vertex's side;
/// single-qubit gates follow the next two-qubit gate on their wire (the previous one
/// after the last); wires without two-qubit gates stay on side 0. Each run of a wire
/// on one side becomes a fresh local qubit.
std::array<Fragment, 2> split_fragment(const Fragment &parent, const CutSpec &spec, const PartitionVector &pv,
                                       const GateGraph &g);

/// split_fragment applied to the root fragment of `c`.
std::vector<Fragment> fragment(const Circuit &c, const CutSpec &spec, const PartitionVector &pv, const GateGraph &g);

enum class MeasureBasis : uint8_t { Z, X, Y };
enum class InitState : uint8_t { Zero, One, Plus, PlusI };

char basis_label(MeasureBasis b);
char init_label(InitState s);
MeasureBasis parse_basis(char c);
InitState parse_init(char c);

struct VariantRun {
    std::vector<MeasureBasis> bases;  ///< one per out_cut, in out_cuts() order
    std::vector<InitState> inits;     ///< one per in_cut, in in_cuts() order
    Circuit circuit;

    std::string bases_label() const;
    std::string inits_label() const;
};

/// All 3^|out_cuts| * 4^|in_cuts| measurement/initialization variants of `f`.
/// Initialization is prepended (|1>: x, |+>: h, |+i>: h s); basis changes are appended
/// (X: h, Y: sdg h) so every variant ends in a computational-basis readout.
std::vector<VariantRun> enumerate_variants(const Fragment &f);

enum class SolverChoice { Ga, Anneal, Both };

SolverChoice parse_solver(const std::string &name);
std::string solver_name(SolverChoice s);

struct FragmentOptions {
    size_t max_depth = 3;
    size_t max_k = 8;  ///< largest number of cuts accepted for a single split
    SolverChoice solver = SolverChoice::Both;
    GaParams ga;
    AnnealPartitionOptions anneal;
    uint64_t seed = 0;
};

enum class NodeStatus { MeetsThreshold, Split, Unsplittable };

struct PlanNode {
    std::string path;  ///< "r", "r0", "r01", ...
    Fragment fragment;
    ErrorEstimate estimate;
    NodeStatus status = NodeStatus::MeetsThreshold;
    std::string reason;  ///< why an unsplittable node stopped
    std::optional<CutSpec> cuts;
    std::optional<CutResult> ga;
    std::optional<CutResult> anneal;
    std::string chosen;
    std::vector<size_t> children;
};

struct FragmentPlan {
    double threshold = 0;
    Circuit circuit;
    std::vector<PlanNode> nodes;  ///< depth-first; nodes[0] is the root
    std::vector<size_t> leaves;   ///< node indices, depth-first order

    size_t total_cuts() const;
    std::vector<const Fragment *> leaf_fragments() const;
};

/// Threshold-driven recursive bipartitioning. A fragment whose estimated success
/// probability reaches `threshold` is a leaf. Otherwise it is bipartitioned with the
/// cheaper of the GA and annealer cuts (GA on ties) and both halves are processed the
/// same way. Fragments with fewer than two two-qubit gates, splits needing more than
/// `max_k` cuts and nodes at `max_depth` become unsplittable leaves.
///
/// Seeds are derived from the node path, so a subtree depends only on its fragment.
FragmentPlan recursive_fragment(const Circuit &c, const NoiseProfile &p, double threshold,
                                const FragmentOptions &options = {});

/// Single-leaf plan (no cuts) for `c`.
FragmentPlan trivial_plan(const Circuit &c, const NoiseProfile &p);

/// Plan with one split along `pv`, a partition of build_graph(c, p).
FragmentPlan single_split_plan(const Circuit &c, const NoiseProfile &p, const PartitionVector &pv);

nlohmann::json cutspec_to_json(const CutSpec &spec);
nlohmann::json fragment_to_json(const Fragment &f);
Fragment fragment_from_json(const nlohmann::json &doc);
nlohmann::json plan_to_json(const FragmentPlan &plan);
FragmentPlan plan_from_json(const nlohmann::json &doc);

}  // namespace fragcut
