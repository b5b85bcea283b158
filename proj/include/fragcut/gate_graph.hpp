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

#include "fragcut/circuit.hpp"
#include "fragcut/noise.hpp"

namespace fragcut {

/// A stretch of one qubit wire between two consecutive two-qubit gates.
struct WireSegment {
    Qubit qubit = 0;
    size_t upstream_gate = 0;
    size_t downstream_gate = 0;

    bool operator==(const WireSegment &other) const = default;
};

struct GraphVertex {
    size_t id = 0;
    size_t gate_index = 0;
    double weight = 0;      ///< normalized error weight
    double raw_weight = 0;  ///< segment error probability before normalization

    bool operator==(const GraphVertex &other) const = default;
};

struct GraphEdge {
    size_t u = 0;  ///< upstream vertex
    size_t v = 0;  ///< downstream vertex
    uint32_t weight = 1;
    std::vector<WireSegment> segments;

    bool operator==(const GraphEdge &other) const = default;
};

/// Doubly-weighted gate graph: two-qubit gates are vertices weighted by error
/// probability, shared wires between consecutive two-qubit gates are edges weighted
/// by the number of shared wires (1 or 2).
///
/// Vertex ids are dense: vertex `i` is at `vertices()[i]`.
class GateGraph {
   public:
    GateGraph() = default;
    GateGraph(std::vector<GraphVertex> vertices, std::vector<GraphEdge> edges);

    const std::vector<GraphVertex> &vertices() const {
        return vertices_;
    }
    const std::vector<GraphEdge> &edges() const {
        return edges_;
    }
    size_t num_vertices() const {
        return vertices_.size();
    }
    double total_weight() const;

    /// Vertex id of the two-qubit gate at `gate_index`, if any.
    std::optional<size_t> vertex_of_gate(size_t gate_index) const;

    bool operator==(const GateGraph &other) const = default;

   private:
    std::vector<GraphVertex> vertices_;
    std::vector<GraphEdge> edges_;
};

/// Smallest raw vertex weight kept before normalization.
inline constexpr double MIN_RAW_VERTEX_WEIGHT = 1e-12;

/// Builds the gate graph of `c`. A vertex's raw weight is the error probability of
/// its segment: the two-qubit gate, every single-qubit gate on its input wires back
/// to the previous two-qubit gate (or the wire start), and decoherence over the
/// segment duration. Raw weights are normalized to sum to one.
///
/// Throws GraphError when `c` has no two-qubit gate.
GateGraph build_graph(const Circuit &c, const NoiseProfile &p);

nlohmann::json graph_to_json(const GateGraph &g);
GateGraph graph_from_json(const nlohmann::json &doc);
std::string serialize_graph(const GateGraph &g);
GateGraph load_graph(const std::string &text);

}  // namespace fragcut
