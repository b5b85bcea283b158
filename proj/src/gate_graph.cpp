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

#include "fragcut/gate_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "fragcut/error.hpp"

namespace fragcut {

using nlohmann::json;

GateGraph::GateGraph(std::vector<GraphVertex> vertices, std::vector<GraphEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    for (size_t i = 0; i < vertices_.size(); i++) {
        if (vertices_[i].id != i) {
            throw GraphError("vertex ids must be dense and ordered; found id " + std::to_string(vertices_[i].id) +
                             " at position " + std::to_string(i));
        }
        if (!(vertices_[i].weight >= 0) || !std::isfinite(vertices_[i].weight)) {
            throw GraphError("vertex " + std::to_string(i) + " has an invalid weight");
        }
    }
    std::set<std::pair<size_t, size_t>> seen;
    for (const GraphEdge &e : edges_) {
        if (e.u >= vertices_.size() || e.v >= vertices_.size() || e.u == e.v) {
            throw GraphError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                             ") does not join two distinct vertices");
        }
        if (e.weight != 1 && e.weight != 2) {
            throw GraphError("edge weight must be 1 or 2");
        }
        if (!e.segments.empty() && e.segments.size() != e.weight) {
            throw GraphError("edge weight must equal its number of wire segments");
        }
        if (!seen.insert(std::minmax(e.u, e.v)).second) {
            throw GraphError("duplicate edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
        }
    }
}

double GateGraph::total_weight() const {
    double s = 0;
    for (const GraphVertex &v : vertices_) {
        s += v.weight;
    }
    return s;
}

std::optional<size_t> GateGraph::vertex_of_gate(size_t gate_index) const {
    for (const GraphVertex &v : vertices_) {
        if (v.gate_index == gate_index) {
            return v.id;
        }
    }
    return std::nullopt;
}

GateGraph build_graph(const Circuit &c, const NoiseProfile &p) {
    const auto &gates = c.gates();
    AsapSchedule schedule = asap_schedule(c, p);

    std::vector<GraphVertex> vertices;
    std::vector<size_t> vertex_of(gates.size(), SIZE_MAX);
    // Per wire: index of the last two-qubit gate seen, and the single-qubit gates since.
    std::vector<size_t> last_two_qubit(c.width(), SIZE_MAX);
    std::vector<std::vector<size_t>> pending(c.width());
    std::map<std::pair<size_t, size_t>, std::vector<WireSegment>> segments;

    for (size_t k = 0; k < gates.size(); k++) {
        const Gate &g = gates[k];
        if (g.is_single_qubit()) {
            pending[g.qubits[0]].push_back(k);
            continue;
        }
        if (!g.is_two_qubit()) {
            continue;
        }
        double log_ok = std::log1p(-p.gate_error(g.name, g.qubits));
        double segment_start = schedule.finish_ns[k];
        double t1 = std::numeric_limits<double>::infinity();
        double t2 = t1;
        for (Qubit q : g.qubits) {
            for (size_t j : pending[q]) {
                log_ok += std::log1p(-p.gate_error(gates[j].name, gates[j].qubits));
            }
            pending[q].clear();
            size_t prev = last_two_qubit[q];
            segment_start = std::min(segment_start, prev == SIZE_MAX ? 0.0 : schedule.finish_ns[prev]);
            t1 = std::min(t1, p.t1_us(q));
            t2 = std::min(t2, p.t2_us(q));
            if (prev != SIZE_MAX) {
                segments[{vertex_of[prev], vertices.size()}].push_back(WireSegment{q, prev, k});
            }
            last_two_qubit[q] = k;
        }
        double tau_us = (schedule.finish_ns[k] - segment_start) * 1e-3;
        double decay = tau_us > 0 ? tau_us / t1 + tau_us / t2 : 0.0;
        double raw = -std::expm1(log_ok - decay);

        vertex_of[k] = vertices.size();
        vertices.push_back(GraphVertex{vertices.size(), k, 0.0, raw});
    }
    if (vertices.empty()) {
        throw GraphError("circuit has no two-qubit gate; nothing to fragment");
    }

    double total = 0;
    for (GraphVertex &v : vertices) {
        total += std::max(v.raw_weight, MIN_RAW_VERTEX_WEIGHT);
    }
    for (GraphVertex &v : vertices) {
        v.weight = std::max(v.raw_weight, MIN_RAW_VERTEX_WEIGHT) / total;
    }

    std::vector<GraphEdge> edges;
    for (auto &[key, segs] : segments) {
        edges.push_back(GraphEdge{key.first, key.second, static_cast<uint32_t>(segs.size()), std::move(segs)});
    }
    return GateGraph(std::move(vertices), std::move(edges));
}

json graph_to_json(const GateGraph &g) {
    json doc;
    doc["vertices"] = json::array();
    for (const GraphVertex &v : g.vertices()) {
        doc["vertices"].push_back(
            {{"id", v.id}, {"gate_index", v.gate_index}, {"weight", v.weight}, {"raw_weight", v.raw_weight}});
    }
    doc["edges"] = json::array();
    for (const GraphEdge &e : g.edges()) {
        json segs = json::array();
        for (const WireSegment &s : e.segments) {
            segs.push_back({{"qubit", s.qubit}, {"upstream_gate", s.upstream_gate}, {"downstream_gate", s.downstream_gate}});
        }
        doc["edges"].push_back({{"u", e.u}, {"v", e.v}, {"weight", e.weight}, {"segments", segs}});
    }
    return doc;
}

GateGraph graph_from_json(const json &doc) {
    try {
        if (!doc.is_object() || !doc.contains("vertices") || !doc.at("vertices").is_array()) {
            throw GraphError("graph document needs a 'vertices' array");
        }
        std::vector<GraphVertex> vertices;
        std::set<size_t> ids;
        for (const json &jv : doc.at("vertices")) {
            GraphVertex v;
            v.id = jv.at("id").get<size_t>();
            v.gate_index = jv.at("gate_index").get<size_t>();
            v.weight = jv.at("weight").get<double>();
            v.raw_weight = jv.value("raw_weight", v.weight);
            if (!ids.insert(v.id).second) {
                throw GraphError("duplicate vertex id " + std::to_string(v.id));
            }
            vertices.push_back(v);
        }
        std::sort(vertices.begin(), vertices.end(), [](const auto &a, const auto &b) { return a.id < b.id; });
        std::vector<GraphEdge> edges;
        if (doc.contains("edges")) {
            for (const json &je : doc.at("edges")) {
                GraphEdge e;
                e.u = je.at("u").get<size_t>();
                e.v = je.at("v").get<size_t>();
                e.weight = je.at("weight").get<uint32_t>();
                if (je.contains("segments")) {
                    for (const json &js : je.at("segments")) {
                        e.segments.push_back(WireSegment{js.at("qubit").get<Qubit>(), js.at("upstream_gate").get<size_t>(),
                                                         js.at("downstream_gate").get<size_t>()});
                    }
                }
                edges.push_back(std::move(e));
            }
        }
        return GateGraph(std::move(vertices), std::move(edges));
    } catch (const json::exception &e) {
        throw GraphError(std::string("malformed graph document: ") + e.what());
    }
}

std::string serialize_graph(const GateGraph &g) {
    return graph_to_json(g).dump(2);
}

GateGraph load_graph(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw GraphError(std::string("malformed graph document: ") + e.what());
    }
    return graph_from_json(doc);
}

}  // namespace fragcut
