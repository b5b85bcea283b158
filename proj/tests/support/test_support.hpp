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

// Random instance generators shared by the unit and acceptance tests.

#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fragcut/annealer.hpp"
#include "fragcut/circuit.hpp"
#include "fragcut/gate_graph.hpp"
#include "fragcut/noise.hpp"
#include "fragcut/partition.hpp"
#include "fragcut/qasm.hpp"

namespace fragcut::testing {

inline std::filesystem::path fixture(const std::string &relative) {
    return std::filesystem::path(FRAGCUT_FIXTURES) / relative;
}

inline Circuit load_fixture_circuit(const std::string &name) {
    return load_qasm_file(fixture("circuits/" + name + ".qasm"));
}

inline NoiseProfile load_fixture_profile(const std::string &name) {
    return load_profile_file(fixture("profiles/" + name + ".json"));
}

/// Random circuit over `width` qubits with `num_gates` gates, at least `min_two_qubit`
/// of them two-qubit (cx or cz).
inline Circuit random_circuit(std::mt19937_64 &rng, size_t width, size_t num_gates, size_t min_two_qubit = 2) {
    static const char *fixed[] = {"h", "x", "y", "z", "s", "sdg", "t", "tdg"};
    static const char *rotations[] = {"rx", "ry", "rz", "u1"};
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::vector<Gate> gates;
    size_t two = 0;
    for (size_t k = 0; k < num_gates; k++) {
        bool need_two = num_gates - k <= min_two_qubit - std::min(two, min_two_qubit);
        if (width >= 2 && (need_two || rng() % 2 == 0)) {
            Qubit a = static_cast<Qubit>(rng() % width);
            Qubit b = static_cast<Qubit>(rng() % (width - 1));
            if (b >= a) {
                b++;
            }
            gates.push_back(Gate{rng() % 4 == 0 ? "cz" : "cx", {a, b}, {}, false});
            two++;
            continue;
        }
        Qubit q = static_cast<Qubit>(rng() % width);
        switch (rng() % 4) {
            case 0:
            case 1:
                gates.push_back(Gate{fixed[rng() % 8], {q}, {}, false});
                break;
            case 2:
                gates.push_back(Gate{rotations[rng() % 4], {q}, {angle(rng)}, false});
                break;
            default:
                gates.push_back(Gate{"u3", {q}, {angle(rng), angle(rng), angle(rng)}, false});
                break;
        }
    }
    return Circuit(width, std::move(gates), "random");
}

/// Random connected gate graph with `n` vertices: a random spanning tree plus extra
/// edges, edge weights 1 or 2 and log-uniform vertex weights normalized to sum one.
inline GateGraph random_graph(std::mt19937_64 &rng, size_t n, double extra_edge_prob = 0.15) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<GraphVertex> vertices(n);
    double total = 0;
    for (size_t i = 0; i < n; i++) {
        double raw = std::exp(std::log(1e-3) + unit(rng) * (std::log(5e-2) - std::log(1e-3)));
        vertices[i] = GraphVertex{i, i, 0, raw};
        total += raw;
    }
    for (auto &v : vertices) {
        v.weight = v.raw_weight / total;
    }
    std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
    std::vector<GraphEdge> edges;
    auto add = [&](size_t a, size_t b) {
        if (a > b) {
            std::swap(a, b);
        }
        if (a == b || used[a][b]) {
            return;
        }
        used[a][b] = true;
        edges.push_back(GraphEdge{a, b, unit(rng) < 0.25 ? 2u : 1u, {}});
    };
    for (size_t i = 1; i < n; i++) {
        add(rng() % i, i);
    }
    for (size_t a = 0; a < n; a++) {
        for (size_t b = a + 1; b < n; b++) {
            if (unit(rng) < extra_edge_prob) {
                add(a, b);
            }
        }
    }
    return GateGraph(std::move(vertices), std::move(edges));
}

/// Sparse spin glass: Gaussian couplings on a random 3-regular-ish graph and small fields.
inline IsingModel random_spin_glass(std::mt19937_64 &rng, size_t n) {
    std::normal_distribution<double> normal(0.0, 1.0);
    IsingModel m;
    m.n = n;
    m.h.resize(n);
    for (auto &h : m.h) {
        h = 0.3 * normal(rng);
    }
    for (size_t i = 0; i < n; i++) {
        m.add_coupling(i, (i + 1) % n, normal(rng));
        size_t other = rng() % n;
        if (other != i) {
            m.add_coupling(i, other, normal(rng));
        }
    }
    return m;
}

/// Profile with random defaults, per-qubit T1/T2 and a few per-gate overrides.
inline NoiseProfile random_profile(std::mt19937_64 &rng, size_t width) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    NoiseDefaults d;
    d.p1 = 0.02 * unit(rng);
    d.p2 = 0.1 * unit(rng);
    d.d1_ns = 20 + 80 * unit(rng);
    d.d2_ns = 150 + 500 * unit(rng);
    std::map<Qubit, QubitCalibration> qubits;
    for (Qubit q = 0; q < width; q++) {
        double t1 = 2 + 60 * unit(rng);
        qubits[q] = QubitCalibration{t1, t1 * (0.2 + 1.7 * unit(rng)), std::nullopt};
    }
    std::map<std::pair<std::string, std::vector<Qubit>>, GateCalibration> gates;
    if (width >= 2) {
        gates[{"cx", {0, 1}}] = GateCalibration{0.15 * unit(rng), 200 + 400 * unit(rng)};
    }
    gates[{"h", {0}}] = GateCalibration{0.05 * unit(rng), std::nullopt};
    return NoiseProfile(d, std::move(qubits), std::move(gates));
}

}  // namespace fragcut::testing
