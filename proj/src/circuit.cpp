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

#include "fragcut/circuit.hpp"

#include <algorithm>
#include <array>

#include "fragcut/error.hpp"
#include "fragcut/noise.hpp"

namespace fragcut {

namespace {

constexpr std::array<GateInfo, 16> GATE_TABLE{{
    {"h", 1, 0},
    {"x", 1, 0},
    {"y", 1, 0},
    {"z", 1, 0},
    {"s", 1, 0},
    {"sdg", 1, 0},
    {"t", 1, 0},
    {"tdg", 1, 0},
    {"rx", 1, 1},
    {"ry", 1, 1},
    {"rz", 1, 1},
    {"u1", 1, 1},
    {"u2", 1, 2},
    {"u3", 1, 3},
    {"cx", 2, 0},
    {"cz", 2, 0},
}};

}  // namespace

const GateInfo *find_gate_info(std::string_view name) {
    for (const auto &info : GATE_TABLE) {
        if (info.name == name) {
            return &info;
        }
    }
    return nullptr;
}

Gate Gate::measure(Qubit q) {
    return Gate{"measure", {q}, {}, true};
}

Circuit::Circuit(size_t width, std::vector<Gate> gates, std::string name)
    : width_(width), gates_(std::move(gates)), name_(std::move(name)) {
    for (size_t k = 0; k < gates_.size(); k++) {
        const Gate &g = gates_[k];
        if (g.is_measurement) {
            if (g.qubits.size() != 1 || !g.params.empty()) {
                throw Error("gate " + std::to_string(k) + ": measurement takes exactly one qubit");
            }
        } else {
            const GateInfo *info = find_gate_info(g.name);
            if (info == nullptr) {
                throw Error("gate " + std::to_string(k) + ": unsupported gate '" + g.name + "'");
            }
            if (g.qubits.size() != info->num_qubits) {
                throw Error("gate " + std::to_string(k) + ": '" + g.name + "' expects " +
                            std::to_string(info->num_qubits) + " qubit(s)");
            }
            if (g.params.size() != info->num_params) {
                throw Error("gate " + std::to_string(k) + ": '" + g.name + "' expects " +
                            std::to_string(info->num_params) + " parameter(s)");
            }
        }
        for (Qubit q : g.qubits) {
            if (q >= width_) {
                throw Error("gate " + std::to_string(k) + ": qubit index " + std::to_string(q) +
                            " out of range for width " + std::to_string(width_));
            }
        }
        if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1]) {
            throw Error("gate " + std::to_string(k) + ": repeated qubit operand");
        }
    }
}

GateCounts gate_counts(const Circuit &c) {
    GateCounts counts;
    for (const Gate &g : c.gates()) {
        if (g.is_single_qubit()) {
            counts.single_qubit++;
        } else if (g.is_two_qubit()) {
            counts.two_qubit++;
        }
    }
    return counts;
}

AsapSchedule asap_schedule(const Circuit &c, const NoiseProfile &p) {
    AsapSchedule schedule;
    schedule.start_ns.resize(c.gates().size());
    schedule.finish_ns.resize(c.gates().size());
    std::vector<double> free_at(c.width(), 0.0);
    for (size_t k = 0; k < c.gates().size(); k++) {
        const Gate &g = c.gates()[k];
        double start = 0;
        for (Qubit q : g.qubits) {
            start = std::max(start, free_at[q]);
        }
        double finish = g.is_measurement ? start : start + p.gate_duration_ns(g.name, g.qubits);
        for (Qubit q : g.qubits) {
            free_at[q] = finish;
        }
        schedule.start_ns[k] = start;
        schedule.finish_ns[k] = finish;
        schedule.makespan_ns = std::max(schedule.makespan_ns, finish);
    }
    return schedule;
}

double schedule_makespan(const Circuit &c, const NoiseProfile &p) {
    return asap_schedule(c, p).makespan_ns;
}

std::vector<size_t> two_qubit_gate_indices(const Circuit &c) {
    std::vector<size_t> out;
    for (size_t k = 0; k < c.gates().size(); k++) {
        if (c.gates()[k].is_two_qubit()) {
            out.push_back(k);
        }
    }
    return out;
}

}  // namespace fragcut
