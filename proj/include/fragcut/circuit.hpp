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
#include <string_view>
#include <vector>

namespace fragcut {

class NoiseProfile;

using Qubit = uint32_t;

/// Static description of a supported gate name.
struct GateInfo {
    std::string_view name;
    uint8_t num_qubits;
    uint8_t num_params;
};

/// Returns the table entry for a supported unitary gate, or nullptr.
/// `measure` and `barrier` are statements, not gates, and are not listed.
const GateInfo *find_gate_info(std::string_view name);

struct Gate {
    std::string name;
    std::vector<Qubit> qubits;
    std::vector<double> params;
    bool is_measurement = false;

    static Gate measure(Qubit q);

    size_t arity() const {
        return qubits.size();
    }
    bool is_two_qubit() const {
        return !is_measurement && qubits.size() == 2;
    }
    bool is_single_qubit() const {
        return !is_measurement && qubits.size() == 1;
    }

    bool operator==(const Gate &other) const = default;
};

/// An ordered gate list over `width` qubits. List position is time order on each wire.
/// Validated on construction; never mutated afterwards.
class Circuit {
   public:
    Circuit() = default;
    Circuit(size_t width, std::vector<Gate> gates, std::string name = {});

    size_t width() const {
        return width_;
    }
    const std::vector<Gate> &gates() const {
        return gates_;
    }
    const std::string &name() const {
        return name_;
    }

    bool operator==(const Circuit &other) const = default;

   private:
    size_t width_ = 0;
    std::vector<Gate> gates_;
    std::string name_;
};

struct GateCounts {
    size_t single_qubit = 0;
    size_t two_qubit = 0;

    bool operator==(const GateCounts &other) const = default;
};

GateCounts gate_counts(const Circuit &c);

/// As-soon-as-possible schedule. Each gate starts once all of its qubits are free.
/// Measurements take no time.
struct AsapSchedule {
    std::vector<double> start_ns;
    std::vector<double> finish_ns;
    double makespan_ns = 0;
};

AsapSchedule asap_schedule(const Circuit &c, const NoiseProfile &p);

/// Operational wall time of the circuit: makespan of its ASAP schedule.
double schedule_makespan(const Circuit &c, const NoiseProfile &p);

/// Indices of the two-qubit gates of `c`, in circuit order.
std::vector<size_t> two_qubit_gate_indices(const Circuit &c);

}  // namespace fragcut
