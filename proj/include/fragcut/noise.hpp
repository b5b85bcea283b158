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

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "fragcut/circuit.hpp"

namespace fragcut {

struct NoiseDefaults {
    double p1 = 0;        ///< single-qubit gate error probability
    double p2 = 0;        ///< two-qubit gate error probability
    double d1_ns = 50;    ///< single-qubit gate duration
    double d2_ns = 300;   ///< two-qubit gate duration
    /// Coherence times for qubits without their own record. Unset means no decoherence.
    std::optional<double> t1_us;
    std::optional<double> t2_us;
};

struct QubitCalibration {
    double t1_us = 0;
    double t2_us = 0;
    std::optional<double> readout_error;  // parsed, not used by the error model
};

struct GateCalibration {
    std::optional<double> error;
    std::optional<double> duration_ns;
};

/// Device calibration: per-qubit T1/T2 and per-gate error/duration with defaults.
///
/// Immutable after loading. A profile may carry a local-to-physical qubit map so that
/// fragments over compacted local qubits query the calibration of the physical wires
/// they came from (see `remap`).
class NoiseProfile {
   public:
    NoiseProfile() = default;
    NoiseProfile(NoiseDefaults defaults, std::map<Qubit, QubitCalibration> qubits,
                 std::map<std::pair<std::string, std::vector<Qubit>>, GateCalibration> gates);

    /// Uniform profile: every qubit shares the given T1/T2 (microseconds).
    static NoiseProfile uniform(double p1, double p2, double d1_ns, double d2_ns, std::optional<double> t1_us,
                                std::optional<double> t2_us);

    /// Ideal hardware: zero error, no decoherence, default durations.
    static NoiseProfile noiseless();

    double gate_error(const std::string &name, std::span<const Qubit> qubits) const;
    double gate_duration_ns(const std::string &name, std::span<const Qubit> qubits) const;
    /// Relaxation and coherence times; +infinity when the qubit has no calibration.
    double t1_us(Qubit q) const;
    double t2_us(Qubit q) const;

    /// Profile for a circuit whose qubit `i` is physical qubit `local_to_physical[i]`.
    NoiseProfile remap(std::span<const Qubit> local_to_physical) const;

    const NoiseDefaults &defaults() const {
        return defaults_;
    }
    /// Non-fatal physicality warnings collected at load time (e.g. T2 > 2 T1).
    const std::vector<std::string> &warnings() const {
        return warnings_;
    }

    nlohmann::json to_json() const;
    static NoiseProfile from_json(const nlohmann::json &doc);

   private:
    Qubit physical(Qubit q) const;
    const GateCalibration *find_gate(const std::string &name, std::span<const Qubit> qubits) const;
    void validate();

    NoiseDefaults defaults_;
    std::map<Qubit, QubitCalibration> qubits_;
    std::map<std::pair<std::string, std::vector<Qubit>>, GateCalibration> gates_;
    std::vector<Qubit> local_to_physical_;
    std::vector<std::string> warnings_;
};

NoiseProfile load_profile(const std::string &text);
NoiseProfile load_profile_file(const std::filesystem::path &path);

struct ErrorEstimate {
    double p_ge = 0;
    double p_error = 0;
    double success = 1;
    double tau_ns = 0;
};

/// Probability that at least one gate fails: 1 - prod_g (1 - p_g).
double gate_error_prob(const Circuit &c, const NoiseProfile &p);

/// Gate error combined with decoherence over the circuit makespan:
/// success = (1 - p_ge) * exp(-(tau/T1 + tau/T2)), with T1, T2 the minimum over the
/// qubits the circuit touches.
ErrorEstimate success_probability(const Circuit &c, const NoiseProfile &p);

}  // namespace fragcut
