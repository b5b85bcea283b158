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
#include <complex>
#include <cstdint>
#include <vector>

#include "fragcut/circuit.hpp"
#include "fragcut/distribution.hpp"
#include "fragcut/noise.hpp"

namespace fragcut {

using Complex = std::complex<double>;
/// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Matrix2 = std::array<Complex, 4>;

inline constexpr size_t MAX_IDEAL_WIDTH = 24;
inline constexpr size_t MAX_NOISY_WIDTH = 12;

/// Unitary of a single-qubit gate.
Matrix2 single_qubit_matrix(const Gate &g);

struct StateVector {
    size_t width = 0;
    std::vector<Complex> amplitudes;

    /// |0...0> on `width` qubits.
    explicit StateVector(size_t width);
    double norm() const;
};

/// Row-major 2^width x 2^width density matrix.
struct DensityMatrix {
    size_t width = 0;
    std::vector<Complex> entries;

    explicit DensityMatrix(size_t width);
    size_t dim() const {
        return size_t{1} << width;
    }
    Complex operator()(size_t row, size_t col) const {
        return entries[row * dim() + col];
    }
    Complex trace() const;
};

struct KrausChannel {
    std::vector<Matrix2> operators;

    /// max |(sum_k K_k^dagger K_k - I)_ab|.
    double completeness_error() const;
};

/// Relaxation for an idle period of `tau_ns` with relaxation time `t1_us`.
/// lambda = 1 - exp(-tau/T1). `p_thermal` is the weight of the absorbing branch;
/// with the default 0 only the dissipative pair acts.
KrausChannel amplitude_damping_channel(double tau_ns, double t1_us, double p_thermal = 0);

/// Pure dephasing for `tau_ns` with dephasing time `t_phi_us`; populations untouched.
KrausChannel phase_damping_channel(double tau_ns, double t_phi_us);

/// Pure dephasing time: 1/T_phi = 1/T2 - 1/(2 T1), clamped so T_phi >= 0 (infinite when
/// T2 is fully explained by relaxation).
double dephasing_time_us(double t1_us, double t2_us);

/// {sqrt(1-px-py-pz) I, sqrt(px) X, sqrt(py) Y, sqrt(pz) Z}.
KrausChannel pauli_error_channel(double p_ex, double p_ey, double p_ez);

void apply_gate(StateVector &sv, const Gate &g);
void apply_gate(DensityMatrix &dm, const Gate &g);
void apply_channel(DensityMatrix &dm, const KrausChannel &channel, Qubit q);

/// Exact pure-state evolution; measurements are ignored (all qubits are read at the end).
StateVector run_ideal(const Circuit &c);

/// Noisy density-matrix evolution. Per gate: ideal unitary followed by a Pauli channel on
/// each operand (the gate error split evenly over X, Y, Z and, for two-qubit gates, evenly
/// over both operands). Per idle gap of the ASAP schedule, including the tail up to the
/// makespan: amplitude damping then phase damping on the idle qubit.
DensityMatrix run_noisy_density(const Circuit &c, const NoiseProfile &p);

/// Born-rule probabilities of every computational basis outcome.
Distribution measure_distribution(const StateVector &sv);
Distribution measure_distribution(const DensityMatrix &dm);

/// Replaces exact probabilities by `shots` multinomial samples (normalized counts).
Distribution sample_shots(const Distribution &exact, uint64_t shots, uint64_t seed);

struct NoisyRunOptions {
    uint64_t shots = 0;  ///< 0 keeps exact probabilities
    uint64_t seed = 0;
};

Distribution run_noisy(const Circuit &c, const NoiseProfile &p, const NoisyRunOptions &options = {});

}  // namespace fragcut
