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

#include "fragcut/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fragcut/error.hpp"
#include "fragcut/rng.hpp"

namespace fragcut {

namespace {

constexpr Complex I_UNIT{0, 1};

Matrix2 u3_matrix(double theta, double phi, double lambda) {
    double c = std::cos(theta / 2);
    double s = std::sin(theta / 2);
    return {Complex(c, 0), -std::exp(I_UNIT * lambda) * s, std::exp(I_UNIT * phi) * s,
            std::exp(I_UNIT * (phi + lambda)) * c};
}

Matrix2 conj(const Matrix2 &m) {
    return {std::conj(m[0]), std::conj(m[1]), std::conj(m[2]), std::conj(m[3])};
}

void apply_matrix(std::vector<Complex> &v, size_t bit, const Matrix2 &m) {
    const size_t mask = size_t{1} << bit;
    for (size_t i = 0; i < v.size(); i++) {
        if (i & mask) {
            continue;
        }
        Complex a = v[i];
        Complex b = v[i | mask];
        v[i] = m[0] * a + m[1] * b;
        v[i | mask] = m[2] * a + m[3] * b;
    }
}

void apply_cx(std::vector<Complex> &v, size_t control, size_t target) {
    const size_t cmask = size_t{1} << control;
    const size_t tmask = size_t{1} << target;
    for (size_t i = 0; i < v.size(); i++) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(v[i], v[i | tmask]);
        }
    }
}

void apply_cz(std::vector<Complex> &v, size_t a, size_t b) {
    const size_t mask = (size_t{1} << a) | (size_t{1} << b);
    for (size_t i = 0; i < v.size(); i++) {
        if ((i & mask) == mask) {
            v[i] = -v[i];
        }
    }
}

// Applies a gate to a vector whose qubit q lives at bit q + shift; `conjugate`
// selects the complex-conjugated unitary.
void apply_to_bits(std::vector<Complex> &v, const Gate &g, size_t shift, bool conjugate) {
    if (g.is_measurement) {
        return;
    }
    if (g.qubits.size() == 1) {
        Matrix2 m = single_qubit_matrix(g);
        apply_matrix(v, g.qubits[0] + shift, conjugate ? conj(m) : m);
    } else if (g.name == "cx") {
        apply_cx(v, g.qubits[0] + shift, g.qubits[1] + shift);
    } else if (g.name == "cz") {
        apply_cz(v, g.qubits[0] + shift, g.qubits[1] + shift);
    } else {
        throw SimulationError("no simulation rule for gate '" + g.name + "'");
    }
}

double lambda_for(double tau_ns, double t_us) {
    if (!(tau_ns >= 0) || !(t_us > 0)) {
        throw SimulationError("non-physical damping parameters (tau must be >= 0, T > 0)");
    }
    if (std::isinf(t_us)) {
        return 0;
    }
    double lambda = -std::expm1(-(tau_ns * 1e-3) / t_us);
    if (!(lambda >= 0 && lambda <= 1)) {
        throw SimulationError("damping strength outside [0,1]");
    }
    return lambda;
}

}  // namespace

Matrix2 single_qubit_matrix(const Gate &g) {
    const double r = std::numbers::sqrt2 / 2;
    const std::string &n = g.name;
    if (n == "h") {
        return {Complex(r), Complex(r), Complex(r), Complex(-r)};
    }
    if (n == "x") {
        return {0, 1, 1, 0};
    }
    if (n == "y") {
        return {0, -I_UNIT, I_UNIT, 0};
    }
    if (n == "z") {
        return {1, 0, 0, -1};
    }
    if (n == "s") {
        return {1, 0, 0, I_UNIT};
    }
    if (n == "sdg") {
        return {1, 0, 0, -I_UNIT};
    }
    if (n == "t") {
        return {1, 0, 0, std::exp(I_UNIT * (std::numbers::pi / 4))};
    }
    if (n == "tdg") {
        return {1, 0, 0, std::exp(-I_UNIT * (std::numbers::pi / 4))};
    }
    if (n == "rx") {
        double c = std::cos(g.params[0] / 2);
        double s = std::sin(g.params[0] / 2);
        return {c, -I_UNIT * s, -I_UNIT * s, c};
    }
    if (n == "ry") {
        double c = std::cos(g.params[0] / 2);
        double s = std::sin(g.params[0] / 2);
        return {c, -s, s, c};
    }
    if (n == "rz") {
        return {std::exp(-I_UNIT * (g.params[0] / 2)), 0, 0, std::exp(I_UNIT * (g.params[0] / 2))};
    }
    if (n == "u1") {
        return {1, 0, 0, std::exp(I_UNIT * g.params[0])};
    }
    if (n == "u2") {
        return u3_matrix(std::numbers::pi / 2, g.params[0], g.params[1]);
    }
    if (n == "u3") {
        return u3_matrix(g.params[0], g.params[1], g.params[2]);
    }
    throw SimulationError("'" + n + "' is not a single-qubit gate");
}

StateVector::StateVector(size_t w) : width(w), amplitudes(size_t{1} << w, Complex(0)) {
    amplitudes[0] = 1;
}

double StateVector::norm() const {
    double s = 0;
    for (const Complex &a : amplitudes) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

DensityMatrix::DensityMatrix(size_t w) : width(w), entries(size_t{1} << (2 * w), Complex(0)) {
    entries[0] = 1;
}

Complex DensityMatrix::trace() const {
    Complex t = 0;
    for (size_t i = 0; i < dim(); i++) {
        t += entries[i * dim() + i];
    }
    return t;
}

double KrausChannel::completeness_error() const {
    std::array<Complex, 4> sum{};
    for (const Matrix2 &k : operators) {
        for (int a = 0; a < 2; a++) {
            for (int b = 0; b < 2; b++) {
                // (K^dagger K)_ab = sum_c conj(K_ca) K_cb
                sum[2 * a + b] += std::conj(k[a]) * k[b] + std::conj(k[2 + a]) * k[2 + b];
            }
        }
    }
    sum[0] -= 1;
    sum[3] -= 1;
    double err = 0;
    for (const Complex &z : sum) {
        err = std::max(err, std::abs(z));
    }
    return err;
}

KrausChannel amplitude_damping_channel(double tau_ns, double t1_us, double p_thermal) {
    if (!(p_thermal >= 0 && p_thermal <= 1)) {
        throw SimulationError("thermal population must lie in [0,1]");
    }
    double lambda = lambda_for(tau_ns, t1_us);
    double p = 1 - p_thermal;
    double keep = std::sqrt(1 - lambda);
    double jump = std::sqrt(lambda);
    KrausChannel ch;
    if (p > 0) {
        double s = std::sqrt(p);
        ch.operators.push_back({s, 0, 0, s * keep});
        ch.operators.push_back({0, s * jump, 0, 0});
    }
    if (p_thermal > 0) {
        double s = std::sqrt(p_thermal);
        ch.operators.push_back({s * keep, 0, 0, s});
        ch.operators.push_back({0, 0, s * jump, 0});
    }
    return ch;
}

KrausChannel phase_damping_channel(double tau_ns, double t_phi_us) {
    double lambda = lambda_for(tau_ns, t_phi_us);
    KrausChannel ch;
    ch.operators.push_back({1, 0, 0, std::sqrt(1 - lambda)});
    ch.operators.push_back({0, 0, 0, std::sqrt(lambda)});
    return ch;
}

double dephasing_time_us(double t1_us, double t2_us) {
    double rate = 1 / t2_us - 1 / (2 * t1_us);
    if (!(rate > 0)) {
        return std::numeric_limits<double>::infinity();
    }
    return 1 / rate;
}

KrausChannel pauli_error_channel(double p_ex, double p_ey, double p_ez) {
    double total = p_ex + p_ey + p_ez;
    if (!(p_ex >= 0 && p_ey >= 0 && p_ez >= 0) || total > 1 + 1e-12) {
        throw SimulationError("Pauli error probabilities must be non-negative and sum to at most 1");
    }
    KrausChannel ch;
    double keep = std::sqrt(std::max(0.0, 1 - total));
    ch.operators.push_back({keep, 0, 0, keep});
    ch.operators.push_back({0, std::sqrt(p_ex), std::sqrt(p_ex), 0});
    double y = std::sqrt(p_ey);
    ch.operators.push_back({0, -I_UNIT * y, I_UNIT * y, 0});
    double z = std::sqrt(p_ez);
    ch.operators.push_back({z, 0, 0, -z});
    return ch;
}

void apply_gate(StateVector &sv, const Gate &g) {
    apply_to_bits(sv.amplitudes, g, 0, false);
}

void apply_gate(DensityMatrix &dm, const Gate &g) {
    apply_to_bits(dm.entries, g, dm.width, false);
    apply_to_bits(dm.entries, g, 0, true);
}

void apply_channel(DensityMatrix &dm, const KrausChannel &channel, Qubit q) {
    const size_t row_mask = size_t{1} << (q + dm.width);
    const size_t col_mask = size_t{1} << q;
    auto &v = dm.entries;
    for (size_t base = 0; base < v.size(); base++) {
        if (base & (row_mask | col_mask)) {
            continue;
        }
        const size_t idx[4] = {base, base | col_mask, base | row_mask, base | row_mask | col_mask};
        Complex block[4] = {v[idx[0]], v[idx[1]], v[idx[2]], v[idx[3]]};
        Complex out[4] = {0, 0, 0, 0};
        for (const Matrix2 &k : channel.operators) {
            // t = K * block
            Complex t[4] = {k[0] * block[0] + k[1] * block[2], k[0] * block[1] + k[1] * block[3],
                            k[2] * block[0] + k[3] * block[2], k[2] * block[1] + k[3] * block[3]};
            // out += t * K^dagger
            out[0] += t[0] * std::conj(k[0]) + t[1] * std::conj(k[1]);
            out[1] += t[0] * std::conj(k[2]) + t[1] * std::conj(k[3]);
            out[2] += t[2] * std::conj(k[0]) + t[3] * std::conj(k[1]);
            out[3] += t[2] * std::conj(k[2]) + t[3] * std::conj(k[3]);
        }
        for (int a = 0; a < 4; a++) {
            v[idx[a]] = out[a];
        }
    }
}

StateVector run_ideal(const Circuit &c) {
    if (c.width() > MAX_IDEAL_WIDTH) {
        throw SimulationError("ideal simulation is limited to " + std::to_string(MAX_IDEAL_WIDTH) + " qubits");
    }
    StateVector sv(c.width());
    for (const Gate &g : c.gates()) {
        apply_gate(sv, g);
    }
    return sv;
}

DensityMatrix run_noisy_density(const Circuit &c, const NoiseProfile &p) {
    if (c.width() > MAX_NOISY_WIDTH) {
        throw SimulationError("noisy simulation is limited to " + std::to_string(MAX_NOISY_WIDTH) + " qubits");
    }
    DensityMatrix dm(c.width());
    std::vector<double> free_at(c.width(), 0.0);

    auto idle = [&](Qubit q, double gap_ns) {
        if (!(gap_ns > 0)) {
            return;
        }
        double t1 = p.t1_us(q);
        double t2 = p.t2_us(q);
        if (std::isfinite(t1)) {
            apply_channel(dm, amplitude_damping_channel(gap_ns, t1), q);
        }
        double t_phi = dephasing_time_us(t1, t2);
        if (std::isfinite(t_phi)) {
            apply_channel(dm, phase_damping_channel(gap_ns, t_phi), q);
        }
    };

    for (const Gate &g : c.gates()) {
        if (g.is_measurement) {
            continue;
        }
        double start = 0;
        for (Qubit q : g.qubits) {
            start = std::max(start, free_at[q]);
        }
        for (Qubit q : g.qubits) {
            idle(q, start - free_at[q]);
        }
        apply_gate(dm, g);
        double err = p.gate_error(g.name, g.qubits);
        if (err > 0) {
            double per_pauli = err / (3.0 * static_cast<double>(g.qubits.size()));
            KrausChannel ch = pauli_error_channel(per_pauli, per_pauli, per_pauli);
            for (Qubit q : g.qubits) {
                apply_channel(dm, ch, q);
            }
        }
        double finish = start + p.gate_duration_ns(g.name, g.qubits);
        for (Qubit q : g.qubits) {
            free_at[q] = finish;
        }
    }
    double makespan = 0;
    for (double t : free_at) {
        makespan = std::max(makespan, t);
    }
    for (Qubit q = 0; q < c.width(); q++) {
        idle(q, makespan - free_at[q]);
    }
    return dm;
}

Distribution measure_distribution(const StateVector &sv) {
    Distribution d(sv.width);
    for (size_t i = 0; i < sv.amplitudes.size(); i++) {
        d.probs[i] = std::norm(sv.amplitudes[i]);
    }
    return d;
}

Distribution measure_distribution(const DensityMatrix &dm) {
    Distribution d(dm.width);
    for (size_t i = 0; i < dm.dim(); i++) {
        d.probs[i] = std::max(0.0, dm(i, i).real());
    }
    return d;
}

Distribution sample_shots(const Distribution &exact, uint64_t shots, uint64_t seed) {
    if (shots == 0) {
        return exact;
    }
    std::vector<double> cumulative(exact.probs.size());
    double acc = 0;
    for (size_t i = 0; i < exact.probs.size(); i++) {
        acc += std::max(0.0, exact.probs[i]);
        cumulative[i] = acc;
    }
    std::mt19937_64 rng(seed);
    std::vector<uint64_t> counts(exact.probs.size(), 0);
    for (uint64_t s = 0; s < shots; s++) {
        double u = uniform01(rng) * acc;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        size_t idx = std::min<size_t>(static_cast<size_t>(it - cumulative.begin()), counts.size() - 1);
        counts[idx]++;
    }
    Distribution out(exact.width);
    for (size_t i = 0; i < counts.size(); i++) {
        out.probs[i] = static_cast<double>(counts[i]) / static_cast<double>(shots);
    }
    out.shots = shots;
    return out;
}

Distribution run_noisy(const Circuit &c, const NoiseProfile &p, const NoisyRunOptions &options) {
    Distribution exact = measure_distribution(run_noisy_density(c, p));
    return options.shots ? sample_shots(exact, options.shots, options.seed) : exact;
}

}  // namespace fragcut
