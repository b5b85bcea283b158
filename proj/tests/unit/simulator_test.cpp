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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fragcut/error.hpp"
#include "fragcut/oracle.hpp"
#include "fragcut/simulator.hpp"
#include "test_support.hpp"

namespace fragcut {
namespace {

Circuit ghz3() {
    return Circuit(3, {Gate{"h", {0}, {}, false}, Gate{"cx", {0, 1}, {}, false}, Gate{"cx", {1, 2}, {}, false}});
}

NoiseProfile only_x_error(double p) {
    NoiseDefaults d{p, 0, 50, 300, std::nullopt, std::nullopt};
    return NoiseProfile(d, {}, {});
}

TEST(Ideal, Hadamard) {
    StateVector sv = run_ideal(Circuit(1, {Gate{"h", {0}, {}, false}}));
    EXPECT_NEAR(sv.amplitudes[0].real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(sv.amplitudes[1].real(), 1 / std::sqrt(2.0), 1e-15);
}

TEST(Ideal, GhzAndEmpty) {
    Distribution d = measure_distribution(run_ideal(ghz3()));
    EXPECT_NEAR(d("000"), 0.5, 1e-15);
    EXPECT_NEAR(d("111"), 0.5, 1e-15);
    EXPECT_NEAR(d.total(), 1, 1e-15);
    StateVector empty = run_ideal(Circuit(2, {}));
    EXPECT_EQ(empty.amplitudes[0], Complex(1, 0));
    EXPECT_EQ(measure_distribution(StateVector(1)).probs, (std::vector<double>{1.0, 0.0}));
}

TEST(Ideal, BitOrder) {
    Distribution d = measure_distribution(run_ideal(Circuit(3, {Gate{"x", {0}, {}, false}})));
    EXPECT_DOUBLE_EQ(d.probs[1], 1);
    EXPECT_DOUBLE_EQ(d("100"), 1);
    EXPECT_EQ(outcome_to_bitstring(1, 3), "100");
    EXPECT_EQ(bitstring_to_outcome("011"), 6u);
}

TEST(Ideal, WidthLimit) {
    EXPECT_THROW(run_ideal(Circuit(MAX_IDEAL_WIDTH + 1, {})), SimulationError);
    EXPECT_THROW(run_noisy_density(Circuit(MAX_NOISY_WIDTH + 1, {}), NoiseProfile::noiseless()), SimulationError);
}

TEST(Sampling, GhzShots) {
    Distribution d = sample_shots(measure_distribution(run_ideal(ghz3())), 100000, 2024);
    EXPECT_NEAR(d("000"), 0.5, 0.01);
    EXPECT_NEAR(d("111"), 0.5, 0.01);
    EXPECT_NEAR(d.total(), 1, 1e-12);
    EXPECT_EQ(d.shots, 100000u);
    EXPECT_EQ(sample_shots(measure_distribution(run_ideal(ghz3())), 1000, 7).probs,
              sample_shots(measure_distribution(run_ideal(ghz3())), 1000, 7).probs);
}

TEST(Channels, AmplitudeDamping) {
    KrausChannel id = amplitude_damping_channel(0, 30);
    EXPECT_LT(id.completeness_error(), 1e-15);
    EXPECT_NEAR(std::abs(id.operators[0][0]), 1, 1e-15);
    EXPECT_NEAR(std::abs(id.operators[0][3]), 1, 1e-15);

    DensityMatrix dm(1);
    apply_gate(dm, Gate{"x", {0}, {}, false});
    apply_channel(dm, amplitude_damping_channel(1e12, 1), 0);
    EXPECT_NEAR(dm(0, 0).real(), 1, 1e-12);

    DensityMatrix half(1);
    apply_gate(half, Gate{"x", {0}, {}, false});
    apply_channel(half, amplitude_damping_channel(30000, 30), 0);
    EXPECT_NEAR(half(0, 0).real(), 0.632121, 1e-6);
    EXPECT_NEAR(half(1, 1).real(), std::exp(-1.0), 1e-15);
}

TEST(Channels, PhaseDampingKeepsPopulations) {
    DensityMatrix dm(1);
    apply_gate(dm, Gate{"h", {0}, {}, false});
    apply_channel(dm, phase_damping_channel(10000, 10), 0);
    EXPECT_NEAR(dm(0, 0).real(), 0.5, 1e-15);
    EXPECT_LT(std::abs(dm(0, 1)), 0.5);
    EXPECT_TRUE(std::isinf(dephasing_time_us(10, 20)));
    EXPECT_NEAR(dephasing_time_us(10, 10), 20, 1e-12);
}

TEST(Channels, PauliCompleteness) {
    KrausChannel id = pauli_error_channel(0, 0, 0);
    EXPECT_LT(id.completeness_error(), 1e-15);
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(0, 1.0 / 3);
    for (int i = 0; i < 100; i++) {
        EXPECT_LT(pauli_error_channel(u(rng), u(rng), u(rng)).completeness_error(), 1e-14);
        EXPECT_LT(amplitude_damping_channel(u(rng) * 1e5, 1 + u(rng) * 50, u(rng)).completeness_error(), 1e-14);
    }
    EXPECT_THROW(pauli_error_channel(0.6, 0.3, 0.2), SimulationError);
}

TEST(Channels, XErrorAfterX) {
    DensityMatrix dm(1);
    apply_gate(dm, Gate{"x", {0}, {}, false});
    apply_channel(dm, pauli_error_channel(0.1, 0, 0), 0);
    Distribution d = measure_distribution(dm);
    EXPECT_NEAR(d.probs[1], 0.9, 1e-15);
    EXPECT_NEAR(d.probs[0], 0.1, 1e-15);
}

TEST(Noisy, NoiselessMatchesIdeal) {
    std::mt19937_64 rng(53);
    for (int i = 0; i < 20; i++) {
        Circuit c = testing::random_circuit(rng, 1 + rng() % 5, 1 + rng() % 20, 0);
        Distribution ideal = measure_distribution(run_ideal(c));
        Distribution noisy = run_noisy(c, NoiseProfile::noiseless());
        for (size_t x = 0; x < ideal.probs.size(); x++) {
            EXPECT_NEAR(noisy.probs[x], ideal.probs[x], 1e-12);
        }
    }
}

TEST(Noisy, GateErrorOnX) {
    // A 0.3 gate error splits into 0.1 each of X, Y and Z; X and Y both flip.
    Distribution d = run_noisy(Circuit(1, {Gate{"x", {0}, {}, false}}), only_x_error(0.3));
    EXPECT_NEAR(d.probs[0], 0.2, 1e-12);
    EXPECT_NEAR(d.probs[1], 0.8, 1e-12);
}

TEST(Noisy, IdleRelaxation) {
    // q1 waits 30 us in |1> while q0 runs a long gate.
    NoiseDefaults d{0, 0, 30000, 300, std::nullopt, std::nullopt};
    NoiseProfile p(d, {{0, {1e9, 1e9, std::nullopt}}, {1, {30, 60, std::nullopt}}}, {{{"x", {1}}, {0.0, 1e-9}}});
    Circuit c(2, {Gate{"x", {1}, {}, false}, Gate{"h", {0}, {}, false}});
    Distribution dist = run_noisy(c, p);
    double p1 = dist("01") + dist("11");
    EXPECT_NEAR(p1, std::exp(-1.0), 1e-6);
}

TEST(Noisy, AgreesWithReferenceEvolution) {
    std::mt19937_64 rng(59);
    for (int i = 0; i < 15; i++) {
        size_t w = 1 + rng() % 4;
        Circuit c = testing::random_circuit(rng, w, 1 + rng() % 15, 0);
        NoiseProfile p = testing::random_profile(rng, w);
        DensityMatrix dm = run_noisy_density(c, p);
        oracle::ReferenceMatrix ref = oracle::reference_density_evolution(c, p);
        for (size_t r = 0; r < dm.dim(); r++) {
            for (size_t col = 0; col < dm.dim(); col++) {
                EXPECT_LT(std::abs(dm(r, col) - ref(r, col)), 1e-12);
            }
        }
        EXPECT_NEAR(dm.trace().real(), 1, 1e-12);
    }
}

TEST(Oracle, ReferenceExamples) {
    oracle::ReferenceMatrix ideal = oracle::reference_density_evolution(ghz3(), NoiseProfile::noiseless());
    StateVector sv = run_ideal(ghz3());
    for (size_t r = 0; r < 8; r++) {
        for (size_t c = 0; c < 8; c++) {
            EXPECT_LT(std::abs(ideal(r, c) - sv.amplitudes[r] * std::conj(sv.amplitudes[c])), 1e-12);
        }
    }
    oracle::ReferenceMatrix x = oracle::reference_density_evolution(Circuit(1, {Gate{"x", {0}, {}, false}}),
                                                                    only_x_error(0.3));
    EXPECT_NEAR(x(0, 0).real(), 0.2, 1e-12);
    EXPECT_NEAR(x(1, 1).real(), 0.8, 1e-12);
}

}  // namespace
}  // namespace fragcut
