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

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <random>

#include "fragcut/error.hpp"
#include "fragcut/noise.hpp"
#include "fragcut/qasm.hpp"
#include "test_support.hpp"

namespace fragcut {
namespace {

const char *DEFAULTS_ONLY = R"({"version": 1, "defaults": {"p1": 0.001, "p2": 0.01, "d1_ns": 50, "d2_ns": 300}})";

std::vector<Gate> gates_of(size_t k1, size_t k2) {
    std::vector<Gate> gates;
    for (size_t i = 0; i < k1; i++) {
        gates.push_back(Gate{"h", {0}, {}, false});
    }
    for (size_t i = 0; i < k2; i++) {
        gates.push_back(Gate{"cx", {0, 1}, {}, false});
    }
    return gates;
}

TEST(Profile, DefaultsOnly) {
    NoiseProfile p = load_profile(DEFAULTS_ONLY);
    std::vector<Qubit> q{3};
    EXPECT_DOUBLE_EQ(p.gate_error("h", q), 0.001);
    EXPECT_DOUBLE_EQ(p.gate_error("rz", q), 0.001);
    EXPECT_TRUE(std::isinf(p.t1_us(0)));
}

TEST(Profile, PerGateOverride) {
    NoiseProfile p = load_profile(R"({"version": 1, "defaults": {"p1": 0.001, "p2": 0.01, "d1_ns": 50, "d2_ns": 300},
        "gates": [{"name": "cx", "qubits": [0, 1], "error": 0.02, "duration_ns": 400}]})");
    std::vector<Qubit> a{0, 1};
    std::vector<Qubit> b{1, 2};
    EXPECT_DOUBLE_EQ(p.gate_error("cx", a), 0.02);
    EXPECT_DOUBLE_EQ(p.gate_error("cx", b), 0.01);
    EXPECT_DOUBLE_EQ(p.gate_duration_ns("cx", a), 400);
    EXPECT_DOUBLE_EQ(p.gate_duration_ns("cx", b), 300);
}

TEST(Profile, SchemaErrors) {
    EXPECT_THROW(load_profile(R"({"version": 1, "defaults": {"p1": 0.001, "p2": 0.01, "d1_ns": 50, "d2_ns": 300},
        "qubits": [{"id": 0, "t2_us": 20}]})"),
                 ProfileError);
    EXPECT_THROW(load_profile(R"({"version": 1, "defaults": {"p1": 1.5, "p2": 0.01, "d1_ns": 50, "d2_ns": 300}})"),
                 ProfileError);
    EXPECT_THROW(load_profile(R"({"version": 2, "defaults": {"p1": 0.001, "p2": 0.01, "d1_ns": 50, "d2_ns": 300}})"),
                 ProfileError);
    EXPECT_THROW(load_profile("{not json"), ProfileError);
    EXPECT_THROW(load_profile_file("/nonexistent/profile.json"), ProfileError);
}

TEST(Profile, UnphysicalT2Warns) {
    NoiseProfile p = load_profile(R"({"version": 1, "defaults": {"p1": 0, "p2": 0, "d1_ns": 50, "d2_ns": 300},
        "qubits": [{"id": 0, "t1_us": 10, "t2_us": 30}]})");
    EXPECT_FALSE(p.warnings().empty());
}

TEST(Profile, JsonRoundTrip) {
    NoiseProfile p = testing::load_fixture_profile("synthetic");
    NoiseProfile back = NoiseProfile::from_json(p.to_json());
    EXPECT_EQ(back.to_json(), p.to_json());
}

TEST(Profile, RemapQueriesPhysicalQubits) {
    NoiseProfile p = testing::load_fixture_profile("synthetic");
    std::vector<Qubit> map{4, 5};
    NoiseProfile local = p.remap(map);
    std::vector<Qubit> lq{0, 1};
    std::vector<Qubit> pq{4, 5};
    EXPECT_DOUBLE_EQ(local.gate_error("cx", lq), p.gate_error("cx", pq));
    EXPECT_DOUBLE_EQ(local.t1_us(1), p.t1_us(5));
}

TEST(ErrorModel, GateErrorClosedForm) {
    NoiseProfile p = NoiseProfile::uniform(0.001, 0.01, 50, 300, std::nullopt, std::nullopt);
    using Big = boost::multiprecision::cpp_dec_float_50;
    Big expected = Big(1) - boost::multiprecision::pow(Big("0.999"), 10) * boost::multiprecision::pow(Big("0.99"), 5);
    double pge = gate_error_prob(Circuit(2, gates_of(10, 5)), p);
    EXPECT_NEAR(pge, expected.convert_to<double>(), 1e-12);
    EXPECT_NEAR(pge, 0.058478, 1e-6);
    EXPECT_EQ(gate_error_prob(Circuit(2, {}), p), 0);
    NoiseProfile certain = NoiseProfile::uniform(1, 0, 50, 300, std::nullopt, std::nullopt);
    EXPECT_EQ(gate_error_prob(Circuit(1, gates_of(1, 0)), certain), 1);
}

TEST(ErrorModel, SuccessWithDecoherence) {
    // 10 h at 50 ns then 5 cx at 100 ns: tau = 1 us.
    NoiseProfile p = NoiseProfile::uniform(0.001, 0.01, 50, 100, 100, 50);
    ErrorEstimate e = success_probability(Circuit(2, gates_of(10, 5)), p);
    EXPECT_DOUBLE_EQ(e.tau_ns, 1000);
    EXPECT_NEAR(e.success, (1 - 0.0584780) * std::exp(-0.03), 1e-6);
    EXPECT_NEAR(e.success, 0.913694, 5e-6);
    EXPECT_DOUBLE_EQ(e.p_error, 1 - e.success);

    ErrorEstimate empty = success_probability(Circuit(2, {}), p);
    EXPECT_EQ(empty.success, 1);

    NoiseProfile fast = NoiseProfile::uniform(0.001, 0.01, 10000, 10000, 1, 1);
    ErrorEstimate decayed = success_probability(Circuit(1, gates_of(1, 0)), fast);
    EXPECT_LT(decayed.success, 2.1e-9 * (1 - decayed.p_ge));
}

TEST(ErrorModel, TakesMinimumCoherenceOverTouchedQubits) {
    NoiseDefaults d{0, 0, 1000, 1000, std::nullopt, std::nullopt};
    NoiseProfile p(d, {{0, {100, 100, std::nullopt}}, {1, {10, 10, std::nullopt}}, {2, {1, 1, std::nullopt}}}, {});
    ErrorEstimate e = success_probability(Circuit(3, {Gate{"cx", {0, 1}, {}, false}}), p);
    EXPECT_NEAR(e.success, std::exp(-0.1 - 0.1), 1e-12);
}

TEST(ErrorModel, AddingGatesNeverHelps) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; i++) {
        size_t w = 2 + rng() % 4;
        NoiseProfile p = testing::random_profile(rng, w);
        Circuit c = testing::random_circuit(rng, w, 1 + rng() % 15, 1);
        std::vector<Gate> gates = c.gates();
        gates.push_back(Gate{"cx", {0, 1}, {}, false});
        double before = success_probability(c, p).success;
        double after = success_probability(Circuit(w, gates), p).success;
        EXPECT_LE(after, before);
        EXPECT_GE(after, 0);
        EXPECT_LE(before, 1);
    }
}

}  // namespace
}  // namespace fragcut
