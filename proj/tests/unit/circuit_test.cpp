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

#include <random>

#include "fragcut/circuit.hpp"
#include "fragcut/error.hpp"
#include "fragcut/noise.hpp"
#include "fragcut/qasm.hpp"
#include "test_support.hpp"

namespace fragcut {
namespace {

const char *HEADER = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";

Circuit parse_body(const std::string &body, size_t width = 3) {
    return parse_qasm(std::string(HEADER) + "qreg q[" + std::to_string(width) + "];\n" + body);
}

TEST(Qasm, ParsesGatesInOrder) {
    Circuit c = parse_body("h q[0];\ncx q[0],q[1];\n", 2);
    EXPECT_EQ(c.width(), 2u);
    ASSERT_EQ(c.gates().size(), 2u);
    EXPECT_EQ(c.gates()[0], (Gate{"h", {0}, {}, false}));
    EXPECT_EQ(c.gates()[1], (Gate{"cx", {0, 1}, {}, false}));
}

TEST(Qasm, EmptyBody) {
    Circuit c = parse_body("", 4);
    EXPECT_EQ(c.width(), 4u);
    EXPECT_TRUE(c.gates().empty());
}

TEST(Qasm, RejectsThreeQubitGate) {
    try {
        parse_body("ccx q[0],q[1],q[2];\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_NE(std::string(e.what()).find("ccx"), std::string::npos);
        EXPECT_EQ(e.line(), 4u);
    }
}

TEST(Qasm, RejectsOutOfRangeQubit) {
    EXPECT_THROW(parse_body("h q[3];\n"), ParseError);
}

TEST(Qasm, SyntaxErrorCarriesPosition) {
    try {
        parse_body("h q[0]\ncx q[0],q[1];\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_GE(e.line(), 4u);
        EXPECT_GE(e.column(), 1u);
    }
}

TEST(Qasm, RejectsClassicalControlAndMidCircuitMeasurement) {
    EXPECT_THROW(parse_body("creg c[3];\nif(c==1) x q[0];\n"), ParseError);
    EXPECT_THROW(parse_body("creg c[3];\nmeasure q[0] -> c[0];\nh q[0];\n"), ParseError);
}

TEST(Qasm, BarrierDroppedSwapExpanded) {
    Circuit c = parse_body("barrier q;\nswap q[0],q[2];\n");
    ASSERT_EQ(c.gates().size(), 3u);
    for (const Gate &g : c.gates()) {
        EXPECT_EQ(g.name, "cx");
    }
    EXPECT_EQ(c.gates()[1].qubits, (std::vector<Qubit>{2, 0}));
}

TEST(Qasm, ParametersAndMeasurements) {
    Circuit c = parse_body("creg c[3];\nrz(pi/2) q[1];\nu3(0.1,-0.2,3*pi) q[2];\nmeasure q -> c;\n");
    ASSERT_EQ(c.gates().size(), 5u);
    EXPECT_NEAR(c.gates()[0].params[0], std::numbers::pi / 2, 1e-15);
    EXPECT_EQ(c.gates()[1].params.size(), 3u);
    EXPECT_TRUE(c.gates()[4].is_measurement);
}

TEST(Qasm, RoundTripRandomCircuits) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; i++) {
        Circuit c = testing::random_circuit(rng, 2 + rng() % 5, 1 + rng() % 30, 1);
        Circuit back = parse_qasm(to_qasm(c), c.name());
        EXPECT_EQ(back.gates(), c.gates());
        EXPECT_EQ(back.width(), c.width());
    }
}

TEST(Circuit, ConstructorValidates) {
    EXPECT_THROW(Circuit(2, {Gate{"cx", {0, 2}, {}, false}}), Error);
    EXPECT_THROW(Circuit(2, {Gate{"cx", {1, 1}, {}, false}}), Error);
    EXPECT_THROW(Circuit(2, {Gate{"rz", {0}, {}, false}}), Error);
}

TEST(Circuit, Makespan) {
    NoiseProfile p = NoiseProfile::uniform(0, 0, 50, 300, std::nullopt, std::nullopt);
    EXPECT_DOUBLE_EQ(schedule_makespan(parse_body("h q[0];\nh q[1];\n", 2), p), 50);
    EXPECT_DOUBLE_EQ(schedule_makespan(parse_body("h q[0];\ncx q[0],q[1];\n", 2), p), 350);
    EXPECT_DOUBLE_EQ(schedule_makespan(parse_body("", 2), p), 0);
}

TEST(Circuit, MakespanMonotoneUnderAppend) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 40; i++) {
        size_t w = 2 + rng() % 4;
        NoiseProfile p = testing::random_profile(rng, w);
        Circuit c = testing::random_circuit(rng, w, 1 + rng() % 20, 1);
        std::vector<Gate> gates = c.gates();
        double before = schedule_makespan(c, p);
        gates.push_back(Gate{"x", {static_cast<Qubit>(rng() % w)}, {}, false});
        EXPECT_GE(schedule_makespan(Circuit(w, gates), p), before);
    }
}

TEST(Circuit, GateCounts) {
    EXPECT_EQ(gate_counts(parse_body("h q[0];\ncx q[0],q[1];\n", 2)), (GateCounts{1, 1}));
    EXPECT_EQ(gate_counts(parse_body("", 2)), (GateCounts{0, 0}));
    Circuit chain = testing::load_fixture_circuit("chain5");
    EXPECT_EQ(gate_counts(chain), (GateCounts{0, 4}));
    size_t non_measure = 0;
    for (const Gate &g : chain.gates()) {
        non_measure += g.is_measurement ? 0 : 1;
    }
    GateCounts k = gate_counts(chain);
    EXPECT_EQ(k.single_qubit + k.two_qubit, non_measure);
}

}  // namespace
}  // namespace fragcut
