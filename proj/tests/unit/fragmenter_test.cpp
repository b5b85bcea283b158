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
#include "fragcut/fragmenter.hpp"
#include "test_support.hpp"

namespace fragcut {
namespace {

NoiseProfile gate_only(double p2 = 0.01) {
    return NoiseProfile::uniform(0.001, p2, 50, 300, std::nullopt, std::nullopt);
}

Circuit ghz3() {
    return Circuit(3, {Gate{"h", {0}, {}, false}, Gate{"cx", {0, 1}, {}, false}, Gate{"cx", {1, 2}, {}, false}});
}

TEST(CutPoints, ChainSplitInMiddle) {
    Circuit c = testing::load_fixture_circuit("chain5");
    GateGraph g = build_graph(c, gate_only());
    CutSpec spec = derive_cut_points({0, 0, 1, 1}, g, c);
    ASSERT_EQ(spec.k(), 1u);
    EXPECT_EQ(spec.cuts[0], (CutPoint{2, 1, 2, 0}));
}

TEST(CutPoints, DisconnectedAndDoubleEdge) {
    Circuit apart(4, {Gate{"cx", {0, 1}, {}, false}, Gate{"cx", {2, 3}, {}, false}});
    GateGraph ga = build_graph(apart, gate_only());
    EXPECT_EQ(derive_cut_points({0, 1}, ga, apart).k(), 0u);
    auto pieces = fragment(apart, CutSpec{}, {0, 1}, ga);
    for (const Fragment &f : pieces) {
        EXPECT_TRUE(f.in_cuts().empty());
        EXPECT_TRUE(f.out_cuts().empty());
        EXPECT_EQ(f.circuit.width(), 2u);
    }

    Circuit twice(2, {Gate{"cx", {0, 1}, {}, false}, Gate{"cz", {0, 1}, {}, false}});
    GateGraph gt = build_graph(twice, gate_only());
    CutSpec spec = derive_cut_points({0, 1}, gt, twice, 5);
    ASSERT_EQ(spec.k(), 2u);
    EXPECT_EQ(spec.cuts[0].id, 5u);
    EXPECT_EQ(spec.cuts[1].id, 6u);
    EXPECT_THROW(derive_cut_points({1, 1}, gt, twice), PlanError);
}

TEST(Fragment, ChainGivesThreeQubitPieces) {
    Circuit c = testing::load_fixture_circuit("chain5");
    GateGraph g = build_graph(c, gate_only());
    PartitionVector pv{0, 0, 1, 1};
    auto pieces = fragment(c, derive_cut_points(pv, g, c), pv, g);
    ASSERT_EQ(pieces.size(), 2u);
    EXPECT_EQ(pieces[0].circuit.width(), 3u);
    EXPECT_EQ(pieces[1].circuit.width(), 3u);
    EXPECT_EQ(pieces[0].out_cuts().size(), 1u);
    EXPECT_TRUE(pieces[0].in_cuts().empty());
    EXPECT_EQ(pieces[1].in_cuts().size(), 1u);
    EXPECT_TRUE(pieces[1].out_cuts().empty());
    EXPECT_EQ(pieces[0].qubit_map(), (std::vector<Qubit>{0, 1, 2}));
    EXPECT_EQ(pieces[1].qubit_map(), (std::vector<Qubit>{2, 3, 4}));
}

TEST(Fragment, GhzPieces) {
    Circuit c = ghz3();
    GateGraph g = build_graph(c, gate_only());
    PartitionVector pv{0, 1};
    auto pieces = fragment(c, derive_cut_points(pv, g, c), pv, g);
    const Fragment &a = pieces[0];
    const Fragment &b = pieces[1];
    ASSERT_EQ(a.circuit.gates().size(), 2u);
    EXPECT_EQ(a.circuit.gates()[0].name, "h");
    EXPECT_EQ(a.circuit.gates()[1], (Gate{"cx", {0, 1}, {}, false}));
    EXPECT_EQ(a.out_cuts(), (std::vector<std::pair<size_t, Qubit>>{{0, 1}}));
    EXPECT_EQ(a.gate_origin, (std::vector<size_t>{0, 1}));
    ASSERT_EQ(b.circuit.gates().size(), 1u);
    EXPECT_EQ(b.circuit.gates()[0], (Gate{"cx", {0, 1}, {}, false}));
    EXPECT_EQ(b.in_cuts(), (std::vector<std::pair<size_t, Qubit>>{{0, 0}}));
    EXPECT_EQ(b.qubit_map(), (std::vector<Qubit>{1, 2}));
}

TEST(Fragment, EveryExtraLocalQubitComesFromACut) {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 40; i++) {
        size_t w = 2 + rng() % 5;
        Circuit c = testing::random_circuit(rng, w, 6 + rng() % 20, 3);
        GateGraph g = build_graph(c, gate_only());
        std::vector<uint8_t> bits(g.num_vertices());
        for (auto &b : bits) {
            b = rng() % 2;
        }
        bits[0] = 0;
        bits[1] = 1;
        PartitionVector pv(bits);
        CutSpec spec = derive_cut_points(pv, g, c);
        EXPECT_EQ(spec.k(), cut_size(pv, g));
        auto pieces = fragment(c, spec, pv, g);
        size_t gates = 0;
        size_t width = 0;
        for (const Fragment &f : pieces) {
            EXPECT_EQ(f.wires.size(), f.circuit.width());
            EXPECT_LE(f.circuit.width(), c.width() + f.in_cuts().size());
            gates += f.circuit.gates().size();
            width += f.circuit.width();
        }
        EXPECT_EQ(gates, c.gates().size());
        EXPECT_EQ(width, c.width() + spec.k());
        EXPECT_EQ(pieces[0].out_cuts().size() + pieces[1].out_cuts().size(), spec.k());
        EXPECT_EQ(pieces[0].in_cuts().size() + pieces[1].in_cuts().size(), spec.k());
    }
}

TEST(Fragment, TimeOrderedSplitKeepsWidth) {
    std::mt19937_64 rng(73);
    for (int i = 0; i < 40; i++) {
        size_t w = 2 + rng() % 5;
        Circuit c = testing::random_circuit(rng, w, 6 + rng() % 20, 3);
        GateGraph g = build_graph(c, gate_only());
        std::vector<uint8_t> bits(g.num_vertices(), 1);
        std::fill(bits.begin(), bits.begin() + 1 + rng() % (bits.size() - 1), 0);
        PartitionVector pv(bits);
        for (const Fragment &f : fragment(c, derive_cut_points(pv, g, c), pv, g)) {
            EXPECT_LE(f.circuit.width(), c.width());
        }
    }
}

TEST(Variants, Counts) {
    Circuit c = ghz3();
    GateGraph g = build_graph(c, gate_only());
    PartitionVector pv{0, 1};
    auto pieces = fragment(c, derive_cut_points(pv, g, c), pv, g);
    auto up = enumerate_variants(pieces[0]);
    auto down = enumerate_variants(pieces[1]);
    EXPECT_EQ(up.size(), 3u);
    EXPECT_EQ(down.size(), 4u);
    EXPECT_EQ(up[2].bases_label(), "Y");
    EXPECT_EQ(up[2].circuit.gates().back().name, "h");
    EXPECT_EQ(down[3].inits_label(), "i");
    EXPECT_EQ(down[3].circuit.gates()[0].name, "h");
    EXPECT_EQ(down[3].circuit.gates()[1].name, "s");

    Fragment mixed{Circuit(3, {Gate{"cx", {0, 1}, {}, false}, Gate{"cx", {1, 2}, {}, false}}),
                   {LocalWire{0, std::nullopt, 0}, LocalWire{1, std::nullopt, 1}, LocalWire{2, 2, std::nullopt}},
                   {0, 1}};
    EXPECT_EQ(enumerate_variants(mixed).size(), 36u);
    EXPECT_EQ(enumerate_variants(root_fragment(c)).size(), 1u);
}

TEST(Labels, RoundTrip) {
    for (char ch : std::string("ZXY")) {
        EXPECT_EQ(basis_label(parse_basis(ch)), ch);
    }
    for (char ch : std::string("01+i")) {
        EXPECT_EQ(init_label(parse_init(ch)), ch);
    }
    EXPECT_THROW(parse_basis('Q'), PlanError);
    EXPECT_EQ(parse_solver("anneal"), SolverChoice::Anneal);
    EXPECT_EQ(solver_name(SolverChoice::Both), "both");
}

TEST(Recursive, ZeroThresholdKeepsWholeCircuit) {
    Circuit c = testing::load_fixture_circuit("cx14_n8");
    FragmentPlan plan = recursive_fragment(c, testing::load_fixture_profile("synthetic"), 0.0);
    EXPECT_EQ(plan.leaves.size(), 1u);
    EXPECT_EQ(plan.total_cuts(), 0u);
    EXPECT_EQ(plan.nodes[0].status, NodeStatus::MeetsThreshold);
}

TEST(Recursive, OneSplitMeetsThreshold) {
    // Four chained cx with (1 - p2)^4 = 0.6; each half scores 0.6^(1/2) > 0.7.
    NoiseProfile p = NoiseProfile::uniform(0, 1 - std::pow(0.6, 0.25), 50, 300, std::nullopt, std::nullopt);
    Circuit c = testing::load_fixture_circuit("chain5");
    EXPECT_NEAR(success_probability(c, p).success, 0.6, 1e-12);
    FragmentPlan plan = recursive_fragment(c, p, 0.70);
    EXPECT_EQ(plan.nodes.size(), 3u);
    EXPECT_EQ(plan.leaves.size(), 2u);
    EXPECT_EQ(plan.total_cuts(), 1u);
    for (size_t l : plan.leaves) {
        EXPECT_EQ(plan.nodes[l].status, NodeStatus::MeetsThreshold);
        EXPECT_GE(plan.nodes[l].estimate.success, 0.70);
    }
}

TEST(Recursive, ThresholdOneRunsToUnsplittableLeaves) {
    Circuit c = testing::load_fixture_circuit("cx14_n8");
    FragmentOptions opts;
    opts.anneal.sweeps = 300;
    FragmentPlan plan = recursive_fragment(c, testing::load_fixture_profile("synthetic"), 1.0, opts);
    EXPECT_GT(plan.leaves.size(), 1u);
    for (size_t l : plan.leaves) {
        EXPECT_EQ(plan.nodes[l].status, NodeStatus::Unsplittable);
        EXPECT_FALSE(plan.nodes[l].reason.empty());
    }
}

TEST(Recursive, LeafCountMonotoneInThreshold) {
    Circuit c = testing::load_fixture_circuit("ghz_n10");
    NoiseProfile p = testing::load_fixture_profile("synthetic");
    FragmentOptions opts;
    opts.anneal.sweeps = 300;
    size_t previous = 0;
    for (double t : {0.0, 0.5, 0.8, 0.9, 0.95, 0.99}) {
        size_t leaves = recursive_fragment(c, p, t, opts).leaves.size();
        EXPECT_GE(leaves, previous) << "threshold " << t;
        previous = leaves;
    }
}

TEST(Plan, JsonRoundTrip) {
    Circuit c = testing::load_fixture_circuit("cx14_n8");
    FragmentOptions opts;
    opts.anneal.sweeps = 300;
    FragmentPlan plan = recursive_fragment(c, testing::load_fixture_profile("synthetic"), 0.9, opts);
    nlohmann::json doc = plan_to_json(plan);
    FragmentPlan back = plan_from_json(doc);
    EXPECT_EQ(plan_to_json(back), doc);
    EXPECT_EQ(back.leaves, plan.leaves);
    EXPECT_THROW(plan_from_json(nlohmann::json{{"threshold", 1}}), PlanError);
}

}  // namespace
}  // namespace fragcut
