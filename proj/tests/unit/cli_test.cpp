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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "fragcut/cli.hpp"
#include "fragcut/fragmenter.hpp"
#include "fragcut/reconstruct.hpp"
#include "test_support.hpp"

namespace fragcut {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("fragcut_cli_" + std::to_string(::getpid()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }

    int call(std::vector<std::string> args) {
        args.insert(args.begin(), "fragcut");
        std::vector<const char *> argv;
        for (const auto &a : args) {
            argv.push_back(a.c_str());
        }
        out_.str("");
        err_.str("");
        return cli::run(static_cast<int>(argv.size()), argv.data(), out_, err_);
    }

    std::string write(const std::string &name, const std::string &text) {
        fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

    nlohmann::json read(const std::string &name) {
        std::ifstream in(dir_ / name);
        return nlohmann::json::parse(in);
    }

    std::string path(const std::string &name) const {
        return (dir_ / name).string();
    }

    fs::path dir_;
    std::ostringstream out_;
    std::ostringstream err_;
};

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(call({}), cli::EXIT_USAGE);
    EXPECT_EQ(call({"graph"}), cli::EXIT_USAGE);
    EXPECT_EQ(call({"cut", "--qasm", "x.qasm", "--solver", "magic"}), cli::EXIT_USAGE);
    EXPECT_EQ(call({"--help"}), cli::EXIT_OK);
}

TEST_F(Cli, ParseAndProfileErrors) {
    std::string bad = write("bad.qasm", "OPENQASM 2.0;\nqreg q[3];\nccx q[0],q[1],q[2];\n");
    EXPECT_EQ(call({"graph", "--qasm", bad}), cli::EXIT_PARSE);
    EXPECT_NE(err_.str().find("ccx"), std::string::npos);
    std::string good = testing::fixture("circuits/ghz3.qasm").string();
    std::string profile = write("bad.json", R"({"version": 1, "defaults": {"p1": 2, "p2": 0, "d1_ns": 1, "d2_ns": 1}})");
    EXPECT_EQ(call({"graph", "--qasm", good, "--profile", profile}), cli::EXIT_PROFILE);
    std::string single = write("single.qasm", "OPENQASM 2.0;\nqreg q[1];\nh q[0];\n");
    EXPECT_EQ(call({"graph", "--qasm", single}), cli::EXIT_PLAN);
}

TEST_F(Cli, GraphAndCutOnChain) {
    std::string qasm = testing::fixture("circuits/chain5.qasm").string();
    std::string profile = testing::fixture("profiles/gate_only.json").string();
    ASSERT_EQ(call({"graph", "--qasm", qasm, "--profile", profile, "--out", path("graph.json")}), cli::EXIT_OK);
    EXPECT_EQ(read("graph.json").at("vertices").size(), 4u);
    ASSERT_EQ(call({"cut", "--qasm", qasm, "--profile", profile, "--threshold", "0.99", "--max-depth", "1", "--out",
                    path("plan.json")}),
              cli::EXIT_OK);
    nlohmann::json plan = read("plan.json");
    EXPECT_EQ(plan.at("total_cuts"), 1);
    EXPECT_EQ(plan.at("tree")[0].at("solvers").at("ga").at("cut_size"), 1);
    EXPECT_EQ(plan.at("tree")[0].at("solvers").at("anneal").at("cut_size"), 1);
    ASSERT_EQ(call({"cut", "--qasm", qasm, "--profile", profile, "--threshold", "0", "--out", path("flat.json")}),
              cli::EXIT_OK);
    EXPECT_EQ(read("flat.json").at("total_cuts"), 0);
}

TEST_F(Cli, BothSolversCutFourteenGateFixtureTwice) {
    std::string qasm = testing::fixture("circuits/cx14_n8.qasm").string();
    std::string profile = write("p.json", R"({"version": 1, "defaults": {"p1": 0, "p2": 0.01, "d1_ns": 50, "d2_ns": 300}})");
    ASSERT_EQ(call({"cut", "--qasm", qasm, "--profile", profile, "--threshold", "0.99", "--max-depth", "1", "--out",
                    path("plan.json")}),
              cli::EXIT_OK);
    nlohmann::json solvers = read("plan.json").at("tree")[0].at("solvers");
    EXPECT_EQ(solvers.at("ga").at("cut_size"), 2);
    EXPECT_EQ(solvers.at("anneal").at("cut_size"), 2);
}

TEST_F(Cli, GhzEndToEnd) {
    FragmentPlan plan = single_split_plan(testing::load_fixture_circuit("ghz3"), NoiseProfile::noiseless(), {0, 1});
    std::string plan_path = write("plan.json", plan_to_json(plan).dump());
    ASSERT_EQ(call({"run", "--plan", plan_path, "--out", path("outs")}), cli::EXIT_OK);
    EXPECT_EQ(read("outs/fragment_0.json").at("variants").size(), 3u);
    EXPECT_EQ(read("outs/fragment_1.json").at("variants").size(), 4u);
    ASSERT_EQ(call({"reconstruct", "--plan", plan_path, "--outputs", path("outs"), "--out", path("rec.json")}),
              cli::EXIT_OK);
    EXPECT_NEAR(read("rec.json").at("metrics").at("fidelity_vs_ref").get<double>(), 1.0, 1e-9);

    std::string profile = testing::fixture("profiles/synthetic.json").string();
    ASSERT_EQ(call({"run", "--plan", plan_path, "--profile", profile, "--noisy", "--out", path("noisy")}), cli::EXIT_OK);
    ASSERT_EQ(call({"reconstruct", "--plan", plan_path, "--outputs", path("noisy"), "--out", path("nrec.json")}),
              cli::EXIT_OK);
    double f = read("nrec.json").at("metrics").at("fidelity_vs_ref").get<double>();
    EXPECT_GE(f, 0);
    EXPECT_LE(f, 1);
}

TEST_F(Cli, RunAndReconstructErrors) {
    EXPECT_EQ(call({"run", "--plan", path("absent.json"), "--out", path("outs")}), cli::EXIT_IO);
    FragmentPlan split = single_split_plan(testing::load_fixture_circuit("ghz3"), NoiseProfile::noiseless(), {0, 1});
    FragmentPlan whole = trivial_plan(testing::load_fixture_circuit("ghz3"), NoiseProfile::noiseless());
    std::string split_path = write("split.json", plan_to_json(split).dump());
    std::string whole_path = write("whole.json", plan_to_json(whole).dump());
    ASSERT_EQ(call({"run", "--plan", whole_path, "--out", path("outs")}), cli::EXIT_OK);
    EXPECT_NE(out_.str().find("1 variants"), std::string::npos);
    EXPECT_EQ(call({"reconstruct", "--plan", split_path, "--outputs", path("outs")}), cli::EXIT_PLAN);
    std::string broken = write("broken.json", R"({"threshold": 0.5})");
    EXPECT_EQ(call({"run", "--plan", broken, "--out", path("x")}), cli::EXIT_PLAN);
}

TEST_F(Cli, SweepSingleThreshold) {
    std::string qasm = testing::fixture("circuits/ghz3.qasm").string();
    ASSERT_EQ(call({"sweep", "--qasm", qasm, "--thresholds", "0"}), cli::EXIT_OK);
    std::istringstream lines(out_.str());
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(lines, line)) {
        if (!line.empty()) {
            rows.push_back(line);
        }
    }
    // Header, uncut row, one threshold row.
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[2].substr(0, 2), "0,");
    EXPECT_NE(rows[2].find(",1,0,"), std::string::npos);
}

}  // namespace
}  // namespace fragcut
