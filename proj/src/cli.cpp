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

#include "fragcut/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fragcut/error.hpp"
#include "fragcut/gate_graph.hpp"
#include "fragcut/qasm.hpp"
#include "fragcut/reconstruct.hpp"
#include "fragcut/simulator.hpp"

namespace fragcut::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class IoError : public Error {
   public:
    using Error::Error;
};

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string read_text(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const fs::path &path) {
    try {
        return json::parse(read_text(path));
    } catch (const json::parse_error &e) {
        throw IoError("invalid JSON in " + path.string() + ": " + e.what());
    }
}

void write_text(const std::string &path, const std::string &text, std::ostream &out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    fs::path p(path);
    if (p.has_parent_path()) {
        fs::create_directories(p.parent_path());
    }
    std::ofstream file(p, std::ios::binary);
    if (!file) {
        throw IoError("cannot write " + path);
    }
    file << text;
}

std::string dump(const json &doc) {
    return doc.dump(2) + "\n";
}

NoiseProfile profile_or_noiseless(const std::string &path) {
    return path.empty() ? NoiseProfile::noiseless() : load_profile_file(path);
}

struct CommonFlags {
    std::string qasm;
    std::string profile;
    std::string out;
    uint64_t seed = 0;
    size_t workers = 1;
};

struct CutFlags {
    double threshold = 0.9;
    std::string solver = "both";
    size_t max_k = 8;
    size_t max_depth = 3;
    size_t sweeps = 2000;
    size_t restarts = 4;
    double t_start = 0;
    double t_end = 0;
};

FragmentOptions fragment_options(const CutFlags &f, uint64_t seed) {
    FragmentOptions o;
    o.solver = parse_solver(f.solver);
    o.max_k = f.max_k;
    o.max_depth = f.max_depth;
    o.seed = seed;
    o.anneal.sweeps = f.sweeps;
    o.anneal.restarts = f.restarts;
    o.anneal.t_start = f.t_start;
    if (f.t_end > 0) {
        o.anneal.t_end = f.t_end;
    }
    return o;
}

void add_cut_flags(CLI::App *cmd, CutFlags &f) {
    cmd->add_option("--threshold", f.threshold, "Success probability each leaf must reach")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--solver", f.solver, "ga, anneal or both")->check(CLI::IsMember({"ga", "anneal", "both"}));
    cmd->add_option("--max-k", f.max_k, "Largest number of cuts accepted for one split");
    cmd->add_option("--max-depth", f.max_depth, "Largest recursion depth");
    cmd->add_option("--sweeps", f.sweeps, "Annealing sweeps per restart");
    cmd->add_option("--restarts", f.restarts, "Annealing restarts per penalty weight");
    cmd->add_option("--t-start", f.t_start, "Initial annealing temperature (0 picks one from the model)");
    cmd->add_option("--t-end", f.t_end, "Final annealing temperature");
}

std::string comparison_table(const FragmentPlan &plan) {
    std::ostringstream t;
    t << "node\tga_cost\tga_k\tanneal_cost\tanneal_k\tchosen\n";
    for (const PlanNode &n : plan.nodes) {
        if (!n.ga && !n.anneal) {
            continue;
        }
        t << n.path;
        for (const auto *r : {&n.ga, &n.anneal}) {
            if (*r) {
                t << '\t' << format_number((*r)->cost) << '\t' << (*r)->cut_size;
            } else {
                t << "\t-\t-";
            }
        }
        t << '\t' << n.chosen << '\n';
    }
    t << "total_cuts\t" << plan.total_cuts() << "\nleaves\t" << plan.leaves.size() << '\n';
    return t.str();
}

std::vector<FragmentOutput> load_outputs(const FragmentPlan &plan, const fs::path &dir) {
    std::vector<FragmentOutput> outputs;
    for (size_t l = 0; l < plan.leaves.size(); l++) {
        fs::path file = dir / ("fragment_" + std::to_string(l) + ".json");
        if (!fs::exists(file)) {
            throw PlanError("missing fragment output " + file.string());
        }
        outputs.push_back(fragment_output_from_json(read_json(file)));
    }
    return outputs;
}

int exit_code_for(const std::exception &e) {
    if (dynamic_cast<const ParseError *>(&e)) {
        return EXIT_PARSE;
    }
    if (dynamic_cast<const ProfileError *>(&e)) {
        return EXIT_PROFILE;
    }
    if (dynamic_cast<const PlanError *>(&e) || dynamic_cast<const PartitionError *>(&e) ||
        dynamic_cast<const GraphError *>(&e)) {
        return EXIT_PLAN;
    }
    if (dynamic_cast<const SimulationError *>(&e)) {
        return EXIT_SIMULATION;
    }
    return EXIT_IO;
}

}  // namespace

SweepResult threshold_sweep(const Circuit &c, const NoiseProfile &p, const std::vector<double> &thresholds,
                            const SweepOptions &options) {
    if (thresholds.empty()) {
        throw PlanError("a sweep needs at least one threshold");
    }
    SweepResult result;
    const Distribution ideal = measure_distribution(run_ideal(c));
    result.uncut_success = success_probability(c, p).success;
    Distribution uncut = options.noisy ? run_noisy(c, p) : ideal;
    result.uncut_fidelity = fidelity(uncut, ideal);
    ExecuteOptions exec;
    exec.noisy = options.noisy;
    exec.workers = options.workers;
    exec.seed = options.fragment.seed;
    for (double threshold : thresholds) {
        FragmentPlan plan = recursive_fragment(c, p, threshold, options.fragment);
        Reconstruction r = reconstruct(execute_plan(plan, p, exec), plan, options.workers);
        SweepRow row;
        row.threshold = threshold;
        row.leaves = plan.leaves.size();
        row.total_cuts = plan.total_cuts();
        row.min_leaf_success = 1;
        for (size_t idx : plan.leaves) {
            row.min_leaf_success = std::min(row.min_leaf_success, plan.nodes[idx].estimate.success);
        }
        row.fidelity = fidelity(r.distribution, ideal);
        row.tvd = tvd(r.distribution, ideal);
        result.rows.push_back(row);
    }
    return result;
}

std::string sweep_to_csv(const SweepResult &r) {
    std::ostringstream s;
    s << "threshold,leaves,total_cuts,min_leaf_success,fidelity,tvd\n";
    s << "uncut,1,0," << format_number(r.uncut_success) << ',' << format_number(r.uncut_fidelity) << ",\n";
    for (const SweepRow &row : r.rows) {
        s << format_number(row.threshold) << ',' << row.leaves << ',' << row.total_cuts << ','
          << format_number(row.min_leaf_success) << ',' << format_number(row.fidelity) << ','
          << format_number(row.tvd) << '\n';
    }
    return s.str();
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Error-balanced circuit fragmentation toolkit"};
    app.require_subcommand(1);
    CommonFlags common;
    CutFlags cut;

    auto *graph_cmd = app.add_subcommand("graph", "Dump the doubly-weighted gate graph");
    graph_cmd->add_option("--qasm", common.qasm, "OpenQASM 2.0 circuit")->required();
    graph_cmd->add_option("--profile", common.profile, "Calibration document");
    graph_cmd->add_option("--out", common.out, "Output file (stdout if omitted)");

    auto *cut_cmd = app.add_subcommand("cut", "Plan a threshold-driven fragmentation");
    cut_cmd->add_option("--qasm", common.qasm, "OpenQASM 2.0 circuit")->required();
    cut_cmd->add_option("--profile", common.profile, "Calibration document");
    cut_cmd->add_option("--out", common.out, "Plan document path (stdout if omitted)");
    cut_cmd->add_option("--seed", common.seed, "Seed for both solvers");
    add_cut_flags(cut_cmd, cut);

    std::string plan_path;
    std::string outputs_dir;
    bool noisy = false;
    uint64_t shots = 0;
    auto *run_cmd = app.add_subcommand("run", "Simulate every variant of every leaf fragment");
    run_cmd->add_option("--plan", plan_path, "Plan document")->required();
    run_cmd->add_option("--profile", common.profile, "Calibration document");
    run_cmd->add_option("--out", common.out, "Directory for fragment output documents")->required();
    run_cmd->add_flag("--noisy", noisy, "Density-matrix simulation with the profile's noise");
    run_cmd->add_option("--shots", shots, "Sample this many shots per variant (0 keeps exact probabilities)");
    run_cmd->add_option("--seed", common.seed, "Sampling seed");
    run_cmd->add_option("--workers", common.workers, "Parallel simulations (0 uses every core)");

    std::string reference = "ideal";
    auto *rec_cmd = app.add_subcommand("reconstruct", "Recombine fragment outputs into the full distribution");
    rec_cmd->add_option("--plan", plan_path, "Plan document")->required();
    rec_cmd->add_option("--outputs", outputs_dir, "Directory written by 'run'")->required();
    rec_cmd->add_option("--reference", reference, "Reference for metrics: ideal or none")
        ->check(CLI::IsMember({"ideal", "none"}));
    rec_cmd->add_option("--out", common.out, "Report path (stdout if omitted)");
    rec_cmd->add_option("--workers", common.workers, "Parallel workers (0 uses every core)");

    std::vector<double> thresholds;
    auto *sweep_cmd = app.add_subcommand("sweep", "Fidelity and leaf count across success thresholds");
    sweep_cmd->add_option("--qasm", common.qasm, "OpenQASM 2.0 circuit")->required();
    sweep_cmd->add_option("--profile", common.profile, "Calibration document");
    sweep_cmd->add_option("--thresholds", thresholds, "Comma separated thresholds")
        ->delimiter(',')
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    sweep_cmd->add_flag("--noisy", noisy, "Run fragments and the uncut circuit with noise");
    sweep_cmd->add_option("--out", common.out, "CSV path (stdout if omitted)");
    sweep_cmd->add_option("--seed", common.seed, "Seed for both solvers");
    sweep_cmd->add_option("--workers", common.workers, "Parallel workers (0 uses every core)");
    add_cut_flags(sweep_cmd, cut);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return EXIT_OK;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return EXIT_OK;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    }

    try {
        if (graph_cmd->parsed()) {
            Circuit c = load_qasm_file(common.qasm);
            GateGraph g = build_graph(c, profile_or_noiseless(common.profile));
            write_text(common.out, serialize_graph(g) + "\n", out);
        } else if (cut_cmd->parsed()) {
            Circuit c = load_qasm_file(common.qasm);
            NoiseProfile p = profile_or_noiseless(common.profile);
            FragmentPlan plan = recursive_fragment(c, p, cut.threshold, fragment_options(cut, common.seed));
            write_text(common.out, dump(plan_to_json(plan)), out);
            (common.out.empty() ? err : out) << comparison_table(plan);
        } else if (run_cmd->parsed()) {
            FragmentPlan plan = plan_from_json(read_json(plan_path));
            NoiseProfile p = profile_or_noiseless(common.profile);
            ExecuteOptions exec;
            exec.noisy = noisy;
            exec.shots = shots;
            exec.seed = common.seed;
            exec.workers = common.workers;
            std::vector<FragmentOutput> outputs = execute_plan(plan, p, exec);
            fs::create_directories(common.out);
            for (const FragmentOutput &o : outputs) {
                write_text((fs::path(common.out) / ("fragment_" + std::to_string(o.leaf) + ".json")).string(),
                           dump(fragment_output_to_json(o)), out);
                out << o.path << '\t' << o.variants.size() << " variants\n";
            }
        } else if (rec_cmd->parsed()) {
            FragmentPlan plan = plan_from_json(read_json(plan_path));
            Reconstruction r = reconstruct(load_outputs(plan, outputs_dir), plan, common.workers);
            std::optional<Distribution> ref;
            if (reference == "ideal") {
                ref = measure_distribution(run_ideal(plan.circuit));
            }
            write_text(common.out, dump(reconstruction_to_json(r, ref)), out);
        } else if (sweep_cmd->parsed()) {
            Circuit c = load_qasm_file(common.qasm);
            NoiseProfile p = profile_or_noiseless(common.profile);
            SweepOptions so;
            so.fragment = fragment_options(cut, common.seed);
            so.noisy = noisy;
            so.workers = common.workers;
            std::string csv = sweep_to_csv(threshold_sweep(c, p, thresholds, so));
            write_text(common.out, csv, out);
            if (!common.out.empty()) {
                out << csv;
            }
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return EXIT_OK;
}

}  // namespace fragcut::cli
