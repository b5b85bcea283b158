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

#include "fragcut/reconstruct.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

#include "fragcut/error.hpp"
#include "fragcut/parallel.hpp"
#include "fragcut/rng.hpp"
#include "fragcut/simulator.hpp"

namespace fragcut {

using nlohmann::json;

std::vector<FragmentOutput> execute_plan(const FragmentPlan &plan, const NoiseProfile &p,
                                         const ExecuteOptions &options) {
    struct Job {
        size_t leaf;
        VariantRun run;
    };
    std::vector<FragmentOutput> outputs;
    std::vector<Job> jobs;
    std::vector<NoiseProfile> local_profiles;
    for (size_t l = 0; l < plan.leaves.size(); l++) {
        const PlanNode &node = plan.nodes[plan.leaves[l]];
        outputs.push_back(FragmentOutput{l, node.path, node.fragment, {}});
        local_profiles.push_back(p.remap(node.fragment.qubit_map()));
        for (VariantRun &run : enumerate_variants(node.fragment)) {
            jobs.push_back(Job{l, std::move(run)});
        }
    }
    std::vector<Distribution> results(jobs.size());
    parallel_for(jobs.size(), options.workers, [&](size_t j) {
        const Job &job = jobs[j];
        if (!options.noisy) {
            Distribution d = measure_distribution(run_ideal(job.run.circuit));
            if (options.shots > 0) {
                std::string label = outputs[job.leaf].path + "/" + job.run.inits_label() + "/" + job.run.bases_label();
                d = sample_shots(d, options.shots, derive_seed(options.seed, label));
            }
            results[j] = std::move(d);
            return;
        }
        NoisyRunOptions ro;
        ro.shots = options.shots;
        ro.seed = derive_seed(options.seed,
                              outputs[job.leaf].path + "/" + job.run.inits_label() + "/" + job.run.bases_label());
        results[j] = run_noisy(job.run.circuit, local_profiles[job.leaf], ro);
    });
    for (size_t j = 0; j < jobs.size(); j++) {
        VariantKey key{jobs[j].run.inits_label(), jobs[j].run.bases_label()};
        outputs[jobs[j].leaf].variants.emplace(std::move(key), std::move(results[j]));
    }
    return outputs;
}

namespace {

struct InitTerm {
    char init;
    double coeff;
};

// Pauli labels are 0..3 for I, X, Y, Z.
std::vector<InitTerm> init_expansion(int pauli) {
    switch (pauli) {
        case 0:
            return {{'0', 1}, {'1', 1}};
        case 1:
            return {{'+', 2}, {'0', -1}, {'1', -1}};
        case 2:
            return {{'i', 2}, {'0', -1}, {'1', -1}};
        default:
            return {{'0', 1}, {'1', -1}};
    }
}

char measure_basis_for(int pauli) {
    return pauli == 1 ? 'X' : pauli == 2 ? 'Y' : 'Z';
}

struct NeumaierSum {
    double sum = 0;
    double comp = 0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    double value() const {
        return sum + comp;
    }
};

// A leaf's contribution for every labelling of its cut roles.
struct LeafTensor {
    std::vector<Qubit> out_cut_ids;  // cut id per out role
    std::vector<Qubit> in_cut_ids;
    std::vector<Qubit> output_origin;  // original qubit per output bit
    std::vector<Qubit> output_local;
    // table[label index][output bits], label index = base-4 digits over (out roles, in roles).
    std::vector<std::vector<double>> table;
};

LeafTensor build_tensor(const FragmentOutput &out) {
    const Fragment &f = out.fragment;
    LeafTensor t;
    for (const auto &[id, q] : f.out_cuts()) {
        t.out_cut_ids.push_back(static_cast<Qubit>(id));
    }
    for (const auto &[id, q] : f.in_cuts()) {
        t.in_cut_ids.push_back(static_cast<Qubit>(id));
    }
    for (Qubit q = 0; q < f.wires.size(); q++) {
        if (!f.wires[q].out_cut) {
            t.output_origin.push_back(f.wires[q].origin);
            t.output_local.push_back(q);
        }
    }
    const auto outs = f.out_cuts();
    const auto ins = f.in_cuts();
    const size_t roles = outs.size() + ins.size();
    const size_t num_labels = size_t{1} << (2 * roles);
    const size_t num_outputs = size_t{1} << t.output_local.size();
    t.table.assign(num_labels, std::vector<double>(num_outputs, 0.0));

    for (size_t label = 0; label < num_labels; label++) {
        std::vector<int> pauli(roles);
        size_t code = label;
        for (size_t r = roles; r-- > 0;) {
            pauli[r] = static_cast<int>(code % 4);
            code /= 4;
        }
        std::string bases;
        uint64_t sign_mask = 0;
        for (size_t r = 0; r < outs.size(); r++) {
            bases += measure_basis_for(pauli[r]);
            if (pauli[r] != 0) {
                sign_mask |= uint64_t{1} << outs[r].second;
            }
        }
        // Expand the init side into weighted concrete inits.
        std::vector<std::pair<std::string, double>> inits{{"", 1.0}};
        for (size_t r = 0; r < ins.size(); r++) {
            std::vector<std::pair<std::string, double>> next;
            for (const auto &[prefix, coeff] : inits) {
                for (const InitTerm &term : init_expansion(pauli[outs.size() + r])) {
                    next.emplace_back(prefix + term.init, coeff * term.coeff);
                }
            }
            inits = std::move(next);
        }
        std::vector<double> &row = t.table[label];
        for (const auto &[init_label, coeff] : inits) {
            auto it = out.variants.find({init_label, bases});
            if (it == out.variants.end()) {
                throw PlanError("fragment " + out.path + " is missing variant inits='" + init_label + "' bases='" +
                                bases + "'");
            }
            const Distribution &d = it->second;
            for (uint64_t o = 0; o < d.probs.size(); o++) {
                if (d.probs[o] == 0) {
                    continue;
                }
                double sign = (std::popcount(o & sign_mask) & 1) ? -1.0 : 1.0;
                uint64_t y = 0;
                for (size_t b = 0; b < t.output_local.size(); b++) {
                    y |= ((o >> t.output_local[b]) & 1) << b;
                }
                row[y] += coeff * sign * d.probs[o];
            }
        }
    }
    return t;
}

void check_layout(const std::vector<FragmentOutput> &outputs, const FragmentPlan &plan) {
    if (outputs.size() != plan.leaves.size()) {
        throw PlanError("plan has " + std::to_string(plan.leaves.size()) + " leaves but " +
                        std::to_string(outputs.size()) + " fragment outputs were given");
    }
    const size_t k = plan.total_cuts();
    std::vector<int> seen_in(k, 0);
    std::vector<int> seen_out(k, 0);
    std::vector<int> seen_qubit(plan.circuit.width(), 0);
    for (size_t l = 0; l < outputs.size(); l++) {
        const FragmentOutput &out = outputs[l];
        const Fragment &expected = plan.nodes[plan.leaves[l]].fragment;
        if (out.leaf != l || out.fragment.wires != expected.wires || out.fragment.gate_origin != expected.gate_origin ||
            out.fragment.circuit.gates() != expected.circuit.gates()) {
            throw PlanError("fragment output " + std::to_string(l) + " does not match the plan leaf");
        }
        const size_t expected_variants = enumerate_variants(expected).size();
        if (out.variants.size() != expected_variants) {
            throw PlanError("fragment " + out.path + " has " + std::to_string(out.variants.size()) +
                            " variants, expected " + std::to_string(expected_variants));
        }
        for (const auto &[key, d] : out.variants) {
            if (d.width != expected.circuit.width() || d.probs.size() != (size_t{1} << d.width)) {
                throw PlanError("variant distribution width does not match fragment " + out.path);
            }
        }
        for (const LocalWire &w : expected.wires) {
            if (w.in_cut && (*w.in_cut >= k || seen_in[*w.in_cut]++)) {
                throw PlanError("cut " + std::to_string(*w.in_cut) + " is initialized more than once or unknown");
            }
            if (w.out_cut && (*w.out_cut >= k || seen_out[*w.out_cut]++)) {
                throw PlanError("cut " + std::to_string(*w.out_cut) + " is measured more than once or unknown");
            }
            if (!w.out_cut) {
                if (w.origin >= seen_qubit.size() || seen_qubit[w.origin]++) {
                    throw PlanError("original qubit " + std::to_string(w.origin) + " is output more than once");
                }
            }
        }
    }
    for (size_t c = 0; c < k; c++) {
        if (!seen_in[c] || !seen_out[c]) {
            throw PlanError("cut " + std::to_string(c) + " lacks a measuring or an initializing fragment");
        }
    }
    for (size_t q = 0; q < seen_qubit.size(); q++) {
        if (!seen_qubit[q]) {
            throw PlanError("original qubit " + std::to_string(q) + " is not produced by any fragment");
        }
    }
}

}  // namespace

namespace {

// Dense tensor over cut labels (4 values each, first cut most significant) and output
// qubits (bit j of the low part is qubits[j]).
struct Tensor {
    std::vector<size_t> cuts;
    std::vector<Qubit> qubits;
    std::vector<double> data;
};

Tensor leaf_tensor(LeafTensor &&t) {
    Tensor out;
    out.cuts.assign(t.out_cut_ids.begin(), t.out_cut_ids.end());
    out.cuts.insert(out.cuts.end(), t.in_cut_ids.begin(), t.in_cut_ids.end());
    out.qubits = std::move(t.output_origin);
    const size_t row = size_t{1} << out.qubits.size();
    out.data.reserve(t.table.size() * row);
    for (auto &r : t.table) {
        out.data.insert(out.data.end(), r.begin(), r.end());
    }
    return out;
}

// Sums the product of `a` and `b` over every label of the cuts they share, shared cuts
// in increasing id order with the lowest id most significant.
Tensor contract(const Tensor &a, const Tensor &b, size_t workers, uint64_t &combinations) {
    auto position = [](const std::vector<size_t> &cuts, size_t id) {
        return static_cast<size_t>(std::find(cuts.begin(), cuts.end(), id) - cuts.begin());
    };
    auto cut_stride = [](const Tensor &t, size_t pos) {
        return (size_t{1} << (2 * (t.cuts.size() - 1 - pos))) << t.qubits.size();
    };
    std::vector<size_t> shared;
    for (size_t id : a.cuts) {
        if (position(b.cuts, id) < b.cuts.size()) {
            shared.push_back(id);
        }
    }
    std::sort(shared.begin(), shared.end());

    Tensor r;
    // Each result coordinate maps to an offset in a and in b.
    std::vector<size_t> stride_a;
    std::vector<size_t> stride_b;
    for (const Tensor *t : {&a, &b}) {
        for (size_t pos = 0; pos < t->cuts.size(); pos++) {
            size_t id = t->cuts[pos];
            if (std::binary_search(shared.begin(), shared.end(), id)) {
                continue;
            }
            r.cuts.push_back(id);
            stride_a.push_back(t == &a ? cut_stride(a, pos) : 0);
            stride_b.push_back(t == &b ? cut_stride(b, pos) : 0);
        }
    }
    std::vector<size_t> qubit_a;
    std::vector<size_t> qubit_b;
    for (const Tensor *t : {&a, &b}) {
        for (size_t j = 0; j < t->qubits.size(); j++) {
            r.qubits.push_back(t->qubits[j]);
            qubit_a.push_back(t == &a ? size_t{1} << j : 0);
            qubit_b.push_back(t == &b ? size_t{1} << j : 0);
        }
    }
    const size_t num_shared = size_t{1} << (2 * shared.size());
    std::vector<size_t> shared_a(num_shared, 0);
    std::vector<size_t> shared_b(num_shared, 0);
    for (size_t combo = 0; combo < num_shared; combo++) {
        for (size_t s = 0; s < shared.size(); s++) {
            size_t label = (combo >> (2 * (shared.size() - 1 - s))) & 3;
            shared_a[combo] += label * cut_stride(a, position(a.cuts, shared[s]));
            shared_b[combo] += label * cut_stride(b, position(b.cuts, shared[s]));
        }
    }
    combinations *= num_shared;

    const size_t num_qubits = r.qubits.size();
    const size_t size = (size_t{1} << (2 * r.cuts.size())) << num_qubits;
    r.data.assign(size, 0.0);
    const size_t block = 4096;
    parallel_for((size_t{1} + (size - 1) / block), workers, [&](size_t chunk) {
        const size_t end = std::min(size, (chunk + 1) * block);
        for (size_t e = chunk * block; e < end; e++) {
            size_t base_a = 0;
            size_t base_b = 0;
            for (size_t j = 0; j < num_qubits; j++) {
                if ((e >> j) & 1) {
                    base_a += qubit_a[j];
                    base_b += qubit_b[j];
                }
            }
            size_t labels = e >> num_qubits;
            for (size_t c = r.cuts.size(); c-- > 0;) {
                size_t label = labels & 3;
                labels >>= 2;
                base_a += label * stride_a[c];
                base_b += label * stride_b[c];
            }
            NeumaierSum acc;
            for (size_t combo = 0; combo < num_shared; combo++) {
                acc.add(a.data[base_a + shared_a[combo]] * b.data[base_b + shared_b[combo]]);
            }
            r.data[e] = acc.value();
        }
    });
    return r;
}

}  // namespace

Reconstruction reconstruct(const std::vector<FragmentOutput> &outputs, const FragmentPlan &plan, size_t workers) {
    check_layout(outputs, plan);
    const size_t k = plan.total_cuts();
    const size_t width = plan.circuit.width();
    if (width > MAX_IDEAL_WIDTH) {
        throw PlanError("reconstructed width exceeds " + std::to_string(MAX_IDEAL_WIDTH));
    }
    std::vector<std::optional<size_t>> output_of_node(plan.nodes.size());
    for (size_t l = 0; l < plan.leaves.size(); l++) {
        output_of_node[plan.leaves[l]] = l;
    }

    uint64_t combinations = 1;
    std::function<Tensor(size_t, size_t)> evaluate = [&](size_t node, size_t depth) -> Tensor {
        if (node >= plan.nodes.size() || depth > plan.nodes.size()) {
            throw PlanError("plan tree is malformed");
        }
        if (output_of_node[node]) {
            return leaf_tensor(build_tensor(outputs[*output_of_node[node]]));
        }
        const auto &children = plan.nodes[node].children;
        if (children.size() != 2) {
            throw PlanError("plan node " + plan.nodes[node].path + " is neither a leaf nor a binary split");
        }
        Tensor left = evaluate(children[0], depth + 1);
        Tensor right = evaluate(children[1], depth + 1);
        return contract(left, right, workers, combinations);
    };
    Tensor root = evaluate(0, 0);
    if (!root.cuts.empty() || root.qubits.size() != width) {
        throw PlanError("fragment cuts do not pair up into the original circuit");
    }

    const double scale = std::ldexp(1.0, -static_cast<int>(k));
    Reconstruction r;
    r.k = k;
    r.terms = combinations;
    r.distribution = Distribution(width);
    std::vector<double> quasi(size_t{1} << width, 0.0);
    for (size_t e = 0; e < root.data.size(); e++) {
        size_t x = 0;
        for (size_t j = 0; j < width; j++) {
            x |= ((e >> j) & 1) << root.qubits[j];
        }
        quasi[x] = scale * root.data[e];
    }
    double positive = 0;
    for (double v : quasi) {
        if (v < 0) {
            r.clipped_mass -= v;
        } else {
            positive += v;
        }
    }
    if (!(positive > 0)) {
        throw SimulationError("reconstructed quasi-distribution has no positive mass");
    }
    for (size_t x = 0; x < quasi.size(); x++) {
        r.distribution.probs[x] = quasi[x] > 0 ? quasi[x] / positive : 0.0;
    }
    r.distribution.negative_mass_clipped = r.clipped_mass;
    return r;
}

namespace {

void check_widths(const Distribution &a, const Distribution &b) {
    if (a.width != b.width || a.probs.size() != b.probs.size()) {
        throw Error("distributions have different widths (" + std::to_string(a.width) + " and " +
                    std::to_string(b.width) + ")");
    }
}

double bhattacharyya(const Distribution &a, const Distribution &b) {
    check_widths(a, b);
    NeumaierSum s;
    for (size_t x = 0; x < a.probs.size(); x++) {
        s.add(std::sqrt(std::max(0.0, a.probs[x]) * std::max(0.0, b.probs[x])));
    }
    return s.value();
}

}  // namespace

double fidelity(const Distribution &a, const Distribution &b) {
    double bc = bhattacharyya(a, b);
    return std::clamp(bc * bc, 0.0, 1.0);
}

double tvd(const Distribution &a, const Distribution &b) {
    check_widths(a, b);
    NeumaierSum s;
    for (size_t x = 0; x < a.probs.size(); x++) {
        s.add(std::abs(a.probs[x] - b.probs[x]));
    }
    return std::clamp(0.5 * s.value(), 0.0, 1.0);
}

double hellinger(const Distribution &a, const Distribution &b) {
    return std::sqrt(std::max(0.0, 1.0 - bhattacharyya(a, b)));
}

json fragment_output_to_json(const FragmentOutput &out) {
    json variants = json::array();
    for (const auto &[key, d] : out.variants) {
        variants.push_back({{"inits", key.first}, {"bases", key.second}, {"distribution", distribution_to_json(d)}});
    }
    return json{{"leaf", out.leaf}, {"path", out.path}, {"fragment", fragment_to_json(out.fragment)},
                {"variants", variants}};
}

FragmentOutput fragment_output_from_json(const json &doc) {
    try {
        FragmentOutput out;
        out.leaf = doc.at("leaf").get<size_t>();
        out.path = doc.at("path").get<std::string>();
        out.fragment = fragment_from_json(doc.at("fragment"));
        for (const json &jv : doc.at("variants")) {
            VariantKey key{jv.at("inits").get<std::string>(), jv.at("bases").get<std::string>()};
            if (!out.variants.emplace(key, distribution_from_json(jv.at("distribution"))).second) {
                throw PlanError("fragment " + out.path + " lists variant inits='" + key.first + "' bases='" +
                                key.second + "' twice");
            }
        }
        return out;
    } catch (const json::exception &e) {
        throw PlanError(std::string("malformed fragment-output document: ") + e.what());
    }
}

json reconstruction_to_json(const Reconstruction &r, const std::optional<Distribution> &reference) {
    json metrics = json::object();
    if (reference) {
        metrics["fidelity_vs_ref"] = fidelity(r.distribution, *reference);
        metrics["tvd_vs_ref"] = tvd(r.distribution, *reference);
        metrics["hellinger_vs_ref"] = hellinger(r.distribution, *reference);
    }
    return json{{"distribution", distribution_to_json(r.distribution)},
                {"k", r.k},
                {"terms", r.terms},
                {"clipped_mass", r.clipped_mass},
                {"metrics", metrics}};
}

}  // namespace fragcut
