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

#include "fragcut/fragmenter.hpp"

#include <functional>
#include <map>
#include <tuple>

#include "fragcut/error.hpp"
#include "fragcut/qasm.hpp"
#include "fragcut/rng.hpp"

namespace fragcut {

using nlohmann::json;

std::vector<std::pair<size_t, Qubit>> Fragment::in_cuts() const {
    std::vector<std::pair<size_t, Qubit>> out;
    for (Qubit q = 0; q < wires.size(); q++) {
        if (wires[q].in_cut) {
            out.emplace_back(*wires[q].in_cut, q);
        }
    }
    return out;
}

std::vector<std::pair<size_t, Qubit>> Fragment::out_cuts() const {
    std::vector<std::pair<size_t, Qubit>> out;
    for (Qubit q = 0; q < wires.size(); q++) {
        if (wires[q].out_cut) {
            out.emplace_back(*wires[q].out_cut, q);
        }
    }
    return out;
}

std::vector<Qubit> Fragment::qubit_map() const {
    std::vector<Qubit> out;
    out.reserve(wires.size());
    for (const LocalWire &w : wires) {
        out.push_back(w.origin);
    }
    return out;
}

Fragment root_fragment(const Circuit &c) {
    Fragment f;
    std::vector<Gate> gates;
    for (size_t k = 0; k < c.gates().size(); k++) {
        if (!c.gates()[k].is_measurement) {
            gates.push_back(c.gates()[k]);
            f.gate_origin.push_back(k);
        }
    }
    f.circuit = Circuit(c.width(), std::move(gates), c.name());
    for (Qubit q = 0; q < c.width(); q++) {
        f.wires.push_back(LocalWire{q, std::nullopt, std::nullopt});
    }
    return f;
}

namespace {

void check_graph_matches(const GateGraph &g, const Circuit &c) {
    for (const GraphVertex &v : g.vertices()) {
        if (v.gate_index >= c.gates().size() || !c.gates()[v.gate_index].is_two_qubit()) {
            throw PlanError("graph vertex " + std::to_string(v.id) + " does not name a two-qubit gate of the circuit");
        }
    }
    if (g.num_vertices() != gate_counts(c).two_qubit) {
        throw PlanError("graph does not cover every two-qubit gate of the circuit");
    }
}

}  // namespace

CutSpec derive_cut_points(const PartitionVector &pv, const GateGraph &g, const Circuit &c, size_t first_id) {
    if (pv.size() != g.num_vertices()) {
        throw PlanError("partition vector length does not match the graph");
    }
    if (!pv.is_proper()) {
        throw PlanError("cannot derive cuts from a one-sided partition");
    }
    check_graph_matches(g, c);
    CutSpec spec;
    for (const GraphEdge &e : g.edges()) {
        if (pv[e.u] == pv[e.v]) {
            continue;
        }
        if (e.segments.size() != e.weight) {
            throw PlanError("graph edge lacks wire segments; it was not built from a circuit");
        }
        for (const WireSegment &s : e.segments) {
            spec.cuts.push_back(CutPoint{s.qubit, s.upstream_gate, s.downstream_gate, first_id + spec.cuts.size()});
        }
    }
    return spec;
}

std::array<Fragment, 2> split_fragment(const Fragment &parent, const CutSpec &spec, const PartitionVector &pv,
                                       const GateGraph &g) {
    const Circuit &c = parent.circuit;
    const auto &gates = c.gates();
    if (pv.size() != g.num_vertices() || !pv.is_proper()) {
        throw PlanError("split needs a proper partition vector matching the graph");
    }
    check_graph_matches(g, c);

    std::vector<int> side(gates.size(), -1);
    for (const GraphVertex &v : g.vertices()) {
        side[v.gate_index] = pv[v.id];
    }

    // Operations per wire, in time order.
    std::vector<std::vector<size_t>> ops(c.width());
    for (size_t k = 0; k < gates.size(); k++) {
        for (Qubit q : gates[k].qubits) {
            ops[q].push_back(k);
        }
    }
    // Single-qubit gates take the side of the next two-qubit gate on their wire,
    // or of the previous one when none follows.
    for (Qubit q = 0; q < c.width(); q++) {
        int next_side = -1;
        for (auto it = ops[q].rbegin(); it != ops[q].rend(); ++it) {
            if (gates[*it].is_two_qubit()) {
                next_side = side[*it];
            } else {
                side[*it] = next_side;
            }
        }
        int prev_side = 0;
        for (size_t k : ops[q]) {
            if (gates[k].is_two_qubit()) {
                prev_side = side[k];
            } else if (side[k] < 0) {
                side[k] = prev_side;
            }
        }
    }

    std::map<std::tuple<Qubit, size_t, size_t>, size_t> cut_ids;
    for (const CutPoint &cp : spec.cuts) {
        if (!cut_ids.emplace(std::make_tuple(cp.qubit, cp.upstream_gate, cp.downstream_gate), cp.id).second) {
            throw PlanError("cut specification lists the same wire gap twice");
        }
    }

    struct Piece {
        int side;
        std::optional<size_t> in_cut;
        std::optional<size_t> out_cut;
        Qubit local = 0;
    };
    std::vector<std::vector<Piece>> pieces(c.width());
    std::vector<std::vector<size_t>> piece_of_op(c.width());
    size_t cuts_used = 0;
    for (Qubit q = 0; q < c.width(); q++) {
        const LocalWire &wire = parent.wires[q];
        if (ops[q].empty()) {
            pieces[q].push_back(Piece{0, wire.in_cut, wire.out_cut});
            continue;
        }
        size_t last_two_qubit = SIZE_MAX;
        for (size_t pos = 0; pos < ops[q].size(); pos++) {
            size_t k = ops[q][pos];
            if (pieces[q].empty()) {
                pieces[q].push_back(Piece{side[k], wire.in_cut, std::nullopt});
            } else if (side[k] != pieces[q].back().side) {
                size_t downstream = SIZE_MAX;
                for (size_t look = pos; look < ops[q].size(); look++) {
                    if (gates[ops[q][look]].is_two_qubit()) {
                        downstream = ops[q][look];
                        break;
                    }
                }
                auto it = cut_ids.find(std::make_tuple(q, last_two_qubit, downstream));
                if (it == cut_ids.end()) {
                    throw PlanError("partition crosses wire " + std::to_string(q) + " after gate " +
                                    std::to_string(last_two_qubit) + " but the cut specification has no such cut");
                }
                cuts_used++;
                pieces[q].back().out_cut = it->second;
                pieces[q].push_back(Piece{side[k], it->second, std::nullopt});
            }
            piece_of_op[q].push_back(pieces[q].size() - 1);
            if (gates[k].is_two_qubit()) {
                last_two_qubit = k;
            }
        }
        pieces[q].back().out_cut = wire.out_cut;
    }
    if (cuts_used != spec.cuts.size()) {
        throw PlanError("cut specification does not match the partition");
    }

    std::array<Fragment, 2> out;
    for (Qubit q = 0; q < c.width(); q++) {
        for (Piece &p : pieces[q]) {
            Fragment &f = out[p.side];
            p.local = static_cast<Qubit>(f.wires.size());
            f.wires.push_back(LocalWire{parent.wires[q].origin, p.in_cut, p.out_cut});
        }
    }
    std::array<std::vector<Gate>, 2> frag_gates;
    std::vector<size_t> cursor(c.width(), 0);
    for (size_t k = 0; k < gates.size(); k++) {
        Gate local = gates[k];
        for (Qubit &q : local.qubits) {
            Qubit orig = q;
            q = pieces[orig][piece_of_op[orig][cursor[orig]++]].local;
        }
        frag_gates[side[k]].push_back(std::move(local));
        out[side[k]].gate_origin.push_back(parent.gate_origin[k]);
    }
    for (int s = 0; s < 2; s++) {
        out[s].circuit = Circuit(out[s].wires.size(), std::move(frag_gates[s]), c.name());
    }
    return out;
}

std::vector<Fragment> fragment(const Circuit &c, const CutSpec &spec, const PartitionVector &pv, const GateGraph &g) {
    auto parts = split_fragment(root_fragment(c), spec, pv, g);
    return {std::move(parts[0]), std::move(parts[1])};
}

char basis_label(MeasureBasis b) {
    switch (b) {
        case MeasureBasis::Z:
            return 'Z';
        case MeasureBasis::X:
            return 'X';
        case MeasureBasis::Y:
            return 'Y';
    }
    return '?';
}

char init_label(InitState s) {
    switch (s) {
        case InitState::Zero:
            return '0';
        case InitState::One:
            return '1';
        case InitState::Plus:
            return '+';
        case InitState::PlusI:
            return 'i';
    }
    return '?';
}

MeasureBasis parse_basis(char c) {
    switch (c) {
        case 'Z':
            return MeasureBasis::Z;
        case 'X':
            return MeasureBasis::X;
        case 'Y':
            return MeasureBasis::Y;
    }
    throw PlanError(std::string("unknown measurement basis '") + c + "'");
}

InitState parse_init(char c) {
    switch (c) {
        case '0':
            return InitState::Zero;
        case '1':
            return InitState::One;
        case '+':
            return InitState::Plus;
        case 'i':
            return InitState::PlusI;
    }
    throw PlanError(std::string("unknown initial state '") + c + "'");
}

std::string VariantRun::bases_label() const {
    std::string s;
    for (MeasureBasis b : bases) {
        s += basis_label(b);
    }
    return s;
}

std::string VariantRun::inits_label() const {
    std::string s;
    for (InitState i : inits) {
        s += init_label(i);
    }
    return s;
}

std::vector<VariantRun> enumerate_variants(const Fragment &f) {
    const auto ins = f.in_cuts();
    const auto outs = f.out_cuts();
    size_t num_inits = 1;
    for (size_t k = 0; k < ins.size(); k++) {
        num_inits *= 4;
    }
    size_t num_bases = 1;
    for (size_t k = 0; k < outs.size(); k++) {
        num_bases *= 3;
    }
    std::vector<VariantRun> runs;
    runs.reserve(num_inits * num_bases);
    for (size_t init_code = 0; init_code < num_inits; init_code++) {
        for (size_t basis_code = 0; basis_code < num_bases; basis_code++) {
            VariantRun run;
            run.inits.resize(ins.size());
            run.bases.resize(outs.size());
            size_t code = init_code;
            for (size_t k = ins.size(); k-- > 0;) {
                run.inits[k] = static_cast<InitState>(code % 4);
                code /= 4;
            }
            code = basis_code;
            for (size_t k = outs.size(); k-- > 0;) {
                run.bases[k] = static_cast<MeasureBasis>(code % 3);
                code /= 3;
            }
            std::vector<Gate> gates;
            for (size_t k = 0; k < ins.size(); k++) {
                Qubit q = ins[k].second;
                switch (run.inits[k]) {
                    case InitState::Zero:
                        break;
                    case InitState::One:
                        gates.push_back(Gate{"x", {q}, {}, false});
                        break;
                    case InitState::Plus:
                        gates.push_back(Gate{"h", {q}, {}, false});
                        break;
                    case InitState::PlusI:
                        gates.push_back(Gate{"h", {q}, {}, false});
                        gates.push_back(Gate{"s", {q}, {}, false});
                        break;
                }
            }
            for (const Gate &g : f.circuit.gates()) {
                gates.push_back(g);
            }
            for (size_t k = 0; k < outs.size(); k++) {
                Qubit q = outs[k].second;
                if (run.bases[k] == MeasureBasis::X) {
                    gates.push_back(Gate{"h", {q}, {}, false});
                } else if (run.bases[k] == MeasureBasis::Y) {
                    gates.push_back(Gate{"sdg", {q}, {}, false});
                    gates.push_back(Gate{"h", {q}, {}, false});
                }
            }
            run.circuit = Circuit(f.circuit.width(), std::move(gates), f.circuit.name());
            runs.push_back(std::move(run));
        }
    }
    return runs;
}

SolverChoice parse_solver(const std::string &name) {
    if (name == "ga") {
        return SolverChoice::Ga;
    }
    if (name == "anneal") {
        return SolverChoice::Anneal;
    }
    if (name == "both") {
        return SolverChoice::Both;
    }
    throw PlanError("unknown solver '" + name + "' (expected ga, anneal or both)");
}

std::string solver_name(SolverChoice s) {
    switch (s) {
        case SolverChoice::Ga:
            return "ga";
        case SolverChoice::Anneal:
            return "anneal";
        case SolverChoice::Both:
            return "both";
    }
    return "both";
}

size_t FragmentPlan::total_cuts() const {
    size_t k = 0;
    for (const PlanNode &n : nodes) {
        if (n.cuts) {
            k += n.cuts->k();
        }
    }
    return k;
}

std::vector<const Fragment *> FragmentPlan::leaf_fragments() const {
    std::vector<const Fragment *> out;
    for (size_t idx : leaves) {
        out.push_back(&nodes[idx].fragment);
    }
    return out;
}

FragmentPlan recursive_fragment(const Circuit &c, const NoiseProfile &p, double threshold,
                                const FragmentOptions &options) {
    if (!(threshold >= 0 && threshold <= 1)) {
        throw PlanError("threshold must lie in [0,1]");
    }
    FragmentPlan plan;
    plan.threshold = threshold;
    plan.circuit = c;
    size_t next_cut_id = 0;

    std::function<size_t(Fragment, std::string, size_t)> visit = [&](Fragment frag, std::string path, size_t depth) {
        size_t idx = plan.nodes.size();
        plan.nodes.push_back(PlanNode{});
        const NoiseProfile local = p.remap(frag.qubit_map());
        {
            PlanNode &node = plan.nodes[idx];
            node.path = path;
            node.estimate = success_probability(frag.circuit, local);
            node.fragment = frag;
        }
        auto make_leaf = [&](NodeStatus status, std::string reason) {
            plan.nodes[idx].status = status;
            plan.nodes[idx].reason = std::move(reason);
            plan.leaves.push_back(idx);
            return idx;
        };
        if (plan.nodes[idx].estimate.success >= threshold) {
            return make_leaf(NodeStatus::MeetsThreshold, "");
        }
        if (depth >= options.max_depth) {
            return make_leaf(NodeStatus::Unsplittable, "max_depth");
        }
        if (gate_counts(frag.circuit).two_qubit < 2) {
            return make_leaf(NodeStatus::Unsplittable, "too_few_two_qubit_gates");
        }

        GateGraph g = build_graph(frag.circuit, local);
        std::optional<CutResult> ga;
        std::optional<CutResult> anneal;
        if (options.solver != SolverChoice::Anneal) {
            GaParams params = options.ga;
            params.seed = derive_seed(options.seed, path + "/ga");
            ga = find_min_cut_ga(g, params);
        }
        if (options.solver != SolverChoice::Ga) {
            AnnealPartitionOptions ao = options.anneal;
            ao.seed = derive_seed(options.seed, path + "/anneal");
            anneal = anneal_partition(g, ao);
        }
        const CutResult &chosen = (ga && (!anneal || ga->cost <= anneal->cost)) ? *ga : *anneal;
        {
            PlanNode &node = plan.nodes[idx];
            node.ga = ga;
            node.anneal = anneal;
            node.chosen = chosen.algorithm;
        }
        if (!chosen.partition.is_proper()) {
            return make_leaf(NodeStatus::Unsplittable, "no_proper_cut");
        }
        CutSpec spec = derive_cut_points(chosen.partition, g, frag.circuit, next_cut_id);
        if (spec.k() > options.max_k) {
            return make_leaf(NodeStatus::Unsplittable, "max_k");
        }
        next_cut_id += spec.k();
        auto parts = split_fragment(frag, spec, chosen.partition, g);
        plan.nodes[idx].status = NodeStatus::Split;
        plan.nodes[idx].cuts = std::move(spec);
        size_t left = visit(std::move(parts[0]), path + "0", depth + 1);
        size_t right = visit(std::move(parts[1]), path + "1", depth + 1);
        plan.nodes[idx].children = {left, right};
        return idx;
    };
    visit(root_fragment(c), "r", 0);
    return plan;
}

FragmentPlan trivial_plan(const Circuit &c, const NoiseProfile &p) {
    return recursive_fragment(c, p, 0.0);
}

FragmentPlan single_split_plan(const Circuit &c, const NoiseProfile &p, const PartitionVector &pv) {
    FragmentPlan plan;
    plan.threshold = 1.0;
    plan.circuit = c;
    Fragment root = root_fragment(c);
    GateGraph g = build_graph(root.circuit, p);
    CutSpec spec = derive_cut_points(pv, g, root.circuit);
    auto parts = split_fragment(root, spec, pv, g);
    PlanNode node;
    node.path = "r";
    node.fragment = root;
    node.estimate = success_probability(root.circuit, p);
    node.status = NodeStatus::Split;
    node.cuts = std::move(spec);
    node.children = {1, 2};
    plan.nodes.push_back(std::move(node));
    for (int s = 0; s < 2; s++) {
        PlanNode leaf;
        leaf.path = s == 0 ? "r0" : "r1";
        leaf.estimate = success_probability(parts[s].circuit, p.remap(parts[s].qubit_map()));
        leaf.fragment = std::move(parts[s]);
        leaf.status = NodeStatus::Unsplittable;
        leaf.reason = "fixed_partition";
        plan.leaves.push_back(plan.nodes.size());
        plan.nodes.push_back(std::move(leaf));
    }
    return plan;
}

json cutspec_to_json(const CutSpec &spec) {
    json cuts = json::array();
    for (const CutPoint &cp : spec.cuts) {
        cuts.push_back({{"id", cp.id},
                        {"qubit", cp.qubit},
                        {"upstream_gate", cp.upstream_gate},
                        {"downstream_gate", cp.downstream_gate}});
    }
    return json{{"k", spec.k()}, {"cuts", cuts}};
}

namespace {

CutSpec cutspec_from_json(const json &doc) {
    CutSpec spec;
    for (const json &jc : doc.at("cuts")) {
        spec.cuts.push_back(CutPoint{jc.at("qubit").get<Qubit>(), jc.at("upstream_gate").get<size_t>(),
                                     jc.at("downstream_gate").get<size_t>(), jc.at("id").get<size_t>()});
    }
    if (doc.at("k").get<size_t>() != spec.k()) {
        throw PlanError("cut specification 'k' disagrees with its cut list");
    }
    return spec;
}

json optional_id(const std::optional<size_t> &v) {
    return v ? json(*v) : json(nullptr);
}

std::optional<size_t> read_optional_id(const json &v) {
    if (v.is_null()) {
        return std::nullopt;
    }
    return v.get<size_t>();
}

std::string status_name(NodeStatus s) {
    switch (s) {
        case NodeStatus::MeetsThreshold:
            return "meets_threshold";
        case NodeStatus::Split:
            return "split";
        case NodeStatus::Unsplittable:
            return "unsplittable";
    }
    return "?";
}

NodeStatus parse_status(const std::string &s) {
    if (s == "meets_threshold") {
        return NodeStatus::MeetsThreshold;
    }
    if (s == "split") {
        return NodeStatus::Split;
    }
    if (s == "unsplittable") {
        return NodeStatus::Unsplittable;
    }
    throw PlanError("unknown node status '" + s + "'");
}

}  // namespace

json fragment_to_json(const Fragment &f) {
    json wires = json::array();
    for (const LocalWire &w : f.wires) {
        wires.push_back({{"origin", w.origin}, {"in_cut", optional_id(w.in_cut)}, {"out_cut", optional_id(w.out_cut)}});
    }
    return json{{"width", f.circuit.width()}, {"qasm", to_qasm(f.circuit)}, {"wires", wires}, {"gate_origin", f.gate_origin}};
}

Fragment fragment_from_json(const json &doc) {
    Fragment f;
    f.circuit = parse_qasm(doc.at("qasm").get<std::string>(), "fragment");
    for (const json &jw : doc.at("wires")) {
        f.wires.push_back(LocalWire{jw.at("origin").get<Qubit>(), read_optional_id(jw.at("in_cut")),
                                    read_optional_id(jw.at("out_cut"))});
    }
    f.gate_origin = doc.at("gate_origin").get<std::vector<size_t>>();
    if (f.wires.size() != f.circuit.width() || doc.at("width").get<size_t>() != f.circuit.width()) {
        throw PlanError("fragment wire list does not match its circuit width");
    }
    if (f.gate_origin.size() != f.circuit.gates().size()) {
        throw PlanError("fragment gate_origin does not match its gate count");
    }
    return f;
}

json plan_to_json(const FragmentPlan &plan) {
    json tree = json::array();
    for (const PlanNode &n : plan.nodes) {
        json node{{"path", n.path},
                  {"fragment", fragment_to_json(n.fragment)},
                  {"success", n.estimate.success},
                  {"p_error", n.estimate.p_error},
                  {"p_ge", n.estimate.p_ge},
                  {"tau_ns", n.estimate.tau_ns},
                  {"status", status_name(n.status)},
                  {"children", n.children}};
        if (!n.reason.empty()) {
            node["reason"] = n.reason;
        }
        if (n.cuts) {
            node["cutspec"] = cutspec_to_json(*n.cuts);
        }
        if (n.ga || n.anneal) {
            json solvers;
            if (n.ga) {
                solvers["ga"] = cut_result_to_json(*n.ga);
            }
            if (n.anneal) {
                solvers["anneal"] = cut_result_to_json(*n.anneal);
            }
            solvers["chosen"] = n.chosen;
            node["solvers"] = solvers;
        }
        if (n.status != NodeStatus::Split) {
            node["variants"] = enumerate_variants(n.fragment).size();
        }
        tree.push_back(node);
    }
    return json{{"threshold", plan.threshold},
                {"width", plan.circuit.width()},
                {"name", plan.circuit.name()},
                {"circuit", to_qasm(plan.circuit)},
                {"total_cuts", plan.total_cuts()},
                {"tree", tree},
                {"leaves", plan.leaves}};
}

FragmentPlan plan_from_json(const json &doc) {
    try {
        FragmentPlan plan;
        plan.threshold = doc.at("threshold").get<double>();
        plan.circuit = parse_qasm(doc.at("circuit").get<std::string>(), doc.value("name", std::string{}));
        for (const json &jn : doc.at("tree")) {
            PlanNode n;
            n.path = jn.at("path").get<std::string>();
            n.fragment = fragment_from_json(jn.at("fragment"));
            n.estimate.success = jn.at("success").get<double>();
            n.estimate.p_error = jn.at("p_error").get<double>();
            n.estimate.p_ge = jn.at("p_ge").get<double>();
            n.estimate.tau_ns = jn.at("tau_ns").get<double>();
            n.status = parse_status(jn.at("status").get<std::string>());
            n.reason = jn.value("reason", std::string{});
            n.children = jn.at("children").get<std::vector<size_t>>();
            if (jn.contains("cutspec")) {
                n.cuts = cutspec_from_json(jn.at("cutspec"));
            }
            if (jn.contains("solvers")) {
                const json &s = jn.at("solvers");
                if (s.contains("ga")) {
                    n.ga = cut_result_from_json(s.at("ga"));
                }
                if (s.contains("anneal")) {
                    n.anneal = cut_result_from_json(s.at("anneal"));
                }
                n.chosen = s.value("chosen", std::string{});
            }
            plan.nodes.push_back(std::move(n));
        }
        plan.leaves = doc.at("leaves").get<std::vector<size_t>>();
        for (size_t idx : plan.leaves) {
            if (idx >= plan.nodes.size() || plan.nodes[idx].status == NodeStatus::Split) {
                throw PlanError("plan leaf list names a node that is not a leaf");
            }
        }
        if (plan.circuit.width() != doc.at("width").get<size_t>()) {
            throw PlanError("plan width disagrees with its circuit");
        }
        return plan;
    } catch (const json::exception &e) {
        throw PlanError(std::string("malformed plan document: ") + e.what());
    } catch (const ParseError &e) {
        throw PlanError(std::string("plan contains an unparsable circuit: ") + e.what());
    }
}

}  // namespace fragcut
