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

#include "fragcut/annealer.hpp"

#include <algorithm>
#include <cmath>

#include "fragcut/error.hpp"
#include "fragcut/rng.hpp"

namespace fragcut {

using nlohmann::json;

void IsingModel::add_coupling(size_t a, size_t b, double value) {
    if (a == b) {
        throw PartitionError("self-coupling J_ii is not allowed");
    }
    j[std::minmax(a, b)] += value;
}

void IsingModel::validate() const {
    if (h.size() != n) {
        throw PartitionError("field vector length does not match spin count");
    }
    for (double x : h) {
        if (!std::isfinite(x)) {
            throw PartitionError("non-finite field");
        }
    }
    for (const auto &[key, val] : j) {
        if (key.first >= key.second || key.second >= n) {
            throw PartitionError("coupling key out of order or out of range");
        }
        if (!std::isfinite(val)) {
            throw PartitionError("non-finite coupling");
        }
    }
    if (!std::isfinite(offset)) {
        throw PartitionError("non-finite offset");
    }
}

double energy(const IsingModel &m, const SpinConfig &s) {
    if (s.size() != m.n) {
        throw PartitionError("spin configuration length does not match model");
    }
    double e = m.offset;
    for (size_t i = 0; i < m.n; i++) {
        e += m.h[i] * s[i];
    }
    for (const auto &[key, val] : m.j) {
        e += val * s[key.first] * s[key.second];
    }
    return e;
}

double qubo_energy(const QuboModel &m, const std::vector<uint8_t> &x) {
    if (x.size() != m.n) {
        throw PartitionError("bit vector length does not match model");
    }
    double e = m.offset;
    for (const auto &[key, val] : m.q) {
        e += val * x[key.first] * x[key.second];
    }
    return e;
}

QuboModel ising_to_qubo(const IsingModel &m) {
    QuboModel out;
    out.n = m.n;
    out.offset = m.offset;
    for (size_t i = 0; i < m.n; i++) {
        if (m.h[i] != 0) {
            out.q[{i, i}] += 2 * m.h[i];
            out.offset -= m.h[i];
        }
    }
    for (const auto &[key, val] : m.j) {
        out.q[key] += 4 * val;
        out.q[{key.first, key.first}] -= 2 * val;
        out.q[{key.second, key.second}] -= 2 * val;
        out.offset += val;
    }
    return out;
}

IsingModel qubo_to_ising(const QuboModel &m) {
    IsingModel out;
    out.n = m.n;
    out.h.assign(m.n, 0.0);
    out.offset = m.offset;
    for (const auto &[key, val] : m.q) {
        auto [a, b] = key;
        if (a == b) {
            out.h[a] += val / 2;
            out.offset += val / 2;
        } else {
            out.j[{a, b}] += val / 4;
            out.h[a] += val / 4;
            out.h[b] += val / 4;
            out.offset += val / 4;
        }
    }
    return out;
}

IsingModel build_ising(const GateGraph &g, double alpha, double beta) {
    const size_t n = g.num_vertices();
    if (n < 2) {
        throw PartitionError("Ising encoding needs at least two vertices");
    }
    if (!(alpha >= 0) || !(beta >= 0)) {
        throw PartitionError("balance weights must be non-negative");
    }
    IsingModel m;
    m.n = n;
    m.h.assign(n, 0.0);
    const auto &v = g.vertices();
    double sum_v = 0;
    double sum_v2 = 0;
    for (size_t i = 0; i < n; i++) {
        sum_v += v[i].weight;
        sum_v2 += v[i].weight * v[i].weight;
        for (size_t k = i + 1; k < n; k++) {
            m.j[{i, k}] = 2 * alpha * v[i].weight * v[k].weight + beta / 2;
        }
    }
    for (const GraphEdge &e : g.edges()) {
        double w2 = static_cast<double>(e.weight) * e.weight;
        m.j[std::minmax(e.u, e.v)] -= w2 / 2;
        m.offset += w2 / 2;
    }
    double half_n = static_cast<double>(n) / 2;
    m.offset += alpha * sum_v2 + (sum_v - half_n) * (sum_v - half_n) + beta * static_cast<double>(n) / 4;
    return m;
}

void AnnealSchedule::validate() const {
    if (sweeps < 1) {
        throw PartitionError("annealing needs at least one sweep");
    }
    if (!(t_end > 0) || !(t_start >= t_end)) {
        throw PartitionError("annealing schedule needs t_start >= t_end > 0");
    }
}

AnnealSchedule AnnealSchedule::automatic(const IsingModel &m, size_t sweeps) {
    std::vector<double> field(m.n, 0.0);
    for (size_t i = 0; i < m.n; i++) {
        field[i] = std::abs(m.h[i]);
    }
    for (const auto &[key, val] : m.j) {
        field[key.first] += std::abs(val);
        field[key.second] += std::abs(val);
    }
    double top = 0;
    for (double f : field) {
        top = std::max(top, f);
    }
    if (top == 0) {
        top = 1;
    }
    return AnnealSchedule{2 * top, 2e-3 * top, sweeps};
}

namespace {

struct Neighbor {
    size_t index;
    double coupling;
};

std::vector<std::vector<Neighbor>> adjacency(const IsingModel &m) {
    std::vector<std::vector<Neighbor>> adj(m.n);
    for (const auto &[key, val] : m.j) {
        if (val != 0) {
            adj[key.first].push_back({key.second, val});
            adj[key.second].push_back({key.first, val});
        }
    }
    return adj;
}

}  // namespace

AnnealResult simulated_anneal(const IsingModel &m, const AnnealSchedule &schedule, uint64_t seed, size_t restarts) {
    m.validate();
    schedule.validate();
    if (restarts < 1) {
        throw PartitionError("annealing needs at least one restart");
    }
    AnnealResult result;
    if (m.n == 0) {
        result.energy = m.offset;
        result.restart_energies.assign(restarts, m.offset);
        result.restart_spins.assign(restarts, {});
        return result;
    }
    const auto adj = adjacency(m);
    const double ratio =
        schedule.sweeps > 1 ? std::pow(schedule.t_end / schedule.t_start, 1.0 / static_cast<double>(schedule.sweeps - 1))
                            : 1.0;

    for (size_t r = 0; r < restarts; r++) {
        std::mt19937_64 rng(derive_seed(seed, r));
        SpinConfig s(m.n);
        for (auto &x : s) {
            x = (rng() >> 63) ? 1 : -1;
        }
        std::vector<double> field(m.n);
        for (size_t i = 0; i < m.n; i++) {
            field[i] = m.h[i];
            for (const Neighbor &nb : adj[i]) {
                field[i] += nb.coupling * s[nb.index];
            }
        }
        double e = energy(m, s);
        double best_e = e;
        SpinConfig best_s = s;

        double temperature = schedule.t_start;
        for (size_t sweep = 0; sweep < schedule.sweeps; sweep++) {
            for (size_t step = 0; step < m.n; step++) {
                size_t i = static_cast<size_t>(rng() % m.n);
                double delta = -2.0 * s[i] * field[i];
                if (delta <= 0 || uniform01(rng) < std::exp(-delta / temperature)) {
                    s[i] = static_cast<int8_t>(-s[i]);
                    e += delta;
                    for (const Neighbor &nb : adj[i]) {
                        field[nb.index] += 2.0 * nb.coupling * s[i];
                    }
                    if (e < best_e - 1e-12) {
                        best_e = e;
                        best_s = s;
                    }
                }
            }
            temperature *= ratio;
        }
        best_e = energy(m, best_s);
        result.restart_energies.push_back(best_e);
        result.restart_spins.push_back(best_s);
        if (r == 0 || best_e < result.energy) {
            result.energy = best_e;
            result.spins = best_s;
        }
    }
    return result;
}

PartitionVector spins_to_partition(const SpinConfig &s) {
    std::vector<uint8_t> bits(s.size());
    for (size_t i = 0; i < s.size(); i++) {
        bits[i] = s[i] > 0 ? 1 : 0;
    }
    return PartitionVector(std::move(bits));
}

SpinConfig partition_to_spins(const PartitionVector &pv) {
    SpinConfig s(pv.size());
    for (size_t i = 0; i < pv.size(); i++) {
        s[i] = pv[i] ? 1 : -1;
    }
    return s;
}

CutResult anneal_partition(const GateGraph &g, const AnnealPartitionOptions &options) {
    if (options.alphas.empty()) {
        throw PartitionError("annealing needs at least one balance weight");
    }
    CutResult best;
    best.algorithm = "anneal";
    best.seed = options.seed;
    best.partition = PartitionVector(std::vector<uint8_t>(g.num_vertices(), 0));
    for (size_t a = 0; a < options.alphas.size(); a++) {
        IsingModel m = build_ising(g, options.alphas[a], options.beta);
        AnnealSchedule schedule = options.t_start > 0
                                      ? AnnealSchedule{options.t_start, options.t_end, options.sweeps}
                                      : AnnealSchedule::automatic(m, options.sweeps);
        AnnealResult r = simulated_anneal(m, schedule, derive_seed(options.seed, a), options.restarts);
        for (const SpinConfig &s : r.restart_spins) {
            PartitionVector pv = spins_to_partition(s);
            double c = partition_cost(pv, g);
            if (c < best.cost) {
                best.cost = c;
                best.partition = pv;
            }
        }
        best.passes += options.restarts;
        best.min_cost_trace.push_back(best.cost);
    }
    best.cut_size = cut_size(best.partition, g);
    return best;
}

json ising_to_json(const IsingModel &m) {
    json j = json::array();
    for (const auto &[key, val] : m.j) {
        j.push_back({key.first, key.second, val});
    }
    return json{{"n", m.n}, {"h", m.h}, {"j", j}, {"offset", m.offset}};
}

IsingModel ising_from_json(const json &doc) {
    IsingModel m;
    try {
        m.n = doc.at("n").get<size_t>();
        m.h = doc.at("h").get<std::vector<double>>();
        for (const json &entry : doc.at("j")) {
            if (!entry.is_array() || entry.size() != 3) {
                throw PartitionError("coupling entries must be [i, j, value]");
            }
            m.add_coupling(entry[0].get<size_t>(), entry[1].get<size_t>(), entry[2].get<double>());
        }
        m.offset = doc.value("offset", 0.0);
    } catch (const json::exception &e) {
        throw PartitionError(std::string("malformed model document: ") + e.what());
    }
    m.validate();
    return m;
}

}  // namespace fragcut
