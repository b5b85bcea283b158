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

#include "fragcut/partition.hpp"

#include <cmath>
#include <random>

#include "fragcut/error.hpp"
#include "fragcut/rng.hpp"

namespace fragcut {

PartitionVector::PartitionVector(std::vector<uint8_t> bits) : bits_(std::move(bits)) {
    for (uint8_t b : bits_) {
        if (b > 1) {
            throw PartitionError("partition bits must be 0 or 1");
        }
    }
}

bool PartitionVector::is_proper() const {
    bool zero = false;
    bool one = false;
    for (uint8_t b : bits_) {
        zero |= b == 0;
        one |= b == 1;
    }
    return zero && one;
}

PartitionVector PartitionVector::complement() const {
    PartitionVector out = *this;
    for (auto &b : out.bits_) {
        b ^= 1;
    }
    return out;
}

std::string PartitionVector::to_string() const {
    std::string s;
    for (uint8_t b : bits_) {
        s += static_cast<char>('0' + b);
    }
    return s;
}

namespace {

void check_length(const PartitionVector &pv, const GateGraph &g) {
    if (pv.size() != g.num_vertices()) {
        throw PartitionError("partition vector has length " + std::to_string(pv.size()) + " but the graph has " +
                             std::to_string(g.num_vertices()) + " vertices");
    }
}

uint32_t cut_size_unchecked(const PartitionVector &pv, const GateGraph &g) {
    uint32_t k = 0;
    for (const GraphEdge &e : g.edges()) {
        if (pv[e.u] != pv[e.v]) {
            k += e.weight;
        }
    }
    return k;
}

double cost_unchecked(const PartitionVector &pv, const GateGraph &g) {
    double omega[2] = {0, 0};
    size_t count[2] = {0, 0};
    for (size_t i = 0; i < pv.size(); i++) {
        omega[pv[i]] += g.vertices()[i].weight;
        count[pv[i]]++;
    }
    if (count[0] == 0 || count[1] == 0) {
        return IMPROPER_COST;
    }
    double k = cut_size_unchecked(pv, g);
    if (k == 0) {
        return 0;
    }
    return k * (1 / omega[0] + 1 / omega[1]);
}

PartitionVector random_proper_vector(size_t n, std::mt19937_64 &rng) {
    std::vector<uint8_t> bits(n);
    for (auto &b : bits) {
        b = static_cast<uint8_t>(rng() >> 63);
    }
    PartitionVector pv(std::move(bits));
    if (!pv.is_proper()) {
        pv.flip(rng() % n);
    }
    return pv;
}

}  // namespace

uint32_t cut_size(const PartitionVector &pv, const GateGraph &g) {
    check_length(pv, g);
    return cut_size_unchecked(pv, g);
}

double partition_cost(const PartitionVector &pv, const GateGraph &g) {
    check_length(pv, g);
    return cost_unchecked(pv, g);
}

PartitionVector crossover(const PartitionVector &v1, const PartitionVector &v2, double c1) {
    if (v1.size() != v2.size()) {
        throw PartitionError("crossover of vectors with different lengths");
    }
    size_t split = static_cast<size_t>(std::floor(c1 * static_cast<double>(v1.size())));
    std::vector<uint8_t> bits(v1.bits().begin(), v1.bits().begin() + static_cast<ptrdiff_t>(split));
    bits.insert(bits.end(), v2.bits().begin() + static_cast<ptrdiff_t>(split), v2.bits().end());
    return PartitionVector(std::move(bits));
}

void GaParams::validate() const {
    if (!(c1 > 0 && c1 < 1)) {
        throw PartitionError("c1 must lie in (0,1)");
    }
    if (restarts == 0) {
        throw PartitionError("restarts must be at least 1");
    }
    if (!(mutation >= 0 && mutation <= 1)) {
        throw PartitionError("mutation must be a probability");
    }
}

CutResult find_min_cut_ga(const GateGraph &g, const GaParams &params, const std::optional<PartitionVector> &initial) {
    params.validate();
    const size_t n = g.num_vertices();
    if (n < 2) {
        throw PartitionError("min-cut search needs at least two vertices");
    }
    if (initial) {
        check_length(*initial, g);
    }
    const size_t max_passes = params.max_passes ? params.max_passes : 50 * n;

    CutResult best;
    best.algorithm = "ga";
    best.seed = params.seed;
    for (size_t run = 0; run < params.restarts; run++) {
        std::mt19937_64 rng(derive_seed(params.seed, run));
        PartitionVector working = run == 0 && initial ? *initial : random_proper_vector(n, rng);
        PartitionVector run_best = working;
        double run_cost = cost_unchecked(working, g);
        if (run == 0 || run_cost < best.cost) {
            best.partition = run_best;
            best.cost = run_cost;
        }
        size_t stagnation = 0;
        for (size_t pass = 0; stagnation <= params.c2 && pass < max_passes; pass++) {
            bool improved = false;
            for (size_t i = 0; i < n; i++) {
                working.flip(i);
                double c = cost_unchecked(working, g);
                if (c < run_cost) {
                    run_cost = c;
                    run_best = working;
                    improved = true;
                } else {
                    working.flip(i);
                }
            }
            working = crossover(run_best, working, params.c1);
            if (params.mutation > 0) {
                for (size_t i = 0; i < n; i++) {
                    if (uniform01(rng) < params.mutation) {
                        working.flip(i);
                    }
                }
            }
            stagnation = improved ? 0 : stagnation + 1;
            if (run_cost < best.cost) {
                best.cost = run_cost;
                best.partition = run_best;
            }
            best.passes++;
            best.min_cost_trace.push_back(best.cost);
        }
    }
    best.cut_size = cut_size_unchecked(best.partition, g);
    return best;
}

nlohmann::json cut_result_to_json(const CutResult &r) {
    nlohmann::json doc{{"partition", r.partition.bits()},
                       {"cut_size", r.cut_size},
                       {"algorithm", r.algorithm},
                       {"seed", r.seed},
                       {"passes", r.passes}};
    if (std::isfinite(r.cost)) {
        doc["cost"] = r.cost;
    } else {
        doc["cost"] = nullptr;
    }
    return doc;
}

CutResult cut_result_from_json(const nlohmann::json &doc) {
    try {
        CutResult r;
        r.partition = PartitionVector(doc.at("partition").get<std::vector<uint8_t>>());
        r.cost = doc.at("cost").is_null() ? IMPROPER_COST : doc.at("cost").get<double>();
        r.cut_size = doc.at("cut_size").get<uint32_t>();
        r.algorithm = doc.at("algorithm").get<std::string>();
        r.seed = doc.at("seed").get<uint64_t>();
        r.passes = doc.at("passes").get<size_t>();
        return r;
    } catch (const nlohmann::json::exception &e) {
        throw PartitionError(std::string("malformed cut-result document: ") + e.what());
    }
}

}  // namespace fragcut
