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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fragcut/distribution.hpp"
#include "fragcut/fragmenter.hpp"
#include "fragcut/noise.hpp"

namespace fragcut {

/// (inits label, bases label), e.g. {"+", "ZX"}.
using VariantKey = std::pair<std::string, std::string>;

/// Measured outputs of every variant of one leaf fragment.
struct FragmentOutput {
    size_t leaf = 0;  ///< position in FragmentPlan::leaves
    std::string path;
    Fragment fragment;
    std::map<VariantKey, Distribution> variants;
};

struct ExecuteOptions {
    bool noisy = false;
    uint64_t shots = 0;
    uint64_t seed = 0;
    size_t workers = 1;
};

/// Simulates every variant of every leaf. Noisy runs look up calibration through the
/// leaf's qubit map; sampling seeds are derived from the leaf path and variant labels.
std::vector<FragmentOutput> execute_plan(const FragmentPlan &plan, const NoiseProfile &p,
                                         const ExecuteOptions &options = {});

struct Reconstruction {
    Distribution distribution;
    size_t k = 0;
    uint64_t terms = 0;  ///< Pauli assignments evaluated
    double clipped_mass = 0;
};

/// Recombines leaf outputs over all 4^k Pauli assignments of the plan's cuts.
///
/// A cut carries rho = (1/2) sum_P Tr(rho P) P. The measuring fragment supplies Tr(rho P)
/// from its Z (for I and Z), X or Y run; the initializing fragment replaces P by
/// I = |0><0| + |1><1|, Z = |0><0| - |1><1|, X = 2|+><+| - I, Y = 2|+i><+i| - I.
///
/// Each leaf becomes a tensor over its cut labels and output bits. Sibling tensors are
/// contracted bottom-up along the plan tree, summing the labels of the cuts made at that
/// split in lexicographic order (I < X < Y < Z, lowest cut id most significant) with
/// compensated summation, so the result is independent of `workers`. `terms` counts the
/// label assignments summed per output entry. Negative entries are clipped and the rest
/// renormalized.
Reconstruction reconstruct(const std::vector<FragmentOutput> &outputs, const FragmentPlan &plan,
                           size_t workers = 1);

/// (sum_x sqrt(a(x) b(x)))^2.
double fidelity(const Distribution &a, const Distribution &b);
/// (1/2) sum_x |a(x) - b(x)|.
double tvd(const Distribution &a, const Distribution &b);
/// sqrt(1 - sum_x sqrt(a(x) b(x))).
double hellinger(const Distribution &a, const Distribution &b);

nlohmann::json fragment_output_to_json(const FragmentOutput &out);
FragmentOutput fragment_output_from_json(const nlohmann::json &doc);

nlohmann::json reconstruction_to_json(const Reconstruction &r, const std::optional<Distribution> &reference);

}  // namespace fragcut
