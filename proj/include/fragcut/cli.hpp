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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fragcut/circuit.hpp"
#include "fragcut/fragmenter.hpp"
#include "fragcut/noise.hpp"

namespace fragcut::cli {

enum ExitCode : int {
    EXIT_OK = 0,
    EXIT_USAGE = 1,
    EXIT_PARSE = 2,
    EXIT_PROFILE = 3,
    EXIT_PLAN = 4,
    EXIT_SIMULATION = 5,
    EXIT_IO = 6,
};

/// Entry point of the `fragcut` tool. Documents go to files named by --out (or to `out`
/// when no file is given); tables and diagnostics go to `out` and `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

struct SweepRow {
    double threshold = 0;
    size_t leaves = 0;
    size_t total_cuts = 0;
    double min_leaf_success = 0;
    double fidelity = 0;
    double tvd = 0;
};

struct SweepOptions {
    FragmentOptions fragment;
    bool noisy = true;
    size_t workers = 1;
};

struct SweepResult {
    double uncut_success = 0;
    double uncut_fidelity = 0;  ///< uncut execution vs ideal
    std::vector<SweepRow> rows;
};

/// For each threshold: plan, execute every leaf variant, reconstruct, and score against
/// the ideal uncut distribution. Exact probabilities throughout.
SweepResult threshold_sweep(const Circuit &c, const NoiseProfile &p, const std::vector<double> &thresholds,
                            const SweepOptions &options);

std::string sweep_to_csv(const SweepResult &r);

}  // namespace fragcut::cli
