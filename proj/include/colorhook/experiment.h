// Copyright 2026 The colorhook Authors
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


#ifndef COLORHOOK_EXPERIMENT_H
#define COLORHOOK_EXPERIMENT_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "colorhook/circuit.h"
#include "colorhook/decode.h"
#include "colorhook/lattice.h"
#include "colorhook/noise.h"
#include "colorhook/schedule.h"

namespace colorhook {

/// A Z-basis memory experiment.
struct ExperimentSpec {
    uint32_t distance = 3;
    /// 0 means `distance` rounds.
    uint32_t rounds = 0;
    Variant variant = Variant::XZ;
    /// Anything resolve_schedule accepts.
    std::string schedule = "default";
    NoiseModelSpec noise{NoiseModel::NoisyCnot, 0.001};
    uint64_t shots = 1000;
    uint64_t seed = 0;
    size_t beam = DEFAULT_BEAM;

    uint32_t effective_rounds() const {
        return rounds ? rounds : distance;
    }
};

struct ExperimentResult {
    ExperimentSpec spec;
    uint64_t shots = 0;
    uint64_t logical_failures = 0;
    double p_shot = 0;
    double p_round = 0;
    /// Likelihood interval of the per-shot rate, and its per-round image.
    std::pair<double, double> shot_interval{0, 1};
    std::pair<double, double> round_interval{0, 0.5};
    size_t n_tot = 0;
    /// Shots whose decode hit the beam limit.
    uint64_t inexact_decodes = 0;
};

/// (1 - (1 - 2 p_shot)^(1 / rounds)) / 2, saturating at 1/2 for p_shot >= 1/2.
double per_round_error(double p_shot, uint32_t rounds);

/// The rates q whose binomial likelihood of `failures` in `shots` is within `factor` of the
/// maximum, bracketed by bisection.
std::pair<double, double> likelihood_interval(uint64_t failures, uint64_t shots, double factor = 1000);

/// Worker count from COLORHOOK_THREADS, else the hardware concurrency (at least one).
unsigned worker_count();

/// Samples, decodes and counts logical failures. Shots are split into contiguous batch ranges
/// across worker_count() threads; the result is the same for any thread count.
ExperimentResult run_experiment(const ExperimentSpec &spec);

/// Parses `key = value` lines (`#` starts a comment). Keys: d, rounds, variant, schedule, noise,
/// shots, seed, beam. Values may be comma-separated lists; the result is their product in key
/// order with the last key varying fastest.
std::vector<ExperimentSpec> parse_experiment_config(std::string_view text);

inline constexpr std::string_view SWEEP_CSV_HEADER =
    "d,rounds,variant,schedule,noise,shots,seed,n_tot,logical_failures,inexact_decodes,p_shot,"
    "p_shot_low,p_shot_high,p_round,p_round_low,p_round_high";

void write_sweep_row(std::ostream &out, const ExperimentResult &result);

/// Runs every spec in order and writes SWEEP_CSV_HEADER followed by one row per spec.
void compare_sweep(std::ostream &out, const std::vector<ExperimentSpec> &specs);

/// The uniform order with the most hooks that lower the distance on their own, among the
/// conflict-free uniform orders (ties go to the lexicographically first order).
SlotOrder worst_uniform_order(const Patch &patch);

}  // namespace colorhook

#endif
