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


#include "colorhook/experiment.h"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "gtest/gtest.h"

using namespace colorhook;

TEST(experiment, per_round_error) {
    EXPECT_EQ(per_round_error(0, 3), 0);
    EXPECT_DOUBLE_EQ(per_round_error(0.1, 1), 0.1);
    EXPECT_DOUBLE_EQ(per_round_error(0.1, 2), (1 - std::sqrt(0.8)) / 2);
    EXPECT_EQ(per_round_error(0.5, 3), 0.5);
    EXPECT_EQ(per_round_error(0.7, 3), 0.5);
    EXPECT_THROW(per_round_error(0.1, 0), std::invalid_argument);
}

TEST(experiment, likelihood_interval) {
    auto zero = likelihood_interval(0, 1000);
    EXPECT_EQ(zero.first, 0);
    EXPECT_NEAR(zero.second, 1 - std::pow(1000.0, -1.0 / 1000), 1e-12);

    auto all = likelihood_interval(50, 50);
    EXPECT_EQ(all.second, 1);
    EXPECT_NEAR(all.first, std::pow(1000.0, -1.0 / 50), 1e-12);

    auto mid = likelihood_interval(30, 1000);
    EXPECT_LT(mid.first, 0.03);
    EXPECT_GT(mid.second, 0.03);
    auto wider = likelihood_interval(30, 1000, 1e6);
    EXPECT_LT(wider.first, mid.first);
    EXPECT_GT(wider.second, mid.second);
    auto tighter = likelihood_interval(300, 10000);
    EXPECT_GT(tighter.first, mid.first);
    EXPECT_LT(tighter.second, mid.second);

    EXPECT_THROW(likelihood_interval(0, 0), std::invalid_argument);
    EXPECT_THROW(likelihood_interval(5, 4), std::invalid_argument);
}

TEST(experiment, noiseless_runs_never_fail) {
    ExperimentSpec spec;
    spec.noise = {NoiseModel::NoisyCnot, 0};
    spec.shots = 300;
    auto r = run_experiment(spec);
    EXPECT_EQ(r.logical_failures, 0u);
    EXPECT_EQ(r.shots, 300u);
    EXPECT_EQ(r.p_round, 0);
    EXPECT_EQ(r.n_tot, 10u);
}

TEST(experiment, result_does_not_depend_on_thread_count) {
    ExperimentSpec spec;
    spec.noise = {NoiseModel::SI1000, 0.01};
    spec.shots = 2000;
    spec.seed = 4;
    setenv("COLORHOOK_THREADS", "1", 1);
    auto one = run_experiment(spec);
    setenv("COLORHOOK_THREADS", "3", 1);
    EXPECT_EQ(worker_count(), 3u);
    auto three = run_experiment(spec);
    unsetenv("COLORHOOK_THREADS");
    EXPECT_EQ(one.logical_failures, three.logical_failures);
    EXPECT_GT(one.logical_failures, 0u);
    EXPECT_DOUBLE_EQ(one.p_shot, static_cast<double>(one.logical_failures) / 2000);
    EXPECT_DOUBLE_EQ(one.p_round, per_round_error(one.p_shot, 3));
    EXPECT_LE(one.round_interval.first, one.p_round);
    EXPECT_GE(one.round_interval.second, one.p_round);
}

TEST(experiment, high_noise_fails_more_often) {
    ExperimentSpec low;
    low.shots = 3000;
    low.noise = {NoiseModel::UniformDepolarizing, 0.002};
    auto high = low;
    high.noise.p = 0.02;
    EXPECT_LT(run_experiment(low).logical_failures, run_experiment(high).logical_failures);
}

TEST(experiment, parse_config) {
    auto specs = parse_experiment_config(
        "# comment\n"
        "d = 3, 5\n"
        "noise = cnot:0.001\n"
        "schedule = default, uniform:013524  # trailing\n"
        "shots = 100\n"
        "seed = 7\n");
    ASSERT_EQ(specs.size(), 4u);
    EXPECT_EQ(specs[0].distance, 3u);
    EXPECT_EQ(specs[0].schedule, "default");
    EXPECT_EQ(specs[1].distance, 3u);
    EXPECT_EQ(specs[1].schedule, "uniform:013524");
    EXPECT_EQ(specs[2].distance, 5u);
    EXPECT_EQ(specs[3].shots, 100u);
    EXPECT_EQ(specs[3].seed, 7u);
    EXPECT_EQ(specs[3].effective_rounds(), 5u);

    EXPECT_THROW(parse_experiment_config("d 3\n"), std::invalid_argument);
    EXPECT_THROW(parse_experiment_config("depth = 3\n"), std::invalid_argument);
    EXPECT_THROW(parse_experiment_config("d = 3,\n"), std::invalid_argument);
    EXPECT_THROW(parse_experiment_config("shots = 0\n"), std::invalid_argument);
    EXPECT_THROW(parse_experiment_config("d = x\n"), std::invalid_argument);
    EXPECT_EQ(parse_experiment_config("").size(), 1u);
}

TEST(experiment, sweep_csv) {
    ExperimentSpec spec;
    spec.shots = 64;
    spec.noise = {NoiseModel::NoisyCnot, 0};
    std::ostringstream out;
    compare_sweep(out, {spec});
    EXPECT_EQ(
        out.str(),
        std::string(SWEEP_CSV_HEADER) + "\n3,3,xz,default,cnot:0,64,0,10,0,0,0,0,0.10231286755268582,0,0,0.036737461487955425\n");
    EXPECT_THROW(compare_sweep(out, {}), std::invalid_argument);
}

TEST(experiment, worst_uniform_order) {
    EXPECT_EQ(describe_order(worst_uniform_order(build_patch(5))), "013524");
}
