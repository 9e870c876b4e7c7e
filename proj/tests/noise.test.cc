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


#include "colorhook/noise.h"

#include <map>
#include <random>
#include <set>
#include <sstream>

#include "colorhook/analysis.h"
#include "colorhook/frame_simulator.h"
#include "gtest/gtest.h"

using namespace colorhook;

namespace {

CircuitIR distance_three(uint32_t rounds = 3, Variant variant = Variant::XZ) {
    return build_memory_circuit(build_patch(3), default_schedule(), rounds, variant);
}

std::map<OpCode, std::multiset<double>> noise_args(const CircuitIR &circuit) {
    std::map<OpCode, std::multiset<double>> out;
    for (const auto &inst : circuit.instructions) {
        if (is_noise(inst.op)) {
            out[inst.op].insert(inst.arg);
        }
    }
    return out;
}

std::vector<Fault> random_faults(const CircuitIR &circuit, size_t count, std::mt19937_64 &rng) {
    std::uniform_int_distribution<size_t> pos(0, circuit.instructions.size());
    std::uniform_int_distribution<uint32_t> qubit(0, circuit.num_qubits - 1);
    std::uniform_int_distribution<int> pauli(1, 3);
    std::vector<Fault> out;
    for (size_t k = 0; k < count; k++) {
        out.push_back({pos(rng), {{qubit(rng), static_cast<Pauli>(pauli(rng))}}});
    }
    return out;
}

}  // namespace

TEST(noise, parse_spec) {
    auto s = parse_noise_spec("cnot:0.001");
    EXPECT_EQ(s.kind, NoiseModel::NoisyCnot);
    EXPECT_EQ(s.p, 0.001);
    EXPECT_EQ(parse_noise_spec("si1000:2e-3").kind, NoiseModel::SI1000);
    EXPECT_EQ(parse_noise_spec("uniform:0.01").kind, NoiseModel::UniformDepolarizing);
    EXPECT_EQ(format_noise_spec(parse_noise_spec("si1000:0.002")), "si1000:0.002");
    EXPECT_THROW(parse_noise_spec("cnot"), std::invalid_argument);
    EXPECT_THROW(parse_noise_spec("thermal:0.001"), std::invalid_argument);
    EXPECT_THROW(parse_noise_spec("cnot:abc"), std::invalid_argument);
}

TEST(noise, annotate_rejects) {
    auto c = distance_three();
    auto noisy = annotate(c, {NoiseModel::NoisyCnot, 0.001});
    EXPECT_TRUE(noisy.has_noise());
    EXPECT_THROW(annotate(noisy, {NoiseModel::NoisyCnot, 0.001}), std::invalid_argument);
    EXPECT_THROW(annotate(c, {NoiseModel::NoisyCnot, 0.2}), std::invalid_argument);
    EXPECT_THROW(annotate(c, {NoiseModel::NoisyCnot, -0.001}), std::invalid_argument);
}

TEST(noise, annotate_keeps_gates) {
    auto c = distance_three();
    for (auto model : {NoiseModel::SI1000, NoiseModel::UniformDepolarizing, NoiseModel::NoisyCnot}) {
        auto noisy = annotate(c, {model, 0.001});
        std::vector<Instruction> gates;
        for (const auto &inst : noisy.instructions) {
            if (!is_noise(inst.op)) {
                gates.push_back(inst);
            }
        }
        EXPECT_EQ(gates, c.instructions);
        EXPECT_EQ(noisy.detectors, c.detectors);
        EXPECT_NO_THROW(validate_circuit(noisy));
    }
}

TEST(noise, noisy_cnot_only_follows_two_qubit_gates) {
    auto noisy = annotate(distance_three(), {NoiseModel::NoisyCnot, 0.001});
    auto args = noise_args(noisy);
    ASSERT_EQ(args.size(), 1u);
    EXPECT_EQ(args.begin()->first, OpCode::DEPOLARIZE2);
    for (size_t k = 0; k < noisy.instructions.size(); k++) {
        if (noisy.instructions[k].op == OpCode::DEPOLARIZE2) {
            ASSERT_GT(k, 0u);
            EXPECT_TRUE(is_two_qubit(noisy.instructions[k - 1].op));
            EXPECT_EQ(noisy.instructions[k].targets, noisy.instructions[k - 1].targets);
        }
    }
}

TEST(noise, si1000_strengths) {
    double p = 0.001;
    auto args = noise_args(annotate(distance_three(), {NoiseModel::SI1000, p}));
    std::set<double> x_flips(args[OpCode::X_ERROR].begin(), args[OpCode::X_ERROR].end());
    std::set<double> depolarize1(args[OpCode::DEPOLARIZE1].begin(), args[OpCode::DEPOLARIZE1].end());
    EXPECT_EQ(std::set<double>(args[OpCode::DEPOLARIZE2].begin(), args[OpCode::DEPOLARIZE2].end()), std::set<double>{p});
    EXPECT_TRUE(depolarize1.count(p / 10));
    EXPECT_TRUE(depolarize1.count(2 * p));
    EXPECT_TRUE(x_flips.count(5 * p) || args[OpCode::Z_ERROR].count(5 * p));
    EXPECT_TRUE(x_flips.count(2 * p) || args[OpCode::Z_ERROR].count(2 * p));
}

TEST(noise, uniform_strengths) {
    double p = 0.003;
    auto args = noise_args(annotate(distance_three(), {NoiseModel::UniformDepolarizing, p}));
    for (const auto &[op, values] : args) {
        for (auto v : values) {
            EXPECT_EQ(v, p) << op_name(op);
        }
    }
}

TEST(noise, frozen_distance_three_models) {
    struct Frozen {
        NoiseModel model;
        size_t instructions;
        size_t channel_faults;
    };
    auto c = distance_three();
    auto patch = build_patch(3);
    for (auto f : {Frozen{NoiseModel::UniformDepolarizing, 193, 1988}, Frozen{NoiseModel::SI1000, 203, 2198},
                   Frozen{NoiseModel::NoisyCnot, 133, 1080}}) {
        auto noisy = annotate(c, {f.model, 0.001});
        EXPECT_EQ(noisy.instructions.size(), f.instructions);
        EXPECT_EQ(channel_faults(noisy).size(), f.channel_faults);
        auto dem = compile_dem(noisy);
        EXPECT_EQ(dem.num_detectors, 18u);
        EXPECT_EQ(dem.classes.size(), 285u);
        std::map<FaultCategory, size_t> categories;
        for (const auto &info : classify_fault_classes(patch, noisy, dem)) {
            categories[info.category]++;
        }
        EXPECT_EQ(categories[FaultCategory::Data], 115u);
        EXPECT_EQ(categories[FaultCategory::Hook], 24u);
        EXPECT_EQ(categories[FaultCategory::Measurement], 12u);
        EXPECT_EQ(categories[FaultCategory::Other], 134u);
    }
}

TEST(noise, dem_classes_are_sorted_merged_and_nonempty) {
    auto noisy = annotate(distance_three(), {NoiseModel::SI1000, 0.002});
    auto dem = compile_dem(noisy);
    auto faults = channel_faults(noisy);
    std::vector<Fault> raw;
    for (const auto &cf : faults) {
        raw.push_back(cf.fault);
    }
    auto sigs = fault_signatures(noisy, raw);
    std::map<Signature, double> merged;
    for (size_t k = 0; k < faults.size(); k++) {
        if (sigs[k].empty()) {
            continue;
        }
        double &q = merged[sigs[k]];
        q = q * (1 - faults[k].probability) + faults[k].probability * (1 - q);
    }
    ASSERT_EQ(dem.classes.size(), merged.size());
    size_t k = 0;
    for (const auto &[sig, q] : merged) {
        EXPECT_EQ(dem.classes[k].signature, sig);
        EXPECT_NEAR(dem.classes[k].probability, q, 1e-15);
        EXPECT_GT(dem.classes[k].probability, 0);
        EXPECT_LT(dem.classes[k].probability, 0.5);
        k++;
    }
}

TEST(noise, signatures_match_frame_propagation) {
    std::mt19937_64 rng(11);
    for (auto v : {Variant::XZ, Variant::XYZ}) {
        auto c = build_memory_circuit(build_patch(5), default_schedule(), 4, v);
        for (int trial = 0; trial < 200; trial++) {
            auto faults = random_faults(c, 1 + trial % 3, rng);
            Signature combined;
            for (const auto &s : fault_signatures(c, faults)) {
                combined = xor_signatures(combined, s);
            }
            auto shot = simulate_faults(c, faults);
            EXPECT_EQ(combined.detectors, shot.detectors.ones());
            EXPECT_EQ(combined.observable, shot.observable);
        }
    }
}

TEST(noise, xor_signatures) {
    Signature a{{1, 4, 7}, true};
    Signature b{{2, 4}, true};
    EXPECT_EQ(xor_signatures(a, b), (Signature{{1, 2, 7}, false}));
    EXPECT_TRUE(xor_signatures(a, a).empty());
}

TEST(noise, dem_text_round_trip) {
    auto dem = compile_dem(annotate(distance_three(), {NoiseModel::UniformDepolarizing, 0.001}));
    std::stringstream ss;
    write_dem(ss, dem);
    auto back = read_dem(ss);
    EXPECT_EQ(back.num_detectors, dem.num_detectors);
    ASSERT_EQ(back.classes.size(), dem.classes.size());
    for (size_t k = 0; k < dem.classes.size(); k++) {
        EXPECT_EQ(back.classes[k].signature, dem.classes[k].signature);
        EXPECT_EQ(back.classes[k].probability, dem.classes[k].probability);
    }
}

TEST(noise, dem_parse_errors) {
    std::stringstream no_header("E(0.1) D0\n");
    EXPECT_THROW(read_dem(no_header), std::invalid_argument);
    std::stringstream out_of_range("N 2\nE(0.1) D2\n");
    EXPECT_THROW(read_dem(out_of_range), std::invalid_argument);
    std::stringstream bad_target("N 2\nE(0.1) X0\n");
    EXPECT_THROW(read_dem(bad_target), std::invalid_argument);
    std::stringstream ok("# comment\nN 3\nE(0.25) D2 D0 L0\n");
    auto dem = read_dem(ok);
    ASSERT_EQ(dem.classes.size(), 1u);
    EXPECT_EQ(dem.classes[0].signature, (Signature{{0, 2}, true}));
}
