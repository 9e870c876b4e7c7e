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


#include "colorhook/circuit.h"

#include <map>
#include <set>
#include <sstream>

#include "colorhook/noise.h"
#include "gtest/gtest.h"

using namespace colorhook;

namespace {

struct CircuitCounts {
    uint32_t d;
    Variant variant;
    uint32_t rounds;
    size_t instructions;
    size_t ticks;
    size_t measurements;
    size_t detectors;
};

const CircuitCounts FROZEN_COUNTS[] = {
    {3, Variant::XZ, 1, 33, 15, 13, 6},
    {3, Variant::XZ, 3, 97, 47, 25, 18},
    {3, Variant::XYZ, 1, 17, 7, 10, 3},
    {3, Variant::XYZ, 3, 49, 23, 16, 9},
    {5, Variant::XZ, 5, 161, 79, 109, 90},
    {5, Variant::XYZ, 2, 33, 15, 37, 18},
    {5, Variant::XYZ, 5, 81, 39, 64, 45},
};

CircuitIR memory(uint32_t d, uint32_t rounds, Variant variant) {
    return build_memory_circuit(build_patch(d), default_schedule(), rounds, variant);
}

}  // namespace

TEST(circuit, frozen_counts) {
    for (const auto &c : FROZEN_COUNTS) {
        auto circuit = memory(c.d, c.rounds, c.variant);
        SCOPED_TRACE(std::to_string(c.d) + " " + std::string(variant_name(c.variant)) + " " + std::to_string(c.rounds));
        EXPECT_EQ(circuit.num_qubits, build_patch(c.d).num_qubits());
        EXPECT_EQ(circuit.instructions.size(), c.instructions);
        EXPECT_EQ(circuit.num_ticks(), c.ticks);
        EXPECT_EQ(circuit.num_measurements(), c.measurements);
        EXPECT_EQ(circuit.detectors.size(), c.detectors);
        EXPECT_EQ(circuit.observable.size(), c.d);
        EXPECT_FALSE(circuit.has_noise());
    }
}

TEST(circuit, rejects_zero_rounds) {
    EXPECT_THROW(memory(3, 0, Variant::XZ), std::invalid_argument);
    EXPECT_THROW(memory(3, 0, Variant::XYZ), std::invalid_argument);
}

TEST(circuit, variant_names) {
    EXPECT_EQ(parse_variant("xz"), Variant::XZ);
    EXPECT_EQ(parse_variant("xyz"), Variant::XYZ);
    EXPECT_EQ(variant_name(Variant::XYZ), "xyz");
    EXPECT_THROW(parse_variant("zx"), std::invalid_argument);
}

TEST(circuit, built_circuits_validate) {
    for (uint32_t d : {3u, 5u, 7u}) {
        for (auto v : {Variant::XZ, Variant::XYZ}) {
            for (uint32_t r : {1u, 2u, 3u, 4u}) {
                EXPECT_NO_THROW(validate_circuit(memory(d, r, v))) << d << " " << r;
            }
        }
    }
}

TEST(circuit, validate_rejects_broken_circuits) {
    auto base = memory(3, 1, Variant::XZ);

    auto missing = base;
    missing.detectors[0].measurements.push_back(static_cast<uint32_t>(base.num_measurements()));
    EXPECT_THROW(validate_circuit(missing), std::logic_error);

    auto clash = base;
    for (auto &inst : clash.instructions) {
        if (inst.op == OpCode::CX) {
            inst.targets.push_back(inst.targets[0]);
            inst.targets.push_back(inst.targets[1]);
            break;
        }
    }
    EXPECT_THROW(validate_circuit(clash), std::logic_error);

    auto self_pair = base;
    for (auto &inst : self_pair.instructions) {
        if (inst.op == OpCode::CX) {
            inst.targets[1] = inst.targets[0];
            break;
        }
    }
    EXPECT_THROW(validate_circuit(self_pair), std::logic_error);

    auto unknown = base;
    unknown.instructions[0].targets.push_back(base.num_qubits);
    EXPECT_THROW(validate_circuit(unknown), std::logic_error);
}

TEST(circuit, every_extraction_couples_each_face_to_its_qubits_once) {
    auto patch = build_patch(5);
    auto circuit = build_memory_circuit(patch, default_schedule(), 2, Variant::XZ);
    std::map<std::pair<uint32_t, uint32_t>, int> couplings;
    for (const auto &inst : circuit.instructions) {
        if (!is_two_qubit(inst.op)) {
            continue;
        }
        for (size_t i = 0; i + 1 < inst.targets.size(); i += 2) {
            auto a = inst.targets[i];
            auto b = inst.targets[i + 1];
            couplings[{std::min(a, b), std::max(a, b)}]++;
        }
    }
    size_t expected_pairs = 0;
    for (const auto &face : patch.faces) {
        for (auto q : face.data_slots) {
            EXPECT_EQ((couplings[{q, face.aux_qubit}]), 4) << face.id << " " << q;
            expected_pairs++;
        }
    }
    EXPECT_EQ(couplings.size(), expected_pairs);
}

TEST(circuit, frozen_distance_three_prefix) {
    auto text = export_circuit(memory(3, 1, Variant::XZ));
    std::string prefix =
        "QUBIT_COORDS(0, 0) 0\n"
        "QUBIT_COORDS(2, 0) 1\n"
        "QUBIT_COORDS(3, 0) 2\n"
        "QUBIT_COORDS(0, 1) 3\n"
        "QUBIT_COORDS(1, 1) 4\n"
        "QUBIT_COORDS(1, 2) 5\n"
        "QUBIT_COORDS(0, 3) 6\n"
        "QUBIT_COORDS(1, 0) 7\n"
        "QUBIT_COORDS(2, 1) 8\n"
        "QUBIT_COORDS(0, 2) 9\n"
        "R 0 1 2 3 4 5 6\n"
        "RX 7 8 9\n"
        "TICK\n"
        "CX 7 3 9 6\n";
    EXPECT_EQ(text.substr(0, prefix.size()), prefix);
    std::string suffix =
        "M 0 1 2 3 4 5 6\n"
        "DETECTOR(1, 0, 2) rec[-10] rec[-4] rec[-3] rec[-6] rec[-7]\n"
        "DETECTOR(2, 1, 2) rec[-9] rec[-2] rec[-5] rec[-6] rec[-3]\n"
        "DETECTOR(0, 2, 2) rec[-8] rec[-1] rec[-2] rec[-3] rec[-4]\n"
        "OBSERVABLE_INCLUDE(0) rec[-7] rec[-6] rec[-5]\n";
    ASSERT_GE(text.size(), suffix.size());
    EXPECT_EQ(text.substr(text.size() - suffix.size()), suffix);
}

TEST(circuit, text_round_trip) {
    for (auto v : {Variant::XZ, Variant::XYZ}) {
        auto circuit = memory(5, 3, v);
        EXPECT_EQ(parse_circuit(export_circuit(circuit)), circuit);
        for (auto model : {NoiseModel::SI1000, NoiseModel::UniformDepolarizing, NoiseModel::NoisyCnot}) {
            auto noisy = annotate(circuit, {model, 0.002});
            std::stringstream ss;
            write_circuit(ss, noisy);
            auto back = read_circuit(ss);
            EXPECT_EQ(back, noisy);
            EXPECT_EQ(export_circuit(back), export_circuit(noisy));
        }
    }
}

TEST(circuit, parse_rejects_bad_text) {
    EXPECT_THROW(parse_circuit("FOO 1 2\n"), std::invalid_argument);
    EXPECT_THROW(parse_circuit("M 0\nDETECTOR rec[-2]\n"), std::invalid_argument);
}

TEST(circuit, format_double_is_shortest_round_trip) {
    EXPECT_EQ(format_double(0.001), "0.001");
    EXPECT_EQ(format_double(2), "2");
    EXPECT_EQ(std::stod(format_double(1.0 / 3)), 1.0 / 3);
}
