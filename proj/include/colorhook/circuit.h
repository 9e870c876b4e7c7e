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

#ifndef COLORHOOK_CIRCUIT_H
#define COLORHOOK_CIRCUIT_H

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "colorhook/lattice.h"
#include "colorhook/schedule.h"

namespace colorhook {

enum class OpCode : uint8_t {
    R,
    RX,
    M,
    MX,
    CX,
    CY,
    TICK,
    DEPOLARIZE1,
    DEPOLARIZE2,
    X_ERROR,
    Z_ERROR,
};

std::string_view op_name(OpCode op);
bool is_noise(OpCode op);
bool is_two_qubit(OpCode op);
bool is_measurement(OpCode op);
bool is_reset(OpCode op);

/// One instruction over a list of targets. Two-qubit operations take (control, target) pairs.
struct Instruction {
    OpCode op;
    double arg = 0;
    std::vector<uint32_t> targets;
    bool operator==(const Instruction &other) const = default;
};

/// Parity of absolute measurement-record indices.
struct Detector {
    std::vector<uint32_t> measurements;
    std::vector<double> coords;
    bool operator==(const Detector &other) const = default;
};

enum class Variant : uint8_t { XZ, XYZ };

std::string_view variant_name(Variant v);
Variant parse_variant(std::string_view text);

struct CircuitIR {
    uint32_t num_qubits = 0;
    std::vector<std::array<double, 2>> qubit_coords;
    std::vector<Instruction> instructions;
    std::vector<Detector> detectors;
    std::vector<uint32_t> observable;

    size_t num_measurements() const;
    size_t num_ticks() const;
    bool has_noise() const;
    bool operator==(const CircuitIR &other) const = default;
};

/// Z-basis memory experiment.
///
/// XZ: every round runs an X-type extraction then a Z-type extraction. The first round's Z
/// checks are compared against the |0> preparation, later checks against the previous round,
/// and the final data measurement closes every Z check against the last Z round.
///
/// XYZ: round t (from 1) extracts X, Y, Z for t = 1, 2, 0 mod 3. Checks of round t >= 3 compare
/// the three latest rounds of the face (their product is the fixed -1). The round-2 Y check is
/// closed against the preparation, and the final data measurement is compared against the
/// latest Z round, or the preparation when there is none.
///
/// Every extraction is an auxiliary reset layer, six gate layers and a measurement layer. The
/// data reset shares the first layer and the data measurement shares the last.
CircuitIR build_memory_circuit(const Patch &patch, const Schedule &schedule, uint32_t rounds, Variant variant);

/// Checks record references and per-tick qubit exclusivity; throws std::logic_error.
void validate_circuit(const CircuitIR &circuit);

/// Stim-compatible text. Throws std::invalid_argument on instructions it cannot express.
std::string export_circuit(const CircuitIR &circuit);
void write_circuit(std::ostream &out, const CircuitIR &circuit);
CircuitIR parse_circuit(std::string_view text);
CircuitIR read_circuit(std::istream &in);

std::string format_double(double value);

}  // namespace colorhook

#endif
