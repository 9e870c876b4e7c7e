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

#ifndef COLORHOOK_NOISE_H
#define COLORHOOK_NOISE_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "colorhook/circuit.h"

namespace colorhook {

enum class NoiseModel : uint8_t { SI1000, UniformDepolarizing, NoisyCnot };

struct NoiseModelSpec {
    NoiseModel kind = NoiseModel::NoisyCnot;
    double p = 0;
};

/// Parses `<model>:<p>` with model one of si1000, uniform, cnot.
NoiseModelSpec parse_noise_spec(std::string_view text);
std::string format_noise_spec(const NoiseModelSpec &spec);

/// Inserts the model's channels into a noiseless circuit.
///
/// SI1000: DEPOLARIZE2(p) after two-qubit gates, DEPOLARIZE1(p/10) on qubits idle in a layer,
/// a further DEPOLARIZE1(2p) on qubits idle in a layer holding a measurement or reset, 5p
/// measurement flips and 2p reset flips.
/// Uniform: probability p on each of those locations.
/// Noisy CNOT: DEPOLARIZE2(p) after two-qubit gates only.
///
/// Throws std::invalid_argument if the circuit already carries noise or p is outside [0, 0.1].
CircuitIR annotate(const CircuitIR &circuit, const NoiseModelSpec &spec);

enum class Pauli : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

struct PauliTerm {
    uint32_t qubit;
    Pauli pauli;
    bool operator==(const PauliTerm &other) const = default;
};

/// Pauli product applied just before instructions[position] (position == size means at the end).
struct Fault {
    size_t position;
    std::vector<PauliTerm> terms;
};

/// Detectors flipped by a fault, and whether it flips the observable.
struct Signature {
    std::vector<uint32_t> detectors;
    bool observable = false;
    bool empty() const {
        return detectors.empty() && !observable;
    }
    auto operator<=>(const Signature &other) const = default;
};

Signature xor_signatures(const Signature &a, const Signature &b);

/// Signatures by backward Pauli propagation through the Clifford gates. Noise instructions are
/// ignored.
std::vector<Signature> fault_signatures(const CircuitIR &circuit, const std::vector<Fault> &faults);

/// A fault drawn from one of the circuit's noise channels.
struct ChannelFault {
    Fault fault;
    double probability;
    uint32_t instruction;
};

/// First-order decomposition of every channel: DEPOLARIZE1 yields 3 faults of p/3 per target,
/// DEPOLARIZE2 yields 15 faults of p/15 per pair, X_ERROR and Z_ERROR one fault of p.
std::vector<ChannelFault> channel_faults(const CircuitIR &circuit);

struct FaultClass {
    double probability = 0;
    Signature signature;
    /// Noise-instruction index of every channel fault merged into this class.
    std::vector<uint32_t> source_instructions;
    /// Qubits touched by those faults, sorted and unique.
    std::vector<uint32_t> source_qubits;
};

struct DetectorErrorModel {
    uint32_t num_detectors = 0;
    std::vector<FaultClass> classes;
};

/// Channel faults grouped by signature with XOR-combined probabilities. Faults that flip nothing
/// and zero-probability faults are dropped; classes are sorted by signature.
DetectorErrorModel compile_dem(const CircuitIR &circuit);

/// Text form: `N <num_detectors>` then one `E(<prob>) D<i> ... [L0]` line per class.
void write_dem(std::ostream &out, const DetectorErrorModel &dem);
DetectorErrorModel read_dem(std::istream &in);

}  // namespace colorhook

#endif
