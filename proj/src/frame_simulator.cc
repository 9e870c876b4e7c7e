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

#include "colorhook/frame_simulator.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace colorhook {

FrameSimulator::FrameSimulator(const CircuitIR &circuit)
    : circuit_(circuit), x_(circuit.num_qubits), z_(circuit.num_qubits), record_(circuit.num_measurements()) {
}

void FrameSimulator::reset_frame() {
    std::fill(x_.begin(), x_.end(), 0);
    std::fill(z_.begin(), z_.end(), 0);
    num_recorded_ = 0;
}

void FrameSimulator::apply_pauli(uint32_t qubit, Pauli pauli, uint64_t lanes) {
    if (static_cast<uint8_t>(pauli) & 1) {
        x_[qubit] ^= lanes;
    }
    if (static_cast<uint8_t>(pauli) & 2) {
        z_[qubit] ^= lanes;
    }
}

void FrameSimulator::apply_gate(const Instruction &inst) {
    const auto &t = inst.targets;
    switch (inst.op) {
        case OpCode::R:
        case OpCode::RX:
            for (auto q : t) {
                x_[q] = 0;
                z_[q] = 0;
            }
            break;
        case OpCode::M:
            for (auto q : t) {
                record_[num_recorded_++] = x_[q];
            }
            break;
        case OpCode::MX:
            for (auto q : t) {
                record_[num_recorded_++] = z_[q];
            }
            break;
        case OpCode::CX:
            for (size_t i = 0; i + 1 < t.size(); i += 2) {
                uint32_t c = t[i];
                uint32_t g = t[i + 1];
                x_[g] ^= x_[c];
                z_[c] ^= z_[g];
            }
            break;
        case OpCode::CY:
            for (size_t i = 0; i + 1 < t.size(); i += 2) {
                uint32_t c = t[i];
                uint32_t g = t[i + 1];
                z_[c] ^= x_[g] ^ z_[g];
                x_[g] ^= x_[c];
                z_[g] ^= x_[c];
            }
            break;
        default:
            break;
    }
}

void FrameSimulator::apply_noise(const Instruction &inst, std::mt19937_64 &rng) {
    double p = inst.arg;
    if (p <= 0) {
        return;
    }
    bool pairs = inst.op == OpCode::DEPOLARIZE2;
    uint64_t units = pairs ? inst.targets.size() / 2 : inst.targets.size();
    uint64_t trials = units * 64;
    std::geometric_distribution<uint64_t> gap(std::min(p, 1.0));
    for (uint64_t k = gap(rng); k < trials; k += 1 + gap(rng)) {
        uint64_t unit = k >> 6;
        uint64_t lane = uint64_t{1} << (k & 63);
        switch (inst.op) {
            case OpCode::DEPOLARIZE1: {
                auto pauli = static_cast<Pauli>(std::uniform_int_distribution<int>(1, 3)(rng));
                apply_pauli(inst.targets[unit], pauli, lane);
                break;
            }
            case OpCode::DEPOLARIZE2: {
                int v = std::uniform_int_distribution<int>(1, 15)(rng);
                apply_pauli(inst.targets[2 * unit], static_cast<Pauli>(v & 3), lane);
                apply_pauli(inst.targets[2 * unit + 1], static_cast<Pauli>(v >> 2), lane);
                break;
            }
            case OpCode::X_ERROR:
                apply_pauli(inst.targets[unit], Pauli::X, lane);
                break;
            case OpCode::Z_ERROR:
                apply_pauli(inst.targets[unit], Pauli::Z, lane);
                break;
            default:
                break;
        }
    }
}

void FrameSimulator::finish(std::vector<uint64_t> &detector_words, uint64_t &observable_word) const {
    detector_words.assign(circuit_.detectors.size(), 0);
    for (size_t d = 0; d < circuit_.detectors.size(); d++) {
        uint64_t w = 0;
        for (auto m : circuit_.detectors[d].measurements) {
            w ^= record_[m];
        }
        detector_words[d] = w;
    }
    observable_word = 0;
    for (auto m : circuit_.observable) {
        observable_word ^= record_[m];
    }
}

void FrameSimulator::run_batch(std::mt19937_64 &rng, std::vector<uint64_t> &detector_words, uint64_t &observable_word) {
    reset_frame();
    for (const auto &inst : circuit_.instructions) {
        if (is_noise(inst.op)) {
            apply_noise(inst, rng);
        } else {
            apply_gate(inst);
        }
    }
    finish(detector_words, observable_word);
}

ShotRecord FrameSimulator::run_faults(const std::vector<Fault> &faults) {
    std::vector<const Fault *> sorted;
    for (const auto &f : faults) {
        if (f.position > circuit_.instructions.size()) {
            throw std::out_of_range("fault position past the end of the circuit");
        }
        sorted.push_back(&f);
    }
    std::stable_sort(sorted.begin(), sorted.end(), [](const Fault *a, const Fault *b) {
        return a->position < b->position;
    });
    reset_frame();
    size_t next = 0;
    for (size_t k = 0; k < circuit_.instructions.size(); k++) {
        for (; next < sorted.size() && sorted[next]->position == k; next++) {
            for (const auto &term : sorted[next]->terms) {
                apply_pauli(term.qubit, term.pauli, 1);
            }
        }
        const auto &inst = circuit_.instructions[k];
        if (!is_noise(inst.op)) {
            apply_gate(inst);
        }
    }
    std::vector<uint64_t> words;
    uint64_t obs = 0;
    finish(words, obs);
    ShotRecord out{BitVector(words.size()), (obs & 1) != 0};
    for (size_t d = 0; d < words.size(); d++) {
        out.detectors.set(d, words[d] & 1);
    }
    return out;
}

uint64_t batch_seed(uint64_t seed, uint64_t batch) {
    auto mix = [](uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(seed) ^ batch);
}

void stream_shots(
    const CircuitIR &circuit,
    uint64_t shots,
    uint64_t seed,
    const std::function<void(uint64_t, const ShotRecord &)> &visit,
    uint64_t first_batch) {
    FrameSimulator sim(circuit);
    std::vector<uint64_t> words;
    uint64_t obs = 0;
    ShotRecord record{BitVector(circuit.detectors.size()), false};
    for (uint64_t done = 0, batch = first_batch; done < shots; batch++) {
        std::mt19937_64 rng(batch_seed(seed, batch));
        sim.run_batch(rng, words, obs);
        uint64_t lanes = std::min<uint64_t>(64, shots - done);
        for (uint64_t lane = 0; lane < lanes; lane++) {
            for (size_t d = 0; d < words.size(); d++) {
                record.detectors.set(d, (words[d] >> lane) & 1);
            }
            record.observable = (obs >> lane) & 1;
            visit(batch * 64 + lane, record);
        }
        done += lanes;
    }
}

std::vector<ShotRecord> sample_shots(const CircuitIR &circuit, uint64_t shots, uint64_t seed) {
    std::vector<ShotRecord> out;
    out.reserve(shots);
    stream_shots(circuit, shots, seed, [&](uint64_t, const ShotRecord &r) {
        out.push_back(r);
    });
    return out;
}

ShotRecord simulate_faults(const CircuitIR &circuit, const std::vector<Fault> &faults) {
    FrameSimulator sim(circuit);
    return sim.run_faults(faults);
}

void write_shots_b8(std::ostream &out, const std::vector<ShotRecord> &shots) {
    for (const auto &shot : shots) {
        size_t n = shot.detectors.size();
        std::vector<char> bytes((n + 1 + 7) / 8, 0);
        for (size_t d = 0; d <= n; d++) {
            bool bit = d < n ? shot.detectors.get(d) : shot.observable;
            if (bit) {
                bytes[d / 8] = static_cast<char>(bytes[d / 8] | (1 << (d % 8)));
            }
        }
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    }
}

std::vector<ShotRecord> read_shots_b8(std::istream &in, size_t num_detectors) {
    std::vector<ShotRecord> out;
    std::vector<char> bytes((num_detectors + 1 + 7) / 8);
    while (in.read(bytes.data(), static_cast<std::streamsize>(bytes.size()))) {
        ShotRecord shot{BitVector(num_detectors), false};
        for (size_t d = 0; d <= num_detectors; d++) {
            bool bit = (static_cast<unsigned char>(bytes[d / 8]) >> (d % 8)) & 1;
            if (d < num_detectors) {
                shot.detectors.set(d, bit);
            } else {
                shot.observable = bit;
            }
        }
        out.push_back(std::move(shot));
    }
    if (in.gcount() != 0) {
        throw std::invalid_argument("shot file ends in a partial record");
    }
    return out;
}

}  // namespace colorhook
