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

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "colorhook/bit_vector.h"

namespace colorhook {

NoiseModelSpec parse_noise_spec(std::string_view text) {
    size_t colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("noise model must look like <model>:<p>, got '" + std::string(text) + "'");
    }
    auto name = text.substr(0, colon);
    auto number = text.substr(colon + 1);
    NoiseModelSpec spec;
    if (name == "si1000") {
        spec.kind = NoiseModel::SI1000;
    } else if (name == "uniform") {
        spec.kind = NoiseModel::UniformDepolarizing;
    } else if (name == "cnot") {
        spec.kind = NoiseModel::NoisyCnot;
    } else {
        throw std::invalid_argument("unknown noise model '" + std::string(name) + "'");
    }
    auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), spec.p);
    if (ec != std::errc{} || end != number.data() + number.size()) {
        throw std::invalid_argument("bad noise strength '" + std::string(number) + "'");
    }
    return spec;
}

std::string format_noise_spec(const NoiseModelSpec &spec) {
    std::string name;
    switch (spec.kind) {
        case NoiseModel::SI1000:
            name = "si1000";
            break;
        case NoiseModel::UniformDepolarizing:
            name = "uniform";
            break;
        case NoiseModel::NoisyCnot:
            name = "cnot";
            break;
    }
    return name + ":" + format_double(spec.p);
}

namespace {

struct Strengths {
    double gate2 = 0;
    double idle = 0;
    double idle_measure_layer = 0;
    double measure = 0;
    double reset = 0;
};

Strengths strengths(const NoiseModelSpec &spec) {
    double p = spec.p;
    switch (spec.kind) {
        case NoiseModel::SI1000:
            return {p, p / 10, 2 * p, 5 * p, 2 * p};
        case NoiseModel::UniformDepolarizing:
            return {p, p, 0, p, p};
        case NoiseModel::NoisyCnot:
            break;
    }
    return {p, 0, 0, 0, 0};
}

void annotate_layer(
    const std::vector<Instruction> &layer, uint32_t num_qubits, const NoiseModelSpec &spec, std::vector<Instruction> &out) {
    Strengths s = strengths(spec);
    bool cnot_only = spec.kind == NoiseModel::NoisyCnot;
    std::vector<bool> busy(num_qubits, false);
    bool measure_or_reset = false;
    for (const auto &inst : layer) {
        for (auto q : inst.targets) {
            busy[q] = true;
        }
        if (is_measurement(inst.op)) {
            measure_or_reset = true;
            if (!cnot_only) {
                out.push_back({inst.op == OpCode::M ? OpCode::X_ERROR : OpCode::Z_ERROR, s.measure, inst.targets});
            }
        }
        out.push_back(inst);
        if (is_reset(inst.op)) {
            measure_or_reset = true;
            if (!cnot_only) {
                out.push_back({inst.op == OpCode::R ? OpCode::X_ERROR : OpCode::Z_ERROR, s.reset, inst.targets});
            }
        }
        if (is_two_qubit(inst.op)) {
            out.push_back({OpCode::DEPOLARIZE2, s.gate2, inst.targets});
        }
    }
    if (cnot_only) {
        return;
    }
    std::vector<uint32_t> idle;
    for (uint32_t q = 0; q < num_qubits; q++) {
        if (!busy[q]) {
            idle.push_back(q);
        }
    }
    if (idle.empty()) {
        return;
    }
    out.push_back({OpCode::DEPOLARIZE1, s.idle, idle});
    if (measure_or_reset && spec.kind == NoiseModel::SI1000) {
        out.push_back({OpCode::DEPOLARIZE1, s.idle_measure_layer, idle});
    }
}

}  // namespace

CircuitIR annotate(const CircuitIR &circuit, const NoiseModelSpec &spec) {
    if (circuit.has_noise()) {
        throw std::invalid_argument("circuit already carries noise");
    }
    if (!(spec.p >= 0 && spec.p <= 0.1)) {
        throw std::invalid_argument("noise strength must lie in [0, 0.1]");
    }
    CircuitIR out = circuit;
    out.instructions.clear();
    std::vector<Instruction> layer;
    for (const auto &inst : circuit.instructions) {
        if (inst.op == OpCode::TICK) {
            annotate_layer(layer, circuit.num_qubits, spec, out.instructions);
            layer.clear();
            out.instructions.push_back(inst);
        } else {
            layer.push_back(inst);
        }
    }
    annotate_layer(layer, circuit.num_qubits, spec, out.instructions);
    return out;
}

Signature xor_signatures(const Signature &a, const Signature &b) {
    Signature out;
    std::set_symmetric_difference(
        a.detectors.begin(), a.detectors.end(), b.detectors.begin(), b.detectors.end(), std::back_inserter(out.detectors));
    out.observable = a.observable != b.observable;
    return out;
}

namespace {

/// Walks the circuit backwards keeping, for each qubit, the detectors (and the observable, as
/// the last bit) an X or a Z on that qubit would flip from the current point on.
class SensitivityTracker {
   public:
    explicit SensitivityTracker(const CircuitIR &circuit)
        : circuit_(circuit),
          width_(circuit.detectors.size() + 1),
          xs_(circuit.num_qubits, BitVector(width_)),
          zs_(circuit.num_qubits, BitVector(width_)),
          measurement_effect_(circuit.num_measurements(), BitVector(width_)) {
        for (size_t d = 0; d < circuit.detectors.size(); d++) {
            for (auto m : circuit.detectors[d].measurements) {
                measurement_effect_[m].flip(d);
            }
        }
        for (auto m : circuit.observable) {
            measurement_effect_[m].flip(width_ - 1);
        }
        next_measurement_ = circuit.num_measurements();
    }

    /// Undoes instructions[k].
    void step_back(size_t k) {
        const auto &inst = circuit_.instructions[k];
        const auto &t = inst.targets;
        switch (inst.op) {
            case OpCode::M:
            case OpCode::MX: {
                next_measurement_ -= t.size();
                for (size_t i = 0; i < t.size(); i++) {
                    auto &target = inst.op == OpCode::M ? xs_[t[i]] : zs_[t[i]];
                    target ^= measurement_effect_[next_measurement_ + i];
                }
                break;
            }
            case OpCode::R:
            case OpCode::RX:
                for (auto q : t) {
                    xs_[q] = BitVector(width_);
                    zs_[q] = BitVector(width_);
                }
                break;
            case OpCode::CX:
                for (size_t i = 0; i + 1 < t.size(); i += 2) {
                    uint32_t c = t[i];
                    uint32_t g = t[i + 1];
                    xs_[c] ^= xs_[g];
                    zs_[g] ^= zs_[c];
                }
                break;
            case OpCode::CY:
                for (size_t i = 0; i + 1 < t.size(); i += 2) {
                    uint32_t c = t[i];
                    uint32_t g = t[i + 1];
                    xs_[c] ^= xs_[g];
                    xs_[c] ^= zs_[g];
                    xs_[g] ^= zs_[c];
                    zs_[g] ^= zs_[c];
                }
                break;
            default:
                break;
        }
    }

    BitVector effect(const std::vector<PauliTerm> &terms) const {
        BitVector out(width_);
        for (const auto &term : terms) {
            if (static_cast<uint8_t>(term.pauli) & 1) {
                out ^= xs_[term.qubit];
            }
            if (static_cast<uint8_t>(term.pauli) & 2) {
                out ^= zs_[term.qubit];
            }
        }
        return out;
    }

    Signature to_signature(const BitVector &bits) const {
        Signature s;
        s.observable = bits.get(width_ - 1);
        for (auto d : bits.ones()) {
            if (d + 1 < width_) {
                s.detectors.push_back(d);
            }
        }
        return s;
    }

   private:
    const CircuitIR &circuit_;
    size_t width_;
    std::vector<BitVector> xs_;
    std::vector<BitVector> zs_;
    std::vector<BitVector> measurement_effect_;
    size_t next_measurement_;
};

template <typename Visit>
void for_each_fault_effect(const CircuitIR &circuit, const std::vector<const Fault *> &faults, Visit visit) {
    std::vector<size_t> order(faults.size());
    for (size_t i = 0; i < order.size(); i++) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return faults[a]->position > faults[b]->position;
    });
    SensitivityTracker tracker(circuit);
    size_t k = circuit.instructions.size();
    for (auto i : order) {
        size_t pos = faults[i]->position;
        if (pos > circuit.instructions.size()) {
            throw std::out_of_range("fault position past the end of the circuit");
        }
        while (k > pos) {
            tracker.step_back(--k);
        }
        visit(i, tracker, tracker.effect(faults[i]->terms));
    }
}

}  // namespace

std::vector<Signature> fault_signatures(const CircuitIR &circuit, const std::vector<Fault> &faults) {
    std::vector<const Fault *> ptrs;
    for (const auto &f : faults) {
        ptrs.push_back(&f);
    }
    std::vector<Signature> out(faults.size());
    for_each_fault_effect(circuit, ptrs, [&](size_t i, const SensitivityTracker &tracker, const BitVector &bits) {
        out[i] = tracker.to_signature(bits);
    });
    return out;
}

std::vector<ChannelFault> channel_faults(const CircuitIR &circuit) {
    std::vector<ChannelFault> out;
    constexpr std::array<Pauli, 3> single{Pauli::X, Pauli::Y, Pauli::Z};
    constexpr std::array<Pauli, 4> all{Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
    for (size_t k = 0; k < circuit.instructions.size(); k++) {
        const auto &inst = circuit.instructions[k];
        auto index = static_cast<uint32_t>(k);
        switch (inst.op) {
            case OpCode::DEPOLARIZE1:
                for (auto q : inst.targets) {
                    for (auto p : single) {
                        out.push_back({Fault{k, {{q, p}}}, inst.arg / 3, index});
                    }
                }
                break;
            case OpCode::DEPOLARIZE2:
                for (size_t i = 0; i + 1 < inst.targets.size(); i += 2) {
                    uint32_t a = inst.targets[i];
                    uint32_t b = inst.targets[i + 1];
                    for (auto pa : all) {
                        for (auto pb : all) {
                            if (pa == Pauli::I && pb == Pauli::I) {
                                continue;
                            }
                            Fault f{k, {}};
                            if (pa != Pauli::I) {
                                f.terms.push_back({a, pa});
                            }
                            if (pb != Pauli::I) {
                                f.terms.push_back({b, pb});
                            }
                            out.push_back({std::move(f), inst.arg / 15, index});
                        }
                    }
                }
                break;
            case OpCode::X_ERROR:
            case OpCode::Z_ERROR:
                for (auto q : inst.targets) {
                    out.push_back({Fault{k, {{q, inst.op == OpCode::X_ERROR ? Pauli::X : Pauli::Z}}}, inst.arg, index});
                }
                break;
            default:
                break;
        }
    }
    return out;
}

DetectorErrorModel compile_dem(const CircuitIR &circuit) {
    auto faults = channel_faults(circuit);
    std::vector<const Fault *> ptrs;
    std::vector<size_t> source;
    for (size_t i = 0; i < faults.size(); i++) {
        if (faults[i].probability > 0) {
            ptrs.push_back(&faults[i].fault);
            source.push_back(i);
        }
    }
    std::map<Signature, FaultClass> grouped;
    for_each_fault_effect(circuit, ptrs, [&](size_t i, const SensitivityTracker &tracker, const BitVector &bits) {
        if (bits.none()) {
            return;
        }
        const auto &cf = faults[source[i]];
        auto sig = tracker.to_signature(bits);
        auto &cls = grouped[sig];
        cls.probability = cls.probability * (1 - cf.probability) + cf.probability * (1 - cls.probability);
        cls.source_instructions.push_back(cf.instruction);
        for (const auto &term : cf.fault.terms) {
            cls.source_qubits.push_back(term.qubit);
        }
    });
    DetectorErrorModel dem;
    dem.num_detectors = static_cast<uint32_t>(circuit.detectors.size());
    for (auto &[sig, cls] : grouped) {
        cls.signature = sig;
        for (auto *v : {&cls.source_instructions, &cls.source_qubits}) {
            std::sort(v->begin(), v->end());
            v->erase(std::unique(v->begin(), v->end()), v->end());
        }
        dem.classes.push_back(std::move(cls));
    }
    return dem;
}

void write_dem(std::ostream &out, const DetectorErrorModel &dem) {
    out << "N " << dem.num_detectors << "\n";
    for (const auto &cls : dem.classes) {
        out << "E(" << format_double(cls.probability) << ")";
        for (auto d : cls.signature.detectors) {
            out << " D" << d;
        }
        if (cls.signature.observable) {
            out << " L0";
        }
        out << "\n";
    }
}

DetectorErrorModel read_dem(std::istream &in) {
    DetectorErrorModel dem;
    bool have_header = false;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream words(line);
        std::string head;
        if (!(words >> head) || head[0] == '#') {
            continue;
        }
        if (head == "N") {
            if (!(words >> dem.num_detectors)) {
                throw std::invalid_argument("bad detector count line: " + line);
            }
            have_header = true;
            continue;
        }
        if (head.size() < 4 || head.substr(0, 2) != "E(" || head.back() != ')') {
            throw std::invalid_argument("bad error line: " + line);
        }
        FaultClass cls;
        auto number = std::string_view(head).substr(2, head.size() - 3);
        auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), cls.probability);
        if (ec != std::errc{} || end != number.data() + number.size()) {
            throw std::invalid_argument("bad probability in line: " + line);
        }
        std::string tok;
        while (words >> tok) {
            if (tok == "L0") {
                cls.signature.observable = !cls.signature.observable;
                continue;
            }
            uint32_t d = 0;
            auto [e2, ec2] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), d);
            if (tok[0] != 'D' || ec2 != std::errc{} || e2 != tok.data() + tok.size()) {
                throw std::invalid_argument("bad target '" + tok + "'");
            }
            if (have_header && d >= dem.num_detectors) {
                throw std::invalid_argument("detector D" + std::to_string(d) + " out of range");
            }
            cls.signature.detectors.push_back(d);
        }
        std::sort(cls.signature.detectors.begin(), cls.signature.detectors.end());
        dem.classes.push_back(std::move(cls));
    }
    if (!have_header) {
        throw std::invalid_argument("detector error model lacks its `N` line");
    }
    return dem;
}

}  // namespace colorhook
