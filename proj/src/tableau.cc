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

#include "colorhook/tableau.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace colorhook {

Tableau::Tableau(uint32_t num_qubits) : n_(num_qubits), x_(2 * num_qubits + 1), z_(2 * num_qubits + 1), r_(2 * num_qubits + 1) {
    if (num_qubits > 64) {
        throw std::invalid_argument("tableau supports at most 64 qubits");
    }
    for (uint32_t q = 0; q < n_; q++) {
        x_[q] = uint64_t{1} << q;
        z_[n_ + q] = uint64_t{1} << q;
    }
}

void Tableau::h(uint32_t q) {
    uint64_t bit = uint64_t{1} << q;
    for (size_t row = 0; row < 2 * n_; row++) {
        uint64_t xb = x_[row] & bit;
        uint64_t zb = z_[row] & bit;
        r_[row] ^= static_cast<uint8_t>((xb && zb) ? 1 : 0);
        x_[row] = (x_[row] & ~bit) | zb;
        z_[row] = (z_[row] & ~bit) | xb;
    }
}

void Tableau::s(uint32_t q) {
    uint64_t bit = uint64_t{1} << q;
    for (size_t row = 0; row < 2 * n_; row++) {
        bool xb = x_[row] & bit;
        bool zb = z_[row] & bit;
        r_[row] ^= static_cast<uint8_t>(xb && zb);
        if (xb) {
            z_[row] ^= bit;
        }
    }
}

void Tableau::cx(uint32_t control, uint32_t target) {
    for (size_t row = 0; row < 2 * n_; row++) {
        bool xa = (x_[row] >> control) & 1;
        bool za = (z_[row] >> control) & 1;
        bool xb = (x_[row] >> target) & 1;
        bool zb = (z_[row] >> target) & 1;
        r_[row] ^= static_cast<uint8_t>(xa && zb && (xb == za));
        if (xa) {
            x_[row] ^= uint64_t{1} << target;
        }
        if (zb) {
            z_[row] ^= uint64_t{1} << control;
        }
    }
}

void Tableau::cy(uint32_t control, uint32_t target) {
    s(target);
    s(target);
    s(target);
    cx(control, target);
    s(target);
}

void Tableau::pauli(uint32_t q, Pauli p) {
    for (size_t row = 0; row < 2 * n_; row++) {
        bool flip = false;
        if (static_cast<uint8_t>(p) & 1) {
            flip ^= static_cast<bool>((z_[row] >> q) & 1);
        }
        if (static_cast<uint8_t>(p) & 2) {
            flip ^= static_cast<bool>((x_[row] >> q) & 1);
        }
        r_[row] ^= static_cast<uint8_t>(flip);
    }
}

void Tableau::rowsum(size_t h, size_t i) {
    int total = 2 * r_[h] + 2 * r_[i];
    for (uint32_t q = 0; q < n_; q++) {
        int x1 = (x_[i] >> q) & 1;
        int z1 = (z_[i] >> q) & 1;
        int x2 = (x_[h] >> q) & 1;
        int z2 = (z_[h] >> q) & 1;
        if (x1 && z1) {
            total += z2 - x2;
        } else if (x1) {
            total += z2 * (2 * x2 - 1);
        } else if (z1) {
            total += x2 * (1 - 2 * z2);
        }
    }
    total = ((total % 4) + 4) % 4;
    r_[h] = static_cast<uint8_t>(total == 2);
    x_[h] ^= x_[i];
    z_[h] ^= z_[i];
}

void Tableau::row_copy(size_t dst, size_t src) {
    x_[dst] = x_[src];
    z_[dst] = z_[src];
    r_[dst] = r_[src];
}

void Tableau::row_clear(size_t r) {
    x_[r] = 0;
    z_[r] = 0;
    r_[r] = 0;
}

bool Tableau::measure_z(uint32_t q, bool *deterministic) {
    uint64_t bit = uint64_t{1} << q;
    size_t p = 2 * n_;
    for (size_t row = n_; row < 2 * n_; row++) {
        if (x_[row] & bit) {
            p = row;
            break;
        }
    }
    if (p < 2 * n_) {
        for (size_t row = 0; row < 2 * n_; row++) {
            if (row != p && (x_[row] & bit)) {
                rowsum(row, p);
            }
        }
        row_copy(p - n_, p);
        row_clear(p);
        bool outcome = rng_ != nullptr && ((*rng_)() & 1);
        z_[p] = bit;
        r_[p] = static_cast<uint8_t>(outcome);
        if (deterministic) {
            *deterministic = false;
        }
        return outcome;
    }
    size_t scratch = 2 * n_;
    row_clear(scratch);
    for (size_t row = 0; row < n_; row++) {
        if (x_[row] & bit) {
            rowsum(scratch, row + n_);
        }
    }
    if (deterministic) {
        *deterministic = true;
    }
    return r_[scratch] != 0;
}

bool Tableau::measure_x(uint32_t q, bool *deterministic) {
    h(q);
    bool out = measure_z(q, deterministic);
    h(q);
    return out;
}

void Tableau::reset_z(uint32_t q) {
    if (measure_z(q)) {
        pauli(q, Pauli::X);
    }
}

void Tableau::reset_x(uint32_t q) {
    h(q);
    reset_z(q);
    h(q);
}

TableauRun tableau_run(const CircuitIR &circuit, const std::vector<Fault> &faults, std::mt19937_64 *rng) {
    if (circuit.num_qubits > MAX_TABLEAU_QUBITS) {
        throw std::invalid_argument(
            "tableau reference is limited to " + std::to_string(MAX_TABLEAU_QUBITS) + " qubits, circuit has " +
            std::to_string(circuit.num_qubits));
    }
    std::vector<const Fault *> sorted;
    for (const auto &f : faults) {
        sorted.push_back(&f);
    }
    std::stable_sort(sorted.begin(), sorted.end(), [](const Fault *a, const Fault *b) {
        return a->position < b->position;
    });

    Tableau t(circuit.num_qubits);
    t.set_random_source(rng);
    TableauRun run;
    size_t next = 0;
    auto apply_faults_before = [&](size_t k) {
        for (; next < sorted.size() && sorted[next]->position <= k; next++) {
            for (const auto &term : sorted[next]->terms) {
                t.pauli(term.qubit, term.pauli);
            }
        }
    };
    for (size_t k = 0; k < circuit.instructions.size(); k++) {
        apply_faults_before(k);
        const auto &inst = circuit.instructions[k];
        const auto &targets = inst.targets;
        switch (inst.op) {
            case OpCode::R:
                for (auto q : targets) {
                    t.reset_z(q);
                }
                break;
            case OpCode::RX:
                for (auto q : targets) {
                    t.reset_x(q);
                }
                break;
            case OpCode::M:
            case OpCode::MX:
                for (auto q : targets) {
                    bool det = false;
                    bool v = inst.op == OpCode::M ? t.measure_z(q, &det) : t.measure_x(q, &det);
                    run.measurements.push_back(v);
                    run.deterministic.push_back(det);
                }
                break;
            case OpCode::CX:
                for (size_t i = 0; i + 1 < targets.size(); i += 2) {
                    t.cx(targets[i], targets[i + 1]);
                }
                break;
            case OpCode::CY:
                for (size_t i = 0; i + 1 < targets.size(); i += 2) {
                    t.cy(targets[i], targets[i + 1]);
                }
                break;
            default:
                break;
        }
    }
    return run;
}

ShotRecord tableau_reference(const CircuitIR &circuit, const std::vector<Fault> &faults) {
    auto reference = tableau_run(circuit);
    auto faulty = tableau_run(circuit, faults);
    auto flipped = [&](uint32_t m) {
        return reference.measurements[m] != faulty.measurements[m];
    };
    ShotRecord out{BitVector(circuit.detectors.size()), false};
    for (size_t d = 0; d < circuit.detectors.size(); d++) {
        bool v = false;
        for (auto m : circuit.detectors[d].measurements) {
            v ^= flipped(m);
        }
        out.detectors.set(d, v);
    }
    for (auto m : circuit.observable) {
        out.observable ^= flipped(m);
    }
    return out;
}

}  // namespace colorhook
