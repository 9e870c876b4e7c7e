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

#ifndef COLORHOOK_TABLEAU_H
#define COLORHOOK_TABLEAU_H

#include <cstdint>
#include <random>
#include <vector>

#include "colorhook/circuit.h"
#include "colorhook/frame_simulator.h"
#include "colorhook/noise.h"

namespace colorhook {

inline constexpr uint32_t MAX_TABLEAU_QUBITS = 40;

/// Stabilizer tableau state (destabilizers and stabilizers with signs) for up to 64 qubits.
class Tableau {
   public:
    explicit Tableau(uint32_t num_qubits);

    uint32_t num_qubits() const {
        return n_;
    }
    void h(uint32_t q);
    void s(uint32_t q);
    void cx(uint32_t control, uint32_t target);
    void cy(uint32_t control, uint32_t target);
    void pauli(uint32_t q, Pauli p);
    /// Random measurement outcomes come from `rng`, or are 0 when it is null.
    void set_random_source(std::mt19937_64 *rng) {
        rng_ = rng;
    }
    /// Z-basis measurement; `deterministic` reports whether the outcome was forced.
    bool measure_z(uint32_t q, bool *deterministic = nullptr);
    bool measure_x(uint32_t q, bool *deterministic = nullptr);
    void reset_z(uint32_t q);
    void reset_x(uint32_t q);

   private:
    void rowsum(size_t h, size_t i);
    void row_copy(size_t dst, size_t src);
    void row_clear(size_t r);

    uint32_t n_;
    // 2n rows plus one scratch row; bit q of x_[r]/z_[r] is the row's Pauli on qubit q.
    std::vector<uint64_t> x_;
    std::vector<uint64_t> z_;
    std::vector<uint8_t> r_;
    std::mt19937_64 *rng_ = nullptr;
};

struct TableauRun {
    std::vector<bool> measurements;
    std::vector<bool> deterministic;
};

/// Runs the circuit from |0...0> with faults applied before their instruction; noise channels
/// are skipped. Random outcomes are drawn from `rng`, or fixed to 0 without one. Throws
/// std::invalid_argument above MAX_TABLEAU_QUBITS qubits.
TableauRun tableau_run(const CircuitIR &circuit, const std::vector<Fault> &faults = {}, std::mt19937_64 *rng = nullptr);

/// Detector and observable values of the faulty run relative to the fault-free run.
ShotRecord tableau_reference(const CircuitIR &circuit, const std::vector<Fault> &faults);

}  // namespace colorhook

#endif
