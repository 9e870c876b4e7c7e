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

#ifndef COLORHOOK_FRAME_SIMULATOR_H
#define COLORHOOK_FRAME_SIMULATOR_H

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <vector>

#include "colorhook/bit_vector.h"
#include "colorhook/circuit.h"
#include "colorhook/noise.h"

namespace colorhook {

struct ShotRecord {
    BitVector detectors;
    bool observable = false;
    bool operator==(const ShotRecord &other) const = default;
};

/// Pauli-frame simulator running 64 shots at once, one bit lane per shot.
///
/// Frames start at zero and are never randomized, so a frame only holds the injected noise.
/// Measurements record the frame's X (Z basis) or Z (X basis) bit; resets clear the frame.
class FrameSimulator {
   public:
    explicit FrameSimulator(const CircuitIR &circuit);

    /// Simulates 64 shots. detector_words[d] and observable_word carry one bit per lane.
    void run_batch(std::mt19937_64 &rng, std::vector<uint64_t> &detector_words, uint64_t &observable_word);

    /// Frame propagation of the given faults in lane 0, with every noise channel skipped.
    ShotRecord run_faults(const std::vector<Fault> &faults);

   private:
    void apply_gate(const Instruction &inst);
    void apply_noise(const Instruction &inst, std::mt19937_64 &rng);
    void apply_pauli(uint32_t qubit, Pauli pauli, uint64_t lanes);
    void reset_frame();
    void finish(std::vector<uint64_t> &detector_words, uint64_t &observable_word) const;

    const CircuitIR &circuit_;
    std::vector<uint64_t> x_;
    std::vector<uint64_t> z_;
    std::vector<uint64_t> record_;
    size_t num_recorded_ = 0;
};

/// Seed of the generator used for batch `batch` (64 shots) of a run seeded with `seed`.
uint64_t batch_seed(uint64_t seed, uint64_t batch);

/// Samples `shots` shots in batches of 64, calling `visit(shot_index, record)` in shot order.
/// Batch k always draws from a generator seeded with batch_seed(seed, k), so the records depend
/// only on (seed, shot index) and not on how the batches are split across threads.
void stream_shots(
    const CircuitIR &circuit,
    uint64_t shots,
    uint64_t seed,
    const std::function<void(uint64_t, const ShotRecord &)> &visit,
    uint64_t first_batch = 0);

std::vector<ShotRecord> sample_shots(const CircuitIR &circuit, uint64_t shots, uint64_t seed);

ShotRecord simulate_faults(const CircuitIR &circuit, const std::vector<Fault> &faults);

/// Binary dump: per shot, the detector bits followed by the observable bit, packed little-endian
/// into ceil((num_detectors + 1) / 8) bytes.
void write_shots_b8(std::ostream &out, const std::vector<ShotRecord> &shots);
std::vector<ShotRecord> read_shots_b8(std::istream &in, size_t num_detectors);

}  // namespace colorhook

#endif
