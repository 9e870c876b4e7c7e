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

#ifndef COLORHOOK_ANALYSIS_H
#define COLORHOOK_ANALYSIS_H

#include <array>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "colorhook/circuit.h"
#include "colorhook/lattice.h"
#include "colorhook/noise.h"
#include "colorhook/schedule.h"

namespace colorhook {

enum class HookBasis : uint8_t { X, Z };

/// Data error left by a Pauli fault on a face's auxiliary after `offset` of its gates.
struct HookError {
    uint32_t face;
    HookBasis basis;
    uint8_t offset;
    /// The lighter of the already-coupled and the still-to-couple data qubits (the two differ by
    /// the face stabilizer). Ties keep the still-to-couple side.
    std::vector<uint32_t> induced_error;
};

/// Every hook of weight at least two, for both extraction bases.
std::vector<HookError> propagate_hooks(const Patch &patch, const Schedule &schedule);

std::vector<HookError> hooks_on(const Patch &patch, const std::vector<HookError> &hooks, FaceKind kind);

/// Hooks of the faces for which is_interior holds.
std::vector<HookError> interior_hooks(const Patch &patch, const Schedule &schedule);

/// Slot masks of the hooks of a full six-gate order: the first two, the last three and the last
/// two slots.
std::array<uint8_t, 3> hook_slot_masks(const SlotOrder &order);

/// Sorted slot masks (weights two and three) whose hook, alone on an interior face of this color,
/// lowers the distance. Measured once on the distance-7 patch; faces further from the boundary
/// show the same pattern.
const std::vector<uint8_t> &malign_slot_masks(Color color);

struct DistanceResult {
    /// Minimum weight, or nullopt when none exists within the search bound.
    std::optional<uint32_t> value;
    /// Indices of the generators or fault classes achieving it.
    std::vector<size_t> witness;
};

/// Minimum number of single data-qubit errors and hook errors (each counting one) forming an X
/// logical. Witness indices below num_data are data qubits; index num_data + k is hooks[k].
/// Throws std::invalid_argument for patches above distance 7.
DistanceResult hook_augmented_distance(
    const Patch &patch,
    const std::vector<HookError> &hooks,
    size_t max_weight = std::numeric_limits<size_t>::max());

/// Exhaustive search for the fewest fault classes whose detectors cancel and whose observable
/// flips, by iterative deepening. Branches on the active detector with the fewest incident
/// classes and resolves the final one or two choices with hash lookups. Only classes with
/// allowed[k] set are used (empty means all).
class LogicalFaultSearcher {
   public:
    explicit LogicalFaultSearcher(const DetectorErrorModel &dem, std::vector<bool> allowed = {});

    /// value is nullopt when nothing of weight <= max_weight exists. When `required` is given the
    /// witness must contain that class, which need not be allowed.
    DistanceResult search(uint32_t max_weight, std::optional<size_t> required = std::nullopt);

   private:
    struct State;
    bool dfs(State &state, uint32_t budget);
    bool finish_single(State &state);
    bool finish_pair(State &state);

    const DetectorErrorModel &dem_;
    std::vector<bool> allowed_;
    std::vector<uint64_t> detector_keys_;
    uint64_t observable_key_ = 0;
    std::vector<uint64_t> class_keys_;
    std::vector<std::vector<uint32_t>> incident_;
    size_t max_class_size_ = 1;
    std::unordered_multimap<uint64_t, uint32_t> singles_;
    std::unordered_multimap<uint64_t, std::pair<uint32_t, uint32_t>> pairs_;
    bool have_pairs_ = false;
};

DistanceResult logical_fault_search(
    const DetectorErrorModel &dem,
    uint32_t max_weight,
    const std::vector<bool> &allowed = {},
    std::optional<size_t> required = std::nullopt);

/// logical_fault_search over the whole model; max_weight must be at most 6.
DistanceResult circuit_distance(const DetectorErrorModel &dem, uint32_t max_weight);

enum class FaultCategory : uint8_t { Data, Measurement, Hook, Other };

const char *fault_category_name(FaultCategory category);

struct FaultClassInfo {
    FaultCategory category;
    /// Faces whose auxiliary is touched by some fault of the class.
    std::vector<uint32_t> faces;
    /// Every such face is a corner face (false when there are none).
    bool corner_only = false;
};

/// Data: same signature as a single-qubit Pauli on a data qubit at some point of the circuit.
/// Measurement: same signature as one flipped measurement.
/// Hook: same signature as an auxiliary Pauli after 2..w-2 of the face's w gates.
/// Other: everything else (mostly two-qubit faults on an auxiliary and a data qubit).
std::vector<FaultClassInfo> classify_fault_classes(
    const Patch &patch, const CircuitIR &circuit, const DetectorErrorModel &dem);

/// The XZ memory experiment over `rounds` rounds (0 means d) with uniform depolarizing noise;
/// the model used for circuit-level distance questions.
struct DistanceSetup {
    CircuitIR circuit;
    DetectorErrorModel dem;
    std::vector<FaultClassInfo> info;
};
DistanceSetup distance_setup(const Patch &patch, const Schedule &schedule, uint32_t rounds = 0);

struct FractionalHookWitness {
    DistanceResult distance;
    std::vector<FaultCategory> categories;
    size_t hook_faults = 0;
    size_t data_faults = 0;
};

/// A minimum-weight logical built only from data, measurement and hook classes, with its fault
/// categories. The weight equals the circuit distance when the shortcut is a fractional hook.
FractionalHookWitness find_fractional_hook_witness(const DistanceSetup &setup, uint32_t max_weight);

struct SingleFaultShortcuts {
    size_t checked_noncorner = 0;
    size_t checked_corner = 0;
    std::vector<size_t> malign_noncorner;
    std::vector<size_t> malign_corner;
};

/// For each class that is neither a data nor a measurement class, looks for a logical of weight
/// at most max_weight that uses that class once plus any data and measurement classes.
SingleFaultShortcuts single_fault_shortcuts(const DistanceSetup &setup, uint32_t max_weight);

/// Per-face malignancy table: each hook alone added to the single-qubit errors.
void write_hook_report(std::ostream &out, const Patch &patch, const Schedule &schedule);

}  // namespace colorhook

#endif
