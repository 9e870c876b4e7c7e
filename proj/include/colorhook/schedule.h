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

#ifndef COLORHOOK_SCHEDULE_H
#define COLORHOOK_SCHEDULE_H

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "colorhook/lattice.h"

namespace colorhook {

inline constexpr size_t NUM_GATE_STEPS = 6;

/// Slot touched at each of the six gate steps.
using SlotOrder = std::array<uint8_t, NUM_GATE_STEPS>;

/// Color-dependent gate schedule. Faces missing some slots (trapezoids and corners) keep the
/// bulk order of their color and simply skip the steps of the absent slots.
struct Schedule {
    std::array<SlotOrder, 3> per_color;

    const SlotOrder &order(Color c) const {
        return per_color[color_index(c)];
    }
    bool is_uniform() const {
        return per_color[0] == per_color[1] && per_color[1] == per_color[2];
    }
    auto operator<=>(const Schedule &other) const = default;
};

Schedule uniform_schedule(const SlotOrder &order);

/// Throws std::invalid_argument unless every per-color order is a permutation of 0..5.
void validate_schedule(const Schedule &schedule);

struct GateStep {
    uint8_t step;
    uint8_t slot;
    uint32_t data_qubit;
};

/// The face's two-qubit gates in time order.
std::vector<GateStep> face_gate_sequence(const Face &face, const Schedule &schedule);

struct ScheduleConstraints {
    bool conflict_free = true;
    bool bulk_benign = true;
    bool boundary_diagonal = true;
};

/// Outcome of checking a schedule. Flags of constraints that were not checked stay true.
struct ScheduleReport {
    bool conflict_free = true;
    bool bulk_benign = true;
    bool boundary_diagonal = true;
    std::vector<std::string> witnesses;

    bool ok() const {
        return conflict_free && bulk_benign && boundary_diagonal;
    }
};

/// Scans every gate step for a data qubit touched by two faces at once.
ScheduleReport check_conflicts(const Patch &patch, const Schedule &schedule);

/// Requires the offset-2 hook pair of every trapezoid to be one of its diagonals.
ScheduleReport check_boundary_diagonals(const Patch &patch, const Schedule &schedule);

/// Requires every color's order to keep its hooks off that color's malign slot masks, for each
/// color with a hexagon in the patch.
ScheduleReport check_bulk_benign(const Patch &patch, const Schedule &schedule);

ScheduleReport check_schedule(
    const Patch &patch, const Schedule &schedule, const ScheduleConstraints &constraints = {});

/// Visits the schedules satisfying the constraints in lexicographic (red, green, blue) order
/// until the visitor returns false.
void for_each_schedule(
    const Patch &patch,
    const ScheduleConstraints &constraints,
    const std::function<bool(const Schedule &)> &visit);

/// First max_results satisfying schedules in lexicographic order; 0 means all of them.
std::vector<Schedule> search_schedules(
    const Patch &patch, const ScheduleConstraints &constraints, size_t max_results = 0);

/// The pinned schedule. Conflict-free with diagonal boundary hooks at distances 3 to 7, and its
/// circuit-level distance is 2 at d=3 and 4 at d=5. Each color keeps two of its three hooks off
/// the malign masks; the third (red {2,4}, green {0,2}, blue {0,4}) is malign on interior faces,
/// so check_bulk_benign rejects it. No schedule that passes check_bulk_benign reaches circuit
/// distance 4 at d=5.
Schedule default_schedule();

/// Text form: one line `S <color> <p0> ... <p5>` per color.
void write_schedule(std::ostream &out, const Schedule &schedule);
Schedule read_schedule(std::istream &in);

/// Resolves `default`, `uniform:<six slot digits>`, or a path to a schedule file.
Schedule resolve_schedule(std::string_view source);

std::string describe_order(const SlotOrder &order);

}  // namespace colorhook

#endif
