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

#ifndef COLORHOOK_LATTICE_H
#define COLORHOOK_LATTICE_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

namespace colorhook {

enum class Color : uint8_t { Red = 0, Green = 1, Blue = 2 };

inline constexpr std::array<Color, 3> ALL_COLORS{Color::Red, Color::Green, Color::Blue};

inline size_t color_index(Color c) {
    return static_cast<size_t>(c);
}
char color_char(Color c);
Color parse_color(std::string_view text);

enum class FaceKind : uint8_t { Bulk, Trapezoid, Corner };

std::string_view face_kind_name(FaceKind kind);

/// Axial coordinate on the triangular lattice. Data qubits and face centers are both lattice
/// points; the face centers are the points with (i - j) % 3 == 1.
struct LatticeCoord {
    int32_t i;
    int32_t j;
    bool operator==(const LatticeCoord &other) const = default;
};

inline constexpr size_t NUM_SLOTS = 6;
inline constexpr int32_t NO_QUBIT = -1;

/// Offsets from a face center to the six corners of its hexagon, clockwise starting from the
/// top-left corner (the face center is at the origin, +j points up).
inline constexpr std::array<LatticeCoord, NUM_SLOTS> SLOT_OFFSETS{{
    {-1, 1},
    {0, 1},
    {1, 0},
    {1, -1},
    {0, -1},
    {-1, 0},
}};

struct Face {
    uint32_t id;
    Color color;
    FaceKind kind;
    LatticeCoord center;
    /// Data qubit at each geometric slot, or NO_QUBIT where the boundary cut removed it.
    std::array<int32_t, NUM_SLOTS> slot_qubits;
    /// The present data qubits in slot order.
    std::vector<uint32_t> data_slots;
    uint32_t aux_qubit;

    size_t weight() const {
        return data_slots.size();
    }
    bool has_slot(size_t slot) const {
        return slot_qubits[slot] != NO_QUBIT;
    }
    bool operator==(const Face &other) const = default;
};

struct Edge {
    uint32_t a;
    uint32_t b;
    Color color;
    bool operator==(const Edge &other) const = default;
};

/// Triangular color-code patch. Data qubits are numbered 0..n-1, and the auxiliary qubit of face
/// k is n + k. Immutable once built.
struct Patch {
    uint32_t distance = 0;
    std::vector<LatticeCoord> data_coords;
    std::vector<Face> faces;
    std::vector<Edge> edges;
    /// Boundary qubits, indexed by the color of the faces missing from that boundary.
    std::array<std::vector<uint32_t>, 3> boundaries;
    std::vector<uint32_t> logical_z_support;
    std::vector<uint32_t> logical_x_support;
    /// Face ids containing each data qubit.
    std::vector<std::vector<uint32_t>> qubit_faces;

    size_t num_data() const {
        return data_coords.size();
    }
    size_t num_faces() const {
        return faces.size();
    }
    size_t num_qubits() const {
        return data_coords.size() + faces.size();
    }
    const std::vector<uint32_t> &boundary(Color c) const {
        return boundaries[color_index(c)];
    }
    LatticeCoord qubit_coord(uint32_t qubit) const;
    bool operator==(const Patch &other) const = default;
};

/// Builds the distance-d triangular patch. Throws std::invalid_argument unless d is odd and >= 3.
Patch build_patch(uint32_t distance);

/// A weight-six face with no data qubit on a boundary.
bool is_interior(const Patch &patch, const Face &face);

/// Throws std::logic_error describing the first violated structural invariant.
void validate_patch(const Patch &patch);

/// Minimum weight of an X-type logical operator, found by breadth-first search.
uint32_t min_logical_weight(const Patch &patch);

/// Shortest combination of X-type data errors (each generator costs one) that commutes with every
/// Z stabilizer and anticommutes with the Z logical. Breadth-first over the
/// (Z syndrome, logical parity) space, so the face count must stay below 26. Returns the chosen
/// generator indices, or nullopt when no combination of at most max_weight generators exists.
std::optional<std::vector<size_t>> shortest_logical_combination(
    const Patch &patch,
    const std::vector<std::vector<uint32_t>> &generators,
    size_t max_weight = std::numeric_limits<size_t>::max());

/// Line-oriented text form:
///   P <distance>
///   Q <id> <i> <j>                           one per data and auxiliary qubit
///   F <id> <color> <aux> <s0> ... <s5>       '_' marks an absent slot
///   B <color> <id> ...                       boundary qubits in order along the boundary
void write_patch(std::ostream &out, const Patch &patch);
Patch read_patch(std::istream &in);

}  // namespace colorhook

#endif
