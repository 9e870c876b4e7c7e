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

#include "colorhook/lattice.h"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace colorhook {

namespace {

int32_t mod3(int32_t v) {
    return ((v % 3) + 3) % 3;
}

bool is_face_center(LatticeCoord c) {
    return mod3(c.i - c.j) == 1;
}

// Fills the fields that follow from qubit coordinates, faces and boundaries.
void finalize_patch(Patch &patch) {
    size_t n = patch.num_data();
    patch.qubit_faces.assign(n, {});
    for (const auto &face : patch.faces) {
        for (auto q : face.data_slots) {
            patch.qubit_faces[q].push_back(face.id);
        }
    }

    for (auto &face : patch.faces) {
        if (face.weight() == NUM_SLOTS) {
            face.kind = FaceKind::Bulk;
            continue;
        }
        size_t touched = 0;
        for (const auto &boundary : patch.boundaries) {
            bool hit = std::any_of(face.data_slots.begin(), face.data_slots.end(), [&](uint32_t q) {
                return std::find(boundary.begin(), boundary.end(), q) != boundary.end();
            });
            touched += hit;
        }
        face.kind = touched >= 2 ? FaceKind::Corner : FaceKind::Trapezoid;
    }

    std::set<std::pair<uint32_t, uint32_t>> seen;
    patch.edges.clear();
    for (const auto &face : patch.faces) {
        size_t w = face.data_slots.size();
        for (size_t k = 0; k < w; k++) {
            uint32_t a = face.data_slots[k];
            uint32_t b = face.data_slots[(k + 1) % w];
            auto key = std::minmax(a, b);
            if (!seen.insert(key).second) {
                continue;
            }
            // An edge takes the color of the faces at its two ends: those containing exactly one
            // of its endpoints.
            std::vector<uint32_t> fa = patch.qubit_faces[a];
            std::vector<uint32_t> fb = patch.qubit_faces[b];
            std::sort(fa.begin(), fa.end());
            std::sort(fb.begin(), fb.end());
            std::vector<uint32_t> diff;
            std::set_symmetric_difference(fa.begin(), fa.end(), fb.begin(), fb.end(), std::back_inserter(diff));
            if (diff.empty()) {
                throw std::logic_error("edge without end faces");
            }
            Color c = patch.faces[diff[0]].color;
            for (auto f : diff) {
                if (patch.faces[f].color != c) {
                    throw std::logic_error("edge end faces disagree on color");
                }
            }
            patch.edges.push_back({key.first, key.second, c});
        }
    }

    patch.logical_z_support = patch.boundary(Color::Red);
    std::sort(patch.logical_z_support.begin(), patch.logical_z_support.end());
    patch.logical_x_support = patch.logical_z_support;
}

}  // namespace

char color_char(Color c) {
    switch (c) {
        case Color::Red:
            return 'R';
        case Color::Green:
            return 'G';
        case Color::Blue:
            return 'B';
    }
    throw std::invalid_argument("bad color");
}

Color parse_color(std::string_view text) {
    if (text == "R" || text == "red" || text == "Red") {
        return Color::Red;
    }
    if (text == "G" || text == "green" || text == "Green") {
        return Color::Green;
    }
    if (text == "B" || text == "blue" || text == "Blue") {
        return Color::Blue;
    }
    throw std::invalid_argument("unknown color '" + std::string(text) + "'");
}

std::string_view face_kind_name(FaceKind kind) {
    switch (kind) {
        case FaceKind::Bulk:
            return "bulk";
        case FaceKind::Trapezoid:
            return "trapezoid";
        case FaceKind::Corner:
            return "corner";
    }
    return "?";
}

LatticeCoord Patch::qubit_coord(uint32_t qubit) const {
    if (qubit < data_coords.size()) {
        return data_coords[qubit];
    }
    return faces.at(qubit - data_coords.size()).center;
}

Patch build_patch(uint32_t distance) {
    if (distance < 3 || distance % 2 == 0) {
        throw std::invalid_argument("patch distance must be odd and at least 3, got " + std::to_string(distance));
    }
    // The patch is the triangle i >= 0, j >= 0, i + j <= side of the triangular lattice, with a
    // third of the points promoted to face centers. All three corners land on data qubits.
    int32_t side = 3 * (static_cast<int32_t>(distance) - 1) / 2;
    auto inside = [&](LatticeCoord c) {
        return c.i >= 0 && c.j >= 0 && c.i + c.j <= side;
    };

    Patch patch;
    patch.distance = distance;
    std::map<std::pair<int32_t, int32_t>, uint32_t> data_index;
    std::vector<LatticeCoord> centers;
    for (int32_t j = 0; j <= side; j++) {
        for (int32_t i = 0; i + j <= side; i++) {
            LatticeCoord c{i, j};
            if (is_face_center(c)) {
                centers.push_back(c);
            } else {
                data_index[{i, j}] = static_cast<uint32_t>(patch.data_coords.size());
                patch.data_coords.push_back(c);
            }
        }
    }

    uint32_t n = static_cast<uint32_t>(patch.data_coords.size());
    for (const auto &center : centers) {
        Face face{};
        face.id = static_cast<uint32_t>(patch.faces.size());
        face.color = static_cast<Color>(mod3(center.i));
        face.center = center;
        face.aux_qubit = n + face.id;
        for (size_t s = 0; s < NUM_SLOTS; s++) {
            LatticeCoord q{center.i + SLOT_OFFSETS[s].i, center.j + SLOT_OFFSETS[s].j};
            if (inside(q)) {
                uint32_t id = data_index.at({q.i, q.j});
                face.slot_qubits[s] = static_cast<int32_t>(id);
                face.data_slots.push_back(id);
            } else {
                face.slot_qubits[s] = NO_QUBIT;
            }
        }
        patch.faces.push_back(std::move(face));
    }

    // Boundary lines: j = 0, i = 0 and i + j = side. Each is named after the face color that
    // never touches it.
    std::array<std::vector<uint32_t>, 3> lines;
    for (int32_t t = 0; t <= side; t++) {
        for (auto [line, c] : {std::pair<size_t, LatticeCoord>{0, {t, 0}}, {1, {0, t}}, {2, {side - t, t}}}) {
            auto it = data_index.find({c.i, c.j});
            if (it != data_index.end()) {
                lines[line].push_back(it->second);
            }
        }
    }
    for (const auto &line : lines) {
        std::array<bool, 3> touching{};
        for (const auto &face : patch.faces) {
            for (auto q : face.data_slots) {
                if (std::find(line.begin(), line.end(), q) != line.end()) {
                    touching[color_index(face.color)] = true;
                }
            }
        }
        auto missing = std::find(touching.begin(), touching.end(), false);
        if (std::count(touching.begin(), touching.end(), false) != 1) {
            throw std::logic_error("boundary does not miss exactly one face color");
        }
        patch.boundaries[missing - touching.begin()] = line;
    }

    finalize_patch(patch);
    validate_patch(patch);
    return patch;
}

bool is_interior(const Patch &patch, const Face &face) {
    if (face.weight() != NUM_SLOTS) {
        return false;
    }
    for (const auto &line : patch.boundaries) {
        for (auto q : face.data_slots) {
            if (std::find(line.begin(), line.end(), q) != line.end()) {
                return false;
            }
        }
    }
    return true;
}

void validate_patch(const Patch &patch) {
    auto fail = [](const std::string &msg) {
        throw std::logic_error("invalid patch: " + msg);
    };
    size_t n = patch.num_data();
    size_t f = patch.num_faces();
    if (n != 2 * f + 1) {
        fail("data count " + std::to_string(n) + " != 2 * faces + 1");
    }
    for (const auto &face : patch.faces) {
        std::set<uint32_t> unique(face.data_slots.begin(), face.data_slots.end());
        if (unique.size() != face.data_slots.size()) {
            fail("face " + std::to_string(face.id) + " repeats a data qubit");
        }
        if (face.weight() != 6 && face.weight() != 4) {
            fail("face " + std::to_string(face.id) + " has weight " + std::to_string(face.weight()));
        }
        if (face.aux_qubit < n) {
            fail("auxiliary qubit collides with a data qubit");
        }
        for (auto q : face.data_slots) {
            if (q >= n) {
                fail("face references unknown data qubit");
            }
        }
    }
    for (size_t a = 0; a < f; a++) {
        for (size_t b = a + 1; b < f; b++) {
            const auto &fa = patch.faces[a].data_slots;
            const auto &fb = patch.faces[b].data_slots;
            size_t overlap = 0;
            for (auto q : fa) {
                overlap += std::count(fb.begin(), fb.end(), q);
            }
            if (overlap % 2) {
                fail("faces " + std::to_string(a) + " and " + std::to_string(b) + " overlap oddly");
            }
            if (overlap > 0 && patch.faces[a].color == patch.faces[b].color) {
                fail("adjacent faces share a color");
            }
        }
    }
    for (const auto &face : patch.faces) {
        size_t overlap = 0;
        for (auto q : face.data_slots) {
            overlap += std::count(patch.logical_z_support.begin(), patch.logical_z_support.end(), q);
        }
        if (overlap % 2) {
            fail("logical support anticommutes with a stabilizer");
        }
    }
    if (patch.logical_z_support.size() % 2 == 0) {
        fail("logical X and Z supports overlap evenly");
    }
}

std::optional<std::vector<size_t>> shortest_logical_combination(
    const Patch &patch, const std::vector<std::vector<uint32_t>> &generators, size_t max_weight) {
    size_t f = patch.num_faces();
    if (f > 25) {
        throw std::invalid_argument("too many faces for breadth-first logical search");
    }
    std::vector<bool> in_logical(patch.num_data(), false);
    for (auto q : patch.logical_z_support) {
        in_logical[q] = true;
    }
    std::vector<uint32_t> masks;
    masks.reserve(generators.size());
    for (const auto &gen : generators) {
        uint32_t m = 0;
        for (auto q : gen) {
            for (auto face : patch.qubit_faces.at(q)) {
                m ^= uint32_t{1} << face;
            }
            if (in_logical[q]) {
                m ^= uint32_t{1} << f;
            }
        }
        masks.push_back(m);
    }

    uint32_t target = uint32_t{1} << f;
    constexpr uint32_t UNSEEN = std::numeric_limits<uint32_t>::max();
    std::vector<uint32_t> parent(size_t{1} << (f + 1), UNSEEN);
    parent[0] = 0;
    std::vector<uint32_t> frontier{0};
    std::vector<uint32_t> next;
    for (size_t depth = 1; depth <= max_weight && !frontier.empty(); depth++) {
        next.clear();
        for (auto state : frontier) {
            for (size_t g = 0; g < masks.size(); g++) {
                uint32_t s = state ^ masks[g];
                if (parent[s] != UNSEEN) {
                    continue;
                }
                parent[s] = static_cast<uint32_t>(g);
                if (s == target) {
                    std::vector<size_t> witness;
                    while (s != 0) {
                        witness.push_back(parent[s]);
                        s ^= masks[parent[s]];
                    }
                    std::reverse(witness.begin(), witness.end());
                    return witness;
                }
                next.push_back(s);
            }
        }
        std::swap(frontier, next);
    }
    return std::nullopt;
}

uint32_t min_logical_weight(const Patch &patch) {
    std::vector<std::vector<uint32_t>> singles;
    for (uint32_t q = 0; q < patch.num_data(); q++) {
        singles.push_back({q});
    }
    auto best = shortest_logical_combination(patch, singles);
    if (!best) {
        throw std::logic_error("patch has no X logical");
    }
    return static_cast<uint32_t>(best->size());
}

void write_patch(std::ostream &out, const Patch &patch) {
    out << "P " << patch.distance << "\n";
    for (uint32_t q = 0; q < patch.num_qubits(); q++) {
        auto c = patch.qubit_coord(q);
        out << "Q " << q << " " << c.i << " " << c.j << "\n";
    }
    for (const auto &face : patch.faces) {
        out << "F " << face.id << " " << color_char(face.color) << " " << face.aux_qubit;
        for (auto q : face.slot_qubits) {
            if (q == NO_QUBIT) {
                out << " _";
            } else {
                out << " " << q;
            }
        }
        out << "\n";
    }
    for (auto c : ALL_COLORS) {
        out << "B " << color_char(c);
        for (auto q : patch.boundary(c)) {
            out << " " << q;
        }
        out << "\n";
    }
}

Patch read_patch(std::istream &in) {
    Patch patch;
    std::map<uint32_t, LatticeCoord> coords;
    std::set<uint32_t> aux;
    std::string line;
    size_t line_no = 0;
    auto fail = [&](const std::string &msg) {
        throw std::invalid_argument("patch line " + std::to_string(line_no) + ": " + msg);
    };
    while (std::getline(in, line)) {
        line_no++;
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag) || tag[0] == '#') {
            continue;
        }
        if (tag == "P") {
            if (!(ss >> patch.distance)) {
                fail("bad distance");
            }
        } else if (tag == "Q") {
            uint32_t id;
            LatticeCoord c;
            if (!(ss >> id >> c.i >> c.j)) {
                fail("bad qubit");
            }
            coords[id] = c;
        } else if (tag == "F") {
            Face face{};
            std::string color;
            if (!(ss >> face.id >> color >> face.aux_qubit)) {
                fail("bad face");
            }
            face.color = parse_color(color);
            for (size_t s = 0; s < NUM_SLOTS; s++) {
                std::string tok;
                if (!(ss >> tok)) {
                    fail("face needs six slots");
                }
                if (tok == "_") {
                    face.slot_qubits[s] = NO_QUBIT;
                } else {
                    face.slot_qubits[s] = std::stoi(tok);
                    face.data_slots.push_back(static_cast<uint32_t>(face.slot_qubits[s]));
                }
            }
            if (face.id != patch.faces.size()) {
                fail("faces must be listed in id order");
            }
            aux.insert(face.aux_qubit);
            patch.faces.push_back(std::move(face));
        } else if (tag == "B") {
            std::string color;
            ss >> color;
            auto &boundary = patch.boundaries[color_index(parse_color(color))];
            uint32_t q;
            while (ss >> q) {
                boundary.push_back(q);
            }
        } else {
            fail("unknown record '" + tag + "'");
        }
    }
    for (const auto &[id, c] : coords) {
        if (aux.count(id)) {
            continue;
        }
        if (id != patch.data_coords.size()) {
            fail("data qubit ids must be contiguous from 0");
        }
        patch.data_coords.push_back(c);
    }
    for (auto &face : patch.faces) {
        auto it = coords.find(face.aux_qubit);
        if (it == coords.end()) {
            fail("face auxiliary has no coordinates");
        }
        face.center = it->second;
    }
    finalize_patch(patch);
    validate_patch(patch);
    return patch;
}

}  // namespace colorhook
