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
#include <map>
#include <set>
#include <sstream>

#include "gtest/gtest.h"

using namespace colorhook;

TEST(lattice, counts) {
    for (uint32_t d : {3u, 5u, 7u, 9u}) {
        auto patch = build_patch(d);
        size_t n = patch.num_data();
        EXPECT_EQ(n, (3 * d * d + 1) / 4) << d;
        EXPECT_EQ(patch.num_faces(), (n - 1) / 2) << d;
        EXPECT_EQ(n - 2 * patch.num_faces(), 1u);
    }
    EXPECT_EQ(build_patch(3).num_qubits(), 10u);
    EXPECT_EQ(build_patch(5).num_qubits(), 28u);
    EXPECT_EQ(build_patch(7).num_qubits(), 55u);
}

TEST(lattice, rejects_bad_distance) {
    EXPECT_THROW(build_patch(1), std::invalid_argument);
    EXPECT_THROW(build_patch(4), std::invalid_argument);
    EXPECT_THROW(build_patch(0), std::invalid_argument);
}

TEST(lattice, distance_three_layout) {
    auto patch = build_patch(3);
    std::set<std::pair<int, int>> data;
    for (auto c : patch.data_coords) {
        data.insert({c.i, c.j});
    }
    std::set<std::pair<int, int>> expected{{0, 0}, {2, 0}, {3, 0}, {0, 1}, {1, 1}, {1, 2}, {0, 3}};
    EXPECT_EQ(data, expected);

    std::set<std::tuple<int, int, char>> faces;
    for (const auto &f : patch.faces) {
        faces.insert({f.center.i, f.center.j, color_char(f.color)});
        EXPECT_EQ(f.weight(), 4u);
        EXPECT_EQ(f.aux_qubit, patch.num_data() + f.id);
    }
    std::set<std::tuple<int, int, char>> expected_faces{{1, 0, 'G'}, {2, 1, 'B'}, {0, 2, 'R'}};
    EXPECT_EQ(faces, expected_faces);
}

TEST(lattice, face_kinds) {
    auto patch = build_patch(7);
    std::map<FaceKind, size_t> kinds;
    for (const auto &f : patch.faces) {
        kinds[f.kind]++;
        if (f.kind == FaceKind::Bulk) {
            EXPECT_EQ(f.weight(), 6u);
        } else {
            EXPECT_EQ(f.weight(), 4u);
        }
    }
    EXPECT_EQ(kinds[FaceKind::Corner], 3u);
    EXPECT_EQ(kinds[FaceKind::Trapezoid], 6u);
    EXPECT_EQ(kinds[FaceKind::Bulk], 9u);
}

TEST(lattice, interior_faces) {
    for (uint32_t d : {3u, 5u}) {
        auto patch = build_patch(d);
        for (const auto &f : patch.faces) {
            EXPECT_FALSE(is_interior(patch, f));
        }
    }
    auto patch = build_patch(7);
    std::set<Color> colors;
    for (const auto &f : patch.faces) {
        if (is_interior(patch, f)) {
            colors.insert(f.color);
        }
    }
    EXPECT_EQ(colors.size(), 3u);
}

TEST(lattice, stabilizers_commute) {
    for (uint32_t d : {3u, 5u, 7u}) {
        auto patch = build_patch(d);
        for (const auto &a : patch.faces) {
            for (const auto &b : patch.faces) {
                size_t overlap = 0;
                for (auto q : a.data_slots) {
                    overlap += std::count(b.data_slots.begin(), b.data_slots.end(), q);
                }
                EXPECT_EQ(overlap % 2, 0u);
            }
        }
        for (const auto &faces : patch.qubit_faces) {
            EXPECT_GE(faces.size(), 1u);
            EXPECT_LE(faces.size(), 3u);
        }
    }
}

TEST(lattice, logical_commutes_with_faces) {
    for (uint32_t d : {3u, 5u, 7u}) {
        auto patch = build_patch(d);
        EXPECT_EQ(patch.logical_z_support.size(), d);
        for (const auto &f : patch.faces) {
            size_t overlap = 0;
            for (auto q : f.data_slots) {
                overlap += std::count(patch.logical_z_support.begin(), patch.logical_z_support.end(), q);
            }
            EXPECT_EQ(overlap % 2, 0u);
        }
    }
}

TEST(lattice, min_logical_weight) {
    EXPECT_EQ(min_logical_weight(build_patch(3)), 3u);
    EXPECT_EQ(min_logical_weight(build_patch(5)), 5u);
    EXPECT_EQ(min_logical_weight(build_patch(7)), 7u);
}

TEST(lattice, shortest_logical_combination_uses_generators) {
    auto patch = build_patch(3);
    std::vector<std::vector<uint32_t>> gens{patch.logical_z_support};
    auto best = shortest_logical_combination(patch, gens);
    ASSERT_TRUE(best.has_value());
    EXPECT_EQ(best->size(), 1u);
    EXPECT_FALSE(shortest_logical_combination(patch, {{0}}, 5).has_value());
}

TEST(lattice, validate_and_round_trip) {
    for (uint32_t d : {3u, 5u, 7u}) {
        auto patch = build_patch(d);
        EXPECT_NO_THROW(validate_patch(patch));
        std::stringstream ss;
        write_patch(ss, patch);
        EXPECT_EQ(read_patch(ss), patch);
    }
}

TEST(lattice, validate_rejects_broken_patch) {
    auto patch = build_patch(5);
    patch.faces[0].data_slots.pop_back();
    EXPECT_THROW(validate_patch(patch), std::logic_error);
}

TEST(lattice, colors) {
    EXPECT_EQ(parse_color("R"), Color::Red);
    EXPECT_EQ(parse_color("B"), Color::Blue);
    EXPECT_EQ(color_char(Color::Green), 'G');
    EXPECT_THROW(parse_color("Q"), std::invalid_argument);
}
