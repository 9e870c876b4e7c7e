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


#include "colorhook/analysis.h"

#include <algorithm>
#include <bit>
#include <sstream>

#include "colorhook/experiment.h"
#include "gtest/gtest.h"

using namespace colorhook;

namespace {

HookError hook_on_slots(const Face &face, uint8_t mask) {
    HookError h{face.id, HookBasis::X, 0, {}};
    for (size_t slot = 0; slot < NUM_SLOTS; slot++) {
        if ((mask >> slot) & 1) {
            h.induced_error.push_back(static_cast<uint32_t>(face.slot_qubits[slot]));
        }
    }
    std::sort(h.induced_error.begin(), h.induced_error.end());
    return h;
}

DetectorErrorModel toy_model() {
    // D0 -- D1 chain closed by a logical-flipping boundary class.
    DetectorErrorModel dem;
    dem.num_detectors = 3;
    dem.classes = {
        {0.01, {{0}, false}, {}, {}},
        {0.01, {{0, 1}, false}, {}, {}},
        {0.01, {{1}, true}, {}, {}},
        {0.01, {{2}, false}, {}, {}},
        {0.01, {{2}, true}, {}, {}},
    };
    return dem;
}

}  // namespace

TEST(analysis, hook_slot_masks) {
    auto m = hook_slot_masks({0, 1, 2, 3, 4, 5});
    EXPECT_EQ(m[0], 0b000011);
    EXPECT_EQ(m[1], 0b111000);
    EXPECT_EQ(m[2], 0b110000);
    auto r = hook_slot_masks({1, 5, 0, 3, 2, 4});
    EXPECT_EQ(r[0], 0b100010);
    EXPECT_EQ(r[1], 0b011100);
    EXPECT_EQ(r[2], 0b010100);
}

TEST(analysis, frozen_malign_masks) {
    EXPECT_EQ(malign_slot_masks(Color::Red), (std::vector<uint8_t>{3, 6, 9, 10, 12, 17, 18, 20, 24}));
    EXPECT_EQ(malign_slot_masks(Color::Green), (std::vector<uint8_t>{3, 5, 6, 18, 20, 33, 34, 36, 48}));
    EXPECT_EQ(malign_slot_masks(Color::Blue), (std::vector<uint8_t>{5, 9, 12, 17, 24, 33, 36, 40, 48}));
}

TEST(analysis, weight_three_hooks_are_never_malign) {
    for (auto c : ALL_COLORS) {
        for (auto mask : malign_slot_masks(c)) {
            EXPECT_EQ(std::popcount(mask), 2) << color_char(c);
        }
    }
}

TEST(analysis, malignancy_is_the_same_on_every_interior_face_of_a_color) {
    auto patch = build_patch(7);
    size_t checked = 0;
    for (const auto &face : patch.faces) {
        if (!is_interior(patch, face)) {
            continue;
        }
        const auto &malign = malign_slot_masks(face.color);
        for (uint8_t mask = 1; mask < 64; mask++) {
            int w = std::popcount(mask);
            if (w < 2 || w > 3) {
                continue;
            }
            auto r = hook_augmented_distance(patch, {hook_on_slots(face, mask)});
            bool is_malign = std::binary_search(malign.begin(), malign.end(), mask);
            EXPECT_EQ(*r.value < 7, is_malign) << face.id << " mask " << int(mask);
            checked++;
        }
    }
    EXPECT_EQ(checked, 3u * 35u);
}

TEST(analysis, frozen_hook_counts) {
    struct Frozen {
        uint32_t d;
        size_t all, interior, corner, trapezoid, bulk;
    };
    for (auto f : {Frozen{3, 6, 0, 6, 0, 0}, Frozen{5, 30, 0, 6, 6, 18}, Frozen{7, 72, 18, 6, 12, 54}}) {
        auto patch = build_patch(f.d);
        auto hooks = propagate_hooks(patch, default_schedule());
        EXPECT_EQ(hooks.size(), f.all);
        EXPECT_EQ(interior_hooks(patch, default_schedule()).size(), f.interior);
        EXPECT_EQ(hooks_on(patch, hooks, FaceKind::Corner).size(), f.corner);
        EXPECT_EQ(hooks_on(patch, hooks, FaceKind::Trapezoid).size(), f.trapezoid);
        EXPECT_EQ(hooks_on(patch, hooks, FaceKind::Bulk).size(), f.bulk);
        for (const auto &h : hooks) {
            EXPECT_GE(h.induced_error.size(), 2u);
            EXPECT_LE(h.induced_error.size(), 3u);
        }
    }
}

TEST(analysis, hook_augmented_distance_values) {
    for (uint32_t d : {3u, 5u, 7u}) {
        auto patch = build_patch(d);
        EXPECT_EQ(*hook_augmented_distance(patch, {}).value, d);
    }
    auto p5 = build_patch(5);
    EXPECT_EQ(*hook_augmented_distance(p5, interior_hooks(p5, default_schedule())).value, 5u);
    EXPECT_EQ(*hook_augmented_distance(p5, propagate_hooks(p5, default_schedule())).value, 4u);
    auto worst = uniform_schedule(worst_uniform_order(p5));
    EXPECT_EQ(*hook_augmented_distance(p5, propagate_hooks(p5, worst)).value, 3u);
    EXPECT_THROW(hook_augmented_distance(build_patch(9), {}), std::invalid_argument);
    EXPECT_FALSE(hook_augmented_distance(p5, {}, 4).value.has_value());
}

TEST(analysis, hook_augmented_distance_is_monotone) {
    auto patch = build_patch(5);
    auto hooks = propagate_hooks(patch, uniform_schedule({0, 1, 3, 5, 2, 4}));
    uint32_t previous = *hook_augmented_distance(patch, {}).value;
    std::vector<HookError> subset;
    for (const auto &h : hooks) {
        subset.push_back(h);
        uint32_t v = *hook_augmented_distance(patch, subset).value;
        EXPECT_LE(v, previous);
        previous = v;
    }
}

TEST(analysis, distance_seven_interior_hooks) {
    auto p7 = build_patch(7);
    auto r = hook_augmented_distance(p7, interior_hooks(p7, default_schedule()));
    EXPECT_EQ(*r.value, 6u);
}

TEST(analysis, logical_fault_search_on_toy_model) {
    auto dem = toy_model();
    auto r = logical_fault_search(dem, 4);
    ASSERT_TRUE(r.value.has_value());
    EXPECT_EQ(*r.value, 2u);
    std::sort(r.witness.begin(), r.witness.end());
    EXPECT_EQ(r.witness, (std::vector<size_t>{3, 4}));

    std::vector<bool> no_right{true, true, true, false, true};
    auto chain = logical_fault_search(dem, 4, no_right);
    EXPECT_EQ(*chain.value, 3u);
    std::sort(chain.witness.begin(), chain.witness.end());
    EXPECT_EQ(chain.witness, (std::vector<size_t>{0, 1, 2}));
    EXPECT_FALSE(logical_fault_search(dem, 2, no_right).value.has_value());

    std::vector<bool> left_only{true, true, true, false, false};
    auto required = logical_fault_search(dem, 4, left_only, size_t{3});
    EXPECT_FALSE(required.value.has_value());
    auto with_right = logical_fault_search(dem, 4, std::vector<bool>{false, false, false, false, true}, size_t{3});
    EXPECT_EQ(*with_right.value, 2u);
}

TEST(analysis, circuit_distance_bounds) {
    DetectorErrorModel empty{5, {}};
    EXPECT_FALSE(circuit_distance(empty, 6).value.has_value());
    EXPECT_THROW(circuit_distance(empty, 7), std::invalid_argument);
}

TEST(analysis, circuit_distance_default_schedule) {
    auto s3 = distance_setup(build_patch(3), default_schedule());
    EXPECT_EQ(*circuit_distance(s3.dem, 4).value, 2u);
    auto s5 = distance_setup(build_patch(5), default_schedule());
    auto r = circuit_distance(s5.dem, 4);
    ASSERT_TRUE(r.value.has_value());
    EXPECT_EQ(*r.value, 4u);
    Signature total;
    for (auto k : r.witness) {
        total = xor_signatures(total, s5.dem.classes[k].signature);
    }
    EXPECT_TRUE(total.detectors.empty());
    EXPECT_TRUE(total.observable);
}

TEST(analysis, fractional_hook_witness_distance_five) {
    auto setup = distance_setup(build_patch(5), default_schedule());
    auto w = find_fractional_hook_witness(setup, 4);
    ASSERT_TRUE(w.distance.value.has_value());
    EXPECT_EQ(*w.distance.value, 4u);
    EXPECT_EQ(w.hook_faults, 2u);
    EXPECT_EQ(w.data_faults, 2u);
    EXPECT_EQ(w.categories.size(), 4u);
}

TEST(analysis, single_fault_shortcuts) {
    auto s3 = single_fault_shortcuts(distance_setup(build_patch(3), default_schedule()), 3);
    EXPECT_EQ(s3.checked_noncorner, 0u);
    EXPECT_EQ(s3.checked_corner, 158u);
    EXPECT_EQ(s3.malign_corner.size(), 110u);
    auto s5 = single_fault_shortcuts(distance_setup(build_patch(5), default_schedule()), 3);
    EXPECT_EQ(s5.checked_noncorner, 1059u);
    EXPECT_EQ(s5.checked_corner, 335u);
    EXPECT_TRUE(s5.malign_noncorner.empty());
    EXPECT_TRUE(s5.malign_corner.empty());
}

TEST(analysis, classification_flags_corner_faces) {
    auto patch = build_patch(5);
    auto setup = distance_setup(patch, default_schedule());
    ASSERT_EQ(setup.info.size(), setup.dem.classes.size());
    for (const auto &info : setup.info) {
        bool all_corner = !info.faces.empty();
        for (auto f : info.faces) {
            all_corner &= patch.faces[f].kind == FaceKind::Corner;
        }
        EXPECT_EQ(info.corner_only, all_corner);
        if (info.category == FaultCategory::Hook) {
            EXPECT_FALSE(info.faces.empty());
        }
    }
    EXPECT_STREQ(fault_category_name(FaultCategory::Hook), "hook");
}

TEST(analysis, hook_report_distance_three) {
    std::ostringstream out;
    write_hook_report(out, build_patch(3), default_schedule());
    EXPECT_EQ(
        out.str(),
        "# face color kind basis offset qubits distance verdict\n"
        "0 G corner X 2 0,4 2 malign\n"
        "0 G corner Z 2 0,4 2 malign\n"
        "1 B corner X 2 1,5 2 malign\n"
        "1 B corner Z 2 1,5 2 malign\n"
        "2 R corner X 2 5,3 2 malign\n"
        "2 R corner Z 2 5,3 2 malign\n");
}
