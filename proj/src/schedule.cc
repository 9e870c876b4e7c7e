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

#include "colorhook/schedule.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "colorhook/analysis.h"

namespace colorhook {

namespace {

std::vector<SlotOrder> all_orders() {
    std::vector<SlotOrder> out;
    SlotOrder order{0, 1, 2, 3, 4, 5};
    do {
        out.push_back(order);
    } while (std::next_permutation(order.begin(), order.end()));
    return out;
}

SlotOrder inverse(const SlotOrder &order) {
    SlotOrder inv{};
    for (uint8_t t = 0; t < NUM_GATE_STEPS; t++) {
        inv[order[t]] = t;
    }
    return inv;
}

// Two faces reaching the same data qubit: (color, slot) of each.
struct SharedCorner {
    size_t color_a;
    uint8_t slot_a;
    size_t color_b;
    uint8_t slot_b;
    auto operator<=>(const SharedCorner &other) const = default;
};

std::vector<SharedCorner> shared_corners(const Patch &patch) {
    std::set<SharedCorner> out;
    for (uint32_t q = 0; q < patch.num_data(); q++) {
        const auto &faces = patch.qubit_faces[q];
        for (size_t a = 0; a < faces.size(); a++) {
            for (size_t b = a + 1; b < faces.size(); b++) {
                const Face &fa = patch.faces[faces[a]];
                const Face &fb = patch.faces[faces[b]];
                auto slot_of = [&](const Face &f) {
                    for (uint8_t s = 0; s < NUM_SLOTS; s++) {
                        if (f.slot_qubits[s] == static_cast<int32_t>(q)) {
                            return s;
                        }
                    }
                    throw std::logic_error("qubit not on face");
                };
                SharedCorner c{color_index(fa.color), slot_of(fa), color_index(fb.color), slot_of(fb)};
                if (std::tie(c.color_a, c.slot_a) > std::tie(c.color_b, c.slot_b)) {
                    c = {c.color_b, c.slot_b, c.color_a, c.slot_a};
                }
                out.insert(c);
            }
        }
    }
    return {out.begin(), out.end()};
}

bool cyclically_adjacent(const std::vector<uint32_t> &cycle, uint32_t a, uint32_t b) {
    size_t w = cycle.size();
    for (size_t k = 0; k < w; k++) {
        uint32_t u = cycle[k];
        uint32_t v = cycle[(k + 1) % w];
        if ((u == a && v == b) || (u == b && v == a)) {
            return true;
        }
    }
    return false;
}

// The offset-2 hook of a four-gate face, or an empty pair for other faces.
std::optional<std::pair<uint32_t, uint32_t>> trapezoid_hook_pair(const Face &face, const Schedule &schedule) {
    auto seq = face_gate_sequence(face, schedule);
    if (seq.size() != 4) {
        return std::nullopt;
    }
    return std::pair{seq[2].data_qubit, seq[3].data_qubit};
}

bool has_hexagon(const Patch &patch, Color color) {
    return std::any_of(patch.faces.begin(), patch.faces.end(), [&](const Face &f) {
        return f.color == color && f.weight() == NUM_SLOTS;
    });
}

std::optional<uint8_t> first_malign_mask(Color color, const SlotOrder &order) {
    const auto &malign = malign_slot_masks(color);
    for (auto mask : hook_slot_masks(order)) {
        if (std::binary_search(malign.begin(), malign.end(), mask)) {
            return mask;
        }
    }
    return std::nullopt;
}

std::string describe_mask(uint8_t mask) {
    std::string out = "{";
    for (size_t s = 0; s < NUM_SLOTS; s++) {
        if (mask & (1u << s)) {
            if (out.size() > 1) {
                out += ",";
            }
            out += std::to_string(s);
        }
    }
    return out + "}";
}

}  // namespace

Schedule uniform_schedule(const SlotOrder &order) {
    return Schedule{{order, order, order}};
}

void validate_schedule(const Schedule &schedule) {
    for (const auto &order : schedule.per_color) {
        SlotOrder sorted = order;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != SlotOrder{0, 1, 2, 3, 4, 5}) {
            throw std::invalid_argument("schedule order " + describe_order(order) + " is not a permutation of 0..5");
        }
    }
}

std::vector<GateStep> face_gate_sequence(const Face &face, const Schedule &schedule) {
    std::vector<GateStep> out;
    const auto &order = schedule.order(face.color);
    for (uint8_t t = 0; t < NUM_GATE_STEPS; t++) {
        uint8_t slot = order[t];
        if (face.has_slot(slot)) {
            out.push_back({t, slot, static_cast<uint32_t>(face.slot_qubits[slot])});
        }
    }
    return out;
}

ScheduleReport check_conflicts(const Patch &patch, const Schedule &schedule) {
    ScheduleReport report;
    std::vector<std::map<uint32_t, uint32_t>> touched(NUM_GATE_STEPS);
    for (const auto &face : patch.faces) {
        for (const auto &gate : face_gate_sequence(face, schedule)) {
            auto [it, fresh] = touched[gate.step].emplace(gate.data_qubit, face.id);
            if (!fresh) {
                report.conflict_free = false;
                report.witnesses.push_back(
                    "step " + std::to_string(gate.step) + ": data qubit " + std::to_string(gate.data_qubit) +
                    " touched by faces " + std::to_string(it->second) + " and " + std::to_string(face.id));
            }
        }
    }
    return report;
}

ScheduleReport check_boundary_diagonals(const Patch &patch, const Schedule &schedule) {
    ScheduleReport report;
    for (const auto &face : patch.faces) {
        if (face.kind != FaceKind::Trapezoid) {
            continue;
        }
        auto pair = trapezoid_hook_pair(face, schedule);
        if (pair && cyclically_adjacent(face.data_slots, pair->first, pair->second)) {
            report.boundary_diagonal = false;
            report.witnesses.push_back(
                "trapezoid " + std::to_string(face.id) + ": hook on edge (" + std::to_string(pair->first) + ", " +
                std::to_string(pair->second) + ")");
        }
    }
    return report;
}

ScheduleReport check_bulk_benign(const Patch &patch, const Schedule &schedule) {
    ScheduleReport report;
    for (auto color : ALL_COLORS) {
        if (!has_hexagon(patch, color)) {
            continue;
        }
        if (auto mask = first_malign_mask(color, schedule.order(color))) {
            report.bulk_benign = false;
            report.witnesses.push_back(
                std::string("color ") + color_char(color) + ": hook on slots " + describe_mask(*mask) + " is malign");
        }
    }
    return report;
}

ScheduleReport check_schedule(const Patch &patch, const Schedule &schedule, const ScheduleConstraints &constraints) {
    validate_schedule(schedule);
    ScheduleReport report;
    auto merge = [&](ScheduleReport part) {
        report.conflict_free &= part.conflict_free;
        report.bulk_benign &= part.bulk_benign;
        report.boundary_diagonal &= part.boundary_diagonal;
        for (auto &w : part.witnesses) {
            report.witnesses.push_back(std::move(w));
        }
    };
    if (constraints.conflict_free) {
        merge(check_conflicts(patch, schedule));
    }
    if (constraints.bulk_benign) {
        merge(check_bulk_benign(patch, schedule));
    }
    if (constraints.boundary_diagonal) {
        merge(check_boundary_diagonals(patch, schedule));
    }
    return report;
}

void for_each_schedule(
    const Patch &patch, const ScheduleConstraints &constraints, const std::function<bool(const Schedule &)> &visit) {
    const auto orders = all_orders();

    // Malign masks and trapezoid diagonals depend on one color; conflicts are pairwise.
    std::array<std::vector<size_t>, 3> candidates;
    for (auto color : ALL_COLORS) {
        for (size_t k = 0; k < orders.size(); k++) {
            Schedule probe = uniform_schedule(orders[k]);
            if (constraints.boundary_diagonal) {
                bool ok = true;
                for (const auto &face : patch.faces) {
                    if (face.color != color || face.kind != FaceKind::Trapezoid) {
                        continue;
                    }
                    auto pair = trapezoid_hook_pair(face, probe);
                    if (pair && cyclically_adjacent(face.data_slots, pair->first, pair->second)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) {
                    continue;
                }
            }
            if (constraints.bulk_benign && has_hexagon(patch, color) && first_malign_mask(color, orders[k])) {
                continue;
            }
            candidates[color_index(color)].push_back(k);
        }
    }

    std::vector<SharedCorner> shared;
    if (constraints.conflict_free) {
        shared = shared_corners(patch);
    }
    std::vector<SlotOrder> inverses;
    for (const auto &o : orders) {
        inverses.push_back(inverse(o));
    }
    auto compatible = [&](size_t ca, size_t ka, size_t cb, size_t kb) {
        for (const auto &s : shared) {
            if (s.color_a == ca && s.color_b == cb) {
                if (inverses[ka][s.slot_a] == inverses[kb][s.slot_b]) {
                    return false;
                }
            } else if (s.color_a == cb && s.color_b == ca) {
                if (inverses[kb][s.slot_a] == inverses[ka][s.slot_b]) {
                    return false;
                }
            }
        }
        return true;
    };

    for (auto r : candidates[0]) {
        for (auto g : candidates[1]) {
            if (!compatible(0, r, 1, g)) {
                continue;
            }
            for (auto b : candidates[2]) {
                if (!compatible(0, r, 2, b) || !compatible(1, g, 2, b)) {
                    continue;
                }
                Schedule schedule{{orders[r], orders[g], orders[b]}};
                if (!visit(schedule)) {
                    return;
                }
            }
        }
    }
}

std::vector<Schedule> search_schedules(const Patch &patch, const ScheduleConstraints &constraints, size_t max_results) {
    std::vector<Schedule> out;
    for_each_schedule(patch, constraints, [&](const Schedule &s) {
        out.push_back(s);
        return max_results == 0 || out.size() < max_results;
    });
    return out;
}

Schedule default_schedule() {
    return Schedule{{
        SlotOrder{1, 5, 0, 3, 2, 4},
        SlotOrder{0, 2, 4, 5, 1, 3},
        SlotOrder{1, 3, 5, 2, 4, 0},
    }};
}

std::string describe_order(const SlotOrder &order) {
    std::string out;
    for (auto s : order) {
        out.push_back(static_cast<char>('0' + s));
    }
    return out;
}

void write_schedule(std::ostream &out, const Schedule &schedule) {
    for (auto c : ALL_COLORS) {
        out << "S " << color_char(c);
        for (auto s : schedule.order(c)) {
            out << " " << static_cast<int>(s);
        }
        out << "\n";
    }
}

Schedule read_schedule(std::istream &in) {
    Schedule schedule{};
    std::array<bool, 3> seen{};
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag) || tag[0] == '#') {
            continue;
        }
        std::string color;
        if (tag != "S" || !(ss >> color)) {
            throw std::invalid_argument("bad schedule line: " + line);
        }
        size_t c = color_index(parse_color(color));
        for (auto &slot : schedule.per_color[c]) {
            int v;
            if (!(ss >> v) || v < 0 || v >= static_cast<int>(NUM_SLOTS)) {
                throw std::invalid_argument("bad schedule line: " + line);
            }
            slot = static_cast<uint8_t>(v);
        }
        seen[c] = true;
    }
    if (!seen[0] || !seen[1] || !seen[2]) {
        throw std::invalid_argument("schedule must list all three colors");
    }
    validate_schedule(schedule);
    return schedule;
}

Schedule resolve_schedule(std::string_view source) {
    if (source == "default") {
        return default_schedule();
    }
    constexpr std::string_view prefix = "uniform:";
    if (source.substr(0, prefix.size()) == prefix) {
        auto digits = source.substr(prefix.size());
        if (digits.size() != NUM_GATE_STEPS) {
            throw std::invalid_argument("uniform schedule needs six slot digits");
        }
        SlotOrder order{};
        for (size_t t = 0; t < NUM_GATE_STEPS; t++) {
            order[t] = static_cast<uint8_t>(digits[t] - '0');
        }
        Schedule s = uniform_schedule(order);
        validate_schedule(s);
        return s;
    }
    std::ifstream in{std::string(source)};
    if (!in) {
        throw std::invalid_argument("cannot open schedule file '" + std::string(source) + "'");
    }
    return read_schedule(in);
}

}  // namespace colorhook
