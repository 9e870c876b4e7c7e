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
#include <iterator>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace colorhook {

std::vector<HookError> propagate_hooks(const Patch &patch, const Schedule &schedule) {
    std::vector<HookError> out;
    for (const auto &face : patch.faces) {
        auto seq = face_gate_sequence(face, schedule);
        size_t w = seq.size();
        for (auto basis : {HookBasis::X, HookBasis::Z}) {
            for (size_t k = 2; k + 2 <= w; k++) {
                // A fault after k gates spreads to the w - k qubits still to be coupled; times the
                // stabilizer that is the k already coupled.
                std::vector<uint32_t> induced;
                if (k < w - k) {
                    for (size_t t = 0; t < k; t++) {
                        induced.push_back(seq[t].data_qubit);
                    }
                } else {
                    for (size_t t = k; t < w; t++) {
                        induced.push_back(seq[t].data_qubit);
                    }
                }
                out.push_back({face.id, basis, static_cast<uint8_t>(k), std::move(induced)});
            }
        }
    }
    return out;
}

std::vector<HookError> hooks_on(const Patch &patch, const std::vector<HookError> &hooks, FaceKind kind) {
    std::vector<HookError> out;
    for (const auto &h : hooks) {
        if (patch.faces[h.face].kind == kind) {
            out.push_back(h);
        }
    }
    return out;
}

std::vector<HookError> interior_hooks(const Patch &patch, const Schedule &schedule) {
    std::vector<HookError> out;
    for (auto &h : propagate_hooks(patch, schedule)) {
        if (is_interior(patch, patch.faces[h.face])) {
            out.push_back(std::move(h));
        }
    }
    return out;
}

std::array<uint8_t, 3> hook_slot_masks(const SlotOrder &order) {
    auto bit = [&](size_t t) {
        return static_cast<uint8_t>(1u << order[t]);
    };
    return {
        static_cast<uint8_t>(bit(0) | bit(1)),
        static_cast<uint8_t>(bit(3) | bit(4) | bit(5)),
        static_cast<uint8_t>(bit(4) | bit(5)),
    };
}

const std::vector<uint8_t> &malign_slot_masks(Color color) {
    static const std::array<std::vector<uint8_t>, 3> tables = [] {
        std::array<std::vector<uint8_t>, 3> out;
        Patch patch = build_patch(7);
        for (auto c : ALL_COLORS) {
            auto face = std::find_if(patch.faces.begin(), patch.faces.end(), [&](const Face &f) {
                return f.color == c && is_interior(patch, f);
            });
            if (face == patch.faces.end()) {
                throw std::logic_error("distance-7 patch has no interior face");
            }
            for (uint8_t mask = 0; mask < 64; mask++) {
                int w = __builtin_popcount(mask);
                if (w != 2 && w != 3) {
                    continue;
                }
                HookError hook{face->id, HookBasis::X, static_cast<uint8_t>(w), {}};
                for (size_t s = 0; s < NUM_SLOTS; s++) {
                    if (mask & (1u << s)) {
                        hook.induced_error.push_back(static_cast<uint32_t>(face->slot_qubits[s]));
                    }
                }
                if (hook_augmented_distance(patch, {hook}, patch.distance - 1).value) {
                    out[color_index(c)].push_back(mask);
                }
            }
        }
        return out;
    }();
    return tables[color_index(color)];
}

DistanceResult hook_augmented_distance(const Patch &patch, const std::vector<HookError> &hooks, size_t max_weight) {
    if (patch.distance > 7) {
        throw std::invalid_argument("hook-augmented distance is limited to patches of distance 7 or less");
    }
    std::vector<std::vector<uint32_t>> generators;
    generators.reserve(patch.num_data() + hooks.size());
    for (uint32_t q = 0; q < patch.num_data(); q++) {
        generators.push_back({q});
    }
    for (const auto &h : hooks) {
        generators.push_back(h.induced_error);
    }
    DistanceResult result;
    auto best = shortest_logical_combination(patch, generators, max_weight);
    if (best) {
        result.value = static_cast<uint32_t>(best->size());
        result.witness = std::move(*best);
    }
    return result;
}

}  // namespace colorhook

namespace colorhook {

namespace {

bool signature_matches(const Signature &s, const std::vector<uint32_t> &active, bool observable) {
    return s.observable == observable && s.detectors == active;
}

std::vector<uint32_t> xor_sorted(const std::vector<uint32_t> &a, const std::vector<uint32_t> &b) {
    std::vector<uint32_t> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

constexpr size_t MAX_PAIR_TABLE_CLASSES = 3000;

}  // namespace

struct LogicalFaultSearcher::State {
    std::vector<uint32_t> active;
    bool observable = false;
    std::vector<uint32_t> chosen;
    uint64_t chosen_hash = 0;
    std::unordered_set<uint64_t> visited;
};

LogicalFaultSearcher::LogicalFaultSearcher(const DetectorErrorModel &dem, std::vector<bool> allowed)
    : dem_(dem), allowed_(std::move(allowed)) {
    if (allowed_.empty()) {
        allowed_.assign(dem.classes.size(), true);
    }
    if (allowed_.size() != dem.classes.size()) {
        throw std::invalid_argument("allowed mask does not match the number of fault classes");
    }
    std::mt19937_64 rng(0x5eed);
    detector_keys_.resize(dem.num_detectors);
    for (auto &k : detector_keys_) {
        k = rng();
    }
    observable_key_ = rng();
    incident_.resize(dem.num_detectors);
    class_keys_.resize(dem.classes.size());
    std::vector<uint32_t> usable;
    for (uint32_t e = 0; e < dem.classes.size(); e++) {
        const auto &sig = dem.classes[e].signature;
        uint64_t key = sig.observable ? observable_key_ : 0;
        for (auto d : sig.detectors) {
            if (d >= dem.num_detectors) {
                throw std::invalid_argument("fault class refers to a detector outside the model");
            }
            key ^= detector_keys_[d];
        }
        class_keys_[e] = key;
        if (!allowed_[e]) {
            continue;
        }
        usable.push_back(e);
        max_class_size_ = std::max(max_class_size_, sig.detectors.size());
        for (auto d : sig.detectors) {
            incident_[d].push_back(e);
        }
        singles_.emplace(key, e);
    }
    if (usable.size() <= MAX_PAIR_TABLE_CLASSES) {
        have_pairs_ = true;
        pairs_.reserve(usable.size() * (usable.size() - 1) / 2);
        for (size_t a = 0; a < usable.size(); a++) {
            for (size_t b = a + 1; b < usable.size(); b++) {
                pairs_.emplace(class_keys_[usable[a]] ^ class_keys_[usable[b]], std::pair{usable[a], usable[b]});
            }
        }
    }
}

bool LogicalFaultSearcher::finish_single(State &state) {
    uint64_t target = state.observable ? 0 : observable_key_;
    for (auto d : state.active) {
        target ^= detector_keys_[d];
    }
    auto [lo, hi] = singles_.equal_range(target);
    for (auto it = lo; it != hi; ++it) {
        uint32_t e = it->second;
        if (std::find(state.chosen.begin(), state.chosen.end(), e) != state.chosen.end()) {
            continue;
        }
        if (signature_matches(dem_.classes[e].signature, state.active, !state.observable)) {
            state.chosen.push_back(e);
            return true;
        }
    }
    return false;
}

bool LogicalFaultSearcher::finish_pair(State &state) {
    uint64_t target = state.observable ? 0 : observable_key_;
    for (auto d : state.active) {
        target ^= detector_keys_[d];
    }
    auto [lo, hi] = pairs_.equal_range(target);
    for (auto it = lo; it != hi; ++it) {
        auto [a, b] = it->second;
        if (std::find(state.chosen.begin(), state.chosen.end(), a) != state.chosen.end() ||
            std::find(state.chosen.begin(), state.chosen.end(), b) != state.chosen.end()) {
            continue;
        }
        const auto &sa = dem_.classes[a].signature;
        const auto &sb = dem_.classes[b].signature;
        if ((sa.observable != sb.observable) == state.observable) {
            continue;
        }
        if (xor_sorted(sa.detectors, sb.detectors) == state.active) {
            state.chosen.push_back(a);
            state.chosen.push_back(b);
            return true;
        }
    }
    return false;
}

bool LogicalFaultSearcher::dfs(State &state, uint32_t budget) {
    if (state.active.empty()) {
        return false;
    }
    if (budget == 0 || state.active.size() > budget * max_class_size_) {
        return false;
    }
    if (budget == 1) {
        return finish_single(state);
    }
    if (budget == 2 && have_pairs_) {
        return finish_pair(state);
    }
    if (!state.visited.insert(state.chosen_hash ^ (static_cast<uint64_t>(budget) * 0x9e3779b97f4a7c15ULL)).second) {
        return false;
    }
    uint32_t pivot = state.active.front();
    for (auto d : state.active) {
        if (incident_[d].size() < incident_[pivot].size()) {
            pivot = d;
        }
    }
    for (auto e : incident_[pivot]) {
        if (std::find(state.chosen.begin(), state.chosen.end(), e) != state.chosen.end()) {
            continue;
        }
        const auto &sig = dem_.classes[e].signature;
        auto saved = state.active;
        state.active = xor_sorted(state.active, sig.detectors);
        state.observable ^= sig.observable;
        state.chosen.push_back(e);
        state.chosen_hash ^= class_keys_[e] * 0xff51afd7ed558ccdULL + e;
        if (state.active.empty() ? state.observable : dfs(state, budget - 1)) {
            return true;
        }
        state.chosen_hash ^= class_keys_[e] * 0xff51afd7ed558ccdULL + e;
        state.chosen.pop_back();
        state.observable ^= sig.observable;
        state.active = std::move(saved);
    }
    return false;
}

DistanceResult LogicalFaultSearcher::search(uint32_t max_weight, std::optional<size_t> required) {
    if (required && *required >= dem_.classes.size()) {
        throw std::out_of_range("required fault class does not exist");
    }
    DistanceResult result;
    for (uint32_t r = 1; r <= max_weight; r++) {
        std::vector<uint32_t> roots;
        if (required) {
            roots.push_back(static_cast<uint32_t>(*required));
        } else {
            for (uint32_t e = 0; e < dem_.classes.size(); e++) {
                if (allowed_[e] && dem_.classes[e].signature.observable) {
                    roots.push_back(e);
                }
            }
        }
        State state;
        for (auto e : roots) {
            const auto &sig = dem_.classes[e].signature;
            state.active = sig.detectors;
            state.observable = sig.observable;
            state.chosen = {e};
            state.chosen_hash = class_keys_[e] * 0xff51afd7ed558ccdULL + e;
            bool found = state.active.empty() ? (state.observable && r == 1) : dfs(state, r - 1);
            if (found) {
                result.value = static_cast<uint32_t>(state.chosen.size());
                result.witness.assign(state.chosen.begin(), state.chosen.end());
                return result;
            }
        }
    }
    return result;
}

DistanceResult logical_fault_search(
    const DetectorErrorModel &dem, uint32_t max_weight, const std::vector<bool> &allowed, std::optional<size_t> required) {
    LogicalFaultSearcher searcher(dem, allowed);
    return searcher.search(max_weight, required);
}

DistanceResult circuit_distance(const DetectorErrorModel &dem, uint32_t max_weight) {
    if (max_weight > 6) {
        throw std::invalid_argument("circuit distance search is limited to weight 6");
    }
    return logical_fault_search(dem, max_weight);
}

const char *fault_category_name(FaultCategory category) {
    switch (category) {
        case FaultCategory::Data:
            return "data";
        case FaultCategory::Measurement:
            return "measurement";
        case FaultCategory::Hook:
            return "hook";
        case FaultCategory::Other:
            return "other";
    }
    return "?";
}

std::vector<FaultClassInfo> classify_fault_classes(
    const Patch &patch, const CircuitIR &circuit, const DetectorErrorModel &dem) {
    auto num_data = static_cast<uint32_t>(patch.num_data());
    constexpr std::array<Pauli, 3> paulis{Pauli::X, Pauli::Y, Pauli::Z};

    std::vector<Fault> data_faults;
    std::vector<size_t> positions;
    for (size_t k = 0; k < circuit.instructions.size(); k++) {
        if (circuit.instructions[k].op == OpCode::TICK) {
            positions.push_back(k);
        }
    }
    positions.push_back(circuit.instructions.size());
    for (auto pos : positions) {
        for (uint32_t q = 0; q < num_data; q++) {
            for (auto p : paulis) {
                data_faults.push_back({pos, {{q, p}}});
            }
        }
    }

    std::vector<Fault> hook_faults;
    std::vector<uint32_t> gates_done(circuit.num_qubits, 0);
    for (size_t k = 0; k < circuit.instructions.size(); k++) {
        const auto &inst = circuit.instructions[k];
        if (is_reset(inst.op)) {
            for (auto q : inst.targets) {
                gates_done[q] = 0;
            }
        }
        if (inst.op != OpCode::CX && inst.op != OpCode::CY) {
            continue;
        }
        for (auto q : inst.targets) {
            if (q < num_data) {
                continue;
            }
            uint32_t done = ++gates_done[q];
            uint32_t w = static_cast<uint32_t>(patch.faces[q - num_data].weight());
            if (done >= 2 && done + 2 <= w) {
                for (auto p : paulis) {
                    hook_faults.push_back({k + 1, {{q, p}}});
                }
            }
        }
    }

    auto to_set = [&](const std::vector<Fault> &faults) {
        std::set<Signature> out;
        for (auto &s : fault_signatures(circuit, faults)) {
            if (!s.empty()) {
                out.insert(std::move(s));
            }
        }
        return out;
    };
    auto data_sigs = to_set(data_faults);
    auto hook_sigs = to_set(hook_faults);
    std::set<Signature> measurement_sigs;
    {
        std::vector<Signature> per_measurement(circuit.num_measurements());
        for (uint32_t d = 0; d < circuit.detectors.size(); d++) {
            for (auto m : circuit.detectors[d].measurements) {
                per_measurement[m].detectors.push_back(d);
            }
        }
        for (auto m : circuit.observable) {
            per_measurement[m].observable = !per_measurement[m].observable;
        }
        for (auto &s : per_measurement) {
            std::sort(s.detectors.begin(), s.detectors.end());
            if (!s.empty()) {
                measurement_sigs.insert(std::move(s));
            }
        }
    }

    std::vector<FaultClassInfo> out;
    for (const auto &cls : dem.classes) {
        FaultClassInfo info{};
        if (data_sigs.count(cls.signature)) {
            info.category = FaultCategory::Data;
        } else if (measurement_sigs.count(cls.signature)) {
            info.category = FaultCategory::Measurement;
        } else if (hook_sigs.count(cls.signature)) {
            info.category = FaultCategory::Hook;
        } else {
            info.category = FaultCategory::Other;
        }
        for (auto q : cls.source_qubits) {
            if (q >= num_data && q < patch.num_qubits()) {
                info.faces.push_back(q - num_data);
            }
        }
        info.corner_only = !info.faces.empty() && std::all_of(info.faces.begin(), info.faces.end(), [&](uint32_t f) {
            return patch.faces[f].kind == FaceKind::Corner;
        });
        out.push_back(std::move(info));
    }
    return out;
}

DistanceSetup distance_setup(const Patch &patch, const Schedule &schedule, uint32_t rounds) {
    DistanceSetup setup;
    auto noiseless = build_memory_circuit(patch, schedule, rounds ? rounds : patch.distance, Variant::XZ);
    setup.circuit = annotate(noiseless, {NoiseModel::UniformDepolarizing, 0.001});
    setup.dem = compile_dem(setup.circuit);
    setup.info = classify_fault_classes(patch, setup.circuit, setup.dem);
    return setup;
}

FractionalHookWitness find_fractional_hook_witness(const DistanceSetup &setup, uint32_t max_weight) {
    std::vector<bool> allowed;
    for (const auto &info : setup.info) {
        allowed.push_back(info.category != FaultCategory::Other);
    }
    FractionalHookWitness out;
    out.distance = logical_fault_search(setup.dem, max_weight, allowed);
    for (auto e : out.distance.witness) {
        auto c = setup.info[e].category;
        out.categories.push_back(c);
        out.hook_faults += c == FaultCategory::Hook;
        out.data_faults += c == FaultCategory::Data;
    }
    return out;
}

SingleFaultShortcuts single_fault_shortcuts(const DistanceSetup &setup, uint32_t max_weight) {
    std::vector<bool> base;
    for (const auto &info : setup.info) {
        base.push_back(info.category == FaultCategory::Data || info.category == FaultCategory::Measurement);
    }
    LogicalFaultSearcher searcher(setup.dem, base);
    SingleFaultShortcuts out;
    for (size_t e = 0; e < setup.info.size(); e++) {
        if (base[e]) {
            continue;
        }
        bool found = searcher.search(max_weight, e).value.has_value();
        if (setup.info[e].corner_only) {
            out.checked_corner++;
            if (found) {
                out.malign_corner.push_back(e);
            }
        } else {
            out.checked_noncorner++;
            if (found) {
                out.malign_noncorner.push_back(e);
            }
        }
    }
    return out;
}

void write_hook_report(std::ostream &out, const Patch &patch, const Schedule &schedule) {
    out << "# face color kind basis offset qubits distance verdict\n";
    for (const auto &hook : propagate_hooks(patch, schedule)) {
        const auto &face = patch.faces[hook.face];
        out << face.id << " " << color_char(face.color) << " " << face_kind_name(face.kind) << " "
            << (hook.basis == HookBasis::X ? "X" : "Z") << " " << static_cast<int>(hook.offset) << " ";
        for (size_t k = 0; k < hook.induced_error.size(); k++) {
            out << (k ? "," : "") << hook.induced_error[k];
        }
        if (patch.distance > 7) {
            out << " - -\n";
            continue;
        }
        auto r = hook_augmented_distance(patch, {hook}, patch.distance - 1);
        if (r.value) {
            out << " " << *r.value << " malign\n";
        } else {
            out << " " << patch.distance << " benign\n";
        }
    }
}

}  // namespace colorhook
