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


#include "colorhook/decode.h"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace colorhook {

namespace {

struct Node {
    int64_t parent;
    uint32_t added;
    double g;
    double f;
    uint64_t seq;
    uint64_t key;
    bool observable;
    bool evaluated;
    std::vector<uint32_t> active;
};

std::vector<uint32_t> toggled(const std::vector<uint32_t> &a, const std::vector<uint32_t> &b) {
    std::vector<uint32_t> out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void check_syndrome(const DetectorErrorModel &dem, const BitVector &syndrome) {
    if (syndrome.size() != dem.num_detectors) {
        throw std::invalid_argument(
            "syndrome has " + std::to_string(syndrome.size()) + " detectors, model has " +
            std::to_string(dem.num_detectors));
    }
}

std::vector<uint64_t> random_keys(size_t n) {
    std::mt19937_64 rng(0xdec0de);
    std::vector<uint64_t> keys(n);
    for (auto &k : keys) {
        k = rng();
    }
    return keys;
}

}  // namespace

double class_cost(double probability) {
    return -std::log(probability / (1 - probability));
}

MostLikelyErrorDecoder::MostLikelyErrorDecoder(const DetectorErrorModel &dem, size_t beam)
    : dem_(dem), beam_(std::max<size_t>(beam, 1)), incident_(dem.num_detectors) {
    detector_keys_ = random_keys(dem.num_detectors);
    for (uint32_t e = 0; e < dem.classes.size(); e++) {
        const auto &cls = dem.classes[e];
        costs_.push_back(class_cost(cls.probability));
        for (auto d : cls.signature.detectors) {
            if (d >= dem.num_detectors) {
                throw std::invalid_argument("fault class refers to a detector outside the model");
            }
            incident_[d].push_back(e);
        }
    }
}

double MostLikelyErrorDecoder::heuristic(const std::vector<uint32_t> &active) const {
    double h = 0;
    for (auto d : active) {
        double best = std::numeric_limits<double>::infinity();
        for (auto e : incident_[d]) {
            const auto &dets = dem_.classes[e].signature.detectors;
            size_t hits = 0;
            for (auto x : dets) {
                hits += std::binary_search(active.begin(), active.end(), x);
            }
            best = std::min(best, costs_[e] / static_cast<double>(hits));
        }
        h += std::max(0.0, best);
    }
    return h;
}

DecodeResult MostLikelyErrorDecoder::decode(const BitVector &syndrome) const {
    check_syndrome(dem_, syndrome);
    DecodeResult out;
    for (size_t beam = beam_;; beam *= 2) {
        if (search(syndrome, beam, out)) {
            return out;
        }
    }
}

bool MostLikelyErrorDecoder::search(const BitVector &syndrome, size_t beam, DecodeResult &out) const {
    std::vector<Node> nodes;
    Node root{-1, 0, 0, 0, 0, 0, false, true, syndrome.ones()};
    for (auto d : root.active) {
        if (incident_[d].empty()) {
            throw std::runtime_error("no solution: detector " + std::to_string(d) + " is touched by no fault class");
        }
        root.key ^= detector_keys_[d];
    }
    root.f = heuristic(root.active);
    nodes.push_back(std::move(root));

    auto later = [&](size_t a, size_t b) {
        if (nodes[a].f != nodes[b].f) {
            return nodes[a].f > nodes[b].f;
        }
        if (nodes[a].g != nodes[b].g) {
            return nodes[a].g < nodes[b].g;
        }
        return nodes[a].seq > nodes[b].seq;
    };
    std::vector<size_t> open{0};
    std::unordered_map<uint64_t, double> best_g{{nodes[0].key, 0.0}};
    bool exact = true;
    uint64_t seq = 1;
    while (!open.empty()) {
        std::pop_heap(open.begin(), open.end(), later);
        size_t cur = open.back();
        open.pop_back();
        if (nodes[cur].g > best_g[nodes[cur].key]) {
            continue;
        }
        if (!nodes[cur].evaluated) {
            const auto &parent = nodes[static_cast<size_t>(nodes[cur].parent)];
            const auto &sig = dem_.classes[nodes[cur].added].signature;
            auto active = toggled(parent.active, sig.detectors);
            double f = nodes[cur].g + heuristic(active);
            nodes[cur].active = std::move(active);
            nodes[cur].observable = parent.observable ^ sig.observable;
            nodes[cur].evaluated = true;
            if (f > nodes[cur].f) {
                nodes[cur].f = f;
                open.push_back(cur);
                std::push_heap(open.begin(), open.end(), later);
                continue;
            }
        }
        if (nodes[cur].active.empty()) {
            out = DecodeResult{};
            out.predicted_flip = nodes[cur].observable;
            out.cost = nodes[cur].g;
            out.exact = exact;
            for (int64_t k = static_cast<int64_t>(cur); nodes[k].parent >= 0; k = nodes[k].parent) {
                out.fault_set.push_back(nodes[k].added);
            }
            std::sort(out.fault_set.begin(), out.fault_set.end());
            return true;
        }
        uint32_t pivot = *std::min_element(nodes[cur].active.begin(), nodes[cur].active.end(), [&](uint32_t a, uint32_t b) {
            return incident_[a].size() < incident_[b].size();
        });
        double h = nodes[cur].f - nodes[cur].g;
        for (auto e : incident_[pivot]) {
            const auto &sig = dem_.classes[e].signature;
            double g = nodes[cur].g + costs_[e];
            uint64_t key = nodes[cur].key;
            for (auto d : sig.detectors) {
                key ^= detector_keys_[d];
            }
            auto [it, fresh] = best_g.try_emplace(key, g);
            if (!fresh) {
                if (g >= it->second) {
                    continue;
                }
                it->second = g;
            }
            Node next;
            next.parent = static_cast<int64_t>(cur);
            next.added = e;
            next.g = g;
            next.key = key;
            next.f = g + std::max(0.0, h - costs_[e]);
            next.observable = false;
            next.evaluated = false;
            next.seq = seq++;
            nodes.push_back(std::move(next));
            open.push_back(nodes.size() - 1);
            std::push_heap(open.begin(), open.end(), later);
        }
        if (open.size() > 2 * beam) {
            std::sort(open.begin(), open.end(), [&](size_t a, size_t b) {
                return later(b, a);
            });
            open.resize(beam);
            std::make_heap(open.begin(), open.end(), later);
            exact = false;
        }
    }
    if (!exact) {
        return false;
    }
    throw std::runtime_error("no solution: syndrome is not produced by any set of fault classes");
}

DecodeResult decode(const DetectorErrorModel &dem, const BitVector &syndrome, size_t beam) {
    return MostLikelyErrorDecoder(dem, beam).decode(syndrome);
}

DecodeResult oracle_decode(const DetectorErrorModel &dem, const BitVector &syndrome, uint32_t w_max) {
    check_syndrome(dem, syndrome);
    if (w_max > 3) {
        throw std::invalid_argument("oracle_decode supports w_max <= 3");
    }
    if (dem.classes.size() > 2000) {
        throw std::invalid_argument("oracle_decode supports at most 2000 fault classes");
    }
    auto keys = random_keys(dem.num_detectors);
    size_t n = dem.classes.size();
    std::vector<uint64_t> class_key(n, 0);
    std::vector<double> cost(n);
    std::unordered_multimap<uint64_t, uint32_t> by_key;
    for (uint32_t e = 0; e < n; e++) {
        for (auto d : dem.classes[e].signature.detectors) {
            class_key[e] ^= keys[d];
        }
        cost[e] = class_cost(dem.classes[e].probability);
        by_key.emplace(class_key[e], e);
    }
    auto target = syndrome.ones();
    uint64_t target_key = 0;
    for (auto d : target) {
        target_key ^= keys[d];
    }

    bool found = false;
    DecodeResult best;
    auto consider = [&](std::vector<uint32_t> set) {
        std::vector<uint32_t> dets;
        bool flip = false;
        double total = 0;
        for (auto e : set) {
            dets = toggled(dets, dem.classes[e].signature.detectors);
            flip ^= dem.classes[e].signature.observable;
            total += cost[e];
        }
        if (dets != target) {
            return;
        }
        bool better = !found || total < best.cost - 1e-9 ||
                      (std::abs(total - best.cost) <= 1e-9 && set < best.fault_set);
        if (better) {
            found = true;
            best.cost = total;
            best.fault_set = std::move(set);
            best.predicted_flip = flip;
        }
    };
    auto matches = [&](uint64_t key, uint32_t above, const std::vector<uint32_t> &prefix) {
        auto [lo, hi] = by_key.equal_range(key);
        for (auto it = lo; it != hi; ++it) {
            if (prefix.empty() || it->second > above) {
                auto set = prefix;
                set.push_back(it->second);
                consider(std::move(set));
            }
        }
    };

    if (target.empty()) {
        consider({});
    }
    if (w_max >= 1) {
        matches(target_key, 0, {});
    }
    for (uint32_t a = 0; a < n && w_max >= 2; a++) {
        matches(target_key ^ class_key[a], a, {a});
        for (uint32_t b = a + 1; b < n && w_max >= 3; b++) {
            matches(target_key ^ class_key[a] ^ class_key[b], b, {a, b});
        }
    }
    if (!found) {
        throw std::runtime_error("not found within w_max = " + std::to_string(w_max));
    }
    return best;
}

}  // namespace colorhook
