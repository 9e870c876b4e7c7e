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


#include "colorhook/experiment.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "colorhook/analysis.h"
#include "colorhook/frame_simulator.h"

namespace colorhook {

namespace {

struct WordsHash {
    size_t operator()(const std::vector<uint64_t> &words) const {
        uint64_t h = 0x84222325cbf29ce4ULL;
        for (auto w : words) {
            h = (h ^ w) * 0x100000001b3ULL;
            h ^= h >> 29;
        }
        return static_cast<size_t>(h);
    }
};

struct WorkerTally {
    uint64_t failures = 0;
    uint64_t inexact = 0;
};

std::string trim(std::string_view s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string_view::npos) {
        return "";
    }
    size_t b = s.find_last_not_of(" \t\r");
    return std::string(s.substr(a, b - a + 1));
}

template <typename T>
T parse_number(const std::string &key, const std::string &text) {
    T value{};
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
        throw std::invalid_argument("bad value for " + key + ": '" + text + "'");
    }
    return value;
}

double log_likelihood(uint64_t failures, uint64_t shots, double q) {
    double k = static_cast<double>(failures);
    double n = static_cast<double>(shots);
    double out = 0;
    if (failures > 0) {
        out += k * std::log(q);
    }
    if (failures < shots) {
        out += (n - k) * std::log1p(-q);
    }
    return out;
}

}  // namespace

double per_round_error(double p_shot, uint32_t rounds) {
    if (rounds == 0) {
        throw std::invalid_argument("rounds must be positive");
    }
    if (p_shot >= 0.5) {
        return 0.5;
    }
    return (1 - std::pow(1 - 2 * p_shot, 1.0 / rounds)) / 2;
}

std::pair<double, double> likelihood_interval(uint64_t failures, uint64_t shots, double factor) {
    if (shots == 0 || failures > shots) {
        throw std::invalid_argument("likelihood_interval needs 0 <= failures <= shots and shots > 0");
    }
    double mle = static_cast<double>(failures) / static_cast<double>(shots);
    double threshold = log_likelihood(failures, shots, mle) - std::log(factor);
    auto inside = [&](double q) {
        return log_likelihood(failures, shots, q) >= threshold;
    };
    auto crossing = [&](double in, double out) {
        for (int k = 0; k < 200; k++) {
            double mid = (in + out) / 2;
            (inside(mid) ? in : out) = mid;
        }
        return out;
    };
    double low = failures == 0 ? 0.0 : crossing(mle, 0.0);
    double high = failures == shots ? 1.0 : crossing(mle, 1.0);
    return {low, high};
}

unsigned worker_count() {
    if (const char *env = std::getenv("COLORHOOK_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentResult run_experiment(const ExperimentSpec &spec) {
    if (spec.shots == 0) {
        throw std::invalid_argument("shots must be at least 1");
    }
    uint32_t rounds = spec.effective_rounds();
    auto patch = build_patch(spec.distance);
    auto schedule = resolve_schedule(spec.schedule);
    auto circuit = build_memory_circuit(patch, schedule, rounds, spec.variant);
    if (spec.noise.p > 0) {
        circuit = annotate(circuit, spec.noise);
    }
    auto dem = compile_dem(circuit);
    MostLikelyErrorDecoder decoder(dem, spec.beam);

    uint64_t batches = (spec.shots + 63) / 64;
    unsigned workers = static_cast<unsigned>(std::min<uint64_t>(worker_count(), batches));
    std::vector<WorkerTally> tallies(workers);
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](unsigned w) {
        try {
            uint64_t b0 = batches * w / workers;
            uint64_t b1 = batches * (w + 1) / workers;
            uint64_t count = std::min(b1 * 64, spec.shots) - b0 * 64;
            std::unordered_map<std::vector<uint64_t>, DecodeResult, WordsHash> cache;
            auto &tally = tallies[w];
            stream_shots(
                circuit,
                count,
                spec.seed,
                [&](uint64_t, const ShotRecord &shot) {
                    bool predicted = false;
                    if (!shot.detectors.none()) {
                        auto it = cache.find(shot.detectors.words());
                        if (it == cache.end()) {
                            it = cache.emplace(shot.detectors.words(), decoder.decode(shot.detectors)).first;
                        }
                        predicted = it->second.predicted_flip;
                        tally.inexact += !it->second.exact;
                    }
                    tally.failures += predicted != shot.observable;
                },
                b0);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; w++) {
            threads.emplace_back(work, w);
        }
        for (auto &t : threads) {
            t.join();
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    ExperimentResult out;
    out.spec = spec;
    out.shots = spec.shots;
    for (const auto &t : tallies) {
        out.logical_failures += t.failures;
        out.inexact_decodes += t.inexact;
    }
    out.p_shot = static_cast<double>(out.logical_failures) / static_cast<double>(out.shots);
    out.p_round = per_round_error(out.p_shot, rounds);
    out.shot_interval = likelihood_interval(out.logical_failures, out.shots);
    out.round_interval = {
        per_round_error(out.shot_interval.first, rounds), per_round_error(out.shot_interval.second, rounds)};
    out.n_tot = patch.num_qubits();
    return out;
}

std::vector<ExperimentSpec> parse_experiment_config(std::string_view text) {
    static const std::vector<std::string> keys{"d", "rounds", "variant", "schedule", "noise", "shots", "seed", "beam"};
    std::map<std::string, std::vector<std::string>> values;
    std::istringstream in{std::string(text)};
    std::string line;
    size_t line_number = 0;
    while (std::getline(in, line)) {
        line_number++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        auto body = trim(line);
        if (body.empty()) {
            continue;
        }
        auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_number) + " has no '='");
        }
        auto key = trim(std::string_view(body).substr(0, eq));
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
        auto value = trim(std::string_view(body).substr(eq + 1));
        if (value.empty() || value.back() == ',') {
            throw std::invalid_argument("empty value for config key '" + key + "'");
        }
        std::vector<std::string> list;
        std::istringstream items(value);
        std::string item;
        while (std::getline(items, item, ',')) {
            auto v = trim(item);
            if (v.empty()) {
                throw std::invalid_argument("empty value for config key '" + key + "'");
            }
            list.push_back(v);
        }
        values[key] = std::move(list);
    }

    std::vector<ExperimentSpec> specs{ExperimentSpec{}};
    for (const auto &key : keys) {
        auto it = values.find(key);
        if (it == values.end()) {
            continue;
        }
        std::vector<ExperimentSpec> expanded;
        for (const auto &base : specs) {
            for (const auto &v : it->second) {
                auto spec = base;
                if (key == "d") {
                    spec.distance = parse_number<uint32_t>(key, v);
                } else if (key == "rounds") {
                    spec.rounds = parse_number<uint32_t>(key, v);
                } else if (key == "variant") {
                    spec.variant = parse_variant(v);
                } else if (key == "schedule") {
                    spec.schedule = v;
                } else if (key == "noise") {
                    spec.noise = parse_noise_spec(v);
                } else if (key == "shots") {
                    spec.shots = parse_number<uint64_t>(key, v);
                } else if (key == "seed") {
                    spec.seed = parse_number<uint64_t>(key, v);
                } else {
                    spec.beam = parse_number<size_t>(key, v);
                }
                expanded.push_back(std::move(spec));
            }
        }
        specs = std::move(expanded);
    }
    for (const auto &spec : specs) {
        if (spec.shots == 0) {
            throw std::invalid_argument("shots must be at least 1");
        }
    }
    return specs;
}

void write_sweep_row(std::ostream &out, const ExperimentResult &r) {
    const auto &s = r.spec;
    out << s.distance << ',' << s.effective_rounds() << ',' << variant_name(s.variant) << ',' << s.schedule << ','
        << format_noise_spec(s.noise) << ',' << r.shots << ',' << s.seed << ',' << r.n_tot << ',' << r.logical_failures
        << ',' << r.inexact_decodes << ',' << format_double(r.p_shot) << ',' << format_double(r.shot_interval.first)
        << ',' << format_double(r.shot_interval.second) << ',' << format_double(r.p_round) << ','
        << format_double(r.round_interval.first) << ',' << format_double(r.round_interval.second) << '\n';
}

void compare_sweep(std::ostream &out, const std::vector<ExperimentSpec> &specs) {
    if (specs.empty()) {
        throw std::invalid_argument("sweep needs at least one experiment");
    }
    out << SWEEP_CSV_HEADER << '\n';
    for (const auto &spec : specs) {
        write_sweep_row(out, run_experiment(spec));
    }
}

SlotOrder worst_uniform_order(const Patch &patch) {
    SlotOrder order{0, 1, 2, 3, 4, 5};
    SlotOrder worst = order;
    int most = -1;
    do {
        auto schedule = uniform_schedule(order);
        if (!check_conflicts(patch, schedule).conflict_free) {
            continue;
        }
        int malign = 0;
        for (const auto &hook : propagate_hooks(patch, schedule)) {
            malign += hook_augmented_distance(patch, {hook}, patch.distance - 1).value.has_value();
        }
        if (malign > most) {
            most = malign;
            worst = order;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return worst;
}

}  // namespace colorhook
