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


#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "colorhook/analysis.h"
#include "colorhook/circuit.h"
#include "colorhook/decode.h"
#include "colorhook/experiment.h"
#include "colorhook/frame_simulator.h"
#include "colorhook/lattice.h"
#include "colorhook/noise.h"
#include "colorhook/schedule.h"

using namespace colorhook;

namespace {

std::string read_text(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <typename F>
void with_output(const std::string &path, bool binary, F &&write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    write(out);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"colorhook: color-code memory experiments with color-dependent schedules"};
    app.require_subcommand(1);

    uint32_t d = 3;
    uint32_t rounds = 0;
    std::string variant = "xz";
    std::string noise;
    std::string schedule = "default";
    std::string out_path;
    std::string in_path;

    auto *gen = app.add_subcommand("gen", "Build a memory-experiment circuit");
    gen->add_option("--d", d, "Code distance")->required();
    gen->add_option("--rounds", rounds, "Rounds (default d)");
    gen->add_option("--variant", variant, "xz or xyz");
    gen->add_option("--schedule", schedule, "default, uniform:<perm> or a schedule file");
    gen->add_option("--noise", noise, "<si1000|uniform|cnot>:<p>; omit for a noiseless circuit");
    gen->add_option("--out", out_path, "Output file (stdout if omitted)");
    gen->callback([&] {
        auto patch = build_patch(d);
        auto circuit = build_memory_circuit(patch, resolve_schedule(schedule), rounds ? rounds : d, parse_variant(variant));
        if (!noise.empty()) {
            circuit = annotate(circuit, parse_noise_spec(noise));
        }
        with_output(out_path, false, [&](std::ostream &o) {
            write_circuit(o, circuit);
        });
    });

    std::string what = "patch";
    auto *exp = app.add_subcommand("export", "Write a patch or a schedule in text form");
    exp->add_option("what", what, "patch or schedule")->check(CLI::IsMember({"patch", "schedule"}));
    exp->add_option("--d", d, "Code distance");
    exp->add_option("--schedule", schedule, "default, uniform:<perm> or a schedule file");
    exp->add_option("--out", out_path, "Output file (stdout if omitted)");
    exp->callback([&] {
        with_output(out_path, false, [&](std::ostream &o) {
            if (what == "patch") {
                write_patch(o, build_patch(d));
            } else {
                write_schedule(o, resolve_schedule(schedule));
            }
        });
    });

    auto *dem_cmd = app.add_subcommand("dem", "Compile the detector error model of a noisy circuit");
    dem_cmd->add_option("--in", in_path, "Circuit file")->required();
    dem_cmd->add_option("--out", out_path, "Output file (stdout if omitted)");
    dem_cmd->callback([&] {
        auto dem = compile_dem(parse_circuit(read_text(in_path)));
        with_output(out_path, false, [&](std::ostream &o) {
            write_dem(o, dem);
        });
    });

    uint64_t shots = 1000;
    uint64_t seed = 0;
    auto *sample = app.add_subcommand("sample", "Sample detector and observable bits (binary b8 layout)");
    sample->add_option("--in", in_path, "Circuit file")->required();
    sample->add_option("--shots", shots, "Number of shots");
    sample->add_option("--seed", seed, "Seed");
    sample->add_option("--out", out_path, "Output file (stdout if omitted)");
    sample->callback([&] {
        auto circuit = parse_circuit(read_text(in_path));
        auto records = sample_shots(circuit, shots, seed);
        with_output(out_path, true, [&](std::ostream &o) {
            write_shots_b8(o, records);
        });
    });

    std::string dem_path;
    std::string shots_path;
    size_t beam = DEFAULT_BEAM;
    auto *decode_cmd = app.add_subcommand("decode", "Decode sampled shots; prints one prediction per shot");
    decode_cmd->add_option("--dem", dem_path, "Detector error model file")->required();
    decode_cmd->add_option("--shots", shots_path, "Shot file written by sample")->required();
    decode_cmd->add_option("--beam", beam, "Open-set size before truncation");
    decode_cmd->add_option("--out", out_path, "Output file (stdout if omitted)");
    decode_cmd->callback([&] {
        std::istringstream dem_text(read_text(dem_path));
        auto dem = read_dem(dem_text);
        std::istringstream shot_bytes(read_text(shots_path));
        auto records = read_shots_b8(shot_bytes, dem.num_detectors);
        MostLikelyErrorDecoder decoder(dem, beam);
        uint64_t failures = 0;
        with_output(out_path, false, [&](std::ostream &o) {
            o << "# predicted observed exact\n";
            for (const auto &r : records) {
                auto result = decoder.decode(r.detectors);
                failures += result.predicted_flip != r.observable;
                o << result.predicted_flip << ' ' << r.observable << ' ' << result.exact << '\n';
            }
        });
        std::cerr << "logical failures: " << failures << " / " << records.size() << '\n';
    });

    std::string report_path;
    auto *hooks = app.add_subcommand("hooks", "Per-face hook malignancy table");
    hooks->add_option("--d", d, "Code distance")->required();
    hooks->add_option("--schedule", schedule, "default, uniform:<perm> or a schedule file");
    hooks->add_option("--report", report_path, "Output file (stdout if omitted)");
    hooks->callback([&] {
        auto patch = build_patch(d);
        auto s = resolve_schedule(schedule);
        with_output(report_path, false, [&](std::ostream &o) {
            write_hook_report(o, patch, s);
        });
    });

    uint32_t max_weight = 4;
    auto *dist = app.add_subcommand("distance", "Circuit-level distance of the XZ memory experiment");
    dist->add_option("--d", d, "Code distance")->required();
    dist->add_option("--schedule", schedule, "default, uniform:<perm> or a schedule file");
    dist->add_option("--rounds", rounds, "Rounds (default d)");
    dist->add_option("--max-weight", max_weight, "Largest weight searched (at most 6)");
    dist->callback([&] {
        auto patch = build_patch(d);
        auto setup = distance_setup(patch, resolve_schedule(schedule), rounds);
        auto result = circuit_distance(setup.dem, max_weight);
        if (!result.value) {
            std::cout << "distance > " << max_weight << '\n';
            return;
        }
        std::cout << "distance " << *result.value << '\n';
        for (auto e : result.witness) {
            const auto &cls = setup.dem.classes[e];
            std::cout << "  " << fault_category_name(setup.info[e].category) << " E(" << format_double(cls.probability)
                      << ")";
            for (auto det : cls.signature.detectors) {
                std::cout << " D" << det;
            }
            if (cls.signature.observable) {
                std::cout << " L0";
            }
            std::cout << '\n';
        }
    });

    std::string config_path;
    auto *sweep = app.add_subcommand("sweep", "Run memory experiments and write a CSV row for each");
    sweep->add_option("--config", config_path, "key = value file; comma-separated values are swept")->required();
    sweep->add_option("--out", out_path, "Output CSV (stdout if omitted)");
    sweep->callback([&] {
        auto specs = parse_experiment_config(read_text(config_path));
        with_output(out_path, false, [&](std::ostream &o) {
            compare_sweep(o, specs);
        });
    });

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
