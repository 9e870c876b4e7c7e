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

#include "colorhook/circuit.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace colorhook {

namespace {

struct OpInfo {
    OpCode op;
    std::string_view name;
};

constexpr std::array<OpInfo, 11> OPS{{
    {OpCode::R, "R"},
    {OpCode::RX, "RX"},
    {OpCode::M, "M"},
    {OpCode::MX, "MX"},
    {OpCode::CX, "CX"},
    {OpCode::CY, "CY"},
    {OpCode::TICK, "TICK"},
    {OpCode::DEPOLARIZE1, "DEPOLARIZE1"},
    {OpCode::DEPOLARIZE2, "DEPOLARIZE2"},
    {OpCode::X_ERROR, "X_ERROR"},
    {OpCode::Z_ERROR, "Z_ERROR"},
}};

std::optional<OpCode> lookup_op(std::string_view name) {
    for (const auto &info : OPS) {
        if (info.name == name) {
            return info.op;
        }
    }
    if (name == "CNOT" || name == "ZCX") {
        return OpCode::CX;
    }
    if (name == "ZCY") {
        return OpCode::CY;
    }
    if (name == "MZ") {
        return OpCode::M;
    }
    if (name == "RZ") {
        return OpCode::R;
    }
    return std::nullopt;
}

enum class CheckBasis : uint8_t { X, Y, Z };

CheckBasis check_basis(Variant variant, uint32_t extraction) {
    if (variant == Variant::XZ) {
        return extraction % 2 == 0 ? CheckBasis::X : CheckBasis::Z;
    }
    switch (extraction % 3) {
        case 0:
            return CheckBasis::X;
        case 1:
            return CheckBasis::Y;
        default:
            return CheckBasis::Z;
    }
}

class CircuitBuilder {
   public:
    explicit CircuitBuilder(CircuitIR &circuit) : circuit_(circuit) {
    }

    void append(OpCode op, std::vector<uint32_t> targets, double arg = 0) {
        if (targets.empty()) {
            return;
        }
        if (is_measurement(op)) {
            num_measurements_ += static_cast<uint32_t>(targets.size());
        }
        circuit_.instructions.push_back(Instruction{op, arg, std::move(targets)});
    }
    void tick() {
        circuit_.instructions.push_back(Instruction{OpCode::TICK, 0, {}});
    }
    uint32_t num_measurements() const {
        return num_measurements_;
    }

   private:
    CircuitIR &circuit_;
    uint32_t num_measurements_ = 0;
};

}  // namespace

std::string_view op_name(OpCode op) {
    for (const auto &info : OPS) {
        if (info.op == op) {
            return info.name;
        }
    }
    return "?";
}

bool is_noise(OpCode op) {
    return op == OpCode::DEPOLARIZE1 || op == OpCode::DEPOLARIZE2 || op == OpCode::X_ERROR || op == OpCode::Z_ERROR;
}

bool is_two_qubit(OpCode op) {
    return op == OpCode::CX || op == OpCode::CY || op == OpCode::DEPOLARIZE2;
}

bool is_measurement(OpCode op) {
    return op == OpCode::M || op == OpCode::MX;
}

bool is_reset(OpCode op) {
    return op == OpCode::R || op == OpCode::RX;
}

std::string_view variant_name(Variant v) {
    return v == Variant::XZ ? "xz" : "xyz";
}

Variant parse_variant(std::string_view text) {
    if (text == "xz" || text == "XZ") {
        return Variant::XZ;
    }
    if (text == "xyz" || text == "XYZ") {
        return Variant::XYZ;
    }
    throw std::invalid_argument("unknown circuit variant '" + std::string(text) + "'");
}

size_t CircuitIR::num_measurements() const {
    size_t total = 0;
    for (const auto &inst : instructions) {
        if (is_measurement(inst.op)) {
            total += inst.targets.size();
        }
    }
    return total;
}

size_t CircuitIR::num_ticks() const {
    return static_cast<size_t>(
        std::count_if(instructions.begin(), instructions.end(), [](const Instruction &inst) {
            return inst.op == OpCode::TICK;
        }));
}

bool CircuitIR::has_noise() const {
    return std::any_of(instructions.begin(), instructions.end(), [](const Instruction &inst) {
        return is_noise(inst.op);
    });
}

CircuitIR build_memory_circuit(const Patch &patch, const Schedule &schedule, uint32_t rounds, Variant variant) {
    if (rounds == 0) {
        throw std::invalid_argument("a memory circuit needs at least one round");
    }
    validate_schedule(schedule);

    CircuitIR circuit;
    circuit.num_qubits = static_cast<uint32_t>(patch.num_qubits());
    for (uint32_t q = 0; q < circuit.num_qubits; q++) {
        auto c = patch.qubit_coord(q);
        circuit.qubit_coords.push_back({static_cast<double>(c.i), static_cast<double>(c.j)});
    }

    std::vector<uint32_t> data(patch.num_data());
    for (uint32_t q = 0; q < data.size(); q++) {
        data[q] = q;
    }
    std::vector<uint32_t> aux;
    for (const auto &face : patch.faces) {
        aux.push_back(face.aux_qubit);
    }
    std::vector<std::vector<GateStep>> sequences;
    for (const auto &face : patch.faces) {
        sequences.push_back(face_gate_sequence(face, schedule));
    }

    uint32_t per_round = variant == Variant::XZ ? 2 : 1;
    uint32_t num_extractions = rounds * per_round;
    size_t num_faces = patch.num_faces();

    // history[f] holds the record indices of the face's measurements, newest last.
    std::vector<std::vector<uint32_t>> history(num_faces);
    std::vector<std::optional<uint32_t>> last_z(num_faces);
    std::vector<std::optional<uint32_t>> last_x(num_faces);

    CircuitBuilder b(circuit);
    for (uint32_t e = 0; e < num_extractions; e++) {
        CheckBasis basis = check_basis(variant, e);
        if (e == 0) {
            b.append(OpCode::R, data);
        }
        b.append(basis == CheckBasis::Z ? OpCode::R : OpCode::RX, aux);
        b.tick();

        for (size_t step = 0; step < NUM_GATE_STEPS; step++) {
            std::vector<uint32_t> pairs;
            for (size_t f = 0; f < num_faces; f++) {
                for (const auto &g : sequences[f]) {
                    if (g.step != step) {
                        continue;
                    }
                    if (basis == CheckBasis::Z) {
                        pairs.push_back(g.data_qubit);
                        pairs.push_back(aux[f]);
                    } else {
                        pairs.push_back(aux[f]);
                        pairs.push_back(g.data_qubit);
                    }
                }
            }
            b.append(basis == CheckBasis::Y ? OpCode::CY : OpCode::CX, std::move(pairs));
            b.tick();
        }

        uint32_t first = b.num_measurements();
        b.append(basis == CheckBasis::Z ? OpCode::M : OpCode::MX, aux);
        bool last = e + 1 == num_extractions;
        uint32_t data_first = b.num_measurements();
        if (last) {
            b.append(OpCode::M, data);
        }

        double t = static_cast<double>(e);
        for (size_t f = 0; f < num_faces; f++) {
            uint32_t m = first + static_cast<uint32_t>(f);
            const auto &c = patch.faces[f].center;
            Detector det;
            det.coords = {static_cast<double>(c.i), static_cast<double>(c.j), t};
            if (variant == Variant::XZ) {
                if (basis == CheckBasis::X) {
                    if (last_x[f]) {
                        det.measurements = {*last_x[f], m};
                    }
                    last_x[f] = m;
                } else {
                    det.measurements = last_z[f] ? std::vector<uint32_t>{*last_z[f], m} : std::vector<uint32_t>{m};
                    last_z[f] = m;
                }
            } else {
                auto &h = history[f];
                if (h.size() >= 2) {
                    det.measurements = {h[h.size() - 2], h[h.size() - 1], m};
                } else if (h.size() == 1) {
                    det.measurements = {h[0], m};
                }
                if (basis == CheckBasis::Z) {
                    last_z[f] = m;
                }
            }
            history[f].push_back(m);
            if (!det.measurements.empty()) {
                circuit.detectors.push_back(std::move(det));
            }
        }

        if (last) {
            for (size_t f = 0; f < num_faces; f++) {
                const auto &c = patch.faces[f].center;
                Detector det;
                det.coords = {static_cast<double>(c.i), static_cast<double>(c.j), t + 1};
                if (last_z[f]) {
                    det.measurements.push_back(*last_z[f]);
                }
                for (auto q : patch.faces[f].data_slots) {
                    det.measurements.push_back(data_first + q);
                }
                circuit.detectors.push_back(std::move(det));
            }
            for (auto q : patch.logical_z_support) {
                circuit.observable.push_back(data_first + q);
            }
        } else {
            b.tick();
        }
    }
    return circuit;
}

void validate_circuit(const CircuitIR &circuit) {
    if (circuit.qubit_coords.size() != circuit.num_qubits) {
        throw std::logic_error("qubit coordinate count does not match the qubit count");
    }
    std::vector<bool> busy(circuit.num_qubits, false);
    std::vector<uint32_t> touched;
    for (size_t k = 0; k < circuit.instructions.size(); k++) {
        const auto &inst = circuit.instructions[k];
        if (inst.op == OpCode::TICK) {
            for (auto q : touched) {
                busy[q] = false;
            }
            touched.clear();
            continue;
        }
        if (inst.targets.empty()) {
            throw std::logic_error("instruction " + std::to_string(k) + " has no targets");
        }
        if (is_two_qubit(inst.op) && inst.targets.size() % 2 != 0) {
            throw std::logic_error("instruction " + std::to_string(k) + " has an odd number of pair targets");
        }
        if (is_noise(inst.op) && (inst.arg < 0 || inst.arg > 1)) {
            throw std::logic_error("instruction " + std::to_string(k) + " has a probability outside [0, 1]");
        }
        for (size_t t = 0; t < inst.targets.size(); t++) {
            uint32_t q = inst.targets[t];
            if (q >= circuit.num_qubits) {
                throw std::logic_error("instruction " + std::to_string(k) + " targets unknown qubit " + std::to_string(q));
            }
            if (is_two_qubit(inst.op) && t % 2 == 1 && inst.targets[t - 1] == q) {
                throw std::logic_error("instruction " + std::to_string(k) + " pairs qubit " + std::to_string(q) + " with itself");
            }
            if (is_noise(inst.op)) {
                continue;
            }
            if (busy[q]) {
                throw std::logic_error(
                    "qubit " + std::to_string(q) + " is used twice in the layer of instruction " + std::to_string(k));
            }
            busy[q] = true;
            touched.push_back(q);
        }
    }
    size_t num_measurements = circuit.num_measurements();
    for (size_t k = 0; k < circuit.detectors.size(); k++) {
        for (auto m : circuit.detectors[k].measurements) {
            if (m >= num_measurements) {
                throw std::logic_error("detector " + std::to_string(k) + " refers to a missing measurement");
            }
        }
    }
    for (auto m : circuit.observable) {
        if (m >= num_measurements) {
            throw std::logic_error("observable refers to a missing measurement");
        }
    }
}

std::string format_double(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("failed to format a number");
    }
    return std::string(buf.data(), end);
}

namespace {

void write_record_targets(std::ostream &out, const std::vector<uint32_t> &measurements, size_t measured) {
    for (auto m : measurements) {
        out << " rec[-" << (measured - m) << "]";
    }
}

void write_detector(std::ostream &out, const Detector &det, size_t measured) {
    out << "DETECTOR";
    if (!det.coords.empty()) {
        out << "(";
        for (size_t k = 0; k < det.coords.size(); k++) {
            out << (k ? ", " : "") << format_double(det.coords[k]);
        }
        out << ")";
    }
    write_record_targets(out, det.measurements, measured);
    out << "\n";
}

}  // namespace

void write_circuit(std::ostream &out, const CircuitIR &circuit) {
    for (uint32_t q = 0; q < circuit.num_qubits; q++) {
        const auto &c = circuit.qubit_coords[q];
        out << "QUBIT_COORDS(" << format_double(c[0]) << ", " << format_double(c[1]) << ") " << q << "\n";
    }
    size_t measured = 0;
    size_t next_detector = 0;
    auto flush_detectors = [&]() {
        while (next_detector < circuit.detectors.size()) {
            const auto &det = circuit.detectors[next_detector];
            auto newest = std::max_element(det.measurements.begin(), det.measurements.end());
            if (newest != det.measurements.end() && *newest >= measured) {
                break;
            }
            write_detector(out, det, measured);
            next_detector++;
        }
    };
    for (const auto &inst : circuit.instructions) {
        out << op_name(inst.op);
        if (is_noise(inst.op)) {
            out << "(" << format_double(inst.arg) << ")";
        }
        for (auto q : inst.targets) {
            out << " " << q;
        }
        out << "\n";
        if (is_measurement(inst.op)) {
            measured += inst.targets.size();
            flush_detectors();
        }
    }
    flush_detectors();
    if (next_detector != circuit.detectors.size()) {
        throw std::invalid_argument("a detector refers to a measurement the circuit never makes");
    }
    if (!circuit.observable.empty()) {
        out << "OBSERVABLE_INCLUDE(0)";
        write_record_targets(out, circuit.observable, measured);
        out << "\n";
    }
}

std::string export_circuit(const CircuitIR &circuit) {
    std::ostringstream out;
    write_circuit(out, circuit);
    return out.str();
}

namespace {

[[noreturn]] void parse_error(size_t line, const std::string &message) {
    throw std::invalid_argument("circuit line " + std::to_string(line) + ": " + message);
}

double parse_number(std::string_view text, size_t line) {
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    double value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        parse_error(line, "bad number '" + std::string(text) + "'");
    }
    return value;
}

uint32_t parse_index(std::string_view text, size_t line) {
    uint32_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        parse_error(line, "bad target '" + std::string(text) + "'");
    }
    return value;
}

std::vector<double> parse_args(std::string_view text, size_t line) {
    std::vector<double> args;
    while (!text.empty()) {
        size_t comma = text.find(',');
        args.push_back(parse_number(text.substr(0, comma), line));
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return args;
}

std::vector<uint32_t> parse_records(const std::vector<std::string> &tokens, size_t measured, size_t line) {
    std::vector<uint32_t> out;
    for (const auto &tok : tokens) {
        std::string_view t = tok;
        if (t.substr(0, 5) != "rec[-" || t.back() != ']') {
            parse_error(line, "expected a record target, got '" + tok + "'");
        }
        uint32_t back = parse_index(t.substr(5, t.size() - 6), line);
        if (back == 0 || back > measured) {
            parse_error(line, "record target '" + tok + "' is out of range");
        }
        out.push_back(static_cast<uint32_t>(measured - back));
    }
    return out;
}

}  // namespace

CircuitIR parse_circuit(std::string_view text) {
    CircuitIR circuit;
    std::vector<std::pair<uint32_t, std::array<double, 2>>> coords;
    uint32_t max_qubit_plus_one = 0;
    size_t measured = 0;
    size_t line_number = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        line_number++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::string head;
        std::string args_text;
        std::vector<std::string> tokens;
        {
            size_t open = line.find('(');
            size_t space = line.find_first_of(" \t");
            std::string rest;
            if (open != std::string::npos && (space == std::string::npos || open < space)) {
                size_t close = line.find(')', open);
                if (close == std::string::npos) {
                    parse_error(line_number, "unbalanced parenthesis");
                }
                head = line.substr(0, open);
                args_text = line.substr(open + 1, close - open - 1);
                rest = line.substr(close + 1);
            } else {
                std::istringstream words(line);
                words >> head;
                std::getline(words, rest);
            }
            std::istringstream words(rest);
            tokens.assign(std::istream_iterator<std::string>(words), std::istream_iterator<std::string>());
            size_t start = head.find_first_not_of(" \t");
            head = start == std::string::npos ? "" : head.substr(start);
        }
        if (head.empty()) {
            continue;
        }
        auto args = parse_args(args_text, line_number);

        if (head == "QUBIT_COORDS") {
            if (args.size() != 2 || tokens.size() != 1) {
                parse_error(line_number, "QUBIT_COORDS takes two coordinates and one qubit");
            }
            uint32_t q = parse_index(tokens[0], line_number);
            coords.push_back({q, {args[0], args[1]}});
            max_qubit_plus_one = std::max(max_qubit_plus_one, q + 1);
            continue;
        }
        if (head == "DETECTOR") {
            circuit.detectors.push_back(Detector{parse_records(tokens, measured, line_number), args});
            continue;
        }
        if (head == "OBSERVABLE_INCLUDE") {
            if (args.size() != 1 || args[0] != 0) {
                parse_error(line_number, "only observable 0 is supported");
            }
            auto recs = parse_records(tokens, measured, line_number);
            circuit.observable.insert(circuit.observable.end(), recs.begin(), recs.end());
            continue;
        }
        auto op = lookup_op(head);
        if (!op) {
            parse_error(line_number, "unsupported instruction '" + head + "'");
        }
        Instruction inst{*op, 0, {}};
        if (is_noise(*op)) {
            if (args.size() != 1) {
                parse_error(line_number, head + " takes one probability");
            }
            inst.arg = args[0];
        } else if (!args.empty()) {
            parse_error(line_number, head + " takes no arguments");
        }
        for (const auto &tok : tokens) {
            uint32_t q = parse_index(tok, line_number);
            inst.targets.push_back(q);
            max_qubit_plus_one = std::max(max_qubit_plus_one, q + 1);
        }
        if (*op != OpCode::TICK && inst.targets.empty()) {
            parse_error(line_number, head + " needs targets");
        }
        if (is_measurement(*op)) {
            measured += inst.targets.size();
        }
        circuit.instructions.push_back(std::move(inst));
    }
    circuit.num_qubits = max_qubit_plus_one;
    circuit.qubit_coords.assign(circuit.num_qubits, {0, 0});
    for (const auto &[q, c] : coords) {
        circuit.qubit_coords[q] = c;
    }
    return circuit;
}

CircuitIR read_circuit(std::istream &in) {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_circuit(text);
}

}  // namespace colorhook
