// Copyright 2026 The qcds Authors
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


#include "qcds/physical/circuit.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

namespace qcds {

namespace {

constexpr std::array<std::string_view, 17> GATE_NAMES{
    "H",
    "S",
    "SQRT_X",
    "CX",
    "R",
    "RX",
    "M",
    "MX",
    "MPP",
    "DEPOLARIZE1",
    "DEPOLARIZE2",
    "X_ERROR",
    "Z_ERROR",
    "TICK",
    "ROUND",
    "DETECTOR",
    "OBSERVABLE",
};

bool is_measurement(Gate g) {
    return g == Gate::M || g == Gate::MX || g == Gate::MPP;
}

[[noreturn]] void fail(size_t line, const std::string &msg) {
    throw std::invalid_argument("line " + std::to_string(line) + ": " + msg);
}

uint32_t parse_u32(std::string_view s, size_t line) {
    uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        fail(line, "bad integer '" + std::string(s) + "'");
    }
    return v;
}

int32_t parse_i32(std::string_view s, size_t line) {
    int32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        fail(line, "bad integer '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        size_t k = s.find(sep, start);
        out.push_back(s.substr(start, k == std::string_view::npos ? std::string_view::npos : k - start));
        if (k == std::string_view::npos) {
            return out;
        }
        start = k + 1;
    }
}

std::string fmt_prob(double p) {
    std::stringstream ss;
    ss.precision(17);
    ss << p;
    return ss.str();
}

}  // namespace

std::string_view gate_name(Gate g) {
    return GATE_NAMES[static_cast<size_t>(g)];
}

std::optional<Gate> gate_from_name(std::string_view name) {
    for (size_t k = 0; k < GATE_NAMES.size(); k++) {
        if (GATE_NAMES[k] == name) {
            return static_cast<Gate>(k);
        }
    }
    return std::nullopt;
}

bool is_noise(Gate g) {
    return g == Gate::DEPOLARIZE1 || g == Gate::DEPOLARIZE2 || g == Gate::X_ERROR || g == Gate::Z_ERROR;
}

bool is_annotation(Gate g) {
    return g == Gate::TICK || g == Gate::ROUND || g == Gate::DETECTOR || g == Gate::OBSERVABLE;
}

size_t PhysicalCircuit::num_measurements() const {
    size_t n = 0;
    for (const auto &inst : instructions) {
        if (inst.gate == Gate::M || inst.gate == Gate::MX) {
            n += inst.targets.size();
        } else if (inst.gate == Gate::MPP) {
            n++;
        }
    }
    return n;
}

void PhysicalCircuit::validate() const {
    size_t measured = 0;
    size_t dets = 0;
    for (size_t k = 0; k < instructions.size(); k++) {
        const auto &inst = instructions[k];
        auto where = [&]() { return "instruction " + std::to_string(k) + " (" + std::string(gate_name(inst.gate)) + ")"; };
        if (inst.gate == Gate::DETECTOR || inst.gate == Gate::OBSERVABLE) {
            std::vector<uint32_t> sorted = inst.targets;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
                throw std::invalid_argument(where() + " repeats a measurement");
            }
            for (auto m : inst.targets) {
                if (m >= measured) {
                    throw std::invalid_argument(where() + " references a future measurement");
                }
            }
            if (inst.gate == Gate::DETECTOR) {
                dets++;
            } else if (inst.arg < 0 || (uint32_t)inst.arg >= num_observables) {
                throw std::invalid_argument(where() + " has an out-of-range observable index");
            }
            continue;
        }
        for (auto t : inst.targets) {
            if ((t & QUBIT_MASK) >= num_qubits) {
                throw std::invalid_argument(where() + " targets a qubit out of range");
            }
        }
        if ((inst.gate == Gate::CX || inst.gate == Gate::DEPOLARIZE2) && inst.targets.size() % 2 != 0) {
            throw std::invalid_argument(where() + " needs target pairs");
        }
        if (is_noise(inst.gate) || inst.gate == Gate::M || inst.gate == Gate::MX) {
            if (!(inst.arg >= 0 && inst.arg <= 0.5) && !(inst.gate == Gate::X_ERROR && inst.arg <= 1)) {
                throw std::invalid_argument(where() + " has a probability outside [0, 0.5]");
            }
        }
        if (inst.gate == Gate::M || inst.gate == Gate::MX) {
            measured += inst.targets.size();
        } else if (inst.gate == Gate::MPP) {
            measured++;
        }
    }
    if (dets != detectors.size()) {
        throw std::invalid_argument("detector metadata does not match DETECTOR instructions");
    }
    if (!qubit_coords.empty() && qubit_coords.size() != num_qubits) {
        throw std::invalid_argument("qubit coordinate table has the wrong size");
    }
}

std::string PhysicalCircuit::str() const {
    std::stringstream out;
    out << "qubits " << num_qubits << "\n";
    out << "observables " << num_observables << "\n";
    for (size_t q = 0; q < qubit_coords.size(); q++) {
        out << "QUBIT " << q << ' ' << qubit_coords[q].str() << "\n";
    }
    size_t det = 0;
    for (const auto &inst : instructions) {
        out << gate_name(inst.gate);
        switch (inst.gate) {
            case Gate::DETECTOR: {
                const auto &info = detectors[det++];
                out << '(' << info.basis << ',' << info.ts << ',' << info.cell.r << ',' << info.cell.c << ','
                    << (info.postselect ? 1 : 0) << ')';
                for (auto m : inst.targets) {
                    out << " m[" << m << "]";
                }
                break;
            }
            case Gate::OBSERVABLE:
                out << ' ' << (uint32_t)inst.arg;
                for (auto m : inst.targets) {
                    out << " m[" << m << "]";
                }
                break;
            case Gate::MPP: {
                out << ' ';
                for (size_t k = 0; k < inst.targets.size(); k++) {
                    uint32_t t = inst.targets[k];
                    bool x = t & PAULI_X_BIT, z = t & PAULI_Z_BIT;
                    out << (k ? "*" : "") << (x && z ? 'Y' : x ? 'X' : 'Z') << (t & QUBIT_MASK);
                }
                break;
            }
            default:
                if (is_noise(inst.gate) || ((inst.gate == Gate::M || inst.gate == Gate::MX) && inst.arg > 0)) {
                    out << '(' << fmt_prob(inst.arg) << ')';
                }
                for (auto t : inst.targets) {
                    out << ' ' << t;
                }
                break;
        }
        out << "\n";
    }
    return out.str();
}

PhysicalCircuit parse_physical(std::string_view text) {
    PhysicalCircuit pc;
    std::istringstream in{std::string(text)};
    std::string raw;
    size_t line_no = 0;
    while (std::getline(in, raw)) {
        line_no++;
        std::string_view line = raw;
        if (auto h = line.find('#'); h != std::string_view::npos) {
            line = line.substr(0, h);
        }
        std::vector<std::string_view> toks;
        for (auto t : split(line, ' ')) {
            while (!t.empty() && (t.back() == '\r' || t.back() == '\t')) {
                t.remove_suffix(1);
            }
            if (!t.empty()) {
                toks.push_back(t);
            }
        }
        if (toks.empty()) {
            continue;
        }
        std::string_view head = toks[0];
        if (head == "qubits") {
            pc.num_qubits = parse_u32(toks.at(1), line_no);
            continue;
        }
        if (head == "observables") {
            pc.num_observables = parse_u32(toks.at(1), line_no);
            continue;
        }
        if (head == "QUBIT") {
            if (toks.size() != 3 || toks[2].size() < 5 || toks[2].front() != '(' || toks[2].back() != ')') {
                fail(line_no, "expected 'QUBIT q (r,c)'");
            }
            auto rc = split(toks[2].substr(1, toks[2].size() - 2), ',');
            if (rc.size() != 2) {
                fail(line_no, "bad coordinate");
            }
            uint32_t q = parse_u32(toks[1], line_no);
            if (q != pc.qubit_coords.size()) {
                fail(line_no, "QUBIT lines must be in order");
            }
            pc.qubit_coords.push_back({parse_i32(rc[0], line_no), parse_i32(rc[1], line_no)});
            continue;
        }
        std::string_view args;
        if (auto p = head.find('('); p != std::string_view::npos) {
            if (head.back() != ')') {
                fail(line_no, "unbalanced parenthesis");
            }
            args = head.substr(p + 1, head.size() - p - 2);
            head = head.substr(0, p);
        }
        auto gate = gate_from_name(head);
        if (!gate) {
            fail(line_no, "unknown instruction '" + std::string(head) + "'");
        }
        Instruction inst{*gate, 0, {}};
        size_t first = 1;
        if (*gate == Gate::DETECTOR) {
            DetectorInfo info;
            if (!args.empty()) {
                auto parts = split(args, ',');
                if (parts.size() != 5 || parts[0].size() != 1) {
                    fail(line_no, "DETECTOR metadata must be (basis,ts,r,c,postselect)");
                }
                info.basis = parts[0][0];
                info.ts = parse_i32(parts[1], line_no);
                info.cell = {parse_i32(parts[2], line_no), parse_i32(parts[3], line_no)};
                info.postselect = parse_u32(parts[4], line_no) != 0;
            }
            pc.detectors.push_back(info);
        } else if (*gate == Gate::OBSERVABLE) {
            if (toks.size() < 2) {
                fail(line_no, "OBSERVABLE needs an index");
            }
            inst.arg = parse_u32(toks[1], line_no);
            first = 2;
        } else if (!args.empty()) {
            try {
                inst.arg = std::stod(std::string(args));
            } catch (const std::exception &) {
                fail(line_no, "bad probability '" + std::string(args) + "'");
            }
        }
        for (size_t k = first; k < toks.size(); k++) {
            auto t = toks[k];
            if (*gate == Gate::DETECTOR || *gate == Gate::OBSERVABLE) {
                if (t.size() < 4 || t.substr(0, 2) != "m[" || t.back() != ']') {
                    fail(line_no, "expected m[index]");
                }
                inst.targets.push_back(parse_u32(t.substr(2, t.size() - 3), line_no));
            } else if (*gate == Gate::MPP) {
                for (auto term : split(t, '*')) {
                    if (term.size() < 2) {
                        fail(line_no, "bad Pauli product");
                    }
                    uint32_t bits = term[0] == 'X' ? PAULI_X_BIT
                                    : term[0] == 'Z' ? PAULI_Z_BIT
                                    : term[0] == 'Y' ? PAULI_X_BIT | PAULI_Z_BIT
                                                     : 0;
                    if (!bits) {
                        fail(line_no, "bad Pauli '" + std::string(term) + "'");
                    }
                    inst.targets.push_back(bits | parse_u32(term.substr(1), line_no));
                }
            } else {
                inst.targets.push_back(parse_u32(t, line_no));
            }
        }
        pc.instructions.push_back(std::move(inst));
    }
    pc.validate();
    return pc;
}

Table2Metrics physical_metrics(const PhysicalCircuit &pc) {
    Table2Metrics m;
    std::vector<uint8_t> used(pc.num_qubits, 0);
    std::vector<uint32_t> round_mark(pc.num_qubits, 0);
    uint32_t round_id = 0;
    size_t round_active = 0, tick_2q = 0, tick_meas = 0;
    auto close_tick = [&]() {
        m.max_parallel_2q = std::max(m.max_parallel_2q, tick_2q);
        m.max_parallel_meas = std::max(m.max_parallel_meas, tick_meas);
        tick_2q = tick_meas = 0;
    };
    auto close_round = [&]() {
        m.max_active_qubits = std::max(m.max_active_qubits, round_active);
        round_active = 0;
        round_id++;
    };
    round_id = 1;
    for (const auto &inst : pc.instructions) {
        if (inst.gate == Gate::TICK) {
            close_tick();
            continue;
        }
        if (inst.gate == Gate::ROUND) {
            close_tick();
            close_round();
            m.total_stabilizer_rounds++;
            continue;
        }
        if (is_annotation(inst.gate) || is_noise(inst.gate)) {
            continue;
        }
        for (auto t : inst.targets) {
            uint32_t q = t & QUBIT_MASK;
            used[q] = 1;
            if (round_mark[q] != round_id) {
                round_mark[q] = round_id;
                round_active++;
            }
        }
        if (inst.gate == Gate::CX) {
            tick_2q += inst.targets.size() / 2;
        } else if (is_measurement(inst.gate)) {
            size_t k = inst.gate == Gate::MPP ? 1 : inst.targets.size();
            tick_meas += k;
            m.total_physical_measurements += k;
        }
    }
    close_tick();
    close_round();
    for (auto u : used) {
        m.physical_qubits += u;
    }
    if (m.total_stabilizer_rounds) {
        m.avg_bits_per_round = (double)m.total_physical_measurements / (double)m.total_stabilizer_rounds;
    }
    return m;
}

}  // namespace qcds
