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

#include "qcds/logical/logical_circuit.h"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace qcds {

namespace {

struct KindInfo {
    LogicalKind kind;
    std::string_view name;
    size_t arity;
    bool clifford;
};

constexpr std::array<KindInfo, NUM_LOGICAL_KINDS> KIND_TABLE{{
    {LogicalKind::InitZ, "INITZ", 1, true},
    {LogicalKind::InitPlus, "INITPLUS", 1, true},
    {LogicalKind::MeasureZ, "MZ", 1, true},
    {LogicalKind::MeasureX, "MX", 1, true},
    {LogicalKind::X, "X", 1, true},
    {LogicalKind::Z, "Z", 1, true},
    {LogicalKind::H, "H", 1, true},
    {LogicalKind::S, "S", 1, true},
    {LogicalKind::Sdg, "SDG", 1, true},
    {LogicalKind::SqrtX, "SQRTX", 1, true},
    {LogicalKind::T, "T", 1, false},
    {LogicalKind::Tdg, "TDG", 1, false},
    {LogicalKind::CNOT, "CNOT", 2, true},
    {LogicalKind::Toffoli, "TOFFOLI", 3, false},
}};

const KindInfo &info(LogicalKind kind) {
    return KIND_TABLE[static_cast<size_t>(kind)];
}

struct Token {
    std::string_view text;
    size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    size_t k = 0;
    while (k < line.size()) {
        while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) {
            k++;
        }
        size_t start = k;
        while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') {
            k++;
        }
        if (k > start) {
            out.push_back({line.substr(start, k - start), start + 1});
        }
    }
    return out;
}

std::optional<uint32_t> parse_uint(std::string_view text) {
    uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

}  // namespace

std::string_view kind_name(LogicalKind kind) {
    return info(kind).name;
}

std::optional<LogicalKind> kind_from_name(std::string_view name) {
    for (const auto &e : KIND_TABLE) {
        if (e.name == name) {
            return e.kind;
        }
    }
    return std::nullopt;
}

size_t kind_arity(LogicalKind kind) {
    return info(kind).arity;
}

bool is_clifford(LogicalKind kind) {
    return info(kind).clifford;
}

ParseError::ParseError(size_t line, size_t column, const std::string &message)
    : std::invalid_argument(
          "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line(line),
      column(column) {
}

void LogicalCircuit::validate() const {
    for (size_t k = 0; k < ops.size(); k++) {
        const auto &op = ops[k];
        if (op.targets.size() != kind_arity(op.kind)) {
            throw std::invalid_argument("op " + std::to_string(k) + " has wrong arity");
        }
        for (size_t a = 0; a < op.targets.size(); a++) {
            if (op.targets[a] >= num_qubits) {
                throw std::invalid_argument("op " + std::to_string(k) + " targets qubit out of range");
            }
            for (size_t b = 0; b < a; b++) {
                if (op.targets[a] == op.targets[b]) {
                    throw std::invalid_argument("op " + std::to_string(k) + " repeats a target");
                }
            }
        }
    }
    for (const auto &obs : observables) {
        if (obs.empty()) {
            throw std::invalid_argument("empty observable");
        }
        for (const auto &term : obs) {
            if (term.qubit >= num_qubits) {
                throw std::invalid_argument("observable qubit out of range");
            }
            if (term.pauli != 'X' && term.pauli != 'Y' && term.pauli != 'Z') {
                throw std::invalid_argument("observable term must be X, Y or Z");
            }
        }
    }
}

std::string LogicalCircuit::str() const {
    std::stringstream out;
    out << "qubits " << num_qubits << "\n";
    for (const auto &op : ops) {
        out << kind_name(op.kind);
        for (auto t : op.targets) {
            out << ' ' << t;
        }
        if (op.nft_site) {
            out << " @nft";
        }
        if (!op.tag.empty()) {
            out << " @" << op.tag;
        }
        out << "\n";
    }
    for (const auto &obs : observables) {
        out << "OBSERVABLE";
        for (const auto &term : obs) {
            out << ' ' << term.pauli << term.qubit;
        }
        out << "\n";
    }
    return out.str();
}

LogicalCircuit parse_logical(std::string_view text) {
    LogicalCircuit result;
    bool have_header = false;
    size_t line_number = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        line_number++;

        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto tokens = tokenize(line);
        if (tokens.empty()) {
            if (end == text.size()) {
                break;
            }
            continue;
        }

        const Token &head = tokens[0];
        if (head.text == "qubits") {
            if (have_header) {
                throw ParseError(line_number, head.column, "duplicate 'qubits' header");
            }
            if (tokens.size() != 2) {
                throw ParseError(line_number, head.column, "expected 'qubits N'");
            }
            auto n = parse_uint(tokens[1].text);
            if (!n) {
                throw ParseError(line_number, tokens[1].column, "bad qubit count");
            }
            result.num_qubits = *n;
            have_header = true;
            continue;
        }
        if (!have_header) {
            throw ParseError(line_number, head.column, "missing 'qubits N' header");
        }

        if (head.text == "OBSERVABLE") {
            if (tokens.size() < 2) {
                throw ParseError(line_number, head.column, "empty observable");
            }
            PauliProduct obs;
            for (size_t k = 1; k < tokens.size(); k++) {
                const auto &tok = tokens[k];
                char p = tok.text.empty() ? '\0' : tok.text[0];
                auto q = tok.text.size() > 1 ? parse_uint(tok.text.substr(1)) : std::nullopt;
                if ((p != 'X' && p != 'Y' && p != 'Z') || !q) {
                    throw ParseError(line_number, tok.column, "bad Pauli term '" + std::string(tok.text) + "'");
                }
                if (*q >= result.num_qubits) {
                    throw ParseError(line_number, tok.column, "observable qubit out of range");
                }
                obs.push_back({p, *q});
            }
            result.observables.push_back(std::move(obs));
            continue;
        }

        auto kind = kind_from_name(head.text);
        if (!kind) {
            throw ParseError(line_number, head.column, "unknown gate '" + std::string(head.text) + "'");
        }
        LogicalOp op{*kind, {}, {}, false};
        for (size_t k = 1; k < tokens.size(); k++) {
            const auto &tok = tokens[k];
            if (tok.text[0] == '@') {
                if (tok.text == "@nft") {
                    op.nft_site = true;
                } else {
                    op.tag = std::string(tok.text.substr(1));
                }
                continue;
            }
            auto q = parse_uint(tok.text);
            if (!q) {
                throw ParseError(line_number, tok.column, "bad qubit index '" + std::string(tok.text) + "'");
            }
            if (*q >= result.num_qubits) {
                throw ParseError(line_number, tok.column, "qubit index out of range");
            }
            if (std::find(op.targets.begin(), op.targets.end(), *q) != op.targets.end()) {
                throw ParseError(line_number, tok.column, "repeated target");
            }
            op.targets.push_back(*q);
        }
        if (op.targets.size() != kind_arity(*kind)) {
            throw ParseError(
                line_number,
                head.column,
                std::string(head.text) + " expects " + std::to_string(kind_arity(*kind)) + " targets, got " +
                    std::to_string(op.targets.size()));
        }
        result.ops.push_back(std::move(op));
    }
    if (!have_header) {
        throw ParseError(line_number, 1, "missing 'qubits N' header");
    }
    return result;
}

GateCensus census(const LogicalCircuit &circuit) {
    GateCensus c;
    for (const auto &op : circuit.ops) {
        c.per_kind[static_cast<size_t>(op.kind)]++;
        if (op.kind == LogicalKind::T || op.kind == LogicalKind::Tdg) {
            c.t_count++;
        }
        if (op.kind == LogicalKind::Toffoli) {
            c.toffoli_count++;
        }
        if (op.nft_site) {
            c.nft_count++;
        }
    }
    return c;
}

}  // namespace qcds
