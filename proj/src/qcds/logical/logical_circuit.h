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

#ifndef _QCDS_LOGICAL_LOGICAL_CIRCUIT_H
#define _QCDS_LOGICAL_LOGICAL_CIRCUIT_H

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qcds {

enum class LogicalKind : uint8_t {
    InitZ,
    InitPlus,
    MeasureZ,
    MeasureX,
    X,
    Z,
    H,
    S,
    Sdg,
    SqrtX,
    T,
    Tdg,
    CNOT,
    Toffoli,
};

inline constexpr size_t NUM_LOGICAL_KINDS = 14;

/// Text mnemonic used by the line format (e.g. "INITZ", "MZ", "TOFFOLI").
std::string_view kind_name(LogicalKind kind);
std::optional<LogicalKind> kind_from_name(std::string_view name);
size_t kind_arity(LogicalKind kind);
bool is_clifford(LogicalKind kind);

struct LogicalOp {
    LogicalKind kind;
    std::vector<uint32_t> targets;
    std::string tag;
    /// Set on S/Sdg gates that stand in for a T/Tdg; each one becomes a
    /// non-fault-tolerant injection site downstream.
    bool nft_site = false;

    bool operator==(const LogicalOp &other) const = default;
};

/// One Pauli factor of a logical observable.
struct PauliTerm {
    char pauli;  // 'X', 'Y' or 'Z'
    uint32_t qubit;
    bool operator==(const PauliTerm &other) const = default;
};
using PauliProduct = std::vector<PauliTerm>;

struct LogicalCircuit {
    uint32_t num_qubits = 0;
    std::vector<LogicalOp> ops;
    std::vector<PauliProduct> observables;

    /// Throws std::invalid_argument on the first broken invariant.
    void validate() const;
    std::string str() const;
    bool operator==(const LogicalCircuit &other) const = default;
};

struct GateCensus {
    std::array<size_t, NUM_LOGICAL_KINDS> per_kind{};
    size_t t_count = 0;
    size_t toffoli_count = 0;
    size_t nft_count = 0;

    size_t count(LogicalKind kind) const {
        return per_kind[static_cast<size_t>(kind)];
    }
};

class ParseError : public std::invalid_argument {
   public:
    ParseError(size_t line, size_t column, const std::string &message);
    size_t line;
    size_t column;
};

LogicalCircuit parse_logical(std::string_view text);
GateCensus census(const LogicalCircuit &circuit);

}  // namespace qcds

#endif
