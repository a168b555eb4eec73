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

#include "qcds/logical/lowering.h"

namespace qcds {

std::vector<LogicalOp> toffoli_network(uint32_t a, uint32_t b, uint32_t t) {
    using K = LogicalKind;
    auto op1 = [](K k, uint32_t q) {
        return LogicalOp{k, {q}, {}, false};
    };
    auto cx = [](uint32_t c, uint32_t x) {
        return LogicalOp{K::CNOT, {c, x}, {}, false};
    };
    return {
        op1(K::H, t),
        cx(b, t),
        op1(K::Tdg, t),
        cx(a, t),
        op1(K::T, t),
        cx(b, t),
        op1(K::Tdg, t),
        cx(a, t),
        op1(K::T, b),
        op1(K::T, t),
        op1(K::H, t),
        cx(a, b),
        op1(K::T, a),
        op1(K::Tdg, b),
        cx(a, b),
    };
}

LogicalCircuit lower_to_surface_compatible(const LogicalCircuit &circuit) {
    circuit.validate();
    LogicalCircuit out;
    out.num_qubits = circuit.num_qubits;
    out.observables = circuit.observables;
    for (const auto &op : circuit.ops) {
        if (op.kind != LogicalKind::Toffoli) {
            out.ops.push_back(op);
            continue;
        }
        for (auto sub : toffoli_network(op.targets[0], op.targets[1], op.targets[2])) {
            sub.tag = op.tag;
            out.ops.push_back(std::move(sub));
        }
    }
    return out;
}

LogicalCircuit cliffordize(const LogicalCircuit &circuit) {
    LogicalCircuit out = circuit;
    for (auto &op : out.ops) {
        switch (op.kind) {
            case LogicalKind::Toffoli:
                throw std::invalid_argument("cliffordize requires a lowered circuit (found TOFFOLI)");
            case LogicalKind::T:
                op.kind = LogicalKind::S;
                op.nft_site = true;
                break;
            case LogicalKind::Tdg:
                op.kind = LogicalKind::Sdg;
                op.nft_site = true;
                break;
            default:
                break;
        }
    }
    return out;
}

}  // namespace qcds
