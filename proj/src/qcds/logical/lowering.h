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

#ifndef _QCDS_LOGICAL_LOWERING_H
#define _QCDS_LOGICAL_LOWERING_H

#include "qcds/logical/logical_circuit.h"

namespace qcds {

/// Replaces every Toffoli by the fixed 7-T network (6 CNOTs, 7 T/T-dagger,
/// Hadamards on the target). Other ops pass through unchanged.
LogicalCircuit lower_to_surface_compatible(const LogicalCircuit &circuit);

/// The 15-op network used for one Toffoli on (control_a, control_b, target).
std::vector<LogicalOp> toffoli_network(uint32_t control_a, uint32_t control_b, uint32_t target);

/// T -> S and T-dagger -> S-dagger, marking each substituted op as an nFT site.
/// Requires a circuit without Toffoli gates.
LogicalCircuit cliffordize(const LogicalCircuit &circuit);

}  // namespace qcds

#endif
