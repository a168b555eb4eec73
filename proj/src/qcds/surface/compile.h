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


#ifndef _QCDS_SURFACE_COMPILE_H
#define _QCDS_SURFACE_COMPILE_H

#include "qcds/logical/logical_circuit.h"
#include "qcds/surface/surface_circuit.h"

namespace qcds {

class AllocationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Schedules a surface-compatible circuit (no Toffolis) on a width x height
/// grid. Logical qubit q lives on cell (q, q); CNOTs route through the
/// ancilla at (row of target, column of control); magic states and |S>
/// states are prepared on a vertical neighbour.
///
/// Hadamards are only supported directly after initialization or directly
/// before measurement, where they are absorbed into the basis.
SurfaceCircuit compile_schedule(const LogicalCircuit &circuit, uint32_t width, uint32_t height);

}  // namespace qcds

#endif
