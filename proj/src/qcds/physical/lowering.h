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


#ifndef _QCDS_PHYSICAL_LOWERING_H
#define _QCDS_PHYSICAL_LOWERING_H

#include "qcds/physical/circuit.h"
#include "qcds/surface/surface_circuit.h"

namespace qcds {

struct LoweringOptions {
    /// Rounds after an injection whose detectors are tagged for post-selection.
    uint32_t postselect_rounds = 2;
    /// Only checks touching the corner's k x k block (the seed patch being
    /// expanded) are tagged; 0 tags the whole surface.
    uint32_t postselect_radius = 2;
    /// Appends a noiseless stabilizer round and a noiseless Y_L readout of
    /// this surface; the latter is the last observable.
    std::optional<Coord> measure_y_at_end;
};

/// Expands every timestamp into d rounds of the depth-8 stabilizer circuit.
/// Conditioned (feed-forward) ops are dropped; live surfaces they touch idle.
PhysicalCircuit lower_physical(const SurfaceCircuit &s, uint32_t d, const NoiseModel &nm,
                               const LoweringOptions &opts = {});

/// Single surface: init in `basis`, `blocks` timestamps of stabilizer rounds
/// (the first one includes the init), then a logical readout in `basis`.
SurfaceCircuit memory_schedule(char basis, size_t blocks);

/// Injection on one surface followed by `blocks - 1` idle timestamps, a
/// noiseless stabilizer round and a noiseless Y_L readout (observable 0).
PhysicalCircuit injection_experiment(uint32_t d, const NoiseModel &nm, size_t blocks = 1,
                                     uint32_t postselect_rounds = 2);

}  // namespace qcds

#endif
