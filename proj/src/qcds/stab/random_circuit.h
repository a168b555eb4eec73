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


#ifndef _QCDS_STAB_RANDOM_CIRCUIT_H
#define _QCDS_STAB_RANDOM_CIRCUIT_H

#include <random>

#include "qcds/physical/circuit.h"

namespace qcds {

/// Small random noisy Clifford circuit (gates, resets, Z/X/product
/// measurements, all noise channels) with at most `max_measurements`
/// measurements, for cross-checking simulators.
PhysicalCircuit random_noisy_circuit(uint32_t num_qubits, size_t num_ops, size_t max_measurements,
                                     std::mt19937_64 &rng);

}  // namespace qcds

#endif
