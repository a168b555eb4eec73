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


#include "qcds/stab/random_circuit.h"

namespace qcds {

PhysicalCircuit random_noisy_circuit(uint32_t num_qubits, size_t num_ops, size_t max_measurements,
                                     std::mt19937_64 &rng) {
    PhysicalCircuit pc;
    pc.num_qubits = num_qubits;
    auto qubit = [&] { return static_cast<uint32_t>(rng() % num_qubits); };
    auto prob = [&] { return 0.02 + 0.2 * std::uniform_real_distribution<double>(0, 1)(rng); };
    size_t meas = 0;
    for (size_t k = 0; k < num_ops; k++) {
        unsigned kind = rng() % 13;
        uint32_t a = qubit(), b = qubit();
        bool room = meas < max_measurements;
        switch (kind) {
            case 0:
                pc.instructions.push_back({Gate::H, 0, {a}});
                break;
            case 1:
                pc.instructions.push_back({Gate::S, 0, {a}});
                break;
            case 2:
                pc.instructions.push_back({Gate::SQRT_X, 0, {a}});
                break;
            case 3:
            case 4:
                if (a != b) {
                    pc.instructions.push_back({Gate::CX, 0, {a, b}});
                }
                break;
            case 5:
                pc.instructions.push_back({rng() % 2 ? Gate::R : Gate::RX, 0, {a}});
                break;
            case 6:
                if (room) {
                    pc.instructions.push_back({rng() % 2 ? Gate::M : Gate::MX, rng() % 2 ? prob() : 0, {a}});
                    meas++;
                }
                break;
            case 7:
                if (room) {
                    std::vector<uint32_t> t;
                    for (uint32_t q = 0; q < num_qubits; q++) {
                        unsigned p = rng() % 4;
                        if (p) {
                            t.push_back(q | (p & 1 ? PAULI_X_BIT : 0) | (p & 2 ? PAULI_Z_BIT : 0));
                        }
                    }
                    if (!t.empty()) {
                        pc.instructions.push_back({Gate::MPP, 0, t});
                        meas++;
                    }
                }
                break;
            case 8:
            case 9:
                pc.instructions.push_back({Gate::DEPOLARIZE1, prob(), {a}});
                break;
            case 10:
                if (a != b) {
                    pc.instructions.push_back({Gate::DEPOLARIZE2, prob(), {a, b}});
                }
                break;
            case 11:
                pc.instructions.push_back({Gate::X_ERROR, prob(), {a}});
                break;
            default:
                pc.instructions.push_back({Gate::Z_ERROR, prob(), {a}});
                break;
        }
    }
    // Always end with a full readout so the final state is visible.
    for (uint32_t q = 0; q < num_qubits && meas < max_measurements; q++, meas++) {
        pc.instructions.push_back({rng() % 2 ? Gate::M : Gate::MX, 0, {q}});
    }
    return pc;
}

}  // namespace qcds
