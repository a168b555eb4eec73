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


#ifndef _QCDS_PHYSICAL_CIRCUIT_H
#define _QCDS_PHYSICAL_CIRCUIT_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcds/surface/surface_circuit.h"

namespace qcds {

enum class Gate : uint8_t {
    H,
    S,
    SQRT_X,
    CX,
    R,
    RX,
    M,
    MX,
    MPP,
    DEPOLARIZE1,
    DEPOLARIZE2,
    X_ERROR,
    Z_ERROR,
    TICK,
    ROUND,
    DETECTOR,
    OBSERVABLE,
};

std::string_view gate_name(Gate g);
std::optional<Gate> gate_from_name(std::string_view name);
bool is_noise(Gate g);
bool is_annotation(Gate g);

/// MPP targets carry the Pauli in the two top bits.
inline constexpr uint32_t PAULI_X_BIT = 1u << 31;
inline constexpr uint32_t PAULI_Z_BIT = 1u << 30;
inline constexpr uint32_t QUBIT_MASK = PAULI_Z_BIT - 1;

/// Targets are qubits for gates and noise, and absolute measurement indices
/// for DETECTOR and OBSERVABLE. `arg` is the channel probability, the
/// measurement flip probability, or the observable index.
struct Instruction {
    Gate gate;
    double arg = 0;
    std::vector<uint32_t> targets;
    bool operator==(const Instruction &other) const = default;
};

struct DetectorInfo {
    char basis = 'Z';
    int32_t ts = -1;
    Coord cell{};
    /// Fired detectors with this flag reject the shot under post-selection.
    bool postselect = false;
    bool operator==(const DetectorInfo &other) const = default;
};

struct NoiseModel {
    double p2 = 0;
    double pm = 0;
    double p1 = 0;

    /// The standard model: p2 = pm = p, p1 = p/10.
    static NoiseModel uniform(double p) {
        return {p, p, p / 10};
    }
    bool noiseless() const {
        return p1 == 0 && p2 == 0 && pm == 0;
    }
};

struct PhysicalCircuit {
    uint32_t num_qubits = 0;
    std::vector<Instruction> instructions;
    std::vector<DetectorInfo> detectors;
    uint32_t num_observables = 0;
    /// Grid position of every qubit (doubled coordinates; data qubits even/even).
    std::vector<Coord> qubit_coords;

    size_t num_measurements() const;
    size_t num_detectors() const {
        return detectors.size();
    }
    void validate() const;
    std::string str() const;
    bool operator==(const PhysicalCircuit &other) const = default;
};

PhysicalCircuit parse_physical(std::string_view text);

struct Table2Metrics {
    size_t physical_qubits = 0;
    size_t max_active_qubits = 0;
    size_t max_parallel_2q = 0;
    size_t max_parallel_meas = 0;
    size_t total_physical_measurements = 0;
    double avg_bits_per_round = 0;
    size_t total_stabilizer_rounds = 0;
};

/// Qubits are counted when touched by a gate; activity is per ROUND block and
/// parallelism per TICK.
Table2Metrics physical_metrics(const PhysicalCircuit &pc);

}  // namespace qcds

#endif
