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


#ifndef _QCDS_PHYSICAL_DEM_H
#define _QCDS_PHYSICAL_DEM_H

#include <cstdint>
#include <string>
#include <vector>

#include "qcds/physical/circuit.h"

namespace qcds {

struct ErrorMechanism {
    double p = 0;
    std::vector<uint32_t> detectors;  // sorted
    uint64_t observables = 0;         // bit k = observable k
    bool operator==(const ErrorMechanism &other) const = default;
};

struct DetectorErrorModel {
    uint32_t num_detectors = 0;
    uint32_t num_observables = 0;
    std::vector<ErrorMechanism> mechanisms;  // sorted by signature

    /// `error(p) D3 D7 L0` lines.
    std::string str() const;
};

/// One mechanism per independent fault component (each Pauli of a
/// depolarizing channel with p/3 or p/15, each measurement flip), with its
/// signature found by propagating Pauli sensitivities backwards through the
/// circuit. Identical signatures are merged; empty signatures are dropped.
DetectorErrorModel extract_dem(const PhysicalCircuit &pc);

/// Probability that each detector fires: odd number of its mechanisms occur.
std::vector<double> detector_fire_probabilities(const DetectorErrorModel &dem);

/// Probability-combine two independent flips: p(1-q) + q(1-p).
inline double combine_flip(double p, double q) {
    return p * (1 - q) + q * (1 - p);
}

}  // namespace qcds

#endif
