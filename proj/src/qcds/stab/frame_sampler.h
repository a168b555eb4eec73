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


#ifndef _QCDS_STAB_FRAME_SAMPLER_H
#define _QCDS_STAB_FRAME_SAMPLER_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qcds/physical/circuit.h"

namespace qcds {

/// Sampled shots. Detector and observable bits are flips relative to the
/// noiseless reference, so a perfect run is all zeros.
struct ShotBatch {
    uint64_t seed = 0;
    uint32_t num_detectors = 0;
    uint32_t num_observables = 0;
    uint32_t num_measurements = 0;
    /// Fired detectors per shot, ascending.
    std::vector<std::vector<uint32_t>> fired;
    /// Observable flip mask per shot.
    std::vector<uint64_t> observables;
    /// Post-selection keep flag per shot.
    std::vector<uint8_t> keep;
    /// Full measurement records (reference XOR flips); only when requested.
    std::vector<std::vector<uint8_t>> measurements;

    size_t shots() const {
        return fired.size();
    }
    size_t kept() const;
    bool detector(size_t shot, uint32_t k) const;
    bool observable(size_t shot, uint32_t k) const {
        return observables[shot] >> k & 1;
    }
    /// Concatenates another batch of the same circuit.
    void append(const ShotBatch &other);

    /// Bit-packed binary file with a self-describing header.
    void write_binary(std::ostream &out) const;
    static ShotBatch read_binary(std::istream &in);
    /// `kind,index,fired,shots,rate` summary over kept shots.
    void write_csv_summary(std::ostream &out) const;
};

struct SampleOptions {
    bool keep_measurements = false;
    /// Worker threads; results do not depend on this.
    unsigned threads = 1;
};

/// Shots are drawn in fixed blocks of this size, each with its own RNG
/// stream derived from (seed, block index).
inline constexpr size_t SHOT_BLOCK = 1024;

ShotBatch frame_sample(const PhysicalCircuit &pc, const std::vector<uint8_t> &reference, size_t shots,
                       uint64_t seed, const SampleOptions &opts = {});

/// Clears the keep flag of every shot with a fired post-selection detector.
/// `tagged` (if given) reports whether the circuit has any such detector.
ShotBatch postselect_expansion(ShotBatch batch, const PhysicalCircuit &pc, bool *tagged = nullptr);

}  // namespace qcds

#endif
