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

#ifndef _QCDS_PIPELINE_EXPERIMENTS_H
#define _QCDS_PIPELINE_EXPERIMENTS_H

#include <cstdint>

#include "qcds/decoder/decoder.h"
#include "qcds/physical/circuit.h"
#include "qcds/stab/frame_sampler.h"
#include "qcds/surface/surface_circuit.h"

namespace qcds {

struct RunOptions {
    size_t shots = 10000;
    uint64_t seed = 1;
    bool postselect = false;
    DecoderKind decoder = DecoderKind::UnionFind;
    unsigned threads = 1;
};

/// Shots are sampled and decoded in chunks of this size, each with a seed
/// derived from (seed, chunk index), so memory stays bounded.
inline constexpr size_t RUN_CHUNK = 64 * SHOT_BLOCK;

struct RunResult {
    LogicalErrorEstimate est;
    double mean_fired = 0;  // over all shots, before post-selection

    double acceptance() const {
        return est.shots ? double(est.kept) / double(est.shots) : 0;
    }
};

/// Samples, post-selects (if asked) and decodes the circuit.
RunResult run_circuit(const PhysicalCircuit &pc, const RunOptions &opts);

RunResult run_memory(char basis, uint32_t d, double p, size_t blocks, const RunOptions &opts);

/// Hook injection followed by one block of rounds and a perfect Y_L readout.
RunResult run_injection(uint32_t d, double p, const RunOptions &opts);

RunResult run_schedule(const SurfaceCircuit &s, uint32_t d, double p, const RunOptions &opts);

/// Per-block rate implied by an odd-flip probability accumulated over `blocks` blocks.
double per_block_rate(double total, size_t blocks);

struct FtBlockError {
    RunResult z;
    RunResult x;
    double p_ft = 0;
    Interval ci;  // mean of the two 99.9% intervals' ends
};

/// Logical error of one FT block (one surface idling for d rounds), taken as
/// the mean of the Z- and X-basis memory errors per block.
FtBlockError ft_block_error(uint32_t d, double p, size_t blocks, const RunOptions &opts);

}  // namespace qcds

#endif
