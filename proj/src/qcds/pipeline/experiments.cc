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

#include "qcds/pipeline/experiments.h"

#include <algorithm>
#include <cmath>

#include "qcds/physical/dem.h"
#include "qcds/physical/lowering.h"
#include "qcds/stab/tableau.h"

namespace qcds {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

RunResult run_circuit(const PhysicalCircuit &pc, const RunOptions &opts) {
    if (opts.shots == 0) {
        throw std::invalid_argument("need at least one shot");
    }
    auto graph = build_graph(extract_dem(pc), &pc.detectors);
    auto reference = reference_run(pc, opts.seed);
    RunResult out;
    auto &est = out.est;
    est.failures.assign(pc.num_observables, 0);
    double fired = 0;
    for (size_t chunk = 0, done = 0; done < opts.shots; chunk++) {
        size_t n = std::min(RUN_CHUNK, opts.shots - done);
        auto batch = frame_sample(pc, reference, n, splitmix64(opts.seed ^ splitmix64(chunk)), {false, opts.threads});
        for (const auto &f : batch.fired) {
            fired += double(f.size());
        }
        if (opts.postselect) {
            batch = postselect_expansion(std::move(batch), pc);
        }
        done += n;
        est.shots += n;
        if (batch.kept() == 0) {
            continue;
        }
        auto e = estimate_logical_error(batch, graph, opts.decoder);
        est.kept += e.kept;
        est.any_failures += e.any_failures;
        est.work += e.work;
        for (size_t k = 0; k < e.failures.size(); k++) {
            est.failures[k] += e.failures[k];
        }
    }
    if (est.kept == 0) {
        throw std::invalid_argument("post-selection rejected every shot");
    }
    for (auto f : est.failures) {
        est.rates.push_back(double(f) / double(est.kept));
    }
    est.any_rate = double(est.any_failures) / double(est.kept);
    est.any_ci = clopper_pearson(est.any_failures, est.kept, LOGICAL_CI_CONFIDENCE);
    out.mean_fired = fired / double(est.shots);
    return out;
}

RunResult run_memory(char basis, uint32_t d, double p, size_t blocks, const RunOptions &opts) {
    return run_circuit(lower_physical(memory_schedule(basis, blocks), d, NoiseModel::uniform(p)), opts);
}

RunResult run_injection(uint32_t d, double p, const RunOptions &opts) {
    return run_circuit(injection_experiment(d, NoiseModel::uniform(p)), opts);
}

RunResult run_schedule(const SurfaceCircuit &s, uint32_t d, double p, const RunOptions &opts) {
    return run_circuit(lower_physical(s, d, NoiseModel::uniform(p)), opts);
}

double per_block_rate(double total, size_t blocks) {
    if (blocks == 0 || total < 0 || total > 0.5) {
        throw std::invalid_argument("per_block_rate needs blocks >= 1 and a rate in [0, 0.5]");
    }
    return 0.5 * -std::expm1(std::log1p(-2 * total) / double(blocks));
}

FtBlockError ft_block_error(uint32_t d, double p, size_t blocks, const RunOptions &opts) {
    FtBlockError out;
    out.z = run_memory('Z', d, p, blocks, opts);
    auto xo = opts;
    xo.seed = splitmix64(opts.seed + 1);
    out.x = run_memory('X', d, p, blocks, xo);
    auto block = [&](double v) { return per_block_rate(std::min(v, 0.5), blocks); };
    out.p_ft = 0.5 * (block(out.z.est.any_rate) + block(out.x.est.any_rate));
    out.ci.lo = 0.5 * (block(out.z.est.any_ci.lo) + block(out.x.est.any_ci.lo));
    out.ci.hi = 0.5 * (block(out.z.est.any_ci.hi) + block(out.x.est.any_ci.hi));
    return out;
}

}  // namespace qcds
