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


#include "qcds/decoder/decoder.h"

namespace qcds {

LogicalErrorEstimate estimate_logical_error(const ShotBatch &batch, const DecodingGraph &g, DecoderKind kind) {
    LogicalErrorEstimate est;
    est.shots = batch.shots();
    est.failures.assign(batch.num_observables, 0);
    UnionFindDecoder uf(g);
    for (size_t s = 0; s < batch.shots(); s++) {
        if (!batch.keep[s]) {
            continue;
        }
        est.kept++;
        DecodeResult r = kind == DecoderKind::UnionFind ? uf.decode(batch.fired[s]) : decode_exact_oracle(g, batch.fired[s]);
        est.work += r.work;
        uint64_t wrong = r.observables ^ batch.observables[s];
        for (uint32_t k = 0; k < batch.num_observables; k++) {
            est.failures[k] += wrong >> k & 1;
        }
        est.any_failures += wrong != 0;
    }
    if (est.kept == 0) {
        throw std::invalid_argument("no kept shots to estimate from");
    }
    for (auto f : est.failures) {
        est.rates.push_back(double(f) / double(est.kept));
    }
    est.any_rate = double(est.any_failures) / double(est.kept);
    est.any_ci = clopper_pearson(est.any_failures, est.kept, LOGICAL_CI_CONFIDENCE);
    return est;
}

}  // namespace qcds
