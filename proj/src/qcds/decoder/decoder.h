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


#ifndef _QCDS_DECODER_DECODER_H
#define _QCDS_DECODER_DECODER_H

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qcds/physical/dem.h"
#include "qcds/stab/frame_sampler.h"
#include "qcds/stats.h"

namespace qcds {

struct GraphEdge {
    uint32_t u;
    uint32_t v;  // == boundary for boundary edges
    double p;
    double weight;
    uint64_t observables;
};

/// Matching graph over detectors plus one virtual boundary node.
struct DecodingGraph {
    uint32_t num_detectors = 0;
    std::vector<GraphEdge> edges;
    std::vector<std::vector<uint32_t>> adjacency;  // node -> edge ids
    /// Mechanisms whose observable effect disagreed with an existing edge.
    size_t conflicting_mechanisms = 0;

    uint32_t boundary() const {
        return num_detectors;
    }
    uint32_t num_nodes() const {
        return num_detectors + 1;
    }
    /// Whether every detector has a path to the boundary node.
    bool boundary_reachable() const;
};

class DecompositionError : public std::runtime_error {
   public:
    DecompositionError(size_t mechanism, const std::string &message);
    size_t mechanism;
};

/// Mechanisms with one or two detectors become edges. Larger ones are split
/// by detector basis (when `detectors` is given) and then matched against
/// existing edges; an unmatched piece with more than two detectors throws.
DecodingGraph build_graph(const DetectorErrorModel &dem, const std::vector<DetectorInfo> *detectors = nullptr);

struct DecodeResult {
    std::vector<uint32_t> edges;  // correction, ascending edge ids
    uint64_t observables = 0;
    size_t defects = 0;
    uint64_t work = 0;
    double weight = 0;
};

/// Union-find decoder with weighted cluster growth and peeling. Keeps
/// scratch state between calls, so one instance per thread.
class UnionFindDecoder {
   public:
    explicit UnionFindDecoder(const DecodingGraph &g);
    DecodeResult decode(const std::vector<uint32_t> &defects);

   private:
    const DecodingGraph &g_;
    std::vector<uint32_t> parent_;
    std::vector<uint32_t> size_;
    std::vector<uint8_t> odd_;       // per root: defect parity
    std::vector<uint8_t> boundary_;  // per root: contains the boundary node
    std::vector<std::vector<uint32_t>> members_;
    std::vector<double> grown_;
    std::vector<uint8_t> full_;
    std::vector<double> rate_;
    std::vector<uint8_t> mark_;
    std::vector<uint8_t> visit_;
    std::vector<uint32_t> via_;
    std::vector<uint32_t> touched_nodes_, touched_edges_;

    uint32_t find(uint32_t x);
    void unite(uint32_t a, uint32_t b);
    void touch_node(uint32_t n);
    void touch_edge(uint32_t e);
    void reset();
};

/// Minimum-weight correction by exhaustive pairing over shortest paths.
inline constexpr size_t EXACT_ORACLE_MAX_DEFECTS = 12;
DecodeResult decode_exact_oracle(const DecodingGraph &g, const std::vector<uint32_t> &defects);

/// Boundary of an edge set (nodes of odd degree, boundary node excluded).
std::vector<uint32_t> correction_boundary(const DecodingGraph &g, const std::vector<uint32_t> &edges);

enum class DecoderKind { UnionFind, Exact };

struct LogicalErrorEstimate {
    size_t shots = 0;
    size_t kept = 0;
    std::vector<size_t> failures;  // per observable
    size_t any_failures = 0;
    std::vector<double> rates;
    double any_rate = 0;
    Interval any_ci;  // 99.9% Clopper-Pearson
    uint64_t work = 0;
};

inline constexpr double LOGICAL_CI_CONFIDENCE = 0.999;

/// Decodes every kept shot and counts observable mispredictions.
LogicalErrorEstimate estimate_logical_error(const ShotBatch &batch, const DecodingGraph &g,
                                            DecoderKind kind = DecoderKind::UnionFind);

}  // namespace qcds

#endif
