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


#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <queue>

#include "qcds/decoder/decoder.h"

namespace qcds {

DecompositionError::DecompositionError(size_t mechanism, const std::string &message)
    : std::runtime_error("mechanism " + std::to_string(mechanism) + ": " + message), mechanism(mechanism) {
}

namespace {

using Key = std::pair<uint32_t, uint32_t>;

class GraphBuilder {
   public:
    explicit GraphBuilder(uint32_t boundary) : boundary_(boundary) {
    }

    Key key(const std::vector<uint32_t> &dets) const {
        if (dets.size() == 1) {
            return {dets[0], boundary_};
        }
        return {std::min(dets[0], dets[1]), std::max(dets[0], dets[1])};
    }

    std::optional<uint64_t> known(const Key &k) const {
        auto it = edges_.find(k);
        if (it == edges_.end()) {
            return std::nullopt;
        }
        return it->second.second;
    }

    void add(const Key &k, double p, uint64_t obs) {
        auto [it, fresh] = edges_.try_emplace(k, p, obs);
        if (fresh) {
            return;
        }
        auto &[q, o] = it->second;
        if (o != obs) {
            conflicts_++;
            if (p > q) {
                o = obs;
            }
        }
        q = combine_flip(q, p);
    }

    size_t conflicts_ = 0;
    std::map<Key, std::pair<double, uint64_t>> edges_;

   private:
    uint32_t boundary_;
};

// Splits a same-basis piece of 3 or 4 detectors into known edges.
std::optional<std::vector<std::vector<uint32_t>>> split_known(const GraphBuilder &b, const std::vector<uint32_t> &d) {
    std::vector<std::vector<std::vector<uint32_t>>> options;
    if (d.size() == 3) {
        options = {{{d[0], d[1]}, {d[2]}}, {{d[0], d[2]}, {d[1]}}, {{d[1], d[2]}, {d[0]}}};
    } else if (d.size() == 4) {
        options = {{{d[0], d[1]}, {d[2], d[3]}}, {{d[0], d[2]}, {d[1], d[3]}}, {{d[0], d[3]}, {d[1], d[2]}}};
    }
    for (auto &opt : options) {
        if (std::all_of(opt.begin(), opt.end(), [&](auto &piece) { return b.known(b.key(piece)).has_value(); })) {
            return opt;
        }
    }
    return std::nullopt;
}

}  // namespace

DecodingGraph build_graph(const DetectorErrorModel &dem, const std::vector<DetectorInfo> *detectors) {
    if (detectors && detectors->size() != dem.num_detectors) {
        throw std::invalid_argument("detector metadata does not match the error model");
    }
    DecodingGraph g;
    g.num_detectors = dem.num_detectors;
    GraphBuilder b(g.boundary());
    auto basis = [&](uint32_t d) { return detectors ? (*detectors)[d].basis : 'Z'; };
    auto simple = [&](const ErrorMechanism &e) {
        return e.detectors.size() == 1 ||
               (e.detectors.size() == 2 && basis(e.detectors[0]) == basis(e.detectors[1]));
    };

    for (const auto &e : dem.mechanisms) {
        if (simple(e)) {
            b.add(b.key(e.detectors), e.p, e.observables);
        }
    }
    for (size_t m = 0; m < dem.mechanisms.size(); m++) {
        const auto &e = dem.mechanisms[m];
        if (e.detectors.empty() || simple(e)) {
            continue;
        }
        std::map<char, std::vector<uint32_t>> parts;
        for (auto d : e.detectors) {
            parts[basis(d)].push_back(d);
        }
        std::vector<std::vector<uint32_t>> pieces;
        for (auto &[c, part] : parts) {
            if (part.size() <= 2) {
                pieces.push_back(part);
            } else if (auto split = split_known(b, part)) {
                pieces.insert(pieces.end(), split->begin(), split->end());
            } else {
                throw DecompositionError(m, "cannot decompose a " + std::to_string(part.size()) + "-detector " +
                                                std::string(1, c) + " component");
            }
        }
        uint64_t residual = e.observables;
        std::optional<size_t> fresh;
        for (size_t k = 0; k < pieces.size(); k++) {
            if (auto o = b.known(b.key(pieces[k]))) {
                residual ^= *o;
            } else if (!fresh) {
                fresh = k;
            }
        }
        for (size_t k = 0; k < pieces.size(); k++) {
            auto kk = b.key(pieces[k]);
            uint64_t obs = b.known(kk).value_or(0);
            if (fresh && k == *fresh) {
                obs = residual;
            }
            b.add(kk, e.p, obs);
        }
        if (residual && !fresh) {
            b.conflicts_++;
        }
    }

    g.conflicting_mechanisms = b.conflicts_;
    g.adjacency.resize(g.num_nodes());
    for (auto &[k, v] : b.edges_) {
        auto [p, obs] = v;
        if (p >= 0.5) {
            throw std::invalid_argument("edge probability must be below 1/2");
        }
        auto id = static_cast<uint32_t>(g.edges.size());
        g.edges.push_back({k.first, k.second, p, std::log((1 - p) / p), obs});
        g.adjacency[k.first].push_back(id);
        g.adjacency[k.second].push_back(id);
    }
    return g;
}

bool DecodingGraph::boundary_reachable() const {
    std::vector<uint8_t> seen(num_nodes());
    std::queue<uint32_t> q;
    q.push(boundary());
    seen[boundary()] = 1;
    while (!q.empty()) {
        auto n = q.front();
        q.pop();
        for (auto e : adjacency[n]) {
            uint32_t m = edges[e].u == n ? edges[e].v : edges[e].u;
            if (!seen[m]) {
                seen[m] = 1;
                q.push(m);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](uint8_t s) { return s; });
}

std::vector<uint32_t> correction_boundary(const DecodingGraph &g, const std::vector<uint32_t> &edges) {
    std::map<uint32_t, int> deg;
    for (auto e : edges) {
        deg[g.edges[e].u] ^= 1;
        deg[g.edges[e].v] ^= 1;
    }
    std::vector<uint32_t> out;
    for (auto [n, d] : deg) {
        if (d && n != g.boundary()) {
            out.push_back(n);
        }
    }
    return out;
}

}  // namespace qcds
