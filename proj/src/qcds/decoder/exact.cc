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
#include <bit>
#include <functional>
#include <limits>
#include <queue>
#include <set>

#include "qcds/decoder/decoder.h"

namespace qcds {

namespace {

struct Paths {
    std::vector<double> dist;
    std::vector<uint32_t> via;  // edge into node on the shortest-path tree
};

Paths dijkstra(const DecodingGraph &g, uint32_t source) {
    constexpr double INF = std::numeric_limits<double>::infinity();
    Paths p{std::vector<double>(g.num_nodes(), INF), std::vector<uint32_t>(g.num_nodes(), UINT32_MAX)};
    using Item = std::pair<double, uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    p.dist[source] = 0;
    pq.push({0, source});
    while (!pq.empty()) {
        auto [d, n] = pq.top();
        pq.pop();
        if (d > p.dist[n]) {
            continue;
        }
        for (auto e : g.adjacency[n]) {
            const auto &edge = g.edges[e];
            uint32_t m = edge.u == n ? edge.v : edge.u;
            double nd = d + edge.weight;
            if (nd < p.dist[m]) {
                p.dist[m] = nd;
                p.via[m] = e;
                pq.push({nd, m});
            }
        }
    }
    return p;
}

void add_path(const DecodingGraph &g, const Paths &p, uint32_t target, std::set<uint32_t> &edges) {
    for (uint32_t n = target; p.via[n] != UINT32_MAX;) {
        uint32_t e = p.via[n];
        if (!edges.erase(e)) {
            edges.insert(e);
        }
        n = g.edges[e].u == n ? g.edges[e].v : g.edges[e].u;
    }
}

}  // namespace

DecodeResult decode_exact_oracle(const DecodingGraph &g, const std::vector<uint32_t> &defects) {
    size_t k = defects.size();
    if (k > EXACT_ORACLE_MAX_DEFECTS) {
        throw std::invalid_argument("exact oracle supports at most " + std::to_string(EXACT_ORACLE_MAX_DEFECTS) +
                                    " defects, got " + std::to_string(k));
    }
    DecodeResult out;
    out.defects = k;
    if (k == 0) {
        return out;
    }
    std::vector<Paths> paths;
    for (auto d : defects) {
        paths.push_back(dijkstra(g, d));
    }
    constexpr double INF = std::numeric_limits<double>::infinity();
    size_t full = (size_t{1} << k) - 1;
    std::vector<double> best(full + 1, INF);
    std::vector<int> choice(full + 1, -1);  // partner index, or k for boundary
    best[0] = 0;
    for (size_t s = 1; s <= full; s++) {
        size_t i = std::countr_zero(s);
        size_t rest = s & ~(size_t{1} << i);
        double viab = paths[i].dist[g.boundary()] + best[rest];
        if (viab < best[s]) {
            best[s] = viab;
            choice[s] = static_cast<int>(k);
        }
        for (size_t j = i + 1; j < k; j++) {
            if (rest >> j & 1) {
                double v = paths[i].dist[defects[j]] + best[rest & ~(size_t{1} << j)];
                if (v < best[s]) {
                    best[s] = v;
                    choice[s] = static_cast<int>(j);
                }
            }
        }
    }
    if (best[full] == INF) {
        throw std::logic_error("defects cannot be matched");
    }
    std::set<uint32_t> edges;
    for (size_t s = full; s;) {
        size_t i = std::countr_zero(s);
        size_t j = static_cast<size_t>(choice[s]);
        s &= ~(size_t{1} << i);
        if (j == k) {
            add_path(g, paths[i], g.boundary(), edges);
        } else {
            add_path(g, paths[i], defects[j], edges);
            s &= ~(size_t{1} << j);
        }
    }
    out.edges.assign(edges.begin(), edges.end());
    for (auto e : out.edges) {
        out.observables ^= g.edges[e].observables;
        out.weight += g.edges[e].weight;
    }
    return out;
}

}  // namespace qcds
