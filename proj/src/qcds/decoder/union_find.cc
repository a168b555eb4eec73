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
#include <limits>
#include <numeric>

#include "qcds/decoder/decoder.h"

namespace qcds {

namespace {
constexpr uint32_t NONE = std::numeric_limits<uint32_t>::max();
}

UnionFindDecoder::UnionFindDecoder(const DecodingGraph &g)
    : g_(g),
      parent_(g.num_nodes()),
      size_(g.num_nodes(), 1),
      odd_(g.num_nodes()),
      boundary_(g.num_nodes()),
      members_(g.num_nodes()),
      grown_(g.edges.size()),
      full_(g.edges.size()),
      rate_(g.edges.size()),
      mark_(g.num_nodes()),
      visit_(g.num_nodes()),
      via_(g.num_nodes(), NONE) {
    std::iota(parent_.begin(), parent_.end(), 0);
    boundary_[g.boundary()] = 1;
}

uint32_t UnionFindDecoder::find(uint32_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

void UnionFindDecoder::unite(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) {
        return;
    }
    if (size_[a] < size_[b] || (size_[a] == size_[b] && b < a)) {
        std::swap(a, b);
    }
    parent_[b] = a;
    size_[a] += size_[b];
    odd_[a] ^= odd_[b];
    boundary_[a] |= boundary_[b];
    members_[a].insert(members_[a].end(), members_[b].begin(), members_[b].end());
    members_[b].clear();
}

void UnionFindDecoder::touch_node(uint32_t n) {
    if (members_[n].empty() && parent_[n] == n) {
        members_[n].push_back(n);
        touched_nodes_.push_back(n);
    }
}

void UnionFindDecoder::touch_edge(uint32_t e) {
    if (grown_[e] == 0 && !full_[e]) {
        touched_edges_.push_back(e);
    }
}

void UnionFindDecoder::reset() {
    for (auto n : touched_nodes_) {
        parent_[n] = n;
        size_[n] = 1;
        odd_[n] = 0;
        boundary_[n] = n == g_.boundary();
        members_[n].clear();
        mark_[n] = 0;
        visit_[n] = 0;
        via_[n] = NONE;
    }
    for (auto e : touched_edges_) {
        grown_[e] = 0;
        full_[e] = 0;
        rate_[e] = 0;
    }
    touched_nodes_.clear();
    touched_edges_.clear();
}

DecodeResult UnionFindDecoder::decode(const std::vector<uint32_t> &defects) {
    reset();
    DecodeResult out;
    out.defects = defects.size();
    if (defects.empty()) {
        return out;
    }
    touch_node(g_.boundary());
    for (auto d : defects) {
        if (d >= g_.num_detectors) {
            throw std::out_of_range("defect is not a detector");
        }
        touch_node(d);
        odd_[d] ^= 1;
        mark_[d] ^= 1;
    }

    std::vector<uint32_t> active;
    for (auto d : defects) {
        if (odd_[d]) {
            active.push_back(d);
        }
    }
    std::sort(active.begin(), active.end());

    // Growth: every odd cluster not touching the boundary grows all of its
    // frontier edges at unit speed until the next edge is fully grown.
    std::vector<uint32_t> cand, fused, next;
    while (!active.empty()) {
        cand.clear();
        for (auto r : active) {
            for (size_t k = 0; k < members_[r].size(); k++) {
                uint32_t n = members_[r][k];
                for (auto e : g_.adjacency[n]) {
                    if (full_[e]) {
                        continue;
                    }
                    const auto &edge = g_.edges[e];
                    uint32_t m = edge.u == n ? edge.v : edge.u;
                    touch_node(m);
                    if (find(m) == r) {
                        continue;
                    }
                    if (rate_[e] == 0) {
                        cand.push_back(e);
                    }
                    rate_[e] += 1;
                }
            }
        }
        if (cand.empty()) {
            throw std::logic_error("odd cluster cannot reach the boundary");
        }
        double delta = std::numeric_limits<double>::infinity();
        for (auto e : cand) {
            delta = std::min(delta, (g_.edges[e].weight - grown_[e]) / rate_[e]);
        }
        fused.clear();
        for (auto e : cand) {
            touch_edge(e);
            double w = g_.edges[e].weight;
            grown_[e] += rate_[e] * delta;
            rate_[e] = 0;
            if (grown_[e] >= w * (1 - 1e-12)) {
                grown_[e] = w;
                full_[e] = 1;
                fused.push_back(e);
            }
            out.work++;
        }
        for (auto e : fused) {
            unite(g_.edges[e].u, g_.edges[e].v);
        }
        next.clear();
        for (auto r : active) {
            uint32_t root = find(r);
            if (odd_[root] && !boundary_[root]) {
                next.push_back(root);
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        active.swap(next);
    }

    // Peeling over a spanning forest of grown edges; trees that reach the
    // boundary are rooted there so leftover parity drains into it.
    std::vector<uint32_t> order;
    auto bfs = [&](uint32_t root) {
        size_t start = order.size();
        visit_[root] = 1;
        order.push_back(root);
        for (size_t i = start; i < order.size(); i++) {
            uint32_t n = order[i];
            for (auto e : g_.adjacency[n]) {
                if (!full_[e]) {
                    continue;
                }
                const auto &edge = g_.edges[e];
                uint32_t m = edge.u == n ? edge.v : edge.u;
                if (!visit_[m]) {
                    visit_[m] = 1;
                    via_[m] = e;
                    order.push_back(m);
                }
            }
        }
    };
    bfs(g_.boundary());
    for (auto d : defects) {
        if (!visit_[d]) {
            bfs(d);
        }
    }
    for (size_t i = order.size(); i-- > 0;) {
        uint32_t n = order[i];
        if (!mark_[n]) {
            continue;
        }
        if (via_[n] == NONE) {
            if (n != g_.boundary()) {
                throw std::logic_error("peeling left an unmatched defect");
            }
            continue;
        }
        uint32_t e = via_[n];
        const auto &edge = g_.edges[e];
        out.edges.push_back(e);
        mark_[n] ^= 1;
        mark_[edge.u == n ? edge.v : edge.u] ^= 1;
        out.work++;
    }
    std::sort(out.edges.begin(), out.edges.end());
    for (auto e : out.edges) {
        out.observables ^= g_.edges[e].observables;
        out.weight += g_.edges[e].weight;
    }
    return out;
}

}  // namespace qcds
