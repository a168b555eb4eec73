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


#include "qcds/physical/symbolic_tableau.h"

#include <algorithm>
#include <bit>
#include <iterator>
#include <stdexcept>
#include <string>

namespace qcds {

void xor_into(RecordSet &target, const RecordSet &other) {
    if (other.empty()) {
        return;
    }
    RecordSet out;
    out.reserve(target.size() + other.size());
    std::set_symmetric_difference(target.begin(), target.end(), other.begin(), other.end(), std::back_inserter(out));
    target.swap(out);
}

SymbolicTableau::SymbolicTableau(uint32_t num_qubits)
    : n_(num_qubits), words_((num_qubits + 63) / 64), bits_(2 * (size_t)num_qubits * 2 * words_, 0), records_(num_qubits) {
    for (uint32_t q = 0; q < n_; q++) {
        xs(q)[q / 64] |= uint64_t{1} << (q % 64);
        zs(n_ + q)[q / 64] |= uint64_t{1} << (q % 64);
    }
}

bool SymbolicTableau::anticommutes(size_t row, const SparsePauli &p) const {
    const uint64_t *x = xs(row);
    const uint64_t *z = zs(row);
    bool acc = false;
    for (auto [q, c] : p) {
        uint64_t bit = uint64_t{1} << (q % 64);
        bool rx = x[q / 64] & bit;
        bool rz = z[q / 64] & bit;
        bool px = c != 'Z';
        bool pz = c != 'X';
        acc ^= (px && rz) ^ (pz && rx);
    }
    return acc;
}

void SymbolicTableau::row_mul(size_t target, size_t source) {
    uint64_t *t = &bits_[target * 2 * words_];
    const uint64_t *s = &bits_[source * 2 * words_];
    for (size_t k = 0; k < 2 * words_; k++) {
        t[k] ^= s[k];
    }
    if (target >= n_) {
        xor_into(records_[target - n_], records_[source - n_]);
    }
}

void SymbolicTableau::set_row(size_t row, const SparsePauli &p) {
    std::fill(xs(row), xs(row) + 2 * words_, 0);
    for (auto [q, c] : p) {
        uint64_t bit = uint64_t{1} << (q % 64);
        if (c != 'Z') {
            xs(row)[q / 64] |= bit;
        }
        if (c != 'X') {
            zs(row)[q / 64] |= bit;
        }
    }
}

size_t SymbolicTableau::weight(size_t row) const {
    size_t w = 0;
    for (size_t k = 0; k < words_; k++) {
        w += std::popcount(xs(row)[k] | zs(row)[k]);
    }
    return w;
}

std::optional<size_t> SymbolicTableau::find_pivot(const SparsePauli &p) const {
    for (size_t r = n_; r < 2 * (size_t)n_; r++) {
        if (anticommutes(r, p)) {
            return r;
        }
    }
    return std::nullopt;
}

std::optional<RecordSet> SymbolicTableau::peek(const SparsePauli &p) const {
    if (find_pivot(p)) {
        return std::nullopt;
    }
    RecordSet out;
    for (size_t r = 0; r < n_; r++) {
        if (anticommutes(r, p)) {
            xor_into(out, records_[r]);
        }
    }
    return out;
}

std::pair<size_t, RecordSet> SymbolicTableau::isolate(const SparsePauli &p) {
    std::vector<size_t> used;
    for (size_t r = 0; r < n_; r++) {
        if (anticommutes(r, p)) {
            used.push_back(r);
        }
    }
    if (used.empty()) {
        throw std::logic_error("identity measured");
    }
    RecordSet old;
    for (auto r : used) {
        xor_into(old, records_[r]);
    }
    // Keep the slot of the generator with the oldest records (ties: the
    // heaviest), so generators measured recently stay in the set and later
    // queries can refer to them directly.
    auto age = [&](size_t r) -> int64_t { return records_[r].empty() ? -1 : int64_t(records_[r].back()); };
    size_t keep = used[0];
    for (auto r : used) {
        if (age(r) < age(keep) || (age(r) == age(keep) && weight(n_ + r) > weight(n_ + keep))) {
            keep = r;
        }
    }
    for (auto r : used) {
        if (r != keep) {
            row_mul(r, keep);  // destabilizers follow the inverse change
        }
    }
    set_row(n_ + keep, p);
    records_[keep] = old;
    return {n_ + keep, old};
}

size_t SymbolicTableau::collapse(size_t pivot, const SparsePauli &p) {
    for (size_t r = 0; r < 2 * (size_t)n_; r++) {
        if (r != pivot && anticommutes(r, p)) {
            row_mul(r, pivot);
        }
    }
    size_t destab = pivot - n_;
    std::copy(xs(pivot), xs(pivot) + 2 * words_, xs(destab));
    set_row(pivot, p);
    records_[destab].clear();
    return pivot;
}

std::optional<RecordSet> SymbolicTableau::measure(const SparsePauli &p, uint32_t rec) {
    if (auto pivot = find_pivot(p)) {
        size_t row = collapse(*pivot, p);
        records_[row - n_] = {rec};
        return std::nullopt;
    }
    auto [row, old] = isolate(p);
    records_[row - n_] = {rec};
    return old;
}

void SymbolicTableau::reset(uint32_t q, char basis) {
    SparsePauli p{{q, basis}};
    size_t row;
    if (auto pivot = find_pivot(p)) {
        row = collapse(*pivot, p);
        records_[row - n_].clear();
        // Anything else still acting on q would now carry the unrecorded
        // outcome; lowering only resets qubits that are out of play.
        for (size_t r = n_; r < 2 * (size_t)n_; r++) {
            if (r != row && anticommutes(r, {{q, basis == 'Z' ? 'X' : 'Z'}})) {
                throw std::logic_error("reset of qubit " + std::to_string(q) + " that is still entangled");
            }
        }
        return;
    }
    row = isolate(p).first;
    // Re-express the other generators without q; the conditional flip that
    // the reset applies is absorbed by the generator's current records.
    SparsePauli flip{{q, basis == 'Z' ? 'X' : 'Z'}};
    for (size_t r = n_; r < 2 * (size_t)n_; r++) {
        if (r != row && anticommutes(r, flip)) {
            row_mul(r, row);
            row_mul(row - n_, r - n_);
        }
    }
    records_[row - n_].clear();
}

void SymbolicTableau::apply_h(uint32_t q) {
    size_t w = q / 64;
    uint64_t bit = uint64_t{1} << (q % 64);
    for (size_t r = 0; r < 2 * (size_t)n_; r++) {
        uint64_t &x = xs(r)[w];
        uint64_t &z = zs(r)[w];
        uint64_t d = (x ^ z) & bit;
        x ^= d;
        z ^= d;
    }
}

void SymbolicTableau::apply_s(uint32_t q) {
    size_t w = q / 64;
    uint64_t bit = uint64_t{1} << (q % 64);
    for (size_t r = 0; r < 2 * (size_t)n_; r++) {
        zs(r)[w] ^= xs(r)[w] & bit;
    }
}

void SymbolicTableau::apply_sqrt_x(uint32_t q) {
    size_t w = q / 64;
    uint64_t bit = uint64_t{1} << (q % 64);
    for (size_t r = 0; r < 2 * (size_t)n_; r++) {
        xs(r)[w] ^= zs(r)[w] & bit;
    }
}

}  // namespace qcds
