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


#ifndef _QCDS_PHYSICAL_SYMBOLIC_TABLEAU_H
#define _QCDS_PHYSICAL_SYMBOLIC_TABLEAU_H

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace qcds {

/// Sparse Pauli product: (qubit, 'X' | 'Y' | 'Z') terms on distinct qubits.
using SparsePauli = std::vector<std::pair<uint32_t, char>>;

/// Sorted set of measurement indices whose parity gives a value.
using RecordSet = std::vector<uint32_t>;

void xor_into(RecordSet &target, const RecordSet &other);

/// A stabilizer tableau (with destabilizers) over the data qubits whose
/// stabilizer signs are symbolic: each generator carries the set of
/// measurement records whose parity fixes its eigenvalue, up to a constant
/// that is the same in every shot. Measuring a product that is already in
/// the group yields such a record set, which is exactly a detector (or an
/// observable) relative to the noiseless reference.
class SymbolicTableau {
   public:
    explicit SymbolicTableau(uint32_t num_qubits);

    uint32_t num_qubits() const {
        return n_;
    }

    /// Record set of `p` if it is in the stabilizer group, else nullopt.
    std::optional<RecordSet> peek(const SparsePauli &p) const;

    /// Measures `p` into record `rec`. Returns the previous record set when
    /// the outcome was determined. Either way the generator set afterwards
    /// contains `p` with records {rec}.
    std::optional<RecordSet> measure(const SparsePauli &p, uint32_t rec);

    /// Resets qubit q into the +1 eigenstate of basis ('Z' or 'X').
    void reset(uint32_t q, char basis);

    void apply_h(uint32_t q);
    void apply_s(uint32_t q);
    void apply_sqrt_x(uint32_t q);

   private:
    uint32_t n_;
    size_t words_;
    std::vector<uint64_t> bits_;  // 2n rows of [x words | z words]; rows [0,n) destabilizers
    std::vector<RecordSet> records_;  // per stabilizer row

    uint64_t *xs(size_t row) {
        return &bits_[row * 2 * words_];
    }
    uint64_t *zs(size_t row) {
        return &bits_[row * 2 * words_ + words_];
    }
    const uint64_t *xs(size_t row) const {
        return &bits_[row * 2 * words_];
    }
    const uint64_t *zs(size_t row) const {
        return &bits_[row * 2 * words_ + words_];
    }
    bool anticommutes(size_t row, const SparsePauli &p) const;
    void row_mul(size_t target, size_t source);
    void set_row(size_t row, const SparsePauli &p);
    size_t weight(size_t row) const;
    /// Makes p a single stabilizer generator (p must be in the group).
    /// Returns that generator's row and its old record set.
    std::pair<size_t, RecordSet> isolate(const SparsePauli &p);
    /// Random-outcome update; returns the new generator's row.
    size_t collapse(size_t pivot, const SparsePauli &p);
    std::optional<size_t> find_pivot(const SparsePauli &p) const;
};

}  // namespace qcds

#endif
