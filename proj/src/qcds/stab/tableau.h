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


#ifndef _QCDS_STAB_TABLEAU_H
#define _QCDS_STAB_TABLEAU_H

#include <cstdint>
#include <random>
#include <vector>

#include "qcds/physical/circuit.h"

namespace qcds {

/// Aaronson-Gottesman tableau with destabilizers and signs.
class Tableau {
   public:
    explicit Tableau(uint32_t num_qubits);

    uint32_t num_qubits() const {
        return n_;
    }

    void h(uint32_t q);
    void s(uint32_t q);
    void sqrt_x(uint32_t q);
    void cx(uint32_t c, uint32_t t);
    void x(uint32_t q);
    void y(uint32_t q);
    void z(uint32_t q);

    /// Measures the Pauli product; random outcomes are drawn from `rng`.
    bool measure(const std::vector<std::pair<uint32_t, char>> &pauli, std::mt19937_64 &rng);
    bool measure_z(uint32_t q, std::mt19937_64 &rng) {
        return measure({{q, 'Z'}}, rng);
    }
    void reset_z(uint32_t q, std::mt19937_64 &rng);
    void reset_x(uint32_t q, std::mt19937_64 &rng);

    /// Stabilizer generator k as a string like "+XZ_" (for tests).
    std::string stabilizer(uint32_t k) const;

   private:
    uint32_t n_;
    size_t words_;
    std::vector<uint64_t> bits_;  // 2n+1 rows of [x | z]; last row is scratch
    std::vector<uint8_t> signs_;

    uint64_t *xs(size_t r) {
        return &bits_[r * 2 * words_];
    }
    uint64_t *zs(size_t r) {
        return &bits_[r * 2 * words_ + words_];
    }
    const uint64_t *xs(size_t r) const {
        return &bits_[r * 2 * words_];
    }
    const uint64_t *zs(size_t r) const {
        return &bits_[r * 2 * words_ + words_];
    }
    bool get(const uint64_t *w, uint32_t q) const {
        return (w[q >> 6] >> (q & 63)) & 1;
    }
    void flip(uint64_t *w, uint32_t q) {
        w[q >> 6] ^= uint64_t{1} << (q & 63);
    }
    void rowsum(size_t target, size_t source);
    bool anticommutes(size_t r, const std::vector<uint64_t> &px, const std::vector<uint64_t> &pz) const;
};

/// Noiseless run with seeded intrinsic randomness; returns the measurement
/// record. Throws std::logic_error if any detector has odd parity on it,
/// which means the circuit's detectors are not deterministic.
std::vector<uint8_t> reference_run(const PhysicalCircuit &pc, uint64_t seed);

/// Full tableau simulation of one shot including noise channels.
std::vector<uint8_t> tableau_shot(const PhysicalCircuit &pc, std::mt19937_64 &rng);

/// Parity of every DETECTOR and OBSERVABLE over a measurement record.
struct AnnotationBits {
    std::vector<uint8_t> detectors;
    std::vector<uint8_t> observables;
};
AnnotationBits evaluate_annotations(const PhysicalCircuit &pc, const std::vector<uint8_t> &record);

}  // namespace qcds

#endif
