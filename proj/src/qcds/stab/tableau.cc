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


#include "qcds/stab/tableau.h"

#include <bit>
#include <stdexcept>

namespace qcds {

Tableau::Tableau(uint32_t num_qubits)
    : n_(num_qubits),
      words_((num_qubits + 63) / 64),
      bits_((2 * size_t{num_qubits} + 1) * 2 * words_),
      signs_(2 * size_t{num_qubits} + 1) {
    for (uint32_t q = 0; q < n_; q++) {
        flip(xs(q), q);
        flip(zs(n_ + q), q);
    }
}

// Bits (x,z) = (1,1) denote Y, so every row is a Hermitian Pauli.

void Tableau::h(uint32_t q) {
    for (size_t r = 0; r < 2 * size_t{n_}; r++) {
        bool x = get(xs(r), q), z = get(zs(r), q);
        signs_[r] ^= x & z;
        if (x != z) {
            flip(xs(r), q);
            flip(zs(r), q);
        }
    }
}

void Tableau::s(uint32_t q) {
    for (size_t r = 0; r < 2 * size_t{n_}; r++) {
        bool x = get(xs(r), q), z = get(zs(r), q);
        signs_[r] ^= x & z;
        if (x) {
            flip(zs(r), q);
        }
    }
}

void Tableau::sqrt_x(uint32_t q) {
    h(q);
    s(q);
    h(q);
}

void Tableau::cx(uint32_t c, uint32_t t) {
    for (size_t r = 0; r < 2 * size_t{n_}; r++) {
        bool xc = get(xs(r), c), zc = get(zs(r), c), xt = get(xs(r), t), zt = get(zs(r), t);
        signs_[r] ^= xc & zt & (xt == zc);
        if (xc) {
            flip(xs(r), t);
        }
        if (zt) {
            flip(zs(r), c);
        }
    }
}

void Tableau::x(uint32_t q) {
    for (size_t r = 0; r < 2 * size_t{n_}; r++) {
        signs_[r] ^= get(zs(r), q);
    }
}

void Tableau::z(uint32_t q) {
    for (size_t r = 0; r < 2 * size_t{n_}; r++) {
        signs_[r] ^= get(xs(r), q);
    }
}

void Tableau::y(uint32_t q) {
    for (size_t r = 0; r < 2 * size_t{n_}; r++) {
        signs_[r] ^= get(xs(r), q) ^ get(zs(r), q);
    }
}

// target <- source * target; the i-phase is counted per qubit in two bit-planes.
void Tableau::rowsum(size_t target, size_t source) {
    uint64_t cnt1 = 0, cnt2 = 0;
    uint64_t *x1 = xs(target), *z1 = zs(target);
    const uint64_t *x2 = xs(source), *z2 = zs(source);
    for (size_t w = 0; w < words_; w++) {
        uint64_t ox = x1[w], oz = z1[w];
        x1[w] ^= x2[w];
        z1[w] ^= z2[w];
        uint64_t x1z2 = ox & z2[w];
        uint64_t anti = (x2[w] & oz) ^ x1z2;
        cnt2 ^= (cnt1 ^ x1[w] ^ z1[w] ^ x1z2) & anti;
        cnt1 ^= anti;
    }
    unsigned log_i = (std::popcount(cnt1) + 2 * std::popcount(cnt2)) & 3;
    signs_[target] ^= signs_[source] ^ (log_i >> 1);
}

bool Tableau::anticommutes(size_t r, const std::vector<uint64_t> &px, const std::vector<uint64_t> &pz) const {
    uint64_t acc = 0;
    for (size_t w = 0; w < words_; w++) {
        acc ^= (xs(r)[w] & pz[w]) ^ (zs(r)[w] & px[w]);
    }
    return std::popcount(acc) & 1;
}

bool Tableau::measure(const std::vector<std::pair<uint32_t, char>> &pauli, std::mt19937_64 &rng) {
    std::vector<uint64_t> px(words_), pz(words_);
    for (auto [q, p] : pauli) {
        if (q >= n_) {
            throw std::out_of_range("qubit out of range");
        }
        if (p == 'X' || p == 'Y') {
            px[q >> 6] ^= uint64_t{1} << (q & 63);
        }
        if (p == 'Z' || p == 'Y') {
            pz[q >> 6] ^= uint64_t{1} << (q & 63);
        }
    }
    size_t pivot = SIZE_MAX;
    for (size_t r = n_; r < 2 * size_t{n_}; r++) {
        if (anticommutes(r, px, pz)) {
            pivot = r;
            break;
        }
    }
    if (pivot != SIZE_MAX) {
        for (size_t r = 0; r < 2 * size_t{n_}; r++) {
            if (r != pivot && anticommutes(r, px, pz)) {
                rowsum(r, pivot);
            }
        }
        std::copy(xs(pivot), xs(pivot) + 2 * words_, xs(pivot - n_));
        signs_[pivot - n_] = signs_[pivot];
        std::copy(px.begin(), px.end(), xs(pivot));
        std::copy(pz.begin(), pz.end(), zs(pivot));
        bool outcome = rng() & 1;
        signs_[pivot] = outcome;
        return outcome;
    }
    size_t scratch = 2 * size_t{n_};
    std::fill(xs(scratch), xs(scratch) + 2 * words_, 0);
    signs_[scratch] = 0;
    for (size_t r = 0; r < n_; r++) {
        if (anticommutes(r, px, pz)) {
            rowsum(scratch, r + n_);
        }
    }
    return signs_[scratch];
}

void Tableau::reset_z(uint32_t q, std::mt19937_64 &rng) {
    if (measure({{q, 'Z'}}, rng)) {
        x(q);
    }
}

void Tableau::reset_x(uint32_t q, std::mt19937_64 &rng) {
    if (measure({{q, 'X'}}, rng)) {
        z(q);
    }
}

std::string Tableau::stabilizer(uint32_t k) const {
    size_t r = n_ + k;
    std::string out(1, signs_[r] ? '-' : '+');
    for (uint32_t q = 0; q < n_; q++) {
        bool x = get(xs(r), q), z = get(zs(r), q);
        out += x ? (z ? 'Y' : 'X') : (z ? 'Z' : '_');
    }
    return out;
}

namespace {

void apply_pauli(Tableau &t, uint32_t q, unsigned p) {
    // p: 1 = X, 2 = Z, 3 = Y
    if (p == 1) {
        t.x(q);
    } else if (p == 2) {
        t.z(q);
    } else if (p == 3) {
        t.y(q);
    }
}

std::vector<uint8_t> run(const PhysicalCircuit &pc, std::mt19937_64 &rng, bool noisy) {
    Tableau t(pc.num_qubits);
    std::vector<uint8_t> record;
    record.reserve(pc.num_measurements());
    std::uniform_real_distribution<double> u(0, 1);
    auto flip_measure = [&](bool bit, double p) -> uint8_t {
        return bit ^ (noisy && p > 0 && u(rng) < p);
    };
    for (const auto &in : pc.instructions) {
        const auto &ts = in.targets;
        switch (in.gate) {
            case Gate::H:
                for (auto q : ts) t.h(q);
                break;
            case Gate::S:
                for (auto q : ts) t.s(q);
                break;
            case Gate::SQRT_X:
                for (auto q : ts) t.sqrt_x(q);
                break;
            case Gate::CX:
                for (size_t k = 0; k + 1 < ts.size(); k += 2) t.cx(ts[k], ts[k + 1]);
                break;
            case Gate::R:
                for (auto q : ts) t.reset_z(q, rng);
                break;
            case Gate::RX:
                for (auto q : ts) t.reset_x(q, rng);
                break;
            case Gate::M:
                for (auto q : ts) record.push_back(flip_measure(t.measure({{q, 'Z'}}, rng), in.arg));
                break;
            case Gate::MX:
                for (auto q : ts) record.push_back(flip_measure(t.measure({{q, 'X'}}, rng), in.arg));
                break;
            case Gate::MPP: {
                std::vector<std::pair<uint32_t, char>> p;
                for (auto v : ts) {
                    bool x = v & PAULI_X_BIT, z = v & PAULI_Z_BIT;
                    p.push_back({v & QUBIT_MASK, x ? (z ? 'Y' : 'X') : 'Z'});
                }
                record.push_back(flip_measure(t.measure(p, rng), in.arg));
                break;
            }
            case Gate::DEPOLARIZE1:
                if (noisy) {
                    for (auto q : ts) {
                        if (u(rng) < in.arg) {
                            apply_pauli(t, q, 1 + rng() % 3);
                        }
                    }
                }
                break;
            case Gate::DEPOLARIZE2:
                if (noisy) {
                    for (size_t k = 0; k + 1 < ts.size(); k += 2) {
                        if (u(rng) < in.arg) {
                            unsigned v = 1 + rng() % 15;
                            apply_pauli(t, ts[k], v & 3);
                            apply_pauli(t, ts[k + 1], v >> 2);
                        }
                    }
                }
                break;
            case Gate::X_ERROR:
            case Gate::Z_ERROR:
                if (noisy) {
                    for (auto q : ts) {
                        if (u(rng) < in.arg) {
                            apply_pauli(t, q, in.gate == Gate::X_ERROR ? 1 : 2);
                        }
                    }
                }
                break;
            case Gate::TICK:
            case Gate::ROUND:
            case Gate::DETECTOR:
            case Gate::OBSERVABLE:
                break;
        }
    }
    return record;
}

}  // namespace

std::vector<uint8_t> reference_run(const PhysicalCircuit &pc, uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto record = run(pc, rng, false);
    auto bits = evaluate_annotations(pc, record);
    for (size_t k = 0; k < bits.detectors.size(); k++) {
        if (bits.detectors[k]) {
            throw std::logic_error("detector " + std::to_string(k) + " fires on the noiseless reference");
        }
    }
    return record;
}

std::vector<uint8_t> tableau_shot(const PhysicalCircuit &pc, std::mt19937_64 &rng) {
    return run(pc, rng, true);
}

AnnotationBits evaluate_annotations(const PhysicalCircuit &pc, const std::vector<uint8_t> &record) {
    AnnotationBits out;
    out.observables.assign(pc.num_observables, 0);
    for (const auto &in : pc.instructions) {
        if (in.gate != Gate::DETECTOR && in.gate != Gate::OBSERVABLE) {
            continue;
        }
        uint8_t v = 0;
        for (auto m : in.targets) {
            v ^= record.at(m);
        }
        if (in.gate == Gate::DETECTOR) {
            out.detectors.push_back(v);
        } else {
            out.observables.at(static_cast<size_t>(in.arg)) ^= v;
        }
    }
    return out;
}

}  // namespace qcds
