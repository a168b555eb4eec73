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


#include "qcds/stab/frame_sampler.h"

#include <algorithm>
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

namespace qcds {

namespace {

constexpr size_t W = SHOT_BLOCK / 64;

struct Block {
    std::vector<std::vector<uint32_t>> fired;
    std::vector<uint64_t> observables;
    std::vector<std::vector<uint8_t>> measurements;
};

class FrameBlock {
   public:
    FrameBlock(const PhysicalCircuit &pc, uint64_t seed, uint64_t block)
        : pc_(pc), x_(pc.num_qubits * W), z_(pc.num_qubits * W), rec_(pc.num_measurements() * W) {
        std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                          static_cast<uint32_t>(block), static_cast<uint32_t>(block >> 32)};
        rng_.seed(seq);
        for (auto &w : z_) {
            w = rng_();
        }
    }

    void run() {
        for (const auto &in : pc_.instructions) {
            step(in);
        }
    }

    Block collect(size_t shots, const std::vector<uint8_t> &reference, bool keep_meas) const {
        Block out;
        out.fired.resize(shots);
        out.observables.assign(shots, 0);
        uint32_t det = 0;
        std::array<uint64_t, W> acc;
        for (const auto &in : pc_.instructions) {
            if (in.gate != Gate::DETECTOR && in.gate != Gate::OBSERVABLE) {
                continue;
            }
            acc.fill(0);
            for (auto m : in.targets) {
                for (size_t w = 0; w < W; w++) {
                    acc[w] ^= rec_[m * W + w];
                }
            }
            for (size_t w = 0; w < W; w++) {
                for (uint64_t bits = acc[w]; bits; bits &= bits - 1) {
                    size_t shot = w * 64 + std::countr_zero(bits);
                    if (shot >= shots) {
                        continue;
                    }
                    if (in.gate == Gate::DETECTOR) {
                        out.fired[shot].push_back(det);
                    } else {
                        out.observables[shot] ^= uint64_t{1} << static_cast<uint32_t>(in.arg);
                    }
                }
            }
            det += in.gate == Gate::DETECTOR;
        }
        if (keep_meas) {
            size_t nm = rec_.size() / W;
            out.measurements.assign(shots, std::vector<uint8_t>(nm));
            for (size_t m = 0; m < nm; m++) {
                for (size_t s = 0; s < shots; s++) {
                    out.measurements[s][m] = reference[m] ^ (rec_[m * W + s / 64] >> (s % 64) & 1);
                }
            }
        }
        return out;
    }

   private:
    const PhysicalCircuit &pc_;
    std::vector<uint64_t> x_, z_, rec_;
    size_t meas_ = 0;
    std::mt19937_64 rng_;

    uint64_t *X(uint32_t q) {
        return &x_[q * W];
    }
    uint64_t *Z(uint32_t q) {
        return &z_[q * W];
    }
    uint64_t *rec(size_t m) {
        return &rec_[m * W];
    }
    void randomize(uint64_t *row) {
        for (size_t w = 0; w < W; w++) {
            row[w] ^= rng_();
        }
    }
    void clear(uint64_t *row) {
        std::fill(row, row + W, 0);
    }

    // Visits every (slot, shot) hit with probability p among `slots` slots.
    template <typename F>
    void sample_hits(size_t slots, double p, F &&hit) {
        if (p <= 0) {
            return;
        }
        size_t total = slots * SHOT_BLOCK;
        if (p >= 1) {
            for (size_t k = 0; k < total; k++) {
                hit(k / SHOT_BLOCK, k % SHOT_BLOCK);
            }
            return;
        }
        std::geometric_distribution<uint64_t> skip(p);
        for (uint64_t k = skip(rng_); k < total; k += 1 + skip(rng_)) {
            hit(k / SHOT_BLOCK, k % SHOT_BLOCK);
        }
    }

    void pauli(uint32_t q, size_t shot, unsigned p) {
        uint64_t bit = uint64_t{1} << (shot % 64);
        if (p & 1) {
            X(q)[shot / 64] ^= bit;
        }
        if (p & 2) {
            Z(q)[shot / 64] ^= bit;
        }
    }

    void step(const Instruction &in) {
        const auto &t = in.targets;
        switch (in.gate) {
            case Gate::H:
                for (auto q : t) {
                    std::swap_ranges(X(q), X(q) + W, Z(q));
                }
                break;
            case Gate::S:
                for (auto q : t) {
                    for (size_t w = 0; w < W; w++) Z(q)[w] ^= X(q)[w];
                }
                break;
            case Gate::SQRT_X:
                for (auto q : t) {
                    for (size_t w = 0; w < W; w++) X(q)[w] ^= Z(q)[w];
                }
                break;
            case Gate::CX:
                for (size_t k = 0; k + 1 < t.size(); k += 2) {
                    uint32_t c = t[k], g = t[k + 1];
                    for (size_t w = 0; w < W; w++) {
                        X(g)[w] ^= X(c)[w];
                        Z(c)[w] ^= Z(g)[w];
                    }
                }
                break;
            case Gate::R:
                for (auto q : t) {
                    clear(X(q));
                    randomize(Z(q));
                }
                break;
            case Gate::RX:
                for (auto q : t) {
                    clear(Z(q));
                    randomize(X(q));
                }
                break;
            case Gate::M:
            case Gate::MX: {
                size_t first = meas_;
                for (auto q : t) {
                    bool z = in.gate == Gate::M;
                    std::copy(z ? X(q) : Z(q), (z ? X(q) : Z(q)) + W, rec(meas_++));
                    randomize(z ? Z(q) : X(q));
                }
                sample_hits(t.size(), in.arg, [&](size_t k, size_t s) {
                    rec(first + k)[s / 64] ^= uint64_t{1} << (s % 64);
                });
                break;
            }
            case Gate::MPP: {
                uint64_t *r = rec(meas_++);
                uint64_t gauge[W];
                for (size_t w = 0; w < W; w++) {
                    gauge[w] = rng_();
                }
                for (auto v : t) {
                    uint32_t q = v & QUBIT_MASK;
                    for (size_t w = 0; w < W; w++) {
                        if (v & PAULI_Z_BIT) r[w] ^= X(q)[w];
                        if (v & PAULI_X_BIT) r[w] ^= Z(q)[w];
                    }
                }
                for (auto v : t) {
                    uint32_t q = v & QUBIT_MASK;
                    for (size_t w = 0; w < W; w++) {
                        if (v & PAULI_X_BIT) X(q)[w] ^= gauge[w];
                        if (v & PAULI_Z_BIT) Z(q)[w] ^= gauge[w];
                    }
                }
                sample_hits(1, in.arg, [&](size_t, size_t s) { r[s / 64] ^= uint64_t{1} << (s % 64); });
                break;
            }
            case Gate::DEPOLARIZE1:
                sample_hits(t.size(), in.arg, [&](size_t k, size_t s) { pauli(t[k], s, 1 + rng_() % 3); });
                break;
            case Gate::DEPOLARIZE2:
                sample_hits(t.size() / 2, in.arg, [&](size_t k, size_t s) {
                    unsigned v = 1 + rng_() % 15;
                    pauli(t[2 * k], s, v & 3);
                    pauli(t[2 * k + 1], s, v >> 2);
                });
                break;
            case Gate::X_ERROR:
                sample_hits(t.size(), in.arg, [&](size_t k, size_t s) { pauli(t[k], s, 1); });
                break;
            case Gate::Z_ERROR:
                sample_hits(t.size(), in.arg, [&](size_t k, size_t s) { pauli(t[k], s, 2); });
                break;
            case Gate::TICK:
            case Gate::ROUND:
            case Gate::DETECTOR:
            case Gate::OBSERVABLE:
                break;
        }
    }
};

}  // namespace

ShotBatch frame_sample(const PhysicalCircuit &pc, const std::vector<uint8_t> &reference, size_t shots,
                       uint64_t seed, const SampleOptions &opts) {
    if (reference.size() != pc.num_measurements()) {
        throw std::invalid_argument("reference record does not match the circuit");
    }
    if (pc.num_observables > 64) {
        throw std::invalid_argument("at most 64 observables are supported");
    }
    size_t blocks = (shots + SHOT_BLOCK - 1) / SHOT_BLOCK;
    std::vector<Block> results(blocks);
    auto work = [&](size_t first, size_t stride) {
        for (size_t b = first; b < blocks; b += stride) {
            FrameBlock fb(pc, seed, b);
            fb.run();
            results[b] = fb.collect(std::min(SHOT_BLOCK, shots - b * SHOT_BLOCK), reference, opts.keep_measurements);
        }
    };
    unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(blocks)));
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < threads; k++) {
            pool.emplace_back(work, k, threads);
        }
        for (auto &th : pool) {
            th.join();
        }
    }

    ShotBatch out;
    out.seed = seed;
    out.num_detectors = static_cast<uint32_t>(pc.detectors.size());
    out.num_observables = pc.num_observables;
    out.num_measurements = static_cast<uint32_t>(pc.num_measurements());
    out.fired.reserve(shots);
    out.observables.reserve(shots);
    for (auto &b : results) {
        std::move(b.fired.begin(), b.fired.end(), std::back_inserter(out.fired));
        out.observables.insert(out.observables.end(), b.observables.begin(), b.observables.end());
        std::move(b.measurements.begin(), b.measurements.end(), std::back_inserter(out.measurements));
    }
    out.keep.assign(shots, 1);
    return out;
}

ShotBatch postselect_expansion(ShotBatch batch, const PhysicalCircuit &pc, bool *tagged) {
    bool any = std::any_of(pc.detectors.begin(), pc.detectors.end(), [](auto &d) { return d.postselect; });
    if (tagged) {
        *tagged = any;
    }
    for (size_t s = 0; any && s < batch.shots(); s++) {
        for (auto d : batch.fired[s]) {
            if (pc.detectors.at(d).postselect) {
                batch.keep[s] = 0;
                break;
            }
        }
    }
    return batch;
}

size_t ShotBatch::kept() const {
    return static_cast<size_t>(std::count(keep.begin(), keep.end(), uint8_t{1}));
}

bool ShotBatch::detector(size_t shot, uint32_t k) const {
    const auto &f = fired.at(shot);
    return std::binary_search(f.begin(), f.end(), k);
}

void ShotBatch::append(const ShotBatch &other) {
    if (other.num_detectors != num_detectors || other.num_observables != num_observables) {
        throw std::invalid_argument("cannot merge batches of different circuits");
    }
    fired.insert(fired.end(), other.fired.begin(), other.fired.end());
    observables.insert(observables.end(), other.observables.begin(), other.observables.end());
    keep.insert(keep.end(), other.keep.begin(), other.keep.end());
    measurements.insert(measurements.end(), other.measurements.begin(), other.measurements.end());
}

namespace {

constexpr char MAGIC[8] = {'Q', 'C', 'D', 'S', 'S', 'H', 'O', 'T'};

template <typename T>
void put(std::ostream &out, T v) {
    out.write(reinterpret_cast<const char *>(&v), sizeof v);
}

template <typename T>
T get(std::istream &in) {
    T v{};
    in.read(reinterpret_cast<char *>(&v), sizeof v);
    if (!in) {
        throw std::runtime_error("truncated shot file");
    }
    return v;
}

}  // namespace

// Layout (little endian): magic, u32 version, u64 shots, u32 detectors,
// u32 observables, u64 seed, then per shot: detector bits (LSB first,
// padded to bytes), u64 observable mask, u8 keep.
void ShotBatch::write_binary(std::ostream &out) const {
    out.write(MAGIC, sizeof MAGIC);
    put<uint32_t>(out, 1);
    put<uint64_t>(out, shots());
    put<uint32_t>(out, num_detectors);
    put<uint32_t>(out, num_observables);
    put<uint64_t>(out, seed);
    std::vector<char> bytes((num_detectors + 7) / 8);
    for (size_t s = 0; s < shots(); s++) {
        std::fill(bytes.begin(), bytes.end(), 0);
        for (auto d : fired[s]) {
            bytes[d / 8] |= static_cast<char>(1 << (d % 8));
        }
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        put<uint64_t>(out, observables[s]);
        put<uint8_t>(out, keep[s]);
    }
}

ShotBatch ShotBatch::read_binary(std::istream &in) {
    char magic[sizeof MAGIC];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, MAGIC, sizeof MAGIC) != 0) {
        throw std::runtime_error("not a shot file");
    }
    if (get<uint32_t>(in) != 1) {
        throw std::runtime_error("unsupported shot file version");
    }
    ShotBatch b;
    auto shots = get<uint64_t>(in);
    b.num_detectors = get<uint32_t>(in);
    b.num_observables = get<uint32_t>(in);
    b.seed = get<uint64_t>(in);
    std::vector<unsigned char> bytes((b.num_detectors + 7) / 8);
    for (uint64_t s = 0; s < shots; s++) {
        in.read(reinterpret_cast<char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        std::vector<uint32_t> f;
        for (uint32_t d = 0; d < b.num_detectors; d++) {
            if (bytes[d / 8] >> (d % 8) & 1) {
                f.push_back(d);
            }
        }
        b.fired.push_back(std::move(f));
        b.observables.push_back(get<uint64_t>(in));
        b.keep.push_back(get<uint8_t>(in));
    }
    return b;
}

void ShotBatch::write_csv_summary(std::ostream &out) const {
    std::vector<size_t> det(num_detectors), obs(num_observables);
    size_t n = 0;
    for (size_t s = 0; s < shots(); s++) {
        if (!keep[s]) {
            continue;
        }
        n++;
        for (auto d : fired[s]) {
            det[d]++;
        }
        for (uint32_t k = 0; k < num_observables; k++) {
            obs[k] += observable(s, k);
        }
    }
    out << "kind,index,fired,shots,rate\n";
    auto row = [&](const char *kind, size_t k, size_t c) {
        out << kind << ',' << k << ',' << c << ',' << n << ',' << (n ? double(c) / double(n) : 0.0) << '\n';
    };
    for (size_t k = 0; k < det.size(); k++) {
        row("detector", k, det[k]);
    }
    for (size_t k = 0; k < obs.size(); k++) {
        row("observable", k, obs[k]);
    }
}

}  // namespace qcds
