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

#include <gtest/gtest.h>

#include <complex>

using namespace qcds;

namespace {

// Dense statevector used as an independent oracle on a few qubits.
struct Dense {
    using C = std::complex<double>;
    uint32_t n;
    std::vector<C> amp;
    explicit Dense(uint32_t n) : n(n), amp(size_t{1} << n) {
        amp[0] = 1;
    }
    void one(uint32_t q, C a, C b, C c, C d) {
        for (size_t i = 0; i < amp.size(); i++) {
            if (!(i >> q & 1)) {
                size_t j = i | (size_t{1} << q);
                C u = amp[i], v = amp[j];
                amp[i] = a * u + b * v;
                amp[j] = c * u + d * v;
            }
        }
    }
    void h(uint32_t q) {
        double s = std::sqrt(0.5);
        one(q, s, s, s, -s);
    }
    void s(uint32_t q) {
        one(q, 1, 0, 0, C(0, 1));
    }
    void cx(uint32_t c, uint32_t t) {
        for (size_t i = 0; i < amp.size(); i++) {
            if ((i >> c & 1) && !(i >> t & 1)) {
                std::swap(amp[i], amp[i | (size_t{1} << t)]);
            }
        }
    }
    // <psi| P |psi> for a Pauli string
    double expect(const std::string &p) const {
        C acc = 0;
        for (size_t i = 0; i < amp.size(); i++) {
            size_t j = i;
            C phase = 1;
            for (uint32_t q = 0; q < n; q++) {
                bool bit = i >> q & 1;
                char c = p[q];
                if (c == 'X' || c == 'Y') {
                    j ^= size_t{1} << q;
                }
                if (c == 'Z' && bit) {
                    phase = -phase;
                }
                if (c == 'Y') {
                    phase *= bit ? C(0, -1) : C(0, 1);
                }
            }
            acc += std::conj(amp[j]) * phase * amp[i];
        }
        return acc.real();
    }
};

}  // namespace

TEST(tableau, stabilizers_match_dense_oracle) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; trial++) {
        uint32_t n = 1 + rng() % 4;
        Tableau t(n);
        Dense d(n);
        for (int k = 0; k < 12; k++) {
            uint32_t a = rng() % n, b = rng() % n;
            switch (rng() % 4) {
                case 0:
                    t.h(a), d.h(a);
                    break;
                case 1:
                    t.s(a), d.s(a);
                    break;
                case 2:
                    t.sqrt_x(a), d.h(a), d.s(a), d.h(a);
                    break;
                default:
                    if (a != b) {
                        t.cx(a, b), d.cx(a, b);
                    }
            }
        }
        for (uint32_t k = 0; k < n; k++) {
            auto s = t.stabilizer(k);
            double e = d.expect(s.substr(1));
            EXPECT_NEAR(e, s[0] == '-' ? -1.0 : 1.0, 1e-9) << s;
        }
    }
}

TEST(tableau, bell_pair_measurements) {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 20; k++) {
        Tableau t(2);
        t.h(0);
        t.cx(0, 1);
        EXPECT_FALSE(t.measure({{0, 'X'}, {1, 'X'}}, rng));
        EXPECT_TRUE(t.measure({{0, 'Y'}, {1, 'Y'}}, rng));
        bool a = t.measure_z(0, rng);
        EXPECT_EQ(t.measure_z(1, rng), a);
    }
}

TEST(tableau, y_eigenstate_via_sqrt_x) {
    std::mt19937_64 rng(2);
    Tableau t(1);
    t.sqrt_x(0);
    EXPECT_EQ(t.stabilizer(0), "-Y");
    EXPECT_TRUE(t.measure({{0, 'Y'}}, rng));
}

TEST(tableau, reference_run_simple) {
    PhysicalCircuit pc;
    pc.num_qubits = 1;
    pc.instructions = {{Gate::R, 0, {0}}, {Gate::M, 0, {0}}, {Gate::DETECTOR, 0, {0}}};
    pc.detectors.resize(1);
    auto rec = reference_run(pc, 3);
    ASSERT_EQ(rec.size(), 1u);
    EXPECT_EQ(rec[0], 0);

    pc.instructions = {{Gate::RX, 0, {0}}, {Gate::M, 0, {0}}, {Gate::DETECTOR, 0, {0}}};
    bool threw = false;
    for (uint64_t seed = 0; seed < 20; seed++) {
        try {
            reference_run(pc, seed);
        } catch (const std::logic_error &) {
            threw = true;
        }
    }
    EXPECT_TRUE(threw);
}
