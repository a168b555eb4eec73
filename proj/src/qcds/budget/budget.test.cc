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

#include "qcds/budget/budget.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

using namespace qcds;

TEST(budget, odd_flip_examples) {
    ASSERT_EQ(odd_flip(17, 0), 0);
    ASSERT_DOUBLE_EQ(odd_flip(1, 0.013), 0.013);
    // 50-digit mpmath evaluation of (1 - (1 - 2p)^n) / 2.
    ASSERT_NEAR(odd_flip(296, 5e-5), 0.014583823760409162800, 1e-15);
    ASSERT_NEAR(odd_flip(14, 0.0037), 0.049380691907643185888, 1e-15);
    ASSERT_THROW(odd_flip(3, 0.6), std::invalid_argument);
    ASSERT_THROW(odd_flip(3, -0.1), std::invalid_argument);
}

TEST(budget, odd_flip_matches_binomial_sum) {
    for (size_t n : {1, 2, 5, 14, 40}) {
        for (double p : {1e-4, 0.01, 0.2, 0.5}) {
            double total = 0;
            for (size_t k = 1; k <= n; k += 2) {
                total += std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0)) *
                         std::pow(p, k) * std::pow(1 - p, n - k);
            }
            ASSERT_NEAR(odd_flip(n, p), total, 1e-12);
        }
    }
}

TEST(budget, odd_flip_monotone_and_bounded) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> pd(1e-6, 0.02);
    for (int rep = 0; rep < 500; rep++) {
        double p = pd(rng);
        size_t n = rng() % 300 + 1;
        ASSERT_LT(odd_flip(n, p), odd_flip(n + 1, p));
        ASSERT_LT(odd_flip(n, p * 0.9), odd_flip(n, p));
        ASSERT_LE(odd_flip(n, p), 0.5);
    }
    // Saturates at one half.
    ASSERT_NEAR(odd_flip(2000, 0.3), 0.5, 1e-15);
}

TEST(budget, circuit_error_properties) {
    BudgetInputs b;
    ASSERT_EQ(circuit_error(b), 0);

    b.p_ft = 0;
    b.p_nft = 0.0037;
    ASSERT_DOUBLE_EQ(circuit_error(b), odd_flip(14, 0.0037));

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> pd(0, 0.05);
    for (int rep = 0; rep < 300; rep++) {
        BudgetInputs x;
        x.p_ft = pd(rng);
        x.p_nft = pd(rng);
        x.n_ft = rng() % 400;
        x.n_nft = rng() % 30;
        BudgetInputs swapped = x;
        std::swap(swapped.p_ft, swapped.p_nft);
        std::swap(swapped.n_ft, swapped.n_nft);
        double e = circuit_error(x);
        ASSERT_NEAR(e, circuit_error(swapped), 1e-15);
        double a = odd_flip(x.n_ft, x.p_ft);
        double c = odd_flip(x.n_nft, x.p_nft);
        ASSERT_LE(e, a + c + 1e-15);
        ASSERT_GE(e, std::max(a, c) - a * c - 1e-15);
    }
}

TEST(budget, delay_error_examples) {
    ASSERT_EQ(delay_error(5, 5e-5, 0, 5, 1), 0);
    ASSERT_NEAR(delay_error(5, 5e-5, 20, 5, 1), 1e-3, 1e-15);
    double base = delay_error(5, 2e-4, 7, 3, 1.5);
    ASSERT_NEAR(delay_error(5, 2e-4, 14, 3, 1.5), 2 * base, 1e-15);
    ASSERT_NEAR(delay_error(10, 2e-4, 7, 3, 1.5), 2 * base, 1e-15);
    ASSERT_NEAR(delay_error(5, 4e-4, 7, 3, 1.5), 2 * base, 1e-15);
    ASSERT_NEAR(delay_error(5, 2e-4, 7, 6, 1.5), base / 2, 1e-15);
    ASSERT_NEAR(delay_error(5, 2e-4, 7, 3, 3.0), base / 2, 1e-15);
    ASSERT_THROW(delay_error(5, 1e-4, -1, 3, 1), std::invalid_argument);
}

TEST(budget, scaling_extrapolate) {
    ScalingParams s;
    s.p_phys = 0.01;
    s.p_th = 0.01;
    s.prefactor = 0.07;
    s.distance = 5;
    ASSERT_DOUBLE_EQ(scaling_extrapolate(s), 0.07);

    s.p_phys = 0.002;
    double e5 = scaling_extrapolate(s);
    s.distance = 7;
    ASSERT_NEAR(scaling_extrapolate(s) / e5, 0.2, 1e-12);

    auto fit = fit_scaling(0.002, 3, 1e-3, 5, 2e-4);
    fit.distance = 3;
    ASSERT_NEAR(scaling_extrapolate(fit), 1e-3, 1e-15);
    fit.distance = 5;
    ASSERT_NEAR(scaling_extrapolate(fit), 2e-4, 1e-15);
    fit.distance = 7;
    ASSERT_NEAR(scaling_extrapolate(fit), 4e-5, 1e-15);

    s.distance = 4;
    ASSERT_THROW(scaling_extrapolate(s), std::invalid_argument);
}
