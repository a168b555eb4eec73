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
#include <stdexcept>
#include <string>

namespace qcds {

namespace {

void check_probability(double p, const char *name) {
    if (!(p >= 0 && p <= 0.5)) {
        throw std::invalid_argument(std::string(name) + " must be in [0, 0.5]");
    }
}

}  // namespace

void BudgetInputs::validate() const {
    check_probability(p_ft, "p_ft");
    check_probability(p_nft, "p_nft");
    if (!(t_round > 0)) {
        throw std::invalid_argument("t_round must be positive");
    }
}

void ScalingParams::validate() const {
    if (!(p_th > 0 && p_th <= 0.1)) {
        throw std::invalid_argument("p_th must be in (0, 0.1]");
    }
    if (distance < 3 || distance % 2 == 0) {
        throw std::invalid_argument("distance must be odd and at least 3");
    }
    if (!(p_phys >= 0)) {
        throw std::invalid_argument("p_phys must be nonnegative");
    }
}

double odd_flip(size_t n, double p) {
    check_probability(p, "p");
    // expm1/log1p keep precision when n*p is tiny.
    return -0.5 * std::expm1(static_cast<double>(n) * std::log1p(-2 * p));
}

double combine_flips(double a, double b) {
    return a * (1 - b) + b * (1 - a);
}

double circuit_error(const BudgetInputs &b) {
    b.validate();
    return combine_flips(odd_flip(b.n_ft, b.p_ft), odd_flip(b.n_nft, b.p_nft));
}

double delay_error(size_t n_logical, double p_ft, double t_delay, unsigned distance, double t_round) {
    if (t_delay < 0 || distance == 0 || !(t_round > 0)) {
        throw std::invalid_argument("delay_error needs t_delay >= 0, d > 0 and t_round > 0");
    }
    return static_cast<double>(n_logical) * p_ft * t_delay / (distance * t_round);
}

double scaling_extrapolate(const ScalingParams &s) {
    s.validate();
    return s.prefactor * std::pow(s.p_phys / s.p_th, (s.distance + 1) / 2.0);
}

ScalingParams fit_scaling(double p_phys, unsigned d1, double err1, unsigned d2, double err2) {
    if (d1 == d2 || !(err1 > 0) || !(err2 > 0)) {
        throw std::invalid_argument("fit_scaling needs two distinct distances with positive errors");
    }
    // log err = log A + ((d + 1) / 2) * log(p / p_th)
    double slope = (std::log(err2) - std::log(err1)) / ((d2 + 1) / 2.0 - (d1 + 1) / 2.0);
    ScalingParams s;
    s.p_phys = p_phys;
    s.p_th = p_phys / std::exp(slope);
    s.prefactor = err1 / std::exp(slope * (d1 + 1) / 2.0);
    s.distance = d1;
    return s;
}

}  // namespace qcds
