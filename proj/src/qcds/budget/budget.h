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

#ifndef _QCDS_BUDGET_BUDGET_H
#define _QCDS_BUDGET_BUDGET_H

#include <cstddef>

namespace qcds {

/// Inputs of the closed-form circuit error estimate.
struct BudgetInputs {
    double p_ft = 0;      // logical error of one FT block (one surface, d rounds)
    double p_nft = 0;     // error of one non-fault-tolerant injection
    size_t n_ft = 296;
    size_t n_nft = 14;
    size_t n_logical = 5;  // logical qubits left idle while a feed-forward is late
    double t_round = 1;

    void validate() const;
};

struct ScalingParams {
    double p_phys = 0;
    double p_th = 0.01;
    unsigned distance = 3;
    double prefactor = 0.1;

    void validate() const;
};

/// Probability that an odd number of n independent events, each with
/// probability p, occurs: (1 - (1 - 2p)^n) / 2.
double odd_flip(size_t n, double p);

/// Probability that exactly one of two independent flips occurs.
double combine_flips(double a, double b);

double circuit_error(const BudgetInputs &b);

/// N * p_ft * t_delay / (d * t_round).
double delay_error(size_t n_logical, double p_ft, double t_delay, unsigned distance, double t_round);

/// A * (p_phys / p_th)^((d + 1) / 2).
double scaling_extrapolate(const ScalingParams &s);

/// Fits (prefactor, p_th) through two (distance, logical error) points taken at
/// the same p_phys.
ScalingParams fit_scaling(double p_phys, unsigned d1, double err1, unsigned d2, double err2);

}  // namespace qcds

#endif
