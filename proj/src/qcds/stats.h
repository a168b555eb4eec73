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


#ifndef _QCDS_STATS_H
#define _QCDS_STATS_H

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qcds {

struct Interval {
    double lo = 0;
    double hi = 1;
};

/// Exact binomial (Clopper-Pearson) interval for k successes in n trials.
Interval clopper_pearson(size_t k, size_t n, double confidence);

struct ChiSquared {
    double statistic = 0;
    size_t dof = 0;
    double p_value = 1;
};

/// Two-sample homogeneity test over histograms with equal totals.
ChiSquared chi_squared_two_sample(const std::vector<uint64_t> &a, const std::vector<uint64_t> &b);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double> &x, const std::vector<double> &y);

}  // namespace qcds

#endif
