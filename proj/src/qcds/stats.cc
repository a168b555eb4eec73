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


#include "qcds/stats.h"

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <stdexcept>

namespace qcds {

Interval clopper_pearson(size_t k, size_t n, double confidence) {
    if (n == 0 || k > n || confidence <= 0 || confidence >= 1) {
        throw std::invalid_argument("bad binomial interval arguments");
    }
    double alpha = 1 - confidence;
    Interval out;
    if (k > 0) {
        boost::math::beta_distribution<> lo(double(k), double(n - k + 1));
        out.lo = boost::math::quantile(lo, alpha / 2);
    } else {
        out.lo = 0;
    }
    if (k < n) {
        boost::math::beta_distribution<> hi(double(k + 1), double(n - k));
        out.hi = boost::math::quantile(hi, 1 - alpha / 2);
    } else {
        out.hi = 1;
    }
    return out;
}

ChiSquared chi_squared_two_sample(const std::vector<uint64_t> &a, const std::vector<uint64_t> &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("histograms differ in size");
    }
    ChiSquared out;
    size_t bins = 0;
    for (size_t k = 0; k < a.size(); k++) {
        double s = double(a[k]) + double(b[k]);
        if (s == 0) {
            continue;
        }
        double d = double(a[k]) - double(b[k]);
        out.statistic += d * d / s;
        bins++;
    }
    if (bins <= 1) {
        return out;
    }
    out.dof = bins - 1;
    boost::math::chi_squared_distribution<> dist(double(out.dof));
    out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
    return out;
}

double log_log_slope(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("need at least two points");
    }
    double n = double(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t k = 0; k < x.size(); k++) {
        double lx = std::log(x[k]), ly = std::log(y[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace qcds
