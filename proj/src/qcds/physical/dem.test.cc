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


#include "qcds/physical/dem.h"

#include <gtest/gtest.h>

#include <map>

#include "qcds/physical/lowering.h"
#include "qcds/stab/frame_sampler.h"
#include "qcds/stab/tableau.h"

using namespace qcds;

TEST(dem, noiseless_circuit_is_empty) {
    auto pc = lower_physical(memory_schedule('Z', 1), 3, NoiseModel{});
    EXPECT_TRUE(extract_dem(pc).mechanisms.empty());
}

TEST(dem, single_measurement_flip) {
    PhysicalCircuit pc;
    pc.num_qubits = 1;
    pc.instructions = {{Gate::R, 0, {0}}, {Gate::M, 0.125, {0}}, {Gate::DETECTOR, 0, {0}}};
    pc.detectors.resize(1);
    auto dem = extract_dem(pc);
    ASSERT_EQ(dem.mechanisms.size(), 1u);
    EXPECT_EQ(dem.mechanisms[0], (ErrorMechanism{0.125, {0}, 0}));
    EXPECT_EQ(dem.str(), "error(0.125) D0\n");
}

TEST(dem, identical_signatures_merge) {
    PhysicalCircuit pc;
    pc.num_qubits = 1;
    pc.num_observables = 1;
    pc.instructions = {{Gate::R, 0, {0}},
                       {Gate::X_ERROR, 0.1, {0}},
                       {Gate::X_ERROR, 0.2, {0}},
                       {Gate::M, 0, {0}},
                       {Gate::OBSERVABLE, 0, {0}}};
    auto dem = extract_dem(pc);
    ASSERT_EQ(dem.mechanisms.size(), 1u);
    EXPECT_NEAR(dem.mechanisms[0].p, 0.1 * 0.8 + 0.2 * 0.9, 1e-15);
    EXPECT_EQ(dem.mechanisms[0].observables, 1u);
}

TEST(dem, propagates_through_cx_and_h) {
    // X on the control before CX reaches both Z readouts.
    PhysicalCircuit pc;
    pc.num_qubits = 2;
    pc.instructions = {{Gate::R, 0, {0, 1}},   {Gate::X_ERROR, 0.01, {0}}, {Gate::Z_ERROR, 0.02, {1}},
                       {Gate::CX, 0, {0, 1}},  {Gate::H, 0, {1}},          {Gate::M, 0, {0, 1}},
                       {Gate::DETECTOR, 0, {0}}, {Gate::DETECTOR, 0, {1}}};
    pc.detectors.resize(2);
    auto dem = extract_dem(pc);
    // Z on the target before CX is a Z after it (target unchanged), then H -> X: flips m1.
    ASSERT_EQ(dem.mechanisms.size(), 2u);
    std::map<std::vector<uint32_t>, double> got;
    for (auto &e : dem.mechanisms) {
        got[e.detectors] = e.p;
    }
    EXPECT_DOUBLE_EQ(got.at({1}), 0.02);
    // X on control: control reads 1; target gets X then H -> Z: no flip on m1.
    EXPECT_DOUBLE_EQ(got.at({0}), 0.01);
}

namespace {

// Brute-force distance search over DEM mechanisms.
size_t min_undetected_weight(const DetectorErrorModel &dem, size_t cap) {
    std::map<std::vector<uint32_t>, std::vector<uint64_t>> by_dets;
    for (auto &e : dem.mechanisms) {
        if (e.detectors.empty() && e.observables) {
            return 1;
        }
        by_dets[e.detectors].push_back(e.observables);
    }
    for (auto &[d, obs] : by_dets) {
        for (auto o : obs) {
            if (o != obs[0]) {
                return 2;
            }
        }
    }
    if (cap < 3) {
        return 0;
    }
    const auto &m = dem.mechanisms;
    for (size_t i = 0; i < m.size(); i++) {
        for (size_t j = i + 1; j < m.size(); j++) {
            std::vector<uint32_t> x;
            std::set_symmetric_difference(m[i].detectors.begin(), m[i].detectors.end(), m[j].detectors.begin(),
                                          m[j].detectors.end(), std::back_inserter(x));
            auto it = by_dets.find(x);
            if (it == by_dets.end()) {
                continue;
            }
            for (auto o : it->second) {
                if ((o ^ m[i].observables ^ m[j].observables) != 0) {
                    return 3;
                }
            }
        }
    }
    return 0;
}

}  // namespace

TEST(dem, memory_block_has_distance_three) {
    for (char basis : {'Z', 'X'}) {
        auto pc = lower_physical(memory_schedule(basis, 1), 3, NoiseModel::uniform(1e-3));
        EXPECT_EQ(min_undetected_weight(extract_dem(pc), 3), 3u) << basis;
    }
}

TEST(dem, fire_rates_match_sampling) {
    auto pc = lower_physical(memory_schedule('Z', 1), 3, NoiseModel::uniform(3e-3));
    auto dem = extract_dem(pc);
    auto predicted = detector_fire_probabilities(dem);
    const size_t shots = 100000;
    auto batch = frame_sample(pc, reference_run(pc, 1), shots, 7);
    std::vector<size_t> count(pc.num_detectors());
    for (auto &f : batch.fired) {
        for (auto d : f) {
            count[d]++;
        }
    }
    for (size_t d = 0; d < count.size(); d++) {
        double p = predicted[d];
        double sigma = std::sqrt(p * (1 - p) / shots);
        // 3 sigma per detector plus a small allowance for the independent
        // split of the depolarizing channel.
        EXPECT_NEAR(double(count[d]) / shots, p, 3 * sigma + 0.02 * p) << d;
    }
}
