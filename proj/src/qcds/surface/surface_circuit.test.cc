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


#include "qcds/surface/surface_circuit.h"

#include <cmath>

#include "gtest/gtest.h"
#include "qcds/io_util.h"

using namespace qcds;

TEST(surface_circuit, empty_schedule) {
    auto s = load_reference_schedule("");
    auto m = census(s);
    ASSERT_EQ(s.timestamps.size(), 0u);
    ASSERT_EQ(m.total_surfaces, 0u);
    ASSERT_EQ(m.decoding_tasks, 0u);
    ASSERT_EQ(m.ft_gate_count, 0u);
}

TEST(surface_circuit, single_idle) {
    auto s = load_reference_schedule(R"(
grid 1 1
t 0:
  INITZ (0,0)
t 1:
  IDLE (0,0)
t 2:
  MZ (0,0) task=1
)");
    auto m = census(s);
    ASSERT_EQ(m.total_surfaces, 1u);
    ASSERT_EQ(m.ft_gate_count, 3u);
    ASSERT_EQ(m.total_measurements, 1u);
    ASSERT_EQ(m.decoding_tasks, 1u);
    ASSERT_EQ(m.feed_forward_gates, 0u);
}

TEST(surface_circuit, rejects_double_use) {
    auto s = parse_surface(R"(
grid 2 1
t 0:
  INITZ (0,0)
  INITZ (0,1)
t 1:
  ZZ (0,0)(0,1)
  IDLE (0,0)
)");
    try {
        s.validate();
        FAIL() << "expected ScheduleError";
    } catch (const ScheduleError &e) {
        ASSERT_EQ(e.timestamp, 1u);
        ASSERT_TRUE(e.cell.has_value());
        ASSERT_EQ(*e.cell, (Coord{0, 0}));
    }
}

TEST(surface_circuit, rejects_broken_path) {
    auto s = parse_surface(R"(
grid 3 1
t 0:
  INITZ (0,0)
  INITZ (0,2)
t 1:
  ZZ (0,0)(0,2)
)");
    ASSERT_THROW(s.validate(), ScheduleError);
}

TEST(surface_circuit, rejects_noncommuting_feed_forward) {
    // The pending Z-type correction on (0,0) must not be delayed past an
    // X-basis parity on the same surface.
    std::string head = R"(
grid 3 2
t 0:
  INITX (0,0)
  INITMAGIC (1,0)
  INITX (0,2)
t 1:
  ZZ (0,0)(1,0)
  IDLE (0,2)
t 2:
  MX (1,0) task=1
)";
    std::string ok_tail = R"(  ZZ (0,0)(0,1)(0,2)
t 3:
  INITS (1,0) cond task=1
  IDLE (0,0)
  IDLE (0,2)
t 4:
  ZZ (0,0)(1,0) cond task=1
  IDLE (0,2)
t 5:
  MX (1,0) cond task=1
  MX (0,0) task=2
  MX (0,2) task=2
)";
    std::string bad_tail = R"(  XX (0,0)(0,1)(0,2)
t 3:
  INITS (1,0) cond task=1
  IDLE (0,0)
  IDLE (0,2)
t 4:
  ZZ (0,0)(1,0) cond task=1
  IDLE (0,2)
t 5:
  MX (1,0) cond task=1
  MX (0,0) task=2
  MX (0,2) task=2
)";
    ASSERT_NO_THROW(load_reference_schedule(head + ok_tail));
    ASSERT_THROW(load_reference_schedule(head + bad_tail), ScheduleError);
}

TEST(surface_circuit, round_trip) {
    auto s = load_reference_schedule(fixture_text("shor21.surface"));
    auto again = load_reference_schedule(s.str());
    ASSERT_EQ(s, again);
}

TEST(surface_circuit, shor21_census) {
    auto s = load_reference_schedule(fixture_text("shor21.surface"));
    auto m = census(s);
    ASSERT_EQ(s.timestamps.size(), 40u);
    ASSERT_EQ(m.total_surfaces, 18u);
    ASSERT_EQ(m.decoding_tasks, 13u);
    ASSERT_EQ(m.total_measurements, 105u);
    ASSERT_EQ(m.ft_gate_count, 296u);
    ASSERT_EQ(m.feed_forward_gates, 12u);
    ASSERT_EQ(m.nft_block_count, 14u);
    ASSERT_EQ(std::round(m.avg_ff_latency_d_rounds * 10) / 10, 2.1);
    ASSERT_NEAR(m.avg_active_surfaces, 7.5, 0.5);
}
