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

#ifndef _QCDS_CDS_CDS_SIM_H
#define _QCDS_CDS_CDS_SIM_H

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "qcds/physical/circuit.h"
#include "qcds/tasks/task_graph.h"

namespace qcds {

enum class DecodeTimeModel : uint8_t {
    Volume,     // alpha * FT blocks + beta
    Syndromes,  // alpha * expected syndromes * (1 - predecode_factor) + beta
    Overrun,    // beta; every feed-forward lands overrun_rounds past its deadline
};

struct CDSConfig {
    double t_round = 1;
    double channel_latency = 0;  // one way
    double bandwidth = std::numeric_limits<double>::infinity();  // bits per t_round
    uint32_t workers = 1;
    DecodeTimeModel model = DecodeTimeModel::Volume;
    double alpha = 0;
    double beta = 0;
    double overrun_rounds = 0;
    double predecode_factor = 0;
    uint32_t distance = 3;
    double p_phys = 1e-3;
    double p_ft = 0;  // per FT block, feeds the delay penalty
    size_t n_logical = 5;

    void validate() const;
    std::string str() const;
};

/// Flat `key = value` lines; '#' starts a comment. Unknown keys are errors.
CDSConfig parse_cds_config(std::string_view text);

struct TaskTiming {
    uint32_t id = 0;
    double final_time = 0;    // final measurement taken
    double ready_time = 0;    // data and shape inputs delivered
    double decode_start = 0;
    double decode_end = 0;
    double apply_time = 0;    // result (with frame inputs) back at the controller
    double deadline = 0;      // when the circuit reached the feed-forward, if any
    double t_delay = 0;
    bool has_feedforward = false;
};

struct CDSReport {
    std::vector<TaskTiming> tasks;  // indexed like TaskGraphReport::tasks
    double total_delay = 0;
    size_t delayed_events = 0;
    double added_error = 0;
    size_t peak_concurrent_decodes = 0;
    /// Bits still queued when each round's bits are emitted.
    std::vector<double> backlog_bits;
    double peak_backlog_bits = 0;
    double circuit_end = 0;  // nominal length stretched by the stalls
    double makespan = 0;

    std::string trace() const;
};

/// Deterministic event-driven run of the controller-decoder loop. A late
/// feed-forward stalls the whole circuit; stalls are served one task at a
/// time, so the stretch equals the sum of the delays.
CDSReport simulate_cds(const TaskGraphReport &tasks, const Table2Metrics &metrics, const CDSConfig &cfg);

struct CDSSweepRow {
    CDSConfig cfg;
    CDSReport report;
};

std::vector<CDSSweepRow> sweep_cds(
    const TaskGraphReport &tasks, const Table2Metrics &metrics, const std::vector<CDSConfig> &grid);

std::string sweep_csv(const std::vector<CDSSweepRow> &rows);

}  // namespace qcds

#endif
