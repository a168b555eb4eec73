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

#ifndef _QCDS_TASKS_TASK_GRAPH_H
#define _QCDS_TASKS_TASK_GRAPH_H

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcds/physical/circuit.h"
#include "qcds/physical/dem.h"
#include "qcds/stab/frame_sampler.h"
#include "qcds/surface/surface_circuit.h"

namespace qcds {

/// One surface during one timestamp.
using Block = std::pair<Coord, size_t>;

struct DecodingTask {
    uint32_t id = 0;
    size_t start_ts = 0;
    size_t end_ts = 0;
    size_t final_ts = 0;
    std::vector<Block> blocks;
    /// Timestamp of the first feed-forward gate conditioned on this task.
    std::optional<size_t> feedforward_ts;
    size_t volume_ft_blocks = 0;

    /// Timestamps between the final measurement and the feed-forward gate.
    std::optional<size_t> slack_d_rounds() const {
        if (!feedforward_ts) {
            return std::nullopt;
        }
        return *feedforward_ts - final_ts;
    }
};

enum class DependencyKind : uint8_t { Shape, Frame };

struct TaskDependency {
    uint32_t from = 0;
    uint32_t to = 0;
    DependencyKind kind = DependencyKind::Frame;
    bool operator==(const TaskDependency &other) const = default;
};

struct SyndromeEstimate {
    uint32_t distance = 0;
    double p = 0;
    std::vector<double> per_task;  // indexed like TaskGraphReport::tasks
};

struct TaskGraphReport {
    std::vector<DecodingTask> tasks;  // sorted by id
    std::vector<TaskDependency> dependencies;
    size_t max_parallel = 0;
    /// Whether timestamp t runs stabilizer rounds (anything but readouts).
    std::vector<bool> ts_has_rounds;
    std::map<Block, uint32_t> owner;
    std::vector<SyndromeEstimate> syndromes;

    size_t index_of(uint32_t id) const;
    /// Task index owning the block; throws if the block does not exist.
    size_t owner_index(Coord cell, size_t ts) const;
    std::vector<uint32_t> predecessors(uint32_t id, DependencyKind kind) const;

    std::string dot() const;
    std::string csv() const;
};

class TaskGraphError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Partitions the schedule into decoding tasks. Each (surface, timestamp)
/// block goes to the feed-forward task with the earliest final measurement
/// whose final block it can influence; blocks feeding no such task go to the
/// terminal task. An untagged measurement stays with the block before it.
TaskGraphReport extract_tasks(const SurfaceCircuit &s);

struct TaskMetrics {
    size_t volume_ft_blocks = 0;
    std::optional<size_t> slack_d_rounds;
    std::optional<size_t> slack_rounds;
};

std::vector<TaskMetrics> task_metrics(const TaskGraphReport &report, uint32_t distance);

/// Task index of every detector of a circuit lowered from the same schedule.
std::vector<size_t> detector_tasks(const TaskGraphReport &report, const PhysicalCircuit &pc);

/// Expected number of fired detectors per task.
std::vector<double> expected_syndromes(
    const TaskGraphReport &report, const PhysicalCircuit &pc, const DetectorErrorModel &dem);

/// Mean fired-detector count per task over the batch (all shots).
std::vector<double> sampled_syndromes(
    const TaskGraphReport &report, const PhysicalCircuit &pc, const ShotBatch &batch);

}  // namespace qcds

#endif
