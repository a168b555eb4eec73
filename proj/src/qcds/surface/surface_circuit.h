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

#ifndef _QCDS_SURFACE_SURFACE_CIRCUIT_H
#define _QCDS_SURFACE_SURFACE_CIRCUIT_H

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qcds {

enum class SurfaceKind : uint8_t {
    InitZ,
    InitX,
    InitS,
    InitMagic,
    MeasureZ,
    MeasureX,
    ParityZZ,
    ParityXX,
    ParityZX,
    Idle,
    Teleport,
};

inline constexpr size_t NUM_SURFACE_KINDS = 11;

std::string_view surface_kind_name(SurfaceKind kind);
std::optional<SurfaceKind> surface_kind_from_name(std::string_view name);
bool is_init(SurfaceKind kind);
bool is_measure(SurfaceKind kind);
bool is_parity(SurfaceKind kind);

struct Coord {
    int32_t r = 0;
    int32_t c = 0;
    auto operator<=>(const Coord &other) const = default;
    std::string str() const;
};

struct SurfaceOp {
    SurfaceKind kind;
    /// One cell, or a connected path of cells for parity/teleport ops. The
    /// path's first and last cells are the logical endpoints.
    std::vector<Coord> cells;
    /// Feed-forward condition: the op is applied according to this task's result.
    std::optional<uint32_t> cond_task;
    /// Set on the measurement(s) that close a decoding task.
    std::optional<uint32_t> task;

    bool operator==(const SurfaceOp &other) const = default;
    std::string str() const;
};

/// A Pauli factor of a schedule-level observable. The factor refers to the
/// last measurement performed on `cell`, whose basis must match `pauli`.
struct SurfaceTerm {
    char pauli;
    Coord cell;
    bool operator==(const SurfaceTerm &other) const = default;
};

struct SurfaceCircuit {
    uint32_t width = 0;
    uint32_t height = 0;
    std::vector<std::vector<SurfaceOp>> timestamps;
    std::vector<std::vector<SurfaceTerm>> observables;

    /// Throws ScheduleError on the first broken invariant.
    void validate() const;
    std::string str() const;
    bool operator==(const SurfaceCircuit &other) const = default;
};

class ScheduleError : public std::invalid_argument {
   public:
    ScheduleError(std::optional<size_t> timestamp, std::optional<Coord> cell, const std::string &message);
    std::optional<size_t> timestamp;
    std::optional<Coord> cell;
};

struct Table1Metrics {
    size_t total_surfaces = 0;
    double avg_active_surfaces = 0;
    size_t total_measurements = 0;
    size_t feed_forward_gates = 0;
    size_t ft_gate_count = 0;
    size_t nft_block_count = 0;
    size_t decoding_tasks = 0;
    double avg_ff_latency_d_rounds = 0;
};

/// Parses the schedule text format and validates it.
SurfaceCircuit load_reference_schedule(std::string_view text);
/// Parses without validating (used to report validation errors separately).
SurfaceCircuit parse_surface(std::string_view text);

/// FT-block weight of a single op: one surface for one timestamp, with
/// multi-cell parities counting every cell of the path and |S> preparation
/// counting two. Magic-state injection contributes no FT block.
size_t ft_blocks(const SurfaceOp &op);
/// Number of logical measurement outcomes produced by the op.
size_t surface_measurements(const SurfaceOp &op);
/// Whether the op is a feed-forward gate (a conditioned parity).
bool is_feed_forward_gate(const SurfaceOp &op);

Table1Metrics census(const SurfaceCircuit &s);

/// Timestamp of the last measurement tagged with each task id.
std::vector<std::pair<uint32_t, size_t>> task_final_timestamps(const SurfaceCircuit &s);

}  // namespace qcds

#endif
