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

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace qcds {

namespace {

struct KindInfo {
    SurfaceKind kind;
    std::string_view name;
};

constexpr std::array<KindInfo, NUM_SURFACE_KINDS> KIND_TABLE{{
    {SurfaceKind::InitZ, "INITZ"},
    {SurfaceKind::InitX, "INITX"},
    {SurfaceKind::InitS, "INITS"},
    {SurfaceKind::InitMagic, "INITMAGIC"},
    {SurfaceKind::MeasureZ, "MZ"},
    {SurfaceKind::MeasureX, "MX"},
    {SurfaceKind::ParityZZ, "ZZ"},
    {SurfaceKind::ParityXX, "XX"},
    {SurfaceKind::ParityZX, "ZX"},
    {SurfaceKind::Idle, "IDLE"},
    {SurfaceKind::Teleport, "TELEPORT"},
}};

std::optional<int32_t> parse_int(std::string_view text) {
    int32_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    size_t k = 0;
    while (k < line.size()) {
        while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) {
            k++;
        }
        size_t start = k;
        while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') {
            k++;
        }
        if (k > start) {
            out.push_back(line.substr(start, k - start));
        }
    }
    return out;
}

/// Parses "(r,c)(r,c)..." into coordinates.
std::optional<std::vector<Coord>> parse_coords(std::string_view text) {
    std::vector<Coord> out;
    size_t k = 0;
    while (k < text.size()) {
        if (text[k] != '(') {
            return std::nullopt;
        }
        size_t comma = text.find(',', k);
        size_t close = text.find(')', k);
        if (comma == std::string_view::npos || close == std::string_view::npos || comma > close) {
            return std::nullopt;
        }
        auto r = parse_int(text.substr(k + 1, comma - k - 1));
        auto c = parse_int(text.substr(comma + 1, close - comma - 1));
        if (!r || !c) {
            return std::nullopt;
        }
        out.push_back({*r, *c});
        k = close + 1;
    }
    return out;
}

[[noreturn]] void fail_line(size_t line, const std::string &msg) {
    throw ScheduleError(std::nullopt, std::nullopt, "line " + std::to_string(line) + ": " + msg);
}

bool adjacent(Coord a, Coord b) {
    return std::abs(a.r - b.r) + std::abs(a.c - b.c) == 1;
}

/// Basis an op applies to a given endpoint cell: 'Z', 'X', 'I' (identity, e.g.
/// idle) or '?' (does not commute with anything diagonal).
char action_on(const SurfaceOp &op, Coord cell) {
    switch (op.kind) {
        case SurfaceKind::Idle:
            return 'I';
        case SurfaceKind::MeasureZ:
        case SurfaceKind::ParityZZ:
            return 'Z';
        case SurfaceKind::MeasureX:
        case SurfaceKind::ParityXX:
            return 'X';
        case SurfaceKind::ParityZX:
            return op.cells.front() == cell ? 'Z' : 'X';
        default:
            return '?';
    }
}

}  // namespace

std::string_view surface_kind_name(SurfaceKind kind) {
    return KIND_TABLE[static_cast<size_t>(kind)].name;
}

std::optional<SurfaceKind> surface_kind_from_name(std::string_view name) {
    for (const auto &e : KIND_TABLE) {
        if (e.name == name) {
            return e.kind;
        }
    }
    return std::nullopt;
}

bool is_init(SurfaceKind kind) {
    return kind == SurfaceKind::InitZ || kind == SurfaceKind::InitX || kind == SurfaceKind::InitS ||
           kind == SurfaceKind::InitMagic;
}

bool is_measure(SurfaceKind kind) {
    return kind == SurfaceKind::MeasureZ || kind == SurfaceKind::MeasureX;
}

bool is_parity(SurfaceKind kind) {
    return kind == SurfaceKind::ParityZZ || kind == SurfaceKind::ParityXX || kind == SurfaceKind::ParityZX;
}

std::string Coord::str() const {
    return "(" + std::to_string(r) + "," + std::to_string(c) + ")";
}

std::string SurfaceOp::str() const {
    std::string out(surface_kind_name(kind));
    out += ' ';
    for (auto c : cells) {
        out += c.str();
    }
    if (cond_task) {
        out += " cond task=" + std::to_string(*cond_task);
    }
    if (task) {
        out += " task=" + std::to_string(*task);
    }
    return out;
}

ScheduleError::ScheduleError(std::optional<size_t> timestamp, std::optional<Coord> cell, const std::string &message)
    : std::invalid_argument(
          (timestamp ? "t " + std::to_string(*timestamp) + ": " : std::string()) +
          (cell ? cell->str() + ": " : std::string()) + message),
      timestamp(timestamp),
      cell(cell) {
}

std::string SurfaceCircuit::str() const {
    std::stringstream out;
    out << "grid " << width << " " << height << "\n";
    for (size_t t = 0; t < timestamps.size(); t++) {
        out << "t " << t << ":\n";
        for (const auto &op : timestamps[t]) {
            out << "  " << op.str() << "\n";
        }
    }
    for (const auto &obs : observables) {
        out << "OBSERVABLE";
        for (const auto &term : obs) {
            out << ' ' << term.pauli << term.cell.str();
        }
        out << "\n";
    }
    return out.str();
}

SurfaceCircuit parse_surface(std::string_view text) {
    SurfaceCircuit result;
    bool have_grid = false;
    size_t line_number = 0;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        line_number++;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto tokens = split_ws(line);
        if (tokens.empty()) {
            continue;
        }
        if (tokens[0] == "grid") {
            if (have_grid || tokens.size() != 3) {
                fail_line(line_number, "expected a single 'grid W H' header");
            }
            auto w = parse_int(tokens[1]);
            auto h = parse_int(tokens[2]);
            if (!w || !h || *w < 0 || *h < 0) {
                fail_line(line_number, "bad grid dimensions");
            }
            result.width = *w;
            result.height = *h;
            have_grid = true;
            continue;
        }
        if (!have_grid) {
            fail_line(line_number, "missing 'grid W H' header");
        }
        if (tokens[0] == "t") {
            if (tokens.size() != 2 || tokens[1].empty() || tokens[1].back() != ':') {
                fail_line(line_number, "expected 't <k>:'");
            }
            auto k = parse_int(tokens[1].substr(0, tokens[1].size() - 1));
            if (!k || *k != (int32_t)result.timestamps.size()) {
                fail_line(line_number, "timestamps must be numbered consecutively from 0");
            }
            result.timestamps.emplace_back();
            continue;
        }
        if (tokens[0] == "OBSERVABLE") {
            std::vector<SurfaceTerm> obs;
            for (size_t k = 1; k < tokens.size(); k++) {
                auto tok = tokens[k];
                auto cells = tok.size() > 1 ? parse_coords(tok.substr(1)) : std::nullopt;
                if ((tok[0] != 'X' && tok[0] != 'Z') || !cells || cells->size() != 1) {
                    fail_line(line_number, "bad observable term '" + std::string(tok) + "'");
                }
                obs.push_back({tok[0], cells->front()});
            }
            if (obs.empty()) {
                fail_line(line_number, "empty observable");
            }
            result.observables.push_back(std::move(obs));
            continue;
        }
        auto kind = surface_kind_from_name(tokens[0]);
        if (!kind) {
            fail_line(line_number, "unknown op '" + std::string(tokens[0]) + "'");
        }
        if (result.timestamps.empty()) {
            fail_line(line_number, "op before the first 't <k>:' block");
        }
        SurfaceOp op{*kind, {}, std::nullopt, std::nullopt};
        size_t k = 1;
        std::string coord_text;
        while (k < tokens.size() && tokens[k][0] == '(') {
            coord_text += tokens[k];
            k++;
        }
        auto cells = parse_coords(coord_text);
        if (!cells || cells->empty()) {
            fail_line(line_number, "bad or missing cell list");
        }
        op.cells = std::move(*cells);
        bool pending_cond = false;
        for (; k < tokens.size(); k++) {
            auto tok = tokens[k];
            if (tok == "cond") {
                pending_cond = true;
                continue;
            }
            if (tok.substr(0, 5) != "task=") {
                fail_line(line_number, "unexpected token '" + std::string(tok) + "'");
            }
            auto id = parse_int(tok.substr(5));
            if (!id || *id < 0) {
                fail_line(line_number, "bad task id");
            }
            (pending_cond ? op.cond_task : op.task) = (uint32_t)*id;
            pending_cond = false;
        }
        if (pending_cond) {
            fail_line(line_number, "'cond' must be followed by task=<id>");
        }
        result.timestamps.back().push_back(std::move(op));
    }
    if (!have_grid) {
        if (line_number == 0 || text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
            return result;
        }
        fail_line(line_number, "missing 'grid W H' header");
    }
    return result;
}

SurfaceCircuit load_reference_schedule(std::string_view text) {
    auto result = parse_surface(text);
    result.validate();
    return result;
}

std::vector<std::pair<uint32_t, size_t>> task_final_timestamps(const SurfaceCircuit &s) {
    std::map<uint32_t, size_t> last;
    for (size_t t = 0; t < s.timestamps.size(); t++) {
        for (const auto &op : s.timestamps[t]) {
            if (op.task) {
                last[*op.task] = t;
            }
        }
    }
    return {last.begin(), last.end()};
}

void SurfaceCircuit::validate() const {
    auto in_grid = [&](Coord c) {
        return c.r >= 0 && c.c >= 0 && c.r < (int32_t)height && c.c < (int32_t)width;
    };
    std::map<uint32_t, size_t> final_ts;
    for (auto [id, t] : task_final_timestamps(*this)) {
        final_ts[id] = t;
    }

    std::set<Coord> live;
    std::map<Coord, char> last_measure;
    for (size_t t = 0; t < timestamps.size(); t++) {
        std::set<Coord> used;
        std::set<Coord> covered;
        std::set<Coord> next_live = live;
        for (const auto &op : timestamps[t]) {
            for (auto c : op.cells) {
                if (!in_grid(c)) {
                    throw ScheduleError(t, c, "cell outside the grid");
                }
                if (!used.insert(c).second) {
                    throw ScheduleError(t, c, "surface participates in two ops");
                }
            }
            bool multi = is_parity(op.kind) || op.kind == SurfaceKind::Teleport;
            if (multi) {
                if (op.cells.size() < 2) {
                    throw ScheduleError(t, op.cells.front(), "parity needs at least two cells");
                }
                for (size_t k = 1; k < op.cells.size(); k++) {
                    if (!adjacent(op.cells[k - 1], op.cells[k])) {
                        throw ScheduleError(t, op.cells[k], "parity path is not a chain of adjacent cells");
                    }
                }
            } else if (op.cells.size() != 1) {
                throw ScheduleError(t, op.cells.front(), "single-surface op with several cells");
            }
            if (op.task && !is_measure(op.kind) && !is_parity(op.kind)) {
                throw ScheduleError(t, op.cells.front(), "task= annotates measurements only");
            }
            if (op.cond_task) {
                auto f = final_ts.find(*op.cond_task);
                if (f == final_ts.end()) {
                    throw ScheduleError(t, op.cells.front(), "condition references a task with no final measurement");
                }
                if (!is_init(op.kind) && f->second >= t) {
                    throw ScheduleError(
                        t, op.cells.front(), "feed-forward placed before its task's final measurement");
                }
            }

            Coord first = op.cells.front();
            Coord last = op.cells.back();
            if (is_init(op.kind)) {
                if (live.count(first)) {
                    throw ScheduleError(t, first, "initializing a surface that is still in use");
                }
                next_live.insert(first);
                covered.insert(first);
            } else if (is_measure(op.kind) || op.kind == SurfaceKind::Idle) {
                if (!live.count(first)) {
                    throw ScheduleError(t, first, "op on a surface that holds no logical qubit");
                }
                covered.insert(first);
                if (is_measure(op.kind)) {
                    next_live.erase(first);
                    last_measure[first] = op.kind == SurfaceKind::MeasureZ ? 'Z' : 'X';
                }
            } else {
                bool teleport = op.kind == SurfaceKind::Teleport;
                if (!live.count(first) || (!teleport && !live.count(last))) {
                    throw ScheduleError(t, first, "parity endpoint holds no logical qubit");
                }
                if (teleport && live.count(last)) {
                    throw ScheduleError(t, last, "teleport destination is in use");
                }
                for (size_t k = 1; k + 1 < op.cells.size(); k++) {
                    if (live.count(op.cells[k])) {
                        throw ScheduleError(t, op.cells[k], "parity path crosses a surface in use");
                    }
                }
                covered.insert(first);
                covered.insert(last);
                if (teleport) {
                    next_live.erase(first);
                    next_live.insert(last);
                }
            }
        }
        for (auto c : live) {
            if (!covered.count(c)) {
                throw ScheduleError(t, c, "live surface not covered by any op");
            }
        }
        live = std::move(next_live);
    }

    // Feed-forward legality: ops touching the corrected surface between the
    // task's final measurement and the correction must commute with it.
    for (size_t t = 0; t < timestamps.size(); t++) {
        for (const auto &op : timestamps[t]) {
            if (!op.cond_task || !is_parity(op.kind)) {
                continue;
            }
            uint32_t id = *op.cond_task;
            // The resource end is the one prepared by a conditioned init of the same task.
            auto prepared_by_task = [&](Coord cell) {
                for (size_t u = t + 1; u-- > 0;) {
                    for (const auto &prev : timestamps[u]) {
                        if (is_init(prev.kind) && prev.cells.front() == cell) {
                            return prev.cond_task == op.cond_task;
                        }
                    }
                }
                return false;
            };
            Coord target = prepared_by_task(op.cells.front()) ? op.cells.back() : op.cells.front();
            char basis = action_on(op, target);
            for (size_t u = final_ts.at(id); u < t; u++) {
                for (const auto &other : timestamps[u]) {
                    if (other.cond_task == op.cond_task) {
                        continue;
                    }
                    bool touches = other.cells.front() == target || other.cells.back() == target;
                    if (!touches) {
                        continue;
                    }
                    char a = action_on(other, target);
                    if (a != 'I' && a != basis) {
                        throw ScheduleError(
                            u, target, "op does not commute with the pending feed-forward of task " + std::to_string(id));
                    }
                }
            }
        }
    }

    for (const auto &obs : observables) {
        for (const auto &term : obs) {
            auto f = last_measure.find(term.cell);
            if (f == last_measure.end()) {
                throw ScheduleError(std::nullopt, term.cell, "observable term on a surface that is never measured");
            }
            if (f->second != term.pauli) {
                throw ScheduleError(std::nullopt, term.cell, "observable basis differs from the final measurement");
            }
        }
    }
}

size_t ft_blocks(const SurfaceOp &op) {
    switch (op.kind) {
        case SurfaceKind::InitMagic:
            return 0;
        case SurfaceKind::InitS:
            return 2;
        case SurfaceKind::ParityZZ:
        case SurfaceKind::ParityXX:
        case SurfaceKind::ParityZX:
        case SurfaceKind::Teleport:
            return op.cells.size();
        default:
            return 1;
    }
}

size_t surface_measurements(const SurfaceOp &op) {
    if (is_measure(op.kind) || is_parity(op.kind)) {
        return 1;
    }
    if (op.kind == SurfaceKind::Teleport) {
        return 2;
    }
    return 0;
}

bool is_feed_forward_gate(const SurfaceOp &op) {
    return op.cond_task.has_value() && (is_parity(op.kind) || op.kind == SurfaceKind::Teleport);
}

Table1Metrics census(const SurfaceCircuit &s) {
    Table1Metrics m;
    std::set<Coord> surfaces;
    std::set<uint32_t> tasks;
    std::map<uint32_t, size_t> final_ts;
    for (auto [id, t] : task_final_timestamps(s)) {
        final_ts[id] = t;
    }
    size_t active_total = 0;
    size_t latency_total = 0;
    for (size_t t = 0; t < s.timestamps.size(); t++) {
        for (const auto &op : s.timestamps[t]) {
            surfaces.insert(op.cells.begin(), op.cells.end());
            active_total += op.cells.size();
            m.total_measurements += surface_measurements(op);
            m.ft_gate_count += ft_blocks(op);
            if (op.kind == SurfaceKind::InitMagic) {
                m.nft_block_count++;
            }
            if (op.task) {
                tasks.insert(*op.task);
            }
            if (op.cond_task) {
                tasks.insert(*op.cond_task);
            }
            if (is_feed_forward_gate(op)) {
                m.feed_forward_gates++;
                auto f = final_ts.find(*op.cond_task);
                if (f != final_ts.end() && f->second < t) {
                    latency_total += t - f->second;
                }
            }
        }
    }
    m.total_surfaces = surfaces.size();
    m.decoding_tasks = tasks.size();
    if (!s.timestamps.empty()) {
        m.avg_active_surfaces = (double)active_total / (double)s.timestamps.size();
    }
    if (m.feed_forward_gates) {
        m.avg_ff_latency_d_rounds = (double)latency_total / (double)m.feed_forward_gates;
    }
    return m;
}

}  // namespace qcds
