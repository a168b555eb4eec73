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

#include "qcds/tasks/task_graph.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

namespace qcds {

size_t TaskGraphReport::index_of(uint32_t id) const {
    for (size_t k = 0; k < tasks.size(); k++) {
        if (tasks[k].id == id) {
            return k;
        }
    }
    throw TaskGraphError("unknown task " + std::to_string(id));
}

size_t TaskGraphReport::owner_index(Coord cell, size_t ts) const {
    auto it = owner.find({cell, ts});
    if (it == owner.end()) {
        throw TaskGraphError("no task owns " + cell.str() + " at ts " + std::to_string(ts));
    }
    return index_of(it->second);
}

std::vector<uint32_t> TaskGraphReport::predecessors(uint32_t id, DependencyKind kind) const {
    std::vector<uint32_t> out;
    for (const auto &e : dependencies) {
        if (e.to == id && e.kind == kind) {
            out.push_back(e.from);
        }
    }
    return out;
}

std::string TaskGraphReport::dot() const {
    std::stringstream out;
    out << "digraph tasks {\n";
    for (const auto &t : tasks) {
        out << "  t" << t.id << " [label=\"T" << t.id << "\\n[" << t.start_ts << "," << t.end_ts
            << "] v=" << t.volume_ft_blocks << "\"];\n";
    }
    for (const auto &e : dependencies) {
        out << "  t" << e.from << " -> t" << e.to;
        out << (e.kind == DependencyKind::Shape ? " [label=shape];\n" : " [label=frame, style=dashed];\n");
    }
    out << "}\n";
    return out.str();
}

std::string TaskGraphReport::csv() const {
    std::stringstream out;
    out << "task,start_ts,end_ts,final_ts,feedforward_ts,volume_ft_blocks,slack_d_rounds";
    for (const auto &s : syndromes) {
        out << ",syndromes_d" << s.distance << "_p" << s.p;
    }
    out << "\n";
    for (size_t k = 0; k < tasks.size(); k++) {
        const auto &t = tasks[k];
        out << t.id << ',' << t.start_ts << ',' << t.end_ts << ',' << t.final_ts << ',';
        if (t.feedforward_ts) {
            out << *t.feedforward_ts;
        }
        out << ',' << t.volume_ft_blocks << ',';
        if (auto s = t.slack_d_rounds()) {
            out << *s;
        }
        for (const auto &s : syndromes) {
            out << ',' << s.per_task.at(k);
        }
        out << "\n";
    }
    return out.str();
}

namespace {

struct BlockInfo {
    const SurfaceOp *op;
    double weight;
};

}  // namespace

TaskGraphReport extract_tasks(const SurfaceCircuit &s) {
    s.validate();
    TaskGraphReport rep;
    std::map<Block, BlockInfo> blocks;
    std::map<uint32_t, std::vector<Block>> finals;
    std::set<uint32_t> ff_tasks, cond_refs;
    std::map<uint32_t, size_t> ff_ts;
    rep.ts_has_rounds.assign(s.timestamps.size(), false);
    for (size_t t = 0; t < s.timestamps.size(); t++) {
        for (const auto &op : s.timestamps[t]) {
            double w = double(ft_blocks(op)) / double(op.cells.size());
            for (auto c : op.cells) {
                blocks[{c, t}] = {&op, w};
            }
            if (!is_measure(op.kind)) {
                rep.ts_has_rounds[t] = true;
            }
            if (op.task && !op.cond_task) {
                finals[*op.task].push_back({op.cells[0], t});
            }
            if (op.cond_task) {
                cond_refs.insert(*op.cond_task);
                if (is_feed_forward_gate(op) && !ff_ts.count(*op.cond_task)) {
                    ff_ts[*op.cond_task] = t;
                }
            }
        }
    }
    for (auto id : cond_refs) {
        if (!finals.count(id)) {
            throw TaskGraphError("conditioned op refers to task " + std::to_string(id) + " that never completes");
        }
    }

    auto successors = [&](const Block &b) {
        std::vector<Block> out;
        for (auto c : blocks.at(b).op->cells) {
            if (c != b.first) {
                out.push_back({c, b.second});
            }
        }
        if (blocks.count({b.first, b.second + 1})) {
            out.push_back({b.first, b.second + 1});
        }
        return out;
    };
    std::map<Block, std::vector<Block>> preds;
    for (const auto &[b, info] : blocks) {
        for (const auto &n : successors(b)) {
            preds[n].push_back(b);
        }
    }

    // Priority: tasks that drive a conditioned op by final time, then the rest.
    std::vector<std::tuple<bool, size_t, uint32_t>> order;
    for (const auto &[id, fb] : finals) {
        size_t last = 0;
        for (auto &b : fb) {
            last = std::max(last, b.second);
        }
        order.emplace_back(!cond_refs.count(id), last, id);
        DecodingTask task;
        task.id = id;
        task.final_ts = last;
        if (ff_ts.count(id)) {
            if (ff_ts[id] <= last) {
                throw TaskGraphError("feed-forward of task " + std::to_string(id) + " precedes its measurement");
            }
            task.feedforward_ts = ff_ts[id];
        }
        rep.tasks.push_back(task);
    }
    std::sort(order.begin(), order.end());
    uint32_t fallback;
    if (!order.empty() && std::get<0>(order.back())) {
        fallback = std::get<2>(order.back());
    } else {
        fallback = finals.empty() ? 1 : finals.rbegin()->first + 1;
    }

    for (const auto &[terminal, last, id] : order) {
        std::vector<Block> stack;
        for (auto &b : finals[id]) {
            rep.owner.emplace(b, id);
            stack.push_back(b);
        }
        std::set<Block> seen(stack.begin(), stack.end());
        while (!stack.empty()) {
            Block b = stack.back();
            stack.pop_back();
            for (const auto &p : preds[b]) {
                if (seen.insert(p).second) {
                    rep.owner.emplace(p, id);
                    stack.push_back(p);
                }
            }
        }
    }
    bool used_fallback = false;
    for (const auto &[b, info] : blocks) {
        if (!rep.owner.count(b)) {
            rep.owner[b] = fallback;
            used_fallback = true;
        }
    }
    if (used_fallback && !finals.count(fallback)) {
        DecodingTask task;
        task.id = fallback;
        task.final_ts = s.timestamps.empty() ? 0 : s.timestamps.size() - 1;
        rep.tasks.push_back(task);
    }
    // A bare readout belongs with the surface it reads out.
    for (size_t t = 1; t < s.timestamps.size(); t++) {
        for (const auto &op : s.timestamps[t]) {
            if (is_measure(op.kind) && !op.task && !op.cond_task && blocks.count({op.cells[0], t - 1})) {
                rep.owner[{op.cells[0], t}] = rep.owner.at({op.cells[0], t - 1});
            }
        }
    }

    std::sort(rep.tasks.begin(), rep.tasks.end(), [](auto &a, auto &b) { return a.id < b.id; });
    std::vector<double> volume(rep.tasks.size(), 0);
    for (auto &t : rep.tasks) {
        t.start_ts = SIZE_MAX;
    }
    for (const auto &[b, id] : rep.owner) {
        auto &t = rep.tasks[rep.index_of(id)];
        t.blocks.push_back(b);
        t.start_ts = std::min(t.start_ts, b.second);
        t.end_ts = std::max(t.end_ts, b.second);
        volume[rep.index_of(id)] += blocks.at(b).weight;
    }
    for (size_t k = 0; k < rep.tasks.size(); k++) {
        auto &t = rep.tasks[k];
        if (t.blocks.empty()) {
            t.start_ts = t.end_ts = t.final_ts;
        }
        t.volume_ft_blocks = static_cast<size_t>(std::llround(volume[k]));
    }

    std::map<std::pair<uint32_t, uint32_t>, bool> edges;  // -> is shape
    for (const auto &[b, info] : blocks) {
        uint32_t i = rep.owner.at(b);
        for (const auto &n : successors(b)) {
            uint32_t j = rep.owner.at(n);
            if (i == j) {
                continue;
            }
            const auto &op = *blocks.at(n).op;
            edges[{i, j}] = edges[{i, j}] || op.cond_task == i;
        }
    }
    for (const auto &[e, shape] : edges) {
        rep.dependencies.push_back({e.first, e.second, shape ? DependencyKind::Shape : DependencyKind::Frame});
    }

    // Kahn's algorithm; anything left over sits on a cycle.
    std::map<uint32_t, size_t> indeg;
    for (const auto &t : rep.tasks) {
        indeg[t.id] = 0;
    }
    for (const auto &e : rep.dependencies) {
        indeg[e.to]++;
    }
    std::vector<uint32_t> ready;
    for (auto [id, n] : indeg) {
        if (n == 0) {
            ready.push_back(id);
        }
    }
    size_t done = 0;
    while (!ready.empty()) {
        uint32_t id = ready.back();
        ready.pop_back();
        done++;
        for (const auto &e : rep.dependencies) {
            if (e.from == id && --indeg[e.to] == 0) {
                ready.push_back(e.to);
            }
        }
    }
    if (done != rep.tasks.size()) {
        throw TaskGraphError("cyclic task dependencies");
    }

    for (size_t t = 0; t < s.timestamps.size(); t++) {
        size_t active = 0;
        for (const auto &task : rep.tasks) {
            active += task.start_ts <= t && t <= task.end_ts;
        }
        rep.max_parallel = std::max(rep.max_parallel, active);
    }
    return rep;
}

std::vector<TaskMetrics> task_metrics(const TaskGraphReport &report, uint32_t distance) {
    std::vector<TaskMetrics> out;
    for (const auto &t : report.tasks) {
        TaskMetrics m;
        m.volume_ft_blocks = t.volume_ft_blocks;
        m.slack_d_rounds = t.slack_d_rounds();
        if (m.slack_d_rounds) {
            m.slack_rounds = *m.slack_d_rounds * distance;
        }
        out.push_back(m);
    }
    return out;
}

std::vector<size_t> detector_tasks(const TaskGraphReport &report, const PhysicalCircuit &pc) {
    std::vector<size_t> out;
    out.reserve(pc.detectors.size());
    for (const auto &info : pc.detectors) {
        if (info.ts < 0) {
            throw TaskGraphError("detector without a timestamp");
        }
        out.push_back(report.owner_index(info.cell, static_cast<size_t>(info.ts)));
    }
    return out;
}

std::vector<double> expected_syndromes(
    const TaskGraphReport &report, const PhysicalCircuit &pc, const DetectorErrorModel &dem) {
    auto owner = detector_tasks(report, pc);
    auto fire = detector_fire_probabilities(dem);
    std::vector<double> out(report.tasks.size(), 0);
    for (size_t k = 0; k < fire.size(); k++) {
        out[owner.at(k)] += fire[k];
    }
    return out;
}

std::vector<double> sampled_syndromes(
    const TaskGraphReport &report, const PhysicalCircuit &pc, const ShotBatch &batch) {
    auto owner = detector_tasks(report, pc);
    std::vector<double> out(report.tasks.size(), 0);
    if (batch.shots() == 0) {
        return out;
    }
    for (size_t s = 0; s < batch.shots(); s++) {
        for (auto det : batch.fired[s]) {
            out[owner.at(det)] += 1;
        }
    }
    for (auto &v : out) {
        v /= double(batch.shots());
    }
    return out;
}

}  // namespace qcds
