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


#include "qcds/surface/compile.h"

#include <algorithm>
#include <map>
#include <set>

namespace qcds {

namespace {

enum class Axis { Z, X };

struct PendingCorrection {
    size_t mx_ts;
    size_t op_index;  // index of the magic-state MX in its timestamp
};

struct Scheduler {
    uint32_t width, height;
    std::vector<Coord> home;
    std::set<Coord> computational;
    std::vector<std::vector<SurfaceOp>> ts;
    std::set<std::pair<size_t, Coord>> busy;

    std::vector<std::optional<size_t>> born;
    std::vector<std::optional<size_t>> measured;
    std::vector<std::vector<std::pair<Axis, size_t>>> hist;
    std::vector<size_t> last;
    std::vector<SurfaceKind> init_kind;
    std::vector<std::vector<PendingCorrection>> pending;
    std::vector<std::pair<size_t, size_t>> task_finals;  // (ts, op index) per task, in creation order

    static constexpr size_t MAX_TS = 100000;

    bool free(size_t t, const std::vector<Coord> &cells) const {
        for (const auto &c : cells) {
            if (busy.count({t, c})) {
                return false;
            }
        }
        return true;
    }

    size_t put(size_t t, SurfaceKind kind, std::vector<Coord> cells, std::optional<uint32_t> cond = {}) {
        for (const auto &c : cells) {
            busy.insert({t, c});
        }
        if (ts.size() <= t) {
            ts.resize(t + 1);
        }
        ts[t].push_back({kind, std::move(cells), cond, {}});
        return ts[t].size() - 1;
    }

    size_t dep(uint32_t q, Axis axis) const {
        size_t m = born[q] ? *born[q] + 1 : 1;
        for (auto [a, t] : hist[q]) {
            if (a != axis) {
                m = std::max(m, t + 1);
            }
        }
        return m;
    }

    void touch(uint32_t q, size_t s) {
        if (!born[q]) {
            born[q] = s - 1;
            put(s - 1, init_kind[q], {home[q]});
        }
    }

    void use(uint32_t q, Axis axis, size_t s) {
        hist[q].push_back({axis, s});
        last[q] = std::max(last[q], s);
    }

    bool in_grid(Coord c) const {
        return c.r >= 0 && c.c >= 0 && c.r < (int32_t)height && c.c < (int32_t)width;
    }

    std::vector<Coord> neighbours(Coord q, Axis axis) const {
        std::vector<Coord> out;
        std::vector<Coord> cand = axis == Axis::Z ? std::vector<Coord>{{q.r - 1, q.c}, {q.r + 1, q.c}}
                                                  : std::vector<Coord>{{q.r, q.c - 1}, {q.r, q.c + 1}};
        for (auto c : cand) {
            if (in_grid(c) && !computational.count(c)) {
                out.push_back(c);
            }
        }
        return out;
    }

    static std::vector<Coord> line(Coord a, Coord b) {
        std::vector<Coord> out;
        int dr = (b.r > a.r) - (b.r < a.r);
        int dc = (b.c > a.c) - (b.c < a.c);
        for (Coord c = a;; c = {c.r + dr, c.c + dc}) {
            out.push_back(c);
            if (c == b) {
                break;
            }
        }
        return out;
    }

    void cnot(uint32_t c, uint32_t t) {
        flush(t);
        Coord C = home[c], T = home[t];
        Coord A{T.r, C.c};
        auto p1 = line(C, A);
        auto p2 = line(A, T);
        for (size_t k = 1; k < p1.size(); k++) {
            if (computational.count(p1[k])) {
                throw AllocationError("no ancilla path for CNOT " + std::to_string(c) + " " + std::to_string(t));
            }
        }
        size_t s = std::max({dep(c, Axis::Z), dep(t, Axis::X) - 1, size_t{1}});
        for (;; s++) {
            if (s > MAX_TS) {
                throw AllocationError("CNOT could not be scheduled");
            }
            if (free(s - 1, {A}) && free(s, p1) && free(s + 1, p2) && free(s + 2, {A}) &&
                (born[c] || free(s - 1, {C})) && (born[t] || free(s, {T}))) {
                break;
            }
        }
        touch(c, s);
        touch(t, s + 1);
        put(s - 1, SurfaceKind::InitX, {A});
        put(s, SurfaceKind::ParityZZ, p1);
        put(s + 1, SurfaceKind::ParityXX, p2);
        put(s + 2, SurfaceKind::MeasureZ, {A});
        use(c, Axis::Z, s);
        use(t, Axis::X, s + 1);
    }

    /// Teleports a single-qubit rotation in through a prepared neighbour.
    /// Returns (measurement ts, op index).
    std::pair<size_t, size_t> rotation(uint32_t q, Axis axis, SurfaceKind prep, std::optional<uint32_t> cond,
                                       size_t earliest) {
        Coord Q = home[q];
        auto nb = neighbours(Q, axis);
        if (nb.empty()) {
            throw AllocationError("no free neighbour for qubit " + std::to_string(q));
        }
        for (size_t s = std::max(earliest, dep(q, axis));; s++) {
            if (s > MAX_TS) {
                throw AllocationError("rotation could not be scheduled");
            }
            for (auto M : nb) {
                if (free(s - 1, {M}) && free(s, {Q, M}) && free(s + 1, {M}) && (born[q] || free(s - 1, {Q}))) {
                    touch(q, s);
                    put(s - 1, prep, {M}, cond);
                    put(s, axis == Axis::Z ? SurfaceKind::ParityZZ : SurfaceKind::ParityXX, {Q, M}, cond);
                    size_t idx =
                        put(s + 1, axis == Axis::Z ? SurfaceKind::MeasureX : SurfaceKind::MeasureZ, {M}, cond);
                    use(q, axis, s);
                    return {s + 1, idx};
                }
            }
        }
    }

    void t_gate(uint32_t q) {
        auto [mx, idx] = rotation(q, Axis::Z, SurfaceKind::InitMagic, std::nullopt, 1);
        pending[q].push_back({mx, idx});
    }

    void flush(uint32_t q) {
        for (auto pc : pending[q]) {
            uint32_t id = (uint32_t)task_finals.size() + 1;
            task_finals.push_back({pc.mx_ts, pc.op_index});
            ts[pc.mx_ts][pc.op_index].task = id;
            rotation(q, Axis::Z, SurfaceKind::InitS, id, pc.mx_ts + 1);
        }
        pending[q].clear();
    }

    void measure(uint32_t q, Axis axis) {
        if (axis == Axis::X) {
            flush(q);
        } else {
            // Diagonal corrections do not change a Z-basis outcome.
            pending[q].clear();
        }
        size_t s = std::max(dep(q, axis), last[q] + 1);
        if (!born[q]) {
            while (!free(s - 1, {home[q]})) {
                s++;
            }
            touch(q, s);
        }
        while (!free(s, {home[q]})) {
            s++;
        }
        put(s, axis == Axis::Z ? SurfaceKind::MeasureZ : SurfaceKind::MeasureX, {home[q]});
        use(q, axis, s);
        measured[q] = s;
    }
};

}  // namespace

SurfaceCircuit compile_schedule(const LogicalCircuit &circuit, uint32_t width, uint32_t height) {
    circuit.validate();
    uint32_t n = circuit.num_qubits;
    if (n > width || n > height) {
        throw AllocationError("grid too small for " + std::to_string(n) + " qubits");
    }
    for (const auto &op : circuit.ops) {
        if (op.kind == LogicalKind::Toffoli) {
            throw std::invalid_argument("compile_schedule expects a circuit without Toffoli gates");
        }
    }

    // Per-qubit op lists, to find the Hadamards that fold into a basis change.
    std::vector<std::vector<size_t>> per_qubit(n);
    for (size_t k = 0; k < circuit.ops.size(); k++) {
        for (auto q : circuit.ops[k].targets) {
            per_qubit[q].push_back(k);
        }
    }
    std::vector<bool> absorbed(circuit.ops.size(), false);
    std::vector<bool> flip_init(n, false), flip_measure(n, false);
    auto is_h = [&](size_t k) { return circuit.ops[k].kind == LogicalKind::H; };
    for (uint32_t q = 0; q < n; q++) {
        const auto &ks = per_qubit[q];
        size_t a = 0;
        if (a < ks.size() && (circuit.ops[ks[a]].kind == LogicalKind::InitZ ||
                              circuit.ops[ks[a]].kind == LogicalKind::InitPlus)) {
            a++;
        }
        while (a < ks.size() && is_h(ks[a])) {
            absorbed[ks[a]] = true;
            flip_init[q] = !flip_init[q];
            a++;
        }
        size_t b = ks.size();
        if (b > a && (circuit.ops[ks[b - 1]].kind == LogicalKind::MeasureZ ||
                      circuit.ops[ks[b - 1]].kind == LogicalKind::MeasureX)) {
            b--;
            while (b > a && is_h(ks[b - 1])) {
                absorbed[ks[b - 1]] = true;
                flip_measure[q] = !flip_measure[q];
                b--;
            }
        }
    }

    Scheduler sch{width, height, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};
    for (uint32_t q = 0; q < n; q++) {
        sch.home.push_back({(int32_t)q, (int32_t)q});
        sch.computational.insert({(int32_t)q, (int32_t)q});
    }
    sch.born.resize(n);
    sch.measured.resize(n);
    sch.hist.resize(n);
    sch.last.assign(n, 0);
    for (uint32_t q = 0; q < n; q++) {
        sch.init_kind.push_back(flip_init[q] ? SurfaceKind::InitX : SurfaceKind::InitZ);
    }
    sch.pending.resize(n);

    for (size_t k = 0; k < circuit.ops.size(); k++) {
        const auto &op = circuit.ops[k];
        if (absorbed[k]) {
            continue;
        }
        uint32_t q = op.targets[0];
        if (sch.measured[q]) {
            throw std::invalid_argument("op after measurement on qubit " + std::to_string(q));
        }
        switch (op.kind) {
            case LogicalKind::InitZ:
            case LogicalKind::InitPlus: {
                if (sch.born[q]) {
                    throw std::invalid_argument("re-initialization of a live qubit is not supported");
                }
                bool x = (op.kind == LogicalKind::InitPlus) != flip_init[q];
                sch.init_kind[q] = x ? SurfaceKind::InitX : SurfaceKind::InitZ;
                break;
            }
            case LogicalKind::MeasureZ:
            case LogicalKind::MeasureX: {
                bool x = (op.kind == LogicalKind::MeasureX) != flip_measure[q];
                sch.measure(q, x ? Axis::X : Axis::Z);
                break;
            }
            case LogicalKind::X:
            case LogicalKind::Z:
                break;  // Pauli frame
            case LogicalKind::H:
                throw std::invalid_argument("mid-circuit Hadamard on qubit " + std::to_string(q) +
                                            " cannot be absorbed into a basis change");
            case LogicalKind::S:
            case LogicalKind::Sdg:
                if (op.nft_site) {
                    sch.t_gate(q);
                } else {
                    sch.rotation(q, Axis::Z, SurfaceKind::InitS, std::nullopt, 1);
                }
                break;
            case LogicalKind::SqrtX:
                sch.flush(q);
                sch.rotation(q, Axis::X, SurfaceKind::InitS, std::nullopt, 1);
                break;
            case LogicalKind::T:
            case LogicalKind::Tdg:
                sch.t_gate(q);
                break;
            case LogicalKind::CNOT:
                sch.cnot(op.targets[0], op.targets[1]);
                break;
            case LogicalKind::Toffoli:
                break;
        }
    }
    for (uint32_t q = 0; q < n; q++) {
        sch.flush(q);
    }

    // Final measurements close the terminal task; idle every live gap.
    uint32_t terminal = (uint32_t)sch.task_finals.size() + 1;
    size_t end = sch.ts.size();
    for (uint32_t q = 0; q < n; q++) {
        if (!sch.born[q]) {
            continue;
        }
        size_t stop = end;
        if (sch.measured[q]) {
            auto &ops = sch.ts[*sch.measured[q]];
            for (auto &op : ops) {
                if (op.cells.front() == sch.home[q] && is_measure(op.kind)) {
                    op.task = terminal;
                }
            }
            stop = *sch.measured[q];
        }
        for (size_t t = *sch.born[q] + 1; t < stop; t++) {
            if (sch.free(t, {sch.home[q]})) {
                sch.put(t, SurfaceKind::Idle, {sch.home[q]});
            }
        }
    }

    // Number the feed-forward tasks by the time of their final measurement.
    std::vector<uint32_t> order(sch.task_finals.size());
    for (uint32_t k = 0; k < order.size(); k++) {
        order[k] = k;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](uint32_t a, uint32_t b) { return sch.task_finals[a].first < sch.task_finals[b].first; });
    std::map<uint32_t, uint32_t> rename;
    for (uint32_t k = 0; k < order.size(); k++) {
        rename[order[k] + 1] = k + 1;
    }
    rename[terminal] = terminal;

    SurfaceCircuit out;
    out.width = width;
    out.height = height;
    out.timestamps = std::move(sch.ts);
    for (auto &slot : out.timestamps) {
        for (auto &op : slot) {
            if (op.task) {
                op.task = rename.at(*op.task);
            }
            if (op.cond_task) {
                op.cond_task = rename.at(*op.cond_task);
            }
        }
        std::stable_sort(slot.begin(), slot.end(),
                         [](const SurfaceOp &a, const SurfaceOp &b) { return a.cells.front() < b.cells.front(); });
    }
    for (const auto &obs : circuit.observables) {
        std::vector<SurfaceTerm> terms;
        for (const auto &term : obs) {
            if (term.pauli == 'Y') {
                throw std::invalid_argument("Y observables are not supported at the surface level");
            }
            char p = term.pauli;
            if (flip_measure[term.qubit]) {
                p = p == 'X' ? 'Z' : 'X';
            }
            terms.push_back({p, sch.home[term.qubit]});
        }
        out.observables.push_back(std::move(terms));
    }
    out.validate();
    return out;
}

}  // namespace qcds
