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


#include "qcds/physical/lowering.h"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "qcds/physical/symbolic_tableau.h"

namespace qcds {

namespace {

// Data-coordinate point (row, col); doubled coordinates are 2x this.
struct Pt {
    int32_t r;
    int32_t c;
    auto operator<=>(const Pt &) const = default;
};

struct Rect {
    int32_t r0, r1, c0, c1;  // inclusive data rows/cols
    bool contains(Pt p) const {
        return p.r >= r0 && p.r <= r1 && p.c >= c0 && p.c <= c1;
    }
};

struct Plaq {
    int32_t a, b;  // top-left data corner
    char type;
    std::array<std::optional<Pt>, 4> corners;  // NW, NE, SW, SE
};

char plaq_type(int32_t a, int32_t b) {
    return ((a + b) % 2 + 2) % 2 == 0 ? 'X' : 'Z';
}

std::vector<Plaq> plaquettes(const Rect &rect) {
    std::vector<Plaq> out;
    for (int32_t a = rect.r0 - 1; a <= rect.r1; a++) {
        for (int32_t b = rect.c0 - 1; b <= rect.c1; b++) {
            bool top = a < rect.r0, bottom = a == rect.r1;
            bool left = b < rect.c0, right = b == rect.c1;
            if ((top || bottom) && (left || right)) {
                continue;
            }
            char t = plaq_type(a, b);
            if ((top || bottom) && t != 'X') {
                continue;
            }
            if ((left || right) && t != 'Z') {
                continue;
            }
            Plaq p{a, b, t, {}};
            std::array<Pt, 4> pts{{{a, b}, {a, b + 1}, {a + 1, b}, {a + 1, b + 1}}};
            for (size_t k = 0; k < 4; k++) {
                if (rect.contains(pts[k])) {
                    p.corners[k] = pts[k];
                }
            }
            out.push_back(p);
        }
    }
    return out;
}

struct Reset {
    Pt q;
    char basis;  // 'Z', 'X', or 'Y' (reset then SQRT_X)
};

struct Region {
    const SurfaceOp *op;
    SurfaceKind kind;  // after conditioned-op conversion
    Rect rect;
    std::vector<Plaq> plaqs;
    std::vector<Reset> resets;
    std::set<std::pair<int32_t, int32_t>> silent_first_round;
    std::optional<Coord> injection_cell;
};

struct MeasureGroup {
    char basis;
    std::vector<Pt> qubits;
    std::vector<Plaq> terminal;  // plaquettes checked before the readout
    int32_t ts;
    std::optional<Coord> cell;  // logical readout of this cell
};

struct TsPlan {
    std::vector<Region> regions;
    std::vector<MeasureGroup> splits;
    std::vector<MeasureGroup> readouts;  // measure ops of this ts
};

class Lowerer {
   public:
    Lowerer(const SurfaceCircuit &s, uint32_t d, const NoiseModel &nm, const LoweringOptions &opts)
        : s_(s), d_(d), nm_(nm), opts_(opts) {
    }

    PhysicalCircuit run();

   private:
    const SurfaceCircuit &s_;
    int32_t d_;
    NoiseModel nm_;
    LoweringOptions opts_;
    std::vector<TsPlan> plans_;
    std::map<Pt, uint32_t> qid_;   // doubled coords -> qubit id
    std::map<Pt, uint32_t> did_;   // data coords -> tableau index
    PhysicalCircuit pc_;
    std::optional<SymbolicTableau> tab_;
    uint32_t meas_ = 0;
    std::vector<uint8_t> touched_;
    std::vector<uint32_t> active_;

    // observables
    std::map<Coord, size_t> last_readout_ts_;
    std::vector<std::vector<RecordSet>> obs_records_;  // per observable, per term
    std::vector<size_t> obs_done_;
    std::map<Coord, std::vector<Pt>> readout_reps_;    // rep support per measured cell

    Rect cell_rect(Coord c) const {
        int32_t r0 = c.r * (d_ + 1), c0 = c.c * (d_ + 1);
        return {r0, r0 + d_ - 1, c0, c0 + d_ - 1};
    }
    Rect path_rect(const std::vector<Coord> &cells) const {
        Rect r = cell_rect(cells[0]);
        for (auto c : cells) {
            Rect x = cell_rect(c);
            r = {std::min(r.r0, x.r0), std::max(r.r1, x.r1), std::min(r.c0, x.c0), std::max(r.c1, x.c1)};
        }
        return r;
    }
    Coord cell_of(Pt p) const {
        return {p.r / (d_ + 1), p.c / (d_ + 1)};
    }
    bool in_gap(Pt p) const {
        return p.r % (d_ + 1) == d_ || p.c % (d_ + 1) == d_;
    }
    Coord plaq_cell(const Plaq &p) const {
        for (auto &q : p.corners) {
            if (q && !in_gap(*q)) {
                return cell_of(*q);
            }
        }
        return cell_of(*p.corners[0]);
    }

    bool near_corner(const Plaq &p, const Rect &r) const {
        uint32_t k = opts_.postselect_radius;
        return k == 0 || (p.a - r.r0 < int32_t(k) && p.b - r.c0 < int32_t(k));
    }
    uint32_t data_q(Pt p) const {
        return qid_.at({2 * p.r, 2 * p.c});
    }
    uint32_t anc_q(const Plaq &p) const {
        return qid_.at({2 * p.a + 1, 2 * p.b + 1});
    }

    void plan();
    MeasureGroup readout_group(const SurfaceOp &op, size_t ts) const;
    std::vector<Pt> rep_support(Coord cell, char basis) const;
    SparsePauli plaq_pauli(const Plaq &p) const;

    void emit(Gate g, std::vector<uint32_t> targets, double arg = 0);
    void gate1(Gate g, const std::vector<uint32_t> &qs);
    void end_tick();
    uint32_t measure_instr(Gate g, const std::vector<uint32_t> &qs);
    void detector(RecordSet recs, DetectorInfo info);

    void run_ts(size_t t);
    void run_readouts(std::vector<MeasureGroup> &groups, uint32_t first_rec);
};

std::vector<Pt> Lowerer::rep_support(Coord cell, char basis) const {
    Rect r = cell_rect(cell);
    std::vector<Pt> out;
    for (int32_t k = 0; k < d_; k++) {
        // X_L runs down the first column, Z_L along the first row.
        out.push_back(basis == 'X' ? Pt{r.r0 + k, r.c0} : Pt{r.r0, r.c0 + k});
    }
    return out;
}

MeasureGroup Lowerer::readout_group(const SurfaceOp &op, size_t ts) const {
    MeasureGroup g;
    g.basis = op.kind == SurfaceKind::MeasureX ? 'X' : 'Z';
    Rect r = cell_rect(op.cells[0]);
    for (int32_t i = r.r0; i <= r.r1; i++) {
        for (int32_t j = r.c0; j <= r.c1; j++) {
            g.qubits.push_back({i, j});
        }
    }
    for (auto &p : plaquettes(r)) {
        if (p.type == g.basis) {
            g.terminal.push_back(p);
        }
    }
    g.ts = static_cast<int32_t>(ts);
    g.cell = op.cells[0];
    return g;
}

void Lowerer::plan() {
    if (d_ < 2) {
        throw std::invalid_argument("code distance must be at least 2");
    }
    plans_.resize(s_.timestamps.size());
    std::set<Coord> live;
    for (size_t t = 0; t < s_.timestamps.size(); t++) {
        auto &pl = plans_[t];
        for (const auto &op : s_.timestamps[t]) {
            if (op.cond_task) {
                // Feed-forward gadgets are not executed; a live surface they
                // would have touched simply keeps its stabilizer rounds.
                if (is_parity(op.kind) || op.kind == SurfaceKind::Teleport) {
                    for (auto c : {op.cells.front(), op.cells.back()}) {
                        if (live.count(c)) {
                            Region reg{&op, SurfaceKind::Idle, cell_rect(c), {}, {}, {}, {}};
                            pl.regions.push_back(std::move(reg));
                        }
                    }
                }
                continue;
            }
            if (is_measure(op.kind)) {
                pl.readouts.push_back(readout_group(op, t));
                live.erase(op.cells[0]);
                last_readout_ts_[op.cells[0]] = t;
                continue;
            }
            Region reg{&op, op.kind, path_rect(op.cells), {}, {}, {}, {}};
            Rect cr = cell_rect(op.cells[0]);
            switch (op.kind) {
                case SurfaceKind::InitZ:
                case SurfaceKind::InitX:
                    for (int32_t i = cr.r0; i <= cr.r1; i++) {
                        for (int32_t j = cr.c0; j <= cr.c1; j++) {
                            reg.resets.push_back({{i, j}, op.kind == SurfaceKind::InitZ ? 'Z' : 'X'});
                        }
                    }
                    live.insert(op.cells[0]);
                    break;
                case SurfaceKind::InitS:
                case SurfaceKind::InitMagic:
                    // Corner injection: the corner holds the injected state,
                    // the rest of the first row |0> and of the first column |+>.
                    for (int32_t i = 0; i < d_; i++) {
                        for (int32_t j = 0; j < d_; j++) {
                            char b = (i == 0 && j == 0) ? 'Y' : (j < i ? 'X' : 'Z');
                            reg.resets.push_back({{cr.r0 + i, cr.c0 + j}, b});
                        }
                    }
                    reg.injection_cell = op.cells[0];
                    live.insert(op.cells[0]);
                    break;
                case SurfaceKind::ParityZZ:
                case SurfaceKind::ParityXX: {
                    bool zz = op.kind == SurfaceKind::ParityZZ;
                    for (size_t k = 1; k < op.cells.size(); k++) {
                        bool vertical = op.cells[k].c == op.cells[0].c;
                        if (vertical != zz) {
                            throw std::invalid_argument(
                                "unsupported merge orientation at ts " + std::to_string(t) + ": " + op.str());
                        }
                    }
                    MeasureGroup split;
                    split.basis = zz ? 'X' : 'Z';
                    split.ts = static_cast<int32_t>(t);
                    std::set<Coord> ends{op.cells.front(), op.cells.back()};
                    for (int32_t i = reg.rect.r0; i <= reg.rect.r1; i++) {
                        for (int32_t j = reg.rect.c0; j <= reg.rect.c1; j++) {
                            Pt q{i, j};
                            if (!in_gap(q) && ends.count(cell_of(q))) {
                                continue;
                            }
                            reg.resets.push_back({q, split.basis});
                            split.qubits.push_back(q);
                        }
                    }
                    std::set<Pt> fresh(split.qubits.begin(), split.qubits.end());
                    char parity = zz ? 'Z' : 'X';
                    for (const auto &p : plaquettes(reg.rect)) {
                        bool any = false, all = true;
                        for (auto &q : p.corners) {
                            if (q) {
                                any |= fresh.count(*q) > 0;
                                all &= fresh.count(*q) > 0;
                            }
                        }
                        if (p.type == parity && any) {
                            reg.silent_first_round.insert({p.a, p.b});
                        }
                        if (p.type == split.basis && all) {
                            split.terminal.push_back(p);
                        }
                    }
                    pl.splits.push_back(std::move(split));
                    break;
                }
                case SurfaceKind::Idle:
                    break;
                default:
                    throw std::invalid_argument(
                        "op has no physical lowering: " + std::string(surface_kind_name(op.kind)));
            }
            pl.regions.push_back(std::move(reg));
        }
        for (auto &reg : pl.regions) {
            reg.plaqs = plaquettes(reg.rect);
        }
    }

    // Dense qubit ids in row-major doubled coordinates.
    std::set<Pt> coords;
    for (auto &pl : plans_) {
        for (auto &reg : pl.regions) {
            for (int32_t i = reg.rect.r0; i <= reg.rect.r1; i++) {
                for (int32_t j = reg.rect.c0; j <= reg.rect.c1; j++) {
                    coords.insert({2 * i, 2 * j});
                }
            }
            for (auto &p : reg.plaqs) {
                coords.insert({2 * p.a + 1, 2 * p.b + 1});
            }
        }
        for (auto &g : pl.readouts) {
            for (auto q : g.qubits) {
                coords.insert({2 * q.r, 2 * q.c});
            }
        }
    }
    uint32_t nd = 0;
    for (auto p : coords) {
        qid_[p] = static_cast<uint32_t>(pc_.qubit_coords.size());
        pc_.qubit_coords.push_back({p.r, p.c});
        if (p.r % 2 == 0) {
            did_[{p.r / 2, p.c / 2}] = nd++;
        }
    }
    pc_.num_qubits = static_cast<uint32_t>(coords.size());
    tab_.emplace(nd);
}

SparsePauli Lowerer::plaq_pauli(const Plaq &p) const {
    SparsePauli out;
    for (auto &q : p.corners) {
        if (q) {
            out.push_back({did_.at(*q), p.type});
        }
    }
    return out;
}

void Lowerer::emit(Gate g, std::vector<uint32_t> targets, double arg) {
    if (targets.empty() && g != Gate::TICK && g != Gate::ROUND && g != Gate::DETECTOR) {
        return;
    }
    pc_.instructions.push_back({g, arg, std::move(targets)});
}

void Lowerer::gate1(Gate g, const std::vector<uint32_t> &qs) {
    emit(g, qs);
    for (auto q : qs) {
        touched_[q] = 1;
    }
    if (nm_.p1 > 0) {
        emit(Gate::DEPOLARIZE1, qs, nm_.p1);
    }
}

void Lowerer::end_tick() {
    if (nm_.p1 > 0) {
        std::vector<uint32_t> idle;
        for (auto q : active_) {
            if (!touched_[q]) {
                idle.push_back(q);
            }
        }
        emit(Gate::DEPOLARIZE1, idle, nm_.p1);
    }
    std::fill(touched_.begin(), touched_.end(), 0);
    emit(Gate::TICK, {});
}

uint32_t Lowerer::measure_instr(Gate g, const std::vector<uint32_t> &qs) {
    uint32_t first = meas_;
    emit(g, qs, nm_.pm);
    for (auto q : qs) {
        touched_[q] = 1;
    }
    meas_ += static_cast<uint32_t>(qs.size());
    return first;
}

void Lowerer::detector(RecordSet recs, DetectorInfo info) {
    pc_.instructions.push_back({Gate::DETECTOR, 0, std::move(recs)});
    pc_.detectors.push_back(info);
}

void Lowerer::run_readouts(std::vector<MeasureGroup> &groups, uint32_t first_rec) {
    uint32_t rec = first_rec;
    for (auto &g : groups) {
        std::map<Pt, uint32_t> rec_of;
        for (auto q : g.qubits) {
            rec_of[q] = rec++;
        }
        for (auto &p : g.terminal) {
            auto r = tab_->peek(plaq_pauli(p));
            if (!r) {
                throw std::logic_error("terminal check is not deterministic at ts " + std::to_string(g.ts));
            }
            for (auto &q : p.corners) {
                if (q) {
                    xor_into(*r, {rec_of.at(*q)});
                }
            }
            detector(std::move(*r), {g.basis, g.ts, g.cell ? *g.cell : plaq_cell(p), false});
        }
        if (g.cell && last_readout_ts_.at(*g.cell) == static_cast<size_t>(g.ts)) {
            for (size_t k = 0; k < s_.observables.size(); k++) {
                const auto &terms = s_.observables[k];
                for (size_t t = 0; t < terms.size(); t++) {
                    if (terms[t].cell != *g.cell) {
                        continue;
                    }
                    if (terms[t].pauli != g.basis) {
                        throw std::invalid_argument("observable basis does not match readout of " + g.cell->str());
                    }
                    RecordSet rs;
                    for (auto q : rep_support(*g.cell, g.basis)) {
                        xor_into(rs, {rec_of.at(q)});
                    }
                    obs_records_[k][t] = std::move(rs);
                    if (++obs_done_[k] == terms.size()) {
                        SparsePauli prod;
                        for (const auto &term : terms) {
                            for (auto q : rep_support(term.cell, term.pauli)) {
                                prod.push_back({did_.at(q), term.pauli});
                            }
                        }
                        auto r = tab_->peek(prod);
                        if (!r) {
                            throw std::logic_error("observable " + std::to_string(k) + " is not deterministic");
                        }
                        // Product of all factor readouts against the group
                        // element it is about to become.
                        for (size_t u = 0; u < terms.size(); u++) {
                            xor_into(*r, obs_records_[k][u]);
                        }
                        pc_.instructions.push_back({Gate::OBSERVABLE, static_cast<double>(k), std::move(*r)});
                    }
                }
            }
        }
        for (auto q : g.qubits) {
            tab_->measure({{did_.at(q), g.basis}}, rec_of.at(q));
        }
    }
}

void Lowerer::run_ts(size_t t) {
    auto &pl = plans_[t];
    if (pl.regions.empty()) {
        if (!pl.readouts.empty() && (t == 0 || plans_[t - 1].regions.empty())) {
            throw std::invalid_argument("readout at ts " + std::to_string(t) + " has no preceding round");
        }
        return;
    }

    // Measurements of the next timestamp happen at the end of this one.
    std::vector<MeasureGroup> tail = pl.splits;
    if (t + 1 < plans_.size()) {
        for (auto &g : plans_[t + 1].readouts) {
            tail.push_back(g);
        }
    }

    active_.clear();
    std::vector<const Plaq *> plaqs;
    std::vector<const Region *> owner;
    for (auto &reg : pl.regions) {
        for (int32_t i = reg.rect.r0; i <= reg.rect.r1; i++) {
            for (int32_t j = reg.rect.c0; j <= reg.rect.c1; j++) {
                active_.push_back(data_q({i, j}));
            }
        }
        for (auto &p : reg.plaqs) {
            plaqs.push_back(&p);
            owner.push_back(&reg);
            active_.push_back(anc_q(p));
        }
    }
    std::sort(active_.begin(), active_.end());

    std::vector<uint32_t> anc, xanc;
    for (auto *p : plaqs) {
        anc.push_back(anc_q(*p));
        if (p->type == 'X') {
            xanc.push_back(anc_q(*p));
        }
    }

    for (int32_t round = 0; round < d_; round++) {
        emit(Gate::ROUND, {});
        // Resets.
        std::vector<uint32_t> rz = anc, rx, ys;
        if (round == 0) {
            for (auto &reg : pl.regions) {
                for (auto &r : reg.resets) {
                    (r.basis == 'X' ? rx : rz).push_back(data_q(r.q));
                    if (r.basis == 'Y') {
                        ys.push_back(data_q(r.q));
                    }
                    tab_->reset(did_.at(r.q), r.basis == 'X' ? 'X' : 'Z');
                    if (r.basis == 'Y') {
                        tab_->apply_sqrt_x(did_.at(r.q));
                    }
                }
            }
        }
        std::sort(rz.begin(), rz.end());
        std::sort(rx.begin(), rx.end());
        emit(Gate::R, rz);
        emit(Gate::RX, rx);
        for (auto q : rz) {
            touched_[q] = 1;
        }
        for (auto q : rx) {
            touched_[q] = 1;
        }
        end_tick();

        if (!ys.empty()) {
            gate1(Gate::SQRT_X, ys);
        }
        gate1(Gate::H, xanc);
        end_tick();

        static constexpr std::array<std::array<size_t, 4>, 2> ORDER{{{0, 1, 2, 3}, {0, 2, 1, 3}}};
        for (size_t layer = 0; layer < 4; layer++) {
            std::vector<uint32_t> pairs;
            for (auto *p : plaqs) {
                bool x = p->type == 'X';
                auto &q = p->corners[ORDER[x ? 0 : 1][layer]];
                if (!q) {
                    continue;
                }
                uint32_t a = anc_q(*p), dq = data_q(*q);
                pairs.push_back(x ? a : dq);
                pairs.push_back(x ? dq : a);
                touched_[a] = touched_[dq] = 1;
            }
            emit(Gate::CX, pairs);
            if (nm_.p2 > 0) {
                emit(Gate::DEPOLARIZE2, pairs, nm_.p2);
            }
            end_tick();
        }

        gate1(Gate::H, xanc);
        end_tick();

        uint32_t first = measure_instr(Gate::M, anc);
        uint32_t tail_first = meas_;
        if (round == d_ - 1) {
            for (auto &g : tail) {
                std::vector<uint32_t> qs;
                for (auto q : g.qubits) {
                    qs.push_back(data_q(q));
                }
                measure_instr(g.basis == 'X' ? Gate::MX : Gate::M, qs);
            }
        }
        end_tick();

        // The round's checks commute, so each one's expected value is read
        // off the state before any of them is applied.
        std::vector<std::optional<RecordSet>> expected(plaqs.size());
        for (size_t k = 0; k < plaqs.size(); k++) {
            expected[k] = tab_->peek(plaq_pauli(*plaqs[k]));
        }
        for (size_t k = 0; k < plaqs.size(); k++) {
            const Plaq &p = *plaqs[k];
            const Region &reg = *owner[k];
            uint32_t rec = first + static_cast<uint32_t>(k);
            tab_->measure(plaq_pauli(p), rec);
            bool silent = round == 0 && reg.silent_first_round.count({p.a, p.b});
            if (!expected[k] || silent) {
                continue;
            }
            xor_into(*expected[k], {rec});
            Coord cell = reg.injection_cell ? *reg.injection_cell : plaq_cell(p);
            bool ps = reg.injection_cell && static_cast<uint32_t>(round) < opts_.postselect_rounds && near_corner(p, reg.rect);
            detector(std::move(*expected[k]), {p.type, static_cast<int32_t>(t), cell, ps});
        }
        if (round == d_ - 1) {
            run_readouts(tail, tail_first);
        }
    }
}

PhysicalCircuit Lowerer::run() {
    plan();
    touched_.assign(pc_.num_qubits, 0);
    obs_records_.resize(s_.observables.size());
    obs_done_.assign(s_.observables.size(), 0);
    for (size_t k = 0; k < s_.observables.size(); k++) {
        obs_records_[k].resize(s_.observables[k].size());
        for (auto &term : s_.observables[k]) {
            if (!last_readout_ts_.count(term.cell)) {
                throw std::invalid_argument("observable refers to unmeasured surface " + term.cell.str());
            }
        }
    }
    pc_.num_observables = static_cast<uint32_t>(s_.observables.size());
    for (size_t t = 0; t < plans_.size(); t++) {
        run_ts(t);
    }
    if (opts_.measure_y_at_end) {
        Rect r = cell_rect(*opts_.measure_y_at_end);
        // One perfect stabilizer round first, so that faults in the last noisy
        // round are still seen.
        for (const auto &p : plaquettes(r)) {
            SparsePauli stab;
            std::vector<uint32_t> targets;
            for (auto &q : p.corners) {
                if (q) {
                    stab.push_back({did_.at(*q), p.type});
                    targets.push_back(data_q(*q) | (p.type == 'X' ? PAULI_X_BIT : PAULI_Z_BIT));
                }
            }
            uint32_t rec = meas_;
            emit(Gate::MPP, targets);
            meas_++;
            auto old = tab_->measure(stab, rec);
            if (!old) {
                throw std::logic_error("stabilizer readout is not deterministic");
            }
            xor_into(*old, {rec});
            detector(std::move(*old), {p.type, static_cast<int32_t>(s_.timestamps.size()) - 1, *opts_.measure_y_at_end, false});
        }
        std::vector<uint32_t> targets;
        SparsePauli y;
        for (int32_t k = 0; k < d_; k++) {
            Pt q{r.r0 + k, r.c0};
            char p = k == 0 ? 'Y' : 'X';
            y.push_back({did_.at(q), p});
            targets.push_back(data_q(q) | (p == 'Z' ? 0 : PAULI_X_BIT) | (p == 'X' ? 0 : PAULI_Z_BIT));
        }
        for (int32_t k = 1; k < d_; k++) {
            Pt q{r.r0, r.c0 + k};
            y.push_back({did_.at(q), 'Z'});
            targets.push_back(data_q(q) | PAULI_Z_BIT);
        }
        uint32_t rec = meas_;
        emit(Gate::MPP, targets);
        meas_++;
        emit(Gate::TICK, {});
        auto rs = tab_->peek(y);
        if (!rs) {
            throw std::logic_error("Y readout is not deterministic");
        }
        xor_into(*rs, {rec});
        pc_.instructions.push_back({Gate::OBSERVABLE, static_cast<double>(pc_.num_observables), std::move(*rs)});
        pc_.num_observables++;
    }
    for (size_t k = 0; k < obs_done_.size(); k++) {
        if (obs_done_[k] != s_.observables[k].size()) {
            throw std::invalid_argument("observable " + std::to_string(k) + " is never fully measured");
        }
    }
    pc_.validate();
    return std::move(pc_);
}

}  // namespace

PhysicalCircuit lower_physical(const SurfaceCircuit &s, uint32_t d, const NoiseModel &nm,
                               const LoweringOptions &opts) {
    return Lowerer(s, d, nm, opts).run();
}

SurfaceCircuit memory_schedule(char basis, size_t blocks) {
    if (blocks == 0 || (basis != 'X' && basis != 'Z')) {
        throw std::invalid_argument("memory schedule needs a Z/X basis and at least one block");
    }
    SurfaceCircuit s;
    s.width = s.height = 1;
    s.timestamps.resize(blocks + 1);
    s.timestamps[0].push_back({basis == 'Z' ? SurfaceKind::InitZ : SurfaceKind::InitX, {{0, 0}}, {}, {}});
    for (size_t t = 1; t < blocks; t++) {
        s.timestamps[t].push_back({SurfaceKind::Idle, {{0, 0}}, {}, {}});
    }
    s.timestamps[blocks].push_back({basis == 'Z' ? SurfaceKind::MeasureZ : SurfaceKind::MeasureX, {{0, 0}}, {}, 1u});
    s.observables.push_back({{basis, {0, 0}}});
    s.validate();
    return s;
}

PhysicalCircuit injection_experiment(uint32_t d, const NoiseModel &nm, size_t blocks, uint32_t postselect_rounds) {
    if (blocks == 0) {
        throw std::invalid_argument("injection experiment needs at least one block");
    }
    SurfaceCircuit s;
    s.width = s.height = 1;
    s.timestamps.resize(blocks);
    s.timestamps[0].push_back({SurfaceKind::InitMagic, {{0, 0}}, {}, {}});
    for (size_t t = 1; t < blocks; t++) {
        s.timestamps[t].push_back({SurfaceKind::Idle, {{0, 0}}, {}, {}});
    }
    LoweringOptions opts;
    opts.postselect_rounds = postselect_rounds;
    opts.measure_y_at_end = Coord{0, 0};
    return lower_physical(s, d, nm, opts);
}

}  // namespace qcds
