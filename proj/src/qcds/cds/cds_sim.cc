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

#include "qcds/cds/cds_sim.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "qcds/budget/budget.h"

namespace qcds {

namespace {

constexpr std::string_view MODEL_NAMES[] = {"volume", "syndromes", "overrun"};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace((unsigned char)s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace((unsigned char)s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_double(std::string_view key, std::string_view v) {
    if (v == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    double out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw std::invalid_argument("bad value for " + std::string(key) + ": '" + std::string(v) + "'");
    }
    return out;
}

enum EventKind : uint8_t { DecodeDone, DataArrived, ShapeDelivered, FrameDelivered, Applied, Boundary };

struct Event {
    double time;
    uint8_t kind;
    uint32_t key;  // task id, or timestamp for Boundary
    size_t index;
    bool operator>(const Event &o) const {
        return std::tie(time, kind, key) > std::tie(o.time, o.kind, o.key);
    }
};

class Simulation {
   public:
    Simulation(const TaskGraphReport &g, const Table2Metrics &m, const CDSConfig &cfg) : g_(g), cfg_(cfg) {
        size_t n = g.tasks.size();
        size_t num_ts = g.ts_has_rounds.size();
        size_t rounds = cfg.distance * std::count(g.ts_has_rounds.begin(), g.ts_has_rounds.end(), true);
        if (m.total_stabilizer_rounds != 0 && m.total_stabilizer_rounds != rounds) {
            throw std::invalid_argument(
                "metrics report " + std::to_string(m.total_stabilizer_rounds) + " rounds, the task graph implies " +
                std::to_string(rounds));
        }
        bits_per_round_ =
            m.total_stabilizer_rounds ? double(m.total_physical_measurements) / double(m.total_stabilizer_rounds) : 0;

        finals_at_.resize(num_ts + 1);
        ff_at_.resize(num_ts + 1);
        shape_succ_.resize(n);
        frame_succ_.resize(n);
        shape_pending_.assign(n, 0);
        frame_pending_.assign(n, 0);
        data_ok_.assign(n, false);
        queued_.assign(n, false);
        decoded_.assign(n, false);
        apply_pending_.assign(n, false);
        applied_.assign(n, false);
        duration_.assign(n, cfg.beta);
        rep_.tasks.resize(n);

        const SyndromeEstimate *syn = nullptr;
        if (cfg.model == DecodeTimeModel::Syndromes) {
            for (const auto &s : g.syndromes) {
                if (s.distance == cfg.distance && std::abs(s.p - cfg.p_phys) <= 1e-12 * cfg.p_phys) {
                    syn = &s;
                }
            }
            if (!syn) {
                throw std::invalid_argument("no syndrome estimate for the configured distance and p");
            }
        }
        for (size_t k = 0; k < n; k++) {
            const auto &t = g.tasks[k];
            if (t.final_ts >= num_ts) {
                throw std::invalid_argument("task " + std::to_string(t.id) + " ends outside the schedule");
            }
            rep_.tasks[k].id = t.id;
            rep_.tasks[k].has_feedforward = t.feedforward_ts.has_value();
            finals_at_[t.final_ts].push_back(k);
            if (t.feedforward_ts) {
                ff_at_[*t.feedforward_ts].push_back(k);
            }
            if (cfg.model == DecodeTimeModel::Volume) {
                duration_[k] += cfg.alpha * double(t.volume_ft_blocks);
            } else if (cfg.model == DecodeTimeModel::Syndromes) {
                duration_[k] += cfg.alpha * syn->per_task.at(k) * (1 - cfg.predecode_factor);
            }
        }
        for (auto &v : ff_at_) {
            std::sort(v.begin(), v.end(), [&](size_t a, size_t b) {
                return std::tie(g.tasks[a].final_ts, g.tasks[a].id) < std::tie(g.tasks[b].final_ts, g.tasks[b].id);
            });
        }
        for (const auto &e : g.dependencies) {
            size_t a = g.index_of(e.from), b = g.index_of(e.to);
            if (e.kind == DependencyKind::Shape) {
                shape_succ_[a].push_back(b);
                shape_pending_[b]++;
            } else {
                frame_succ_[a].push_back(b);
                frame_pending_[b]++;
            }
        }
    }

    CDSReport run() {
        push(0, Boundary, 0, 0);
        while (!events_.empty()) {
            Event e = events_.top();
            events_.pop();
            handle(e);
            if (events_.empty() || events_.top().time > e.time) {
                dispatch(e.time);
            }
        }
        if (!done_ || std::count(applied_.begin(), applied_.end(), true) != (long)applied_.size()) {
            throw std::invalid_argument("task graph deadlocks: a feed-forward waits on a later measurement");
        }
        rep_.circuit_end = end_time_;
        rep_.makespan = end_time_;
        for (const auto &t : rep_.tasks) {
            rep_.makespan = std::max(rep_.makespan, t.apply_time);
            if (t.t_delay > 0) {
                rep_.delayed_events++;
                rep_.total_delay += t.t_delay;
                rep_.added_error += delay_error(cfg_.n_logical, cfg_.p_ft, t.t_delay, cfg_.distance, cfg_.t_round);
            }
        }
        return rep_;
    }

   private:
    const TaskGraphReport &g_;
    const CDSConfig &cfg_;
    CDSReport rep_;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
    double bits_per_round_ = 0;

    std::vector<std::vector<size_t>> finals_at_, ff_at_, shape_succ_, frame_succ_;
    std::vector<size_t> shape_pending_, frame_pending_;
    std::vector<bool> data_ok_, queued_, decoded_, apply_pending_, applied_;
    std::vector<double> duration_;
    std::set<std::tuple<size_t, uint32_t, size_t>> ready_;
    size_t busy_ = 0;

    // Circuit progress; its clock may run ahead of the event clock.
    size_t ts_ = 0;
    double cur_ = 0;
    std::deque<size_t> ff_queue_;
    bool waiting_ = false;
    bool done_ = false;
    double end_time_ = 0;

    double channel_free_ = 0;
    double last_chunk_done_ = 0;

    void push(double time, EventKind kind, uint32_t key, size_t index) {
        events_.push({time, kind, key, index});
    }

    void handle(const Event &e) {
        size_t k = e.index;
        switch (e.kind) {
            case Boundary:
                boundary(e.key, e.time);
                break;
            case DataArrived:
                data_ok_[k] = true;
                check_ready(k, e.time);
                break;
            case ShapeDelivered:
                shape_pending_[k]--;
                check_ready(k, e.time);
                break;
            case FrameDelivered:
                frame_pending_[k]--;
                check_apply(k, e.time);
                break;
            case DecodeDone:
                busy_--;
                decoded_[k] = true;
                for (auto j : shape_succ_[k]) {
                    push(e.time + cfg_.channel_latency, ShapeDelivered, g_.tasks[j].id, j);
                }
                for (auto j : frame_succ_[k]) {
                    push(e.time + cfg_.channel_latency, FrameDelivered, g_.tasks[j].id, j);
                }
                check_apply(k, e.time);
                break;
            case Applied:
                applied_[k] = true;
                rep_.tasks[k].apply_time = e.time;
                if (waiting_) {
                    resume();
                }
                break;
        }
    }

    void check_ready(size_t k, double now) {
        if (data_ok_[k] && shape_pending_[k] == 0 && !queued_[k]) {
            queued_[k] = true;
            rep_.tasks[k].ready_time = now;
            ready_.insert({g_.tasks[k].final_ts, g_.tasks[k].id, k});
        }
    }

    void check_apply(size_t k, double now) {
        if (decoded_[k] && frame_pending_[k] == 0 && !apply_pending_[k]) {
            apply_pending_[k] = true;
            push(now + cfg_.channel_latency, Applied, g_.tasks[k].id, k);
        }
    }

    void dispatch(double now) {
        while (busy_ < cfg_.workers && !ready_.empty()) {
            size_t k = std::get<2>(*ready_.begin());
            ready_.erase(ready_.begin());
            busy_++;
            rep_.peak_concurrent_decodes = std::max(rep_.peak_concurrent_decodes, busy_);
            rep_.tasks[k].decode_start = now;
            rep_.tasks[k].decode_end = now + duration_[k];
            push(now + duration_[k], DecodeDone, g_.tasks[k].id, k);
        }
    }

    void boundary(size_t ts, double now) {
        ts_ = ts;
        cur_ = now;
        for (auto k : finals_at_[ts]) {
            rep_.tasks[k].final_time = now;
            double arrival = std::max(now, last_chunk_done_) + cfg_.channel_latency;
            push(arrival, DataArrived, g_.tasks[k].id, k);
        }
        if (ts == g_.ts_has_rounds.size()) {
            done_ = true;
            end_time_ = now;
            return;
        }
        ff_queue_.assign(ff_at_[ts].begin(), ff_at_[ts].end());
        resume();
    }

    void resume() {
        while (!ff_queue_.empty()) {
            size_t k = ff_queue_.front();
            if (!applied_[k]) {
                waiting_ = true;
                return;
            }
            double release = std::max(rep_.tasks[k].apply_time, cur_);
            if (cfg_.model == DecodeTimeModel::Overrun) {
                release = std::max(release, cur_ + cfg_.overrun_rounds * cfg_.t_round);
            }
            rep_.tasks[k].deadline = cur_;
            rep_.tasks[k].t_delay = release - cur_;
            idle_until(release);
            ff_queue_.pop_front();
        }
        waiting_ = false;
        double next = cur_;
        if (g_.ts_has_rounds[ts_]) {
            for (uint32_t r = 0; r < cfg_.distance; r++) {
                emit_round(cur_ + (r + 1) * cfg_.t_round, bits_per_round_);
            }
            next = cur_ + cfg_.distance * cfg_.t_round;
        }
        push(next, Boundary, static_cast<uint32_t>(ts_ + 1), 0);
    }

    // A stalled circuit keeps running stabilizer rounds on its idle surfaces.
    void idle_until(double release) {
        double t = cur_;
        while (t + cfg_.t_round <= release) {
            t += cfg_.t_round;
            emit_round(t, bits_per_round_);
        }
        if (release > t) {
            emit_round(release, bits_per_round_ * (release - t) / cfg_.t_round);
        }
        cur_ = release;
    }

    void emit_round(double t, double bits) {
        double backlog = 0;
        double transfer = 0;
        if (std::isfinite(cfg_.bandwidth)) {
            backlog = std::max(0.0, channel_free_ - t) * cfg_.bandwidth / cfg_.t_round;
            transfer = bits / cfg_.bandwidth * cfg_.t_round;
        }
        rep_.backlog_bits.push_back(backlog);
        rep_.peak_backlog_bits = std::max(rep_.peak_backlog_bits, backlog);
        channel_free_ = std::max(channel_free_, t) + transfer;
        last_chunk_done_ = channel_free_;
    }
};

}  // namespace

void CDSConfig::validate() const {
    auto check = [](bool ok, const char *what) {
        if (!ok) {
            throw std::invalid_argument(std::string("invalid CDS config: ") + what);
        }
    };
    check(t_round > 0 && std::isfinite(t_round), "t_round must be positive");
    check(channel_latency >= 0 && std::isfinite(channel_latency), "channel_latency must be >= 0");
    check(bandwidth > 0, "bandwidth must be positive");
    check(workers >= 1, "workers must be >= 1");
    check(alpha >= 0 && beta >= 0 && std::isfinite(alpha) && std::isfinite(beta), "decode time must be >= 0");
    check(overrun_rounds >= 0 && std::isfinite(overrun_rounds), "overrun_rounds must be >= 0");
    check(predecode_factor >= 0 && predecode_factor <= 1, "predecode_factor must lie in [0, 1]");
    check(distance >= 1, "distance must be >= 1");
    check(p_ft >= 0 && p_ft <= 0.5, "p_ft must lie in [0, 0.5]");
}

std::string CDSConfig::str() const {
    std::stringstream out;
    out.precision(17);
    out << "t_round = " << t_round << "\n";
    out << "channel_latency = " << channel_latency << "\n";
    out << "bandwidth = " << bandwidth << "\n";
    out << "workers = " << workers << "\n";
    out << "model = " << MODEL_NAMES[static_cast<size_t>(model)] << "\n";
    out << "alpha = " << alpha << "\n";
    out << "beta = " << beta << "\n";
    out << "overrun_rounds = " << overrun_rounds << "\n";
    out << "predecode_factor = " << predecode_factor << "\n";
    out << "distance = " << distance << "\n";
    out << "p_phys = " << p_phys << "\n";
    out << "p_ft = " << p_ft << "\n";
    out << "n_logical = " << n_logical << "\n";
    return out.str();
}

CDSConfig parse_cds_config(std::string_view text) {
    CDSConfig cfg;
    size_t line_no = 0;
    std::stringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        line_no++;
        std::string_view line = raw;
        if (auto h = line.find('#'); h != std::string_view::npos) {
            line = line.substr(0, h);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key = value");
        }
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (key == "model") {
            auto it = std::find(std::begin(MODEL_NAMES), std::end(MODEL_NAMES), value);
            if (it == std::end(MODEL_NAMES)) {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown model");
            }
            cfg.model = static_cast<DecodeTimeModel>(it - std::begin(MODEL_NAMES));
            continue;
        }
        double v = parse_double(key, value);
        if (key == "t_round") {
            cfg.t_round = v;
        } else if (key == "channel_latency") {
            cfg.channel_latency = v;
        } else if (key == "bandwidth") {
            cfg.bandwidth = v;
        } else if (key == "workers") {
            cfg.workers = static_cast<uint32_t>(v);
        } else if (key == "alpha") {
            cfg.alpha = v;
        } else if (key == "beta") {
            cfg.beta = v;
        } else if (key == "overrun_rounds") {
            cfg.overrun_rounds = v;
        } else if (key == "predecode_factor") {
            cfg.predecode_factor = v;
        } else if (key == "distance") {
            cfg.distance = static_cast<uint32_t>(v);
        } else if (key == "p_phys") {
            cfg.p_phys = v;
        } else if (key == "p_ft") {
            cfg.p_ft = v;
        } else if (key == "n_logical") {
            cfg.n_logical = static_cast<size_t>(v);
        } else {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
        }
    }
    cfg.validate();
    return cfg;
}

std::string CDSReport::trace() const {
    std::stringstream out;
    for (const auto &t : tasks) {
        out << "task " << t.id << " final " << t.final_time << " ready " << t.ready_time << " decode ["
            << t.decode_start << ", " << t.decode_end << "] apply " << t.apply_time;
        if (t.has_feedforward) {
            out << " deadline " << t.deadline << " delay " << t.t_delay;
        }
        out << "\n";
    }
    return out.str();
}

CDSReport simulate_cds(const TaskGraphReport &tasks, const Table2Metrics &metrics, const CDSConfig &cfg) {
    cfg.validate();
    return Simulation(tasks, metrics, cfg).run();
}

std::vector<CDSSweepRow> sweep_cds(
    const TaskGraphReport &tasks, const Table2Metrics &metrics, const std::vector<CDSConfig> &grid) {
    if (grid.empty()) {
        throw std::invalid_argument("empty CDS sweep grid");
    }
    std::vector<CDSSweepRow> rows;
    for (const auto &cfg : grid) {
        rows.push_back({cfg, simulate_cds(tasks, metrics, cfg)});
    }
    return rows;
}

std::string sweep_csv(const std::vector<CDSSweepRow> &rows) {
    std::stringstream out;
    out.precision(12);
    out << "distance,p_phys,p_ft,t_round,channel_latency,bandwidth,workers,model,alpha,beta,overrun_rounds,"
           "predecode_factor,added_error,total_delay,delayed_events,peak_decodes,peak_backlog_bits,"
           "final_backlog_bits,makespan\n";
    for (const auto &[c, r] : rows) {
        out << c.distance << ',' << c.p_phys << ',' << c.p_ft << ',' << c.t_round << ',' << c.channel_latency << ','
            << c.bandwidth << ',' << c.workers << ',' << MODEL_NAMES[static_cast<size_t>(c.model)] << ',' << c.alpha
            << ',' << c.beta << ',' << c.overrun_rounds << ',' << c.predecode_factor << ',' << r.added_error << ','
            << r.total_delay << ',' << r.delayed_events << ',' << r.peak_concurrent_decodes << ','
            << r.peak_backlog_bits << ',' << (r.backlog_bits.empty() ? 0.0 : r.backlog_bits.back()) << ','
            << r.makespan << '\n';
    }
    return out.str();
}

}  // namespace qcds
