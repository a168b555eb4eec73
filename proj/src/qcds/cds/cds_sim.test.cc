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

#include <gtest/gtest.h>

#include <random>

#include "qcds/budget/budget.h"
#include "qcds/io_util.h"
#include "qcds/physical/lowering.h"

using namespace qcds;

namespace {

struct Fixture {
    TaskGraphReport tasks;
    Table2Metrics metrics;
};

const Fixture &fixture() {
    static Fixture f = [] {
        auto s = load_reference_schedule(fixture_text("shor21.surface"));
        return Fixture{extract_tasks(s), physical_metrics(lower_physical(s, 3, NoiseModel{}))};
    }();
    return f;
}

CDSConfig base() {
    CDSConfig c;
    c.distance = 3;
    c.p_ft = 1e-4;
    return c;
}

// Two tasks that finish together at ts 1 and feed forward at ts 3.
TaskGraphReport two_tasks() {
    TaskGraphReport r;
    for (uint32_t id : {1u, 2u}) {
        DecodingTask t;
        t.id = id;
        t.start_ts = 0;
        t.end_ts = t.final_ts = 1;
        t.feedforward_ts = 3;
        t.volume_ft_blocks = id + 1;
        r.tasks.push_back(t);
    }
    r.ts_has_rounds.assign(4, true);
    r.max_parallel = 2;
    return r;
}

void expect_causal(const CDSReport &r, const CDSConfig &c) {
    EXPECT_LE(r.peak_concurrent_decodes, c.workers);
    for (const auto &t : r.tasks) {
        EXPECT_GE(t.ready_time, t.final_time);
        EXPECT_GE(t.decode_start, t.ready_time);
        EXPECT_GE(t.decode_end, t.decode_start);
        EXPECT_GE(t.apply_time, t.decode_end + c.channel_latency - 1e-12);
        EXPECT_GE(t.t_delay, 0.0);
    }
}

}  // namespace

TEST(cds_sim, ideal_loop_adds_nothing) {
    auto c = base();
    auto r = simulate_cds(fixture().tasks, fixture().metrics, c);
    EXPECT_EQ(r.added_error, 0.0);
    EXPECT_EQ(r.delayed_events, 0u);
    EXPECT_EQ(r.makespan, 117.0);
    EXPECT_EQ(r.peak_backlog_bits, 0.0);
    expect_causal(r, c);
}

TEST(cds_sim, single_worker_serializes_hand_trace) {
    CDSConfig c;
    c.distance = 1;
    c.alpha = 1;
    c.p_ft = 1e-3;
    auto r = simulate_cds(two_tasks(), Table2Metrics{}, c);
    ASSERT_EQ(r.tasks.size(), 2u);
    EXPECT_EQ(r.tasks[0].final_time, 1.0);
    EXPECT_EQ(r.tasks[0].decode_start, 1.0);
    EXPECT_EQ(r.tasks[0].decode_end, 3.0);
    EXPECT_EQ(r.tasks[1].decode_start, r.tasks[0].decode_end);
    EXPECT_EQ(r.tasks[1].decode_end, 6.0);
    EXPECT_EQ(r.tasks[0].t_delay, 0.0);
    EXPECT_EQ(r.tasks[1].deadline, 3.0);
    EXPECT_EQ(r.tasks[1].t_delay, 3.0);
    EXPECT_EQ(r.makespan, 7.0);
    EXPECT_DOUBLE_EQ(r.added_error, 5 * 1e-3 * 3.0);

    c.workers = 2;
    r = simulate_cds(two_tasks(), Table2Metrics{}, c);
    EXPECT_EQ(r.tasks[1].decode_start, 1.0);
    EXPECT_EQ(r.tasks[1].t_delay, 1.0);
}

TEST(cds_sim, shape_input_gates_decode_and_frame_gates_apply) {
    auto g = two_tasks();
    g.tasks[0].volume_ft_blocks = 1;
    g.tasks[1].volume_ft_blocks = 1;
    CDSConfig c;
    c.distance = 1;
    c.alpha = 1;
    c.workers = 2;
    c.channel_latency = 0.5;
    g.dependencies = {{1, 2, DependencyKind::Shape}};
    auto r = simulate_cds(g, Table2Metrics{}, c);
    EXPECT_EQ(r.tasks[1].ready_time, r.tasks[0].decode_end + 0.5);
    EXPECT_EQ(r.tasks[1].decode_start, r.tasks[1].ready_time);

    g.dependencies = {{1, 2, DependencyKind::Frame}};
    r = simulate_cds(g, Table2Metrics{}, c);
    EXPECT_EQ(r.tasks[1].decode_start, r.tasks[0].decode_start);
    EXPECT_EQ(r.tasks[1].apply_time, r.tasks[0].decode_end + 0.5 + 0.5);
}

TEST(cds_sim, constant_overrun_matches_closed_form) {
    CDSConfig c;
    c.distance = 5;
    c.p_phys = 1e-3;
    c.p_ft = 5e-5;
    c.workers = 13;
    c.model = DecodeTimeModel::Overrun;
    c.overrun_rounds = 20;
    auto r = simulate_cds(fixture().tasks, Table2Metrics{}, c);
    EXPECT_EQ(r.delayed_events, 12u);
    for (const auto &t : r.tasks) {
        EXPECT_DOUBLE_EQ(t.t_delay, t.has_feedforward ? 20.0 : 0.0);
    }
    double per_event = r.added_error / double(r.delayed_events);
    EXPECT_NEAR(per_event, delay_error(5, 5e-5, 20, 5, 1), 1e-9);
    EXPECT_NEAR(per_event, 1e-3, 1e-9);
}

TEST(cds_sim, added_error_is_sum_of_delay_penalties) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 30; trial++) {
        auto c = base();
        c.workers = 1 + rng() % 6;
        c.alpha = 2 * u(rng);
        c.beta = 5 * u(rng);
        c.channel_latency = u(rng);
        c.bandwidth = 40 + 60 * u(rng);
        auto r = simulate_cds(fixture().tasks, fixture().metrics, c);
        expect_causal(r, c);
        double sum = 0, delay = 0;
        for (const auto &t : r.tasks) {
            sum += delay_error(c.n_logical, c.p_ft, t.t_delay, c.distance, c.t_round);
            delay += t.t_delay;
        }
        EXPECT_NEAR(r.added_error, sum, 1e-12);
        EXPECT_NEAR(r.circuit_end - 117, delay, 1e-6 * (1 + delay)) << c.str();
    }
}

TEST(cds_sim, bandwidth_at_round_rate_keeps_up) {
    auto c = base();
    c.bandwidth = 69;
    auto r = simulate_cds(fixture().tasks, fixture().metrics, c);
    EXPECT_EQ(r.peak_backlog_bits, 0.0);

    c.bandwidth = 69.0 / 2;
    r = simulate_cds(fixture().tasks, fixture().metrics, c);
    size_t n = r.backlog_bits.size();
    ASSERT_GT(n, 100u);
    EXPECT_GT(r.backlog_bits[n - 1], 1.8 * r.backlog_bits[n / 2]);
    EXPECT_GT(r.backlog_bits[n / 2], 1.8 * r.backlog_bits[n / 4]);
}

TEST(cds_sim, more_workers_never_hurt) {
    for (double alpha : {0.1, 0.5, 1.0, 2.0}) {
        std::vector<CDSConfig> grid;
        for (uint32_t w = 1; w <= 8; w++) {
            auto c = base();
            c.alpha = alpha;
            c.beta = 1;
            c.channel_latency = 0.5;
            c.bandwidth = 69;
            c.workers = w;
            grid.push_back(c);
        }
        auto rows = sweep_cds(fixture().tasks, fixture().metrics, grid);
        for (size_t k = 1; k < rows.size(); k++) {
            EXPECT_LE(rows[k].report.added_error, rows[k - 1].report.added_error);
            if (rows[k - 1].cfg.workers >= fixture().tasks.max_parallel) {
                EXPECT_EQ(rows[k].report.added_error, rows[k - 1].report.added_error);
            }
        }
    }
}

TEST(cds_sim, slower_decoding_never_helps) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 20; trial++) {
        auto c = base();
        c.workers = 1 + rng() % 5;
        c.alpha = u(rng);
        c.beta = 3 * u(rng);
        auto slow = c;
        (trial % 2 ? slow.alpha : slow.beta) += u(rng);
        EXPECT_LE(
            simulate_cds(fixture().tasks, fixture().metrics, c).added_error,
            simulate_cds(fixture().tasks, fixture().metrics, slow).added_error + 1e-15)
            << c.str();
    }
}

TEST(cds_sim, syndrome_model_uses_estimates) {
    auto g = two_tasks();
    g.syndromes.push_back({1, 1e-3, {4.0, 2.0}});
    CDSConfig c;
    c.distance = 1;
    c.p_phys = 1e-3;
    c.model = DecodeTimeModel::Syndromes;
    c.alpha = 1;
    c.predecode_factor = 0.5;
    c.workers = 2;
    auto r = simulate_cds(g, Table2Metrics{}, c);
    EXPECT_EQ(r.tasks[0].decode_end - r.tasks[0].decode_start, 2.0);
    EXPECT_EQ(r.tasks[1].decode_end - r.tasks[1].decode_start, 1.0);
    c.p_phys = 2e-3;
    EXPECT_THROW(simulate_cds(g, Table2Metrics{}, c), std::invalid_argument);
}

TEST(cds_sim, deterministic) {
    auto c = base();
    c.alpha = 0.7;
    c.workers = 2;
    c.bandwidth = 50;
    auto a = simulate_cds(fixture().tasks, fixture().metrics, c);
    auto b = simulate_cds(fixture().tasks, fixture().metrics, c);
    EXPECT_EQ(a.trace(), b.trace());
    EXPECT_EQ(a.backlog_bits, b.backlog_bits);
}

TEST(cds_sim, empty_and_inconsistent_inputs) {
    TaskGraphReport empty;
    empty.ts_has_rounds.assign(3, true);
    auto rows = sweep_cds(empty, Table2Metrics{}, {base(), base()});
    for (const auto &row : rows) {
        EXPECT_EQ(row.report.added_error, 0.0);
    }
    EXPECT_THROW(sweep_cds(empty, Table2Metrics{}, {}), std::invalid_argument);

    auto late = two_tasks();
    late.tasks[0].final_ts = 3;
    late.tasks[0].feedforward_ts.reset();
    late.tasks[1].feedforward_ts = 2;
    late.dependencies = {{1, 2, DependencyKind::Shape}};
    EXPECT_THROW(simulate_cds(late, Table2Metrics{}, base()), std::invalid_argument);

    auto metrics = fixture().metrics;
    metrics.total_stabilizer_rounds += 1;
    EXPECT_THROW(simulate_cds(fixture().tasks, metrics, base()), std::invalid_argument);
    auto c = base();
    c.workers = 0;
    EXPECT_THROW(simulate_cds(fixture().tasks, fixture().metrics, c), std::invalid_argument);
}

TEST(cds_sim, config_text_round_trips) {
    auto c = base();
    c.bandwidth = 69;
    c.model = DecodeTimeModel::Syndromes;
    c.predecode_factor = 0.25;
    auto back = parse_cds_config(c.str());
    EXPECT_EQ(back.str(), c.str());
    EXPECT_EQ(parse_cds_config("bandwidth = inf # default\n").bandwidth, CDSConfig{}.bandwidth);
    EXPECT_THROW(parse_cds_config("speed = 3\n"), std::invalid_argument);
    EXPECT_THROW(parse_cds_config("workers = 0\n"), std::invalid_argument);
    c.model = DecodeTimeModel::Volume;
    auto csv = sweep_csv(sweep_cds(fixture().tasks, fixture().metrics, {c}));
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
}
