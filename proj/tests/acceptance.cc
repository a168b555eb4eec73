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

// Acceptance run: one PASS/FAIL/SKIP line per criterion. Exits non-zero if
// any criterion fails. `--slow` adds the distance-7 circuit runs.

#include <CLI11.hpp>
#include <cmath>
#include <cstdarg>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>

#include "qcds/budget/budget.h"
#include "qcds/cds/cds_sim.h"
#include "qcds/decoder/decoder.h"
#include "qcds/io_util.h"
#include "qcds/logical/lowering.h"
#include "qcds/physical/dem.h"
#include "qcds/physical/lowering.h"
#include "qcds/pipeline/experiments.h"
#include "qcds/stab/random_circuit.h"
#include "qcds/stab/tableau.h"
#include "qcds/stats.h"
#include "qcds/tasks/task_graph.h"

using namespace qcds;

namespace {

// Pinned budgets and tolerances.
constexpr double P = 1e-3;
constexpr double P_HIGH = 3e-3;
constexpr double SCALE_TOL = 0.20;
constexpr double EXPONENT_TOL = 0.15;
constexpr size_t SMOKE_SHOTS = 10000;
constexpr size_t MEMORY_SHOTS = 1000000;
constexpr double FT_LO = 1.7e-5, FT_HI = 1.5e-4;
constexpr size_t INJECTION_SHOTS = 200000;
constexpr double PS_LO = 2, PS_HI = 5;
constexpr size_t CIRCUIT_SHOTS = 20000;
constexpr size_t CIRCUIT_SHOTS_HIGH_P = 5000;
constexpr double CIRCUIT_MAX = 0.10;
constexpr double BUDGET_FACTOR = 2;
constexpr double SATURATION_LO = 0.025, SATURATION_HI = 0.10;
constexpr size_t SYNDROME_SHOTS = 100000;
constexpr double SYNDROME_REL = 0.05;
constexpr double OVERRUN_ROUNDS = 20;
constexpr double OVERRUN_P_FT = 5e-5;  // FT-block error implied for d=5, p=0.1%
constexpr double OVERRUN_EVENT = 1e-3;
constexpr double ABS_TOL = 1e-9;
constexpr double TABLE_RATE = 69;  // bits per round at d=3
constexpr size_t ORACLE_SHOTS = 1000;
constexpr double ORACLE_AGREEMENT = 0.95;
constexpr size_t CHI_TRIALS = 12, CHI_SHOTS = 20000;
constexpr double CHI_P = 1e-3;

int failures = 0;

void line(int id, const char *status, const std::string &detail) {
    std::printf("criterion %2d: %s  %s\n", id, status, detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char *f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char *f, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

void verdict(int id, bool ok, const std::string &detail) {
    failures += !ok;
    line(id, ok ? "PASS" : "FAIL", detail);
}

void guarded(int id, const std::function<void()> &body) {
    try {
        body();
    } catch (const std::exception &e) {
        verdict(id, false, std::string("error: ") + e.what());
    }
}

struct Shared {
    SurfaceCircuit fixture;
    Table2Metrics metrics_d3;
    double p_ft_d5 = NAN;
    double p_nft_d5 = NAN;
    double circuit_d5 = NAN;
} shared;

// --- independent oracles ----------------------------------------------------

// Exhaustive search for undetected observable flips among k-combinations of
// DEM mechanisms, k <= 3. Returns the count found at each size.
std::array<size_t, 4> undetected_flips(const DetectorErrorModel &dem) {
    std::array<size_t, 4> found{};
    const auto &m = dem.mechanisms;
    std::map<std::vector<uint32_t>, std::vector<size_t>> by_dets;
    for (size_t i = 0; i < m.size(); i++) {
        by_dets[m[i].detectors].push_back(i);
        found[1] += m[i].detectors.empty() && m[i].observables;
    }
    for (size_t i = 0; i < m.size(); i++) {
        for (size_t j = i + 1; j < m.size(); j++) {
            if (m[i].detectors == m[j].detectors && m[i].observables != m[j].observables) {
                found[2]++;
            }
            std::vector<uint32_t> x;
            std::set_symmetric_difference(m[i].detectors.begin(), m[i].detectors.end(), m[j].detectors.begin(),
                                          m[j].detectors.end(), std::back_inserter(x));
            auto it = by_dets.find(x);
            if (it == by_dets.end()) {
                continue;
            }
            for (auto k : it->second) {
                found[3] += k > j && (m[i].observables ^ m[j].observables ^ m[k].observables) != 0;
            }
        }
    }
    return found;
}

using cd = std::complex<double>;
using Matrix = std::vector<std::vector<cd>>;

Matrix apply_op(const Matrix &u, const LogicalOp &op) {
    const double r = 1 / std::sqrt(2.0);
    const cd i(0, 1);
    size_t dim = u.size();
    Matrix out(dim, std::vector<cd>(dim));
    auto bit = [](size_t x, uint32_t q) { return (x >> q) & 1; };
    for (size_t col = 0; col < dim; col++) {
        for (size_t x = 0; x < dim; x++) {
            cd a = u[x][col];
            if (a == cd(0)) {
                continue;
            }
            auto q = op.targets;
            switch (op.kind) {
                case LogicalKind::H: {
                    size_t y = x ^ (size_t{1} << q[0]);
                    out[x & ~(size_t{1} << q[0])][col] += a * r;
                    out[x | (size_t{1} << q[0])][col] += a * (bit(x, q[0]) ? -r : r);
                    (void)y;
                    break;
                }
                case LogicalKind::T:
                    out[x][col] += bit(x, q[0]) ? a * std::exp(i * M_PI / 4.) : a;
                    break;
                case LogicalKind::Tdg:
                    out[x][col] += bit(x, q[0]) ? a * std::exp(-i * M_PI / 4.) : a;
                    break;
                case LogicalKind::S:
                    out[x][col] += bit(x, q[0]) ? a * i : a;
                    break;
                case LogicalKind::Sdg:
                    out[x][col] += bit(x, q[0]) ? -a * i : a;
                    break;
                case LogicalKind::CNOT:
                    out[bit(x, q[0]) ? x ^ (size_t{1} << q[1]) : x][col] += a;
                    break;
                case LogicalKind::Toffoli:
                    out[bit(x, q[0]) && bit(x, q[1]) ? x ^ (size_t{1} << q[2]) : x][col] += a;
                    break;
                default:
                    throw std::invalid_argument("unexpected op in the Toffoli network");
            }
        }
    }
    return out;
}

bool same_up_to_phase(const Matrix &a, const Matrix &b) {
    cd phase = 0;
    for (size_t x = 0; x < a.size() && phase == cd(0); x++) {
        if (std::abs(b[x][0]) > 1e-9) {
            phase = a[x][0] / b[x][0];
        }
    }
    if (std::abs(std::abs(phase) - 1) > 1e-9) {
        return false;
    }
    for (size_t x = 0; x < a.size(); x++) {
        for (size_t y = 0; y < a.size(); y++) {
            if (std::abs(a[x][y] - phase * b[x][y]) > 1e-9) {
                return false;
            }
        }
    }
    return true;
}

Matrix network_unitary(const std::vector<LogicalOp> &ops) {
    Matrix u(8, std::vector<cd>(8));
    for (size_t k = 0; k < 8; k++) {
        u[k][k] = 1;
    }
    for (const auto &op : ops) {
        u = apply_op(u, op);
    }
    return u;
}

std::vector<uint64_t> histogram(const std::vector<std::vector<uint8_t>> &records) {
    std::vector<uint64_t> h;
    for (const auto &r : records) {
        size_t v = 0;
        for (size_t k = 0; k < r.size(); k++) {
            v |= size_t{r[k]} << k;
        }
        if (h.size() <= v) {
            h.resize(v + 1);
        }
        h[v]++;
    }
    return h;
}

// --- criteria ---------------------------------------------------------------

void census_check() {
    auto m = census(shared.fixture);
    bool ok = m.total_surfaces == 18 && m.decoding_tasks == 13 && m.total_measurements == 105 &&
              std::lround(m.avg_ff_latency_d_rounds * 10) == 21 && m.ft_gate_count == 296;
    verdict(1, ok,
            fmt("surfaces=%zu tasks=%zu measurements=%zu latency=%.2f ft_blocks=%zu", m.total_surfaces,
                m.decoding_tasks, m.total_measurements, m.avg_ff_latency_d_rounds, m.ft_gate_count));
}

void physical_scale() {
    const std::vector<uint32_t> ds{3, 5, 7, 9};
    const std::vector<size_t> rounds{117, 195, 273, 351};
    const std::vector<double> qubits{419, 1015, 1867, 2975};
    const std::vector<double> meas{8061, 36687, 96006, 203874};
    bool ok = true;
    std::vector<double> x, q, mm;
    std::string detail;
    for (size_t k = 0; k < ds.size(); k++) {
        auto m = physical_metrics(lower_physical(shared.fixture, ds[k], NoiseModel{}));
        if (ds[k] == 3) {
            shared.metrics_d3 = m;
        }
        ok &= m.total_stabilizer_rounds == rounds[k];
        ok &= std::abs(m.physical_qubits / qubits[k] - 1) <= SCALE_TOL;
        ok &= std::abs(m.total_physical_measurements / meas[k] - 1) <= SCALE_TOL;
        x.push_back(ds[k]);
        q.push_back(double(m.physical_qubits));
        mm.push_back(double(m.total_physical_measurements));
        detail += fmt("d%u:%zu/%zu/%zu ", ds[k], m.total_stabilizer_rounds, m.physical_qubits,
                      m.total_physical_measurements);
    }
    double eq = log_log_slope(x, q), em = log_log_slope(x, mm);
    ok &= std::abs(eq - 2) <= EXPONENT_TOL && std::abs(em - 3) <= EXPONENT_TOL;
    verdict(2, ok, detail + fmt("qubit exponent %.3f, measurement exponent %.3f", eq, em));
}

void noiseless_smoke() {
    auto pc = lower_physical(shared.fixture, 3, NoiseModel{});
    RunOptions o;
    o.shots = SMOKE_SHOTS;
    o.seed = 3;
    auto r = run_circuit(pc, o);
    verdict(3, r.mean_fired == 0 && r.est.any_failures == 0,
            fmt("%zu shots, mean fired %.3g, logical errors %zu", r.est.shots, r.mean_fired, r.est.any_failures));
}

void distance_property() {
    bool ok = true;
    std::string detail;
    for (char basis : {'Z', 'X'}) {
        auto pc = lower_physical(memory_schedule(basis, 1), 3, NoiseModel::uniform(P));
        auto f = undetected_flips(extract_dem(pc));
        ok &= f[1] == 0 && f[2] == 0 && f[3] > 0;
        detail += fmt("%c: undetected flips of size 1/2/3 = %zu/%zu/%zu  ", basis, f[1], f[2], f[3]);
    }
    verdict(4, ok, detail);
}

void below_threshold() {
    RunOptions o;
    o.shots = MEMORY_SHOTS;
    o.seed = 5;
    auto d3 = ft_block_error(3, P, 1, o);
    o.seed = 6;
    auto d5 = ft_block_error(5, P, 1, o);
    shared.p_ft_d5 = d5.p_ft;
    bool ok = true;
    std::string detail;
    for (auto [name, a, b] : {std::tuple{'Z', &d3.z, &d5.z}, std::tuple{'X', &d3.x, &d5.x}}) {
        double r3 = a->est.any_rate, r5 = b->est.any_rate;
        double sigma = std::sqrt(r3 * (1 - r3) / a->est.kept + r5 * (1 - r5) / b->est.kept);
        ok &= r3 - r5 > 3 * sigma;
        detail += fmt("%c: d3 %.3g vs d5 %.3g (%.1f sigma)  ", name, r3, r5, (r3 - r5) / sigma);
    }
    ok &= d5.p_ft >= FT_LO && d5.p_ft <= FT_HI;
    verdict(5, ok, detail + fmt("p_ft(d5) = %.3g", d5.p_ft));
}

void postselection_factor() {
    RunOptions o;
    o.shots = INJECTION_SHOTS;
    o.seed = 7;
    auto pc = injection_experiment(5, NoiseModel::uniform(P));
    auto raw = run_circuit(pc, o);
    o.postselect = true;
    auto ps = run_circuit(pc, o);
    shared.p_nft_d5 = ps.est.any_rate;
    double factor = raw.est.any_rate / ps.est.any_rate;
    verdict(6, factor >= PS_LO && factor <= PS_HI,
            fmt("injection error %.4g -> %.4g with post-selection (kept %.1f%%), factor %.2f", raw.est.any_rate,
                ps.est.any_rate, 100 * ps.acceptance(), factor));
}

void end_to_end(bool slow) {
    RunOptions o;
    o.shots = CIRCUIT_SHOTS;
    o.postselect = true;
    std::map<uint32_t, LogicalErrorEstimate> low;
    for (uint32_t d : slow ? std::vector<uint32_t>{3, 5, 7} : std::vector<uint32_t>{3, 5}) {
        o.seed = 70 + d;
        low[d] = run_schedule(shared.fixture, d, P, o).est;
    }
    shared.circuit_d5 = low[5].any_rate;
    uint32_t dh = slow ? 7 : 5;
    o.shots = slow ? CIRCUIT_SHOTS : CIRCUIT_SHOTS_HIGH_P;
    o.seed = 90;
    auto high = run_schedule(shared.fixture, dh, P_HIGH, o).est;

    bool ok = low[5].any_rate <= low[3].any_rate && low[5].any_ci.hi <= CIRCUIT_MAX && high.any_ci.lo > CIRCUIT_MAX;
    std::string detail = fmt("p=0.1%% PS: d3 %.4f, d5 %.4f [%.4f, %.4f]", low[3].any_rate, low[5].any_rate,
                             low[5].any_ci.lo, low[5].any_ci.hi);
    if (slow) {
        ok &= low[3].any_rate - low[5].any_rate > low[5].any_rate - low[7].any_rate;
        detail += fmt(", d7 %.4f", low[7].any_rate);
    }
    detail += fmt("; p=0.3%% PS d%u: %.4f [%.4f, %.4f]", dh, high.any_rate, high.any_ci.lo, high.any_ci.hi);
    if (!ok) {
        verdict(7, false, detail);
    } else if (!slow) {
        line(7, "SKIP", detail + "; d7 saturation needs --slow");
    } else {
        verdict(7, true, detail);
    }
}

void budget_cross_check() {
    if (std::isnan(shared.p_ft_d5) || std::isnan(shared.p_nft_d5) || std::isnan(shared.circuit_d5)) {
        verdict(8, false, "inputs from criteria 5-7 are missing");
        return;
    }
    BudgetInputs b;
    b.p_ft = shared.p_ft_d5;
    b.p_nft = shared.p_nft_d5;
    double predicted = circuit_error(b);
    double ratio = predicted / shared.circuit_d5;
    BudgetInputs floor = b;
    floor.p_ft = 0;
    double asymptote = odd_flip(14, b.p_nft);
    bool ok = ratio >= 1 / BUDGET_FACTOR && ratio <= BUDGET_FACTOR && circuit_error(floor) == asymptote &&
              asymptote >= SATURATION_LO && asymptote <= SATURATION_HI;
    verdict(8, ok,
            fmt("circuit_error(p_ft=%.3g, p_nft=%.3g) = %.4f vs Monte Carlo %.4f (ratio %.2f); asymptote %.4f",
                b.p_ft, b.p_nft, predicted, shared.circuit_d5, ratio, asymptote));
}

void task_graph_check() {
    auto r = extract_tasks(shared.fixture);
    size_t shape = 0, frame = 0;
    for (const auto &e : r.dependencies) {
        (e.kind == DependencyKind::Shape ? shape : frame)++;
    }
    auto pc = lower_physical(shared.fixture, 3, NoiseModel::uniform(P));
    auto e = expected_syndromes(r, pc, extract_dem(pc));
    auto m = sampled_syndromes(r, pc, frame_sample(pc, reference_run(pc, 9), SYNDROME_SHOTS, 9));
    size_t small = 0;
    double worst = 0;
    for (size_t k = 0; k < e.size(); k++) {
        small += e[k] < 5;
        worst = std::max(worst, std::abs(m[k] / e[k] - 1));
    }
    bool ok = r.tasks.size() == 13 && shape > 0 && frame > 0 && (r.max_parallel == 4 || r.max_parallel == 5) &&
              2 * small > e.size() && worst <= SYNDROME_REL;
    verdict(9, ok,
            fmt("%zu tasks, %zu shape + %zu frame edges (acyclic), max_parallel %zu, %zu/%zu tasks below 5 "
                "syndromes, worst analytic/sampled deviation %.2f%%",
                r.tasks.size(), shape, frame, r.max_parallel, small, e.size(), 100 * worst));
}

void cds_check() {
    auto tasks = extract_tasks(shared.fixture);
    const auto &metrics = shared.metrics_d3;
    CDSConfig c;
    c.distance = 3;
    c.p_ft = 1e-4;
    auto ideal = simulate_cds(tasks, metrics, c);
    bool a = ideal.added_error == 0;

    CDSConfig o;
    o.distance = 5;
    o.p_phys = P;
    o.p_ft = OVERRUN_P_FT;
    o.workers = 13;
    o.model = DecodeTimeModel::Overrun;
    o.overrun_rounds = OVERRUN_ROUNDS;
    auto over = simulate_cds(tasks, Table2Metrics{}, o);
    double per_event = over.added_error / double(over.delayed_events);
    bool b = over.delayed_events > 0 &&
             std::abs(per_event - delay_error(5, OVERRUN_P_FT, OVERRUN_ROUNDS, 5, 1)) <= ABS_TOL &&
             std::abs(per_event - OVERRUN_EVENT) <= ABS_TOL;

    c.bandwidth = TABLE_RATE;
    auto full = simulate_cds(tasks, metrics, c);
    c.bandwidth = TABLE_RATE / 2;
    auto half = simulate_cds(tasks, metrics, c);
    const auto &bl = half.backlog_bits;
    size_t n = bl.size();
    bool grows = n >= 4 && bl[n / 4] > 0 && bl[n / 2] > 1.8 * bl[n / 4] && bl[n - 1] > 1.8 * bl[n / 2];
    bool cc = full.peak_backlog_bits == 0 && grows;

    bool d = true;
    std::string trend;
    double prev = INFINITY;
    for (uint32_t w = 1; w <= 8; w++) {
        CDSConfig s;
        s.distance = 3;
        s.p_ft = 1e-4;
        s.alpha = 0.5;
        s.beta = 1;
        s.channel_latency = 0.5;
        s.bandwidth = TABLE_RATE;
        s.workers = w;
        double err = simulate_cds(tasks, metrics, s).added_error;
        d &= err <= prev && (w <= tasks.max_parallel || err == prev);
        trend += fmt("%s%.3g", w == 1 ? "" : ",", err);
        prev = err;
    }
    verdict(10, a && b && cc && d,
            fmt("(a) ideal %.3g; (b) %zu overruns, %.6g per event; (c) backlog at %g bits/round: %g, at half rate: "
                "%.0f -> %.0f -> %.0f bits; (d) error vs workers 1..8: %s",
                ideal.added_error, over.delayed_events, per_event, TABLE_RATE, full.peak_backlog_bits, bl[n / 4],
                bl[n / 2], bl[n - 1], trend.c_str()));
}

void oracle_suites() {
    // Union-find against exact matching on shots that have defects.
    auto pc = lower_physical(memory_schedule('Z', 1), 3, NoiseModel::uniform(P));
    auto g = build_graph(extract_dem(pc), &pc.detectors);
    auto ref = reference_run(pc, 11);
    UnionFindDecoder uf(g);
    size_t decoded = 0, agree = 0;
    for (uint64_t seed = 11; decoded < ORACLE_SHOTS; seed++) {
        auto batch = frame_sample(pc, ref, 4 * SHOT_BLOCK, seed);
        for (size_t s = 0; s < batch.shots() && decoded < ORACLE_SHOTS; s++) {
            const auto &defects = batch.fired[s];
            if (defects.empty() || defects.size() > EXACT_ORACLE_MAX_DEFECTS) {
                continue;
            }
            decoded++;
            agree += uf.decode(defects).observables == decode_exact_oracle(g, defects).observables;
        }
    }
    double agreement = double(agree) / double(decoded);

    // Frame sampler against the tableau simulator.
    std::mt19937_64 rng(2024);
    double worst_p = 1;
    for (size_t trial = 0; trial < CHI_TRIALS; trial++) {
        uint32_t n = 2 + rng() % 7;
        auto rc = random_noisy_circuit(n, 30, 6, rng);
        auto batch = frame_sample(rc, reference_run(rc, trial), CHI_SHOTS, trial, {true, 1});
        std::vector<std::vector<uint8_t>> tab;
        std::mt19937_64 trng(1000 + trial);
        for (size_t s = 0; s < CHI_SHOTS; s++) {
            tab.push_back(tableau_shot(rc, trng));
        }
        auto ha = histogram(batch.measurements), hb = histogram(tab);
        ha.resize(std::max(ha.size(), hb.size()));
        hb.resize(ha.size());
        worst_p = std::min(worst_p, chi_squared_two_sample(ha, hb).p_value);
    }

    // Toffoli network against the Toffoli unitary.
    bool toffoli = true;
    for (auto [a, b, t] : std::vector<std::array<uint32_t, 3>>{{0, 1, 2}, {2, 0, 1}, {1, 2, 0}}) {
        toffoli &= same_up_to_phase(network_unitary(toffoli_network(a, b, t)),
                                    network_unitary({LogicalOp{LogicalKind::Toffoli, {a, b, t}, {}, false}}));
    }
    verdict(11, agreement >= ORACLE_AGREEMENT && worst_p > CHI_P && toffoli,
            fmt("union-find agrees with exact matching on %.1f%% of %zu non-trivial shots; worst chi-squared p "
                "%.3g over %zu circuits; Toffoli network unitary %s",
                100 * agreement, decoded, worst_p, CHI_TRIALS, toffoli ? "matches" : "differs"));
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Acceptance checks"};
    bool slow = false;
    app.add_flag("--slow", slow, "include the distance-7 circuit runs");
    CLI11_PARSE(app, argc, argv);

    shared.fixture = load_reference_schedule(fixture_text("shor21.surface"));
    guarded(1, census_check);
    guarded(2, physical_scale);
    guarded(3, noiseless_smoke);
    guarded(4, distance_property);
    guarded(5, below_threshold);
    guarded(6, postselection_factor);
    guarded(7, [&] { end_to_end(slow); });
    guarded(8, budget_cross_check);
    guarded(9, task_graph_check);
    guarded(10, cds_check);
    guarded(11, oracle_suites);
    std::printf("%d criteria failed\n", failures);
    return failures ? 1 : 0;
}
