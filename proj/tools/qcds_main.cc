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

// Pipeline driver: compile -> lower -> sample/decode -> tasks -> budget -> cds.
// Every report is a CSV preceded by '#' metadata lines (version, command,
// seed, config hash and the full config), written atomically.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qcds/budget/budget.h"
#include "qcds/cds/cds_sim.h"
#include "qcds/io_util.h"
#include "qcds/logical/logical_circuit.h"
#include "qcds/logical/lowering.h"
#include "qcds/physical/dem.h"
#include "qcds/physical/lowering.h"
#include "qcds/pipeline/experiments.h"
#include "qcds/surface/compile.h"
#include "qcds/tasks/task_graph.h"

namespace fs = std::filesystem;
using namespace qcds;

namespace {

constexpr const char *OUT_ENV = "QCDS_OUT_DIR";

struct PipelineConfig {
    std::string out_dir;
    std::string fixture = "shor21.surface";
    std::vector<uint32_t> distances{3};
    std::vector<double> p_phys{1e-3};
    size_t shots = 10000;
    uint64_t seed = 1;
    bool postselect = false;
    unsigned threads = 1;

    void validate(bool needs_noise) const {
        for (auto d : distances) {
            if (d < 3 || d % 2 == 0) {
                throw std::invalid_argument("distance must be odd and at least 3, got " + std::to_string(d));
            }
        }
        for (auto p : p_phys) {
            if (!(p >= 0 && p <= 0.05) || (needs_noise && p == 0)) {
                throw std::invalid_argument("p_phys must lie in (0, 0.05], got " + std::to_string(p));
            }
        }
        if (shots < 1) {
            throw std::invalid_argument("shots must be at least 1");
        }
    }
};

uint64_t fnv1a(std::string_view text) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h = (h ^ c) * 0x100000001b3ull;
    }
    return h;
}

std::string resolve_fixture(const std::string &name) {
    if (fs::exists(name)) {
        return name;
    }
    auto bundled = fs::path(QCDS_FIXTURE_DIR) / name;
    if (fs::exists(bundled)) {
        return bundled.string();
    }
    throw std::runtime_error("missing fixture: " + name);
}

class Reporter {
   public:
    Reporter(const CLI::App &app, const CLI::App &sub, const PipelineConfig &cfg) : cfg_(cfg) {
        config_ = sub.get_name() + "\n" + app.config_to_str(true, false);
        hash_ = fnv1a(config_);
        std::stringstream meta;
        meta << "# qcds " << QCDS_VERSION << "\n# command: " << sub.get_name() << "\n# seed: " << cfg.seed
             << "\n# config_hash: " << std::hex << hash_ << std::dec << "\n";
        std::stringstream lines(config_);
        std::string line;
        std::getline(lines, line);
        while (std::getline(lines, line)) {
            // Global options plus this subcommand's.
            auto dot = line.find('.'), eq = line.find('=');
            bool foreign = dot < eq && line.compare(0, dot, sub.get_name()) != 0;
            if (!line.empty() && !foreign) {
                meta << "# config: " << line << "\n";
            }
        }
        meta_ = meta.str();
        fs::create_directories(cfg.out_dir);
    }

    /// Writes `<out_dir>/<name>`; CSVs and traces get the metadata header.
    void write(const std::string &name, const std::string &body, bool with_meta = true) const {
        auto path = fs::path(cfg_.out_dir) / name;
        auto tmp = path;
        tmp += ".partial";
        {
            std::ofstream out(tmp, std::ios::binary);
            if (!out) {
                throw std::runtime_error("cannot write " + tmp.string());
            }
            if (with_meta) {
                out << meta_;
            }
            out << body;
            if (!out) {
                fs::remove(tmp);
                throw std::runtime_error("write failed: " + tmp.string());
            }
        }
        fs::rename(tmp, path);
        std::cout << "wrote " << path.string() << "\n";
    }

   private:
    const PipelineConfig &cfg_;
    std::string config_;
    uint64_t hash_ = 0;
    std::string meta_;
};

std::string num(double v) {
    std::stringstream s;
    s.precision(12);
    s << v;
    return s.str();
}

std::string estimate_columns(const LogicalErrorEstimate &e) {
    return std::to_string(e.shots) + ',' + std::to_string(e.kept) + ',' + std::to_string(e.any_failures) + ',' +
           num(e.any_rate) + ',' + num(e.any_ci.lo) + ',' + num(e.any_ci.hi);
}
constexpr const char *ESTIMATE_HEADER = "shots,kept,failures,rate,ci_lo,ci_hi";

RunOptions run_options(const PipelineConfig &cfg, uint64_t salt) {
    RunOptions o;
    o.shots = cfg.shots;
    o.seed = cfg.seed * 1000003 + salt;
    o.postselect = cfg.postselect;
    o.threads = cfg.threads;
    return o;
}

std::string table1_csv(const SurfaceCircuit &s) {
    auto m = census(s);
    return "total_surfaces,avg_active_surfaces,total_measurements,feed_forward_gates,ft_gate_count,"
           "nft_block_count,decoding_tasks,avg_ff_latency_d_rounds\n" +
           std::to_string(m.total_surfaces) + ',' + num(m.avg_active_surfaces) + ',' +
           std::to_string(m.total_measurements) + ',' + std::to_string(m.feed_forward_gates) + ',' +
           std::to_string(m.ft_gate_count) + ',' + std::to_string(m.nft_block_count) + ',' +
           std::to_string(m.decoding_tasks) + ',' + num(m.avg_ff_latency_d_rounds) + '\n';
}

constexpr const char *TABLE2_HEADER =
    "d,physical_qubits,max_active_qubits,max_parallel_2q,max_parallel_meas,total_physical_measurements,"
    "avg_bits_per_round,total_stabilizer_rounds\n";

std::string table2_row(uint32_t d, const Table2Metrics &m) {
    return std::to_string(d) + ',' + std::to_string(m.physical_qubits) + ',' + std::to_string(m.max_active_qubits) +
           ',' + std::to_string(m.max_parallel_2q) + ',' + std::to_string(m.max_parallel_meas) + ',' +
           std::to_string(m.total_physical_measurements) + ',' + num(m.avg_bits_per_round) + ',' +
           std::to_string(m.total_stabilizer_rounds) + '\n';
}

SurfaceCircuit load_fixture(const PipelineConfig &cfg) {
    return load_reference_schedule(read_file(resolve_fixture(cfg.fixture)));
}

TaskGraphReport tasks_with_syndromes(const SurfaceCircuit &s, const PipelineConfig &cfg) {
    auto r = extract_tasks(s);
    for (auto d : cfg.distances) {
        for (auto p : cfg.p_phys) {
            auto pc = lower_physical(s, d, NoiseModel::uniform(p));
            r.syndromes.push_back({d, p, expected_syndromes(r, pc, extract_dem(pc))});
        }
    }
    return r;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Surface-code compilation, simulation and control-loop analysis pipeline"};
    app.set_config("--config", "", "TOML/INI file with option values");
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->always_capture_default();

    PipelineConfig cfg;
    const char *env_out = std::getenv(OUT_ENV);
    cfg.out_dir = env_out && *env_out ? env_out : "qcds_out";
    app.add_option("-o,--out", cfg.out_dir, std::string("output directory (default $") + OUT_ENV + " or qcds_out)");
    app.add_option("--fixture", cfg.fixture, "surface schedule file (bundled fixtures are found by name)");
    app.add_option("--d", cfg.distances, "code distances")->delimiter(',');
    app.add_option("--p", cfg.p_phys, "physical error rates")->delimiter(',');
    app.add_option("--shots", cfg.shots, "shots per point");
    app.add_option("--seed", cfg.seed, "master seed");
    app.add_flag("--postselect", cfg.postselect, "discard shots with fired post-selection detectors");
    app.add_option("--threads", cfg.threads, "sampling threads (results do not depend on this)");

    auto *compile = app.add_subcommand("compile", "logical circuit -> surface schedule + census");
    std::string logical_in = "shor21.logical", grid = "5x5";
    compile->add_option("--in", logical_in, "logical circuit file");
    compile->add_option("--grid", grid, "WxH");

    auto *lower = app.add_subcommand("lower", "surface schedule -> physical circuits + resource metrics");
    bool emit_circuits = false;
    lower->add_flag("--emit-circuits", emit_circuits, "also write each lowered circuit");

    auto *memory = app.add_subcommand("memory", "memory experiments (logical error per FT block)");
    std::vector<char> bases{'Z', 'X'};
    size_t blocks = 1;
    memory->add_option("--basis", bases, "Z and/or X")->delimiter(',');
    memory->add_option("--blocks", blocks, "FT blocks (d rounds each)");

    auto *inject = app.add_subcommand("inject", "magic-state injection with and without post-selection");
    auto *full = app.add_subcommand("full", "end-to-end logical error of the schedule");
    auto *tasks = app.add_subcommand("tasks", "decoding tasks, dependencies and syndrome counts");

    auto *budget = app.add_subcommand("budget", "closed-form circuit error sweep");
    std::optional<double> p_ft_override, p_nft_override;
    std::vector<double> t_delays{1, 5, 10, 20};
    size_t n_ft = 296, n_nft = 14, n_logical = 5;
    budget->add_option("--p-ft", p_ft_override, "FT block error (skips the memory simulation)");
    budget->add_option("--p-nft", p_nft_override, "injection error (skips the injection simulation)");
    budget->add_option("--t-delay", t_delays, "delay grid in rounds")->delimiter(',');
    budget->add_option("--n-ft", n_ft);
    budget->add_option("--n-nft", n_nft);
    budget->add_option("--n-logical", n_logical);

    auto *cds = app.add_subcommand("cds", "controller-decoder loop simulation sweep");
    std::string cds_config;
    std::vector<uint32_t> workers;
    std::vector<double> bandwidths;
    cds->add_option("--cds-config", cds_config, "key = value config file");
    cds->add_option("--workers", workers, "decoder pool sizes to sweep")->delimiter(',');
    cds->add_option("--bandwidth", bandwidths, "bits per round to sweep (inf allowed)")->delimiter(',');

    auto *report = app.add_subcommand("report", "census, resource metrics and task tables in one run");

    CLI11_PARSE(app, argc, argv);
    try {
        auto *sub = app.get_subcommands().front();
        bool sampling = sub == memory || sub == inject || sub == full || sub == budget;
        cfg.validate(sampling);
        Reporter out(app, *sub, cfg);

        if (sub == compile) {
            uint32_t w = 0, h = 0;
            if (std::sscanf(grid.c_str(), "%ux%u", &w, &h) != 2) {
                throw std::invalid_argument("grid must look like 5x5");
            }
            auto logical = parse_logical(read_file(resolve_fixture(logical_in)));
            auto s = compile_schedule(lower_to_surface_compatible(logical), w, h);
            out.write("schedule.surface", s.str(), false);
            out.write("table1.csv", table1_csv(s));
        } else if (sub == lower) {
            auto s = load_fixture(cfg);
            std::string rows = TABLE2_HEADER;
            for (auto d : cfg.distances) {
                auto pc = lower_physical(s, d, NoiseModel::uniform(cfg.p_phys.front()));
                rows += table2_row(d, physical_metrics(pc));
                if (emit_circuits) {
                    out.write("circuit_d" + std::to_string(d) + ".txt", pc.str(), false);
                }
            }
            out.write("table2.csv", rows);
        } else if (sub == memory) {
            std::string rows = std::string("basis,d,p,blocks,") + ESTIMATE_HEADER + ",per_block_rate\n";
            uint64_t salt = 0;
            for (char b : bases) {
                for (auto d : cfg.distances) {
                    for (auto p : cfg.p_phys) {
                        auto r = run_memory(b, d, p, blocks, run_options(cfg, salt++));
                        rows += std::string(1, b) + ',' + std::to_string(d) + ',' + num(p) + ',' +
                                std::to_string(blocks) + ',' + estimate_columns(r.est) + ',' +
                                num(per_block_rate(r.est.any_rate, blocks)) + '\n';
                    }
                }
            }
            out.write("memory.csv", rows);
        } else if (sub == inject) {
            std::string rows = std::string("d,p,postselect,") + ESTIMATE_HEADER + ",acceptance\n";
            uint64_t salt = 0;
            for (auto d : cfg.distances) {
                for (auto p : cfg.p_phys) {
                    auto pc = injection_experiment(d, NoiseModel::uniform(p));
                    for (bool ps : {false, true}) {
                        auto o = run_options(cfg, salt);
                        o.postselect = ps;
                        auto r = run_circuit(pc, o);
                        rows += std::to_string(d) + ',' + num(p) + ',' + (ps ? "1," : "0,") +
                                estimate_columns(r.est) + ',' + num(r.acceptance()) + '\n';
                    }
                    salt++;
                }
            }
            out.write("inject.csv", rows);
        } else if (sub == full) {
            auto s = load_fixture(cfg);
            std::string rows = std::string("d,p,postselect,") + ESTIMATE_HEADER + ",acceptance,mean_fired\n";
            uint64_t salt = 0;
            for (auto d : cfg.distances) {
                for (auto p : cfg.p_phys) {
                    auto r = run_schedule(s, d, p, run_options(cfg, salt++));
                    rows += std::to_string(d) + ',' + num(p) + ',' + (cfg.postselect ? "1," : "0,") +
                            estimate_columns(r.est) + ',' + num(r.acceptance()) + ',' + num(r.mean_fired) + '\n';
                }
            }
            out.write("full.csv", rows);
        } else if (sub == tasks) {
            auto r = tasks_with_syndromes(load_fixture(cfg), cfg);
            out.write("tasks.csv", r.csv());
            out.write("tasks.dot", r.dot(), false);
        } else if (sub == budget) {
            std::string rows = "d,p_phys,p_ft,p_nft,circuit_error";
            for (auto t : t_delays) {
                rows += ",delay_error_t" + num(t);
            }
            rows += '\n';
            uint64_t salt = 0;
            for (auto d : cfg.distances) {
                for (auto p : cfg.p_phys) {
                    BudgetInputs b;
                    b.n_ft = n_ft;
                    b.n_nft = n_nft;
                    b.n_logical = n_logical;
                    b.p_ft = p_ft_override ? *p_ft_override : ft_block_error(d, p, 1, run_options(cfg, salt)).p_ft;
                    if (p_nft_override) {
                        b.p_nft = *p_nft_override;
                    } else {
                        auto o = run_options(cfg, salt);
                        o.postselect = true;
                        b.p_nft = run_injection(d, p, o).est.any_rate;
                    }
                    salt++;
                    rows += std::to_string(d) + ',' + num(p) + ',' + num(b.p_ft) + ',' + num(b.p_nft) + ',' +
                            num(circuit_error(b));
                    for (auto t : t_delays) {
                        rows += ',' + num(delay_error(n_logical, b.p_ft, t, d, 1));
                    }
                    rows += '\n';
                }
            }
            out.write("budget.csv", rows);
        } else if (sub == cds) {
            auto s = load_fixture(cfg);
            CDSConfig base = cds_config.empty() ? CDSConfig{} : parse_cds_config(read_file(cds_config));
            base.validate();
            auto metrics = physical_metrics(lower_physical(s, base.distance, NoiseModel{}));
            auto r = extract_tasks(s);
            if (base.model == DecodeTimeModel::Syndromes) {
                auto pc = lower_physical(s, base.distance, NoiseModel::uniform(base.p_phys));
                r.syndromes.push_back({base.distance, base.p_phys, expected_syndromes(r, pc, extract_dem(pc))});
            }
            if (workers.empty()) {
                workers.push_back(base.workers);
            }
            if (bandwidths.empty()) {
                bandwidths.push_back(base.bandwidth);
            }
            std::vector<CDSConfig> grid_cfgs;
            for (auto w : workers) {
                for (auto bw : bandwidths) {
                    auto c = base;
                    c.workers = w;
                    c.bandwidth = bw;
                    grid_cfgs.push_back(c);
                }
            }
            auto rows = sweep_cds(r, metrics, grid_cfgs);
            std::string traces;
            for (const auto &row : rows) {
                traces += "## " + row.cfg.str() + "\n" + row.report.trace();
            }
            out.write("cds.csv", sweep_csv(rows));
            out.write("cds_trace.txt", traces);
        } else if (sub == report) {
            auto s = load_fixture(cfg);
            out.write("table1.csv", table1_csv(s));
            std::string rows = TABLE2_HEADER;
            for (auto d : cfg.distances) {
                rows += table2_row(d, physical_metrics(lower_physical(s, d, NoiseModel{})));
            }
            out.write("table2.csv", rows);
            cfg.validate(true);
            auto r = tasks_with_syndromes(s, cfg);
            out.write("tasks.csv", r.csv());
            out.write("tasks.dot", r.dot(), false);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
