/*
 * Copyright 2026 The foggrid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// Command-line front end. Talks to the simulator only through foggrid.h.

#include "foggrid/foggrid.h"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_runtime = 3;

struct ScenarioDeleter {
    void operator()(fg_scenario* s) const { fg_scenario_free(s); }
};
struct ReportDeleter {
    void operator()(fg_report* r) const { fg_report_free(r); }
};
struct ComparisonDeleter {
    void operator()(fg_comparison* c) const { fg_comparison_free(c); }
};
using ScenarioPtr = std::unique_ptr<fg_scenario, ScenarioDeleter>;
using ReportPtr = std::unique_ptr<fg_report, ReportDeleter>;
using ComparisonPtr = std::unique_ptr<fg_comparison, ComparisonDeleter>;

/// Thrown to unwind with an exit code after the message was printed.
struct Exit {
    int code;
};

[[noreturn]] void fail(fg_status status)
{
    std::fprintf(stderr, "error[%s]: %s\n", fg_status_name(status), fg_last_error());
    throw Exit{fg_status_is_config_error(status) ? exit_config : exit_runtime};
}

void check(fg_status status)
{
    if (status != FG_OK)
        fail(status);
}

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<double> horizon;
    std::optional<double> warmup;
    std::string out;
};

ScenarioPtr load(const std::string& path, const Overrides& o)
{
    fg_scenario* raw = nullptr;
    check(fg_scenario_load(path.c_str(), &raw));
    ScenarioPtr s(raw);
    if (o.seed)
        check(fg_scenario_set_seed(s.get(), *o.seed));
    if (o.horizon)
        check(fg_scenario_set_horizon(s.get(), *o.horizon));
    if (o.warmup)
        check(fg_scenario_set_warmup(s.get(), *o.warmup));
    return s;
}

std::string output_dir(const Overrides& o)
{
    if (!o.out.empty())
        return o.out;
    if (const char* env = std::getenv("FOGGRID_OUT"); env && *env)
        return env;
    return "foggrid-out";
}

std::string format_real(double v)
{
    if (v == 0.0)
        v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void print_wait(const char* label, const fg_report* r)
{
    double w = 0;
    int present = 0;
    fg_report_mean_wait(r, &w, &present);
    std::printf("%s%s\n", label, present ? format_real(w).c_str() : "absent");
}

int cmd_validate(const std::string& path)
{
    ScenarioPtr s = load(path, {});
    std::printf("ok: %zu nodes, %zu arrival processes, %zu sessions, mode %s\n", fg_scenario_node_count(s.get()),
                fg_scenario_arrival_count(s.get()), fg_scenario_session_count(s.get()),
                fg_scenario_mode(s.get()) == FG_MODE_CLOUD_ONLY ? "cloud" : "fog");
    return exit_ok;
}

int cmd_run(const std::string& path, const Overrides& o)
{
    ScenarioPtr s = load(path, o);
    fg_report* raw = nullptr;
    check(fg_run(s.get(), &raw));
    ReportPtr r(raw);
    const std::string dir = output_dir(o);
    check(fg_report_emit(r.get(), dir.c_str()));
    print_wait("mean_wait_s: ", r.get());
    std::printf("total_energy_mj: %s\n", format_real(fg_report_total_energy_mj(r.get())).c_str());
    std::printf("trace_digest: 0x%016" PRIx64 "\n", fg_report_trace_digest(r.get()));
    std::printf("wrote %s\n", dir.c_str());
    return exit_ok;
}

int cmd_compare(const std::string& path, const Overrides& o)
{
    ScenarioPtr s = load(path, o);
    fg_comparison* raw = nullptr;
    check(fg_compare(s.get(), &raw));
    ComparisonPtr c(raw);
    const std::string dir = output_dir(o);
    check(fg_comparison_emit(c.get(), dir.c_str()));
    print_wait("cloud mean_wait_s: ", fg_comparison_report(c.get(), FG_MODE_CLOUD_ONLY));
    print_wait("fog mean_wait_s: ", fg_comparison_report(c.get(), FG_MODE_FOG_AUGMENTED));
    double dw = 0;
    int present = 0;
    fg_comparison_delta_wait(c.get(), &dw, &present);
    std::printf("delta_wait_s: %s\n", present ? format_real(dw).c_str() : "absent");
    std::printf("delta_energy_mj: %s\n", format_real(fg_comparison_delta_energy_mj(c.get())).c_str());
    std::printf("wrote %s\n", dir.c_str());
    return exit_ok;
}

struct SweepRow {
    std::uint64_t seed = 0;
    fg_status status = FG_OK;
    std::string error;
    int cloud_present = 0;
    int fog_present = 0;
    double cloud_wait = 0;
    double fog_wait = 0;
    double cloud_energy = 0;
    double fog_energy = 0;
    std::uint64_t cloud_digest = 0;
    std::uint64_t fog_digest = 0;
};

SweepRow sweep_one(const fg_scenario* base, std::uint64_t seed)
{
    SweepRow row;
    row.seed = seed;
    fg_scenario* raw = nullptr;
    row.status = fg_scenario_clone(base, &raw);
    ScenarioPtr s(raw);
    if (row.status == FG_OK)
        row.status = fg_scenario_set_seed(s.get(), seed);
    fg_comparison* craw = nullptr;
    if (row.status == FG_OK)
        row.status = fg_compare(s.get(), &craw);
    ComparisonPtr c(craw);
    if (row.status != FG_OK) {
        row.error = fg_last_error();
        return row;
    }
    const fg_report* cloud = fg_comparison_report(c.get(), FG_MODE_CLOUD_ONLY);
    const fg_report* fog = fg_comparison_report(c.get(), FG_MODE_FOG_AUGMENTED);
    fg_report_mean_wait(cloud, &row.cloud_wait, &row.cloud_present);
    fg_report_mean_wait(fog, &row.fog_wait, &row.fog_present);
    row.cloud_energy = fg_report_total_energy_mj(cloud);
    row.fog_energy = fg_report_total_energy_mj(fog);
    row.cloud_digest = fg_report_trace_digest(cloud);
    row.fog_digest = fg_report_trace_digest(fog);
    return row;
}

int cmd_sweep(const std::string& path, const Overrides& o, unsigned seeds, bool parallel, unsigned jobs)
{
    ScenarioPtr base = load(path, o);
    const std::uint64_t first = fg_scenario_seed(base.get());
    std::vector<SweepRow> rows(seeds);

    if (parallel) {
        if (jobs == 0)
            jobs = std::max(1u, std::thread::hardware_concurrency());
        std::atomic<unsigned> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < std::min(jobs, seeds); ++t)
            pool.emplace_back([&] {
                for (unsigned i = next++; i < seeds; i = next++)
                    rows[i] = sweep_one(base.get(), first + i);
            });
        for (auto& th : pool)
            th.join();
    } else {
        for (unsigned i = 0; i < seeds; ++i)
            rows[i] = sweep_one(base.get(), first + i);
    }

    for (const auto& row : rows)
        if (row.status != FG_OK) {
            std::fprintf(stderr, "error[%s]: seed %" PRIu64 ": %s\n", fg_status_name(row.status), row.seed,
                         row.error.c_str());
            return fg_status_is_config_error(row.status) ? exit_config : exit_runtime;
        }

    const std::string dir = output_dir(o);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const std::string file = (std::filesystem::path(dir) / "sweep.csv").string();
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::fprintf(stderr, "error[%s]: cannot write %s\n", fg_status_name(FG_ERR_IO), file.c_str());
        return exit_runtime;
    }
    out << "seed,cloud_mean_wait_s,fog_mean_wait_s,cloud_energy_mj,fog_energy_mj,cloud_trace_digest,fog_trace_digest\n";
    char digest[2][24];
    for (const auto& row : rows) {
        std::snprintf(digest[0], sizeof digest[0], "0x%016" PRIx64, row.cloud_digest);
        std::snprintf(digest[1], sizeof digest[1], "0x%016" PRIx64, row.fog_digest);
        out << row.seed << ',' << (row.cloud_present ? format_real(row.cloud_wait) : "absent") << ','
            << (row.fog_present ? format_real(row.fog_wait) : "absent") << ',' << format_real(row.cloud_energy)
            << ',' << format_real(row.fog_energy) << ',' << digest[0] << ',' << digest[1] << '\n';
    }
    out.flush();
    if (!out) {
        std::fprintf(stderr, "error[%s]: failed writing %s\n", fg_status_name(FG_ERR_IO), file.c_str());
        return exit_runtime;
    }
    std::printf("wrote %s (%u seeds)\n", file.c_str(), seeds);
    return exit_ok;
}

void add_run_flags(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--horizon", o.horizon, "simulated horizon in seconds")->check(CLI::PositiveNumber);
    cmd->add_option("--warmup", o.warmup, "warmup in seconds")->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", o.out, "output directory (default $FOGGRID_OUT, then ./foggrid-out)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"foggrid: fog-augmented smart-grid simulator"};
    app.require_subcommand(1);

    std::string config;
    Overrides overrides;
    unsigned seeds = 20;
    unsigned jobs = 0;
    bool parallel = false;

    auto* run = app.add_subcommand("run", "simulate one framework and write a report");
    run->add_option("config", config, "scenario file")->required();
    add_run_flags(run, overrides);

    auto* compare = app.add_subcommand("compare", "simulate cloud-only and fog-augmented with the same workload");
    compare->add_option("config", config, "scenario file")->required();
    add_run_flags(compare, overrides);

    auto* validate = app.add_subcommand("validate", "check a scenario file");
    validate->add_option("config", config, "scenario file")->required();

    auto* sweep = app.add_subcommand("sweep", "compare over consecutive seeds and write sweep.csv");
    sweep->add_option("config", config, "scenario file")->required();
    add_run_flags(sweep, overrides);
    sweep->add_option("--seeds", seeds, "number of seeds, starting at the configured one")
        ->check(CLI::Range(1u, 100000u));
    sweep->add_flag("--parallel", parallel, "run seeds concurrently");
    sweep->add_option("--jobs", jobs, "worker threads for --parallel (default: hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "error[UsageError]: %s\n", e.what());
        return exit_config;
    }

    try {
        if (*validate)
            return cmd_validate(config);
        if (*run)
            return cmd_run(config, overrides);
        if (*compare)
            return cmd_compare(config, overrides);
        if (*sweep)
            return cmd_sweep(config, overrides, seeds, parallel, jobs);
    } catch (const Exit& e) {
        return e.code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error[InternalError]: %s\n", e.what());
        return exit_runtime;
    }
    return exit_runtime;
}
