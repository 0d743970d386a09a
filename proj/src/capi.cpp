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


#include "foggrid/foggrid.h"

#include "foggrid/analytic.hpp"
#include "foggrid/energy_model.hpp"
#include "foggrid/error.hpp"
#include "foggrid/scenario.hpp"

#include <cmath>
#include <new>
#include <string>

struct fg_scenario {
    foggrid::ScenarioConfig cfg;
};

struct fg_report {
    foggrid::RunReport report;
};

struct fg_comparison {
    foggrid::Comparison cmp;
    fg_report cloud;
    fg_report fog;
};

namespace {

thread_local std::string last_error;

fg_status status_of(foggrid::ErrorCode code)
{
    using foggrid::ErrorCode;
    switch (code) {
    case ErrorCode::SchemaError: return FG_ERR_SCHEMA;
    case ErrorCode::DanglingReference: return FG_ERR_DANGLING_REFERENCE;
    case ErrorCode::InvalidTopology: return FG_ERR_INVALID_TOPOLOGY;
    case ErrorCode::UnknownKind: return FG_ERR_UNKNOWN_KIND;
    case ErrorCode::InvalidArgument:
    case ErrorCode::NegativeDuration:
    case ErrorCode::NegativeEnergy: return FG_ERR_INVALID_ARGUMENT;
    case ErrorCode::Unstable: return FG_ERR_UNSTABLE;
    case ErrorCode::NonpositiveTarget: return FG_ERR_NONPOSITIVE_TARGET;
    case ErrorCode::NonpositiveN: return FG_ERR_NONPOSITIVE_N;
    case ErrorCode::IoFailure: return FG_ERR_IO;
    default: return FG_ERR_RUNTIME;
    }
}

fg_status fail(fg_status status, std::string msg)
{
    last_error = std::move(msg);
    return status;
}

/// Runs fn, translating every exception into a status.
template <typename Fn>
fg_status guarded(Fn&& fn) noexcept
{
    try {
        fn();
        return FG_OK;
    } catch (const foggrid::Error& e) {
        return fail(status_of(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(FG_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(FG_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(FG_ERR_INTERNAL, "unknown failure");
    }
}

fg_status null_argument(const char* what)
{
    return fail(FG_ERR_INVALID_ARGUMENT, std::string(what) + " must not be null");
}

foggrid::TopologyMode to_mode(fg_mode m)
{
    return m == FG_MODE_CLOUD_ONLY ? foggrid::TopologyMode::CloudOnly : foggrid::TopologyMode::FogAugmented;
}

} // namespace

extern "C" {

const char* fg_last_error(void)
{
    return last_error.c_str();
}

const char* fg_status_name(fg_status status)
{
    switch (status) {
    case FG_OK: return "Ok";
    case FG_ERR_SCHEMA: return "SchemaError";
    case FG_ERR_DANGLING_REFERENCE: return "DanglingReference";
    case FG_ERR_INVALID_TOPOLOGY: return "InvalidTopology";
    case FG_ERR_UNKNOWN_KIND: return "UnknownKind";
    case FG_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case FG_ERR_UNSTABLE: return "Unstable";
    case FG_ERR_NONPOSITIVE_TARGET: return "NonpositiveTarget";
    case FG_ERR_NONPOSITIVE_N: return "NonpositiveN";
    case FG_ERR_RUNTIME: return "RuntimeError";
    case FG_ERR_IO: return "IoFailure";
    case FG_ERR_INTERNAL: return "InternalError";
    }
    return "Unknown";
}

int fg_status_is_config_error(fg_status status)
{
    return status >= FG_ERR_SCHEMA && status <= FG_ERR_UNKNOWN_KIND;
}

fg_status fg_scenario_parse(const char* text, size_t length, fg_scenario** out)
{
    if (!text || !out)
        return null_argument("text and out");
    *out = nullptr;
    return guarded([&] { *out = new fg_scenario{foggrid::parse_config(std::string_view(text, length))}; });
}

fg_status fg_scenario_load(const char* path, fg_scenario** out)
{
    if (!path || !out)
        return null_argument("path and out");
    *out = nullptr;
    return guarded([&] { *out = new fg_scenario{foggrid::load_config(path)}; });
}

fg_status fg_scenario_clone(const fg_scenario* scenario, fg_scenario** out)
{
    if (!scenario || !out)
        return null_argument("scenario and out");
    *out = nullptr;
    return guarded([&] { *out = new fg_scenario{scenario->cfg}; });
}

void fg_scenario_free(fg_scenario* scenario)
{
    delete scenario;
}

fg_status fg_scenario_set_seed(fg_scenario* scenario, uint64_t seed)
{
    if (!scenario)
        return null_argument("scenario");
    scenario->cfg.seed = seed;
    return FG_OK;
}

fg_status fg_scenario_set_horizon(fg_scenario* scenario, double horizon_s)
{
    if (!scenario)
        return null_argument("scenario");
    if (!(horizon_s > 0) || !std::isfinite(horizon_s))
        return fail(FG_ERR_INVALID_ARGUMENT, "horizon must be positive");
    scenario->cfg.horizon_s = horizon_s;
    if (!(scenario->cfg.warmup_s < horizon_s))
        scenario->cfg.warmup_s = 0.01 * horizon_s;
    return FG_OK;
}

fg_status fg_scenario_set_warmup(fg_scenario* scenario, double warmup_s)
{
    if (!scenario)
        return null_argument("scenario");
    if (!(warmup_s >= 0) || !(warmup_s < scenario->cfg.horizon_s))
        return fail(FG_ERR_INVALID_ARGUMENT, "warmup must lie in [0, horizon)");
    scenario->cfg.warmup_s = warmup_s;
    return FG_OK;
}

uint64_t fg_scenario_seed(const fg_scenario* scenario)
{
    return scenario ? scenario->cfg.seed : 0;
}

size_t fg_scenario_node_count(const fg_scenario* scenario)
{
    return scenario ? scenario->cfg.topology.nodes().size() : 0;
}

size_t fg_scenario_arrival_count(const fg_scenario* scenario)
{
    return scenario ? scenario->cfg.arrivals.size() : 0;
}

size_t fg_scenario_session_count(const fg_scenario* scenario)
{
    return scenario ? scenario->cfg.billing.sessions.size() : 0;
}

fg_mode fg_scenario_mode(const fg_scenario* scenario)
{
    if (scenario && scenario->cfg.topology.mode() == foggrid::TopologyMode::CloudOnly)
        return FG_MODE_CLOUD_ONLY;
    return FG_MODE_FOG_AUGMENTED;
}

fg_status fg_run(const fg_scenario* scenario, fg_report** out)
{
    if (!scenario || !out)
        return null_argument("scenario and out");
    *out = nullptr;
    return guarded([&] { *out = new fg_report{foggrid::run_scenario(scenario->cfg)}; });
}

fg_status fg_run_mode(const fg_scenario* scenario, fg_mode mode, fg_report** out)
{
    if (!scenario || !out)
        return null_argument("scenario and out");
    *out = nullptr;
    return guarded([&] { *out = new fg_report{foggrid::run_scenario(scenario->cfg, to_mode(mode))}; });
}

fg_status fg_compare(const fg_scenario* scenario, fg_comparison** out)
{
    if (!scenario || !out)
        return null_argument("scenario and out");
    *out = nullptr;
    return guarded([&] {
        auto cmp = foggrid::compare_frameworks(scenario->cfg);
        auto* c = new fg_comparison{};
        c->cloud.report = cmp.cloud;
        c->fog.report = cmp.fog;
        c->cmp = std::move(cmp);
        *out = c;
    });
}

void fg_report_free(fg_report* report)
{
    delete report;
}

void fg_comparison_free(fg_comparison* comparison)
{
    delete comparison;
}

fg_status fg_report_emit(const fg_report* report, const char* dir)
{
    if (!report || !dir)
        return null_argument("report and dir");
    return guarded([&] { foggrid::emit_report(report->report, dir); });
}

fg_status fg_comparison_emit(const fg_comparison* comparison, const char* dir)
{
    if (!comparison || !dir)
        return null_argument("comparison and dir");
    return guarded([&] { foggrid::emit_comparison(comparison->cmp, dir); });
}

const fg_report* fg_comparison_report(const fg_comparison* comparison, fg_mode mode)
{
    if (!comparison)
        return nullptr;
    return mode == FG_MODE_CLOUD_ONLY ? &comparison->cloud : &comparison->fog;
}

void fg_report_mean_wait(const fg_report* report, double* out, int* present)
{
    const bool has = report && report->report.aggregates.mean_wait_s.has_value();
    if (present)
        *present = has ? 1 : 0;
    if (has && out)
        *out = *report->report.aggregates.mean_wait_s;
}

double fg_report_total_energy_mj(const fg_report* report)
{
    return report ? static_cast<double>(report->report.aggregates.total_energy_mj) : 0.0;
}

uint64_t fg_report_trace_digest(const fg_report* report)
{
    return report ? report->report.trace_digest : 0;
}

uint64_t fg_report_message_count(const fg_report* report)
{
    return report ? report->report.messages.generated : 0;
}

uint64_t fg_report_fog_private_opens(const fg_report* report)
{
    return report ? report->report.messages.fog_private_opens : 0;
}

size_t fg_report_node_count(const fg_report* report)
{
    return report ? report->report.nodes.size() : 0;
}

fg_status fg_report_node(const fg_report* report, size_t index, fg_node_stats* out)
{
    if (!report || !out)
        return null_argument("report and out");
    if (index >= report->report.nodes.size())
        return fail(FG_ERR_INVALID_ARGUMENT, "node index out of range");
    const auto& row = report->report.nodes[index];
    out->node_id = row.node.value;
    out->tier = static_cast<int>(row.tier);
    out->lambda_hat = row.stats.lambda_hat;
    out->mean_wait_s = row.stats.mean_wait_s;
    out->mean_in_system = row.stats.mean_in_system;
    out->utilization = row.stats.utilization;
    out->samples = row.stats.samples;
    out->active_time_s = row.energy.active_time_s;
    out->idle_time_s = row.energy.idle_time_s;
    out->energy_mj = row.energy.energy();
    return FG_OK;
}

void fg_comparison_delta_wait(const fg_comparison* comparison, double* out, int* present)
{
    const bool has = comparison && comparison->cmp.delta_wait_s.has_value();
    if (present)
        *present = has ? 1 : 0;
    if (has && out)
        *out = *comparison->cmp.delta_wait_s;
}

double fg_comparison_delta_energy_mj(const fg_comparison* comparison)
{
    return comparison ? comparison->cmp.delta_energy_mj : 0.0;
}

fg_status fg_mm1_analytic(double lambda, double mu, double* wait_s, double* in_system, double* utilization)
{
    return guarded([&] {
        const auto m = foggrid::mm1_analytic(lambda, mu);
        if (wait_s)
            *wait_s = m.wait_s;
        if (in_system)
            *in_system = m.in_system;
        if (utilization)
            *utilization = m.utilization;
    });
}

fg_status fg_calibrate_service_rate(double target_wait_s, double lambda, double* mu)
{
    if (!mu)
        return null_argument("mu");
    return guarded([&] { *mu = foggrid::calibrate_service_rate(target_wait_s, lambda); });
}

fg_status fg_processing_time_ms(double c_ms, uint64_t n, double* out)
{
    if (!out)
        return null_argument("out");
    return guarded([&] { *out = foggrid::processing_time(foggrid::ProcessingModel{c_ms}, n); });
}

} // extern "C"
