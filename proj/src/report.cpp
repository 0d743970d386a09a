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


#include "foggrid/report.hpp"

#include "foggrid/error.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace foggrid {

FrameworkAggregates aggregate(const std::vector<NodeRow>& rows)
{
    FrameworkAggregates agg;
    double weighted = 0.0;
    double weights = 0.0;
    for (const auto& row : rows) {
        agg.total_energy_mj += row.energy.energy_mj;
        agg.samples += row.stats.samples;
        if (row.stats.samples > 0) {
            weighted += row.stats.lambda_hat * row.stats.mean_wait_s;
            weights += row.stats.lambda_hat;
        }
    }
    if (weights > 0)
        agg.mean_wait_s = weighted / weights;
    return agg;
}

RunReport make_report(const RunConfig& cfg, const RunResult& result)
{
    RunReport r;
    r.mode = result.mode;
    r.seed = cfg.seed;
    r.horizon_s = cfg.horizon_s;
    r.warmup_s = cfg.warmup_s;
    const auto& nodes = cfg.topology.nodes();
    r.nodes.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        r.nodes.push_back(NodeRow{nodes[i].id, nodes[i].tier, result.stats[i], result.energy[i]});

    std::map<std::uint64_t, double> billed;
    for (const auto& bill : result.bills)
        billed[bill.session_id] = bill.amount;
    for (const auto& s : result.sessions) {
        SessionRow row;
        row.session_id = s.session_id;
        row.vehicle_id = s.vehicle_id;
        row.outlet_meter = s.outlet_meter;
        row.owner_meter = s.owner_meter;
        row.state = s.state;
        row.energy_kwh = s.energy_kwh;
        if (auto it = billed.find(s.session_id); it != billed.end())
            row.amount = it->second;
        r.sessions.push_back(std::move(row));
    }
    r.bills = result.bills;
    r.aggregates = aggregate(r.nodes);
    r.messages = result.messages;
    r.microgrid = result.microgrid;
    if (result.messages.dataset_bytes > 0)
        r.processing_time_ms = processing_time(cfg.processing, result.messages.dataset_bytes);
    r.trace_digest = result.trace.digest;
    r.trace_events = result.trace.event_count;
    return r;
}

Comparison make_comparison(RunReport cloud, RunReport fog)
{
    Comparison c;
    c.cloud = std::move(cloud);
    c.fog = std::move(fog);
    const auto& wc = c.cloud.aggregates.mean_wait_s;
    const auto& wf = c.fog.aggregates.mean_wait_s;
    if (wc && wf)
        c.delta_wait_s = *wf - *wc;
    c.delta_energy_mj = static_cast<double>(c.fog.aggregates.total_energy_mj - c.cloud.aggregates.total_energy_mj);
    if (c.cloud.aggregates.total_energy_mj > 0)
        c.energy_ratio = static_cast<double>(c.fog.aggregates.total_energy_mj / c.cloud.aggregates.total_energy_mj);
    return c;
}

std::string format_real(double v)
{
    if (v == 0.0)
        v = 0.0;  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

namespace {

std::string format_optional(const std::optional<double>& v)
{
    return v ? format_real(*v) : std::string("absent");
}

std::string hex64(std::uint64_t v)
{
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%016" PRIx64, v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out)
        throw Error(ErrorCode::IoFailure, "failed writing " + path.string());
}

void make_dir(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw Error(ErrorCode::IoFailure, "cannot create " + dir.string() + ": " + ec.message());
}

} // namespace

std::string render_nodes_csv(const RunReport& r)
{
    std::string out(nodes_csv_header);
    out += '\n';
    for (const auto& row : r.nodes) {
        out += std::to_string(row.node.value);
        out += ',';
        out += to_string(row.tier);
        for (double v : {row.stats.lambda_hat, row.stats.mean_wait_s, row.stats.mean_in_system,
                         row.stats.utilization, row.energy.active_time_s, row.energy.idle_time_s,
                         row.energy.energy()}) {
            out += ',';
            out += format_real(v);
        }
        out += '\n';
    }
    return out;
}

std::string render_sessions_csv(const RunReport& r)
{
    std::string out(sessions_csv_header);
    out += '\n';
    for (const auto& s : r.sessions) {
        out += std::to_string(s.session_id) + ',' + s.vehicle_id + ',' + std::to_string(s.outlet_meter.value) + ',';
        if (s.owner_meter)
            out += std::to_string(s.owner_meter->value);
        out += ',';
        out += to_string(s.state);
        out += ',' + format_real(s.energy_kwh) + ',' + format_real(s.amount) + '\n';
    }
    return out;
}

std::string render_summary(const RunReport& r)
{
    std::ostringstream out;
    std::size_t billed = 0;
    std::size_t rejected = 0;
    double billed_kwh = 0.0;
    double billed_amount = 0.0;
    for (const auto& b : r.bills) {
        ++billed;
        billed_kwh += b.energy_kwh;
        billed_amount += b.amount;
    }
    for (const auto& s : r.sessions)
        rejected += s.state == SessionState::Rejected ? 1 : 0;

    out << "framework: " << (r.mode == TopologyMode::CloudOnly ? "cloud" : "fog") << '\n';
    out << "seed: " << r.seed << '\n';
    out << "horizon_s: " << format_real(r.horizon_s) << '\n';
    out << "warmup_s: " << format_real(r.warmup_s) << '\n';
    out << "mean_wait_s: " << format_optional(r.aggregates.mean_wait_s) << '\n';
    out << "total_energy_mj: " << format_real(static_cast<double>(r.aggregates.total_energy_mj)) << '\n';
    out << "completed_sojourns: " << r.aggregates.samples << '\n';
    out << "total_messages: " << r.messages.generated << '\n';
    out << "delivered_messages: " << r.messages.delivered << '\n';
    out << "in_flight_messages: " << r.messages.in_flight << '\n';
    out << "routes:";
    for (RoutePattern p : {RoutePattern::ComA, RoutePattern::ComB, RoutePattern::ComC, RoutePattern::ComD,
                           RoutePattern::CloudDirect})
        out << ' ' << to_string(p) << '=' << r.messages.by_pattern[static_cast<std::size_t>(p)];
    out << '\n';
    out << "fog_private_visits: " << r.messages.fog_private_visits << '\n';
    out << "fog_private_opens: " << r.messages.fog_private_opens << '\n';
    out << "dataset_bytes: " << r.messages.dataset_bytes << '\n';
    out << "processing_time_ms: " << format_optional(r.processing_time_ms) << '\n';
    out << "sessions: " << r.sessions.size() << '\n';
    out << "sessions_billed: " << billed << '\n';
    out << "sessions_rejected: " << rejected << '\n';
    out << "billed_energy_kwh: " << format_real(billed_kwh) << '\n';
    out << "billed_amount: " << format_real(billed_amount) << '\n';
    out << "microgrid_delivered_kwh: " << format_real(r.microgrid.delivered_kwh) << '\n';
    out << "microgrid_from_bess_kwh: " << format_real(r.microgrid.from_bess_kwh) << '\n';
    out << "microgrid_from_grid_kwh: " << format_real(r.microgrid.from_grid_kwh) << '\n';
    out << "bess_final_soc_kwh: " << format_real(r.microgrid.final_bess.soc_kwh) << '\n';
    out << "trace_events: " << r.trace_events << '\n';
    out << "trace_digest: " << hex64(r.trace_digest) << '\n';
    return out.str();
}

std::string render_comparison(const Comparison& c)
{
    std::ostringstream out;
    out << "cloud_mean_wait_s: " << format_optional(c.cloud.aggregates.mean_wait_s) << '\n';
    out << "fog_mean_wait_s: " << format_optional(c.fog.aggregates.mean_wait_s) << '\n';
    out << "delta_wait_s: " << format_optional(c.delta_wait_s) << '\n';
    out << "cloud_total_energy_mj: " << format_real(static_cast<double>(c.cloud.aggregates.total_energy_mj)) << '\n';
    out << "fog_total_energy_mj: " << format_real(static_cast<double>(c.fog.aggregates.total_energy_mj)) << '\n';
    out << "delta_energy_mj: " << format_real(c.delta_energy_mj) << '\n';
    out << "energy_ratio_fog_over_cloud: " << format_optional(c.energy_ratio) << '\n';
    out << "cloud_trace_digest: " << hex64(c.cloud.trace_digest) << '\n';
    out << "fog_trace_digest: " << hex64(c.fog.trace_digest) << '\n';
    return out.str();
}

void emit_report(const RunReport& r, const std::filesystem::path& dir)
{
    make_dir(dir);
    write_file(dir / "nodes.csv", render_nodes_csv(r));
    write_file(dir / "sessions.csv", render_sessions_csv(r));
    write_file(dir / "summary.txt", render_summary(r));
}

void emit_comparison(const Comparison& c, const std::filesystem::path& dir)
{
    emit_report(c.cloud, dir / "cloud");
    emit_report(c.fog, dir / "fog");
    write_file(dir / "comparison.txt", render_comparison(c));
}

namespace {

std::vector<std::string> split(std::string_view line, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& field, std::size_t line)
{
    try {
        std::size_t used = 0;
        double v = std::stod(field, &used);
        if (used == field.size())
            return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::SchemaError, "nodes.csv line " + std::to_string(line) + ": bad number '" + field + "'");
}

} // namespace

std::vector<NodeCsvRow> parse_nodes_csv(std::string_view text)
{
    std::vector<NodeCsvRow> rows;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        start = end == std::string_view::npos ? text.size() : end + 1;
        ++line_no;
        if (line_no == 1) {
            if (line != nodes_csv_header)
                throw Error(ErrorCode::SchemaError, "nodes.csv: unexpected header");
            continue;
        }
        if (line.empty())
            continue;
        auto f = split(line, ',');
        if (f.size() != 9)
            throw Error(ErrorCode::SchemaError, "nodes.csv line " + std::to_string(line_no) + ": expected 9 fields");
        NodeCsvRow row;
        row.node_id = static_cast<std::uint32_t>(parse_double(f[0], line_no));
        row.tier = f[1];
        row.lambda_hat = parse_double(f[2], line_no);
        row.mean_wait_s = parse_double(f[3], line_no);
        row.mean_in_system = parse_double(f[4], line_no);
        row.utilization = parse_double(f[5], line_no);
        row.active_time_s = parse_double(f[6], line_no);
        row.idle_time_s = parse_double(f[7], line_no);
        row.energy_mj = parse_double(f[8], line_no);
        rows.push_back(std::move(row));
    }
    if (line_no == 0)
        throw Error(ErrorCode::SchemaError, "nodes.csv: empty file");
    return rows;
}

} // namespace foggrid
