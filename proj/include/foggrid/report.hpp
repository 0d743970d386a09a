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


#ifndef FOGGRID_REPORT_HPP
#define FOGGRID_REPORT_HPP

#include "foggrid/queue_sim.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace foggrid {

struct NodeRow {
    NodeId node;
    Tier tier = Tier::Device;
    QueueStats stats;
    EnergyLedger energy;
};

struct SessionRow {
    std::uint64_t session_id = 0;
    VehicleId vehicle_id;
    NodeId outlet_meter;
    std::optional<NodeId> owner_meter;
    SessionState state = SessionState::Requested;
    double energy_kwh = 0.0;
    double amount = 0.0;
};

struct FrameworkAggregates {
    /// Arrival-weighted mean of the per-node sojourn times:
    /// sum(lambda_hat * W) / sum(lambda_hat) over nodes with samples.
    /// Absent when no node completed a sojourn.
    std::optional<double> mean_wait_s;
    long double total_energy_mj = 0.0L;
    std::uint64_t samples = 0;
};

/// Recomputes the aggregates from per-node rows; RunReport::aggregates is
/// always exactly this.
FrameworkAggregates aggregate(const std::vector<NodeRow>& rows);

struct RunReport {
    TopologyMode mode = TopologyMode::FogAugmented;
    std::uint64_t seed = 0;
    double horizon_s = 0.0;
    double warmup_s = 0.0;
    std::vector<NodeRow> nodes;
    std::vector<SessionRow> sessions;
    std::vector<BillRecord> bills;
    FrameworkAggregates aggregates;
    MessageCounters messages;
    MicrogridOutcome microgrid;
    std::optional<double> processing_time_ms;  // N log N model over the workload bytes
    std::uint64_t trace_digest = 0;
    std::uint64_t trace_events = 0;
};

RunReport make_report(const RunConfig& cfg, const RunResult& result);

/// Same workload under CloudOnly and FogAugmented. Deltas are fog minus
/// cloud.
struct Comparison {
    RunReport cloud;
    RunReport fog;
    std::optional<double> delta_wait_s;
    double delta_energy_mj = 0.0;
    std::optional<double> energy_ratio;  // fog / cloud total energy
};

Comparison make_comparison(RunReport cloud, RunReport fog);

/// "%.6g" rendering used for every real-valued report field.
std::string format_real(double v);

std::string render_nodes_csv(const RunReport& r);
std::string render_sessions_csv(const RunReport& r);
std::string render_summary(const RunReport& r);
std::string render_comparison(const Comparison& c);

/// Writes nodes.csv, sessions.csv and summary.txt into dir (created if
/// needed). Throws Error(IoFailure).
void emit_report(const RunReport& r, const std::filesystem::path& dir);

/// Writes cloud/ and fog/ report directories plus comparison.txt.
void emit_comparison(const Comparison& c, const std::filesystem::path& dir);

/// One parsed row of nodes.csv.
struct NodeCsvRow {
    std::uint32_t node_id = 0;
    std::string tier;
    double lambda_hat = 0.0;
    double mean_wait_s = 0.0;
    double mean_in_system = 0.0;
    double utilization = 0.0;
    double active_time_s = 0.0;
    double idle_time_s = 0.0;
    double energy_mj = 0.0;
};

inline constexpr std::string_view nodes_csv_header =
    "node_id,tier,lambda_hat,mean_wait_s,mean_in_system,utilization,active_time_s,idle_time_s,energy_mj";
inline constexpr std::string_view sessions_csv_header =
    "session_id,vehicle_id,outlet_meter,owner_meter,state,energy_kwh,amount";

/// Throws Error(SchemaError) on a malformed file.
std::vector<NodeCsvRow> parse_nodes_csv(std::string_view text);

} // namespace foggrid

#endif // FOGGRID_REPORT_HPP
