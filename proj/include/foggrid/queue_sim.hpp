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


#ifndef FOGGRID_QUEUE_SIM_HPP
#define FOGGRID_QUEUE_SIM_HPP

#include "foggrid/analytic.hpp"
#include "foggrid/energy_model.hpp"
#include "foggrid/ev_billing.hpp"
#include "foggrid/message_fabric.hpp"
#include "foggrid/topology.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace foggrid {

/// Poisson message source. Without a target the messages go to the first
/// server above the source: its fog node in FogAugmented mode, the cloud in
/// CloudOnly mode.
struct ArrivalProcess {
    NodeId source;
    std::optional<NodeId> target;
    double rate_per_s = 0.0;
    PayloadKind payload_kind = payload_kinds::MeterReading;
    std::uint64_t size_bytes = 1;
};

/// The node an arrival process sends to under the topology's mode.
/// Throws Error(NoRoute) when there is nothing above the source.
NodeId resolve_target(const ArrivalProcess& p, const Topology& t);

/// A vehicle plugging in at an outlet.
struct SessionPlan {
    VehicleId vehicle_id;
    NodeId outlet_meter;
    double start_s = 0.0;
    double duration_s = 0.0;
    double energy_kwh = 0.0;  // energy the vehicle asks for
};

struct BillingSetup {
    VehicleRegistry registry;
    std::vector<SessionPlan> sessions;
    double tariff_per_kwh = 0.2;
    std::uint64_t request_bytes = 128;
};

struct SolarInjection {
    double at_s = 0.0;
    double energy_kwh = 0.0;
};

struct GridOutage {
    double from_s = 0.0;
    double to_s = 0.0;
};

/// Local generation and storage behind the outlets. While the grid is out
/// the microgrid runs autonomously and charging is served from the BESS
/// alone; solar output is an exogenous charge schedule into the BESS.
struct MicrogridSetup {
    BessState bess{100.0, 50.0, 1.0};
    std::vector<SolarInjection> solar;
    std::vector<GridOutage> outages;
};

struct RunConfig {
    Topology topology;
    std::vector<ArrivalProcess> arrivals;
    ClassificationTable classification = ClassificationTable::defaults();
    BillingSetup billing;
    MicrogridSetup microgrid;
    ProcessingModel processing;
    std::uint64_t seed = 1;
    double horizon_s = 1e6;
    double warmup_s = 1e4;
    double propagation_delay_s = 0.0;
    bool keep_trace = false;  // store every event, not just the digest
};

enum class EventKind : std::uint8_t { Arrival, ServiceStart, ServiceEnd, SessionStep };

const char* to_string(EventKind k) noexcept;

struct SimEvent {
    double time = 0.0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::Arrival;
    std::uint64_t subject = 0;  // message id, or session id for SessionStep
    NodeId node;
};

/// Canonical text of one event for the trace digest:
/// "<time>,<seq>,<kind>,<node>\n" where time is the shortest decimal that
/// round-trips the double, kind is the EventKind name and node is decimal.
std::string canonical_event_line(const SimEvent& e);

/// 64-bit FNV-1a (offset 14695981039346656037, prime 1099511628211) over the
/// concatenated canonical lines of every processed event, in order.
struct SimTrace {
    std::uint64_t digest = 14695981039346656037ULL;
    std::uint64_t event_count = 0;
    std::vector<SimEvent> events;  // only with RunConfig::keep_trace
};

struct MessageCounters {
    std::uint64_t generated = 0;
    std::uint64_t delivered = 0;
    std::uint64_t in_flight = 0;           // still in the system at the horizon
    std::uint64_t fog_private_visits = 0;  // fog hops that carried a private message
    std::uint64_t fog_private_opens = 0;   // of those, successful opens (must stay 0)
    std::uint64_t dataset_bytes = 0;       // payload bytes of generated workload messages
    std::array<std::uint64_t, 5> by_pattern{};  // indexed by RoutePattern
};

struct MicrogridOutcome {
    double delivered_kwh = 0.0;
    double from_bess_kwh = 0.0;
    double from_grid_kwh = 0.0;
    double curtailed_solar_kwh = 0.0;
    BessState final_bess;
    std::vector<std::pair<double, MicrogridMode>> mode_changes;
};

struct RunResult {
    TopologyMode mode = TopologyMode::FogAugmented;
    double window_s = 0.0;  // horizon - warmup
    SimTrace trace;
    std::vector<QueueStats> stats;     // one per topology node, topology order
    std::vector<EnergyLedger> energy;  // one per topology node, topology order
    std::vector<ChargingSession> sessions;
    std::vector<double> session_delivered_kwh;  // microgrid side, per session
    std::vector<BillRecord> bills;
    MessageCounters messages;
    MicrogridOutcome microgrid;
};

/// Runs the workload over the topology until the horizon.
///
/// Every fog and cloud node is a FIFO M/M/1 server; device hops cost nothing.
/// Each message visits every hop of its route. Statistics and energy cover
/// [warmup, horizon]. The result is a pure function of cfg.
///
/// Throws Error(InvalidTopology) when validate_topology reports anything and
/// Error(InvalidArgument) for inconsistent run parameters.
RunResult run(const RunConfig& cfg);

} // namespace foggrid

#endif // FOGGRID_QUEUE_SIM_HPP
