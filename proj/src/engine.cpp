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


#include "foggrid/queue_sim.hpp"

#include "foggrid/error.hpp"
#include "fnv1a.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <map>
#include <queue>
#include <random>
#include <unordered_map>

namespace foggrid {

const char* to_string(EventKind k) noexcept
{
    switch (k) {
    case EventKind::Arrival: return "Arrival";
    case EventKind::ServiceStart: return "ServiceStart";
    case EventKind::ServiceEnd: return "ServiceEnd";
    case EventKind::SessionStep: return "SessionStep";
    }
    return "?";
}

std::string canonical_event_line(const SimEvent& e)
{
    char buf[96];
    char* p = buf;
    char* end = buf + sizeof buf;
    p = std::to_chars(p, end, e.time).ptr;
    *p++ = ',';
    p = std::to_chars(p, end, e.seq).ptr;
    *p++ = ',';
    std::string line(buf, p);
    line += to_string(e.kind);
    line += ',';
    line += std::to_string(e.node.value);
    line += '\n';
    return line;
}

NodeId resolve_target(const ArrivalProcess& p, const Topology& t)
{
    if (p.target)
        return *p.target;
    const Node& src = t.at(p.source);
    auto cloud = t.cloud_id();
    if (t.mode() == TopologyMode::FogAugmented && src.tier == Tier::Device) {
        if (auto fog = t.owning_fog(src.id))
            return *fog;
        throw Error(ErrorCode::NoRoute, "device " + std::to_string(src.id.value) + " has no fog server");
    }
    if (!cloud || src.tier == Tier::Cloud)
        throw Error(ErrorCode::NoRoute, "no server above node " + std::to_string(src.id.value));
    return *cloud;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Streams are keyed by (node, purpose) so that adding a node or a process
// leaves every other stream untouched.
constexpr std::uint32_t service_purpose = 0;
constexpr std::uint32_t arrival_purpose_base = 1;

class RandomStream {
public:
    RandomStream(std::uint64_t master, NodeId node, std::uint32_t purpose)
        : gen_(splitmix64(splitmix64(master) ^ ((std::uint64_t{node.value} << 32) | purpose)))
    {
    }

    /// Inverse-transform exponential variate; u is uniform on (0, 1].
    double exponential(double rate)
    {
        const double u = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
        return -std::log(u) / rate;
    }

private:
    std::mt19937_64 gen_;
};

struct EventLater {
    bool operator()(const SimEvent& a, const SimEvent& b) const noexcept
    {
        if (a.time != b.time)
            return a.time > b.time;
        return a.seq > b.seq;
    }
};

enum class Origin : std::uint8_t { Workload, SessionRequest, SessionReply, Bill };

struct InFlight {
    Message msg;
    const Route* route = nullptr;
    std::size_t hop = 0;
    double arrived_at = 0.0;  // arrival time at the current hop
    Origin origin = Origin::Workload;
    std::size_t owner = 0;  // process or session index
};

struct NodeState {
    bool server = false;
    double mu = 1.0;
    std::deque<std::uint64_t> backlog;
    bool busy = false;
    std::uint64_t in_system = 0;
    double last_change = 0.0;
    double area = 0.0;
    double busy_time = 0.0;
    std::uint64_t arrivals = 0;
    std::uint64_t samples = 0;
    double sojourn_sum = 0.0;
    std::optional<RandomStream> service_rng;
};

struct ProcessState {
    ArrivalProcess spec;
    NodeId target;
    const Route* route = nullptr;
    RandomStream rng;
};

enum class SessionStepKind : std::uint8_t { Start, ChargeEnd };

class Engine {
public:
    explicit Engine(const RunConfig& cfg);
    RunResult run();

private:
    void schedule(double t, EventKind kind, std::uint64_t subject, NodeId node);
    void record(const SimEvent& e);
    void touch(NodeState& s, double now);

    void on_arrival(const SimEvent& e);
    void on_service_start(const SimEvent& e);
    void on_service_end(const SimEvent& e);
    void on_session_step(const SimEvent& e);

    void forward(InFlight& f, double now);
    void deliver(std::uint64_t id, double now);
    const Route& route_between(NodeId src, NodeId dst);
    void inject(NodeId src, NodeId dst, const PayloadKind& kind, std::uint64_t bytes, Origin origin,
                std::size_t owner, double now);
    void schedule_generation(std::size_t process, double now);
    void begin_charging(std::size_t idx, double now);
    double draw_from_microgrid(double now, double requested_kwh);
    void apply_solar_until(double now);

    NodeState& state_of(NodeId id) { return nodes_[index_.at(id)]; }

    const RunConfig& cfg_;
    const Topology& topo_;
    RunResult result_;
    std::priority_queue<SimEvent, std::vector<SimEvent>, EventLater> queue_;
    std::uint64_t next_seq_ = 0;
    std::uint64_t next_message_ = 1;
    std::unordered_map<NodeId, std::size_t> index_;
    std::vector<NodeState> nodes_;
    std::vector<ProcessState> processes_;
    std::map<std::pair<NodeId, NodeId>, Route> routes_;
    std::unordered_map<std::uint64_t, InFlight> in_flight_;
    std::vector<SessionStepKind> session_step_;
    BessState bess_;
    MicrogridMode grid_mode_ = MicrogridMode::GridConnected;
    std::size_t next_solar_ = 0;
    std::vector<SolarInjection> solar_;
};

Engine::Engine(const RunConfig& cfg) : cfg_(cfg), topo_(cfg.topology)
{
    if (!(cfg.horizon_s > 0) || !std::isfinite(cfg.horizon_s))
        throw Error(ErrorCode::InvalidArgument, "horizon must be positive");
    if (!(cfg.warmup_s >= 0) || !(cfg.warmup_s < cfg.horizon_s))
        throw Error(ErrorCode::InvalidArgument, "warmup must lie in [0, horizon)");
    if (!(cfg.propagation_delay_s >= 0) || !std::isfinite(cfg.propagation_delay_s))
        throw Error(ErrorCode::InvalidArgument, "propagation delay must be nonnegative");
    auto violations = validate_topology(topo_);
    if (!violations.empty())
        throw Error(ErrorCode::InvalidTopology, violations.front().message);

    result_.mode = topo_.mode();
    result_.window_s = cfg.horizon_s - cfg.warmup_s;

    nodes_.resize(topo_.nodes().size());
    for (std::size_t i = 0; i < topo_.nodes().size(); ++i) {
        const Node& n = topo_.nodes()[i];
        index_.emplace(n.id, i);
        NodeState& s = nodes_[i];
        s.server = n.tier != Tier::Device;
        s.mu = n.service_rate_per_s;
        if (s.server)
            s.service_rng.emplace(cfg.seed, n.id, service_purpose);
    }

    std::map<NodeId, std::uint32_t> per_source;
    processes_.reserve(cfg.arrivals.size());
    for (const auto& spec : cfg.arrivals) {
        if (!(spec.rate_per_s >= 0) || !std::isfinite(spec.rate_per_s))
            throw Error(ErrorCode::InvalidArgument, "arrival rate must be nonnegative");
        if (spec.size_bytes == 0)
            throw Error(ErrorCode::InvalidArgument, "payload size must be positive");
        topo_.at(spec.source);
        const std::uint32_t ordinal = per_source[spec.source]++;
        ProcessState p{spec, resolve_target(spec, topo_), nullptr,
                       RandomStream(cfg.seed, spec.source, arrival_purpose_base + ordinal)};
        topo_.at(p.target);
        classify(Payload{spec.payload_kind, spec.size_bytes, {}}, cfg.classification);
        p.route = &route_between(spec.source, p.target);
        processes_.push_back(std::move(p));
    }

    bess_ = cfg.microgrid.bess;
    solar_ = cfg.microgrid.solar;
    std::stable_sort(solar_.begin(), solar_.end(),
                     [](const SolarInjection& a, const SolarInjection& b) { return a.at_s < b.at_s; });
    result_.microgrid.mode_changes.emplace_back(0.0, grid_mode_);

    const auto& plans = cfg.billing.sessions;
    result_.sessions.resize(plans.size());
    result_.session_delivered_kwh.assign(plans.size(), 0.0);
    session_step_.assign(plans.size(), SessionStepKind::Start);
    for (std::size_t i = 0; i < plans.size(); ++i) {
        ChargingSession& s = result_.sessions[i];
        s.session_id = i + 1;
        s.vehicle_id = plans[i].vehicle_id;
        s.outlet_meter = plans[i].outlet_meter;
        s.started_at = plans[i].start_s;
        s.history.push_back(SessionState::Requested);
    }
}

void Engine::schedule(double t, EventKind kind, std::uint64_t subject, NodeId node)
{
    queue_.push(SimEvent{t, next_seq_++, kind, subject, node});
}

void Engine::record(const SimEvent& e)
{
    result_.trace.digest = detail::fnv1a(canonical_event_line(e), result_.trace.digest);
    ++result_.trace.event_count;
    if (cfg_.keep_trace)
        result_.trace.events.push_back(e);
}

void Engine::touch(NodeState& s, double now)
{
    const double from = std::max(s.last_change, cfg_.warmup_s);
    if (now > from) {
        s.area += static_cast<double>(s.in_system) * (now - from);
        if (s.busy)
            s.busy_time += now - from;
    }
    s.last_change = now;
}

const Route& Engine::route_between(NodeId src, NodeId dst)
{
    auto key = std::make_pair(src, dst);
    auto it = routes_.find(key);
    if (it == routes_.end())
        it = routes_.emplace(key, resolve_route(src, dst, topo_)).first;
    return it->second;
}

void Engine::inject(NodeId src, NodeId dst, const PayloadKind& kind, std::uint64_t bytes, Origin origin,
                    std::size_t owner, double now)
{
    const Route& route = route_between(src, dst);
    InFlight f;
    f.msg = make_message(next_message_++, src, dst, Payload{kind, bytes, {}}, cfg_.classification, topo_, now);
    f.route = &route;
    f.origin = origin;
    f.owner = owner;
    const std::uint64_t id = f.msg.id;
    in_flight_.emplace(id, std::move(f));
    schedule(now, EventKind::Arrival, id, src);
}

void Engine::schedule_generation(std::size_t process, double now)
{
    ProcessState& p = processes_[process];
    if (!(p.spec.rate_per_s > 0))
        return;
    const double t = now + p.rng.exponential(p.spec.rate_per_s);
    if (t > cfg_.horizon_s)
        return;
    inject(p.spec.source, p.target, p.spec.payload_kind, p.spec.size_bytes, Origin::Workload, process, t);
}

void Engine::on_arrival(const SimEvent& e)
{
    auto it = in_flight_.find(e.subject);
    InFlight& f = it->second;
    if (f.hop == 0) {
        ++result_.messages.generated;
        ++result_.messages.by_pattern[static_cast<std::size_t>(f.route->pattern)];
        if (f.origin == Origin::Workload) {
            result_.messages.dataset_bytes += f.msg.bytes_size();
            schedule_generation(f.owner, e.time);
        }
    }

    const Node& node = topo_.at(e.node);
    if (node.tier == Tier::Fog && f.msg.cls == DataClass::Private) {
        ++result_.messages.fog_private_visits;
        try {
            unseal(std::get<SealedEnvelope>(f.msg.content), node.id);
            ++result_.messages.fog_private_opens;
        } catch (const Error& err) {
            if (err.code() != ErrorCode::NotKeyholder)
                throw;
        }
    }

    NodeState& s = state_of(e.node);
    if (!s.server) {
        forward(f, e.time);
        return;
    }
    touch(s, e.time);
    ++s.in_system;
    if (e.time >= cfg_.warmup_s)
        ++s.arrivals;
    f.arrived_at = e.time;
    s.backlog.push_back(e.subject);
    if (!s.busy) {
        s.busy = true;
        schedule(e.time, EventKind::ServiceStart, e.subject, e.node);
    }
}

void Engine::on_service_start(const SimEvent& e)
{
    NodeState& s = state_of(e.node);
    const std::uint64_t id = s.backlog.front();
    s.backlog.pop_front();
    const double service = s.service_rng->exponential(s.mu);
    schedule(e.time + service, EventKind::ServiceEnd, id, e.node);
}

void Engine::on_service_end(const SimEvent& e)
{
    NodeState& s = state_of(e.node);
    touch(s, e.time);
    --s.in_system;
    InFlight& f = in_flight_.at(e.subject);
    if (f.arrived_at >= cfg_.warmup_s) {
        s.sojourn_sum += e.time - f.arrived_at;
        ++s.samples;
    }
    if (!s.backlog.empty())
        schedule(e.time, EventKind::ServiceStart, s.backlog.front(), e.node);
    else
        s.busy = false;
    forward(f, e.time);
}

void Engine::forward(InFlight& f, double now)
{
    if (f.hop + 1 >= f.route->hops.size()) {
        deliver(f.msg.id, now);
        return;
    }
    ++f.hop;
    schedule(now + cfg_.propagation_delay_s, EventKind::Arrival, f.msg.id, f.route->hops[f.hop]);
}

void Engine::deliver(std::uint64_t id, double now)
{
    auto it = in_flight_.find(id);
    const Origin origin = it->second.origin;
    const std::size_t owner = it->second.owner;
    const NodeId src = it->second.msg.src;
    const NodeId dst = it->second.msg.dst;
    in_flight_.erase(it);
    ++result_.messages.delivered;

    switch (origin) {
    case Origin::SessionRequest:
        // The owner's meter answers with its identity token.
        inject(dst, src, payload_kinds::IdentityToken, cfg_.billing.request_bytes, Origin::SessionReply, owner, now);
        break;
    case Origin::SessionReply:
        begin_charging(owner, now);
        break;
    case Origin::Workload:
    case Origin::Bill:
        break;
    }
}

void Engine::begin_charging(std::size_t idx, double now)
{
    ChargingSession& s = result_.sessions[idx];
    s = authorize(std::move(s));
    if (s.state == SessionState::Rejected)
        return;
    s = start_charging(std::move(s), now);
    session_step_[idx] = SessionStepKind::ChargeEnd;
    const double end = now + cfg_.billing.sessions[idx].duration_s;
    if (end <= cfg_.horizon_s)
        schedule(end, EventKind::SessionStep, s.session_id, s.outlet_meter);
}

void Engine::on_session_step(const SimEvent& e)
{
    const std::size_t idx = e.subject - 1;
    const SessionPlan& plan = cfg_.billing.sessions[idx];
    ChargingSession& s = result_.sessions[idx];
    const auto& registry = cfg_.billing.registry;

    if (session_step_[idx] == SessionStepKind::Start) {
        s = initiate_session(s.session_id, plan.vehicle_id, plan.outlet_meter, registry, topo_, e.time);
        OwnerResolution res = resolve_owner(std::move(s), registry, topo_);
        s = std::move(res.session);
        if (s.state == SessionState::Rejected)
            return;
        if (!res.request_route) {
            begin_charging(idx, e.time);  // charging at the vehicle's own meter
            return;
        }
        inject(s.outlet_meter, *s.owner_meter, payload_kinds::ChargeRequest, cfg_.billing.request_bytes,
               Origin::SessionRequest, idx, e.time);
        return;
    }

    const double delivered = draw_from_microgrid(e.time, plan.energy_kwh);
    result_.session_delivered_kwh[idx] = delivered;
    s = meter_energy(std::move(s), delivered, e.time);
    auto [billed, bill] = settle_bill(std::move(s), cfg_.billing.tariff_per_kwh);
    s = std::move(billed);
    result_.bills.push_back(std::move(bill));
    if (s.outlet_meter != *s.owner_meter)
        inject(s.outlet_meter, *s.owner_meter, payload_kinds::BillingRecord, cfg_.billing.request_bytes,
               Origin::Bill, idx, e.time);
}

void Engine::apply_solar_until(double now)
{
    auto& out = result_.microgrid;
    while (next_solar_ < solar_.size() && solar_[next_solar_].at_s <= now) {
        const double offered = solar_[next_solar_++].energy_kwh;
        if (bess_.soc_kwh + offered * bess_.efficiency >= bess_.capacity_kwh) {
            // Fill up and curtail the rest.
            const double used = (bess_.capacity_kwh - bess_.soc_kwh) / bess_.efficiency;
            out.curtailed_solar_kwh += offered - used;
            bess_.soc_kwh = bess_.capacity_kwh;
        } else {
            bess_ = bess_charge(bess_, offered);
        }
    }
}

double Engine::draw_from_microgrid(double now, double requested_kwh)
{
    apply_solar_until(now);
    bool grid_up = true;
    for (const auto& o : cfg_.microgrid.outages) {
        if (now >= o.from_s && now < o.to_s)
            grid_up = false;
    }
    const MicrogridMode next = mode_transition(grid_mode_, grid_up);
    if (next != grid_mode_) {
        grid_mode_ = next;
        result_.microgrid.mode_changes.emplace_back(now, next);
    }

    auto& out = result_.microgrid;
    double delivered = requested_kwh;
    if (grid_mode_ == MicrogridMode::GridConnected) {
        out.from_grid_kwh += delivered;
    } else {
        // Islanded: the BESS is the only supply, so a short battery caps
        // what the vehicle receives.
        delivered = std::min(requested_kwh, bess_.soc_kwh);
        bess_ = bess_discharge(bess_, delivered);
        out.from_bess_kwh += delivered;
    }
    out.delivered_kwh += delivered;
    return delivered;
}

RunResult Engine::run()
{
    for (std::size_t i = 0; i < processes_.size(); ++i)
        schedule_generation(i, 0.0);
    for (std::size_t i = 0; i < cfg_.billing.sessions.size(); ++i) {
        const SessionPlan& plan = cfg_.billing.sessions[i];
        if (plan.start_s <= cfg_.horizon_s)
            schedule(plan.start_s, EventKind::SessionStep, i + 1, plan.outlet_meter);
    }

    while (!queue_.empty() && queue_.top().time <= cfg_.horizon_s) {
        const SimEvent e = queue_.top();
        queue_.pop();
        record(e);
        switch (e.kind) {
        case EventKind::Arrival: on_arrival(e); break;
        case EventKind::ServiceStart: on_service_start(e); break;
        case EventKind::ServiceEnd: on_service_end(e); break;
        case EventKind::SessionStep: on_session_step(e); break;
        }
    }

    apply_solar_until(cfg_.horizon_s);
    result_.microgrid.final_bess = bess_;
    result_.messages.in_flight = in_flight_.size();

    const double window = result_.window_s;
    result_.stats.resize(nodes_.size());
    result_.energy.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = topo_.nodes()[i];
        NodeState& s = nodes_[i];
        QueueStats& q = result_.stats[i];
        q.node = n.id;
        double active = 0.0;
        if (s.server) {
            touch(s, cfg_.horizon_s);
            q.lambda_hat = static_cast<double>(s.arrivals) / window;
            q.mean_in_system = s.area / window;
            q.utilization = s.busy_time / window;
            q.samples = s.samples;
            q.mean_wait_s = s.samples > 0 ? s.sojourn_sum / static_cast<double>(s.samples) : 0.0;
            active = std::min(s.busy_time, window);
        }
        EnergyLedger ledger;
        ledger.node = n.id;
        result_.energy[i] = accrue_energy(ledger, n.spec, active, window - active);
    }
    return std::move(result_);
}

} // namespace

RunResult run(const RunConfig& cfg)
{
    Engine engine(cfg);
    return engine.run();
}

} // namespace foggrid
