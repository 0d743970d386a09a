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


#include "foggrid/scenario.hpp"

#include "foggrid/error.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace foggrid {

namespace {

int line_of(const YAML::Node& n)
{
    const auto mark = n.Mark();
    return mark.line >= 0 ? mark.line + 1 : 0;
}

/// Collects issues while walking the document so that one pass reports
/// every problem rather than only the first.
class Reader {
public:
    std::vector<ConfigIssue> issues;

    void fail(ErrorCode code, const YAML::Node& at, std::string msg)
    {
        issues.push_back(ConfigIssue{code, at ? line_of(at) : 0, std::move(msg)});
    }

    void fail(ErrorCode code, int line, std::string msg) { issues.push_back(ConfigIssue{code, line, std::move(msg)}); }

    bool expect_map(const YAML::Node& n, const std::string& what)
    {
        if (n.IsMap())
            return true;
        fail(ErrorCode::SchemaError, n, what + " must be a mapping");
        return false;
    }

    bool expect_seq(const YAML::Node& n, const std::string& what)
    {
        if (n.IsSequence())
            return true;
        fail(ErrorCode::SchemaError, n, what + " must be a sequence");
        return false;
    }

    /// Flags keys outside the allowed set.
    void only_keys(const YAML::Node& map, std::initializer_list<const char*> allowed, const std::string& where)
    {
        for (const auto& kv : map) {
            const std::string key = kv.first.Scalar();
            bool ok = false;
            for (const char* a : allowed)
                ok = ok || key == a;
            if (!ok)
                fail(ErrorCode::SchemaError, kv.first, "unknown key '" + key + "' in " + where);
        }
    }

    /// Decimal or "a/b" rational scalar.
    std::optional<double> real(const YAML::Node& n, const std::string& what)
    {
        if (!n.IsScalar()) {
            fail(ErrorCode::SchemaError, n, what + " must be a number");
            return std::nullopt;
        }
        const std::string& s = n.Scalar();
        auto parse = [](std::string_view text) -> std::optional<double> {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
            if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
                return std::nullopt;
            return v;
        };
        std::optional<double> v;
        if (auto slash = s.find('/'); slash != std::string::npos) {
            auto num = parse(std::string_view(s).substr(0, slash));
            auto den = parse(std::string_view(s).substr(slash + 1));
            if (num && den && *den != 0.0)
                v = *num / *den;
        } else {
            v = parse(s);
        }
        if (!v)
            fail(ErrorCode::SchemaError, n, what + " must be a number, got '" + s + "'");
        return v;
    }

    std::optional<std::uint64_t> integer(const YAML::Node& n, const std::string& what,
                                         std::uint64_t max = std::numeric_limits<std::uint64_t>::max())
    {
        if (n.IsScalar()) {
            const std::string& s = n.Scalar();
            std::uint64_t v = 0;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec == std::errc() && ptr == s.data() + s.size() && v <= max)
                return v;
        }
        fail(ErrorCode::SchemaError, n, what + " must be a nonnegative integer");
        return std::nullopt;
    }

    std::optional<std::string> text(const YAML::Node& n, const std::string& what)
    {
        if (n.IsScalar() && !n.Scalar().empty())
            return n.Scalar();
        fail(ErrorCode::SchemaError, n, what + " must be a non-empty string");
        return std::nullopt;
    }

    std::optional<NodeId> node_ref(const YAML::Node& n, const std::string& what)
    {
        auto v = integer(n, what, std::numeric_limits<std::uint32_t>::max());
        if (!v)
            return std::nullopt;
        return NodeId{static_cast<std::uint32_t>(*v)};
    }

    /// Reads parent[key] as a real, enforcing a lower bound.
    template <typename Check>
    void real_field(const YAML::Node& parent, const char* key, double& out, bool required, Check ok,
                    const char* constraint)
    {
        const YAML::Node n = parent[key];
        if (!n) {
            if (required)
                fail(ErrorCode::SchemaError, parent, std::string("missing required field '") + key + "'");
            return;
        }
        if (auto v = real(n, key)) {
            if (ok(*v))
                out = *v;
            else
                fail(ErrorCode::SchemaError, n, std::string(key) + " must be " + constraint);
        }
    }
};

auto positive = [](double v) { return v > 0; };
auto nonnegative = [](double v) { return v >= 0; };

std::optional<Tier> parse_tier(const std::string& s)
{
    if (s == "device") return Tier::Device;
    if (s == "fog") return Tier::Fog;
    if (s == "cloud") return Tier::Cloud;
    return std::nullopt;
}

std::optional<DeviceRole> parse_role(const std::string& s)
{
    if (s == "connecting") return DeviceRole::Connecting;
    if (s == "gateway") return DeviceRole::Gateway;
    if (s == "sensor") return DeviceRole::Sensor;
    if (s == "actuator") return DeviceRole::Actuator;
    if (s == "computing") return DeviceRole::Computing;
    return std::nullopt;
}

DeviceRole default_role(Tier t)
{
    switch (t) {
    case Tier::Device: return DeviceRole::Sensor;
    case Tier::Fog: return DeviceRole::Gateway;
    case Tier::Cloud: return DeviceRole::Computing;
    }
    return DeviceRole::Sensor;
}

void read_spec(Reader& r, const YAML::Node& n, DeviceSpec& spec, const std::string& where)
{
    if (!r.expect_map(n, where))
        return;
    r.only_keys(n, {"cpu_mhz", "cores", "memory_mb", "power_active_mw", "power_idle_mw"}, where);
    auto u32 = [&](const char* key, std::uint32_t& out) {
        if (const YAML::Node v = n[key]) {
            if (auto x = r.integer(v, key, std::numeric_limits<std::uint32_t>::max())) {
                if (*x == 0)
                    r.fail(ErrorCode::SchemaError, v, std::string(key) + " must be positive");
                else
                    out = static_cast<std::uint32_t>(*x);
            }
        }
    };
    u32("cpu_mhz", spec.cpu_mhz);
    u32("cores", spec.cores);
    u32("memory_mb", spec.memory_mb);
    r.real_field(n, "power_active_mw", spec.power_active_mw, false, positive, "positive");
    r.real_field(n, "power_idle_mw", spec.power_idle_mw, false, nonnegative, "nonnegative");
    if (spec.power_idle_mw > spec.power_active_mw)
        r.fail(ErrorCode::SchemaError, n, where + ": power_idle_mw exceeds power_active_mw");
}

struct Parsed {
    ScenarioConfig cfg;
    TopologyMode mode = TopologyMode::FogAugmented;
    std::vector<Node> nodes;
    std::vector<FogLink> links;
    std::map<NodeId, int> node_lines;
    std::vector<std::pair<FogLink, int>> link_lines;
    std::vector<int> arrival_lines;
    std::vector<int> session_lines;
    std::vector<std::pair<NodeId, int>> meter_lines;
    std::vector<std::pair<NodeId, int>> vehicle_lines;
};

void read_models(Reader& r, const YAML::Node& models, Parsed& p, DeviceSpec& fog, DeviceSpec& cloud,
                 DeviceSpec& device)
{
    if (!models)
        return;
    if (!r.expect_map(models, "models"))
        return;
    r.only_keys(models, {"fog_spec", "cloud_spec", "device_spec", "processing", "bess", "solar", "grid_outages",
                         "tariff_per_kwh"},
                "models");
    if (const YAML::Node n = models["fog_spec"])
        read_spec(r, n, fog, "models.fog_spec");
    if (const YAML::Node n = models["cloud_spec"])
        read_spec(r, n, cloud, "models.cloud_spec");
    if (const YAML::Node n = models["device_spec"])
        read_spec(r, n, device, "models.device_spec");
    if (const YAML::Node n = models["processing"]; n && r.expect_map(n, "models.processing")) {
        r.only_keys(n, {"c_ms"}, "models.processing");
        r.real_field(n, "c_ms", p.cfg.processing.c_ms, false, positive, "positive");
    }
    if (const YAML::Node n = models["bess"]; n && r.expect_map(n, "models.bess")) {
        r.only_keys(n, {"capacity_kwh", "soc_kwh", "efficiency"}, "models.bess");
        BessState& b = p.cfg.microgrid.bess;
        r.real_field(n, "capacity_kwh", b.capacity_kwh, false, positive, "positive");
        r.real_field(n, "soc_kwh", b.soc_kwh, false, nonnegative, "nonnegative");
        r.real_field(n, "efficiency", b.efficiency, false, [](double v) { return v > 0 && v <= 1; }, "in (0, 1]");
        if (b.soc_kwh > b.capacity_kwh)
            r.fail(ErrorCode::SchemaError, n, "models.bess: soc_kwh exceeds capacity_kwh");
    }
    if (const YAML::Node n = models["solar"]; n && r.expect_seq(n, "models.solar")) {
        for (const auto& item : n) {
            if (!r.expect_map(item, "solar entry"))
                continue;
            r.only_keys(item, {"at_s", "energy_kwh"}, "solar entry");
            SolarInjection s;
            r.real_field(item, "at_s", s.at_s, true, nonnegative, "nonnegative");
            r.real_field(item, "energy_kwh", s.energy_kwh, true, nonnegative, "nonnegative");
            p.cfg.microgrid.solar.push_back(s);
        }
    }
    if (const YAML::Node n = models["grid_outages"]; n && r.expect_seq(n, "models.grid_outages")) {
        for (const auto& item : n) {
            if (!r.expect_map(item, "grid outage"))
                continue;
            r.only_keys(item, {"from_s", "to_s"}, "grid outage");
            GridOutage o;
            r.real_field(item, "from_s", o.from_s, true, nonnegative, "nonnegative");
            r.real_field(item, "to_s", o.to_s, true, nonnegative, "nonnegative");
            if (o.to_s < o.from_s)
                r.fail(ErrorCode::SchemaError, item, "grid outage ends before it starts");
            p.cfg.microgrid.outages.push_back(o);
        }
    }
    r.real_field(models, "tariff_per_kwh", p.cfg.billing.tariff_per_kwh, false, positive, "positive");
}

void read_topology(Reader& r, const YAML::Node& topo, Parsed& p, const DeviceSpec& fog_spec,
                   const DeviceSpec& cloud_spec, const DeviceSpec& device_spec)
{
    if (!topo) {
        r.fail(ErrorCode::SchemaError, 0, "missing required section 'topology'");
        return;
    }
    if (!r.expect_map(topo, "topology"))
        return;
    r.only_keys(topo, {"mode", "nodes", "fog_links"}, "topology");
    if (const YAML::Node m = topo["mode"]) {
        if (auto s = r.text(m, "topology.mode")) {
            if (*s == "fog")
                p.mode = TopologyMode::FogAugmented;
            else if (*s == "cloud")
                p.mode = TopologyMode::CloudOnly;
            else
                r.fail(ErrorCode::SchemaError, m, "topology.mode must be 'fog' or 'cloud'");
        }
    }
    const YAML::Node nodes = topo["nodes"];
    if (!nodes) {
        r.fail(ErrorCode::SchemaError, topo, "missing required field 'topology.nodes'");
    } else if (r.expect_seq(nodes, "topology.nodes")) {
        for (const auto& item : nodes) {
            if (!r.expect_map(item, "node"))
                continue;
            r.only_keys(item, {"id", "tier", "role", "area", "service_rate_per_s", "calibrate", "spec"}, "node");
            Node n;
            bool ok = true;
            if (const YAML::Node id = item["id"]) {
                if (auto v = r.node_ref(id, "node id"))
                    n.id = *v;
                else
                    ok = false;
            } else {
                r.fail(ErrorCode::SchemaError, item, "node is missing 'id'");
                ok = false;
            }
            if (const YAML::Node tier = item["tier"]) {
                auto s = r.text(tier, "tier");
                auto t = s ? parse_tier(*s) : std::nullopt;
                if (t)
                    n.tier = *t;
                else {
                    if (s)
                        r.fail(ErrorCode::SchemaError, tier, "tier must be device, fog or cloud");
                    ok = false;
                }
            } else {
                r.fail(ErrorCode::SchemaError, item, "node is missing 'tier'");
                ok = false;
            }
            n.role = default_role(n.tier);
            if (const YAML::Node role = item["role"]) {
                auto s = r.text(role, "role");
                if (auto rl = s ? parse_role(*s) : std::nullopt)
                    n.role = *rl;
                else if (s)
                    r.fail(ErrorCode::SchemaError, role,
                           "role must be connecting, gateway, sensor, actuator or computing");
            }
            if (const YAML::Node area = item["area"]) {
                if (auto v = r.integer(area, "area", std::numeric_limits<std::uint32_t>::max()))
                    n.area = FogAreaId{static_cast<std::uint32_t>(*v)};
            }
            n.spec = n.tier == Tier::Fog ? fog_spec : n.tier == Tier::Cloud ? cloud_spec : device_spec;
            if (const YAML::Node spec = item["spec"])
                read_spec(r, spec, n.spec, "node spec");

            const YAML::Node rate = item["service_rate_per_s"];
            const YAML::Node calib = item["calibrate"];
            if (rate && calib) {
                r.fail(ErrorCode::SchemaError, item, "give either service_rate_per_s or calibrate, not both");
            } else if (rate) {
                r.real_field(item, "service_rate_per_s", n.service_rate_per_s, true, positive, "positive");
            } else if (calib) {
                if (r.expect_map(calib, "calibrate")) {
                    r.only_keys(calib, {"target_wait_s", "lambda_per_s"}, "calibrate");
                    double target = 0.0;
                    double lambda = 0.0;
                    const std::size_t before = r.issues.size();
                    r.real_field(calib, "target_wait_s", target, true, positive, "positive");
                    r.real_field(calib, "lambda_per_s", lambda, true, nonnegative, "nonnegative");
                    if (r.issues.size() == before)
                        n.service_rate_per_s = calibrate_service_rate(target, lambda);
                }
            } else if (ok && n.tier != Tier::Device) {
                r.fail(ErrorCode::SchemaError, item,
                       "fog and cloud nodes need service_rate_per_s or calibrate");
            }
            if (ok) {
                if (p.node_lines.contains(n.id))
                    r.fail(ErrorCode::SchemaError, item, "node id " + std::to_string(n.id.value) + " defined twice");
                else
                    p.node_lines.emplace(n.id, line_of(item));
                p.nodes.push_back(std::move(n));
            }
        }
    }
    if (const YAML::Node links = topo["fog_links"]; links && r.expect_seq(links, "topology.fog_links")) {
        for (const auto& item : links) {
            if (!item.IsSequence() || item.size() != 2) {
                r.fail(ErrorCode::SchemaError, item, "fog link must be a pair [a, b]");
                continue;
            }
            auto a = r.node_ref(item[0], "fog link endpoint");
            auto b = r.node_ref(item[1], "fog link endpoint");
            if (a && b) {
                p.links.emplace_back(*a, *b);
                p.link_lines.emplace_back(FogLink(*a, *b), line_of(item));
            }
        }
    }
}

void read_workload(Reader& r, const YAML::Node& wl, Parsed& p)
{
    if (!wl)
        return;
    if (!r.expect_map(wl, "workload"))
        return;
    r.only_keys(wl, {"arrivals", "classification", "meters", "vehicles", "sessions"}, "workload");
    if (const YAML::Node arr = wl["arrivals"]; arr && r.expect_seq(arr, "workload.arrivals")) {
        for (const auto& item : arr) {
            if (!r.expect_map(item, "arrival process"))
                continue;
            r.only_keys(item, {"source", "target", "rate_per_s", "payload_kind", "size_bytes"}, "arrival process");
            ArrivalProcess a;
            if (const YAML::Node src = item["source"]) {
                if (auto v = r.node_ref(src, "source"))
                    a.source = *v;
            } else {
                r.fail(ErrorCode::SchemaError, item, "arrival process is missing 'source'");
            }
            if (const YAML::Node tgt = item["target"]) {
                if (!(tgt.IsScalar() && tgt.Scalar() == "upstream")) {
                    if (auto v = r.node_ref(tgt, "target"))
                        a.target = *v;
                }
            }
            r.real_field(item, "rate_per_s", a.rate_per_s, true, nonnegative, "nonnegative");
            if (const YAML::Node kind = item["payload_kind"]) {
                if (auto s = r.text(kind, "payload_kind"))
                    a.payload_kind = *s;
            }
            if (const YAML::Node size = item["size_bytes"]) {
                if (auto v = r.integer(size, "size_bytes")) {
                    if (*v == 0)
                        r.fail(ErrorCode::SchemaError, size, "size_bytes must be positive");
                    else
                        a.size_bytes = *v;
                }
            }
            p.cfg.arrivals.push_back(std::move(a));
            p.arrival_lines.push_back(line_of(item));
        }
    }
    if (const YAML::Node cls = wl["classification"]; cls && r.expect_map(cls, "workload.classification")) {
        ClassificationTable table;
        for (const auto& kv : cls) {
            const std::string kind = kv.first.Scalar();
            auto s = r.text(kv.second, "classification of " + kind);
            if (s && *s == "private")
                table.set(kind, DataClass::Private);
            else if (s && *s == "public")
                table.set(kind, DataClass::Public);
            else if (s)
                r.fail(ErrorCode::SchemaError, kv.second, "classification must be 'private' or 'public'");
        }
        p.cfg.classification = std::move(table);
    }
    if (const YAML::Node meters = wl["meters"]; meters && r.expect_seq(meters, "workload.meters")) {
        for (const auto& item : meters) {
            if (!r.expect_map(item, "meter"))
                continue;
            r.only_keys(item, {"meter", "account"}, "meter");
            auto m = item["meter"] ? r.node_ref(item["meter"], "meter") : std::nullopt;
            auto acct = item["account"] ? r.text(item["account"], "account") : std::nullopt;
            if (!item["meter"] || !item["account"])
                r.fail(ErrorCode::SchemaError, item, "meter entries need 'meter' and 'account'");
            if (m && acct) {
                p.cfg.billing.registry.add_meter(*m, *acct);
                p.meter_lines.emplace_back(*m, line_of(item));
            }
        }
    }
    if (const YAML::Node vehicles = wl["vehicles"]; vehicles && r.expect_seq(vehicles, "workload.vehicles")) {
        for (const auto& item : vehicles) {
            if (!r.expect_map(item, "vehicle"))
                continue;
            r.only_keys(item, {"vehicle_id", "owner_meter"}, "vehicle");
            auto v = item["vehicle_id"] ? r.text(item["vehicle_id"], "vehicle_id") : std::nullopt;
            auto m = item["owner_meter"] ? r.node_ref(item["owner_meter"], "owner_meter") : std::nullopt;
            if (!item["vehicle_id"] || !item["owner_meter"])
                r.fail(ErrorCode::SchemaError, item, "vehicle entries need 'vehicle_id' and 'owner_meter'");
            if (v && m) {
                p.cfg.billing.registry.add_vehicle(*v, *m);
                p.vehicle_lines.emplace_back(*m, line_of(item));
            }
        }
    }
    if (const YAML::Node sessions = wl["sessions"]; sessions && r.expect_seq(sessions, "workload.sessions")) {
        for (const auto& item : sessions) {
            if (!r.expect_map(item, "session"))
                continue;
            r.only_keys(item, {"vehicle_id", "outlet_meter", "start_s", "duration_s", "energy_kwh"}, "session");
            SessionPlan s;
            if (const YAML::Node v = item["vehicle_id"]) {
                if (auto t = r.text(v, "vehicle_id"))
                    s.vehicle_id = *t;
            } else {
                r.fail(ErrorCode::SchemaError, item, "session is missing 'vehicle_id'");
            }
            if (const YAML::Node o = item["outlet_meter"]) {
                if (auto m = r.node_ref(o, "outlet_meter"))
                    s.outlet_meter = *m;
            } else {
                r.fail(ErrorCode::SchemaError, item, "session is missing 'outlet_meter'");
            }
            r.real_field(item, "start_s", s.start_s, true, nonnegative, "nonnegative");
            r.real_field(item, "duration_s", s.duration_s, true, nonnegative, "nonnegative");
            r.real_field(item, "energy_kwh", s.energy_kwh, true, nonnegative, "nonnegative");
            p.cfg.billing.sessions.push_back(std::move(s));
            p.session_lines.push_back(line_of(item));
        }
    }
}

void read_run(Reader& r, const YAML::Node& run, Parsed& p)
{
    bool warmup_given = false;
    if (run && r.expect_map(run, "run")) {
        r.only_keys(run, {"seed", "horizon_s", "warmup_s", "propagation_delay_s"}, "run");
        if (const YAML::Node seed = run["seed"]) {
            if (auto v = r.integer(seed, "seed"))
                p.cfg.seed = *v;
        }
        r.real_field(run, "horizon_s", p.cfg.horizon_s, false, positive, "positive");
        warmup_given = static_cast<bool>(run["warmup_s"]);
        r.real_field(run, "warmup_s", p.cfg.warmup_s, false, nonnegative, "nonnegative");
        r.real_field(run, "propagation_delay_s", p.cfg.propagation_delay_s, false, nonnegative, "nonnegative");
    }
    if (!warmup_given)
        p.cfg.warmup_s = 0.01 * p.cfg.horizon_s;
    if (!(p.cfg.warmup_s < p.cfg.horizon_s))
        r.fail(ErrorCode::SchemaError, run ? line_of(run) : 0, "run.warmup_s must be smaller than run.horizon_s");
}

void check_references(Reader& r, Parsed& p, const Topology& topo)
{
    auto dangling = [&](NodeId id, int line, const std::string& what) {
        if (!topo.contains(id))
            r.fail(ErrorCode::DanglingReference, line, what + " references undefined node " + std::to_string(id.value));
    };
    for (const auto& [link, line] : p.link_lines) {
        dangling(link.a, line, "fog link");
        dangling(link.b, line, "fog link");
    }
    for (std::size_t i = 0; i < p.cfg.arrivals.size(); ++i) {
        const auto& a = p.cfg.arrivals[i];
        dangling(a.source, p.arrival_lines[i], "arrival source");
        if (a.target)
            dangling(*a.target, p.arrival_lines[i], "arrival target");
        if (a.target && *a.target == a.source)
            r.fail(ErrorCode::SchemaError, p.arrival_lines[i], "arrival target equals its source");
        if (!p.cfg.classification.contains(a.payload_kind))
            r.fail(ErrorCode::UnknownKind, p.arrival_lines[i],
                   "payload kind '" + a.payload_kind + "' is missing from the classification table");
    }
    for (const auto& [meter, line] : p.meter_lines)
        dangling(meter, line, "meter");
    for (const auto& [meter, line] : p.vehicle_lines) {
        dangling(meter, line, "vehicle owner_meter");
        if (!p.cfg.billing.registry.account_of(meter))
            r.fail(ErrorCode::DanglingReference, line,
                   "vehicle owner_meter " + std::to_string(meter.value) + " has no account in workload.meters");
    }
    for (std::size_t i = 0; i < p.cfg.billing.sessions.size(); ++i) {
        const auto& s = p.cfg.billing.sessions[i];
        const Node* outlet = topo.find(s.outlet_meter);
        if (!outlet)
            r.fail(ErrorCode::DanglingReference, p.session_lines[i],
                   "session references undefined meter " + std::to_string(s.outlet_meter.value));
        else if (outlet->tier != Tier::Device)
            r.fail(ErrorCode::DanglingReference, p.session_lines[i],
                   "session outlet " + std::to_string(s.outlet_meter.value) + " is not a device-tier meter");
    }
    if (!p.cfg.billing.sessions.empty()) {
        for (const auto* kind : {&payload_kinds::ChargeRequest, &payload_kinds::IdentityToken,
                                 &payload_kinds::BillingRecord}) {
            if (!p.cfg.classification.contains(*kind))
                r.fail(ErrorCode::UnknownKind, 0,
                       "charging sessions need payload kind '" + *kind + "' in the classification table");
        }
    }
}

} // namespace

ScenarioConfig parse_config(std::string_view text)
{
    Reader r;
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        throw ConfigError({ConfigIssue{ErrorCode::SchemaError, e.mark.line >= 0 ? e.mark.line + 1 : 0, e.msg}});
    }
    if (!root.IsMap())
        throw ConfigError({ConfigIssue{ErrorCode::SchemaError, 1, "scenario must be a mapping"}});

    Parsed p;
    try {
        r.only_keys(root, {"topology", "workload", "models", "run"}, "scenario");
        DeviceSpec fog = default_fog_spec();
        DeviceSpec cloud = default_cloud_spec();
        DeviceSpec device = default_device_spec();
        read_models(r, root["models"], p, fog, cloud, device);
        read_topology(r, root["topology"], p, fog, cloud, device);
        read_workload(r, root["workload"], p);
        read_run(r, root["run"], p);
    } catch (const YAML::Exception& e) {
        r.fail(ErrorCode::SchemaError, e.mark.line >= 0 ? e.mark.line + 1 : 0, e.msg);
    }
    if (!r.issues.empty())
        throw ConfigError(std::move(r.issues));

    Topology topo(std::move(p.nodes), std::move(p.links), p.mode);
    check_references(r, p, topo);
    if (!r.issues.empty())
        throw ConfigError(std::move(r.issues));

    for (const auto& v : validate_topology(topo)) {
        int line = 0;
        if (!v.subjects.empty()) {
            if (auto it = p.node_lines.find(v.subjects.front()); it != p.node_lines.end())
                line = it->second;
        }
        r.fail(ErrorCode::InvalidTopology, line, std::string(to_string(v.kind)) + ": " + v.message);
    }
    if (!r.issues.empty())
        throw ConfigError(std::move(r.issues));

    // Arrival targets must be resolvable in the file's own mode.
    for (std::size_t i = 0; i < p.cfg.arrivals.size(); ++i) {
        try {
            resolve_route(p.cfg.arrivals[i].source, resolve_target(p.cfg.arrivals[i], topo), topo);
        } catch (const Error& e) {
            r.fail(ErrorCode::InvalidTopology, p.arrival_lines[i], std::string("arrival process: ") + e.what());
        }
    }
    if (!r.issues.empty())
        throw ConfigError(std::move(r.issues));

    p.cfg.topology = std::move(topo);
    return std::move(p.cfg);
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoFailure, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

RunConfig to_run_config(const ScenarioConfig& cfg, std::optional<TopologyMode> mode)
{
    RunConfig rc;
    rc.topology = mode ? cfg.topology.with_mode(*mode) : cfg.topology;
    rc.arrivals = cfg.arrivals;
    rc.classification = cfg.classification;
    rc.billing = cfg.billing;
    rc.microgrid = cfg.microgrid;
    rc.processing = cfg.processing;
    rc.seed = cfg.seed;
    rc.horizon_s = cfg.horizon_s;
    rc.warmup_s = cfg.warmup_s;
    rc.propagation_delay_s = cfg.propagation_delay_s;
    return rc;
}

RunReport run_scenario(const ScenarioConfig& cfg, std::optional<TopologyMode> mode)
{
    const RunConfig rc = to_run_config(cfg, mode);
    return make_report(rc, run(rc));
}

Comparison compare_frameworks(const ScenarioConfig& cfg)
{
    RunReport cloud = run_scenario(cfg, TopologyMode::CloudOnly);
    RunReport fog = run_scenario(cfg, TopologyMode::FogAugmented);
    return make_comparison(std::move(cloud), std::move(fog));
}

} // namespace foggrid
