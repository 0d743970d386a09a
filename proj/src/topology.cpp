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


#include "foggrid/topology.hpp"

#include "foggrid/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace foggrid {

const char* to_string(Tier tier) noexcept
{
    switch (tier) {
    case Tier::Device: return "device";
    case Tier::Fog: return "fog";
    case Tier::Cloud: return "cloud";
    }
    return "?";
}

const char* to_string(DeviceRole role) noexcept
{
    switch (role) {
    case DeviceRole::Connecting: return "connecting";
    case DeviceRole::Gateway: return "gateway";
    case DeviceRole::Sensor: return "sensor";
    case DeviceRole::Actuator: return "actuator";
    case DeviceRole::Computing: return "computing";
    }
    return "?";
}

const char* to_string(TopologyMode mode) noexcept
{
    return mode == TopologyMode::CloudOnly ? "cloud" : "fog";
}

const char* to_string(ViolationKind kind) noexcept
{
    switch (kind) {
    case ViolationKind::CloudCardinality: return "cloud cardinality";
    case ViolationKind::DuplicateNodeId: return "duplicate node id";
    case ViolationKind::OrphanArea: return "orphan area";
    case ViolationKind::MissingArea: return "missing area";
    case ViolationKind::CloudWithArea: return "cloud with area";
    case ViolationKind::DuplicateFogInArea: return "duplicate fog in area";
    case ViolationKind::RoleTierMismatch: return "role/tier mismatch";
    case ViolationKind::FogLinkEndpoint: return "fog link endpoint";
    case ViolationKind::SelfLink: return "self link";
    case ViolationKind::NonpositiveServiceRate: return "nonpositive service rate";
    case ViolationKind::InvalidSpec: return "invalid spec";
    }
    return "?";
}

DeviceSpec default_fog_spec(double power_idle_mw)
{
    // 1024 MB is the RAM figure; the 4 GB flash is not modelled.
    return DeviceSpec{500, 2, 1024, 199.0, power_idle_mw};
}

DeviceSpec default_cloud_spec(double power_idle_mw)
{
    return DeviceSpec{2400, 8, 16384, 489.0, power_idle_mw};
}

DeviceSpec default_device_spec(double power_idle_mw)
{
    return DeviceSpec{100, 1, 1, 1.0, power_idle_mw};
}

Topology::Topology(std::vector<Node> nodes, std::vector<FogLink> fog_links, TopologyMode mode)
    : nodes_(std::move(nodes)), links_(std::move(fog_links)), mode_(mode)
{
    std::sort(links_.begin(), links_.end());
    links_.erase(std::unique(links_.begin(), links_.end()), links_.end());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        index_.emplace(nodes_[i].id, i);  // first occurrence wins on duplicates
        if (nodes_[i].tier == Tier::Cloud && !cloud_)
            cloud_ = nodes_[i].id;
    }
}

Topology Topology::with_mode(TopologyMode mode) const
{
    Topology copy = *this;
    copy.mode_ = mode;
    return copy;
}

const Node* Topology::find(NodeId id) const noexcept
{
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &nodes_[it->second];
}

const Node& Topology::at(NodeId id) const
{
    if (const Node* n = find(id))
        return *n;
    throw Error(ErrorCode::UnknownNode, "unknown node " + std::to_string(id.value));
}

std::optional<NodeId> Topology::fog_of_area(FogAreaId area) const noexcept
{
    std::optional<NodeId> best;
    for (const auto& n : nodes_) {
        if (n.tier == Tier::Fog && n.area == area && (!best || n.id < *best))
            best = n.id;
    }
    return best;
}

std::optional<NodeId> Topology::owning_fog(NodeId device) const noexcept
{
    const Node* n = find(device);
    if (!n || n->tier != Tier::Device || !n->area)
        return std::nullopt;
    return fog_of_area(*n->area);
}

bool Topology::linked(NodeId a, NodeId b) const noexcept
{
    return std::binary_search(links_.begin(), links_.end(), FogLink(a, b));
}

namespace {

bool role_fits_tier(Tier tier, DeviceRole role)
{
    switch (tier) {
    case Tier::Fog:
        return role == DeviceRole::Gateway || role == DeviceRole::Computing;
    case Tier::Device:
        return role == DeviceRole::Sensor || role == DeviceRole::Actuator
            || role == DeviceRole::Connecting;
    case Tier::Cloud:
        return true;
    }
    return false;
}

bool spec_ok(const DeviceSpec& s)
{
    return s.cpu_mhz > 0 && s.cores > 0 && s.memory_mb > 0
        && std::isfinite(s.power_active_mw) && s.power_active_mw > 0
        && std::isfinite(s.power_idle_mw) && s.power_idle_mw >= 0
        && s.power_idle_mw <= s.power_active_mw;
}

std::string id_str(NodeId id) { return std::to_string(id.value); }

} // namespace

ValidationReport validate_topology(const Topology& t)
{
    ValidationReport report;
    auto add = [&](ViolationKind kind, std::vector<NodeId> subjects, std::string msg) {
        report.push_back(Violation{kind, std::move(subjects), std::move(msg)});
    };

    std::vector<NodeId> clouds;
    std::map<NodeId, int> seen;
    for (const auto& n : t.nodes()) {
        if (n.tier == Tier::Cloud)
            clouds.push_back(n.id);
        if (++seen[n.id] == 2)
            add(ViolationKind::DuplicateNodeId, {n.id}, "node id " + id_str(n.id) + " is defined more than once");
    }
    if (clouds.size() != 1)
        add(ViolationKind::CloudCardinality, clouds,
            "expected exactly one cloud node, found " + std::to_string(clouds.size()));

    for (const auto& n : t.nodes()) {
        if (!role_fits_tier(n.tier, n.role))
            add(ViolationKind::RoleTierMismatch, {n.id},
                std::string("node ") + id_str(n.id) + " has role " + to_string(n.role)
                    + " which is not allowed on the " + to_string(n.tier) + " tier");
        if (!(n.service_rate_per_s > 0) || !std::isfinite(n.service_rate_per_s))
            add(ViolationKind::NonpositiveServiceRate, {n.id},
                "node " + id_str(n.id) + " has a nonpositive service rate");
        if (!spec_ok(n.spec))
            add(ViolationKind::InvalidSpec, {n.id}, "node " + id_str(n.id) + " has an invalid device spec");
        if (n.tier == Tier::Cloud && n.area)
            add(ViolationKind::CloudWithArea, {n.id}, "cloud node " + id_str(n.id) + " must not belong to an area");
    }

    if (t.mode() == TopologyMode::FogAugmented) {
        std::map<FogAreaId, std::vector<NodeId>> fogs_by_area;
        for (const auto& n : t.nodes()) {
            if (n.tier == Tier::Fog) {
                if (n.area)
                    fogs_by_area[*n.area].push_back(n.id);
                else
                    add(ViolationKind::MissingArea, {n.id}, "fog node " + id_str(n.id) + " has no area");
            }
        }
        for (const auto& [area, fogs] : fogs_by_area) {
            if (fogs.size() > 1)
                add(ViolationKind::DuplicateFogInArea, fogs,
                    "area " + std::to_string(area.value) + " has " + std::to_string(fogs.size()) + " fog nodes");
        }
        for (const auto& n : t.nodes()) {
            if (n.tier != Tier::Device)
                continue;
            if (!n.area) {
                add(ViolationKind::MissingArea, {n.id}, "device " + id_str(n.id) + " has no area");
            } else if (!fogs_by_area.contains(*n.area)) {
                add(ViolationKind::OrphanArea, {n.id},
                    "orphan area: area " + std::to_string(n.area->value) + " of device " + id_str(n.id)
                        + " has no fog node");
            }
        }
    }

    for (const auto& link : t.fog_links()) {
        if (link.a == link.b) {
            add(ViolationKind::SelfLink, {link.a}, "fog link from " + id_str(link.a) + " to itself");
            continue;
        }
        for (NodeId end : {link.a, link.b}) {
            const Node* n = t.find(end);
            if (!n || n->tier != Tier::Fog)
                add(ViolationKind::FogLinkEndpoint, {link.a, link.b},
                    "fog link " + id_str(link.a) + "-" + id_str(link.b) + " references non-fog node " + id_str(end));
        }
    }
    return report;
}

} // namespace foggrid
