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


#ifndef FOGGRID_TOPOLOGY_HPP
#define FOGGRID_TOPOLOGY_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace foggrid {

/// Hierarchy level of a node. The numeric order is the routing order:
/// Device < Fog < Cloud.
enum class Tier : std::uint8_t { Device = 0, Fog = 1, Cloud = 2 };

enum class DeviceRole : std::uint8_t { Connecting, Gateway, Sensor, Actuator, Computing };

enum class TopologyMode : std::uint8_t { CloudOnly, FogAugmented };

const char* to_string(Tier tier) noexcept;
const char* to_string(DeviceRole role) noexcept;
const char* to_string(TopologyMode mode) noexcept;

struct NodeId {
    std::uint32_t value = 0;
    auto operator<=>(const NodeId&) const = default;
};

struct FogAreaId {
    std::uint32_t value = 0;
    auto operator<=>(const FogAreaId&) const = default;
};

/// Hardware description of a node. Only the power figures feed the
/// simulation; the rest is descriptive.
struct DeviceSpec {
    std::uint32_t cpu_mhz = 1;
    std::uint32_t cores = 1;
    std::uint32_t memory_mb = 1;
    double power_active_mw = 1.0;
    double power_idle_mw = 0.0;

    bool operator==(const DeviceSpec&) const = default;
};

/// Dual-core 500 MHz Atom fog gateway drawing 199 mW when active.
DeviceSpec default_fog_spec(double power_idle_mw = 0.0);

/// Cloud server drawing 489 mW when active.
DeviceSpec default_cloud_spec(double power_idle_mw = 0.0);

/// Smart meter / sensor class device (100 MHz microcontroller).
DeviceSpec default_device_spec(double power_idle_mw = 0.0);

struct Node {
    NodeId id;
    Tier tier = Tier::Device;
    DeviceRole role = DeviceRole::Sensor;
    std::optional<FogAreaId> area;  // never set on the cloud node
    DeviceSpec spec;
    double service_rate_per_s = 1.0;  // mu; only fog and cloud nodes queue
};

/// Unordered pair of fog nodes. Stored normalized (a <= b).
struct FogLink {
    NodeId a;
    NodeId b;

    FogLink() = default;
    FogLink(NodeId x, NodeId y) : a(x < y ? x : y), b(x < y ? y : x) {}
    auto operator<=>(const FogLink&) const = default;
};

} // namespace foggrid

template <>
struct std::hash<foggrid::NodeId> {
    std::size_t operator()(foggrid::NodeId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};

namespace foggrid {

/// Immutable tiered network. Construction never fails, so ill-formed values
/// can exist and be reported by validate_topology(); lookups that need a
/// well-formed topology throw Error(UnknownNode / NoRoute) instead.
class Topology {
public:
    Topology() = default;
    Topology(std::vector<Node> nodes, std::vector<FogLink> fog_links, TopologyMode mode);

    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    const std::vector<FogLink>& fog_links() const noexcept { return links_; }
    TopologyMode mode() const noexcept { return mode_; }

    /// Same nodes and links, different operating mode.
    Topology with_mode(TopologyMode mode) const;

    const Node* find(NodeId id) const noexcept;
    const Node& at(NodeId id) const;  // throws Error(UnknownNode)
    bool contains(NodeId id) const noexcept { return find(id) != nullptr; }

    /// The first cloud node, if any.
    std::optional<NodeId> cloud_id() const noexcept { return cloud_; }

    /// The fog node serving an area (the lowest id if the topology is
    /// ill-formed and has several).
    std::optional<NodeId> fog_of_area(FogAreaId area) const noexcept;

    /// Owning fog node of a device-tier node in FogAugmented mode.
    std::optional<NodeId> owning_fog(NodeId device) const noexcept;

    bool linked(NodeId a, NodeId b) const noexcept;

private:
    std::vector<Node> nodes_;
    std::vector<FogLink> links_;
    TopologyMode mode_ = TopologyMode::FogAugmented;
    std::unordered_map<NodeId, std::size_t> index_;
    std::optional<NodeId> cloud_;
};

enum class ViolationKind : std::uint8_t {
    CloudCardinality,
    DuplicateNodeId,
    OrphanArea,
    MissingArea,
    CloudWithArea,
    DuplicateFogInArea,
    RoleTierMismatch,
    FogLinkEndpoint,
    SelfLink,
    NonpositiveServiceRate,
    InvalidSpec,
};

const char* to_string(ViolationKind kind) noexcept;

struct Violation {
    ViolationKind kind;
    std::vector<NodeId> subjects;
    std::string message;

    bool operator==(const Violation&) const = default;
};

using ValidationReport = std::vector<Violation>;

/// Every invariant violation of the topology, in a deterministic order.
/// Empty iff the topology is well formed.
ValidationReport validate_topology(const Topology& t);

} // namespace foggrid

#endif // FOGGRID_TOPOLOGY_HPP
