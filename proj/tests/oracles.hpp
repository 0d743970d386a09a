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


#ifndef FOGGRID_TESTS_ORACLES_HPP
#define FOGGRID_TESTS_ORACLES_HPP

// Reference implementations that share no code with the library, used to
// cross-check it.

#include "foggrid/message_fabric.hpp"
#include "foggrid/topology.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace foggrid::oracle {

/// Undirected adjacency of the tier-constrained communication graph.
///
/// FogAugmented: devices of one area are adjacent, each device is adjacent
/// to the fog node of its area, linked fog nodes are adjacent and every fog
/// node is adjacent to the cloud. CloudOnly: every node is adjacent to the
/// cloud and nothing else.
inline std::map<NodeId, std::set<NodeId>> adjacency(const Topology& t)
{
    std::map<NodeId, std::set<NodeId>> adj;
    auto connect = [&](NodeId a, NodeId b) {
        adj[a].insert(b);
        adj[b].insert(a);
    };
    for (const Node& n : t.nodes())
        adj[n.id];
    NodeId cloud{};
    for (const Node& n : t.nodes())
        if (n.tier == Tier::Cloud)
            cloud = n.id;

    if (t.mode() == TopologyMode::CloudOnly) {
        for (const Node& n : t.nodes())
            if (n.id != cloud)
                connect(n.id, cloud);
        return adj;
    }
    for (const Node& a : t.nodes()) {
        for (const Node& b : t.nodes()) {
            if (!(a.id < b.id))
                continue;
            const bool same_area = a.area && b.area && *a.area == *b.area;
            if (a.tier == Tier::Device && b.tier == Tier::Device && same_area)
                connect(a.id, b.id);
            if (same_area && ((a.tier == Tier::Device && b.tier == Tier::Fog)
                              || (a.tier == Tier::Fog && b.tier == Tier::Device)))
                connect(a.id, b.id);
            if ((a.tier == Tier::Fog && b.tier == Tier::Cloud) || (a.tier == Tier::Cloud && b.tier == Tier::Fog))
                connect(a.id, b.id);
        }
    }
    for (const FogLink& l : t.fog_links())
        connect(l.a, l.b);
    return adj;
}

inline Tier tier_of(const Topology& t, NodeId id)
{
    for (const Node& n : t.nodes())
        if (n.id == id)
            return n.tier;
    return Tier::Device;
}

/// Tier sequence rises (weakly) and then falls (weakly).
inline bool up_then_down(const Topology& t, const std::vector<NodeId>& hops)
{
    std::size_t i = 1;
    while (i < hops.size() && tier_of(t, hops[i - 1]) <= tier_of(t, hops[i]))
        ++i;
    while (i < hops.size() && tier_of(t, hops[i - 1]) >= tier_of(t, hops[i]))
        ++i;
    return i >= hops.size();
}

inline RoutePattern pattern_of(const Topology& t, const std::vector<NodeId>& hops)
{
    if (t.mode() == TopologyMode::CloudOnly)
        return RoutePattern::CloudDirect;
    int highest = 0;  // 0 device-device, 1 device-fog, 2 fog-fog, 3 touches cloud
    for (std::size_t i = 1; i < hops.size(); ++i) {
        const Tier a = tier_of(t, hops[i - 1]);
        const Tier b = tier_of(t, hops[i]);
        int level = 0;
        if (a == Tier::Cloud || b == Tier::Cloud)
            level = 3;
        else if (a == Tier::Fog && b == Tier::Fog)
            level = 2;
        else if (a == Tier::Fog || b == Tier::Fog)
            level = 1;
        highest = std::max(highest, level);
    }
    static constexpr RoutePattern by_level[] = {RoutePattern::ComA, RoutePattern::ComB, RoutePattern::ComC,
                                                RoutePattern::ComD};
    return by_level[highest];
}

inline std::size_t fog_fog_edges(const Topology& t, const std::vector<NodeId>& hops)
{
    std::size_t n = 0;
    for (std::size_t i = 1; i < hops.size(); ++i)
        n += tier_of(t, hops[i - 1]) == Tier::Fog && tier_of(t, hops[i]) == Tier::Fog ? 1 : 0;
    return n;
}

/// Enumerates simple tier-respecting paths from src to dst by iterative
/// deepening and keeps the best: fewest hops, then fewest fog-fog edges,
/// then the lexicographically smallest hop list. Every path of the first
/// length that reaches dst is visited.
inline std::optional<Route> brute_force_route(NodeId src, NodeId dst, const Topology& t)
{
    const auto adj = adjacency(t);
    std::optional<std::vector<NodeId>> best;
    std::vector<NodeId> path{src};
    std::set<NodeId> seen{src};

    auto better = [&](const std::vector<NodeId>& cand) {
        if (!best)
            return true;
        if (cand.size() != best->size())
            return cand.size() < best->size();
        const auto fc = fog_fog_edges(t, cand);
        const auto fb = fog_fog_edges(t, *best);
        if (fc != fb)
            return fc < fb;
        return cand < *best;
    };

    std::size_t limit = 0;
    auto dfs = [&](auto&& self) -> void {
        const NodeId here = path.back();
        if (here == dst) {
            if (up_then_down(t, path) && better(path))
                best = path;
            return;
        }
        if (path.size() == limit)
            return;
        for (NodeId next : adj.at(here)) {
            if (seen.contains(next))
                continue;
            path.push_back(next);
            if (up_then_down(t, path)) {
                seen.insert(next);
                self(self);
                seen.erase(next);
            }
            path.pop_back();
        }
    };
    for (limit = 2; !best && limit <= adj.size(); ++limit)
        dfs(dfs);
    if (!best)
        return std::nullopt;
    return Route{pattern_of(t, *best), *best};
}

/// Random well-formed topology with at most max_nodes nodes: one cloud, one
/// fog node per area, devices spread over the areas, random fog links.
inline Topology random_topology(std::mt19937_64& rng, std::size_t max_nodes, TopologyMode mode)
{
    std::uniform_int_distribution<std::size_t> fog_count(1, std::min<std::size_t>(6, max_nodes - 1));
    const std::size_t fogs = fog_count(rng);
    std::uniform_int_distribution<std::size_t> dev_count(0, max_nodes - 1 - fogs);
    const std::size_t devices = dev_count(rng);

    std::vector<Node> nodes;
    std::uint32_t next_id = 1 + static_cast<std::uint32_t>(rng() % 5);
    auto fresh = [&] {
        next_id += 1 + static_cast<std::uint32_t>(rng() % 3);
        return NodeId{next_id};
    };
    std::vector<NodeId> fog_ids;
    for (std::size_t i = 0; i < fogs; ++i) {
        Node f;
        f.id = fresh();
        f.tier = Tier::Fog;
        f.role = rng() % 2 ? DeviceRole::Gateway : DeviceRole::Computing;
        f.area = FogAreaId{static_cast<std::uint32_t>(i + 1)};
        f.spec = default_fog_spec();
        nodes.push_back(f);
        fog_ids.push_back(f.id);
    }
    for (std::size_t i = 0; i < devices; ++i) {
        Node d;
        d.id = fresh();
        d.tier = Tier::Device;
        d.role = DeviceRole::Sensor;
        d.area = FogAreaId{static_cast<std::uint32_t>(rng() % fogs + 1)};
        d.spec = default_device_spec();
        nodes.push_back(d);
    }
    Node c;
    c.id = fresh();
    c.tier = Tier::Cloud;
    c.role = DeviceRole::Computing;
    c.spec = default_cloud_spec();
    nodes.push_back(c);
    std::shuffle(nodes.begin(), nodes.end(), rng);

    std::vector<FogLink> links;
    for (std::size_t i = 0; i < fog_ids.size(); ++i)
        for (std::size_t j = i + 1; j < fog_ids.size(); ++j)
            if (rng() % 3 == 0)
                links.emplace_back(fog_ids[i], fog_ids[j]);
    return Topology(std::move(nodes), std::move(links), mode);
}

/// W of an M/M/1 queue from first principles: sum over n of the stationary
/// probability (1 - rho) rho^n times the mean time of a job finding n ahead
/// of it, (n + 1) / mu. Truncated once the tail is negligible.
inline long double mm1_wait_series(long double lambda, long double mu)
{
    const long double rho = lambda / mu;
    long double w = 0.0L;
    long double p = 1.0L - rho;
    for (int n = 0; n < 200000 && p > 1e-30L; ++n) {
        w += p * (n + 1) / mu;
        p *= rho;
    }
    return w;
}

} // namespace foggrid::oracle

#endif // FOGGRID_TESTS_ORACLES_HPP
