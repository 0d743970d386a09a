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


#include "foggrid/message_fabric.hpp"

#include "foggrid/error.hpp"
#include "fnv1a.hpp"

#include <algorithm>

namespace foggrid {

const char* to_string(DataClass cls) noexcept
{
    return cls == DataClass::Private ? "private" : "public";
}

const char* to_string(RoutePattern p) noexcept
{
    switch (p) {
    case RoutePattern::ComA: return "ComA";
    case RoutePattern::ComB: return "ComB";
    case RoutePattern::ComC: return "ComC";
    case RoutePattern::ComD: return "ComD";
    case RoutePattern::CloudDirect: return "CloudDirect";
    }
    return "?";
}

ClassificationTable ClassificationTable::defaults()
{
    using namespace payload_kinds;
    return ClassificationTable({
        {MeterReading, DataClass::Private},
        {BillingRecord, DataClass::Private},
        {IdentityToken, DataClass::Private},
        {ChargeRequest, DataClass::Private},
        {GridTelemetry, DataClass::Public},
    });
}

DataClass classify(const Payload& p, const ClassificationTable& table)
{
    auto it = table.entries().find(p.kind);
    if (it == table.entries().end())
        throw Error(ErrorCode::UnknownKind, "payload kind '" + p.kind + "' is not in the classification table");
    return it->second;
}

SealedEnvelope seal(Payload p, std::set<NodeId> keyholders, const Topology& t)
{
    if (keyholders.empty())
        throw Error(ErrorCode::EmptyKeyholders, "cannot seal a payload for nobody");
    for (NodeId k : keyholders) {
        const Node& n = t.at(k);
        if (n.tier == Tier::Fog)
            throw Error(ErrorCode::FogKeyholderForbidden,
                        "fog node " + std::to_string(k.value) + " cannot hold a key for private data");
    }
    std::uint64_t tag = detail::fnv1a(p.kind);
    tag = detail::fnv1a(p.body, tag);
    for (NodeId k : keyholders)
        tag = detail::fnv1a(std::to_string(k.value) + ",", tag);
    return SealedEnvelope(std::move(p), std::move(keyholders), tag);
}

Payload unseal(const SealedEnvelope& e, NodeId opener)
{
    if (!e.keyholders_.contains(opener))
        throw Error(ErrorCode::NotKeyholder, "node " + std::to_string(opener.value) + " is not a keyholder");
    return e.inner_;
}

std::uint64_t Message::bytes_size() const noexcept
{
    if (const auto* p = std::get_if<Payload>(&content))
        return p->bytes_size;
    return std::get<SealedEnvelope>(content).bytes_size();
}

Message make_message(std::uint64_t id, NodeId src, NodeId dst, Payload p, const ClassificationTable& table,
                     const Topology& t, double created_at)
{
    Message m;
    m.id = id;
    m.src = src;
    m.dst = dst;
    m.created_at = created_at;
    m.cls = classify(p, table);
    if (m.cls == DataClass::Public) {
        m.content = std::move(p);
        return m;
    }
    std::set<NodeId> keys;
    for (NodeId candidate : {src, dst}) {
        if (t.at(candidate).tier != Tier::Fog)
            keys.insert(candidate);
    }
    if (auto cloud = t.cloud_id())
        keys.insert(*cloud);
    m.content = seal(std::move(p), std::move(keys), t);
    return m;
}

namespace {

// Path from a node up to the highest node it reaches without leaving its
// area: a device climbs to its fog server, fog and cloud stay put.
std::vector<NodeId> climb(const Node& n, const Topology& t)
{
    if (n.tier != Tier::Device)
        return {n.id};
    auto fog = t.owning_fog(n.id);
    if (!fog)
        throw Error(ErrorCode::NoRoute, "device " + std::to_string(n.id.value) + " has no fog server");
    return {n.id, *fog};
}

RoutePattern fog_pattern(const std::vector<NodeId>& hops, const Topology& t)
{
    bool fog_fog = false;
    bool any_fog = false;
    for (std::size_t i = 0; i < hops.size(); ++i) {
        Tier tier = t.at(hops[i]).tier;
        if (tier == Tier::Cloud)
            return RoutePattern::ComD;
        if (tier == Tier::Fog) {
            any_fog = true;
            if (i > 0 && t.at(hops[i - 1]).tier == Tier::Fog)
                fog_fog = true;
        }
    }
    if (fog_fog)
        return RoutePattern::ComC;
    return any_fog ? RoutePattern::ComB : RoutePattern::ComA;
}

} // namespace

Route resolve_route(NodeId src, NodeId dst, const Topology& t)
{
    const Node& a = t.at(src);
    const Node& b = t.at(dst);
    if (src == dst)
        throw Error(ErrorCode::InvalidArgument, "route endpoints must differ");

    Route route;
    if (t.mode() == TopologyMode::CloudOnly) {
        auto cloud = t.cloud_id();
        if (!cloud)
            throw Error(ErrorCode::NoRoute, "topology has no cloud node");
        route.pattern = RoutePattern::CloudDirect;
        route.hops.push_back(src);
        if (src != *cloud && dst != *cloud)
            route.hops.push_back(*cloud);
        route.hops.push_back(dst);
        return route;
    }

    if (a.tier == Tier::Device && b.tier == Tier::Device && a.area && a.area == b.area) {
        route.hops = {src, dst};
        route.pattern = RoutePattern::ComA;
        return route;
    }

    std::vector<NodeId> up = climb(a, t);
    std::vector<NodeId> down = climb(b, t);
    std::reverse(down.begin(), down.end());
    NodeId top_a = up.back();
    NodeId top_b = down.front();

    route.hops = up;
    if (top_a == top_b) {
        route.hops.insert(route.hops.end(), down.begin() + 1, down.end());
    } else {
        Tier ta = t.at(top_a).tier;
        Tier tb = t.at(top_b).tier;
        if (!(ta == Tier::Fog && tb == Tier::Fog && t.linked(top_a, top_b))
            && ta != Tier::Cloud && tb != Tier::Cloud) {
            auto cloud = t.cloud_id();
            if (!cloud)
                throw Error(ErrorCode::NoRoute, "topology has no cloud node");
            route.hops.push_back(*cloud);
        }
        route.hops.insert(route.hops.end(), down.begin(), down.end());
    }
    route.pattern = fog_pattern(route.hops, t);
    return route;
}

} // namespace foggrid
