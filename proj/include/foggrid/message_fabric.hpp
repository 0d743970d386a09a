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


#ifndef FOGGRID_MESSAGE_FABRIC_HPP
#define FOGGRID_MESSAGE_FABRIC_HPP

#include "foggrid/topology.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace foggrid {

enum class DataClass : std::uint8_t { Private, Public };

const char* to_string(DataClass cls) noexcept;

/// Application payload kinds are free-form tags so scenarios can add their
/// own; the built-in ones are listed in payload_kinds.
using PayloadKind = std::string;

namespace payload_kinds {
inline const PayloadKind MeterReading = "MeterReading";
inline const PayloadKind BillingRecord = "BillingRecord";
inline const PayloadKind IdentityToken = "IdentityToken";
inline const PayloadKind GridTelemetry = "GridTelemetry";
inline const PayloadKind ChargeRequest = "ChargeRequest";
} // namespace payload_kinds

struct Payload {
    PayloadKind kind;
    std::uint64_t bytes_size = 1;
    std::string body;

    bool operator==(const Payload&) const = default;
};

/// payload kind -> data class.
class ClassificationTable {
public:
    ClassificationTable() = default;
    explicit ClassificationTable(std::map<PayloadKind, DataClass> entries) : entries_(std::move(entries)) {}

    /// Meter readings, billing records, identity tokens and charge requests
    /// are private; grid telemetry is public.
    static ClassificationTable defaults();

    void set(const PayloadKind& kind, DataClass cls) { entries_[kind] = cls; }
    bool contains(const PayloadKind& kind) const { return entries_.contains(kind); }
    const std::map<PayloadKind, DataClass>& entries() const noexcept { return entries_; }

    bool operator==(const ClassificationTable&) const = default;

private:
    std::map<PayloadKind, DataClass> entries_;
};

/// Throws Error(UnknownKind) if the table has no entry for p.kind.
DataClass classify(const Payload& p, const ClassificationTable& table);

/// A payload that only its keyholders can read. There is no cipher: the
/// wrapper hides the payload behind unseal(), which enforces the keyholder
/// set. No fog-tier node is ever a keyholder.
class SealedEnvelope {
public:
    const std::set<NodeId>& keyholders() const noexcept { return keyholders_; }
    std::uint64_t seal_tag() const noexcept { return seal_tag_; }

    /// Size on the wire; visible without opening.
    std::uint64_t bytes_size() const noexcept { return inner_.bytes_size; }

private:
    SealedEnvelope(Payload inner, std::set<NodeId> keyholders, std::uint64_t tag)
        : inner_(std::move(inner)), keyholders_(std::move(keyholders)), seal_tag_(tag) {}

    Payload inner_;
    std::set<NodeId> keyholders_;
    std::uint64_t seal_tag_;

    friend SealedEnvelope seal(Payload p, std::set<NodeId> keyholders, const Topology& t);
    friend Payload unseal(const SealedEnvelope& e, NodeId opener);
};

/// Throws EmptyKeyholders, UnknownNode for ids absent from t, or
/// FogKeyholderForbidden if any keyholder is a fog-tier node.
SealedEnvelope seal(Payload p, std::set<NodeId> keyholders, const Topology& t);

/// Returns the inner payload; throws Error(NotKeyholder) unless opener holds
/// a key.
Payload unseal(const SealedEnvelope& e, NodeId opener);

struct Message {
    std::uint64_t id = 0;
    NodeId src;
    NodeId dst;
    DataClass cls = DataClass::Public;
    std::variant<Payload, SealedEnvelope> content;
    double created_at = 0.0;

    std::uint64_t bytes_size() const noexcept;
};

/// Classifies p and wraps it: private payloads are sealed for
/// {src, dst, cloud} minus any fog node, public ones travel in the clear.
Message make_message(std::uint64_t id, NodeId src, NodeId dst, Payload p, const ClassificationTable& table,
                     const Topology& t, double created_at);

enum class RoutePattern : std::uint8_t { ComA, ComB, ComC, ComD, CloudDirect };

const char* to_string(RoutePattern p) noexcept;

struct Route {
    RoutePattern pattern = RoutePattern::ComA;
    std::vector<NodeId> hops;

    bool operator==(const Route&) const = default;
};

/// Tier-respecting route between two distinct nodes.
///
/// CloudOnly mode always goes through the cloud (CloudDirect). In
/// FogAugmented mode devices of one area talk directly (ComA), a device and
/// its own fog server talk directly (ComB), linked fog servers exchange data
/// over their link (ComC) and anything else climbs to the cloud through the
/// fog servers on both sides (ComD). The pattern names the highest-level edge
/// the route uses.
///
/// Throws Error(UnknownNode), Error(InvalidArgument) when src == dst, and
/// Error(NoRoute) when an endpoint's area has no fog server.
Route resolve_route(NodeId src, NodeId dst, const Topology& t);

} // namespace foggrid

#endif // FOGGRID_MESSAGE_FABRIC_HPP
