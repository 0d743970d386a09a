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


#include "foggrid/ev_billing.hpp"

#include "foggrid/error.hpp"

namespace foggrid {

std::optional<NodeId> VehicleRegistry::owner_meter(const VehicleId& vehicle) const
{
    auto it = vehicles_.find(vehicle);
    if (it == vehicles_.end())
        return std::nullopt;
    return it->second;
}

std::optional<AccountId> VehicleRegistry::account_of(NodeId meter) const
{
    auto it = meters_.find(meter);
    if (it == meters_.end())
        return std::nullopt;
    return it->second;
}

const char* to_string(SessionState s) noexcept
{
    switch (s) {
    case SessionState::Requested: return "Requested";
    case SessionState::OwnerResolved: return "OwnerResolved";
    case SessionState::Authorized: return "Authorized";
    case SessionState::Charging: return "Charging";
    case SessionState::Metered: return "Metered";
    case SessionState::Billed: return "Billed";
    case SessionState::Rejected: return "Rejected";
    }
    return "?";
}

const char* to_string(RejectReason r) noexcept
{
    switch (r) {
    case RejectReason::None: return "none";
    case RejectReason::UnknownVehicle: return "unknown-vehicle";
    case RejectReason::NoRoute: return "no-route";
    case RejectReason::NotApproved: return "not-approved";
    }
    return "?";
}

bool is_valid_transition(SessionState from, SessionState to) noexcept
{
    using S = SessionState;
    if (to == S::Rejected)
        return from != S::Billed && from != S::Rejected;
    switch (from) {
    case S::Requested: return to == S::OwnerResolved;
    case S::OwnerResolved: return to == S::Authorized;
    case S::Authorized: return to == S::Charging;
    case S::Charging: return to == S::Metered;
    case S::Metered: return to == S::Billed;
    case S::Billed:
    case S::Rejected: return false;
    }
    return false;
}

namespace {

void advance(ChargingSession& s, SessionState to)
{
    if (!is_valid_transition(s.state, to))
        throw Error(ErrorCode::InvalidState, std::string("session ") + std::to_string(s.session_id)
                                                 + ": cannot go from " + to_string(s.state) + " to "
                                                 + to_string(to));
    s.state = to;
    s.history.push_back(to);
}

} // namespace

ChargingSession initiate_session(std::uint64_t session_id, const VehicleId& vehicle, NodeId outlet_meter,
                                 const VehicleRegistry& registry, const Topology& t, double now)
{
    const Node* outlet = t.find(outlet_meter);
    if (!outlet || outlet->tier != Tier::Device)
        throw Error(ErrorCode::UnknownOutlet,
                    "outlet " + std::to_string(outlet_meter.value) + " is not a device-tier meter");
    ChargingSession s;
    s.session_id = session_id;
    s.vehicle_id = vehicle;
    s.outlet_meter = outlet_meter;
    s.owner_meter = registry.owner_meter(vehicle);
    s.started_at = now;
    s.ended_at = now;
    s.history.push_back(SessionState::Requested);
    return s;
}

OwnerResolution resolve_owner(ChargingSession s, const VehicleRegistry& registry, const Topology& t)
{
    if (s.state != SessionState::Requested)
        throw Error(ErrorCode::InvalidState, "owner resolution needs a Requested session");
    auto owner = registry.owner_meter(s.vehicle_id);
    auto account = owner ? registry.account_of(*owner) : std::nullopt;
    if (!owner || !account || !t.contains(*owner))
        return {reject(std::move(s), RejectReason::UnknownVehicle), std::nullopt};

    s.owner_meter = owner;
    s.owner_account = account;
    if (*owner == s.outlet_meter) {
        advance(s, SessionState::OwnerResolved);
        return {std::move(s), std::nullopt};
    }

    Route route;
    try {
        route = resolve_route(s.outlet_meter, *owner, t);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoRoute && e.code() != ErrorCode::UnknownNode)
            throw;
        return {reject(std::move(s), RejectReason::NoRoute), std::nullopt};
    }
    s.route_pattern = route.pattern;
    advance(s, SessionState::OwnerResolved);
    return {std::move(s), std::move(route)};
}

ChargingSession authorize(ChargingSession s, const ApprovalHook& approve)
{
    if (s.state != SessionState::OwnerResolved)
        throw Error(ErrorCode::InvalidState, "authorization needs an OwnerResolved session");
    if (approve && !approve(s))
        return reject(std::move(s), RejectReason::NotApproved);
    advance(s, SessionState::Authorized);
    return s;
}

ChargingSession start_charging(ChargingSession s, double now)
{
    advance(s, SessionState::Charging);
    s.started_at = now;
    return s;
}

ChargingSession meter_energy(ChargingSession s, double delivered_kwh, double now)
{
    if (!(delivered_kwh >= 0))
        throw Error(ErrorCode::NegativeEnergy, "delivered energy must be nonnegative");
    if (s.state == SessionState::Authorized)
        s = start_charging(std::move(s), now);
    advance(s, SessionState::Metered);
    s.energy_kwh = delivered_kwh;
    s.ended_at = now;
    return s;
}

std::pair<ChargingSession, BillRecord> settle_bill(ChargingSession s, double tariff_per_kwh)
{
    if (s.state != SessionState::Metered)
        throw Error(ErrorCode::InvalidState, "billing needs a Metered session");
    if (!(tariff_per_kwh > 0))
        throw Error(ErrorCode::InvalidArgument, "tariff must be positive");
    advance(s, SessionState::Billed);
    BillRecord bill;
    bill.session_id = s.session_id;
    bill.debited_account = s.owner_account.value_or(AccountId{});
    bill.energy_kwh = s.energy_kwh;
    bill.tariff_per_kwh = tariff_per_kwh;
    bill.amount = s.energy_kwh * tariff_per_kwh;
    return {std::move(s), std::move(bill)};
}

ChargingSession reject(ChargingSession s, RejectReason reason)
{
    advance(s, SessionState::Rejected);
    s.reject_reason = reason;
    s.energy_kwh = 0.0;
    return s;
}

} // namespace foggrid
