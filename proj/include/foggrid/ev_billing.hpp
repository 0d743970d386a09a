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


#ifndef FOGGRID_EV_BILLING_HPP
#define FOGGRID_EV_BILLING_HPP

#include "foggrid/message_fabric.hpp"
#include "foggrid/topology.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace foggrid {

using AccountId = std::string;
using VehicleId = std::string;

struct MeterIdentity {
    NodeId meter;
    AccountId owner_account;
};

/// Vehicle -> home meter, and meter -> account.
class VehicleRegistry {
public:
    void add_meter(NodeId meter, AccountId account) { meters_[meter] = std::move(account); }
    void add_vehicle(VehicleId vehicle, NodeId owner_meter) { vehicles_[std::move(vehicle)] = owner_meter; }

    std::optional<NodeId> owner_meter(const VehicleId& vehicle) const;
    std::optional<AccountId> account_of(NodeId meter) const;

    const std::map<NodeId, AccountId>& meters() const noexcept { return meters_; }
    const std::map<VehicleId, NodeId>& vehicles() const noexcept { return vehicles_; }

private:
    std::map<NodeId, AccountId> meters_;
    std::map<VehicleId, NodeId> vehicles_;
};

enum class SessionState : std::uint8_t {
    Requested,
    OwnerResolved,
    Authorized,
    Charging,
    Metered,
    Billed,
    Rejected,
};

const char* to_string(SessionState s) noexcept;

/// True for the edges of the session state machine (including any
/// pre-Billed state -> Rejected).
bool is_valid_transition(SessionState from, SessionState to) noexcept;

enum class RejectReason : std::uint8_t { None, UnknownVehicle, NoRoute, NotApproved };

const char* to_string(RejectReason r) noexcept;

struct ChargingSession {
    std::uint64_t session_id = 0;
    VehicleId vehicle_id;
    NodeId outlet_meter;
    std::optional<NodeId> owner_meter;
    std::optional<AccountId> owner_account;
    SessionState state = SessionState::Requested;
    RejectReason reject_reason = RejectReason::None;
    std::optional<RoutePattern> route_pattern;
    double energy_kwh = 0.0;
    double started_at = 0.0;
    double ended_at = 0.0;
    std::vector<SessionState> history;  // every state entered, in order
};

struct BillRecord {
    std::uint64_t session_id = 0;
    AccountId debited_account;
    double energy_kwh = 0.0;
    double amount = 0.0;
    double tariff_per_kwh = 0.0;
};

/// Opens a session at a device-tier outlet. owner_meter is filled in early
/// when the registry already knows the vehicle; the authoritative lookup is
/// resolve_owner. Throws Error(UnknownOutlet).
ChargingSession initiate_session(std::uint64_t session_id, const VehicleId& vehicle, NodeId outlet_meter,
                                 const VehicleRegistry& registry, const Topology& t, double now);

struct OwnerResolution {
    ChargingSession session;
    std::optional<Route> request_route;  // empty when rejected or self-charging
};

/// Looks the vehicle up and routes the private ChargeRequest from the outlet
/// to the owner's meter. An unknown vehicle or an unreachable meter moves the
/// session to Rejected instead of throwing. Throws Error(InvalidState) unless
/// the session is Requested.
OwnerResolution resolve_owner(ChargingSession s, const VehicleRegistry& registry, const Topology& t);

/// Called before authorization; returning false rejects the session.
using ApprovalHook = std::function<bool(const ChargingSession&)>;

/// OwnerResolved -> Authorized (or Rejected when the hook declines).
ChargingSession authorize(ChargingSession s, const ApprovalHook& approve = {});

/// Authorized -> Charging.
ChargingSession start_charging(ChargingSession s, double now);

/// Authorized or Charging -> Metered with delivered_kwh on the meter.
/// Throws Error(NegativeEnergy) or Error(InvalidState).
ChargingSession meter_energy(ChargingSession s, double delivered_kwh, double now);

/// Metered -> Billed; the bill always debits the vehicle owner's account.
/// Throws Error(InvalidState) or Error(InvalidArgument) for tariff <= 0.
std::pair<ChargingSession, BillRecord> settle_bill(ChargingSession s, double tariff_per_kwh);

/// Any state before Billed -> Rejected with zero energy.
ChargingSession reject(ChargingSession s, RejectReason reason);

} // namespace foggrid

#endif // FOGGRID_EV_BILLING_HPP
