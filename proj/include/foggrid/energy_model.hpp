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


#ifndef FOGGRID_ENERGY_MODEL_HPP
#define FOGGRID_ENERGY_MODEL_HPP

#include "foggrid/topology.hpp"

#include <cstdint>

namespace foggrid {

/// Per-node energy account. energy_mj is kept in extended precision so that
/// ledgers with equal durations keep the exact ratio of their power figures.
struct EnergyLedger {
    NodeId node;
    double active_time_s = 0.0;
    double idle_time_s = 0.0;
    long double energy_mj = 0.0L;

    double energy() const noexcept { return static_cast<double>(energy_mj); }
};

/// Adds active_s at the active power and idle_s at the idle power
/// (mW x s = mJ). Throws Error(NegativeDuration).
EnergyLedger accrue_energy(EnergyLedger ledger, const DeviceSpec& spec, double active_s, double idle_s);

/// energy(a) / energy(b), rounded once from the extended-precision values.
double energy_ratio(const EnergyLedger& a, const EnergyLedger& b) noexcept;

/// T(n) = c_ms * n * log2(n) milliseconds.
struct ProcessingModel {
    double c_ms = 1.0;
};

/// Throws Error(NonpositiveN) for n == 0 and Error(InvalidArgument) for
/// c_ms <= 0. T(1) == 0.
double processing_time(const ProcessingModel& m, std::uint64_t n);

struct BessState {
    double capacity_kwh = 0.0;
    double soc_kwh = 0.0;
    double efficiency = 1.0;  // charge efficiency in (0, 1]

    bool operator==(const BessState&) const = default;
};

/// Stores energy_kwh * efficiency. Throws Error(OverCapacity) when the
/// stored energy would exceed capacity, Error(NegativeEnergy) for negative
/// input.
BessState bess_charge(BessState b, double energy_kwh);

/// Removes energy_kwh. Throws Error(Underflow) when soc would go negative,
/// Error(NegativeEnergy) for negative input.
BessState bess_discharge(BessState b, double energy_kwh);

enum class MicrogridMode : std::uint8_t { GridConnected, Autonomous };

const char* to_string(MicrogridMode mode) noexcept;

/// Islands when the grid is lost and resynchronises when it returns.
constexpr MicrogridMode mode_transition(MicrogridMode /*current*/, bool grid_available) noexcept
{
    return grid_available ? MicrogridMode::GridConnected : MicrogridMode::Autonomous;
}

} // namespace foggrid

#endif // FOGGRID_ENERGY_MODEL_HPP
