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


#include "foggrid/energy_model.hpp"

#include "foggrid/error.hpp"

#include <cmath>
#include <string>

namespace foggrid {

const char* to_string(MicrogridMode mode) noexcept
{
    return mode == MicrogridMode::GridConnected ? "grid-connected" : "autonomous";
}

EnergyLedger accrue_energy(EnergyLedger ledger, const DeviceSpec& spec, double active_s, double idle_s)
{
    if (!(active_s >= 0) || !(idle_s >= 0))
        throw Error(ErrorCode::NegativeDuration, "durations must be nonnegative");
    ledger.active_time_s += active_s;
    ledger.idle_time_s += idle_s;
    ledger.energy_mj += static_cast<long double>(active_s) * spec.power_active_mw
        + static_cast<long double>(idle_s) * spec.power_idle_mw;
    return ledger;
}

double energy_ratio(const EnergyLedger& a, const EnergyLedger& b) noexcept
{
    return static_cast<double>(a.energy_mj / b.energy_mj);
}

double processing_time(const ProcessingModel& m, std::uint64_t n)
{
    if (n == 0)
        throw Error(ErrorCode::NonpositiveN, "data-set size must be at least 1");
    if (!(m.c_ms > 0) || !std::isfinite(m.c_ms))
        throw Error(ErrorCode::InvalidArgument, "c_ms must be positive");
    const double size = static_cast<double>(n);
    return m.c_ms * (size * std::log2(size));
}

BessState bess_charge(BessState b, double energy_kwh)
{
    if (!(energy_kwh >= 0))
        throw Error(ErrorCode::NegativeEnergy, "charge energy must be nonnegative");
    const double next = b.soc_kwh + energy_kwh * b.efficiency;
    if (next > b.capacity_kwh)
        throw Error(ErrorCode::OverCapacity,
                    "charging " + std::to_string(energy_kwh) + " kWh exceeds capacity "
                        + std::to_string(b.capacity_kwh) + " kWh");
    b.soc_kwh = next;
    return b;
}

BessState bess_discharge(BessState b, double energy_kwh)
{
    if (!(energy_kwh >= 0))
        throw Error(ErrorCode::NegativeEnergy, "discharge energy must be nonnegative");
    if (energy_kwh > b.soc_kwh)
        throw Error(ErrorCode::Underflow,
                    "discharging " + std::to_string(energy_kwh) + " kWh from " + std::to_string(b.soc_kwh)
                        + " kWh; fall back to grid supply");
    b.soc_kwh -= energy_kwh;
    return b;
}

} // namespace foggrid
