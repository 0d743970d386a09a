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


#include "foggrid/analytic.hpp"
#include "foggrid/energy_model.hpp"
#include "foggrid/error.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace foggrid {
namespace {

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

double rel(double a, double b)
{
    return std::abs(a - b) / std::abs(b);
}

TEST(Mm1, FogCalibrationPoint)
{
    // 1 / (1/35 - 1/60) = 2100 / 25 = 84.
    const auto m = mm1_analytic(1.0 / 60, 1.0 / 35);
    EXPECT_LE(rel(m.wait_s, 84.0), 1e-12);
    EXPECT_LE(rel(m.in_system, 84.0 / 60), 1e-12);
    EXPECT_LE(rel(m.utilization, 35.0 / 60), 1e-12);
}

TEST(Mm1, ZeroArrivals)
{
    const auto m = mm1_analytic(0.0, 1.0 / 35);
    EXPECT_LE(rel(m.wait_s, 35.0), 1e-15);
    EXPECT_EQ(m.in_system, 0.0);
    EXPECT_EQ(m.utilization, 0.0);
}

TEST(Mm1, UnstableAndInvalid)
{
    EXPECT_EQ(code_of([] { mm1_analytic(1.0 / 30, 1.0 / 60); }), ErrorCode::Unstable);
    EXPECT_EQ(code_of([] { mm1_analytic(1.0, 1.0); }), ErrorCode::Unstable);
    EXPECT_EQ(code_of([] { mm1_analytic(0.1, 0.0); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { mm1_analytic(-0.1, 1.0); }), ErrorCode::InvalidArgument);
}

TEST(Mm1, AgreesWithStationarySeries)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> rho(0.05, 0.9);
    std::uniform_real_distribution<double> mu(0.01, 5.0);
    for (int i = 0; i < 50; ++i) {
        const double m = mu(rng);
        const double l = rho(rng) * m;
        const double series = static_cast<double>(oracle::mm1_wait_series(l, m));
        EXPECT_LE(rel(mm1_analytic(l, m).wait_s, series), 1e-9);
    }
}

TEST(Calibrate, Examples)
{
    EXPECT_LE(rel(calibrate_service_rate(84.0, 1.0 / 60), 1.0 / 35), 1e-12);
    EXPECT_LE(rel(calibrate_service_rate(188.0, 1.0 / 60), 1.0 / 188 + 1.0 / 60), 1e-15);
    EXPECT_NEAR(calibrate_service_rate(188.0, 1.0 / 60), 0.0219858, 5e-8);
    EXPECT_EQ(calibrate_service_rate(10.0, 0.0), 0.1);
    EXPECT_EQ(code_of([] { calibrate_service_rate(0.0, 0.1); }), ErrorCode::NonpositiveTarget);
    EXPECT_EQ(code_of([] { calibrate_service_rate(-3.0, 0.1); }), ErrorCode::NonpositiveTarget);
}

TEST(Calibrate, RoundTripsThroughAnalytic)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> target(0.01, 1e4);
    std::uniform_real_distribution<double> lambda(0.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const double w = target(rng);
        const double l = lambda(rng);
        const double mu = calibrate_service_rate(w, l);
        EXPECT_LE(rel(mm1_analytic(l, mu).wait_s, w), 1e-9) << w << ' ' << l;
    }
}

TEST(Littles, Residual)
{
    QueueStats empty;
    EXPECT_EQ(littles_law_residual(empty), 0.0);
    QueueStats exact;
    exact.lambda_hat = 0.25;
    exact.mean_wait_s = 8.0;
    exact.mean_in_system = 2.0;
    EXPECT_EQ(littles_law_residual(exact), 0.0);
    exact.mean_in_system = 2.2;
    EXPECT_NEAR(littles_law_residual(exact), 0.2 / 2.2, 1e-15);
}

TEST(Energy, AccrueExamples)
{
    EnergyLedger l;
    l = accrue_energy(l, default_fog_spec(), 10.0, 0.0);
    EXPECT_EQ(l.energy(), 1990.0);
    EnergyLedger c = accrue_energy(EnergyLedger{}, default_cloud_spec(), 10.0, 0.0);
    EXPECT_EQ(c.energy(), 4890.0);
    EnergyLedger z = accrue_energy(c, default_cloud_spec(), 0.0, 0.0);
    EXPECT_EQ(z.energy_mj, c.energy_mj);
    EXPECT_EQ(z.active_time_s, c.active_time_s);
    EXPECT_EQ(code_of([] { accrue_energy(EnergyLedger{}, default_fog_spec(), -1.0, 0.0); }),
              ErrorCode::NegativeDuration);
    EXPECT_EQ(code_of([] { accrue_energy(EnergyLedger{}, default_fog_spec(), 0.0, -1.0); }),
              ErrorCode::NegativeDuration);
}

TEST(Energy, IdlePower)
{
    EnergyLedger l = accrue_energy(EnergyLedger{}, default_fog_spec(20.0), 3.0, 7.0);
    EXPECT_EQ(l.energy(), 3.0 * 199 + 7.0 * 20);
    EXPECT_EQ(l.idle_time_s, 7.0);
}

TEST(Energy, Additivity)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(0.0, 1e5);
    const DeviceSpec spec = default_fog_spec(37.5);
    for (int i = 0; i < 500; ++i) {
        const double a = d(rng), b = d(rng), c = d(rng), e = d(rng);
        EnergyLedger split = accrue_energy(accrue_energy(EnergyLedger{}, spec, a, b), spec, c, e);
        EnergyLedger whole = accrue_energy(EnergyLedger{}, spec, a + c, b + e);
        EXPECT_LE(rel(split.energy(), whole.energy()), 1e-9);
        EnergyLedger swapped = accrue_energy(accrue_energy(EnergyLedger{}, spec, c, e), spec, a, b);
        EXPECT_LE(rel(split.energy(), swapped.energy()), 1e-12);
    }
}

TEST(Energy, RatioOfDefaultSpecsIsExact)
{
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> d(1e-3, 1e7);
    for (int i = 0; i < 1000; ++i) {
        const double t = d(rng);
        EnergyLedger fog = accrue_energy(EnergyLedger{}, default_fog_spec(), t, 0.0);
        EnergyLedger cloud = accrue_energy(EnergyLedger{}, default_cloud_spec(), t, 0.0);
        EXPECT_EQ(energy_ratio(fog, cloud), 199.0 / 489.0) << t;
    }
}

TEST(Processing, Examples)
{
    EXPECT_EQ(processing_time(ProcessingModel{1.0}, 1), 0.0);
    EXPECT_EQ(processing_time(ProcessingModel{3.7}, 1), 0.0);
    EXPECT_EQ(processing_time(ProcessingModel{1.0}, 1024), 10240.0);
    EXPECT_EQ(processing_time(ProcessingModel{1.0}, 2048) / processing_time(ProcessingModel{1.0}, 1024), 2.2);
    EXPECT_EQ(code_of([] { processing_time(ProcessingModel{1.0}, 0); }), ErrorCode::NonpositiveN);
    EXPECT_EQ(code_of([] { processing_time(ProcessingModel{0.0}, 5); }), ErrorCode::InvalidArgument);
}

TEST(Processing, DoublingRatioForDyadicCoefficients)
{
    // c = k / 2^j keeps both products exact, so the quotient rounds to 2.2.
    for (double k = 1; k <= 4096; k += 1)
        for (double scale : {1.0, 0.5, 0.125, 1.0 / 1024, 8.0}) {
            const ProcessingModel m{k * scale};
            EXPECT_EQ(processing_time(m, 2048) / processing_time(m, 1024), 2.2) << m.c_ms;
        }
}

TEST(Processing, MonotoneAndHomogeneous)
{
    const ProcessingModel one{1.0};
    for (std::uint64_t n = 2; n < 5000; ++n)
        EXPECT_LT(processing_time(one, n), processing_time(one, n + 1));
    for (std::uint64_t n : {2ull, 17ull, 1000ull, 123456ull})
        for (double c : {0.5, 2.0, 7.25})
            EXPECT_LE(rel(processing_time(ProcessingModel{c}, n), c * processing_time(one, n)), 1e-15);
}

TEST(Bess, Examples)
{
    EXPECT_EQ(bess_charge(BessState{10, 5, 1}, 1).soc_kwh, 6.0);
    EXPECT_EQ(code_of([] { bess_discharge(BessState{10, 0.5, 1}, 1); }), ErrorCode::Underflow);
    EXPECT_EQ(code_of([] { bess_charge(BessState{10, 9.5, 1}, 1); }), ErrorCode::OverCapacity);
    EXPECT_EQ(code_of([] { bess_charge(BessState{10, 5, 1}, -1); }), ErrorCode::NegativeEnergy);
    EXPECT_EQ(code_of([] { bess_discharge(BessState{10, 5, 1}, -1); }), ErrorCode::NegativeEnergy);
    EXPECT_EQ(bess_charge(BessState{10, 5, 0.5}, 2).soc_kwh, 6.0);
    EXPECT_EQ(bess_discharge(BessState{10, 5, 0.5}, 2).soc_kwh, 3.0);
}

TEST(Bess, ConservationWithUnitEfficiency)
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> e(0.0, 4.0);
    for (int trial = 0; trial < 100; ++trial) {
        BessState b{50.0, 25.0, 1.0};
        // Integer-valued quarters keep every sum exact.
        double charged = 0, discharged = 0;
        for (int step = 0; step < 200; ++step) {
            const double amount = std::floor(e(rng) * 4) / 4;
            try {
                if (rng() % 2) {
                    b = bess_charge(b, amount);
                    charged += amount;
                } else {
                    b = bess_discharge(b, amount);
                    discharged += amount;
                }
            } catch (const Error&) {
            }
            ASSERT_GE(b.soc_kwh, 0.0);
            ASSERT_LE(b.soc_kwh, b.capacity_kwh);
        }
        EXPECT_EQ(b.soc_kwh, 25.0 + charged - discharged);
    }
}

TEST(Microgrid, ModeTransition)
{
    static_assert(mode_transition(MicrogridMode::GridConnected, false) == MicrogridMode::Autonomous);
    static_assert(mode_transition(MicrogridMode::Autonomous, true) == MicrogridMode::GridConnected);
    static_assert(mode_transition(MicrogridMode::Autonomous, false) == MicrogridMode::Autonomous);
    static_assert(mode_transition(MicrogridMode::GridConnected, true) == MicrogridMode::GridConnected);
    EXPECT_STREQ(to_string(MicrogridMode::Autonomous), "autonomous");
}

} // namespace
} // namespace foggrid
