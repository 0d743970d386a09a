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


#ifndef FOGGRID_ANALYTIC_HPP
#define FOGGRID_ANALYTIC_HPP

#include "foggrid/topology.hpp"

#include <cstdint>

namespace foggrid {

/// Steady-state M/M/1 figures. wait_s is the sojourn time (queueing plus
/// service).
struct Mm1Metrics {
    double wait_s = 0.0;
    double in_system = 0.0;
    double utilization = 0.0;
};

/// W = 1/(mu - lambda), L = lambda W, rho = lambda/mu.
/// Throws Error(Unstable) when lambda >= mu and Error(InvalidArgument) when
/// mu <= 0 or lambda < 0.
Mm1Metrics mm1_analytic(double lambda, double mu);

/// The service rate whose M/M/1 sojourn time at arrival rate lambda is
/// target_wait_s: mu = 1/target + lambda. Throws Error(NonpositiveTarget).
double calibrate_service_rate(double target_wait_s, double lambda);

/// Post-warmup statistics of one node.
struct QueueStats {
    NodeId node;
    double lambda_hat = 0.0;      // observed arrivals per second
    double mean_wait_s = 0.0;     // mean sojourn time W
    double mean_in_system = 0.0;  // time-average number in system L
    double utilization = 0.0;     // busy fraction
    std::uint64_t samples = 0;    // completed sojourns behind mean_wait_s
};

/// |L - lambda_hat W| / max(L, 1e-12).
double littles_law_residual(const QueueStats& s) noexcept;

} // namespace foggrid

#endif // FOGGRID_ANALYTIC_HPP
