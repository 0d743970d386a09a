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

#include "foggrid/error.hpp"

#include <algorithm>
#include <cmath>

namespace foggrid {

Mm1Metrics mm1_analytic(double lambda, double mu)
{
    if (!(mu > 0) || !std::isfinite(mu))
        throw Error(ErrorCode::InvalidArgument, "service rate must be positive");
    if (!(lambda >= 0) || !std::isfinite(lambda))
        throw Error(ErrorCode::InvalidArgument, "arrival rate must be nonnegative");
    if (lambda >= mu)
        throw Error(ErrorCode::Unstable, "arrival rate reaches the service rate; the queue diverges");
    Mm1Metrics m;
    m.wait_s = 1.0 / (mu - lambda);
    m.in_system = lambda * m.wait_s;
    m.utilization = lambda / mu;
    return m;
}

double calibrate_service_rate(double target_wait_s, double lambda)
{
    if (!(target_wait_s > 0) || !std::isfinite(target_wait_s))
        throw Error(ErrorCode::NonpositiveTarget, "target waiting time must be positive");
    if (!(lambda >= 0) || !std::isfinite(lambda))
        throw Error(ErrorCode::InvalidArgument, "arrival rate must be nonnegative");
    return 1.0 / target_wait_s + lambda;
}

double littles_law_residual(const QueueStats& s) noexcept
{
    constexpr double eps = 1e-12;
    const double L = s.mean_in_system;
    return std::abs(L - s.lambda_hat * s.mean_wait_s) / std::max(L, eps);
}

} // namespace foggrid
