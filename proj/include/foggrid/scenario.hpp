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


#ifndef FOGGRID_SCENARIO_HPP
#define FOGGRID_SCENARIO_HPP

#include "foggrid/queue_sim.hpp"
#include "foggrid/report.hpp"

#include <filesystem>
#include <optional>
#include <string_view>

namespace foggrid {

/// A validated scenario file. See README.md for the YAML schema.
struct ScenarioConfig {
    Topology topology;
    std::vector<ArrivalProcess> arrivals;
    ClassificationTable classification = ClassificationTable::defaults();
    BillingSetup billing;
    MicrogridSetup microgrid;
    ProcessingModel processing;
    std::uint64_t seed = 1;
    double horizon_s = 1e6;
    double warmup_s = 1e4;
    double propagation_delay_s = 0.0;
};

/// Parses and validates a scenario. Never crashes on malformed input: every
/// problem is reported through ConfigError with its line when known.
ScenarioConfig parse_config(std::string_view text);

/// Reads and parses a file. Throws Error(IoFailure) or ConfigError.
ScenarioConfig load_config(const std::filesystem::path& path);

/// The engine configuration, optionally forcing a topology mode.
RunConfig to_run_config(const ScenarioConfig& cfg, std::optional<TopologyMode> mode = std::nullopt);

RunReport run_scenario(const ScenarioConfig& cfg, std::optional<TopologyMode> mode = std::nullopt);

/// Runs the same workload and seed twice, CloudOnly then FogAugmented; each
/// node keeps its own service rate.
Comparison compare_frameworks(const ScenarioConfig& cfg);

} // namespace foggrid

#endif // FOGGRID_SCENARIO_HPP
