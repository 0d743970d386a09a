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


#include "foggrid/error.hpp"
#include "foggrid/scenario.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace foggrid {
namespace {

const char* minimal = R"(
topology:
  nodes:
    - {id: 1, tier: device, area: 1}
    - {id: 2, tier: fog, area: 1, service_rate_per_s: 2}
    - {id: 3, tier: cloud, service_rate_per_s: 4}
workload:
  arrivals:
    - {source: 1, rate_per_s: 1, payload_kind: GridTelemetry, size_bytes: 32}
run:
  horizon_s: 1000
)";

ConfigError parse_error(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e;
    }
    ADD_FAILURE() << "parsed without error:\n" << text;
    return ConfigError({});
}

std::string replace(std::string text, const std::string& from, const std::string& to)
{
    const auto pos = text.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    return text.replace(pos, from.size(), to);
}

TEST(Scenario, MinimalConfig)
{
    const ScenarioConfig cfg = parse_config(minimal);
    EXPECT_EQ(cfg.topology.nodes().size(), 3u);
    EXPECT_EQ(cfg.topology.mode(), TopologyMode::FogAugmented);
    ASSERT_EQ(cfg.arrivals.size(), 1u);
    EXPECT_FALSE(cfg.arrivals[0].target);
    EXPECT_EQ(cfg.horizon_s, 1000.0);
    EXPECT_EQ(cfg.warmup_s, 10.0);  // 1% of the horizon
    EXPECT_EQ(cfg.seed, 1u);
    EXPECT_EQ(cfg.topology.at(NodeId{2}).role, DeviceRole::Gateway);
    EXPECT_EQ(cfg.topology.at(NodeId{2}).spec, default_fog_spec());
}

TEST(Scenario, MissingCloudIsInvalidTopology)
{
    auto e = parse_error(replace(minimal, "    - {id: 3, tier: cloud, service_rate_per_s: 4}\n", ""));
    EXPECT_EQ(e.code(), ErrorCode::InvalidTopology);
    EXPECT_NE(std::string(e.what()).find("cloud cardinality"), std::string::npos);
}

TEST(Scenario, UndefinedSessionMeterIsDangling)
{
    std::string text = replace(minimal, "workload:\n", R"(workload:
  meters: [{meter: 1, account: home}]
  vehicles: [{vehicle_id: ev, owner_meter: 1}]
  sessions:
    - {vehicle_id: ev, outlet_meter: 42, start_s: 5, duration_s: 10, energy_kwh: 1}
)");
    auto e = parse_error(text);
    EXPECT_EQ(e.code(), ErrorCode::DanglingReference);
    ASSERT_EQ(e.issues().size(), 1u);
    EXPECT_EQ(e.issues()[0].line, 11);
}

TEST(Scenario, SchemaErrorsCarryLines)
{
    auto e = parse_error(replace(minimal, "service_rate_per_s: 2", "service_rate_per_s: fast"));
    EXPECT_EQ(e.code(), ErrorCode::SchemaError);
    EXPECT_EQ(e.issues()[0].line, 5);
    EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos);

    auto unknown = parse_error(replace(minimal, "horizon_s: 1000", "horizon_s: 1000\n  colour: blue"));
    EXPECT_NE(std::string(unknown.what()).find("colour"), std::string::npos);

    auto missing_tier = parse_error(replace(minimal, "{id: 1, tier: device, area: 1}", "{id: 1, area: 1}"));
    EXPECT_EQ(missing_tier.code(), ErrorCode::SchemaError);

    auto no_rate = parse_error(replace(minimal, ", service_rate_per_s: 4", ""));
    EXPECT_EQ(no_rate.code(), ErrorCode::SchemaError);
}

TEST(Scenario, CollectsSeveralIssues)
{
    std::string text = replace(minimal, "rate_per_s: 1,", "rate_per_s: -1,");
    text = replace(text, "horizon_s: 1000", "horizon_s: 0");
    auto e = parse_error(text);
    EXPECT_GE(e.issues().size(), 2u);
}

TEST(Scenario, MalformedInputNeverCrashes)
{
    const std::string inputs[] = {
        "", "[", "{", "topology: [1, 2]", "- a\n- b", ":", "topology:\n  nodes: 5", "topology: {nodes: [{id: -1}]}",
        "run: {seed: 1.5}", "workload: {arrivals: [{source: 1}]}", std::string(minimal).substr(0, 120),
        "topology:\n  nodes:\n    - {id: 4294967296, tier: fog}", "\t\tbad", "topology: {nodes: [[]]}",
        "run: {horizon_s: 1/0}",
    };
    for (const auto& text : inputs) {
        try {
            parse_config(text);
            ADD_FAILURE() << "accepted: " << text;
        } catch (const ConfigError& e) {
            EXPECT_TRUE(is_config_error(e.code())) << text;
            EXPECT_FALSE(e.issues().empty());
        }
    }
}

TEST(Scenario, TruncationsNeverCrash)
{
    const std::string full = minimal;
    for (std::size_t n = 0; n < full.size(); ++n) {
        try {
            parse_config(full.substr(0, n));
        } catch (const ConfigError&) {
        }
    }
}

TEST(Scenario, RationalsAndCalibration)
{
    const char* text = R"(
topology:
  nodes:
    - {id: 1, tier: device, area: 1}
    - id: 10
      tier: fog
      area: 1
      calibrate: {target_wait_s: 84, lambda_per_s: 1/60}
    - {id: 100, tier: cloud, calibrate: {target_wait_s: 188, lambda_per_s: 1/60}}
workload:
  arrivals:
    - {source: 1, target: upstream, rate_per_s: 1/60, payload_kind: MeterReading, size_bytes: 64}
)";
    const ScenarioConfig cfg = parse_config(text);
    EXPECT_EQ(cfg.arrivals[0].rate_per_s, 1.0 / 60);
    EXPECT_NEAR(cfg.topology.at(NodeId{10}).service_rate_per_s, 1.0 / 35, 1e-15);
    EXPECT_EQ(cfg.topology.at(NodeId{100}).service_rate_per_s, 1.0 / 188 + 1.0 / 60);
}

TEST(Scenario, ClassificationReplacesDefaults)
{
    std::string text = replace(minimal, "workload:\n", "workload:\n  classification: {Pulse: public}\n");
    auto e = parse_error(text);
    EXPECT_EQ(e.code(), ErrorCode::UnknownKind);
    text = replace(text, "payload_kind: GridTelemetry", "payload_kind: Pulse");
    const ScenarioConfig cfg = parse_config(text);
    EXPECT_EQ(cfg.classification.entries().size(), 1u);
}

TEST(Scenario, ModelsSection)
{
    std::string text = std::string(minimal) + R"(models:
  fog_spec: {power_active_mw: 250, power_idle_mw: 10}
  processing: {c_ms: 0.5}
  bess: {capacity_kwh: 30, soc_kwh: 10, efficiency: 0.9}
  solar: [{at_s: 100, energy_kwh: 2}]
  grid_outages: [{from_s: 10, to_s: 20}]
  tariff_per_kwh: 0.3
)";
    const ScenarioConfig cfg = parse_config(text);
    EXPECT_EQ(cfg.topology.at(NodeId{2}).spec.power_active_mw, 250.0);
    EXPECT_EQ(cfg.topology.at(NodeId{2}).spec.power_idle_mw, 10.0);
    EXPECT_EQ(cfg.processing.c_ms, 0.5);
    EXPECT_EQ(cfg.microgrid.bess, (BessState{30, 10, 0.9}));
    EXPECT_EQ(cfg.microgrid.solar.size(), 1u);
    EXPECT_EQ(cfg.microgrid.outages.size(), 1u);
    EXPECT_EQ(cfg.billing.tariff_per_kwh, 0.3);
}

TEST(Scenario, LoadMissingFileIsIoFailure)
{
    try {
        load_config("/nonexistent/scenario.yaml");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IoFailure);
        EXPECT_FALSE(is_config_error(e.code()));
    }
}

TEST(Scenario, EmptyWorkloadComparison)
{
    std::string text = replace(minimal, "  arrivals:\n    - {source: 1, rate_per_s: 1, payload_kind: GridTelemetry, size_bytes: 32}\n",
                               "  arrivals: []\n");
    const Comparison c = compare_frameworks(parse_config(text));
    EXPECT_EQ(c.cloud.aggregates.samples, 0u);
    EXPECT_EQ(c.fog.aggregates.samples, 0u);
    EXPECT_FALSE(c.delta_wait_s);
    EXPECT_NE(render_comparison(c).find("delta_wait_s: absent"), std::string::npos);
    for (const auto& row : c.fog.nodes)
        EXPECT_EQ(row.stats.lambda_hat, 0.0);
}

TEST(Scenario, CompareUsesEachFrameworksServer)
{
    const Comparison c = compare_frameworks(parse_config(minimal));
    EXPECT_EQ(c.cloud.mode, TopologyMode::CloudOnly);
    EXPECT_EQ(c.fog.mode, TopologyMode::FogAugmented);
    EXPECT_GT(c.cloud.nodes[2].stats.samples, 0u);
    EXPECT_EQ(c.cloud.nodes[1].stats.samples, 0u);
    EXPECT_GT(c.fog.nodes[1].stats.samples, 0u);
    EXPECT_EQ(c.fog.nodes[2].stats.samples, 0u);
    ASSERT_TRUE(c.delta_wait_s);
    EXPECT_EQ(*c.delta_wait_s, *c.fog.aggregates.mean_wait_s - *c.cloud.aggregates.mean_wait_s);
}

} // namespace
} // namespace foggrid
