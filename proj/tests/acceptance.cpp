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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
//
// usage: foggrid_acceptance [scenario-dir]

#include "foggrid/analytic.hpp"
#include "foggrid/energy_model.hpp"
#include "foggrid/error.hpp"
#include "foggrid/message_fabric.hpp"
#include "foggrid/queue_sim.hpp"
#include "foggrid/report.hpp"
#include "foggrid/scenario.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#ifndef FOGGRID_SCENARIO_DIR
#define FOGGRID_SCENARIO_DIR "scenarios"
#endif

using namespace foggrid;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

// Runs f(i) for i in [0, n) on the available cores.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f)
{
    const std::size_t workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++)
                f(i);
        });
    for (auto& t : pool)
        t.join();
}

std::string fmt(const char* f, auto... args)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome waiting_times(const fs::path& dir)
{
    const ScenarioConfig base = load_config(dir / "reference.yaml");
    constexpr int seeds = 20;
    std::vector<double> cloud(seeds), fog(seeds);
    parallel_for(seeds, [&](std::size_t i) {
        ScenarioConfig cfg = base;
        cfg.seed = i + 1;
        const Comparison c = compare_frameworks(cfg);
        cloud[i] = c.cloud.aggregates.mean_wait_s.value_or(NAN);
        fog[i] = c.fog.aggregates.mean_wait_s.value_or(NAN);
    });
    int both = 0, cloud_ok = 0, fog_ok = 0;
    std::string outside;
    for (int i = 0; i < seeds; ++i) {
        const bool c = std::abs(cloud[i] - 188.0) <= 18.8;
        const bool f = std::abs(fog[i] - 84.0) <= 8.4;
        cloud_ok += c;
        fog_ok += f;
        both += c && f;
        if (!(c && f))
            outside += fmt(" [seed %d: cloud %.4g fog %.4g]", i + 1, cloud[i], fog[i]);
    }
    return {both >= 18, fmt("%d/20 seeds with both frameworks within 10%% (cloud %d/20, fog %d/20)", both,
                            cloud_ok, fog_ok) + outside};
}

Outcome energy_ratio_exact()
{
    const double expected = 199.0 / 489.0;
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> dur(1e-3, 1e7);
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
        const double t = dur(rng);
        const EnergyLedger f = accrue_energy({}, default_fog_spec(), t, 0.0);
        const EnergyLedger c = accrue_energy({}, default_cloud_spec(), t, 0.0);
        bad += energy_ratio(f, c) != expected;

        RunReport fr, cr;
        fr.nodes.push_back(NodeRow{NodeId{1}, Tier::Fog, {}, f});
        cr.nodes.push_back(NodeRow{NodeId{2}, Tier::Cloud, {}, c});
        fr.aggregates = aggregate(fr.nodes);
        cr.aggregates = aggregate(cr.nodes);
        const Comparison cmp = make_comparison(cr, fr);
        bad += !cmp.energy_ratio || *cmp.energy_ratio != expected;
    }
    return {bad == 0, fmt("%d mismatches over 1000 equal-duration pairs (expected %.17g)", bad, expected)};
}

Outcome littles_law()
{
    constexpr int configs = 50;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> rho_d(0.1, 0.9), mu_d(0.5, 2.0);
    std::vector<RunConfig> cfgs;
    for (int i = 0; i < configs; ++i) {
        const double rho = rho_d(rng), mu = mu_d(rng);
        RunConfig cfg;
        cfg.topology = Topology(
            {Node{NodeId{1}, Tier::Device, DeviceRole::Sensor, FogAreaId{1}, default_device_spec(), 1.0},
             Node{NodeId{2}, Tier::Fog, DeviceRole::Gateway, FogAreaId{1}, default_fog_spec(), mu},
             Node{NodeId{3}, Tier::Cloud, DeviceRole::Computing, std::nullopt, default_cloud_spec(), 1.0}},
            {}, TopologyMode::FogAugmented);
        cfg.arrivals.push_back({NodeId{1}, std::nullopt, rho * mu, payload_kinds::MeterReading, 64});
        cfg.seed = 1000 + i;
        cfg.horizon_s = 1e6;
        cfg.warmup_s = 1e4;
        cfgs.push_back(std::move(cfg));
    }
    std::vector<double> residual(configs), wait_err(configs), rho(configs);
    parallel_for(configs, [&](std::size_t i) {
        const RunResult r = run(cfgs[i]);
        const QueueStats& s = r.stats[1];
        const double lambda = cfgs[i].arrivals[0].rate_per_s;
        const double mu = cfgs[i].topology.nodes()[1].service_rate_per_s;
        const Mm1Metrics a = mm1_analytic(lambda, mu);
        residual[i] = littles_law_residual(s);
        wait_err[i] = std::abs(s.mean_wait_s - a.wait_s) / a.wait_s;
        rho[i] = lambda / mu;
    });
    int bad = 0;
    std::string worst;
    for (int i = 0; i < configs; ++i)
        if (residual[i] > 0.05 || wait_err[i] > 0.05) {
            ++bad;
            worst += fmt(" [rho=%.3f residual=%.4f wait_err=%.4f]", rho[i], residual[i], wait_err[i]);
        }
    const double max_res = *std::max_element(residual.begin(), residual.end());
    const double max_err = *std::max_element(wait_err.begin(), wait_err.end());
    return {bad == 0, fmt("%d/50 out of bounds, max residual %.4f, max wait error %.4f", bad, max_res, max_err) + worst};
}

Outcome calibration_round_trip()
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> lam_d(1e-4, 10.0), gap_d(1e-3, 10.0);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const double lambda = lam_d(rng);
        const double mu = lambda * (1.0 + gap_d(rng));
        const double w = mm1_analytic(lambda, mu).wait_s;
        const double back = calibrate_service_rate(w, lambda);
        worst = std::max(worst, std::abs(back - mu) / mu);
    }
    return {worst <= 1e-12, fmt("max relative error %.3g over 1000 round trips", worst)};
}

Outcome routing_oracle()
{
    std::mt19937_64 rng(5);
    std::size_t pairs = 0, bad = 0;
    for (int i = 0; i < 100; ++i) {
        const Topology t = oracle::random_topology(rng, 20, i % 4 == 3 ? TopologyMode::CloudOnly : TopologyMode::FogAugmented);
        for (const Node& a : t.nodes())
            for (const Node& b : t.nodes()) {
                if (a.id == b.id)
                    continue;
                ++pairs;
                const auto expect = oracle::brute_force_route(a.id, b.id, t);
                try {
                    const Route r = resolve_route(a.id, b.id, t);
                    bad += !expect || expect->hops.size() != r.hops.size() || expect->pattern != r.pattern;
                } catch (const Error&) {
                    bad += expect.has_value();
                }
            }
    }
    return {bad == 0, fmt("%zu/%zu pairs differ from the exhaustive search", bad, pairs)};
}

Outcome fog_confidentiality()
{
    std::mt19937_64 rng(6);
    ClassificationTable table = ClassificationTable::defaults();
    table.set("Pulse", DataClass::Public);
    std::vector<PayloadKind> kinds;
    for (const auto& [k, cls] : table.entries())
        kinds.push_back(k);

    std::uint64_t messages = 0, fog_hops = 0, opens = 0, local_via_cloud = 0;
    std::uint64_t id = 0;
    while (messages < 10000) {
        const Topology t = oracle::random_topology(rng, 16, rng() % 5 == 0 ? TopologyMode::CloudOnly
                                                                            : TopologyMode::FogAugmented);
        const auto& nodes = t.nodes();
        for (int k = 0; k < 100 && messages < 10000; ++k) {
            const NodeId src = nodes[rng() % nodes.size()].id;
            const NodeId dst = nodes[rng() % nodes.size()].id;
            if (src == dst)
                continue;
            Payload p{kinds[rng() % kinds.size()], 1 + rng() % 4096, "body"};
            const Message m = make_message(++id, src, dst, p, table, t, 0.0);
            const Route r = resolve_route(src, dst, t);
            ++messages;
            if ((r.pattern == RoutePattern::ComA || r.pattern == RoutePattern::ComB) &&
                std::find(r.hops.begin(), r.hops.end(), *t.cloud_id()) != r.hops.end())
                ++local_via_cloud;
            const auto* env = std::get_if<SealedEnvelope>(&m.content);
            for (NodeId hop : r.hops) {
                if (t.at(hop).tier != Tier::Fog || !env)
                    continue;
                ++fog_hops;
                try {
                    unseal(*env, hop);
                    ++opens;
                } catch (const Error&) {
                }
            }
        }
    }

    // The same property through the engine on mixed workloads.
    std::uint64_t engine_messages = 0, engine_visits = 0, engine_opens = 0;
    for (int i = 0; i < 20; ++i) {
        RunConfig cfg;
        cfg.classification = table;
        cfg.topology = oracle::random_topology(rng, 16, TopologyMode::FogAugmented);
        const auto& nodes = cfg.topology.nodes();
        for (int a = 0; a < 6; ++a) {
            const Node& src = nodes[rng() % nodes.size()];
            std::optional<NodeId> dst;
            const Node& d = nodes[rng() % nodes.size()];
            if (d.id != src.id)
                dst = d.id;
            if (!dst && src.tier == Tier::Cloud)
                continue;
            cfg.arrivals.push_back({src.id, dst, 0.01, kinds[rng() % kinds.size()], 64});
        }
        cfg.seed = 100 + i;
        cfg.horizon_s = 2e4;
        cfg.warmup_s = 0;
        try {
            const RunResult r = run(cfg);
            engine_messages += r.messages.generated;
            engine_visits += r.messages.fog_private_visits;
            engine_opens += r.messages.fog_private_opens;
        } catch (const Error& e) {
            return {false, fmt("engine run failed: %s", e.what())};
        }
    }
    const bool pass = messages >= 10000 && opens == 0 && engine_opens == 0 && local_via_cloud == 0 && fog_hops > 0;
    return {pass, fmt("%llu direct messages (%llu private fog hops, %llu opens), %llu engine messages (%llu private "
                      "fog visits, %llu opens), %llu local routes via cloud",
                      (unsigned long long)messages, (unsigned long long)fog_hops, (unsigned long long)opens,
                      (unsigned long long)engine_messages, (unsigned long long)engine_visits,
                      (unsigned long long)engine_opens, (unsigned long long)local_via_cloud)};
}

Outcome billing_conservation(const fs::path& dir)
{
    const ScenarioConfig cfg = load_config(dir / "roaming.yaml");
    const Comparison c = compare_frameworks(cfg);
    const auto& reg = cfg.billing.registry;
    std::string detail;
    bool pass = cfg.billing.sessions.size() >= 100;
    for (const RunReport* r : {&c.cloud, &c.fog}) {
        double metered = 0, billed = 0;
        std::size_t rejected = 0, roaming = 0, wrong_account = 0;
        std::map<std::uint64_t, const SessionRow*> by_id;
        for (const auto& s : r->sessions) {
            by_id[s.session_id] = &s;
            if (s.state == SessionState::Rejected)
                ++rejected;
            else
                metered += s.energy_kwh;
        }
        for (const auto& b : r->bills) {
            billed += b.energy_kwh;
            const SessionRow* s = by_id.at(b.session_id);
            const auto owner = reg.owner_meter(s->vehicle_id);
            if (!owner || reg.account_of(*owner) != b.debited_account)
                ++wrong_account;
            if (owner && *owner != s->outlet_meter)
                ++roaming;
        }
        const double delivered = r->microgrid.delivered_kwh;
        const bool ok = delivered == metered && metered == billed && wrong_account == 0 && rejected > 0 &&
                        r->bills.size() + rejected == r->sessions.size();
        pass = pass && ok;
        detail += fmt("%s: delivered %.17g metered %.17g billed %.17g, %zu bills (%zu roaming), %zu rejected, %zu "
                      "misdirected; ",
                      to_string(r->mode), delivered, metered, billed, r->bills.size(), roaming, rejected,
                      wrong_account);
    }
    return {pass, fmt("%zu sessions; ", cfg.billing.sessions.size()) + detail};
}

std::map<std::string, std::string> tree(const fs::path& root)
{
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(root))
        if (e.is_regular_file()) {
            std::ifstream in(e.path(), std::ios::binary);
            std::ostringstream s;
            s << in.rdbuf();
            files[fs::relative(e.path(), root).generic_string()] = s.str();
        }
    return files;
}

Outcome determinism(const fs::path& dir)
{
    const fs::path base = fs::temp_directory_path() / fmt("foggrid-acceptance-%d", (int)::getpid());
    std::size_t files = 0;
    bool same = true;
    for (const char* name : {"reference.yaml", "roaming.yaml"}) {
        const ScenarioConfig cfg = load_config(dir / name);
        const fs::path a = base / name / "a", b = base / name / "b";
        emit_comparison(compare_frameworks(cfg), a);
        emit_comparison(compare_frameworks(cfg), b);
        const auto ta = tree(a), tb = tree(b);
        same = same && !ta.empty() && ta == tb;
        files += ta.size();
    }
    fs::remove_all(base);
    return {same, fmt("%zu emitted files compared byte for byte across two runs", files)};
}

Outcome processing_ratio()
{
    const ProcessingModel m{};
    const double t1 = processing_time(m, 1);
    const double ratio = processing_time(m, 2048) / processing_time(m, 1024);
    return {t1 == 0.0 && ratio == 2.2, fmt("T(1) = %g, T(2048)/T(1024) = %.17g, 2.2 = %.17g", t1, ratio, 2.2)};
}

} // namespace

int main(int argc, char** argv)
{
    const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::path(FOGGRID_SCENARIO_DIR);
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"waiting times", [&] { return waiting_times(dir); }},
        {"energy ratio", energy_ratio_exact},
        {"little's law", littles_law},
        {"calibration round trip", calibration_round_trip},
        {"routing", routing_oracle},
        {"fog confidentiality", fog_confidentiality},
        {"billing conservation", [&] { return billing_conservation(dir); }},
        {"determinism", [&] { return determinism(dir); }},
        {"processing ratio", processing_ratio},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("criterion %zu (%s): %s - %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
