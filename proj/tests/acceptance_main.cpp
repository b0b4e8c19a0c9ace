// End-to-end acceptance checklist for the mapper. Standalone binary, no
// test framework: each check prints exactly one PASS/FAIL line with its
// wall time, and the process exits nonzero if any check fails or runs
// over its time budget. Checks are seeded and deterministic.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "duostra/circuit.hpp"
#include "duostra/device.hpp"
#include "duostra/pipeline.hpp"
#include "duostra/placement.hpp"
#include "duostra/router.hpp"
#include "duostra/scheduler.hpp"

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random_gen.hpp"
#include "support/sim.hpp"

namespace fs = std::filesystem;
using namespace duostra;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;  // first failure only

    void fail(const std::string& why) {
        if (ok) {
            ok = false;
            detail = why;
        }
    }
    void expect(bool cond, const std::string& why) {
        if (!cond) fail(why);
    }
};

int g_failed = 0;

void run_check(int index, const std::string& label, double budget_s,
               const std::function<void(Outcome&)>& body) {
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.fail(std::string("unexpected exception: ") + e.what());
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (out.ok && elapsed > budget_s) {
        std::ostringstream oss;
        oss << "over time budget: " << elapsed << " s > " << budget_s << " s";
        out.fail(oss.str());
    }
    std::printf("%s %2d. %s (%.2f s)\n", out.ok ? "PASS" : "FAIL", index, label.c_str(), elapsed);
    if (!out.ok) {
        std::printf("        %s\n", out.detail.c_str());
        ++g_failed;
    }
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream oss;
    oss << in.rdbuf();
    return oss.str();
}

// The 1,000 routing instances shared by checks 1 and 2: connected graphs
// of at most 9 qubits, occupied times in [0, 20], tau_swap = 6.
void each_routing_instance(
    const std::function<void(int, const DeviceGraph&, const RoutingState&, PhysicalQubit,
                             PhysicalQubit)>& visit) {
    std::mt19937_64 rng(20240913);
    for (int i = 0; i < 1000; ++i) {
        auto n = static_cast<std::uint32_t>(2 + testsupport::draw(rng, 8));
        DeviceGraph device(n, testsupport::random_connected_edges(rng, n, n / 2));
        RoutingState state = testsupport::random_state(rng, device, 0, 20);
        auto s0 = static_cast<PhysicalQubit>(testsupport::draw(rng, n));
        auto s1 = static_cast<PhysicalQubit>(testsupport::draw(rng, n - 1));
        if (s1 >= s0) ++s1;
        visit(i, device, state, s0, s1);
    }
}

void check_router_optimality(Outcome& out) {
    each_routing_instance([&](int i, const DeviceGraph& device, const RoutingState& state,
                              PhysicalQubit s0, PhysicalQubit s1) {
        RoutingPlan plan = duostra_route(device, state, s0, s1, 6);
        TimeUnits best = oracle_route(device, state, s0, s1, 6);
        if (plan.objective != best) {
            std::ostringstream oss;
            oss << "instance " << i << ": router objective " << plan.objective
                << " != oracle " << best;
            out.fail(oss.str());
        }
    });
}

void check_monotone_pops(Outcome& out) {
    each_routing_instance([&](int i, const DeviceGraph& device, const RoutingState& state,
                              PhysicalQubit s0, PhysicalQubit s1) {
        std::vector<TimeUnits> trace;
        duostra_route(device, state, s0, s1, 6, &trace);
        if (!std::is_sorted(trace.begin(), trace.end())) {
            std::ostringstream oss;
            oss << "instance " << i << ": settled pop costs decreased";
            out.fail(oss.str());
        }
    });
}

void check_placement_walkthrough(Outcome& out) {
    LogicalCircuit demo = testsupport::seven_qubit_demo();
    std::vector<LogicalQubit> order = dfs_order_logical(demo);
    out.expect(order == std::vector<LogicalQubit>{3, 4, 1, 0, 6, 5, 2},
               "logical DFS order off the known walkthrough");

    DeviceGraph device = builtin_topology("ring:8");
    Mapping placed = initial_placement(demo, device, PlacementStrategy::Dfs);
    const std::vector<PhysicalQubit> expected_l2p{3, 2, 6, 0, 1, 5, 4};
    for (LogicalQubit q = 0; q < 7; ++q) {
        out.expect(placed.phys_of(q) == expected_l2p[q], "initial mapping off the walkthrough");
    }

    // The first four double-qubit gates must execute where they sit.
    std::vector<std::size_t> swaps_per_gate;
    MapRequest request;
    request.trace = [&](GateId, const RoutingPlan& plan) {
        swaps_per_gate.push_back(plan.swap_count());
    };
    map_circuit(demo, device, request);
    out.expect(swaps_per_gate.size() == testsupport::demo_doubles().size(),
               "routed gate count off");
    for (std::size_t i = 0; i < 4 && i < swaps_per_gate.size(); ++i) {
        out.expect(swaps_per_gate[i] == 0, "an early double-qubit gate needed swaps");
    }
}

void check_semantic_preservation(Outcome& out) {
    std::mt19937_64 rng(424242);
    std::vector<LogicalCircuit> circuits;
    circuits.reserve(500);
    for (int i = 0; i < 500; ++i) {
        auto nq = static_cast<std::uint32_t>(2 + testsupport::draw(rng, 9));    // 2..10
        auto ng = static_cast<std::uint32_t>(1 + testsupport::draw(rng, 100));  // 1..100
        circuits.push_back(testsupport::random_circuit(rng, nq, ng));
    }

    const char* specs[] = {"ring:8",    "ring:9",  "ring:10",      "ring:11",
                           "ring:12",   "grid:3x4", "heavy_hex:1x2"};
    std::vector<DeviceGraph> devices;
    std::vector<std::unique_ptr<DistanceMatrix>> dists;
    for (const char* spec : specs) devices.push_back(builtin_topology(spec));
    for (const DeviceGraph& d : devices) dists.push_back(std::make_unique<DistanceMatrix>(d));

    SchedulerConfig sp, le, fixed;
    le.kind = SchedulerKind::LookaheadSearch;
    le.depth = 2;
    fixed.kind = SchedulerKind::Static;
    const SchedulerConfig scheds[] = {sp, le, fixed};
    const RouterKind routers[] = {RouterKind::Duostra, RouterKind::ShortestPath};

    TimingModel timing;
    long runs = 0;
    for (const LogicalCircuit& circuit : circuits) {
        for (std::size_t d = 0; d < devices.size(); ++d) {
            if (circuit.num_qubits() > devices[d].num_qubits()) continue;  // cannot host
            for (RouterKind router : routers) {
                for (const SchedulerConfig& sched : scheds) {
                    MapRequest request;
                    request.router = router;
                    request.scheduler = sched;
                    MappedResult result = map_circuit(circuit, devices[d], request, dists[d].get());
                    std::vector<Violation> bad = verify(circuit, devices[d], result, timing);
                    if (!bad.empty()) {
                        std::ostringstream oss;
                        oss << "violation `" << to_string(bad.front().kind) << "` on "
                            << specs[d] << " (" << bad.front().detail << ")";
                        out.fail(oss.str());
                        return;
                    }
                    ++runs;
                }
            }
        }
    }
    out.expect(runs > 20000, "cell count unexpectedly low: " + std::to_string(runs));
}

void check_complete_graph_collapse(Outcome& out) {
    std::mt19937_64 rng(3111);
    TimingModel timing;
    SchedulerConfig sp, le, fixed;
    le.kind = SchedulerKind::LookaheadSearch;
    fixed.kind = SchedulerKind::Static;

    for (std::uint32_t n = 5; n <= 10; ++n) {
        DeviceGraph device = testsupport::complete_device(n);
        for (int c = 0; c < 5; ++c) {
            LogicalCircuit circuit = testsupport::random_circuit(rng, n, 40);
            TimeUnits ideal = ideal_circuit_cost(circuit, timing);
            for (const SchedulerConfig& sched : {sp, le, fixed}) {
                for (RouterKind router : {RouterKind::Duostra, RouterKind::ShortestPath}) {
                    MapRequest request;
                    request.router = router;
                    request.scheduler = sched;
                    request.placement = PlacementStrategy::Identity;
                    MappedResult result = map_circuit(circuit, device, request);
                    if (result.swap_count != 0 || result.mapping_cost != ideal) {
                        std::ostringstream oss;
                        oss << "K" << n << ": " << result.swap_count << " swaps, cost "
                            << result.mapping_cost << " vs ideal " << ideal;
                        out.fail(oss.str());
                        return;
                    }
                }
            }
        }
    }
}

// Random circuit with at most `max_doubles` double-qubit gates, built
// directly so no rejection loop is needed.
LogicalCircuit bounded_double_circuit(std::mt19937_64& rng, std::uint32_t num_qubits,
                                      std::uint32_t max_doubles) {
    auto nd = static_cast<std::uint32_t>(1 + testsupport::draw(rng, max_doubles));
    auto ns = static_cast<std::uint32_t>(testsupport::draw(rng, 8));
    std::vector<int> is_double(nd, 1);
    is_double.resize(nd + ns, 0);
    for (std::size_t i = is_double.size(); i > 1; --i) {  // Fisher-Yates
        std::swap(is_double[i - 1], is_double[testsupport::draw(rng, i)]);
    }
    static const char* singles[] = {"h", "x", "z", "s", "t"};
    LogicalCircuit circuit(num_qubits);
    for (int two : is_double) {
        if (two) {
            auto a = static_cast<LogicalQubit>(testsupport::draw(rng, num_qubits));
            auto b = static_cast<LogicalQubit>(testsupport::draw(rng, num_qubits - 1));
            if (b >= a) ++b;
            circuit.add_gate("cx", {a, b});
        } else {
            circuit.add_gate(singles[testsupport::draw(rng, 5)],
                             {static_cast<LogicalQubit>(testsupport::draw(rng, num_qubits))});
        }
    }
    return circuit;
}

void check_full_depth_lookahead(Outcome& out) {
    std::mt19937_64 rng(6006);
    TimingModel timing;
    for (int i = 0; i < 50; ++i) {
        auto nq = static_cast<std::uint32_t>(3 + testsupport::draw(rng, 4));  // 3..6
        LogicalCircuit circuit = bounded_double_circuit(rng, nq, 6);
        auto np = static_cast<std::uint32_t>(nq + testsupport::draw(rng, 3));
        DeviceGraph device(np, testsupport::random_connected_edges(rng, np, np / 2));
        DistanceMatrix dist(device);
        DependencyGraph deps = build_dependency_graph(circuit);

        RoutingState state;
        state.ocp.assign(device.num_qubits(), 0);
        state.mapping = initial_placement(circuit, device, PlacementStrategy::Identity);
        MapperContext ctx(circuit, deps, state, timing);
        ctx.flush_singles();
        RoutingContext rt{&device, &dist, RouterKind::Duostra, timing};

        TimeUnits best = testsupport::min_makespan_over_orders(ctx, rt);
        while (ctx.remaining_doubles() > 0) {
            GateId g = le_select(ctx, rt, ctx.remaining_doubles());
            const Gate& gate = ctx.circuit().gate(g);
            PhysicalQubit p0 = ctx.state().mapping.phys_of(gate.qubits[0]);
            PhysicalQubit p1 = ctx.state().mapping.phys_of(gate.qubits[1]);
            RoutingPlan plan = route_pair(rt.router, device, &dist, ctx.state(), p0, p1,
                                          timing.tau_swap);
            ctx.commit_double(g, plan);
            ctx.flush_singles();
        }
        if (ctx.makespan() != best) {
            std::ostringstream oss;
            oss << "instance " << i << ": full-depth lookahead makespan " << ctx.makespan()
                << " != exhaustive optimum " << best;
            out.fail(oss.str());
        }
    }
}

void check_edge_utilization_spread(Outcome& out) {
    std::mt19937_64 rng(7117);
    DeviceGraph device = testsupport::hex16_device();
    DistanceMatrix dist(device);
    double mean_duostra = 0.0, mean_baseline = 0.0;
    for (int c = 0; c < 5; ++c) {
        LogicalCircuit circuit = testsupport::random_circuit(rng, 16, 1200, 30);
        for (RouterKind router : {RouterKind::Duostra, RouterKind::ShortestPath}) {
            MapRequest request;
            request.router = router;
            MappedResult result = map_circuit(circuit, device, request, &dist);
            double stddev = edge_utilization(result, device).stddev;
            (router == RouterKind::Duostra ? mean_duostra : mean_baseline) += stddev / 5.0;
        }
    }
    if (!(mean_duostra < mean_baseline)) {
        std::ostringstream oss;
        oss << "mean per-edge swap stddev " << mean_duostra << " (dual-source) vs "
            << mean_baseline << " (shortest-path): expected strictly lower";
        out.fail(oss.str());
    }
}

void check_qft_scaling(Outcome& out) {
    // Smoke: QFT-64 onto a 68-qubit heavy-hex device with defaults, < 10 s.
    {
        auto t0 = std::chrono::steady_clock::now();
        DeviceGraph device = builtin_topology("heavy_hex:3x3");
        MappedResult result = map_circuit(generate_qft(64), device, MapRequest{});
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.expect(result.mapping_cost > 0, "QFT-64 produced an empty result");
        if (s >= 10.0) {
            std::ostringstream oss;
            oss << "QFT-64 map took " << s << " s, budget 10 s";
            out.fail(oss.str());
        }
    }

    // Dual-source routing must beat the shortest-path baseline on cost
    // at every size. Devices keep roughly 2x headroom; near-full devices
    // leave the router no idle lanes to exploit and the gap closes.
    const std::pair<std::uint32_t, const char*> cells[] = {
        {16, "heavy_hex:2x2"}, {32, "heavy_hex:3x3"}, {64, "heavy_hex:4x5"},
        {128, "heavy_hex:6x7"}};
    for (const auto& [n, spec] : cells) {
        DeviceGraph device = builtin_topology(spec);
        DistanceMatrix dist(device);
        LogicalCircuit circuit = generate_qft(n);
        TimeUnits cost[2];
        for (RouterKind router : {RouterKind::Duostra, RouterKind::ShortestPath}) {
            MapRequest request;
            request.router = router;
            MappedResult result = map_circuit(circuit, device, request, &dist);
            cost[router == RouterKind::Duostra ? 0 : 1] = result.mapping_cost;
        }
        if (!(cost[0] < cost[1])) {
            std::ostringstream oss;
            oss << "QFT-" << n << " on " << spec << ": dual-source cost " << cost[0]
                << " not below shortest-path " << cost[1];
            out.fail(oss.str());
        }
    }
}

void check_decompositions(Outcome& out) {
    LogicalCircuit toffoli(3);
    toffoli.add_gate("ccx", {0, 1, 2});
    out.expect(testsupport::equal_up_to_global_phase(
                   testsupport::circuit_unitary(decompose(toffoli)),
                   testsupport::toffoli_matrix(), 1e-9),
               "ccx expansion is not the Toffoli unitary");

    for (double theta : {0.3, testsupport::pi() / 4.0, 1.7, -2.5, 5.9}) {
        LogicalCircuit rot(2);
        rot.add_gate("crz", {0, 1}, {theta});
        out.expect(testsupport::equal_up_to_global_phase(
                       testsupport::circuit_unitary(decompose(rot)),
                       testsupport::controlled_phase_matrix(theta), 1e-9),
                   "controlled-rotation expansion off its dense unitary");
    }
}

void check_determinism(Outcome& out) {
    fs::path dir = fs::temp_directory_path() / "duostra_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);

    for (int round = 0; round < 2; ++round) {
        std::string tag = std::to_string(round);
        std::string cmd = std::string(DUOSTRA_CLI_PATH) +
                          " map --gen qft:6 --topo heavy_hex:1x1 --placement random --seed 7" +
                          " --out-stats " + (dir / ("stats" + tag + ".json")).string() +
                          " --out-qasm " + (dir / ("out" + tag + ".qasm")).string() +
                          " > /dev/null 2>&1";
        if (std::system(cmd.c_str()) != 0) {
            out.fail("mapper run " + tag + " exited nonzero");
            return;
        }
    }

    out.expect(slurp(dir / "out0.qasm") == slurp(dir / "out1.qasm"),
               "mapped QASM differs between reruns");
    // Elapsed wall time is the one field allowed to differ; every other
    // byte of the stats file must match.
    std::regex wall(R"(("wall_ms": )[-+0-9.eE]+)");
    std::string a = std::regex_replace(slurp(dir / "stats0.json"), wall, "$1X");
    std::string b = std::regex_replace(slurp(dir / "stats1.json"), wall, "$1X");
    out.expect(!a.empty() && a == b, "stats JSON differs between reruns beyond wall_ms");
}

}  // namespace

int main() {
    run_check(1, "dual-source routing matches the brute-force oracle on 1000 instances", 30,
              check_router_optimality);
    run_check(2, "settled pop costs never decrease on those instances", 10,
              check_monotone_pops);
    run_check(3, "seven-qubit walkthrough: DFS order, placement, early gates swap-free", 1,
              check_placement_walkthrough);
    run_check(4, "500 circuits x 7 devices x 2 routers x 3 schedulers all verify clean", 120,
              check_semantic_preservation);
    run_check(5, "complete graphs K5..K10: zero swaps, cost equals the ideal", 10,
              check_complete_graph_collapse);
    run_check(6, "full-depth lookahead equals the exhaustive order optimum", 60,
              check_full_depth_lookahead);
    run_check(7, "dual-source spreads swaps across edges more evenly than shortest-path", 120,
              check_edge_utilization_spread);
    run_check(8, "QFT scaling: 64 qubits under 10 s, cost dominance at 16/32/64/128", 300,
              check_qft_scaling);
    run_check(9, "ccx and controlled-rotation expansions match dense unitaries", 1,
              check_decompositions);
    run_check(10, "identical config and seed reproduce stats and QASM byte for byte", 30,
              check_determinism);

    if (g_failed != 0) {
        std::printf("%d of 10 checks failed\n", g_failed);
        return 1;
    }
    std::printf("all 10 checks passed\n");
    return 0;
}
