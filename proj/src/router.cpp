#include "duostra/router.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>

#include "duostra/error.hpp"

namespace duostra {

namespace {

constexpr TimeUnits kInf = std::numeric_limits<TimeUnits>::max() / 4;

void check_route_pre(const DeviceGraph& device, const RoutingState& state, PhysicalQubit s0,
                     PhysicalQubit s1) {
    if (s0 >= device.num_qubits() || s1 >= device.num_qubits()) {
        throw std::logic_error("route: source out of range");
    }
    if (s0 == s1) throw std::logic_error("route: sources coincide");
    if (state.mapping.logical_at(s0) == kNoQubit || state.mapping.logical_at(s1) == kNoQubit) {
        throw std::logic_error("route: a source hosts no logical qubit");
    }
}

RoutingPlan adjacent_plan(const RoutingState& state, PhysicalQubit s0, PhysicalQubit s1) {
    RoutingPlan plan;
    plan.source0 = s0;
    plan.source1 = s1;
    plan.final_edge = {s0, s1};
    plan.objective = std::max(state.ocp[s0], state.ocp[s1]);
    plan.gate_start = plan.objective;
    return plan;
}

// Chains the swap timing rule along `path` (path[0] is the source);
// appends one TimedSwap per hop.
TimeUnits chain_swaps(const RoutingState& state, const std::vector<PhysicalQubit>& path,
                      TimeUnits tau_swap, std::vector<TimedSwap>& out) {
    TimeUnits t = state.ocp[path[0]];
    for (std::size_t i = 1; i < path.size(); ++i) {
        TimeUnits start = std::max(t, state.ocp[path[i]]);
        TimeUnits finish = start + tau_swap;
        out.push_back(TimedSwap{path[i - 1], path[i], start, finish});
        t = finish;
    }
    return t;
}

}  // namespace

TimeUnits edge_ocp(const DeviceGraph& device, const RoutingState& state, PhysicalQubit i,
                   PhysicalQubit j, bool with_swap, TimeUnits tau_swap) {
    if (!device.are_adjacent(i, j)) {
        throw std::logic_error("edge_ocp: (" + std::to_string(i) + "," + std::to_string(j) +
                               ") is not a device edge");
    }
    TimeUnits base = std::max(state.ocp[i], state.ocp[j]);
    return with_swap ? base + tau_swap : base;
}

RoutingPlan duostra_route(const DeviceGraph& device, const RoutingState& state, PhysicalQubit s0,
                          PhysicalQubit s1, TimeUnits tau_swap,
                          std::vector<TimeUnits>* pop_trace) {
    check_route_pre(device, state, s0, s1);
    if (device.are_adjacent(s0, s1)) return adjacent_plan(state, s0, s1);

    const std::uint32_t n = device.num_qubits();
    enum : char { kUnseen = 0, kSeen = 1, kVisited = 2 };
    std::vector<char> status(n, kUnseen);
    std::vector<TimeUnits> cost(n, kInf);
    std::vector<char> side(n, 0);
    std::vector<PhysicalQubit> parent(n, kNoQubit);

    cost[s0] = state.ocp[s0];
    cost[s1] = state.ocp[s1];
    side[s1] = 1;
    status[s0] = status[s1] = kVisited;

    // (cost, vertex, source side): deterministic pop order.
    using Entry = std::tuple<TimeUnits, PhysicalQubit, char>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;

    // Seen vertices may still be undercut by the other source's chain
    // (their cost is not settled until they are visited), so this both
    // seeds unseen neighbors and relaxes seen ones.
    auto relax_neighbors = [&](PhysicalQubit from) {
        for (PhysicalQubit w : device.adjacency(from)) {
            if (status[w] == kVisited) continue;
            TimeUnits next = std::max(cost[from], state.ocp[w]) + tau_swap;
            if (status[w] == kUnseen || next < cost[w]) {
                status[w] = kSeen;
                cost[w] = next;
                side[w] = side[from];
                parent[w] = from;
                queue.push({next, w, side[w]});
            }
        }
    };
    relax_neighbors(s0);
    relax_neighbors(s1);

    PhysicalQubit meet = kNoQubit;
    PhysicalQubit partner = kNoQubit;
    while (!queue.empty()) {
        auto [c, m, lb] = queue.top();
        queue.pop();
        if (status[m] == kVisited || c != cost[m]) continue;  // stale entry
        status[m] = kVisited;
        if (pop_trace) pop_trace->push_back(c);

        TimeUnits best_obj = kInf;
        for (PhysicalQubit v : device.adjacency(m)) {
            if (status[v] != kVisited || side[v] == side[m]) continue;
            TimeUnits obj = std::max(cost[m], cost[v]);
            if (obj < best_obj) {
                best_obj = obj;
                partner = v;
            }
        }
        if (partner != kNoQubit) {
            meet = m;
            break;
        }
        relax_neighbors(m);
    }
    if (meet == kNoQubit) throw std::logic_error("duostra_route: search exhausted");

    RoutingPlan plan;
    plan.source0 = s0;
    plan.source1 = s1;
    auto backtrace = [&](PhysicalQubit end) {
        std::vector<PhysicalQubit> path{end};
        while (parent[path.back()] != kNoQubit) path.push_back(parent[path.back()]);
        std::reverse(path.begin(), path.end());
        return path;
    };
    PhysicalQubit end0 = side[meet] == 0 ? meet : partner;
    PhysicalQubit end1 = side[meet] == 0 ? partner : meet;
    chain_swaps(state, backtrace(end0), tau_swap, plan.swaps0);
    chain_swaps(state, backtrace(end1), tau_swap, plan.swaps1);
    plan.final_edge = {end0, end1};
    plan.objective = std::max(cost[meet], cost[partner]);
    plan.gate_start = plan.objective;
    return plan;
}

RoutingPlan shortest_path_route(const DeviceGraph& device, const DistanceMatrix& dist,
                                const RoutingState& state, PhysicalQubit s0, PhysicalQubit s1,
                                TimeUnits tau_swap) {
    check_route_pre(device, state, s0, s1);
    if (device.are_adjacent(s0, s1)) return adjacent_plan(state, s0, s1);

    // Lexicographically smallest shortest path: always step to the
    // lowest-index neighbor that still shrinks the distance to s1.
    std::vector<PhysicalQubit> path{s0};
    PhysicalQubit cur = s0;
    while (cur != s1) {
        std::int32_t remaining = dist.distance(cur, s1);
        for (PhysicalQubit w : device.adjacency(cur)) {  // ascending
            if (dist.distance(w, s1) == remaining - 1) {
                path.push_back(w);
                cur = w;
                break;
            }
        }
    }

    std::size_t k = path.size() - 2;  // intermediate qubits
    std::size_t from_s0 = (k + 1) / 2;
    RoutingPlan plan;
    plan.source0 = s0;
    plan.source1 = s1;
    std::vector<PhysicalQubit> left(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(from_s0) + 1);
    std::vector<PhysicalQubit> right(path.rbegin(),
                                     path.rbegin() + static_cast<std::ptrdiff_t>(k - from_s0) + 1);
    chain_swaps(state, left, tau_swap, plan.swaps0);
    chain_swaps(state, right, tau_swap, plan.swaps1);
    plan.final_edge = {left.back(), right.back()};
    TimeUnits c0 = plan.swaps0.empty() ? state.ocp[s0] : plan.swaps0.back().finish;
    TimeUnits c1 = plan.swaps1.empty() ? state.ocp[s1] : plan.swaps1.back().finish;
    plan.objective = std::max(c0, c1);
    plan.gate_start = plan.objective;
    return plan;
}

RoutingPlan route_pair(RouterKind kind, const DeviceGraph& device, const DistanceMatrix* dist,
                       const RoutingState& state, PhysicalQubit s0, PhysicalQubit s1,
                       TimeUnits tau_swap) {
    if (kind == RouterKind::Duostra) return duostra_route(device, state, s0, s1, tau_swap);
    if (dist == nullptr) throw std::logic_error("route_pair: shortest-path needs distances");
    return shortest_path_route(device, *dist, state, s0, s1, tau_swap);
}

TimeUnits apply_plan(RoutingState& state, const RoutingPlan& plan, const Gate& gate,
                     const TimingModel& timing) {
    if (!gate.is_double()) throw std::logic_error("apply_plan: gate is not double-qubit");
    if (state.mapping.phys_of(gate.qubits[0]) != plan.source0 ||
        state.mapping.phys_of(gate.qubits[1]) != plan.source1) {
        throw StalePlanError("plan sources no longer host the gate's qubits");
    }
    auto commit_chain = [&](const std::vector<TimedSwap>& chain) {
        for (const TimedSwap& sw : chain) {
            TimeUnits start = std::max(state.ocp[sw.from], state.ocp[sw.to]);
            if (start != sw.start || sw.finish != start + timing.tau_swap) {
                throw StalePlanError("swap timing drifted from the planned chain");
            }
            state.ocp[sw.from] = sw.finish;
            state.ocp[sw.to] = sw.finish;
            state.mapping.swap_physical(sw.from, sw.to);
        }
    };
    commit_chain(plan.swaps0);
    commit_chain(plan.swaps1);

    auto [t0, t1] = plan.final_edge;
    TimeUnits start = std::max(state.ocp[t0], state.ocp[t1]);
    if (start != plan.gate_start) throw StalePlanError("gate start drifted from the plan");
    TimeUnits finish = start + timing.tau_double;
    state.ocp[t0] = finish;
    state.ocp[t1] = finish;
    return finish;
}

TimeUnits oracle_route(const DeviceGraph& device, const RoutingState& state, PhysicalQubit s0,
                       PhysicalQubit s1, TimeUnits tau_swap) {
    check_route_pre(device, state, s0, s1);
    const std::uint32_t n = device.num_qubits();
    if (n > 12) {
        throw ValidationError("oracle_route supports at most 12 qubits, got " +
                              std::to_string(n));
    }
    const std::uint32_t full = 1u << n;

    // best[v][mask] = cheapest chained cost of a simple path from the
    // source to v visiting exactly `mask`. Dynamic program is valid
    // because extending a chain is monotone in its prefix cost.
    auto paths_from = [&](PhysicalQubit s) {
        std::vector<std::vector<TimeUnits>> best(n, std::vector<TimeUnits>(full, kInf));
        best[s][1u << s] = state.ocp[s];
        for (std::uint32_t mask = 0; mask < full; ++mask) {
            for (PhysicalQubit v = 0; v < n; ++v) {
                TimeUnits c = best[v][mask];
                if (c >= kInf || !(mask & (1u << v))) continue;
                for (PhysicalQubit w : device.adjacency(v)) {
                    if (mask & (1u << w)) continue;
                    TimeUnits next = std::max(c, state.ocp[w]) + tau_swap;
                    TimeUnits& slot = best[w][mask | (1u << w)];
                    if (next < slot) slot = next;
                }
            }
        }
        return best;
    };
    auto best0 = paths_from(s0);
    auto best1 = paths_from(s1);

    // min1[v][m] = cheapest path to v whose vertex set fits inside m.
    auto best_within = [&](std::vector<std::vector<TimeUnits>>& best) {
        for (PhysicalQubit v = 0; v < n; ++v) {
            for (std::uint32_t bit = 0; bit < n; ++bit) {
                for (std::uint32_t mask = 0; mask < full; ++mask) {
                    if (mask & (1u << bit)) {
                        best[v][mask] = std::min(best[v][mask], best[v][mask ^ (1u << bit)]);
                    }
                }
            }
        }
    };
    best_within(best1);

    TimeUnits answer = kInf;
    for (const Edge& e : device.edges()) {
        for (auto [u, v] : {std::pair{e.first, e.second}, std::pair{e.second, e.first}}) {
            for (std::uint32_t mask = 0; mask < full; ++mask) {
                TimeUnits c0 = best0[u][mask];
                if (c0 >= kInf) continue;
                TimeUnits c1 = best1[v][(full - 1) & ~mask];
                if (c1 >= kInf) continue;
                answer = std::min(answer, std::max(c0, c1));
            }
        }
    }
    return answer;
}

}  // namespace duostra
