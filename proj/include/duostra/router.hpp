#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "duostra/circuit.hpp"
#include "duostra/device.hpp"
#include "duostra/placement.hpp"

namespace duostra {

/// Mutable routing-time view of the machine: per-physical-qubit occupied
/// times plus the current logical<->physical mapping.
struct RoutingState {
    std::vector<TimeUnits> ocp;
    Mapping mapping;
};

/// One SWAP in a routing chain; the routed logical moves from -> to.
struct TimedSwap {
    PhysicalQubit from = 0;
    PhysicalQubit to = 0;
    TimeUnits start = 0;
    TimeUnits finish = 0;
};

/// Result of routing one double-qubit gate: a SWAP chain per source and
/// the edge the gate will execute on. final_edge.first hosts source0's
/// logical after the swaps, final_edge.second hosts source1's.
/// objective = max of the two chain occupied times = gate_start.
struct RoutingPlan {
    PhysicalQubit source0 = 0;
    PhysicalQubit source1 = 0;
    std::vector<TimedSwap> swaps0;
    std::vector<TimedSwap> swaps1;
    std::pair<PhysicalQubit, PhysicalQubit> final_edge{0, 0};
    TimeUnits objective = 0;
    TimeUnits gate_start = 0;

    std::size_t swap_count() const { return swaps0.size() + swaps1.size(); }
};

enum class RouterKind { Duostra, ShortestPath };

/// Occupied time of edge (i,j) per the swap/no-swap timing rule:
/// max(ocp_i, ocp_j) + tau_swap when with_swap, max(ocp_i, ocp_j) otherwise.
/// The edge must exist on the device.
TimeUnits edge_ocp(const DeviceGraph& device, const RoutingState& state, PhysicalQubit i,
                   PhysicalQubit j, bool with_swap, TimeUnits tau_swap);

/// Double-source search for the cheapest pair of vertex-disjoint SWAP
/// chains bringing the logicals at s0 and s1 onto some device edge.
/// Both sources start visited at their own occupied time; frontier costs
/// chain the swap rule; the first popped vertex with a visited
/// other-source neighbor closes the route. Ties break on (cost, vertex
/// index, source id); among closing neighbors, lowest objective then
/// lowest index. If `pop_trace` is given it receives every settled pop
/// cost in pop order.
RoutingPlan duostra_route(const DeviceGraph& device, const RoutingState& state, PhysicalQubit s0,
                          PhysicalQubit s1, TimeUnits tau_swap,
                          std::vector<TimeUnits>* pop_trace = nullptr);

/// Baseline: walk one shortest hop path (lexicographically smallest via
/// lowest-index BFS steps), insert ceil(k/2) swaps from the s0 end and
/// floor(k/2) from the s1 end for k intermediate qubits; swap timing
/// follows the same chaining rule as duostra_route.
RoutingPlan shortest_path_route(const DeviceGraph& device, const DistanceMatrix& dist,
                                const RoutingState& state, PhysicalQubit s0, PhysicalQubit s1,
                                TimeUnits tau_swap);

/// Dispatch on RouterKind. `dist` may be null for Duostra.
RoutingPlan route_pair(RouterKind kind, const DeviceGraph& device, const DistanceMatrix* dist,
                       const RoutingState& state, PhysicalQubit s0, PhysicalQubit s1,
                       TimeUnits tau_swap);

/// Commits a plan: replays both SWAP chains (re-deriving each start from
/// the live state and demanding agreement with the plan), exchanges the
/// hosted logicals, then executes `gate` on the final edge. Returns the
/// gate's finish time. Throws StalePlanError if the state has drifted
/// from the one the plan was built on.
TimeUnits apply_plan(RoutingState& state, const RoutingPlan& plan, const Gate& gate,
                     const TimingModel& timing);

/// Exhaustive reference for duostra_route's objective: minimizes
/// max(chain0, chain1) over every device edge, endpoint orientation and
/// vertex-disjoint simple path pair, via a DP over (vertex, visited-set).
/// Guarded to devices of at most 12 qubits.
TimeUnits oracle_route(const DeviceGraph& device, const RoutingState& state, PhysicalQubit s0,
                       PhysicalQubit s1, TimeUnits tau_swap);

}  // namespace duostra
