#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "duostra/circuit.hpp"
#include "duostra/device.hpp"
#include "duostra/placement.hpp"
#include "duostra/router.hpp"
#include "duostra/scheduler.hpp"

namespace duostra {

/// One operation of the physical circuit.
struct PhysOp {
    enum class Kind { Gate, Swap };
    Kind kind = Kind::Gate;
    std::string gate_kind;                // original kind for gates, "swap" for swaps
    std::vector<double> params;
    std::vector<PhysicalQubit> qubits;    // operand order preserved for gates
    TimeUnits start = 0;
    TimeUnits finish = 0;
    GateId source_gate = 0;               // gate executed, or gate a swap was routed for
};

struct MappedResult {
    std::uint32_t num_physical = 0;
    std::vector<PhysOp> ops;              // chronological (sorted by start)
    Mapping initial_mapping;
    Mapping final_mapping;
    TimeUnits mapping_cost = 0;
    std::uint64_t swap_count = 0;
    std::vector<std::uint64_t> edge_swap_counts;  // per canonical device edge
};

struct MapRequest {
    RouterKind router = RouterKind::Duostra;
    SchedulerConfig scheduler;
    PlacementStrategy placement = PlacementStrategy::Dfs;
    std::uint64_t seed = 0;
    TimingModel timing;
    /// Optional per-routed-gate observer (gate id, committed plan).
    std::function<void(GateId, const RoutingPlan&)> trace;
};

/// Runs the full mapping loop on an already-decomposed circuit:
/// initial placement, then repeatedly flush ready singles, pick a
/// waitlist gate, route it, commit. The op log is returned sorted by
/// start time. Throws CapacityError / ValidationError on bad input.
/// `dist` may be passed to reuse a distance matrix; otherwise one is
/// built when the router or scheduler needs it.
MappedResult map_circuit(const LogicalCircuit& circuit, const DeviceGraph& device,
                         const MapRequest& request, const DistanceMatrix* dist = nullptr);

enum class ViolationKind {
    Structure,              // malformed op (bad arity, unknown qubit, ...)
    EdgeMissing,            // (a) two-qubit op on a non-edge
    WrongLogicals,          // (c) gate executed on qubits not hosting its operands
    OrderBroken,            // (d) per-logical-qubit gate order violated
    TimingBroken,           // (e) start != max prior finish, or wrong duration
    FinalMappingMismatch,   // (f) declared final mapping != replayed mapping
    GateSetMismatch,        // a logical gate missing or executed twice
};

struct Violation {
    ViolationKind kind;
    std::size_t op_index;   // index into ops, or ops.size() for end-of-replay checks
    std::string detail;
};

/// Semantic check of a mapped result against its source circuit: replays
/// the op log from the initial mapping and reports every violation found.
/// Never throws on bad input; a clean result yields an empty list.
std::vector<Violation> verify(const LogicalCircuit& circuit, const DeviceGraph& device,
                              const MappedResult& result, const TimingModel& timing);

/// Max finish over all ops (0 if none).
TimeUnits mapping_cost(const MappedResult& result);

struct EdgeUtilization {
    std::vector<std::uint64_t> counts;  // per canonical device edge
    double stddev = 0.0;                // population standard deviation
    std::uint64_t max = 0;
};
EdgeUtilization edge_utilization(const MappedResult& result, const DeviceGraph& device);

/// Physical circuit as OpenQASM 2.0. Routing swaps are emitted either as
/// atomic `swap` statements or expanded to three cx.
std::string emit_mapped_qasm(const MappedResult& result, bool expand_swaps);

struct CostReport {
    TimeUnits ideal_cost = 0;
    TimeUnits mapping_cost = 0;
    std::uint64_t swap_count = 0;
    double wall_ms = 0.0;
    double util_stddev = 0.0;
    std::uint64_t util_max = 0;
};

CostReport make_cost_report(const LogicalCircuit& circuit, const MappedResult& result,
                            const DeviceGraph& device, const TimingModel& timing,
                            double wall_ms);

const char* to_string(ViolationKind kind);

}  // namespace duostra
