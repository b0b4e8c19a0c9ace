#pragma once

#include <cstdint>
#include <vector>

#include "duostra/circuit.hpp"
#include "duostra/device.hpp"
#include "duostra/router.hpp"

namespace duostra {

/// Everything routing needs, bundled so schedulers can speculate.
struct RoutingContext {
    const DeviceGraph* device = nullptr;
    const DistanceMatrix* dist = nullptr;
    RouterKind router = RouterKind::Duostra;
    TimingModel timing;
};

enum class SchedulerKind { SpEstimation, LookaheadSearch, Static };

struct SchedulerConfig {
    SchedulerKind kind = SchedulerKind::SpEstimation;
    std::uint32_t depth = 4;       // LookaheadSearch only
    TimeUnits sp_constant = 1;     // SpEstimation only
};

/// Record of one executed single-qubit gate, for op logging.
struct SingleExec {
    GateId gate = 0;
    PhysicalQubit phys = 0;
    TimeUnits start = 0;
    TimeUnits finish = 0;
};

/// Execution bookkeeping over a fixed circuit/dependency graph: which
/// gates ran, which double-qubit gates are ready (the waitlist), which
/// single-qubit gates are ready, and the live RoutingState. Copying the
/// context clones the full execution state, which is what scheduler
/// lookahead uses to speculate.
class MapperContext {
public:
    MapperContext(const LogicalCircuit& circuit, const DependencyGraph& deps,
                  RoutingState initial_state, const TimingModel& timing);

    const LogicalCircuit& circuit() const { return *circuit_; }
    const RoutingState& state() const { return state_; }
    const std::vector<GateId>& waitlist() const { return waitlist_; }
    bool executed(GateId g) const { return executed_[g] != 0; }
    bool done() const { return executed_count_ == circuit_->size(); }
    std::uint32_t remaining_doubles() const { return remaining_doubles_; }
    TimeUnits makespan() const;

    /// Applies `plan` for waitlisted gate `g`, marks it executed and
    /// promotes newly ready successors. Returns the gate finish time.
    TimeUnits commit_double(GateId g, const RoutingPlan& plan);

    /// Executes ready single-qubit gates to fixpoint (each at its host's
    /// current occupied time). Returns how many ran; logs them if asked.
    int flush_singles(std::vector<SingleExec>* log = nullptr);

private:
    void mark_executed(GateId g);

    const LogicalCircuit* circuit_;
    const DependencyGraph* deps_;
    TimingModel timing_;
    RoutingState state_;
    std::vector<char> executed_;
    std::vector<std::uint32_t> pending_preds_;
    std::vector<GateId> waitlist_;        // ready doubles, ascending id
    std::vector<GateId> ready_singles_;   // ready singles, ascending id
    std::size_t executed_count_ = 0;
    std::uint32_t remaining_doubles_ = 0;
};

/// Greedy pick: argmin over the waitlist of
/// max(ocp_i, ocp_j) + sp_constant * hop_distance(Q_i, Q_j), ties to the
/// lowest gate id.
GateId sp_select(const MapperContext& ctx, const DistanceMatrix& dist, TimeUnits sp_constant);

/// Exhaustive lookahead: enumerates every executable sequence of
/// min(depth, remaining) double-qubit gates, speculatively routing and
/// committing each on a cloned context, and returns the first gate of
/// the sequence with the smallest resulting makespan (ties: smallest
/// gate-id sequence). `stats`, if given, receives the branch count.
struct LeStats {
    std::uint64_t branches = 0;
};
GateId le_select(const MapperContext& ctx, const RoutingContext& rt, std::uint32_t depth,
                 LeStats* stats = nullptr);

/// Baseline: lowest gate id on the waitlist.
GateId static_select(const MapperContext& ctx);

/// Dispatch on SchedulerConfig.
GateId select_gate(const SchedulerConfig& config, const MapperContext& ctx,
                   const RoutingContext& rt);

}  // namespace duostra
