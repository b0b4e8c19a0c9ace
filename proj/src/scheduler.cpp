#include "duostra/scheduler.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "duostra/error.hpp"

namespace duostra {

MapperContext::MapperContext(const LogicalCircuit& circuit, const DependencyGraph& deps,
                             RoutingState initial_state, const TimingModel& timing)
    : circuit_(&circuit), deps_(&deps), timing_(timing), state_(std::move(initial_state)) {
    const std::size_t n = circuit.size();
    if (deps.preds.size() != n || deps.succs.size() != n) {
        throw std::logic_error("MapperContext: dependency graph does not match circuit");
    }
    executed_.assign(n, 0);
    pending_preds_.resize(n);
    for (GateId g = 0; g < n; ++g) {
        const Gate& gate = circuit.gate(g);
        if (gate.arity() > 2) {
            throw std::logic_error("MapperContext: circuit contains undecomposed gates");
        }
        if (gate.is_double()) ++remaining_doubles_;
        pending_preds_[g] = static_cast<std::uint32_t>(deps.preds[g].size());
        if (pending_preds_[g] == 0) {
            (gate.is_double() ? waitlist_ : ready_singles_).push_back(g);
        }
    }
}

TimeUnits MapperContext::makespan() const {
    TimeUnits m = 0;
    for (TimeUnits t : state_.ocp) m = std::max(m, t);
    return m;
}

void MapperContext::mark_executed(GateId g) {
    executed_[g] = 1;
    ++executed_count_;
    if (circuit_->gate(g).is_double()) --remaining_doubles_;
    for (GateId s : deps_->succs[g]) {
        if (--pending_preds_[s] != 0) continue;
        auto& bucket = circuit_->gate(s).is_double() ? waitlist_ : ready_singles_;
        bucket.insert(std::lower_bound(bucket.begin(), bucket.end(), s), s);
    }
}

TimeUnits MapperContext::commit_double(GateId g, const RoutingPlan& plan) {
    auto it = std::lower_bound(waitlist_.begin(), waitlist_.end(), g);
    if (it == waitlist_.end() || *it != g) {
        throw std::logic_error("commit_double: gate " + std::to_string(g) + " is not ready");
    }
    TimeUnits finish = apply_plan(state_, plan, circuit_->gate(g), timing_);
    waitlist_.erase(it);
    mark_executed(g);
    return finish;
}

int MapperContext::flush_singles(std::vector<SingleExec>* log) {
    int ran = 0;
    while (!ready_singles_.empty()) {
        std::vector<GateId> batch;
        batch.swap(ready_singles_);
        for (GateId g : batch) {
            PhysicalQubit p = state_.mapping.phys_of(circuit_->gate(g).qubits[0]);
            TimeUnits start = state_.ocp[p];
            TimeUnits finish = start + timing_.tau_single;
            state_.ocp[p] = finish;
            if (log) log->push_back(SingleExec{g, p, start, finish});
            mark_executed(g);
            ++ran;
        }
    }
    return ran;
}

GateId sp_select(const MapperContext& ctx, const DistanceMatrix& dist, TimeUnits sp_constant) {
    if (ctx.waitlist().empty()) throw std::logic_error("sp_select: empty waitlist");
    const RoutingState& state = ctx.state();
    GateId pick = kInvalidGate;
    TimeUnits best = std::numeric_limits<TimeUnits>::max();
    for (GateId g : ctx.waitlist()) {
        const Gate& gate = ctx.circuit().gate(g);
        PhysicalQubit p0 = state.mapping.phys_of(gate.qubits[0]);
        PhysicalQubit p1 = state.mapping.phys_of(gate.qubits[1]);
        TimeUnits score =
            std::max(state.ocp[p0], state.ocp[p1]) + sp_constant * dist.distance(p0, p1);
        if (score < best) {
            best = score;
            pick = g;
        }
    }
    return pick;
}

namespace {

// Exhausts every executable double-gate sequence of length `depth` from
// `ctx`, returning the smallest reachable makespan. Ascending candidate
// order plus strict improvement keeps ties on the lexicographically
// smallest sequence.
TimeUnits le_search(const MapperContext& ctx, const RoutingContext& rt, std::uint32_t depth,
                    LeStats* stats) {
    if (depth == 0 || ctx.remaining_doubles() == 0) return ctx.makespan();
    TimeUnits best = std::numeric_limits<TimeUnits>::max();
    std::vector<GateId> candidates = ctx.waitlist();
    for (GateId g : candidates) {
        if (stats) ++stats->branches;
        MapperContext clone = ctx;
        const Gate& gate = clone.circuit().gate(g);
        PhysicalQubit p0 = clone.state().mapping.phys_of(gate.qubits[0]);
        PhysicalQubit p1 = clone.state().mapping.phys_of(gate.qubits[1]);
        RoutingPlan plan =
            route_pair(rt.router, *rt.device, rt.dist, clone.state(), p0, p1, rt.timing.tau_swap);
        clone.commit_double(g, plan);
        clone.flush_singles();
        best = std::min(best, le_search(clone, rt, depth - 1, stats));
    }
    return best;
}

}  // namespace

GateId le_select(const MapperContext& ctx, const RoutingContext& rt, std::uint32_t depth,
                 LeStats* stats) {
    if (ctx.waitlist().empty()) throw std::logic_error("le_select: empty waitlist");
    if (rt.device == nullptr) throw std::logic_error("le_select: missing device");
    depth = std::max(depth, 1u);

    GateId pick = kInvalidGate;
    TimeUnits best = std::numeric_limits<TimeUnits>::max();
    std::vector<GateId> candidates = ctx.waitlist();
    for (GateId g : candidates) {
        if (stats) ++stats->branches;
        MapperContext clone = ctx;
        const Gate& gate = clone.circuit().gate(g);
        PhysicalQubit p0 = clone.state().mapping.phys_of(gate.qubits[0]);
        PhysicalQubit p1 = clone.state().mapping.phys_of(gate.qubits[1]);
        RoutingPlan plan =
            route_pair(rt.router, *rt.device, rt.dist, clone.state(), p0, p1, rt.timing.tau_swap);
        clone.commit_double(g, plan);
        clone.flush_singles();
        TimeUnits cost = le_search(clone, rt, depth - 1, stats);
        if (cost < best) {
            best = cost;
            pick = g;
        }
    }
    return pick;
}

GateId static_select(const MapperContext& ctx) {
    if (ctx.waitlist().empty()) throw std::logic_error("static_select: empty waitlist");
    return ctx.waitlist().front();
}

GateId select_gate(const SchedulerConfig& config, const MapperContext& ctx,
                   const RoutingContext& rt) {
    switch (config.kind) {
        case SchedulerKind::SpEstimation:
            if (rt.dist == nullptr) throw std::logic_error("select_gate: missing distances");
            return sp_select(ctx, *rt.dist, config.sp_constant);
        case SchedulerKind::LookaheadSearch:
            return le_select(ctx, rt, config.depth);
        case SchedulerKind::Static:
            return static_select(ctx);
    }
    throw std::logic_error("select_gate: unknown scheduler");
}

}  // namespace duostra
