#include "duostra/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "duostra/error.hpp"

namespace duostra {

namespace {

std::string format_params(const std::vector<double>& params) {
    if (params.empty()) return "";
    std::string out = "(";
    char buf[64];
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out += ",";
        std::snprintf(buf, sizeof buf, "%.12g", params[i]);
        out += buf;
    }
    out += ")";
    return out;
}

}  // namespace

MappedResult map_circuit(const LogicalCircuit& circuit, const DeviceGraph& device,
                         const MapRequest& request, const DistanceMatrix* dist) {
    if (!request.timing.valid()) {
        throw ValidationError("timing durations must be positive");
    }
    for (GateId g = 0; g < circuit.size(); ++g) {
        const Gate& gate = circuit.gate(g);
        if (needs_decomposition(gate)) {
            throw ValidationError("gate " + std::to_string(g) + " (" + gate.kind +
                                  ") requires decomposition before mapping");
        }
    }

    DependencyGraph deps = build_dependency_graph(circuit);
    Mapping initial = initial_placement(circuit, device, request.placement, request.seed);

    std::optional<DistanceMatrix> local_dist;
    const DistanceMatrix* dm = dist;
    bool needs_dist = request.router == RouterKind::ShortestPath ||
                      request.scheduler.kind == SchedulerKind::SpEstimation;
    if (needs_dist && dm == nullptr) {
        local_dist.emplace(device);
        dm = &*local_dist;
    }

    RoutingState start_state;
    start_state.ocp.assign(device.num_qubits(), 0);
    start_state.mapping = initial;
    MapperContext ctx(circuit, deps, std::move(start_state), request.timing);
    RoutingContext rt{&device, dm, request.router, request.timing};

    MappedResult result;
    result.num_physical = device.num_qubits();
    result.initial_mapping = initial;
    result.edge_swap_counts.assign(device.edges().size(), 0);

    std::vector<SingleExec> singles;
    auto drain_singles = [&] {
        singles.clear();
        ctx.flush_singles(&singles);
        for (const SingleExec& se : singles) {
            const Gate& gate = circuit.gate(se.gate);
            result.ops.push_back(PhysOp{PhysOp::Kind::Gate, gate.kind, gate.params,
                                        {se.phys}, se.start, se.finish, se.gate});
        }
    };

    drain_singles();
    while (!ctx.done()) {
        if (ctx.waitlist().empty()) {
            throw std::logic_error("map_circuit: no ready gate, dependency graph is inconsistent");
        }
        GateId g = select_gate(request.scheduler, ctx, rt);
        const Gate& gate = circuit.gate(g);
        PhysicalQubit p0 = ctx.state().mapping.phys_of(gate.qubits[0]);
        PhysicalQubit p1 = ctx.state().mapping.phys_of(gate.qubits[1]);
        RoutingPlan plan =
            route_pair(request.router, device, dm, ctx.state(), p0, p1, request.timing.tau_swap);

        for (const auto* chain : {&plan.swaps0, &plan.swaps1}) {
            for (const TimedSwap& sw : *chain) {
                result.ops.push_back(PhysOp{PhysOp::Kind::Swap, "swap", {},
                                            {sw.from, sw.to}, sw.start, sw.finish, g});
                ++result.swap_count;
                ++result.edge_swap_counts[device.edge_index(sw.from, sw.to)];
            }
        }
        TimeUnits finish = ctx.commit_double(g, plan);
        result.ops.push_back(PhysOp{PhysOp::Kind::Gate, gate.kind, gate.params,
                                    {plan.final_edge.first, plan.final_edge.second},
                                    plan.gate_start, finish, g});
        if (request.trace) request.trace(g, plan);
        drain_singles();
    }

    result.final_mapping = ctx.state().mapping;
    std::stable_sort(result.ops.begin(), result.ops.end(),
                     [](const PhysOp& a, const PhysOp& b) { return a.start < b.start; });
    result.mapping_cost = mapping_cost(result);
    return result;
}

namespace {

struct Replay {
    const LogicalCircuit* circuit;
    const DeviceGraph* device;
    const TimingModel* timing;
    std::vector<Violation>* out;

    Mapping mapping;
    std::vector<TimeUnits> finish;             // per physical qubit
    std::vector<std::vector<GateId>> per_qubit;  // program order per logical qubit
    std::vector<std::size_t> cursor;           // next expected index into per_qubit
    std::vector<std::uint32_t> exec_count;     // per logical gate

    void flag(ViolationKind kind, std::size_t idx, std::string detail) {
        out->push_back(Violation{kind, idx, std::move(detail)});
    }

    // Runs the per-op checks in severity order and stops at the first
    // failure; the op's qubit clocks still advance so later diagnostics
    // stay local.
    void step(const PhysOp& op, std::size_t idx) {
        bool structural = true;
        for (PhysicalQubit q : op.qubits) {
            if (q >= device->num_qubits()) {
                flag(ViolationKind::Structure, idx,
                     "physical qubit " + std::to_string(q) + " is out of range");
                return;
            }
        }
        if (op.qubits.size() < 1 || op.qubits.size() > 2 ||
            (op.qubits.size() == 2 && op.qubits[0] == op.qubits[1]) ||
            (op.kind == PhysOp::Kind::Swap && op.qubits.size() != 2)) {
            flag(ViolationKind::Structure, idx, "malformed operand list");
            return;
        }
        if (op.kind == PhysOp::Kind::Gate && op.source_gate >= circuit->size()) {
            flag(ViolationKind::Structure, idx, "source gate id out of range");
            return;
        }

        if (structural && op.qubits.size() == 2 &&
            !device->are_adjacent(op.qubits[0], op.qubits[1])) {
            flag(ViolationKind::EdgeMissing, idx,
                 "(" + std::to_string(op.qubits[0]) + "," + std::to_string(op.qubits[1]) +
                     ") is not a device edge");
            structural = false;
        }

        if (structural && op.kind == PhysOp::Kind::Gate) {
            const Gate& gate = circuit->gate(op.source_gate);
            if (gate.arity() != op.qubits.size()) {
                flag(ViolationKind::Structure, idx, "operand count differs from the source gate");
                structural = false;
            } else {
                for (std::size_t k = 0; structural && k < op.qubits.size(); ++k) {
                    LogicalQubit hosted = mapping.logical_at(op.qubits[k]);
                    if (hosted != gate.qubits[k]) {
                        flag(ViolationKind::WrongLogicals, idx,
                             "Q" + std::to_string(op.qubits[k]) + " hosts q" +
                                 (hosted == kNoQubit ? std::string("<none>")
                                                     : std::to_string(hosted)) +
                                 ", expected q" + std::to_string(gate.qubits[k]));
                        structural = false;
                    }
                }
            }
            if (structural) {
                for (LogicalQubit q : gate.qubits) {
                    if (cursor[q] >= per_qubit[q].size() ||
                        per_qubit[q][cursor[q]] != op.source_gate) {
                        flag(ViolationKind::OrderBroken, idx,
                             "gate " + std::to_string(op.source_gate) +
                                 " runs out of order on q" + std::to_string(q));
                        structural = false;
                        break;
                    }
                }
            }
            if (structural) {
                for (LogicalQubit q : gate.qubits) ++cursor[q];
            }
            ++exec_count[op.source_gate];
        }

        if (structural) {
            TimeUnits expected_start = 0;
            for (PhysicalQubit q : op.qubits) {
                expected_start = std::max(expected_start, finish[q]);
            }
            TimeUnits duration = op.kind == PhysOp::Kind::Swap
                                     ? timing->tau_swap
                                     : timing->gate_duration(op.qubits.size());
            if (op.start != expected_start) {
                flag(ViolationKind::TimingBroken, idx,
                     "start " + std::to_string(op.start) + ", expected " +
                         std::to_string(expected_start));
            } else if (op.finish != op.start + duration) {
                flag(ViolationKind::TimingBroken, idx,
                     "duration " + std::to_string(op.finish - op.start) + ", expected " +
                         std::to_string(duration));
            }
        }

        if (op.kind == PhysOp::Kind::Swap) {
            mapping.swap_physical(op.qubits[0], op.qubits[1]);
        }
        for (PhysicalQubit q : op.qubits) finish[q] = op.finish;
    }
};

}  // namespace

std::vector<Violation> verify(const LogicalCircuit& circuit, const DeviceGraph& device,
                              const MappedResult& result, const TimingModel& timing) {
    std::vector<Violation> violations;
    if (result.num_physical != device.num_qubits() ||
        result.initial_mapping.log2phys.size() != circuit.num_qubits() ||
        result.initial_mapping.phys2log.size() != device.num_qubits() ||
        !result.initial_mapping.consistent()) {
        violations.push_back(Violation{ViolationKind::Structure, result.ops.size(),
                                       "result shape does not match circuit and device"});
        return violations;
    }

    Replay replay;
    replay.circuit = &circuit;
    replay.device = &device;
    replay.timing = &timing;
    replay.out = &violations;
    replay.mapping = result.initial_mapping;
    replay.finish.assign(device.num_qubits(), 0);
    replay.per_qubit.resize(circuit.num_qubits());
    replay.cursor.assign(circuit.num_qubits(), 0);
    replay.exec_count.assign(circuit.size(), 0);
    for (GateId g = 0; g < circuit.size(); ++g) {
        for (LogicalQubit q : circuit.gate(g).qubits) replay.per_qubit[q].push_back(g);
    }

    for (std::size_t i = 0; i < result.ops.size(); ++i) replay.step(result.ops[i], i);

    if (replay.mapping.log2phys != result.final_mapping.log2phys ||
        replay.mapping.phys2log != result.final_mapping.phys2log) {
        violations.push_back(Violation{ViolationKind::FinalMappingMismatch, result.ops.size(),
                                       "declared final mapping differs from the replayed one"});
    }
    for (GateId g = 0; g < circuit.size(); ++g) {
        if (replay.exec_count[g] != 1) {
            violations.push_back(
                Violation{ViolationKind::GateSetMismatch, result.ops.size(),
                          "gate " + std::to_string(g) + " executed " +
                              std::to_string(replay.exec_count[g]) + " times"});
        }
    }
    return violations;
}

TimeUnits mapping_cost(const MappedResult& result) {
    TimeUnits cost = 0;
    for (const PhysOp& op : result.ops) cost = std::max(cost, op.finish);
    return cost;
}

EdgeUtilization edge_utilization(const MappedResult& result, const DeviceGraph& device) {
    EdgeUtilization util;
    util.counts.assign(device.edges().size(), 0);
    for (const PhysOp& op : result.ops) {
        if (op.kind != PhysOp::Kind::Swap) continue;
        ++util.counts[device.edge_index(op.qubits[0], op.qubits[1])];
    }
    double mean = 0.0;
    for (std::uint64_t c : util.counts) {
        mean += static_cast<double>(c);
        util.max = std::max(util.max, c);
    }
    if (!util.counts.empty()) {
        mean /= static_cast<double>(util.counts.size());
        double var = 0.0;
        for (std::uint64_t c : util.counts) {
            double d = static_cast<double>(c) - mean;
            var += d * d;
        }
        util.stddev = std::sqrt(var / static_cast<double>(util.counts.size()));
    }
    return util;
}

std::string emit_mapped_qasm(const MappedResult& result, bool expand_swaps) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << result.num_physical << "];\n";
    for (const PhysOp& op : result.ops) {
        if (op.kind == PhysOp::Kind::Swap && expand_swaps) {
            PhysicalQubit a = op.qubits[0];
            PhysicalQubit b = op.qubits[1];
            out << "cx q[" << a << "],q[" << b << "];\n";
            out << "cx q[" << b << "],q[" << a << "];\n";
            out << "cx q[" << a << "],q[" << b << "];\n";
            continue;
        }
        out << op.gate_kind << format_params(op.params);
        for (std::size_t i = 0; i < op.qubits.size(); ++i) {
            out << (i ? "," : " ") << "q[" << op.qubits[i] << "]";
        }
        out << ";\n";
    }
    return out.str();
}

CostReport make_cost_report(const LogicalCircuit& circuit, const MappedResult& result,
                            const DeviceGraph& device, const TimingModel& timing,
                            double wall_ms) {
    CostReport report;
    report.ideal_cost = ideal_circuit_cost(circuit, timing);
    report.mapping_cost = result.mapping_cost;
    report.swap_count = result.swap_count;
    report.wall_ms = wall_ms;
    EdgeUtilization util = edge_utilization(result, device);
    report.util_stddev = util.stddev;
    report.util_max = util.max;
    return report;
}

const char* to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::Structure: return "structure";
        case ViolationKind::EdgeMissing: return "edge-missing";
        case ViolationKind::WrongLogicals: return "wrong-logicals";
        case ViolationKind::OrderBroken: return "order-broken";
        case ViolationKind::TimingBroken: return "timing-broken";
        case ViolationKind::FinalMappingMismatch: return "final-mapping-mismatch";
        case ViolationKind::GateSetMismatch: return "gate-set-mismatch";
    }
    return "unknown";
}

}  // namespace duostra
