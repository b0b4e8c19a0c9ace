#include "duostra/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "duostra/error.hpp"

namespace duostra {

GateId LogicalCircuit::add_gate(std::string kind, std::vector<LogicalQubit> qubits,
                                std::vector<double> params) {
    if (qubits.empty() || qubits.size() > 3) {
        throw ValidationError("gate '" + kind + "' has " + std::to_string(qubits.size()) +
                              " operands; expected 1 to 3");
    }
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (qubits[i] >= num_qubits_) {
            throw ValidationError("gate '" + kind + "' uses qubit " + std::to_string(qubits[i]) +
                                  " but the circuit has " + std::to_string(num_qubits_) +
                                  " qubits");
        }
        for (std::size_t j = i + 1; j < qubits.size(); ++j) {
            if (qubits[i] == qubits[j]) {
                throw ValidationError("gate '" + kind + "' repeats qubit " +
                                      std::to_string(qubits[i]));
            }
        }
    }
    auto id = static_cast<GateId>(gates_.size());
    gates_.push_back(Gate{id, std::move(kind), std::move(qubits), std::move(params)});
    return id;
}

DependencyGraph build_dependency_graph(const LogicalCircuit& circuit) {
    DependencyGraph graph;
    graph.preds.resize(circuit.size());
    graph.succs.resize(circuit.size());
    // last_on[q] = most recent earlier gate touching qubit q
    std::vector<GateId> last_on(circuit.num_qubits(), kInvalidGate);
    for (const Gate& gate : circuit.gates()) {
        auto& preds = graph.preds[gate.id];
        for (LogicalQubit q : gate.qubits) {
            GateId p = last_on[q];
            if (p != kInvalidGate && std::find(preds.begin(), preds.end(), p) == preds.end()) {
                preds.push_back(p);
                graph.succs[p].push_back(gate.id);
            }
            last_on[q] = gate.id;
        }
    }
    return graph;
}

namespace {

void expand_swap(LogicalCircuit& out, LogicalQubit a, LogicalQubit b) {
    out.add_gate("cx", {a, b});
    out.add_gate("cx", {b, a});
    out.add_gate("cx", {a, b});
}

// Six-cx, nine-single network for the doubly-controlled not.
void expand_ccx(LogicalCircuit& out, LogicalQubit a, LogicalQubit b, LogicalQubit c) {
    out.add_gate("h", {c});
    out.add_gate("cx", {b, c});
    out.add_gate("tdg", {c});
    out.add_gate("cx", {a, c});
    out.add_gate("t", {c});
    out.add_gate("cx", {b, c});
    out.add_gate("tdg", {c});
    out.add_gate("cx", {a, c});
    out.add_gate("t", {b});
    out.add_gate("t", {c});
    out.add_gate("h", {c});
    out.add_gate("cx", {a, b});
    out.add_gate("t", {a});
    out.add_gate("tdg", {b});
    out.add_gate("cx", {a, b});
}

void expand_controlled_phase(LogicalCircuit& out, LogicalQubit c, LogicalQubit t, double theta) {
    out.add_gate("rz", {c}, {theta / 2});
    out.add_gate("cx", {c, t});
    out.add_gate("rz", {t}, {-theta / 2});
    out.add_gate("cx", {c, t});
    out.add_gate("rz", {t}, {theta / 2});
}

bool is_controlled_rotation(const std::string& kind) {
    return kind == "crz" || kind == "cp" || kind == "cu1";
}

}  // namespace

bool needs_decomposition(const Gate& gate) {
    return gate.arity() > 2 || gate.kind == "swap" || gate.kind == "ccx" ||
           is_controlled_rotation(gate.kind);
}

LogicalCircuit decompose(const LogicalCircuit& circuit) {
    LogicalCircuit out(circuit.num_qubits());
    for (const Gate& gate : circuit.gates()) {
        if (gate.kind == "swap" && gate.arity() == 2) {
            expand_swap(out, gate.qubits[0], gate.qubits[1]);
        } else if (gate.kind == "ccx" && gate.arity() == 3) {
            expand_ccx(out, gate.qubits[0], gate.qubits[1], gate.qubits[2]);
        } else if (is_controlled_rotation(gate.kind) && gate.arity() == 2) {
            if (gate.params.size() != 1) {
                throw ValidationError("gate '" + gate.kind + "' expects exactly one angle");
            }
            expand_controlled_phase(out, gate.qubits[0], gate.qubits[1], gate.params[0]);
        } else if (gate.arity() == 3) {
            throw ValidationError("unsupported three-qubit gate '" + gate.kind + "'");
        } else {
            out.add_gate(gate.kind, gate.qubits, gate.params);
        }
    }
    return out;
}

TimeUnits ideal_circuit_cost(const LogicalCircuit& circuit, const TimingModel& timing) {
    std::vector<TimeUnits> clock(circuit.num_qubits(), 0);
    TimeUnits makespan = 0;
    for (const Gate& gate : circuit.gates()) {
        TimeUnits start = 0;
        for (LogicalQubit q : gate.qubits) start = std::max(start, clock[q]);
        TimeUnits finish = start + timing.gate_duration(gate.arity());
        for (LogicalQubit q : gate.qubits) clock[q] = finish;
        makespan = std::max(makespan, finish);
    }
    return makespan;
}

LogicalCircuit generate_qft(std::uint32_t n) {
    if (n == 0) throw ValidationError("qft size must be at least 1");
    LogicalCircuit out(n);
    const double pi = std::acos(-1.0);
    for (std::uint32_t i = 0; i < n; ++i) {
        out.add_gate("h", {i});
        for (std::uint32_t k = 1; i + k < n; ++k) {
            expand_controlled_phase(out, i + k, i, pi / static_cast<double>(1u << k));
        }
    }
    return out;
}

std::vector<std::vector<LogicalQubit>> logical_adjacency(const LogicalCircuit& circuit) {
    std::vector<std::vector<LogicalQubit>> adj(circuit.num_qubits());
    std::unordered_set<std::uint64_t> seen;
    for (const Gate& gate : circuit.gates()) {
        if (!gate.is_double()) continue;
        LogicalQubit a = gate.qubits[0], b = gate.qubits[1];
        std::uint64_t key = (static_cast<std::uint64_t>(std::min(a, b)) << 32) | std::max(a, b);
        if (seen.insert(key).second) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
    }
    return adj;
}

}  // namespace duostra
