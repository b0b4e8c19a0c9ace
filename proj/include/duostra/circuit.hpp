#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace duostra {

using GateId = std::uint32_t;
using LogicalQubit = std::uint32_t;
using PhysicalQubit = std::uint32_t;
using TimeUnits = std::int64_t;

inline constexpr GateId kInvalidGate = 0xFFFFFFFFu;

/// Gate durations in abstract time units.
struct TimingModel {
    TimeUnits tau_single = 1;
    TimeUnits tau_double = 2;
    TimeUnits tau_swap = 6;

    TimeUnits gate_duration(std::size_t arity) const {
        return arity == 1 ? tau_single : tau_double;
    }
    bool valid() const { return tau_single >= 1 && tau_double >= 1 && tau_swap >= 1; }
};

struct Gate {
    GateId id = 0;
    std::string kind;                   // lowercase mnemonic: "h", "cx", "rz", ...
    std::vector<LogicalQubit> qubits;   // 1..3 distinct operands, program order
    std::vector<double> params;         // rotation angles in radians

    std::size_t arity() const { return qubits.size(); }
    bool is_single() const { return qubits.size() == 1; }
    bool is_double() const { return qubits.size() == 2; }
};

/// A gate list over `num_qubits` logical qubits. Gate ids are dense and
/// equal to the gate's position in program order.
class LogicalCircuit {
public:
    LogicalCircuit() = default;
    explicit LogicalCircuit(std::uint32_t num_qubits) : num_qubits_(num_qubits) {}

    /// Appends a gate; validates operand count (1..3), range, and distinctness.
    GateId add_gate(std::string kind, std::vector<LogicalQubit> qubits,
                    std::vector<double> params = {});

    std::uint32_t num_qubits() const { return num_qubits_; }
    const std::vector<Gate>& gates() const { return gates_; }
    const Gate& gate(GateId id) const { return gates_[id]; }
    std::size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }

private:
    std::uint32_t num_qubits_ = 0;
    std::vector<Gate> gates_;
};

/// Predecessor/successor lists per gate, indexed by gate id.
/// A gate's predecessors are the most recent earlier gate on each of its
/// qubits; duplicate edges are collapsed.
struct DependencyGraph {
    std::vector<std::vector<GateId>> preds;
    std::vector<std::vector<GateId>> succs;

    std::size_t size() const { return preds.size(); }
};

DependencyGraph build_dependency_graph(const LogicalCircuit& circuit);

/// Rewrites swap, ccx and controlled-rotation gates (crz/cp/cu1) into
/// {1q, cx} networks; everything else is copied through in order. Output
/// gate ids are re-assigned densely. A 3-qubit gate other than ccx is a
/// validation error.
LogicalCircuit decompose(const LogicalCircuit& circuit);

/// True for gates the mapper cannot execute natively: any three-qubit
/// gate plus swap, ccx and the controlled phase rotations.
bool needs_decomposition(const Gate& gate);

/// ASAP makespan of the logical circuit, ignoring connectivity.
TimeUnits ideal_circuit_cost(const LogicalCircuit& circuit, const TimingModel& timing);

/// Quantum Fourier transform on n qubits, already decomposed to {h, rz, cx}.
/// The terminal bit-reversal swaps are omitted, so outputs appear in
/// reversed qubit order.
LogicalCircuit generate_qft(std::uint32_t n);

/// Per-qubit neighbor lists induced by the double-qubit gates, each list
/// ordered by first co-occurrence in program order, without duplicates.
std::vector<std::vector<LogicalQubit>> logical_adjacency(const LogicalCircuit& circuit);

}  // namespace duostra
