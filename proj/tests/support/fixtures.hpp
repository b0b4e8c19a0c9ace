#pragma once

// Shared fixtures: the seven-qubit demo circuit whose routing behavior
// is pinned down by golden values across the test suite, a 16-qubit
// emulated heavy-hex fragment, and small helpers.

#include <vector>

#include "duostra/circuit.hpp"
#include "duostra/device.hpp"

namespace testsupport {

/// Seven qubits, seven double-qubit gates (ids 2,3,4,8,9,10,11 after
/// the interleaved singles). On ring(8) with dfs placement the first
/// four doubles execute swap-free and leave occupied times
/// [3,5,5,3,4,3,0,0]; the later doubles exercise nontrivial routing.
inline duostra::LogicalCircuit seven_qubit_demo() {
    duostra::LogicalCircuit circuit(7);
    circuit.add_gate("h", {3});
    circuit.add_gate("x", {5});
    circuit.add_gate("cx", {3, 4});
    circuit.add_gate("cx", {5, 6});
    circuit.add_gate("cx", {0, 1});
    circuit.add_gate("s", {1});
    circuit.add_gate("t", {6});
    circuit.add_gate("z", {0});
    circuit.add_gate("cx", {1, 4});
    circuit.add_gate("cx", {1, 2});
    circuit.add_gate("cx", {3, 6});
    circuit.add_gate("cx", {0, 6});
    return circuit;
}

/// Gate ids of the seven doubles in seven_qubit_demo, in program order.
inline const std::vector<duostra::GateId>& demo_doubles() {
    static const std::vector<duostra::GateId> ids{2, 3, 4, 8, 9, 10, 11};
    return ids;
}

/// 16-qubit emulated heavy-hex fragment (degree <= 3, bridge qubits on
/// the rows), matching a public superconducting machine's coupling map.
inline duostra::DeviceGraph hex16_device() {
    return duostra::DeviceGraph(16, {{0, 1},
                                     {1, 2},
                                     {1, 4},
                                     {2, 3},
                                     {3, 5},
                                     {4, 7},
                                     {5, 8},
                                     {6, 7},
                                     {7, 10},
                                     {8, 9},
                                     {8, 11},
                                     {10, 12},
                                     {11, 14},
                                     {12, 13},
                                     {12, 15},
                                     {13, 14}});
}

inline duostra::DeviceGraph complete_device(std::uint32_t n) {
    std::vector<duostra::Edge> edges;
    for (duostra::PhysicalQubit a = 0; a < n; ++a) {
        for (duostra::PhysicalQubit b = a + 1; b < n; ++b) edges.push_back({a, b});
    }
    return duostra::DeviceGraph(n, std::move(edges));
}

}  // namespace testsupport
