#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "duostra/circuit.hpp"
#include "duostra/device.hpp"

namespace duostra {

inline constexpr std::uint32_t kNoQubit = std::numeric_limits<std::uint32_t>::max();

/// Injective logical->physical assignment. phys2log holds kNoQubit for
/// physical qubits that host nothing; the two directions stay inverse.
struct Mapping {
    std::vector<PhysicalQubit> log2phys;
    std::vector<LogicalQubit> phys2log;

    static Mapping empty(std::uint32_t num_logical, std::uint32_t num_physical);

    PhysicalQubit phys_of(LogicalQubit q) const { return log2phys[q]; }
    LogicalQubit logical_at(PhysicalQubit p) const { return phys2log[p]; }

    void assign(LogicalQubit q, PhysicalQubit p);

    /// Exchanges whatever the two physical qubits host (either may be empty).
    void swap_physical(PhysicalQubit a, PhysicalQubit b);

    bool consistent() const;
};

enum class PlacementStrategy { Dfs, Identity, Random };

/// Logical qubit visit order seeded by the double-qubit gates: for each
/// such gate in program order, each operand starts a pre-order DFS over
/// the first-co-occurrence adjacency lists. Qubits untouched by any
/// double-qubit gate are appended ascending.
std::vector<LogicalQubit> dfs_order_logical(const LogicalCircuit& circuit);

/// Pre-order DFS over the device from qubit 0, neighbors ascending,
/// restarting at the lowest unvisited index if ever disconnected.
std::vector<PhysicalQubit> dfs_order_physical(const DeviceGraph& device);

/// Builds the initial mapping. Dfs pairs the two DFS orders index by
/// index; Identity maps logical i to physical i; Random draws a seeded
/// uniform injection. Throws CapacityError if the circuit has more
/// qubits than the device.
Mapping initial_placement(const LogicalCircuit& circuit, const DeviceGraph& device,
                          PlacementStrategy strategy, std::uint64_t seed = 0);

}  // namespace duostra
