#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "duostra/circuit.hpp"

namespace duostra {

using Edge = std::pair<PhysicalQubit, PhysicalQubit>;  // canonical: first < second

/// Undirected, connected coupling graph of a device.
/// Adjacency lists are sorted ascending; the edge list is canonical
/// (each edge (i,j) with i<j, lexicographically sorted, deduplicated).
class DeviceGraph {
public:
    DeviceGraph(std::uint32_t num_qubits, std::vector<Edge> edges);

    std::uint32_t num_qubits() const { return num_qubits_; }
    const std::vector<PhysicalQubit>& adjacency(PhysicalQubit q) const { return adj_[q]; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t degree(PhysicalQubit q) const { return adj_[q].size(); }
    bool are_adjacent(PhysicalQubit a, PhysicalQubit b) const;

    /// Index of edge (a,b) in the canonical edge list; order-insensitive.
    std::uint32_t edge_index(PhysicalQubit a, PhysicalQubit b) const;

private:
    std::uint32_t num_qubits_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<PhysicalQubit>> adj_;
    std::unordered_map<std::uint64_t, std::uint32_t> edge_index_;
};

/// Parses a device from JSON: {"num_qubits": N, "edges": [[i,j], ...]}.
/// Unknown keys are ignored. Self-loops, out-of-range endpoints and
/// disconnected graphs are validation errors naming the offender.
DeviceGraph load_device(const std::string& json_text);

/// Serializes a device to the JSON shape accepted by load_device.
std::string device_to_json(const DeviceGraph& device);

/// Builds a named topology from a spec string:
///   "line:N", "ring:N", "grid:RxC", "heavy_hex:RxC".
/// heavy_hex is a brick-wall lattice of hexagonal cells with one degree-2
/// bridge qubit on every cell edge (max degree 3); an RxC lattice has
/// 5RC+4R+4C-1 qubits and 6RC+4R+4C-2 edges.
DeviceGraph builtin_topology(const std::string& spec);

/// Hop distances from `source` to every qubit (plain BFS).
std::vector<std::int32_t> bfs_hops(const DeviceGraph& device, PhysicalQubit source);

/// All-pairs shortest hop counts. Dense n*n table up to `dense_threshold`
/// qubits; above that, rows are computed on demand and memoized behind a
/// mutex, so concurrent reads are safe in both modes.
class DistanceMatrix {
public:
    explicit DistanceMatrix(const DeviceGraph& device, std::uint32_t dense_threshold = 4096);

    std::int32_t distance(PhysicalQubit a, PhysicalQubit b) const;

private:
    const DeviceGraph& device_;
    std::uint32_t n_;
    bool dense_;
    std::vector<std::int32_t> table_;  // dense mode: row-major n*n
    mutable std::mutex mutex_;
    mutable std::unordered_map<PhysicalQubit, std::vector<std::int32_t>> rows_;
};

}  // namespace duostra
