#pragma once

// Seeded generators for property tests. All draws go through
// std::mt19937_64 with explicit modulo so sequences are stable across
// standard library implementations.

#include <cstdint>
#include <random>
#include <vector>

#include "duostra/circuit.hpp"
#include "duostra/device.hpp"
#include "duostra/placement.hpp"
#include "duostra/router.hpp"

namespace testsupport {

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
    return bound == 0 ? 0 : rng() % bound;
}

inline duostra::LogicalCircuit random_circuit(std::mt19937_64& rng, std::uint32_t num_qubits,
                                              std::uint32_t num_gates,
                                              unsigned percent_single = 40) {
    static const char* singles[] = {"h", "x", "z", "s", "t", "rz"};
    duostra::LogicalCircuit circuit(num_qubits);
    for (std::uint32_t i = 0; i < num_gates; ++i) {
        if (num_qubits < 2 || draw(rng, 100) < percent_single) {
            const char* kind = singles[draw(rng, 6)];
            auto q = static_cast<duostra::LogicalQubit>(draw(rng, num_qubits));
            if (kind == std::string("rz")) {
                circuit.add_gate(kind, {q}, {static_cast<double>(draw(rng, 628)) / 100.0});
            } else {
                circuit.add_gate(kind, {q});
            }
        } else {
            auto a = static_cast<duostra::LogicalQubit>(draw(rng, num_qubits));
            auto b = static_cast<duostra::LogicalQubit>(draw(rng, num_qubits - 1));
            if (b >= a) ++b;
            circuit.add_gate(draw(rng, 2) == 0 ? "cx" : "cz", {a, b});
        }
    }
    return circuit;
}

/// Connected undirected graph: a random attachment tree plus extra edges.
inline std::vector<duostra::Edge> random_connected_edges(std::mt19937_64& rng, std::uint32_t n,
                                                         std::uint32_t extra) {
    std::vector<duostra::Edge> edges;
    auto has = [&](duostra::PhysicalQubit a, duostra::PhysicalQubit b) {
        if (a > b) std::swap(a, b);
        for (const duostra::Edge& e : edges) {
            if (e.first == a && e.second == b) return true;
        }
        return false;
    };
    for (duostra::PhysicalQubit v = 1; v < n; ++v) {
        edges.push_back({static_cast<duostra::PhysicalQubit>(draw(rng, v)), v});
    }
    for (std::uint32_t i = 0; i < extra && n >= 2; ++i) {
        auto a = static_cast<duostra::PhysicalQubit>(draw(rng, n));
        auto b = static_cast<duostra::PhysicalQubit>(draw(rng, n - 1));
        if (b >= a) ++b;
        if (!has(a, b)) edges.push_back({std::min(a, b), std::max(a, b)});
    }
    return edges;
}

/// Routing state with identity hosting and uniform ocp in [lo, hi].
inline duostra::RoutingState random_state(std::mt19937_64& rng,
                                          const duostra::DeviceGraph& device,
                                          duostra::TimeUnits lo, duostra::TimeUnits hi) {
    duostra::RoutingState state;
    state.ocp.resize(device.num_qubits());
    for (duostra::TimeUnits& t : state.ocp) {
        t = lo + static_cast<duostra::TimeUnits>(
                     draw(rng, static_cast<std::uint64_t>(hi - lo + 1)));
    }
    state.mapping = duostra::Mapping::empty(device.num_qubits(), device.num_qubits());
    for (duostra::PhysicalQubit p = 0; p < device.num_qubits(); ++p) state.mapping.assign(p, p);
    return state;
}

}  // namespace testsupport
