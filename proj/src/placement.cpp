#include "duostra/placement.hpp"

#include <algorithm>
#include <random>

#include "duostra/error.hpp"

namespace duostra {

Mapping Mapping::empty(std::uint32_t num_logical, std::uint32_t num_physical) {
    Mapping m;
    m.log2phys.assign(num_logical, kNoQubit);
    m.phys2log.assign(num_physical, kNoQubit);
    return m;
}

void Mapping::assign(LogicalQubit q, PhysicalQubit p) {
    log2phys[q] = p;
    phys2log[p] = q;
}

void Mapping::swap_physical(PhysicalQubit a, PhysicalQubit b) {
    LogicalQubit la = phys2log[a];
    LogicalQubit lb = phys2log[b];
    phys2log[a] = lb;
    phys2log[b] = la;
    if (la != kNoQubit) log2phys[la] = b;
    if (lb != kNoQubit) log2phys[lb] = a;
}

bool Mapping::consistent() const {
    for (LogicalQubit q = 0; q < log2phys.size(); ++q) {
        PhysicalQubit p = log2phys[q];
        if (p == kNoQubit || p >= phys2log.size() || phys2log[p] != q) return false;
    }
    std::size_t hosted = 0;
    for (PhysicalQubit p = 0; p < phys2log.size(); ++p) {
        LogicalQubit q = phys2log[p];
        if (q == kNoQubit) continue;
        ++hosted;
        if (q >= log2phys.size() || log2phys[q] != p) return false;
    }
    return hosted == log2phys.size();
}

std::vector<LogicalQubit> dfs_order_logical(const LogicalCircuit& circuit) {
    auto adj = logical_adjacency(circuit);
    std::vector<LogicalQubit> order;
    order.reserve(circuit.num_qubits());
    std::vector<char> visited(circuit.num_qubits(), 0);

    // Iterative pre-order matching the recursive formulation: visit the
    // seed, then each unvisited neighbor in adjacency-list order, depth
    // first.
    auto dfs_from = [&](LogicalQubit seed) {
        if (visited[seed]) return;
        std::vector<std::pair<LogicalQubit, std::size_t>> stack;
        visited[seed] = 1;
        order.push_back(seed);
        stack.emplace_back(seed, 0);
        while (!stack.empty()) {
            auto& [q, cursor] = stack.back();
            if (cursor == adj[q].size()) {
                stack.pop_back();
                continue;
            }
            LogicalQubit w = adj[q][cursor++];
            if (!visited[w]) {
                visited[w] = 1;
                order.push_back(w);
                stack.emplace_back(w, 0);
            }
        }
    };

    for (const Gate& gate : circuit.gates()) {
        if (!gate.is_double()) continue;
        dfs_from(gate.qubits[0]);
        dfs_from(gate.qubits[1]);
    }
    for (LogicalQubit q = 0; q < circuit.num_qubits(); ++q) {
        if (!visited[q]) order.push_back(q);
    }
    return order;
}

std::vector<PhysicalQubit> dfs_order_physical(const DeviceGraph& device) {
    std::vector<PhysicalQubit> order;
    order.reserve(device.num_qubits());
    std::vector<char> visited(device.num_qubits(), 0);
    for (PhysicalQubit seed = 0; seed < device.num_qubits(); ++seed) {
        if (visited[seed]) continue;
        std::vector<std::pair<PhysicalQubit, std::size_t>> stack;
        visited[seed] = 1;
        order.push_back(seed);
        stack.emplace_back(seed, 0);
        while (!stack.empty()) {
            auto& [q, cursor] = stack.back();
            const auto& nbrs = device.adjacency(q);
            if (cursor == nbrs.size()) {
                stack.pop_back();
                continue;
            }
            PhysicalQubit w = nbrs[cursor++];
            if (!visited[w]) {
                visited[w] = 1;
                order.push_back(w);
                stack.emplace_back(w, 0);
            }
        }
    }
    return order;
}

namespace {

// Portable seeded shuffle (std::shuffle is implementation-defined).
template <typename T>
void fisher_yates(std::vector<T>& items, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace

Mapping initial_placement(const LogicalCircuit& circuit, const DeviceGraph& device,
                          PlacementStrategy strategy, std::uint64_t seed) {
    std::uint32_t num_logical = circuit.num_qubits();
    std::uint32_t num_physical = device.num_qubits();
    if (num_logical > num_physical) {
        throw CapacityError("circuit has " + std::to_string(num_logical) +
                            " qubits but the device only has " + std::to_string(num_physical));
    }
    Mapping mapping = Mapping::empty(num_logical, num_physical);
    switch (strategy) {
        case PlacementStrategy::Identity: {
            for (LogicalQubit q = 0; q < num_logical; ++q) mapping.assign(q, q);
            break;
        }
        case PlacementStrategy::Random: {
            std::vector<PhysicalQubit> phys(num_physical);
            for (PhysicalQubit p = 0; p < num_physical; ++p) phys[p] = p;
            fisher_yates(phys, seed);
            for (LogicalQubit q = 0; q < num_logical; ++q) mapping.assign(q, phys[q]);
            break;
        }
        case PlacementStrategy::Dfs: {
            std::vector<LogicalQubit> logical = dfs_order_logical(circuit);
            std::vector<PhysicalQubit> physical = dfs_order_physical(device);
            for (std::uint32_t i = 0; i < num_logical; ++i) {
                mapping.assign(logical[i], physical[i]);
            }
            break;
        }
    }
    return mapping;
}

}  // namespace duostra
