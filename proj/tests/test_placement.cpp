#include <doctest.h>

#include <random>
#include <set>

#include "duostra/error.hpp"
#include "duostra/placement.hpp"
#include "support/fixtures.hpp"

using namespace duostra;
using testsupport::seven_qubit_demo;

TEST_CASE("mapping primitives") {
    Mapping m = Mapping::empty(2, 4);
    CHECK_FALSE(m.consistent());  // nothing hosted yet
    m.assign(0, 2);
    m.assign(1, 0);
    CHECK(m.consistent());
    CHECK(m.phys_of(0) == 2);
    CHECK(m.logical_at(0) == 1);
    CHECK(m.logical_at(3) == kNoQubit);

    SUBCASE("swap of two hosted qubits") {
        m.swap_physical(0, 2);
        CHECK(m.phys_of(0) == 0);
        CHECK(m.phys_of(1) == 2);
        CHECK(m.consistent());
    }
    SUBCASE("swap into an empty slot") {
        m.swap_physical(2, 3);
        CHECK(m.phys_of(0) == 3);
        CHECK(m.logical_at(2) == kNoQubit);
        CHECK(m.consistent());
    }
    SUBCASE("swap of two empty slots is a no-op") {
        m.swap_physical(1, 3);
        CHECK(m.phys_of(0) == 2);
        CHECK(m.phys_of(1) == 0);
        CHECK(m.consistent());
    }
    SUBCASE("inconsistency is detected") {
        m.phys2log[0] = kNoQubit;  // orphan logical 1
        CHECK_FALSE(m.consistent());
    }
}

TEST_CASE("logical DFS order is seeded by the double-qubit gates") {
    CHECK(dfs_order_logical(seven_qubit_demo()) ==
          std::vector<LogicalQubit>{3, 4, 1, 0, 6, 5, 2});

    SUBCASE("untouched qubits are appended ascending") {
        LogicalCircuit circuit(5);
        circuit.add_gate("cx", {3, 1});
        circuit.add_gate("h", {0});
        CHECK(dfs_order_logical(circuit) == std::vector<LogicalQubit>{3, 1, 0, 2, 4});
    }
    SUBCASE("no doubles means ascending order") {
        LogicalCircuit circuit(3);
        circuit.add_gate("h", {2});
        CHECK(dfs_order_logical(circuit) == std::vector<LogicalQubit>{0, 1, 2});
    }
}

TEST_CASE("physical DFS order walks ascending neighbors first") {
    CHECK(dfs_order_physical(builtin_topology("ring:8")) ==
          std::vector<PhysicalQubit>{0, 1, 2, 3, 4, 5, 6, 7});

    // grid 2x3: 0-1-2 over 3-4-5; from 0 the walk dives 0,1,2 then backtracks
    CHECK(dfs_order_physical(builtin_topology("grid:2x3")) ==
          std::vector<PhysicalQubit>{0, 1, 2, 5, 4, 3});
}

TEST_CASE("dfs placement pairs the two orders") {
    Mapping m = initial_placement(seven_qubit_demo(), builtin_topology("ring:8"),
                                  PlacementStrategy::Dfs);
    CHECK(m.log2phys == std::vector<PhysicalQubit>{3, 2, 6, 0, 1, 5, 4});
    CHECK(m.logical_at(7) == kNoQubit);
    CHECK(m.consistent());
}

TEST_CASE("identity placement") {
    LogicalCircuit circuit(4);
    Mapping m = initial_placement(circuit, builtin_topology("line:6"),
                                  PlacementStrategy::Identity);
    CHECK(m.log2phys == std::vector<PhysicalQubit>{0, 1, 2, 3});
    CHECK(m.consistent());
}

TEST_CASE("random placement is a seeded injection") {
    LogicalCircuit circuit(5);
    DeviceGraph device = builtin_topology("grid:3x3");
    Mapping a = initial_placement(circuit, device, PlacementStrategy::Random, 42);
    Mapping b = initial_placement(circuit, device, PlacementStrategy::Random, 42);
    CHECK(a.log2phys == b.log2phys);
    CHECK(a.consistent());
    std::set<PhysicalQubit> hosts(a.log2phys.begin(), a.log2phys.end());
    CHECK(hosts.size() == 5);

    bool any_different = false;
    for (std::uint64_t seed = 0; seed < 8 && !any_different; ++seed) {
        Mapping c = initial_placement(circuit, device, PlacementStrategy::Random, seed);
        any_different = c.log2phys != a.log2phys;
    }
    CHECK(any_different);
}

TEST_CASE("placement refuses an oversized circuit") {
    LogicalCircuit circuit(3);
    DeviceGraph device(2, {{0, 1}});
    CHECK_THROWS_AS(initial_placement(circuit, device, PlacementStrategy::Identity),
                    CapacityError);
}
