#include <doctest.h>

#include <cmath>
#include <random>

#include "duostra/error.hpp"
#include "duostra/qasm.hpp"
#include "support/random_gen.hpp"

using namespace duostra;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("parse accepts a typical program and drops the noise") {
    const char* text =
        "// exported circuit\n"
        "OPENQASM 2.0;\n"
        "include \"qelib1.inc\";\n"
        "qreg q[3];\n"
        "creg c[3];\n"
        "h q[0];\n"
        "cx q[0], q[1];\n"
        "rz(pi/2) q[2];\n"
        "barrier q[0], q[1];\n"
        "ccx q[0], q[1], q[2];\n"
        "measure q[0] -> c[0];\n";
    LogicalCircuit circuit = parse_qasm(text);
    CHECK(circuit.num_qubits() == 3);
    REQUIRE(circuit.size() == 4);
    CHECK(circuit.gate(0).kind == "h");
    CHECK(circuit.gate(1).kind == "cx");
    CHECK(circuit.gate(1).qubits == std::vector<LogicalQubit>{0, 1});
    CHECK(circuit.gate(2).kind == "rz");
    CHECK(circuit.gate(2).params[0] == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(circuit.gate(3).qubits == std::vector<LogicalQubit>{0, 1, 2});
}

TEST_CASE("version header is optional but must be 2.0 when present") {
    CHECK(parse_qasm("qreg q[1]; x q[0];").size() == 1);
    CHECK_THROWS_AS(parse_qasm("OPENQASM 3.0;\nqreg q[1];"), ParseError);
}

TEST_CASE("angle expressions") {
    auto angle_of = [](const std::string& expr) {
        LogicalCircuit c = parse_qasm("qreg q[1]; rz(" + expr + ") q[0];");
        return c.gate(0).params[0];
    };
    CHECK(angle_of("0.5") == doctest::Approx(0.5));
    CHECK(angle_of("-0.25") == doctest::Approx(-0.25));
    CHECK(angle_of("pi") == doctest::Approx(kPi));
    CHECK(angle_of("-pi/4") == doctest::Approx(-kPi / 4));
    CHECK(angle_of("3*pi/4") == doctest::Approx(3 * kPi / 4));
    CHECK(angle_of("pi/2/2") == doctest::Approx(kPi / 4));
    CHECK(angle_of("1e-3") == doctest::Approx(1e-3));
    CHECK_THROWS_AS(angle_of("pi+1"), ParseError);
    CHECK_THROWS_AS(angle_of("frac"), ParseError);

    LogicalCircuit multi = parse_qasm("qreg q[1]; u2(pi/2, -pi) q[0];");
    REQUIRE(multi.gate(0).params.size() == 2);
    CHECK(multi.gate(0).params[1] == doctest::Approx(-kPi));
}

TEST_CASE("parse errors carry the source line") {
    try {
        parse_qasm("qreg q[2];\nh q[0];\ncx q[0], q[1]");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("';'") != std::string::npos);
    }

    try {
        parse_qasm("qreg q[2];\n\n\ngate mine a, b { cx a, b; }\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
}

TEST_CASE("structural statements are validated") {
    CHECK_THROWS_AS(parse_qasm("qreg q[2];\nqreg r[2];"), ParseError);
    CHECK_THROWS_AS(parse_qasm("qreg q[0];"), ParseError);
    CHECK_THROWS_AS(parse_qasm("qreg q[2];\nopaque magic q[0];"), ParseError);
    CHECK_THROWS_AS(parse_qasm("qreg q[2];\nif (c==1) x q[0];"), ParseError);
    CHECK_THROWS_AS(parse_qasm("qreg q[2];\nh q;"), ParseError);
    CHECK_THROWS_AS(parse_qasm("qreg q[2];\nrz(pi q[0];"), ParseError);
    CHECK_THROWS_AS(parse_qasm("qreg q[2];\nh ;"), ParseError);
}

TEST_CASE("semantic errors are validation errors") {
    CHECK_THROWS_AS(parse_qasm("h q[0];\nqreg q[1];"), ValidationError);
    CHECK_THROWS_AS(parse_qasm("qreg q[2];\nh r[0];"), ValidationError);
    CHECK_THROWS_AS(parse_qasm("qreg q[2];\nh q[2];"), ValidationError);
    CHECK_THROWS_AS(parse_qasm("qreg q[4];\ng4 q[0],q[1],q[2],q[3];"), ValidationError);
    CHECK_THROWS_AS(parse_qasm("OPENQASM 2.0;\ninclude \"qelib1.inc\";"), ValidationError);
    CHECK_THROWS_AS(parse_qasm("qreg q[2];\ncx q[1], q[1];"), ValidationError);
}

TEST_CASE("emit produces the canonical text") {
    LogicalCircuit circuit(2);
    circuit.add_gate("h", {0});
    circuit.add_gate("rz", {1}, {kPi / 4});
    circuit.add_gate("cx", {1, 0});
    CHECK(emit_qasm(circuit) ==
          "OPENQASM 2.0;\n"
          "include \"qelib1.inc\";\n"
          "qreg q[2];\n"
          "h q[0];\n"
          "rz(0.785398163397) q[1];\n"
          "cx q[1],q[0];\n");
}

TEST_CASE("emit then parse reproduces random circuits") {
    std::mt19937_64 rng(7101);
    for (int iter = 0; iter < 30; ++iter) {
        LogicalCircuit circuit = testsupport::random_circuit(rng, 2 + iter % 6, 50);
        LogicalCircuit back = parse_qasm(emit_qasm(circuit));
        REQUIRE(back.size() == circuit.size());
        CHECK(back.num_qubits() == circuit.num_qubits());
        for (GateId g = 0; g < circuit.size(); ++g) {
            CHECK(back.gate(g).kind == circuit.gate(g).kind);
            CHECK(back.gate(g).qubits == circuit.gate(g).qubits);
            REQUIRE(back.gate(g).params.size() == circuit.gate(g).params.size());
            for (std::size_t p = 0; p < circuit.gate(g).params.size(); ++p) {
                CHECK(back.gate(g).params[p] ==
                      doctest::Approx(circuit.gate(g).params[p]).epsilon(1e-9));
            }
        }
    }
}
