#pragma once

#include <string>

#include "duostra/circuit.hpp"

namespace duostra {

/// Parses an OpenQASM 2.0 subset: optional version header, include,
/// exactly one qreg, optional cregs, gate applications on indexed qubits.
/// measure/barrier statements and cregs are dropped. Unknown 1q/2q gate
/// names are kept with their kind preserved. Angle expressions may use
/// numeric literals, `pi`, unary minus, `*` and `/`.
/// Throws ParseError (with line number) or ValidationError.
LogicalCircuit parse_qasm(const std::string& text);

/// Serializes a circuit back to OpenQASM 2.0, one gate per line, operands
/// as q[i], angles printed with 12 significant digits.
std::string emit_qasm(const LogicalCircuit& circuit);

}  // namespace duostra
