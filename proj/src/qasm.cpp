#include "duostra/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>

#include "duostra/error.hpp"

namespace duostra {

namespace {

struct Statement {
    std::string text;
    int line;  // 1-based line of the statement's first token
};

// Splits on ';', dropping //-comments, remembering source lines.
std::vector<Statement> split_statements(const std::string& text) {
    std::vector<Statement> stmts;
    std::string cur;
    int line = 1;
    int stmt_line = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') ++i;
            --i;
            continue;
        }
        if (ch == '\n') ++line;
        if (ch == ';') {
            if (stmt_line > 0) stmts.push_back({cur, stmt_line});
            cur.clear();
            stmt_line = 0;
            continue;
        }
        if (!std::isspace(static_cast<unsigned char>(ch)) && stmt_line == 0) stmt_line = line;
        cur += ch;
    }
    for (char ch : cur) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            throw ParseError(stmt_line, "statement not terminated by ';'");
        }
    }
    return stmts;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string first_word(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(') ++i;
    return s.substr(0, i);
}

// reg[index]
struct Operand {
    std::string reg;
    std::uint32_t index;
};

Operand parse_operand(const std::string& text, int line) {
    std::string t = trim(text);
    std::size_t lb = t.find('[');
    std::size_t rb = t.find(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb || rb + 1 != t.size()) {
        throw ParseError(line, "expected an indexed operand like q[0], got '" + t + "'");
    }
    std::string reg = trim(t.substr(0, lb));
    std::string idx = trim(t.substr(lb + 1, rb - lb - 1));
    if (reg.empty() || idx.empty() ||
        idx.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError(line, "malformed operand '" + t + "'");
    }
    return {reg, static_cast<std::uint32_t>(std::strtoul(idx.c_str(), nullptr, 10))};
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

// number | pi, combined with unary +/-, '*' and '/'.
double eval_angle(const std::string& expr, int line) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < expr.size() && std::isspace(static_cast<unsigned char>(expr[pos]))) ++pos;
    };
    auto parse_factor = [&]() -> double {
        skip_ws();
        double sign = 1.0;
        while (pos < expr.size() && (expr[pos] == '-' || expr[pos] == '+')) {
            if (expr[pos] == '-') sign = -sign;
            ++pos;
            skip_ws();
        }
        if (pos + 1 < expr.size() && expr.compare(pos, 2, "pi") == 0) {
            pos += 2;
            return sign * std::acos(-1.0);
        }
        const char* begin = expr.c_str() + pos;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) throw ParseError(line, "malformed angle '" + expr + "'");
        pos += static_cast<std::size_t>(end - begin);
        return sign * v;
    };
    double value = parse_factor();
    skip_ws();
    while (pos < expr.size()) {
        char op = expr[pos];
        if (op != '*' && op != '/') throw ParseError(line, "malformed angle '" + expr + "'");
        ++pos;
        double rhs = parse_factor();
        if (op == '*') {
            value *= rhs;
        } else {
            value /= rhs;
        }
        skip_ws();
    }
    return value;
}

}  // namespace

LogicalCircuit parse_qasm(const std::string& text) {
    std::optional<LogicalCircuit> circuit;
    std::string qreg_name;
    bool saw_version = false;

    for (const Statement& stmt : split_statements(text)) {
        std::string body = trim(stmt.text);
        if (body.empty()) continue;
        std::string head = first_word(body);

        if (head == "OPENQASM") {
            std::string version = trim(body.substr(head.size()));
            if (version != "2.0") throw ParseError(stmt.line, "unsupported version '" + version + "'");
            saw_version = true;
            continue;
        }
        if (head == "include" || head == "creg" || head == "measure" || head == "barrier") {
            continue;
        }
        if (head == "qreg") {
            if (circuit.has_value()) throw ParseError(stmt.line, "multiple qreg declarations");
            Operand decl = parse_operand(body.substr(head.size()), stmt.line);
            if (decl.index == 0) throw ParseError(stmt.line, "qreg must have at least one qubit");
            qreg_name = decl.reg;
            circuit.emplace(decl.index);
            continue;
        }
        if (head == "gate" || head == "opaque" || head == "if") {
            throw ParseError(stmt.line, "unsupported statement '" + head + "'");
        }

        // Gate application: name[(angles)] operand{,operand}
        if (head.empty()) throw ParseError(stmt.line, "malformed statement '" + body + "'");
        if (!circuit.has_value()) {
            throw ValidationError("gate '" + head + "' on line " + std::to_string(stmt.line) +
                                  " appears before any qreg declaration");
        }
        std::string rest = trim(body.substr(head.size()));
        std::vector<double> params;
        if (!rest.empty() && rest.front() == '(') {
            std::size_t close = rest.find(')');
            if (close == std::string::npos) throw ParseError(stmt.line, "missing ')'");
            for (const std::string& p : split_commas(rest.substr(1, close - 1))) {
                params.push_back(eval_angle(p, stmt.line));
            }
            rest = trim(rest.substr(close + 1));
        }
        if (rest.empty()) throw ParseError(stmt.line, "gate '" + head + "' has no operands");

        std::vector<LogicalQubit> qubits;
        for (const std::string& part : split_commas(rest)) {
            Operand op = parse_operand(part, stmt.line);
            if (op.reg != qreg_name) {
                throw ValidationError("undeclared register '" + op.reg + "' on line " +
                                      std::to_string(stmt.line));
            }
            if (op.index >= circuit->num_qubits()) {
                throw ValidationError("qubit " + op.reg + "[" + std::to_string(op.index) +
                                      "] out of range on line " + std::to_string(stmt.line));
            }
            qubits.push_back(op.index);
        }
        if (qubits.size() > 3) {
            throw ValidationError("gate '" + head + "' on line " + std::to_string(stmt.line) +
                                  " has more than three operands");
        }
        circuit->add_gate(head, std::move(qubits), std::move(params));
    }

    (void)saw_version;  // the header is optional
    if (!circuit.has_value()) throw ValidationError("no qreg declaration found");
    return std::move(*circuit);
}

namespace {

std::string format_angle(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::string emit_qasm(const LogicalCircuit& circuit) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << circuit.num_qubits() << "];\n";
    for (const Gate& gate : circuit.gates()) {
        out << gate.kind;
        if (!gate.params.empty()) {
            out << '(';
            for (std::size_t i = 0; i < gate.params.size(); ++i) {
                if (i > 0) out << ',';
                out << format_angle(gate.params[i]);
            }
            out << ')';
        }
        out << ' ';
        for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
            if (i > 0) out << ',';
            out << "q[" << gate.qubits[i] << ']';
        }
        out << ";\n";
    }
    return out.str();
}

}  // namespace duostra
