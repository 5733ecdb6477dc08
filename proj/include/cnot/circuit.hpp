#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnot/gf2.hpp"

namespace cnot {

// X_ij is a CNOT with TARGET i and CONTROL j. One-qubit gates H/S/T are
// carried for state construction; all matrix-level operations require
// CNOT-only circuits.
struct Gate {
    enum class Kind { Cnot, H, S, T } kind;
    std::size_t target = 0;   // for Cnot: target i; for H/S/T: the qubit
    std::size_t control = 0;  // Cnot only

    static Gate cnot(std::size_t target, std::size_t control) {
        if (target == control) throw std::invalid_argument("Gate: CNOT target equals control");
        return Gate{Kind::Cnot, target, control};
    }
    static Gate h(std::size_t q) { return Gate{Kind::H, q, 0}; }
    static Gate s(std::size_t q) { return Gate{Kind::S, q, 0}; }
    static Gate t(std::size_t q) { return Gate{Kind::T, q, 0}; }

    bool is_cnot() const { return kind == Kind::Cnot; }
    bool operator==(const Gate&) const = default;
};

// Temporally ordered gate list; gates[0] acts first.
struct Circuit {
    std::size_t n = 0;
    std::vector<Gate> gates;

    Circuit() = default;
    explicit Circuit(std::size_t n_) : n(n_) {}

    void push(Gate g) {
        std::size_t hi = g.is_cnot() ? std::max(g.target, g.control) : g.target;
        if (hi >= n) throw std::invalid_argument("Circuit: qubit index out of range");
        gates.push_back(g);
    }
    std::size_t size() const { return gates.size(); }
    bool cnot_only() const {
        for (const auto& g : gates)
            if (!g.is_cnot()) return false;
        return true;
    }
    bool operator==(const Circuit&) const = default;
};

inline void require_cnot_only(const Circuit& c, const char* who) {
    if (!c.cnot_only()) throw std::invalid_argument(std::string(who) + ": non-CNOT gate present");
}

// Matrix of the circuit: the temporally first gate is the rightmost factor,
// so applying the circuit to |u> gives |matrix_of(c) u>.
inline BitMatrix matrix_of(const Circuit& c) {
    require_cnot_only(c, "matrix_of");
    BitMatrix m = BitMatrix::identity(c.n);
    for (const auto& g : c.gates) {
        // left-multiply by T_{target,control}: row control added to row target
        m.xor_row(g.target, g.control);
    }
    return m;
}

// CNOT circuit realizing a transvection product; temporal order is the
// reverse of the sequence's written product order.
inline Circuit circuit_of(const TransvectionSeq& seq) {
    Circuit c(seq.n);
    for (auto it = seq.items.rbegin(); it != seq.items.rend(); ++it)
        c.push(Gate::cnot(it->i, it->j));
    return c;
}

inline TransvectionSeq seq_of(const Circuit& c) {
    require_cnot_only(c, "seq_of");
    TransvectionSeq seq{c.n, {}};
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it)
        seq.append({it->target, it->control});
    return seq;
}

// Applies gates temporally: CNOT(i,j) sets b_i ^= b_j. Basis states are
// bit-packed with bit q = qubit q.
inline uint64_t simulate_basis(const Circuit& c, uint64_t u) {
    require_cnot_only(c, "simulate_basis");
    if (c.n < 64 && (u >> c.n)) throw std::invalid_argument("simulate_basis: basis state out of range");
    for (const auto& g : c.gates) {
        uint64_t cbit = (u >> g.control) & 1;
        u ^= cbit << g.target;
    }
    return u;
}

inline bool equivalent(const Circuit& a, const Circuit& b) {
    if (a.n != b.n) throw std::invalid_argument("equivalent: width mismatch");
    return matrix_of(a) == matrix_of(b);
}

// ---------------------------------------------------------------------------
// Native format: '#' comments, header "qubits n", then one gate per line:
// "X i j" (target i, control j), "H i", "S i", "T i".

inline Circuit parse_circuit(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    Circuit c;
    auto fail = [&](const std::string& msg) {
        throw std::runtime_error("parse error at line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (!have_header) {
            if (tok != "qubits") fail("expected 'qubits n' header");
            long long n = -1;
            if (!(ls >> n) || n < 1 || n > static_cast<long long>(kMaxDim)) fail("bad qubit count");
            c = Circuit(static_cast<std::size_t>(n));
            have_header = true;
        } else if (tok == "X") {
            long long i = -1, j = -1;
            if (!(ls >> i >> j) || i < 0 || j < 0) fail("bad CNOT line");
            if (static_cast<std::size_t>(i) >= c.n || static_cast<std::size_t>(j) >= c.n)
                fail("qubit index out of range");
            if (i == j) fail("target equals control");
            c.push(Gate::cnot(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
        } else if (tok == "H" || tok == "S" || tok == "T") {
            long long q = -1;
            if (!(ls >> q) || q < 0) fail("bad gate line");
            if (static_cast<std::size_t>(q) >= c.n) fail("qubit index out of range");
            auto qq = static_cast<std::size_t>(q);
            c.push(tok == "H" ? Gate::h(qq) : tok == "S" ? Gate::s(qq) : Gate::t(qq));
        } else {
            fail("unknown directive '" + tok + "'");
        }
        std::string extra;
        if (ls >> extra) fail("trailing tokens");
    }
    if (!have_header) {
        lineno = 1;
        fail("missing 'qubits n' header");
    }
    return c;
}

inline std::string write_circuit(const Circuit& c) {
    std::string out = "qubits " + std::to_string(c.n) + "\n";
    for (const auto& g : c.gates) {
        switch (g.kind) {
            case Gate::Kind::Cnot:
                out += "X " + std::to_string(g.target) + " " + std::to_string(g.control) + "\n";
                break;
            case Gate::Kind::H: out += "H " + std::to_string(g.target) + "\n"; break;
            case Gate::Kind::S: out += "S " + std::to_string(g.target) + "\n"; break;
            case Gate::Kind::T: out += "T " + std::to_string(g.target) + "\n"; break;
        }
    }
    return out;
}

// QASM 2.0; CNOT(target i, control j) becomes "cx q[j],q[i];".
inline std::string export_qasm(const Circuit& c) {
    std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" + std::to_string(c.n) + "];\n";
    for (const auto& g : c.gates) {
        switch (g.kind) {
            case Gate::Kind::Cnot:
                out += "cx q[" + std::to_string(g.control) + "],q[" + std::to_string(g.target) + "];\n";
                break;
            case Gate::Kind::H: out += "h q[" + std::to_string(g.target) + "];\n"; break;
            case Gate::Kind::S: out += "s q[" + std::to_string(g.target) + "];\n"; break;
            case Gate::Kind::T: out += "t q[" + std::to_string(g.target) + "];\n"; break;
        }
    }
    return out;
}

}  // namespace cnot
