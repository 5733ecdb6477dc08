#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnot/circuit.hpp"
#include "cnot/omega.hpp"

namespace cnot {

// 2^n amplitudes, basis index b_0 b_1 ... b_{n-1} read big-endian (qubit 0
// is the most significant bit, matching the ket labels). Normalization is
// not required; classification uses vanishing patterns only.
template <typename S>
struct StateVector {
    std::size_t n = 0;
    std::vector<S> amps;

    explicit StateVector(std::size_t n_) : n(n_), amps(std::size_t{1} << n_, S::zero()) {
        if (n_ == 0 || n_ > 20) throw std::invalid_argument("StateVector: bad qubit count");
    }
    static StateVector basis(std::size_t n, std::size_t index = 0) {
        StateVector s(n);
        s.amps.at(index) = S::one();
        return s;
    }

    std::size_t bit(std::size_t index, std::size_t qubit) const {
        return (index >> (n - 1 - qubit)) & 1;
    }
};

template <typename S>
StateVector<S> apply_gate(const StateVector<S>& s, const Gate& g) {
    const std::size_t n = s.n;
    std::size_t hi = g.is_cnot() ? std::max(g.target, g.control) : g.target;
    if (hi >= n) throw std::invalid_argument("apply_gate: qubit index out of range");
    StateVector<S> out(n);
    const std::size_t dim = s.amps.size();
    switch (g.kind) {
        case Gate::Kind::Cnot: {
            const std::size_t tbit = n - 1 - g.target, cbit = n - 1 - g.control;
            for (std::size_t v = 0; v < dim; ++v) {
                std::size_t w = v ^ (((v >> cbit) & 1) << tbit);
                out.amps[w] = s.amps[v];
            }
            break;
        }
        case Gate::Kind::H: {
            const std::size_t qb = n - 1 - g.target;
            const S f = S::inv_sqrt2();
            for (std::size_t v = 0; v < dim; ++v) {
                if ((v >> qb) & 1) continue;
                const std::size_t v1 = v | (std::size_t{1} << qb);
                S a0 = s.amps[v], a1 = s.amps[v1];
                out.amps[v] = (a0 + a1) * f;
                out.amps[v1] = (a0 - a1) * f;
            }
            break;
        }
        case Gate::Kind::S:
        case Gate::Kind::T: {
            const std::size_t qb = n - 1 - g.target;
            const S ph = S::omega_pow(g.kind == Gate::Kind::S ? 2 : 1);
            for (std::size_t v = 0; v < dim; ++v)
                out.amps[v] = ((v >> qb) & 1) ? s.amps[v] * ph : s.amps[v];
            break;
        }
    }
    return out;
}

template <typename S>
StateVector<S> run_circuit(const Circuit& c, StateVector<S> s) {
    if (c.n != s.n) throw std::invalid_argument("run_circuit: width mismatch");
    for (const auto& g : c.gates) s = apply_gate(s, g);
    return s;
}

using ExactState = StateVector<OmegaScalar>;
using FloatState = StateVector<FloatScalar>;

// ---------------------------------------------------------------------------
// Named states.

inline Circuit ghz_circuit(std::size_t n) {
    if (n < 2) throw std::invalid_argument("ghz_circuit: n >= 2 required");
    Circuit c(n);
    c.push(Gate::h(0));
    for (std::size_t q = 1; q < n; ++q) c.push(Gate::cnot(q, q - 1));
    return c;
}

// Prop-29 style circuit: H on all three wires, T,T,S, then the CNOT triple
// X_[ijk] = X_ij X_ki X_jk applied as an operator (temporally X_jk first).
inline Circuit w3_circuit(std::size_t i, std::size_t j, std::size_t k) {
    if (i + j + k != 3 || i == j || j == k || i == k || i > 2 || j > 2 || k > 2)
        throw std::invalid_argument("w3_circuit: indices must be a permutation of {0,1,2}");
    Circuit c(3);
    for (std::size_t q = 0; q < 3; ++q) c.push(Gate::h(q));
    c.push(Gate::t(0));
    c.push(Gate::t(1));
    c.push(Gate::s(2));
    c.push(Gate::cnot(j, k));
    c.push(Gate::cnot(k, i));
    c.push(Gate::cnot(i, j));
    return c;
}

inline Circuit bl_circuit() {
    Circuit c(4);
    for (std::size_t q = 0; q < 4; ++q) c.push(Gate::h(q));
    c.push(Gate::t(0));
    c.push(Gate::s(1));
    c.push(Gate::s(2));
    c.push(Gate::s(3));
    // operator X_01 X_20 X_03 X_10, temporally reversed
    c.push(Gate::cnot(1, 0));
    c.push(Gate::cnot(0, 3));
    c.push(Gate::cnot(2, 0));
    c.push(Gate::cnot(0, 1));
    return c;
}

inline ExactState ghz_state(std::size_t n) {
    return run_circuit(ghz_circuit(n), ExactState::basis(n));
}

// Exact W state; 1/sqrt(n) lies in the ring only for powers of two, so n
// must be one. For other n use w_state_float (or the unnormalized variant:
// covariant vanishing patterns do not depend on the norm).
inline ExactState w_state_exact(std::size_t n) {
    if (n < 2 || (n & (n - 1)) != 0) throw std::invalid_argument("w_state_exact: n must be a power of two");
    OmegaScalar a = OmegaScalar::one();
    for (std::size_t m = n; m > 1; m /= 2) a = a * OmegaScalar::inv_sqrt2();
    ExactState s(n);
    for (std::size_t q = 0; q < n; ++q) s.amps[std::size_t{1} << (n - 1 - q)] = a;
    return s;
}

inline ExactState w_state_unnormalized(std::size_t n) {
    ExactState s(n);
    for (std::size_t q = 0; q < n; ++q) s.amps[std::size_t{1} << (n - 1 - q)] = OmegaScalar::one();
    return s;
}

inline FloatState w_state_float(std::size_t n) {
    FloatState s(n);
    const FloatScalar a(1.0 / std::sqrt(static_cast<double>(n)));
    for (std::size_t q = 0; q < n; ++q) s.amps[std::size_t{1} << (n - 1 - q)] = a;
    return s;
}

inline ExactState bl_state() { return run_circuit(bl_circuit(), ExactState::basis(4)); }

// Fully factorized 4-qubit state from u = [a0,a1,b0,b1,c0,c1,d0,d1].
template <typename S>
StateVector<S> factorized_state(const std::vector<S>& u) {
    if (u.size() != 8) throw std::invalid_argument("factorized_state: need 8 coefficients");
    StateVector<S> s(4);
    for (std::size_t v = 0; v < 16; ++v) {
        S x = S::one();
        for (std::size_t q = 0; q < 4; ++q) x = x * u[2 * q + s.bit(v, q)];
        s.amps[v] = x;
    }
    return s;
}

namespace detail {

inline std::size_t ket(std::initializer_list<int> bits) {
    std::size_t v = 0;
    for (int b : bits) v = v * 2 + static_cast<std::size_t>(b);
    return v;
}

}  // namespace detail

// |L> = (|u0> + w|u1> + w^2|u2>)/sqrt3, w = e^{2 i pi / 3}
inline FloatState l_state() {
    using detail::ket;
    FloatState s(4);
    const std::complex<double> w = std::polar(1.0, 2.0 * std::acos(-1.0) / 3.0);
    const double h = 0.5 / std::sqrt(3.0);
    for (auto [b, sign] : std::initializer_list<std::pair<std::size_t, double>>{
             {ket({0, 0, 0, 0}), 1}, {ket({0, 0, 1, 1}), 1}, {ket({1, 1, 0, 0}), 1}, {ket({1, 1, 1, 1}), 1}})
        s.amps[b] += FloatScalar(h * sign);
    for (auto [b, sign] : std::initializer_list<std::pair<std::size_t, double>>{
             {ket({0, 0, 0, 0}), 1}, {ket({0, 0, 1, 1}), -1}, {ket({1, 1, 0, 0}), -1}, {ket({1, 1, 1, 1}), 1}})
        s.amps[b] += FloatScalar(w * h * sign);
    for (std::size_t b : {ket({0, 1, 0, 1}), ket({0, 1, 1, 0}), ket({1, 0, 0, 1}), ket({1, 0, 1, 0})})
        s.amps[b] += FloatScalar(w * w * h);
    return s;
}

// |HD> = (|0001>+|0010>+|0100>+|1000>+sqrt2 |1111>)/sqrt6
inline FloatState hd_state() {
    FloatState s(4);
    const double f = 1.0 / std::sqrt(6.0);
    for (std::size_t q = 0; q < 4; ++q) s.amps[std::size_t{1} << q] = FloatScalar(f);
    s.amps[15] = FloatScalar(std::sqrt(2.0) * f);
    return s;
}

// |M2222> = |v1>/sqrt6 + (sqrt6/4)|v2> + |v3>/sqrt2
inline FloatState m2222_state() {
    using detail::ket;
    FloatState s(4);
    const double c1 = (1.0 / std::sqrt(6.0)) / std::sqrt(6.0);
    for (auto [b, sign] : std::initializer_list<std::pair<std::size_t, double>>{
             {ket({0, 0, 0, 0}), 1}, {ket({0, 1, 0, 1}), 1}, {ket({0, 1, 1, 0}), -1},
             {ket({1, 0, 0, 1}), -1}, {ket({1, 0, 1, 0}), 1}, {ket({1, 1, 1, 1}), 1}})
        s.amps[b] += FloatScalar(c1 * sign);
    const double c2 = (std::sqrt(6.0) / 4.0) / std::sqrt(2.0);
    for (std::size_t b : {ket({0, 0, 1, 1}), ket({1, 1, 0, 0})}) s.amps[b] += FloatScalar(c2);
    const double c3 = (1.0 / std::sqrt(2.0)) / std::sqrt(2.0);
    for (auto [b, sign] : std::initializer_list<std::pair<std::size_t, double>>{
             {ket({0, 0, 0, 1}), -1}, {ket({0, 0, 1, 0}), 1}, {ket({0, 1, 0, 0}), -1},
             {ket({0, 1, 1, 1}), 1}, {ket({1, 0, 0, 0}), 1}, {ket({1, 0, 1, 1}), -1},
             {ket({1, 1, 0, 1}), 1}, {ket({1, 1, 1, 0}), -1}})
        s.amps[b] += FloatScalar(c3 * sign);
    return s;
}

template <typename S>
FloatState to_float(const StateVector<S>& s) {
    FloatState out(s.n);
    for (std::size_t v = 0; v < s.amps.size(); ++v) out.amps[v] = FloatScalar(s.amps[v].to_complex());
    return out;
}

}  // namespace cnot
