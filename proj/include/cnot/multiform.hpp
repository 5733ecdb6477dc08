#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "cnot/state.hpp"

namespace cnot {

// Multilinear-polynomial container: p slots of binary variable pairs
// (x^{(s)}_0, x^{(s)}_1). A monomial is keyed by its 2p exponents, packed
// four bits each into a 64-bit word (degrees stay below 16 throughout the
// covariant tower). Zero coefficients are never stored.
template <typename S>
class MultiForm {
public:
    using Key = uint64_t;

    explicit MultiForm(std::size_t slots) : slots_(slots) {
        if (slots == 0 || slots > 8) throw std::invalid_argument("MultiForm: bad slot count");
    }

    std::size_t slots() const { return slots_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Key, S>& terms() const { return terms_; }

    static Key pack(const std::vector<unsigned>& exps) {
        Key k = 0;
        for (std::size_t i = 0; i < exps.size(); ++i) k |= Key(exps[i] & 0xF) << (4 * i);
        return k;
    }
    static unsigned exp_at(Key k, std::size_t var) { return (k >> (4 * var)) & 0xF; }

    void add_term(Key k, const S& c) {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    MultiForm operator+(const MultiForm& o) const {
        check_slots(o);
        MultiForm r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k, c);
        return r;
    }
    MultiForm operator-(const MultiForm& o) const {
        check_slots(o);
        MultiForm r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k, -c);
        return r;
    }
    MultiForm operator*(const MultiForm& o) const {
        check_slots(o);
        MultiForm r(slots_);
        for (const auto& [k1, c1] : terms_)
            for (const auto& [k2, c2] : o.terms_) r.add_term(k1 + k2, c1 * c2);
        return r;
    }
    MultiForm scaled(const S& s) const {
        MultiForm r(slots_);
        for (const auto& [k, c] : terms_) r.add_term(k, c * s);
        return r;
    }
    MultiForm div_exact(long long m) const {
        MultiForm r(slots_);
        for (const auto& [k, c] : terms_) r.add_term(k, c.div_exact(m));
        return r;
    }

    // d/d(var), var indexing the flattened 2p variables.
    MultiForm derivative(std::size_t var) const {
        MultiForm r(slots_);
        for (const auto& [k, c] : terms_) {
            unsigned e = exp_at(k, var);
            if (e == 0) continue;
            r.add_term(k - (Key(1) << (4 * var)), c * S::integer(e));
        }
        return r;
    }

    // Value as a scalar; only valid for a constant (degree-0) form.
    S constant_value() const {
        if (terms_.empty()) return S::zero();
        if (terms_.size() != 1 || terms_.begin()->first != 0)
            throw std::logic_error("MultiForm: not a constant");
        return terms_.begin()->second;
    }

    void check_slots(const MultiForm& o) const {
        if (slots_ != o.slots_) throw std::invalid_argument("MultiForm: slot mismatch");
    }

private:
    std::size_t slots_;
    std::map<Key, S> terms_;
};

// Ground form of a state: A = sum alpha_b prod_s x^{(s)}_{b_s}.
template <typename S>
MultiForm<S> ground_form(const StateVector<S>& st) {
    MultiForm<S> f(st.n);
    std::vector<unsigned> exps(2 * st.n, 0);
    for (std::size_t v = 0; v < st.amps.size(); ++v) {
        if (st.amps[v].is_zero()) continue;
        for (auto& e : exps) e = 0;
        for (std::size_t s = 0; s < st.n; ++s) exps[2 * s + st.bit(v, s)] = 1;
        f.add_term(MultiForm<S>::pack(exps), st.amps[v]);
    }
    return f;
}

namespace detail {

inline long long binomial(unsigned n, unsigned k) {
    long long r = 1;
    for (unsigned t = 1; t <= k; ++t) r = r * (n - k + t) / t;
    return r;
}

}  // namespace detail

// Transvectant (f,g)^{i_1..i_p}: apply the Cayley operator Omega_s to the
// primed/double-primed product i_s times per slot, then erase primes.
// Expanded per slot by the binomial theorem:
//   Omega_s^i = sum_r (-1)^r C(i,r) d^{i-r}x'_{s0} d^r x'_{s1} (x) d^r x''_{s0} d^{i-r} x''_{s1}
template <typename S>
MultiForm<S> transvect(const MultiForm<S>& f, const MultiForm<S>& g,
                       const std::vector<unsigned>& orders) {
    f.check_slots(g);
    const std::size_t p = f.slots();
    if (orders.size() != p) throw std::invalid_argument("transvect: order count mismatch");
    MultiForm<S> out(p);
    std::vector<unsigned> r(p, 0);
    while (true) {
        long long coef = 1;
        int sign = 1;
        for (std::size_t s = 0; s < p; ++s) {
            coef *= detail::binomial(orders[s], r[s]);
            if (r[s] % 2 == 1) sign = -sign;
        }
        MultiForm<S> df = f, dg = g;
        for (std::size_t s = 0; s < p; ++s) {
            for (unsigned t = 0; t < orders[s] - r[s]; ++t) df = df.derivative(2 * s);
            for (unsigned t = 0; t < r[s]; ++t) df = df.derivative(2 * s + 1);
            for (unsigned t = 0; t < r[s]; ++t) dg = dg.derivative(2 * s);
            for (unsigned t = 0; t < orders[s] - r[s]; ++t) dg = dg.derivative(2 * s + 1);
        }
        out = out + (df * dg).scaled(S::integer(sign * coef));
        std::size_t s = 0;
        while (s < p && r[s] == orders[s]) r[s++] = 0;
        if (s == p) break;
        ++r[s];
    }
    return out;
}

}  // namespace cnot
