#pragma once

#include <vector>

#include "cnot/circuit.hpp"
#include "cnot/gf2.hpp"

namespace cnot {
namespace detail {

// [ij] and [kl] commute iff i != l and j != k (or the gates are equal).
inline bool commutes(Transvection a, Transvection b) {
    if (a == b) return true;
    return a.i != b.j && a.j != b.i;
}

inline bool all_commute(const std::vector<Transvection>& w, std::size_t from, std::size_t to,
                        Transvection g) {
    for (std::size_t p = from; p < to; ++p)
        if (!commutes(w[p], g)) return false;
    return true;
}

// One rewrite step on the algebraic word; true if a rule fired.
inline bool peephole_step(std::vector<Transvection>& w) {
    const std::size_t m = w.size();
    // cancellation: w[p] == w[q], everything between commutes with the gate
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = p + 1; q < m; ++q) {
            if (w[q] == w[p]) {
                w.erase(w.begin() + q);
                w.erase(w.begin() + p);
                return true;
            }
            if (!commutes(w[q], w[p])) break;
        }
    }
    // triple rewrites modulo commuting interleavers:
    //   [ij][jk][ik] -> [jk][ij]      and      [ij][ki][kj] -> [ki][ij]
    for (std::size_t p = 0; p < m; ++p) {
        const auto a = w[p];
        for (std::size_t q = p + 1; q < m; ++q) {
            const auto b = w[q];
            bool chain1 = (a.j == b.i && a.i != b.j);  // [ij][jk]
            bool chain2 = (a.i == b.j && a.j != b.i);  // [ij][ki]
            if (!chain1 && !chain2) continue;
            Transvection want = chain1 ? Transvection{a.i, b.j}    // [ik]
                                       : Transvection{b.i, a.j};   // [kj]
            if (!all_commute(w, p + 1, q, b) || !all_commute(w, p + 1, q, want)) continue;
            for (std::size_t r = q + 1; r < m; ++r) {
                if (w[r] == want && all_commute(w, q + 1, r, want)) {
                    w.erase(w.begin() + r);
                    w.erase(w.begin() + q);
                    w.erase(w.begin() + p);
                    w.insert(w.begin() + p, a);
                    w.insert(w.begin() + p, b);
                    return true;
                }
                if (!commutes(w[r], want)) break;
            }
        }
    }
    return false;
}

}  // namespace detail

// Deterministic rewriting to fixpoint; preserves the circuit matrix and
// never increases the gate count.
inline TransvectionSeq peephole_reduce(const TransvectionSeq& seq) {
    std::vector<Transvection> word = seq.items;
    while (detail::peephole_step(word)) {}
    return TransvectionSeq{seq.n, std::move(word)};
}

inline Circuit peephole_reduce(const Circuit& c) {
    require_cnot_only(c, "peephole_reduce");
    return circuit_of(peephole_reduce(seq_of(c)));
}

}  // namespace cnot
