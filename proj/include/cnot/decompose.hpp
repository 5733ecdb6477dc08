#pragma once

#include <bit>
#include <stdexcept>
#include <utility>

#include "cnot/gf2.hpp"

namespace cnot {

// Gauss-Jordan elimination to upper triangular form by row additions only.
// Returns (K, U) with M = product(K) * U and U upper unitriangular. K holds
// the applied left-multipliers in application order; transvections are
// involutions, so that order is also the product order of K.
//
// Pivot repair: when entry (k,k) is 0, the row l > k with a 1 in column k
// that minimizes |row_k ^ row_l| is added to row k (smallest l on ties).
// Elimination below a pivot runs from row n-1 up to k+1.
inline std::pair<TransvectionSeq, BitMatrix> gauss_jordan(const BitMatrix& m) {
    const std::size_t n = m.dim();
    BitMatrix u = m;
    TransvectionSeq k_seq{n, {}};
    for (std::size_t k = 0; k < n; ++k) {
        if (!u.get(k, k)) {
            std::size_t best = n;
            int best_w = -1;
            for (std::size_t l = k + 1; l < n; ++l) {
                if (!u.get(l, k)) continue;
                int w = std::popcount(u.row(k) ^ u.row(l));
                if (best == n || w < best_w) { best = l; best_w = w; }
            }
            if (best == n) throw std::invalid_argument("gauss_jordan: singular matrix");
            u.xor_row(k, best);
            k_seq.append({k, best});
        }
        for (std::size_t r = n; r-- > k + 1;) {
            if (u.get(r, k)) {
                u.xor_row(r, k);
                k_seq.append({r, k});
            }
        }
    }
    return {std::move(k_seq), std::move(u)};
}

// One transvection per off-diagonal 1 of a unitriangular matrix.
// Upper: columns j = n-1 .. 1, rows i = 0 .. j-1.
// Lower: columns j = 0 .. n-2, rows i = j+1 .. n-1.
inline TransvectionSeq canonical_triangular(const BitMatrix& t) {
    const std::size_t n = t.dim();
    TransvectionSeq seq{n, {}};
    if (t.is_upper_unitriangular()) {
        for (std::size_t j = n; j-- > 1;)
            for (std::size_t i = 0; i < j; ++i)
                if (t.get(i, j)) seq.append({i, j});
    } else if (t.is_lower_unitriangular()) {
        for (std::size_t j = 0; j + 1 < n; ++j)
            for (std::size_t i = j + 1; i < n; ++i)
                if (t.get(i, j)) seq.append({i, j});
    } else {
        throw std::invalid_argument("canonical_triangular: not unitriangular");
    }
    return seq;
}

// Greedy row-XOR decomposition of an upper unitriangular matrix. Sweeps
// rows top-down; for each row with more than one 1 picks the row k below
// that lowers its weight the most (smallest k on ties). Never longer than
// the canonical decomposition.
inline TransvectionSeq utd(const BitMatrix& upper) {
    if (!upper.is_upper_unitriangular()) throw std::invalid_argument("utd: not upper unitriangular");
    const std::size_t n = upper.dim();
    BitMatrix u = upper;
    TransvectionSeq seq{n, {}};
    while (!u.is_identity()) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::popcount(u.row(i)) <= 1) continue;
            std::size_t best = n;
            int best_w = std::popcount(u.row(i));
            for (std::size_t k = i + 1; k < n; ++k) {
                int w = std::popcount(u.row(i) ^ u.row(k));
                if (w < best_w) { best = k; best_w = w; }
            }
            if (best != n) {
                u.xor_row(i, best);
                seq.append({i, best});
            }
        }
    }
    return seq;
}

// Mirror of utd for lower unitriangular matrices: rows swept bottom-up,
// candidate rows k < i, largest k on ties.
inline TransvectionSeq ltd(const BitMatrix& lower) {
    if (!lower.is_lower_unitriangular()) throw std::invalid_argument("ltd: not lower unitriangular");
    const std::size_t n = lower.dim();
    BitMatrix l = lower;
    TransvectionSeq seq{n, {}};
    while (!l.is_identity()) {
        for (std::size_t i = n; i-- > 1;) {
            const int orig_w = std::popcount(l.row(i));
            if (orig_w <= 1) continue;
            std::size_t best = n;
            int best_w = orig_w;
            for (std::size_t k = 0; k < i; ++k) {
                int w = std::popcount(l.row(i) ^ l.row(k));
                if (w < orig_w && w <= best_w) { best = k; best_w = w; }
            }
            if (best != n) {
                l.xor_row(i, best);
                seq.append({i, best});
            }
        }
    }
    return seq;
}

}  // namespace cnot
