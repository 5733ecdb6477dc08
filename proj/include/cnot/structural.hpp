#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cnot/circuit.hpp"
#include "cnot/decompose.hpp"
#include "cnot/exact.hpp"
#include "cnot/gf2.hpp"
#include "cnot/peephole.hpp"

namespace cnot {

// ---------------------------------------------------------------------------
// Permutation matrices: each cycle becomes transpositions, each transposition
// (ij) the braid [ij][ji][ij]; total length 3(n - #cycles).

inline TransvectionSeq permutation_decompose(const Permutation& sigma) {
    TransvectionSeq seq{sigma.n(), {}};
    for (const auto& cyc : sigma.cycles()) {
        // (c0 c1 ... ck-1) = (c0 c1)(c1 c2)...(ck-2 ck-1) as a matrix product
        for (std::size_t k = 0; k + 1 < cyc.size(); ++k) {
            std::size_t a = cyc[k], b = cyc[k + 1];
            seq.append({a, b});
            seq.append({b, a});
            seq.append({a, b});
        }
    }
    return seq;
}

// ---------------------------------------------------------------------------
// Circuit graph and weakly-connected components.

struct CircuitGraph {
    std::size_t n = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // (i,j) with m_ij = 1
};

inline CircuitGraph circuit_graph(const BitMatrix& m) {
    CircuitGraph g{m.dim(), {}};
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            if (m.get(i, j)) g.edges.emplace_back(i, j);
    return g;
}

// Each component sorted ascending; components ordered by smallest vertex.
inline std::vector<std::vector<std::size_t>> components(const CircuitGraph& g) {
    std::vector<std::vector<std::size_t>> adj(g.n);
    for (auto [i, j] : g.edges) {
        if (i == j) continue;
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    std::vector<bool> seen(g.n, false);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> comp, stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            std::size_t x = stack.back();
            stack.pop_back();
            comp.push_back(x);
            for (auto y : adj[x])
                if (!seen[y]) { seen[y] = true; stack.push_back(y); }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bit-reversed permutation matrices (even dimension).

inline BitMatrix ibar_matrix(std::size_t n) {
    return BitMatrix::identity(n) ^ BitMatrix::ones(n);
}

// sigma with M = P_sigma ^ 1_n, for even n.
inline std::optional<Permutation> detect_bit_reversed(const BitMatrix& m) {
    if (m.dim() % 2 != 0) return std::nullopt;
    return permutation_of_matrix(m ^ BitMatrix::ones(m.dim()));
}

namespace detail {

// Triple [xyz] = [xy][zx][yz]; inverse expands as [yz][zx][xy].
struct Triple {
    std::size_t x, y, z;
    int eps;  // +1 or -1
};

inline void expand_triple(TransvectionSeq& seq, const Triple& t) {
    if (t.eps > 0) {
        seq.append({t.x, t.y});
        seq.append({t.z, t.x});
        seq.append({t.y, t.z});
    } else {
        seq.append({t.y, t.z});
        seq.append({t.z, t.x});
        seq.append({t.x, t.y});
    }
}

inline Triple conj_triple(const Triple& t, const Permutation& g) {
    return Triple{g(t.x), g(t.y), g(t.z), t.eps};
}

// Decreasing-partition chain for the bit-reverse construction. For a
// partition of m >= 4 (not all ones), produces the reduced partition of
// m-2 and extends the two triple products so that
//   ibar_m = prod(left) * alpha_lambda * prod(right)
// holds with the canonical alpha of each cycle type.
inline void ibar_chain(const std::vector<std::size_t>& lambda, std::size_t m,
                       std::vector<Triple>& left, std::vector<Triple>& right) {
    if (lambda == std::vector<std::size_t>{2}) return;  // ibar_2 = alpha_(2) = (01)
    std::vector<std::size_t> prev = lambda;
    const std::size_t p = lambda.size();
    const std::size_t a = m - 3, b = m - 2, c = m - 1;
    int kase;
    if (p >= 2 && lambda[p - 1] == 1 && lambda[p - 2] == 1) {
        kase = 1;
        prev.pop_back();
        prev.pop_back();
    } else if (lambda[p - 1] == 1) {
        kase = 2;
        prev.pop_back();
        --prev.back();
    } else if (lambda[p - 1] == 2) {
        kase = 3;
        prev.pop_back();
    } else {
        kase = 4;
        --prev.back();
        --prev.back();
    }
    ibar_chain(prev, m - 2, left, right);
    auto swap_perm = [&](std::size_t u, std::size_t v) {
        auto perm = Permutation::identity(m);
        std::swap(perm.map[u], perm.map[v]);
        return perm;
    };
    switch (kase) {
        case 1:
            left.insert(left.begin(), Triple{a, b, c, -1});
            right.push_back(Triple{a, b, c, +1});
            break;
        case 2: {
            auto pi = swap_perm(a, b);
            for (auto& t : right) t = conj_triple(t, pi);
            left.insert(left.begin(), Triple{a, b, c, -1});
            right.push_back(Triple{c, a, b, -1});
            break;
        }
        case 3: {
            auto pi = swap_perm(b, c);
            for (auto& t : right) t = conj_triple(t, pi);
            left.insert(left.begin(), Triple{a, b, c, -1});
            right.push_back(Triple{c, b, a, -1});
            break;
        }
        default: {  // general case: pi sends a->c, b->a, c->b
            auto perm = Permutation::identity(m);
            perm.map[a] = c;
            perm.map[b] = a;
            perm.map[c] = b;
            for (auto& t : right) t = conj_triple(t, perm);
            left.insert(left.begin(), Triple{b, c, a, +1});
            right.push_back(Triple{b, a, c, -1});
            break;
        }
    }
}

// Canonical permutation of a cycle type: consecutive cycles (0..n1-1)(...).
inline Permutation alpha_of(const std::vector<std::size_t>& lambda, std::size_t n) {
    std::vector<std::size_t> map(n);
    std::size_t base = 0;
    for (auto part : lambda) {
        for (std::size_t i = 0; i < part; ++i) map[base + i] = base + (i + 1) % part;
        base += part;
    }
    return Permutation(std::move(map));
}

}  // namespace detail

// Reduced decomposition of ibar_n: length 3 for n = 2, 3(n-1)-1 for even
// n >= 4, built from the triple chain with its first triple unfolded and
// the middle braid merged into an 8-transvection core.
inline TransvectionSeq ibar_decompose(std::size_t n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("ibar_decompose: n must be even and >= 2");
    TransvectionSeq seq{n, {}};
    if (n == 2) {
        seq.append({0, 1});
        seq.append({1, 0});
        seq.append({0, 1});
        return seq;
    }
    const std::size_t q = n / 2;
    std::vector<detail::Triple> bq;  // B'_q = prod_{i=1..q-2} [2i+1, 2i+2, 2i+3]
    for (std::size_t i = 1; i + 1 < q; ++i)
        bq.push_back(detail::Triple{2 * i + 1, 2 * i + 2, 2 * i + 3, +1});
    for (auto it = bq.rbegin(); it != bq.rend(); ++it) {
        auto inv = *it;
        inv.eps = -1;
        detail::expand_triple(seq, inv);
    }
    for (auto [i, j] : {std::pair<std::size_t, std::size_t>{2, 3}, {3, 1}, {1, 0}, {0, 1},
                        {0, 2}, {1, 0}, {3, 1}, {2, 3}})
        seq.append({i, j});
    for (const auto& t : bq) detail::expand_triple(seq, t);
    return seq;
}

// Decomposition of sigma-bar = sigma * ibar_n in exactly 3(n-2)
// transvections (even n, sigma != identity). Follows the constructive
// induction on the cycle type of sigma^{-1}: build the triple chain for the
// canonical alpha, transport it to sigma^{-1} by a conjugator gamma
// (cycles matched by length, enumeration order, smallest element first),
// then absorb sigma into the left block.
inline TransvectionSeq sigmabar_decompose(const Permutation& sigma) {
    const std::size_t n = sigma.n();
    if (n % 2 != 0) throw std::invalid_argument("sigmabar_decompose: n must be even");
    if (sigma.is_identity())
        throw std::invalid_argument("sigmabar_decompose: identity requires ibar_decompose");
    const Permutation tau = sigma.inverse();
    auto tau_cycles = tau.cycles();
    std::vector<std::size_t> lambda;
    for (const auto& c : tau_cycles) lambda.push_back(c.size());
    std::sort(lambda.rbegin(), lambda.rend());

    std::vector<detail::Triple> left, right;
    detail::ibar_chain(lambda, n, left, right);
    const Permutation alpha = detail::alpha_of(lambda, n);

    // gamma with tau = gamma alpha gamma^{-1}
    std::vector<std::size_t> gmap(n);
    std::vector<bool> used(tau_cycles.size(), false);
    for (const auto& ac : alpha.cycles()) {
        for (std::size_t ci = 0; ci < tau_cycles.size(); ++ci) {
            if (used[ci] || tau_cycles[ci].size() != ac.size()) continue;
            used[ci] = true;
            for (std::size_t k = 0; k < ac.size(); ++k) gmap[ac[k]] = tau_cycles[ci][k];
            break;
        }
    }
    const Permutation gamma(std::move(gmap));
    const Permutation sig_gamma = sigma.compose(gamma);

    TransvectionSeq seq{n, {}};
    for (const auto& t : left) detail::expand_triple(seq, detail::conj_triple(t, sig_gamma));
    for (const auto& t : right) detail::expand_triple(seq, detail::conj_triple(t, gamma));
    return seq;
}

// ---------------------------------------------------------------------------
// Block-diagonal pipeline and the dispatch front end.

struct OptimizeOptions {
    std::size_t exact_limit = 5;  // largest dimension solved by BFS table
};

class TableCache {
public:
    const OptTable& get(std::size_t n) {
        if (n < 2 || n > 5) throw std::invalid_argument("TableCache: n out of range");
        if (!tables_[n]) tables_[n] = std::make_unique<OptTable>(OptTable::build(n));
        return *tables_[n];
    }

private:
    std::array<std::unique_ptr<OptTable>, 6> tables_{};
};

inline TableCache& global_table_cache() {
    static TableCache cache;
    return cache;
}

namespace detail {

// Best heuristic decomposition: Gauss-Jordan with the canonical or
// greedy triangular tail, each peephole-reduced.
inline TransvectionSeq heuristic_decompose(const BitMatrix& m) {
    auto [k_seq, u] = gauss_jordan(m);
    TransvectionSeq cand1 = k_seq;
    cand1.append(canonical_triangular(u));

    TransvectionSeq cand2{m.dim(), {}};
    const BitMatrix k_mat = product(k_seq);
    if (k_mat.is_lower_unitriangular()) cand2.append(ltd(k_mat));
    else cand2.append(k_seq);
    cand2.append(utd(u));

    TransvectionSeq best = peephole_reduce(cand1);
    TransvectionSeq alt = peephole_reduce(cand2);
    if (alt.size() < best.size()) best = alt;
    return best;
}

inline TransvectionSeq decompose_connected(const BitMatrix& m, const OptimizeOptions& opts,
                                           TableCache& cache);

}  // namespace detail

// Conjugates the matrix so components occupy consecutive index blocks
// (smallest-vertex component first, ascending inside), decomposes each
// diagonal block, and transports every transvection back through the
// relabeling. Product equals the input; length is the sum over blocks.
inline TransvectionSeq block_optimize(const BitMatrix& m, const OptimizeOptions& opts = {},
                                      TableCache* cache = nullptr) {
    if (!m.is_invertible()) throw std::invalid_argument("block_optimize: singular matrix");
    TableCache& tc = cache ? *cache : global_table_cache();
    const std::size_t n = m.dim();
    auto comps = components(circuit_graph(m));
    std::vector<std::size_t> smap(n);
    std::size_t pos = 0;
    for (const auto& comp : comps)
        for (auto v : comp) smap[v] = pos++;
    const Permutation sigma(std::move(smap));
    const Permutation sigma_inv = sigma.inverse();
    const BitMatrix ms = conjugate(m, sigma);

    TransvectionSeq out{n, {}};
    std::size_t base = 0;
    for (const auto& comp : comps) {
        const std::size_t k = comp.size();
        BitMatrix block(k);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c)
                if (ms.get(base + r, base + c)) block.set(r, c, true);
        TransvectionSeq bseq = detail::decompose_connected(block, opts, tc);
        for (auto t : bseq.items)
            out.append({sigma_inv(base + t.i), sigma_inv(base + t.j)});
        base += k;
    }
    return out;
}

// Tries, in order: exact table, permutation fast path, bit-reversed fast
// path, block split; otherwise the heuristic bundle. Product always equals
// the input.
inline TransvectionSeq dispatch_optimize(const BitMatrix& m, const OptimizeOptions& opts = {},
                                         TableCache* cache = nullptr) {
    if (!m.is_invertible()) throw std::invalid_argument("dispatch_optimize: singular matrix");
    TableCache& tc = cache ? *cache : global_table_cache();
    const std::size_t n = m.dim();
    if (n == 1 || m.is_identity()) return TransvectionSeq{n, {}};
    if (n >= 2 && n <= opts.exact_limit && n <= 5) return tc.get(n).optimal_decompose(m);
    if (auto sigma = permutation_of_matrix(m)) return permutation_decompose(*sigma);
    if (auto sigma = detect_bit_reversed(m))
        return sigma->is_identity() ? ibar_decompose(n) : sigmabar_decompose(*sigma);
    if (components(circuit_graph(m)).size() > 1) {
        TransvectionSeq blk = block_optimize(m, opts, &tc);
        TransvectionSeq heur = detail::heuristic_decompose(m);
        return heur.size() < blk.size() ? heur : blk;
    }
    return detail::heuristic_decompose(m);
}

namespace detail {

// Per-block dispatch; a connected block cannot split again, so this never
// recurses through block_optimize.
inline TransvectionSeq decompose_connected(const BitMatrix& m, const OptimizeOptions& opts,
                                           TableCache& cache) {
    const std::size_t n = m.dim();
    if (n == 1 || m.is_identity()) return TransvectionSeq{n, {}};
    if (n >= 2 && n <= opts.exact_limit && n <= 5) return cache.get(n).optimal_decompose(m);
    if (auto sigma = permutation_of_matrix(m)) return permutation_decompose(*sigma);
    if (auto sigma = detect_bit_reversed(m))
        return sigma->is_identity() ? ibar_decompose(n) : sigmabar_decompose(*sigma);
    return heuristic_decompose(m);
}

}  // namespace detail

}  // namespace cnot
