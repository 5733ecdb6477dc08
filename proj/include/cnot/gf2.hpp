#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cnot {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::size_t kMaxDim = 64;  // one machine word per row

// Square matrix over F_2, bit-packed: bit c of rows_[r] is entry (r,c).
class BitMatrix {
public:
    explicit BitMatrix(std::size_t n) : n_(n), rows_(n, 0) {
        if (n < 1 || n > kMaxDim) throw std::invalid_argument("BitMatrix: dimension out of range");
    }

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n);
        for (std::size_t r = 0; r < n; ++r) m.rows_[r] = uint64_t{1} << r;
        return m;
    }

    // All-ones matrix 1_n.
    static BitMatrix ones(std::size_t n) {
        BitMatrix m(n);
        for (std::size_t r = 0; r < n; ++r) m.rows_[r] = m.col_mask();
        return m;
    }

    std::size_t dim() const { return n_; }
    uint64_t col_mask() const { return n_ == 64 ? ~uint64_t{0} : (uint64_t{1} << n_) - 1; }

    bool get(std::size_t r, std::size_t c) const { return (rows_[r] >> c) & 1; }
    void set(std::size_t r, std::size_t c, bool v) {
        if (v) rows_[r] |= uint64_t{1} << c;
        else rows_[r] &= ~(uint64_t{1} << c);
    }
    uint64_t row(std::size_t r) const { return rows_[r]; }
    void set_row(std::size_t r, uint64_t bits) { rows_[r] = bits & col_mask(); }
    void xor_row(std::size_t dst, std::size_t src) { rows_[dst] ^= rows_[src]; }

    bool operator==(const BitMatrix& o) const = default;

    BitMatrix operator^(const BitMatrix& o) const {
        require_same_dim(o);
        BitMatrix r(n_);
        for (std::size_t i = 0; i < n_; ++i) r.rows_[i] = rows_[i] ^ o.rows_[i];
        return r;
    }

    BitMatrix transposed() const {
        BitMatrix t(n_);
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t c = 0; c < n_; ++c)
                if (get(r, c)) t.set(c, r, true);
        return t;
    }

    bool is_identity() const { return *this == identity(n_); }

    bool is_upper_unitriangular() const {
        for (std::size_t r = 0; r < n_; ++r) {
            if (!get(r, r)) return false;
            if (rows_[r] & ((uint64_t{1} << r) - 1)) return false;
        }
        return true;
    }
    bool is_lower_unitriangular() const {
        for (std::size_t r = 0; r < n_; ++r) {
            if (!get(r, r)) return false;
            uint64_t above = rows_[r] & ~((uint64_t{2} << r) - 1);
            if (above) return false;
        }
        return true;
    }

    bool is_invertible() const {
        BitMatrix m = *this;
        for (std::size_t k = 0; k < n_; ++k) {
            std::size_t piv = n_;
            for (std::size_t r = k; r < n_; ++r)
                if (m.get(r, k)) { piv = r; break; }
            if (piv == n_) return false;
            std::swap(m.rows_[k], m.rows_[piv]);
            for (std::size_t r = k + 1; r < n_; ++r)
                if (m.get(r, k)) m.rows_[r] ^= m.rows_[k];
        }
        return true;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t r = 0; r < n_; ++r) {
            for (std::size_t c = 0; c < n_; ++c) s += get(r, c) ? '1' : '0';
            s += '\n';
        }
        return s;
    }

    void require_same_dim(const BitMatrix& o) const {
        if (n_ != o.n_) throw std::invalid_argument("BitMatrix: dimension mismatch");
    }

private:
    std::size_t n_;
    std::vector<uint64_t> rows_;
};

// Transvection [ij]: identity plus a single 1 at entry (i,j). Row i is the
// target of the row addition, row j the source.
struct Transvection {
    std::size_t i, j;
    bool operator==(const Transvection&) const = default;
    auto operator<=>(const Transvection&) const = default;
};

inline void check_transvection(std::size_t n, Transvection t) {
    if (t.i >= n || t.j >= n || t.i == t.j)
        throw std::invalid_argument("Transvection: invalid indices");
}

inline BitMatrix transvection_matrix(std::size_t n, Transvection t) {
    check_transvection(n, t);
    BitMatrix m = BitMatrix::identity(n);
    m.set(t.i, t.j, true);
    return m;
}

// Ordered product of transvections; items multiply left to right, so
// items[0] is the leftmost matrix factor.
struct TransvectionSeq {
    std::size_t n = 0;
    std::vector<Transvection> items;

    std::size_t size() const { return items.size(); }
    void append(Transvection t) {
        check_transvection(n, t);
        items.push_back(t);
    }
    void append(const TransvectionSeq& o) {
        if (n != o.n) throw std::invalid_argument("TransvectionSeq: dimension mismatch");
        items.insert(items.end(), o.items.begin(), o.items.end());
    }
    bool operator==(const TransvectionSeq&) const = default;

    std::string to_string() const {
        std::string s;
        for (auto t : items) s += "[" + std::to_string(t.i) + std::to_string(t.j) + "]";
        return s.empty() ? "[]" : s;
    }
};

inline BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
    a.require_same_dim(b);
    const std::size_t n = a.dim();
    BitMatrix c(n);
    for (std::size_t r = 0; r < n; ++r) {
        uint64_t acc = 0, bits = a.row(r);
        while (bits) {
            std::size_t j = static_cast<std::size_t>(std::countr_zero(bits));
            bits &= bits - 1;
            acc ^= b.row(j);
        }
        c.set_row(r, acc);
    }
    return c;
}

inline BitMatrix product(const TransvectionSeq& seq) {
    BitMatrix m = BitMatrix::identity(seq.n);
    for (auto t : seq.items) {
        // right-multiplying by [ij] adds column i to column j
        for (std::size_t r = 0; r < seq.n; ++r)
            if (m.get(r, t.i)) m.set(r, t.j, !m.get(r, t.j));
    }
    return m;
}

// M * u over F_2 with u bit-packed (bit q = entry q).
inline uint64_t mat_apply(const BitMatrix& m, uint64_t u) {
    if (u & ~m.col_mask()) throw std::invalid_argument("mat_apply: vector length mismatch");
    uint64_t v = 0;
    for (std::size_t r = 0; r < m.dim(); ++r)
        if (std::popcount(m.row(r) & u) & 1) v |= uint64_t{1} << r;
    return v;
}

// Bijection of {0,...,n-1}; map[i] = sigma(i).
struct Permutation {
    std::vector<std::size_t> map;

    explicit Permutation(std::vector<std::size_t> m) : map(std::move(m)) {
        std::vector<bool> seen(map.size(), false);
        for (auto v : map) {
            if (v >= map.size() || seen[v]) throw std::invalid_argument("Permutation: not a bijection");
            seen[v] = true;
        }
    }
    static Permutation identity(std::size_t n) {
        std::vector<std::size_t> m(n);
        std::iota(m.begin(), m.end(), 0);
        return Permutation(std::move(m));
    }
    // From disjoint cycles, e.g. {{2,0,4},{1,5}} on n elements.
    static Permutation from_cycles(std::size_t n, const std::vector<std::vector<std::size_t>>& cycles) {
        std::vector<std::size_t> m(n);
        std::iota(m.begin(), m.end(), 0);
        for (const auto& cyc : cycles)
            for (std::size_t k = 0; k < cyc.size(); ++k)
                m[cyc[k]] = cyc[(k + 1) % cyc.size()];
        return Permutation(std::move(m));
    }

    std::size_t n() const { return map.size(); }
    std::size_t operator()(std::size_t i) const { return map[i]; }

    Permutation inverse() const {
        std::vector<std::size_t> inv(map.size());
        for (std::size_t i = 0; i < map.size(); ++i) inv[map[i]] = i;
        return Permutation(std::move(inv));
    }
    Permutation compose(const Permutation& o) const {  // (this o other)(x) = this(other(x))
        if (n() != o.n()) throw std::invalid_argument("Permutation: size mismatch");
        std::vector<std::size_t> m(n());
        for (std::size_t i = 0; i < n(); ++i) m[i] = map[o.map[i]];
        return Permutation(std::move(m));
    }
    bool is_identity() const {
        for (std::size_t i = 0; i < map.size(); ++i)
            if (map[i] != i) return false;
        return true;
    }
    bool operator==(const Permutation&) const = default;

    // Cycles enumerated smallest unvisited element first; fixed points included.
    std::vector<std::vector<std::size_t>> cycles() const {
        std::vector<std::vector<std::size_t>> out;
        std::vector<bool> seen(map.size(), false);
        for (std::size_t s = 0; s < map.size(); ++s) {
            if (seen[s]) continue;
            std::vector<std::size_t> cyc;
            for (std::size_t x = s; !seen[x]; x = map[x]) {
                seen[x] = true;
                cyc.push_back(x);
            }
            out.push_back(std::move(cyc));
        }
        return out;
    }
};

// Weakly decreasing positive parts summing to n.
struct CycleType {
    std::vector<std::size_t> parts;
    bool operator==(const CycleType&) const = default;
};

inline CycleType cycle_type(const Permutation& sigma) {
    std::vector<std::size_t> parts;
    for (const auto& c : sigma.cycles()) parts.push_back(c.size());
    std::sort(parts.rbegin(), parts.rend());
    return CycleType{std::move(parts)};
}

// P_sigma with entry (i,j) = 1 iff i = sigma(j).
inline BitMatrix permutation_matrix(const Permutation& sigma) {
    BitMatrix m(sigma.n());
    for (std::size_t j = 0; j < sigma.n(); ++j) m.set(sigma(j), j, true);
    return m;
}

inline std::optional<Permutation> permutation_of_matrix(const BitMatrix& m) {
    const std::size_t n = m.dim();
    std::vector<std::size_t> map(n, n);
    std::vector<bool> used(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t hit = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (!m.get(i, j)) continue;
            if (hit != n) return std::nullopt;  // two 1s in a column
            hit = i;
        }
        if (hit == n || used[hit]) return std::nullopt;
        used[hit] = true;
        map[j] = hit;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (std::popcount(m.row(i)) != 1) return std::nullopt;
    return Permutation(std::move(map));
}

// M^sigma = P_sigma M P_sigma^{-1}; entry (i,j) of the result is entry
// (sigma^{-1}(i), sigma^{-1}(j)) of M.
inline BitMatrix conjugate(const BitMatrix& m, const Permutation& sigma) {
    if (m.dim() != sigma.n()) throw std::invalid_argument("conjugate: dimension mismatch");
    const Permutation inv = sigma.inverse();
    BitMatrix out(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            if (m.get(inv(i), inv(j))) out.set(i, j, true);
    return out;
}

inline Transvection conjugate(Transvection t, const Permutation& sigma) {
    return Transvection{sigma(t.i), sigma(t.j)};
}

inline TransvectionSeq conjugate(const TransvectionSeq& seq, const Permutation& sigma) {
    TransvectionSeq out{seq.n, {}};
    out.items.reserve(seq.items.size());
    for (auto t : seq.items) out.items.push_back(conjugate(t, sigma));
    return out;
}

// |GL_n(F_2)| = 2^{n(n-1)/2} * prod_{i=1..n} (2^i - 1)
inline BigInt group_order(std::size_t n) {
    if (n < 1) throw std::invalid_argument("group_order: n >= 1 required");
    BigInt r = BigInt(1) << (n * (n - 1) / 2);
    for (std::size_t i = 1; i <= n; ++i) r *= (BigInt(1) << i) - 1;
    return r;
}

}  // namespace cnot
