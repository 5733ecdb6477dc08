#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnot/gf2.hpp"

namespace cnot {

// Distance table over GL_n(F_2) for n <= 5, built by breadth-first search
// from the identity with the n(n-1) transvection generators. Matrices are
// keyed by their n^2 bits packed row-major (bit r*n+c = entry (r,c)), so a
// direct-addressed byte array of 2^{n^2} cells replaces a hash map
// (n=5: 2^25 cells, ~34 MB).
class OptTable {
public:
    static constexpr uint8_t kUnreached = 0xFF;

    static OptTable build(std::size_t n) {
        if (n < 2 || n > 5) throw std::invalid_argument("OptTable: supported range is 2 <= n <= 5");
        OptTable t(n);
        t.run_bfs();
        return t;
    }

    std::size_t dim() const { return n_; }
    std::size_t entry_count() const { return entries_; }

    uint32_t key_of(const BitMatrix& m) const {
        if (m.dim() != n_) throw std::invalid_argument("OptTable: dimension mismatch");
        uint32_t k = 0;
        for (std::size_t r = 0; r < n_; ++r)
            k |= static_cast<uint32_t>(m.row(r)) << (r * n_);
        return k;
    }
    BitMatrix matrix_of_key(uint32_t key) const {
        BitMatrix m(n_);
        const uint32_t rowmask = (1u << n_) - 1;
        for (std::size_t r = 0; r < n_; ++r) m.set_row(r, (key >> (r * n_)) & rowmask);
        return m;
    }

    int optimal_length(const BitMatrix& m) const {
        uint8_t d = dist_[key_of(m)];
        if (d == kUnreached) throw std::invalid_argument("optimal_length: matrix not in table (singular)");
        return d;
    }

    // Minimal-length witness. The word is rebuilt from the back: at each
    // step the lexicographically smallest generator [ij] whose removal as
    // the last factor reduces the distance is taken, which makes the output
    // deterministic.
    TransvectionSeq optimal_decompose(const BitMatrix& m) const {
        uint32_t key = key_of(m);
        if (dist_[key] == kUnreached)
            throw std::invalid_argument("optimal_decompose: matrix not in table (singular)");
        TransvectionSeq seq{n_, {}};
        seq.items.resize(dist_[key]);
        std::size_t pos = seq.items.size();
        while (dist_[key] != 0) {
            const uint8_t d = dist_[key];
            bool found = false;
            for (std::size_t i = 0; i < n_ && !found; ++i) {
                for (std::size_t j = 0; j < n_ && !found; ++j) {
                    if (i == j) continue;
                    uint32_t nk = mul_right(key, i, j);
                    if (dist_[nk] == d - 1) {
                        seq.items[--pos] = Transvection{i, j};
                        key = nk;
                        found = true;
                    }
                }
            }
        }
        return seq;
    }

    std::map<int, BigInt> length_histogram() const {
        std::map<int, BigInt> h;
        for (std::size_t k = 0; k < dist_.size(); ++k)
            if (dist_[k] != kUnreached) ++h[dist_[k]];
        return h;
    }

    struct ConjectureReport {
        int max_length = 0;
        std::size_t maximizer_count = 0;
        bool bound_is_3n_minus_3 = false;       // max = 3(n-1)
        bool count_is_factorial = false;        // (n-1)! maximizers
        bool all_full_cycles = false;           // every maximizer is P_sigma, sigma an n-cycle
        bool ok() const { return bound_is_3n_minus_3 && count_is_factorial && all_full_cycles; }
    };

    ConjectureReport check_conjecture() const {
        ConjectureReport rep;
        for (auto d : dist_)
            if (d != kUnreached && d > rep.max_length) rep.max_length = d;
        std::size_t fact = 1;
        for (std::size_t i = 2; i < n_; ++i) fact *= i;
        rep.all_full_cycles = true;
        for (std::size_t k = 0; k < dist_.size(); ++k) {
            if (dist_[k] != static_cast<uint8_t>(rep.max_length) || dist_[k] == kUnreached) continue;
            ++rep.maximizer_count;
            auto sigma = permutation_of_matrix(matrix_of_key(static_cast<uint32_t>(k)));
            if (!sigma || cycle_type(*sigma).parts != std::vector<std::size_t>{n_})
                rep.all_full_cycles = false;
        }
        rep.bound_is_3n_minus_3 = rep.max_length == static_cast<int>(3 * (n_ - 1));
        rep.count_is_factorial = rep.maximizer_count == fact;
        return rep;
    }

    // Binary cache: magic, version, n, then the distance array.
    void save(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("OptTable: cannot write " + path);
        const char magic[8] = {'C', 'N', 'O', 'T', 'O', 'P', 'T', '\0'};
        uint32_t version = 1, n32 = static_cast<uint32_t>(n_);
        out.write(magic, 8);
        out.write(reinterpret_cast<const char*>(&version), 4);
        out.write(reinterpret_cast<const char*>(&n32), 4);
        out.write(reinterpret_cast<const char*>(dist_.data()), static_cast<std::streamsize>(dist_.size()));
    }

    static OptTable load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("OptTable: cannot read " + path);
        char magic[8];
        uint32_t version = 0, n32 = 0;
        in.read(magic, 8);
        in.read(reinterpret_cast<char*>(&version), 4);
        in.read(reinterpret_cast<char*>(&n32), 4);
        if (!in || std::string(magic, 7) != "CNOTOPT" || version != 1 || n32 < 2 || n32 > 5)
            throw std::runtime_error("OptTable: bad cache header in " + path);
        OptTable t(n32);
        in.read(reinterpret_cast<char*>(t.dist_.data()), static_cast<std::streamsize>(t.dist_.size()));
        if (!in) throw std::runtime_error("OptTable: truncated cache " + path);
        BigInt count = 0;
        for (auto d : t.dist_)
            if (d != kUnreached) ++count;
        if (count != group_order(n32)) throw std::runtime_error("OptTable: cache entry count mismatch");
        t.entries_ = static_cast<std::size_t>(count);
        return t;
    }

private:
    explicit OptTable(std::size_t n)
        : n_(n), dist_(std::size_t{1} << (n * n), kUnreached) {
        for (std::size_t r = 0; r < n_; ++r) colmask_ |= 1u << (r * n_);
    }

    // key' = [ij] * M : row j XORed into row i
    uint32_t mul_left(uint32_t key, std::size_t i, std::size_t j) const {
        const uint32_t rowmask = (1u << n_) - 1;
        uint32_t rj = (key >> (j * n_)) & rowmask;
        return key ^ (rj << (i * n_));
    }
    // key' = M * [ij] : column i XORed into column j
    uint32_t mul_right(uint32_t key, std::size_t i, std::size_t j) const {
        uint32_t coli = (key >> i) & colmask_;
        return key ^ ((coli << j) & (colmask_ << j));
    }

    void run_bfs() {
        const std::size_t n = n_;
        uint32_t ident = 0;
        for (std::size_t r = 0; r < n; ++r) ident |= 1u << (r * n + r);
        std::vector<std::pair<std::size_t, std::size_t>> gens;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) gens.emplace_back(i, j);
        dist_[ident] = 0;
        entries_ = 1;
        std::vector<uint32_t> frontier{ident}, next;
        uint8_t level = 0;
        while (!frontier.empty()) {
            ++level;
            next.clear();
            for (uint32_t key : frontier) {
                for (auto [i, j] : gens) {
                    uint32_t nk = mul_left(key, i, j);
                    if (dist_[nk] == kUnreached) {
                        dist_[nk] = level;
                        next.push_back(nk);
                    }
                }
            }
            entries_ += next.size();
            frontier.swap(next);
        }
    }

    std::size_t n_;
    uint32_t colmask_ = 0;
    std::size_t entries_ = 0;
    std::vector<uint8_t> dist_;
};

}  // namespace cnot
