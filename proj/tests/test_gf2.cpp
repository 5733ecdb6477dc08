#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cnot/decompose.hpp"
#include "cnot/gf2.hpp"

using namespace cnot;

namespace {

BitMatrix from_rows(std::initializer_list<const char*> rows) {
    BitMatrix m(rows.size());
    std::size_t r = 0;
    for (const char* row : rows) {
        for (std::size_t c = 0; row[c]; ++c)
            if (row[c] == '1') m.set(r, c, true);
        ++r;
    }
    return m;
}

TransvectionSeq seq_of_pairs(std::size_t n, std::initializer_list<std::pair<int, int>> ps) {
    TransvectionSeq s{n, {}};
    for (auto [i, j] : ps) s.append({std::size_t(i), std::size_t(j)});
    return s;
}

BitMatrix random_invertible(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    BitMatrix m = BitMatrix::identity(n);
    for (std::size_t step = 0; step < 4 * n * n; ++step) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i != j) m.xor_row(i, j);
    }
    return m;
}

}  // namespace

TEST_CASE("transvection matrices") {
    CHECK(transvection_matrix(2, {0, 1}) == from_rows({"11", "01"}));
    BitMatrix t20 = transvection_matrix(3, {2, 0});
    BitMatrix want = BitMatrix::identity(3);
    want.set(2, 0, true);
    CHECK(t20 == want);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            if (i == j) continue;
            auto t = transvection_matrix(4, {i, j});
            CHECK(mat_mul(t, t) == BitMatrix::identity(4));
        }
    CHECK_THROWS_AS(transvection_matrix(3, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(transvection_matrix(3, {3, 0}), std::invalid_argument);
}

TEST_CASE("mat_mul row action and non-commutation") {
    std::mt19937_64 rng(42);
    // left-multiplying by T_ij adds row j to row i
    for (int rep = 0; rep < 20; ++rep) {
        BitMatrix m = random_invertible(5, rng);
        std::size_t i = rep % 5, j = (rep + 1) % 5;
        BitMatrix lhs = mat_mul(transvection_matrix(5, {i, j}), m);
        BitMatrix want = m;
        want.xor_row(i, j);
        CHECK(lhs == want);
    }
    // [ij][jk][ij][jk] = [ik] for all distinct triples at n = 3
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) {
                if (i == j || j == k || i == k) continue;
                auto tij = transvection_matrix(3, {i, j});
                auto tjk = transvection_matrix(3, {j, k});
                auto p = mat_mul(mat_mul(tij, tjk), mat_mul(tij, tjk));
                CHECK(p == transvection_matrix(3, {i, k}));
            }
    BitMatrix a(3), b(4);
    CHECK_THROWS_AS(mat_mul(a, b), std::invalid_argument);
}

TEST_CASE("mat_apply") {
    const std::size_t n = 5;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            auto t = transvection_matrix(n, {i, j});
            CHECK(mat_apply(t, uint64_t{1} << j) == ((uint64_t{1} << i) | (uint64_t{1} << j)));
        }
    for (uint64_t u = 0; u < 32; ++u) CHECK(mat_apply(BitMatrix::identity(5), u) == u);
    // the X_02 basis permutation at n = 3: qubit 0 gains qubit 2's bit
    auto t02 = transvection_matrix(3, {0, 2});
    for (uint64_t u = 0; u < 8; ++u) {
        uint64_t want = u ^ (((u >> 2) & 1) << 0);
        CHECK(mat_apply(t02, u) == want);
    }
}

TEST_CASE("permutation matrices and detection") {
    // sigma = (204)(15) in S_6, the worked 6x6 example
    auto sigma = Permutation::from_cycles(6, {{2, 0, 4}, {1, 5}});
    CHECK(sigma(0) == 4);
    CHECK(sigma(2) == 0);
    CHECK(sigma(4) == 2);
    CHECK(sigma(1) == 5);
    CHECK(permutation_matrix(sigma) ==
          from_rows({"001000", "000001", "000010", "000100", "100000", "010000"}));
    CHECK(permutation_matrix(Permutation::identity(4)) == BitMatrix::identity(4));

    auto detected = permutation_of_matrix(permutation_matrix(sigma));
    REQUIRE(detected.has_value());
    CHECK(*detected == sigma);
    CHECK(permutation_of_matrix(BitMatrix::identity(3)).value() == Permutation::identity(3));
    CHECK_FALSE(permutation_of_matrix(transvection_matrix(3, {0, 1})).has_value());

    // homomorphism on random pairs
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<std::size_t> p1(6), p2(6);
        std::iota(p1.begin(), p1.end(), 0);
        std::iota(p2.begin(), p2.end(), 0);
        std::shuffle(p1.begin(), p1.end(), rng);
        std::shuffle(p2.begin(), p2.end(), rng);
        Permutation s1(p1), s2(p2);
        CHECK(mat_mul(permutation_matrix(s1), permutation_matrix(s2)) ==
              permutation_matrix(s1.compose(s2)));
    }
}

TEST_CASE("cycle type") {
    auto sigma = Permutation::from_cycles(6, {{2, 0, 4}, {1, 5}});
    CHECK(cycle_type(sigma).parts == std::vector<std::size_t>{3, 2, 1});
    CHECK(cycle_type(Permutation::identity(4)).parts == std::vector<std::size_t>{1, 1, 1, 1});
    CHECK(cycle_type(Permutation::from_cycles(5, {{0, 1, 2, 3, 4}})).parts ==
          std::vector<std::size_t>{5});
}

TEST_CASE("conjugation by permutations") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<std::size_t> p(6);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        Permutation sigma(p);
        std::size_t i = rng() % 6, j = rng() % 6;
        if (i == j) continue;
        CHECK(conjugate(transvection_matrix(6, {i, j}), sigma) ==
              transvection_matrix(6, {sigma(i), sigma(j)}));
    }
    BitMatrix m = random_invertible(5, rng);
    CHECK(conjugate(m, Permutation::identity(5)) == m);
    // Lemma 20: conjugating ibar by any permutation fixes it (n even)
    BitMatrix ibar = BitMatrix::identity(6) ^ BitMatrix::ones(6);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<std::size_t> p(6);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        CHECK(conjugate(ibar, Permutation(p)) == ibar);
    }
}

TEST_CASE("identity suite: involution, braid, commutation, conjugacy at n=4") {
    const std::size_t n = 4;
    auto T = [&](std::size_t i, std::size_t j) { return transvection_matrix(n, {i, j}); };
    auto I = BitMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            CHECK(mat_mul(T(i, j), T(i, j)) == I);
            // braid: [ij][ji][ij] = [ji][ij][ji] = P_(ij)
            auto b1 = mat_mul(mat_mul(T(i, j), T(j, i)), T(i, j));
            auto b2 = mat_mul(mat_mul(T(j, i), T(i, j)), T(j, i));
            CHECK(b1 == b2);
            CHECK(b1 == permutation_matrix(Permutation::from_cycles(n, {{i, j}})));
        }
    // commutation ([ij][kl])^2 = I when i != l, j != k; non-commutation otherwise
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    if (i == j || k == l) continue;
                    auto p = mat_mul(T(i, j), T(k, l));
                    if (i != l && j != k) CHECK(mat_mul(p, p) == I);
                }
    // non-commutation and Eq.-(14) conjugacy over all distinct triples
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                auto p = mat_mul(T(i, j), T(j, k));
                CHECK(mat_mul(p, p) == T(i, k));
                CHECK(mat_mul(mat_mul(T(i, j), T(j, k)), T(i, j)) == mat_mul(T(j, k), T(i, k)));
                CHECK(mat_mul(mat_mul(T(i, j), T(k, i)), T(i, j)) == mat_mul(T(k, i), T(k, j)));
            }
}

TEST_CASE("Lemma 23 rewrite rules R1-R3/L1-L3 at n=4") {
    const std::size_t n = 4;
    auto T = [&](std::size_t i, std::size_t j) { return transvection_matrix(n, {i, j}); };
    auto P = [&](std::size_t i, std::size_t j) {
        return permutation_matrix(Permutation::from_cycles(n, {{i, j}}));
    };
    auto mul3 = [](const BitMatrix& a, const BitMatrix& b, const BitMatrix& c) {
        return mat_mul(mat_mul(a, b), c);
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                auto triple = mul3(T(i, j), T(k, i), T(j, k));  // [ij][ki][jk]
                // R1: [ij][ki][jk](jk) = [ki][ij][jk]
                CHECK(mat_mul(triple, P(j, k)) == mul3(T(k, i), T(i, j), T(j, k)));
                // L1: (ij)[ij][ki][jk] = [ij][jk][ki]
                CHECK(mat_mul(P(i, j), triple) == mul3(T(i, j), T(j, k), T(k, i)));
                // R2: [ij][ki][jk](ki) = [jk][ij][ki][jk]
                CHECK(mat_mul(triple, P(k, i)) ==
                      mat_mul(mul3(T(j, k), T(i, j), T(k, i)), T(j, k)));
                // L2: (ki)[ij][ki][jk] = [ij][ki][jk][ij]
                CHECK(mat_mul(P(k, i), triple) == mat_mul(triple, T(i, j)));
                // R3: [ij][ki][jk](ij) = [ji][ik][kj]
                CHECK(mat_mul(triple, P(i, j)) == mul3(T(j, i), T(i, k), T(k, j)));
                // L3: (jk)[ij][ki][jk] = [ji][ik][kj]
                CHECK(mat_mul(P(j, k), triple) == mul3(T(j, i), T(i, k), T(k, j)));
            }
}

TEST_CASE("group order") {
    CHECK(group_order(1) == 1);
    CHECK(group_order(2) == 6);
    CHECK(group_order(3) == 168);
    CHECK(group_order(4) == 20160);
    CHECK(group_order(5) == 9999360);
    CHECK(group_order(6) == BigInt("20158709760"));
}

TEST_CASE("gauss_jordan on the worked 4x4 example") {
    BitMatrix m = from_rows({"0111", "0110", "1010", "1111"});
    auto [k, u] = gauss_jordan(m);
    CHECK(k == seq_of_pairs(4, {{0, 3}, {3, 0}, {2, 0}, {3, 1}}));
    CHECK(u == transvection_matrix(4, {1, 2}));
    CHECK(mat_mul(product(k), u) == m);
}

TEST_CASE("gauss_jordan basics and bound") {
    BitMatrix upper = from_rows({"110", "011", "001"});
    auto [k, u] = gauss_jordan(upper);
    CHECK(k.size() == 0);
    CHECK(u == upper);

    BitMatrix sing(3);  // zero matrix
    CHECK_THROWS_AS(gauss_jordan(sing), std::invalid_argument);

    std::mt19937_64 rng(2024);
    for (std::size_t n : {4, 8, 12, 16}) {
        for (int rep = 0; rep < 200; ++rep) {
            BitMatrix m = random_invertible(n, rng);
            auto [ks, us] = gauss_jordan(m);
            CHECK(mat_mul(product(ks), us) == m);
            CHECK(ks.size() + canonical_triangular(us).size() <= n * n - 1);
        }
    }
}

TEST_CASE("canonical triangular decomposition") {
    BitMatrix l = from_rows({"10000", "01000", "11100", "11110", "11101"});
    BitMatrix u = from_rows({"11100", "01100", "00111", "00011", "00001"});
    CHECK(canonical_triangular(l) ==
          seq_of_pairs(5, {{2, 0}, {3, 0}, {4, 0}, {2, 1}, {3, 1}, {4, 1}, {3, 2}, {4, 2}}));
    CHECK(canonical_triangular(u) ==
          seq_of_pairs(5, {{2, 4}, {3, 4}, {2, 3}, {0, 2}, {1, 2}, {0, 1}}));
    CHECK(product(canonical_triangular(l)) == l);
    CHECK(product(canonical_triangular(u)) == u);
    CHECK(canonical_triangular(BitMatrix::identity(4)).size() == 0);
    CHECK_THROWS_AS(canonical_triangular(transvection_matrix(3, {0, 1}) ^ BitMatrix::identity(3)),
                    std::invalid_argument);
}

TEST_CASE("utd and ltd on the worked 5x5 example") {
    BitMatrix l = from_rows({"10000", "01000", "11100", "11110", "11101"});
    BitMatrix u = from_rows({"11100", "01100", "00111", "00011", "00001"});
    CHECK(ltd(l) == seq_of_pairs(5, {{4, 2}, {3, 2}, {2, 1}, {2, 0}}));
    CHECK(utd(u) == seq_of_pairs(5, {{0, 1}, {2, 3}, {3, 4}, {1, 2}}));
    CHECK(product(ltd(l)) == l);
    CHECK(product(utd(u)) == u);
    CHECK(utd(BitMatrix::identity(5)).size() == 0);
    CHECK_THROWS_AS(utd(l), std::invalid_argument);
}

TEST_CASE("utd never beats canonical the wrong way") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int rep = 0; rep < 200; ++rep) {
        std::size_t n = 3 + rep % 6;
        BitMatrix u = BitMatrix::identity(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r + 1; c < n; ++c)
                if (bit(rng)) u.set(r, c, true);
        auto s = utd(u);
        CHECK(product(s) == u);
        CHECK(s.size() <= canonical_triangular(u).size());
        BitMatrix lt = u.transposed();
        auto sl = ltd(lt);
        CHECK(product(sl) == lt);
        CHECK(sl.size() <= canonical_triangular(lt).size());
    }
}
