#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cnot/circuit.hpp"
#include "cnot/peephole.hpp"

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

Circuit random_cnot_circuit(std::size_t n, std::size_t len, std::mt19937_64& rng) {
    Circuit c(n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    while (c.size() < len) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i != j) c.push(Gate::cnot(i, j));
    }
    return c;
}

}  // namespace

TEST_CASE("matrix_of follows the operator order") {
    // temporal X_03, X_31, X_10, X_12 is the operator X_12 X_10 X_31 X_03
    Circuit c(4);
    c.push(Gate::cnot(0, 3));
    c.push(Gate::cnot(3, 1));
    c.push(Gate::cnot(1, 0));
    c.push(Gate::cnot(1, 2));
    BitMatrix want = BitMatrix::identity(4);
    for (auto [i, j] : {std::pair<int, int>{0, 3}, {3, 1}, {1, 0}, {1, 2}})
        want = mat_mul(transvection_matrix(4, {std::size_t(i), std::size_t(j)}), want);
    CHECK(matrix_of(c) == want);

    CHECK(matrix_of(Circuit(3)) == BitMatrix::identity(3));

    // the 12-gate input circuit whose matrix is printed in the Gauss-Jordan example
    Circuit fig9(4);
    for (auto [i, j] : {std::pair<int, int>{0, 1}, {1, 2}, {0, 3}, {2, 0}, {3, 0}, {3, 2},
                        {2, 3}, {2, 0}, {3, 2}, {1, 2}, {3, 0}, {0, 2}})
        fig9.push(Gate::cnot(std::size_t(i), std::size_t(j)));
    CHECK(matrix_of(fig9) == from_rows({"0111", "0110", "1010", "1111"}));

    Circuit with_h(2);
    with_h.push(Gate::h(0));
    CHECK_THROWS_AS(matrix_of(with_h), std::invalid_argument);
}

TEST_CASE("circuit_of reverses the product order") {
    TransvectionSeq seq{4, {{0, 3}, {3, 0}, {2, 0}, {3, 1}, {1, 2}}};
    Circuit c = circuit_of(seq);
    REQUIRE(c.size() == 5);
    CHECK(c.gates[0] == Gate::cnot(1, 2));
    CHECK(c.gates[1] == Gate::cnot(3, 1));
    CHECK(c.gates[2] == Gate::cnot(2, 0));
    CHECK(c.gates[3] == Gate::cnot(3, 0));
    CHECK(c.gates[4] == Gate::cnot(0, 3));
    CHECK(matrix_of(c) == product(seq));

    CHECK(circuit_of(TransvectionSeq{3, {}}).size() == 0);

    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 30; ++rep) {
        Circuit rc = random_cnot_circuit(5, 12, rng);
        TransvectionSeq s = seq_of(rc);
        CHECK(matrix_of(circuit_of(s)) == product(s));
    }
}

TEST_CASE("simulate_basis") {
    Circuit c(4);
    c.push(Gate::cnot(1, 0));
    CHECK(simulate_basis(c, 0b0001) == 0b0011);  // |10..> gains qubit 1

    // GHZ ladder on |10...0>
    for (std::size_t n : {3, 5, 8}) {
        Circuit ladder(n);
        for (std::size_t q = 1; q < n; ++q) ladder.push(Gate::cnot(q, q - 1));
        CHECK(simulate_basis(ladder, 1) == (n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1));
    }

    std::mt19937_64 rng(6);
    for (int rep = 0; rep < 50; ++rep) {
        Circuit rc = random_cnot_circuit(6, 15, rng);
        uint64_t u = rng() & 63;
        CHECK(simulate_basis(rc, u) == mat_apply(matrix_of(rc), u));
    }

    // CNOT circuits permute the basis states
    Circuit rc = random_cnot_circuit(5, 20, rng);
    std::vector<bool> hit(32, false);
    for (uint64_t u = 0; u < 32; ++u) hit[simulate_basis(rc, u)] = true;
    CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
}

TEST_CASE("equivalence and the SWAP identities") {
    Circuit swap1(2), swap2(2);
    swap1.push(Gate::cnot(0, 1));
    swap1.push(Gate::cnot(1, 0));
    swap1.push(Gate::cnot(0, 1));
    swap2.push(Gate::cnot(1, 0));
    swap2.push(Gate::cnot(0, 1));
    swap2.push(Gate::cnot(1, 0));
    CHECK(equivalent(swap1, swap2));
    // both realize the basis transposition
    CHECK(simulate_basis(swap1, 0b01) == 0b10);
    CHECK(simulate_basis(swap1, 0b10) == 0b01);

    // the three equivalent forms of X_03 at n = 4
    Circuit direct(4);
    direct.push(Gate::cnot(0, 3));
    Circuit via_noncom(4);
    for (auto [i, j] : {std::pair<int, int>{2, 3}, {0, 2}, {2, 3}, {0, 2}})
        via_noncom.push(Gate::cnot(std::size_t(i), std::size_t(j)));
    Circuit via_noncom2(4);
    for (auto [i, j] : {std::pair<int, int>{0, 2}, {2, 3}, {0, 2}, {2, 3}})
        via_noncom2.push(Gate::cnot(std::size_t(i), std::size_t(j)));
    CHECK(equivalent(direct, via_noncom));
    CHECK(equivalent(direct, via_noncom2));
    CHECK(equivalent(direct, direct));
    CHECK_THROWS_AS(equivalent(direct, swap1), std::invalid_argument);
}

TEST_CASE("conjugating a gate by a SWAP network relabels it") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<std::size_t> p(5);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        Permutation sigma(p);
        std::size_t i = rng() % 5, j = rng() % 5;
        if (i == j) continue;
        // operator S_sigma X_ij S_sigma^{-1}: temporally the inverse network first
        Circuit c(5);
        auto net = [&](const Permutation& s) {
            std::vector<Gate> gates;
            auto cycles = s.cycles();
            std::vector<std::pair<std::size_t, std::size_t>> transpositions;
            for (const auto& cyc : cycles)
                for (std::size_t k = 0; k + 1 < cyc.size(); ++k)
                    transpositions.emplace_back(cyc[k], cyc[k + 1]);
            // temporal order reverses the algebraic product
            for (auto it = transpositions.rbegin(); it != transpositions.rend(); ++it) {
                gates.push_back(Gate::cnot(it->first, it->second));
                gates.push_back(Gate::cnot(it->second, it->first));
                gates.push_back(Gate::cnot(it->first, it->second));
            }
            return gates;
        };
        for (const auto& g : net(sigma.inverse())) c.push(g);
        c.push(Gate::cnot(i, j));
        for (const auto& g : net(sigma)) c.push(g);
        CHECK(matrix_of(c) == transvection_matrix(5, {sigma(i), sigma(j)}));
    }
}

TEST_CASE("peephole reduces and preserves the matrix") {
    Circuit two(3);
    two.push(Gate::cnot(0, 1));
    two.push(Gate::cnot(1, 2));
    CHECK(peephole_reduce(two) == two);  // already minimal

    Circuit dup(3);
    dup.push(Gate::cnot(0, 1));
    dup.push(Gate::cnot(0, 1));
    CHECK(peephole_reduce(dup).size() == 0);

    // cancellation across commuting gates
    Circuit across(4);
    across.push(Gate::cnot(0, 1));
    across.push(Gate::cnot(2, 3));
    across.push(Gate::cnot(0, 1));
    CHECK(peephole_reduce(across).size() == 1);

    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 80; ++rep) {
        Circuit rc = random_cnot_circuit(4, 14, rng);
        Circuit red = peephole_reduce(rc);
        CHECK(red.size() <= rc.size());
        CHECK(matrix_of(red) == matrix_of(rc));
        CHECK(peephole_reduce(red) == red);  // idempotent at fixpoint
    }
}

TEST_CASE("peephole on the worked 3-qubit reduction example") {
    // temporal: X_01, X_20, X_12, X_01, SWAP(0,2), X_10 with the SWAP as 3 CNOTs
    Circuit c(3);
    c.push(Gate::cnot(0, 1));
    c.push(Gate::cnot(2, 0));
    c.push(Gate::cnot(1, 2));
    c.push(Gate::cnot(0, 1));
    c.push(Gate::cnot(0, 2));
    c.push(Gate::cnot(2, 0));
    c.push(Gate::cnot(0, 2));
    c.push(Gate::cnot(1, 0));
    Circuit red = peephole_reduce(c);
    CHECK(matrix_of(red) == matrix_of(c));
    CHECK(red.size() <= c.size());
    // the optimal circuit has 2 gates: [02][21]
    TransvectionSeq opt{3, {{0, 2}, {2, 1}}};
    CHECK(matrix_of(c) == product(opt));
}

TEST_CASE("native format round trip and errors") {
    std::string text = "qubits 2\nX 0 1\n";
    Circuit c = parse_circuit(text);
    REQUIRE(c.size() == 1);
    CHECK(c.n == 2);
    CHECK(c.gates[0] == Gate::cnot(0, 1));

    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 20; ++rep) {
        Circuit rc = random_cnot_circuit(6, 10, rng);
        rc.push(Gate::h(2));
        rc.push(Gate::t(0));
        rc.push(Gate::s(5));
        CHECK(parse_circuit(write_circuit(rc)) == rc);
    }

    CHECK_THROWS_WITH(parse_circuit("qubits 2\nX 1 1\n"),
                      Catch::Matchers::ContainsSubstring("line 2") &&
                          Catch::Matchers::ContainsSubstring("target equals control"));
    CHECK_THROWS_WITH(parse_circuit("qubits 2\nX 0 2\n"),
                      Catch::Matchers::ContainsSubstring("out of range"));
    CHECK_THROWS_WITH(parse_circuit("X 0 1\n"), Catch::Matchers::ContainsSubstring("header"));
    CHECK_THROWS_WITH(parse_circuit("qubits 2\nY 0\n"),
                      Catch::Matchers::ContainsSubstring("unknown directive"));
    CHECK_THROWS_WITH(parse_circuit("# only comments\n"),
                      Catch::Matchers::ContainsSubstring("header"));
}

TEST_CASE("qasm export") {
    Circuit c(3);
    c.push(Gate::cnot(0, 1));
    c.push(Gate::h(2));
    c.push(Gate::s(0));
    c.push(Gate::t(1));
    std::string q = export_qasm(c);
    CHECK(q == "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\n"
               "cx q[1],q[0];\nh q[2];\ns q[0];\nt q[1];\n");
}
