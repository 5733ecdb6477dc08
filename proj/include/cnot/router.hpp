#pragma once

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cnot/circuit.hpp"
#include "cnot/gf2.hpp"

namespace cnot {

// Directed device-connectivity graph. An arc (control j -> target i) means
// X_ij is natively executable, with an error probability attached.
class CouplingGraph {
public:
    explicit CouplingGraph(std::size_t n) : n_(n), h_error_(n, 0.0) {}

    std::size_t n() const { return n_; }

    void add_arc(std::size_t control, std::size_t target, double error = 0.0) {
        if (control >= n_ || target >= n_) throw std::invalid_argument("CouplingGraph: index out of range");
        if (control == target) throw std::invalid_argument("CouplingGraph: self-arc");
        if (error < 0.0 || error >= 1.0) throw std::invalid_argument("CouplingGraph: error outside [0,1)");
        arcs_.push_back({control, target, error});
    }
    void set_h_error(std::size_t q, double e) {
        if (e < 0.0 || e >= 1.0) throw std::invalid_argument("CouplingGraph: error outside [0,1)");
        h_error_.at(q) = e;
    }
    double h_error(std::size_t q) const { return h_error_.at(q); }

    // native arc control -> target
    std::optional<double> arc_error(std::size_t control, std::size_t target) const {
        for (const auto& a : arcs_)
            if (a.control == control && a.target == target) return a.error;
        return std::nullopt;
    }
    bool edge_exists(std::size_t u, std::size_t v) const {
        return arc_error(u, v).has_value() || arc_error(v, u).has_value();
    }
    std::vector<std::size_t> neighbours(std::size_t u) const {
        std::vector<bool> seen(n_, false);
        for (const auto& a : arcs_) {
            if (a.control == u) seen[a.target] = true;
            if (a.target == u) seen[a.control] = true;
        }
        std::vector<std::size_t> out;
        for (std::size_t v = 0; v < n_; ++v)
            if (seen[v]) out.push_back(v);
        return out;
    }

    // Cost of one emitted CNOT with target t and control c: the native arc
    // error if present, otherwise the reversed arc plus four Hadamard wraps.
    double gate_cost(std::size_t t, std::size_t c) const {
        if (auto e = arc_error(c, t)) return -std::log1p(-*e);
        auto rev = arc_error(t, c);
        if (!rev) throw std::invalid_argument("CouplingGraph: no orientation of edge present");
        return -std::log1p(-*rev) + 2.0 * (-std::log1p(-h_error_[t])) + 2.0 * (-std::log1p(-h_error_[c]));
    }

    static CouplingGraph from_json(const std::string& text) {
        auto j = nlohmann::json::parse(text);
        CouplingGraph g(j.at("n").get<std::size_t>());
        for (const auto& a : j.at("arcs")) {
            g.add_arc(a.at("control").get<std::size_t>(), a.at("target").get<std::size_t>(),
                      a.value("error", 0.0));
        }
        if (j.contains("h_error")) {
            auto he = j.at("h_error").get<std::vector<double>>();
            if (he.size() != g.n()) throw std::invalid_argument("CouplingGraph: h_error length mismatch");
            for (std::size_t q = 0; q < he.size(); ++q) g.set_h_error(q, he[q]);
        }
        return g;
    }
    static CouplingGraph from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("CouplingGraph: cannot read " + path);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        return from_json(text);
    }

private:
    struct Arc {
        std::size_t control, target;
        double error;
    };
    std::size_t n_;
    std::vector<Arc> arcs_;
    std::vector<double> h_error_;
};

// Path expansion: for distinct vertices i1..ip the gate list
//   (X_{i1 i2} X_{i2 i3} ... X_{i_{p-1} i_p} X_{i_{p-2} i_{p-1}} ... X_{i2 i3})^2
// realizes X_{i1 ip}; 4p-8 gates for p >= 3, a single gate for p = 2.
inline std::vector<Gate> path_expand(const std::vector<std::size_t>& path) {
    if (path.size() < 2) throw std::invalid_argument("path_expand: need at least two vertices");
    for (std::size_t a = 0; a < path.size(); ++a)
        for (std::size_t b = a + 1; b < path.size(); ++b)
            if (path[a] == path[b]) throw std::invalid_argument("path_expand: repeated vertex");
    if (path.size() == 2) return {Gate::cnot(path[0], path[1])};
    std::vector<Gate> half;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) half.push_back(Gate::cnot(path[k], path[k + 1]));
    for (std::size_t k = path.size() - 2; k-- > 1;) half.push_back(Gate::cnot(path[k], path[k + 1]));
    std::vector<Gate> out = half;
    out.insert(out.end(), half.begin(), half.end());
    return out;
}

namespace detail {

// Number of CNOTs the expansion places on edge k of a p-vertex path.
inline int edge_multiplicity(std::size_t k, std::size_t p) {
    if (p == 2) return 1;
    return (k == 0 || k == p - 2) ? 2 : 4;
}

// Minimal-cost path from i to j. Unweighted: fewest emitted CNOTs.
// Weighted: minimal total -log(1-e) over emitted gates, counting the double
// traversal of interior edges and Hadamard wraps for reversed arcs; ties
// fall back to the gate count. Among optimal paths the highest-numbered
// next hop wins at every step.
inline std::vector<std::size_t> best_path(const CouplingGraph& g, std::size_t i, std::size_t j,
                                          bool weighted) {
    const std::size_t n = g.n();
    auto edge_w = [&](std::size_t from, std::size_t to) {
        // cost of ONE CNOT with target `from`, control `to` (the expansion
        // emits X_{path[k], path[k+1]})
        return weighted ? g.gate_cost(from, to) : 1.0;
    };
    // cost[v] = min over paths v -> j of the emitted-gate cost, assuming v
    // is an interior vertex of the full route (its incident edge counts x4,
    // except the final edge into j which counts x2).
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> cost(n, inf);
    std::vector<int> hops(n, 1 << 30);
    using Item = std::pair<std::pair<double, int>, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (auto u : g.neighbours(j)) {
        double c = 2.0 * edge_w(u, j);
        if (c < cost[u]) {
            cost[u] = c;
            hops[u] = 1;
            pq.push({{c, 1}, u});
        }
    }
    while (!pq.empty()) {
        auto [key, u] = pq.top();
        pq.pop();
        if (key.first > cost[u] || (key.first == cost[u] && key.second > hops[u])) continue;
        for (auto v : g.neighbours(u)) {
            double c = cost[u] + 4.0 * edge_w(v, u);
            int h = hops[u] + 1;
            if (c < cost[v] || (c == cost[v] && h < hops[v])) {
                cost[v] = c;
                hops[v] = h;
                pq.push({{c, h}, v});
            }
        }
    }
    // total for a route with first hop v: 2 w(i,v) + cost[v] (v interior),
    // or the direct gate when i and j are adjacent.
    double direct = g.edge_exists(i, j) ? edge_w(i, j) : inf;
    double best = direct;
    int best_hops = g.edge_exists(i, j) ? 1 : (1 << 30);
    std::size_t first = n;
    for (auto v : g.neighbours(i)) {
        if (v == j || cost[v] == inf) continue;
        double c = 2.0 * edge_w(i, v) + cost[v];
        int h = 1 + hops[v];
        if (c < best || (c == best && h < best_hops) ||
            (c == best && h == best_hops && (first == n || v > first))) {
            best = c;
            best_hops = h;
            first = v;
        }
    }
    if (best == inf) throw std::invalid_argument("route: endpoints not connected");
    if (first == n) return {i, j};
    // walk the cost field, preferring the highest-numbered successor
    std::vector<std::size_t> path{i, first};
    std::size_t cur = first;
    while (true) {
        // finishing edge?
        bool can_finish = g.edge_exists(cur, j) && cost[cur] == 2.0 * edge_w(cur, j) && hops[cur] == 1;
        if (can_finish) break;
        std::size_t next = n;
        for (auto v : g.neighbours(cur)) {
            if (v == j || cost[v] == inf) continue;
            if (cost[cur] == 4.0 * edge_w(v, cur) + cost[v] && hops[cur] == hops[v] + 1) {
                if (next == n || v > next) next = v;
            }
        }
        if (next == n) throw std::logic_error("route: path reconstruction failed");
        path.push_back(next);
        cur = next;
    }
    path.push_back(j);
    return path;
}

}  // namespace detail

// One routed CNOT: shortest-path expansion plus Hadamard wraps whenever an
// emitted gate's arc direction is missing but the reverse is native.
inline Circuit route_gate(const CouplingGraph& g, std::size_t target, std::size_t control,
                          bool weighted = false) {
    if (target >= g.n() || control >= g.n() || target == control)
        throw std::invalid_argument("route_gate: bad gate");
    auto path = detail::best_path(g, target, control, weighted);
    Circuit out(g.n());
    for (const auto& gate : path_expand(path)) {
        if (g.arc_error(gate.control, gate.target)) {
            out.push(gate);
        } else {
            out.push(Gate::h(gate.target));
            out.push(Gate::h(gate.control));
            out.push(Gate::cnot(gate.control, gate.target));
            out.push(Gate::h(gate.target));
            out.push(Gate::h(gate.control));
        }
    }
    return out;
}

struct RouteReport {
    std::size_t cnot_count = 0;
    std::size_t h_count = 0;
    double expected_success = 1.0;  // prod (1 - e) over emitted gates
    bool verified = false;          // matrix check after reverse-substitution
};

// Routes every CNOT of the circuit independently and verifies the result:
// each H-wrapped block is read back as the reversed CNOT and the total
// matrix compared with the input's.
inline std::pair<Circuit, RouteReport> route_circuit(const CouplingGraph& g, const Circuit& c,
                                                     bool weighted = false) {
    require_cnot_only(c, "route_circuit");
    if (c.n > g.n()) throw std::invalid_argument("route_circuit: circuit wider than device");
    Circuit out(g.n());
    RouteReport rep;
    for (const auto& gate : c.gates) {
        Circuit frag = route_gate(g, gate.target, gate.control, weighted);
        for (const auto& fg : frag.gates) out.push(fg);
    }
    Circuit cnot_view(g.n());
    for (std::size_t k = 0; k < out.gates.size(); ++k) {
        const auto& gate = out.gates[k];
        if (gate.is_cnot()) {
            ++rep.cnot_count;
            if (auto e = g.arc_error(gate.control, gate.target)) rep.expected_success *= 1.0 - *e;
            // wrapped gate: the native arc is the reverse one
            bool wrapped = k >= 2 && out.gates[k - 1].kind == Gate::Kind::H &&
                           out.gates[k - 2].kind == Gate::Kind::H;
            if (wrapped && !g.arc_error(gate.control, gate.target)) {
                if (auto e = g.arc_error(gate.target, gate.control)) rep.expected_success *= 1.0 - *e;
                cnot_view.push(Gate::cnot(gate.control, gate.target));
            } else {
                cnot_view.push(gate);
            }
        } else {
            ++rep.h_count;
            rep.expected_success *= 1.0 - g.h_error(gate.target);
        }
    }
    BitMatrix want = BitMatrix::identity(g.n());
    for (const auto& gate : c.gates) want.xor_row(gate.target, gate.control);
    rep.verified = matrix_of(cnot_view) == want;
    return {std::move(out), rep};
}

}  // namespace cnot
