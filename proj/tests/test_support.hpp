#pragma once

// Shared fixtures and random instance generators for the test suites.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "gaincons/balance.hpp"
#include "gaincons/graph.hpp"
#include "gaincons/sequence.hpp"

namespace gaincons::testing {

inline Arc arc(Vertex tail, Vertex head, int e, int m) { return {tail, head, GainExponent(e, GroupOrder(m))}; }

inline std::vector<Arc> self_arcs(int n, int m) {
    std::vector<Arc> out;
    for (Vertex v = 1; v <= n; ++v) out.push_back(arc(v, v, 0, m));
    return out;
}

/// The three-agent example: arcs (3,1,1), (1,2,alpha_1), (2,3,alpha_2), m = 3.
inline GainGraph example_graph(bool with_self_arcs = true) {
    std::vector<Arc> arcs{arc(3, 1, 0, 3), arc(1, 2, 1, 3), arc(2, 3, 2, 3)};
    if (with_self_arcs) {
        auto s = self_arcs(3, 3);
        arcs.insert(arcs.end(), s.begin(), s.end());
    }
    return GainGraph(3, GroupOrder(3), arcs, with_self_arcs);
}

inline GainGraph two_cycle(int e12, int e21, int m, bool with_self_arcs = true) {
    std::vector<Arc> arcs{arc(1, 2, e12, m), arc(2, 1, e21, m)};
    if (with_self_arcs) {
        auto s = self_arcs(2, m);
        arcs.insert(arcs.end(), s.begin(), s.end());
    }
    return GainGraph(2, GroupOrder(m), arcs, with_self_arcs);
}

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline ClusteringVector random_clustering(Rng& rng, int n, int m) {
    std::vector<int> e(n, 0);
    for (int i = 1; i < n; ++i) e[i] = uniform_int(rng, 0, m - 1);
    return ClusteringVector(std::move(e), GroupOrder(m));
}

/// Ordered pairs (tail, head) selected with probability `density`; a random
/// Hamiltonian cycle is added when `strongly_connected` is requested.
inline std::vector<std::pair<Vertex, Vertex>> random_pairs(Rng& rng, int n, double density,
                                                           bool strongly_connected, bool loops) {
    std::bernoulli_distribution keep(density);
    std::vector<std::vector<bool>> chosen(n + 1, std::vector<bool>(n + 1, false));
    for (Vertex t = 1; t <= n; ++t) {
        for (Vertex h = 1; h <= n; ++h) {
            if (t == h && !loops) continue;
            chosen[t][h] = keep(rng);
        }
    }
    if (strongly_connected && n > 1) {
        std::vector<Vertex> order(n);
        std::iota(order.begin(), order.end(), 1);
        std::shuffle(order.begin(), order.end(), rng);
        for (int k = 0; k < n; ++k) chosen[order[k]][order[(k + 1) % n]] = true;
    }
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex t = 1; t <= n; ++t) {
        for (Vertex h = 1; h <= n; ++h) {
            if (chosen[t][h]) out.emplace_back(t, h);
        }
    }
    return out;
}

/// Arbitrary gains; self-arcs may carry non-identity gains.
inline GainGraph random_gain_graph(Rng& rng, int n, int m, double density) {
    std::vector<Arc> arcs;
    for (auto [t, h] : random_pairs(rng, n, density, false, true)) arcs.push_back(arc(t, h, uniform_int(rng, 0, m - 1), m));
    return GainGraph(n, GroupOrder(m), arcs);
}

/// Gains b(head) - b(tail) on every arc, identity self-arcs everywhere.
inline GainGraph balanced_neighbor_graph(Rng& rng, const ClusteringVector& b, double density,
                                         bool strongly_connected) {
    const int n = b.size();
    const int m = b.order().value();
    std::vector<Arc> arcs;
    for (auto [t, h] : random_pairs(rng, n, density, strongly_connected, false)) {
        arcs.push_back(arc(t, h, ((b.exponents()[h - 1] - b.exponents()[t - 1]) % m + m) % m, m));
    }
    auto s = self_arcs(n, m);
    arcs.insert(arcs.end(), s.begin(), s.end());
    return GainGraph(n, GroupOrder(m), arcs, true);
}

/// Random gains on non-loop arcs, identity self-arcs.
inline GainGraph random_neighbor_graph(Rng& rng, int n, int m, double density, bool strongly_connected) {
    std::vector<Arc> arcs;
    for (auto [t, h] : random_pairs(rng, n, density, strongly_connected, false)) {
        arcs.push_back(arc(t, h, uniform_int(rng, 0, m - 1), m));
    }
    auto s = self_arcs(n, m);
    arcs.insert(arcs.end(), s.begin(), s.end());
    return GainGraph(n, GroupOrder(m), arcs, true);
}

/// Strongly connected, structurally unbalanced neighbor graph (rejection sampling).
inline GainGraph unbalanced_strongly_connected(Rng& rng, int n, int m, double density) {
    for (;;) {
        GainGraph g = random_neighbor_graph(rng, n, m, density, true);
        if (!is_balanced(check_balance(g))) return g;
    }
}

inline double uniform_real(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Periodic sequence whose period union is strongly connected and balanced w.r.t. b.
inline GraphSequence balanced_periodic_sequence(Rng& rng, const ClusteringVector& b, int period) {
    for (;;) {
        std::vector<GainGraph> graphs;
        for (int k = 0; k < period; ++k) {
            graphs.push_back(balanced_neighbor_graph(rng, b, uniform_real(rng, 0.15, 0.6), false));
        }
        GraphSequence seq = GraphSequence::periodic(graphs);
        if (is_strongly_connected(window_union(seq, {0, static_cast<std::size_t>(period)}, 0))) return seq;
    }
}

/// Periodic sequence whose period union is strongly connected and unbalanced.
inline GraphSequence unbalanced_periodic_sequence(Rng& rng, int n, int m, int period) {
    for (;;) {
        std::vector<GainGraph> graphs;
        for (int k = 0; k < period; ++k) {
            graphs.push_back(random_neighbor_graph(rng, n, m, uniform_real(rng, 0.15, 0.6), false));
        }
        GraphSequence seq = GraphSequence::periodic(graphs);
        const auto u = window_union(seq, {0, static_cast<std::size_t>(period)}, 0);
        if (is_strongly_connected(u) && !is_balanced(check_balance(u))) return seq;
    }
}

}  // namespace gaincons::testing
