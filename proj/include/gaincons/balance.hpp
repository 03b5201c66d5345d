#pragma once

// Structural m-balance of gain graphs.
//
// A gain graph is structurally m-balanced iff every semi-cycle has identity
// gain, iff there is a clustering vector b with b(1) = 1 such that every arc
// (j, i) carries gain b(i) / b(j). Exponent form: gain == b(i) - b(j) mod m.

#include <optional>
#include <variant>
#include <vector>

#include "gaincons/graph.hpp"

namespace gaincons {

class ClusteringVector {
public:
    /// exponents[0] is vertex 1 and must be 0.
    ClusteringVector(std::vector<int> exponents, GroupOrder order);

    int size() const { return static_cast<int>(exponents_.size()); }
    GroupOrder order() const { return order_; }
    /// Entry for vertex v (1-indexed).
    GainExponent at(Vertex v) const;
    const std::vector<int>& exponents() const { return exponents_; }

    /// V_1..V_m: partition[p] holds the vertices whose entry is alpha_p.
    std::vector<std::vector<Vertex>> partition() const;

    friend bool operator==(const ClusteringVector&, const ClusteringVector&) = default;

private:
    std::vector<int> exponents_;
    GroupOrder order_;
};

struct Balanced {
    ClusteringVector b;
};

/// Closed semi-walk whose gain is not the identity.
struct Unbalanced {
    SemiWalk witness;
    GainExponent gain;
};

using BalanceVerdict = std::variant<Balanced, Unbalanced>;

inline bool is_balanced(const BalanceVerdict& v) { return std::holds_alternative<Balanced>(v); }

/// Spanning semi-forest potentials with arc-level consistency. O(n + arcs).
/// Each weak component's smallest vertex is anchored at exponent 0.
BalanceVerdict check_balance(const ArcSet& g);

/// Throws std::invalid_argument when b.size() != g.n() or orders differ.
bool is_balanced_wrt(const ArcSet& g, const ClusteringVector& b);

/// Exhaustive semi-cycle enumeration. Test oracle; requires n <= 8.
BalanceVerdict oracle_check_balance(const ArcSet& g);

/// Signed-graph (m = 2) bipartition check via parity union-find.
BalanceVerdict altafini_balance(const ArcSet& g);

/// True iff every directed cycle (self-arcs included) has identity gain.
/// Agrees with the balance verdict on strongly connected graphs only. n <= 8.
bool directed_cycles_balanced(const ArcSet& g);

inline constexpr int kOracleMaxVertices = 8;

}  // namespace gaincons
