#pragma once

// The mn-dimensional lifted system z(t+1) = Gbar(t) z(t), where z stacks
// alpha_0 x, alpha_1 x, ..., alpha_{m-1} x. Lifted vertex i + p*n
// (i in 1..n, p in 0..m-1) carries alpha_p x_i.
//
// A base arc (j, i) with gain alpha_q lifts to the m arcs
//   j + ((p + q) mod m) n  ->  i + p n,   p = 0..m-1.

#include <complex>
#include <optional>
#include <vector>

#include "gaincons/balance.hpp"
#include "gaincons/graph.hpp"
#include "gaincons/rational.hpp"

namespace gaincons {

inline int lifted_index(Vertex i, int p, int n) { return i + p * n; }

struct GainEntry {
    Rational weight;  // 1/m_i for a neighbor, 0 otherwise
    GainExponent gain;
};

class GainMatrix {
public:
    GainMatrix(int n, GroupOrder order);

    int n() const { return n_; }
    GroupOrder order() const { return order_; }
    /// 1-indexed (row i, column j).
    const GainEntry& at(int i, int j) const { return entries_[index(i, j)]; }
    GainEntry& at(int i, int j) { return entries_[index(i, j)]; }
    std::complex<double> complex_at(int i, int j) const;
    /// Flocking matrix entry |G_ij|.
    Rational flocking_at(int i, int j) const { return at(i, j).weight; }

private:
    std::size_t index(int i, int j) const;

    int n_;
    GroupOrder order_;
    std::vector<GainEntry> entries_;
};

/// G with entries g_ij / m_i. With validate_neighbor_graph a missing identity
/// self-arc is an error; otherwise a vertex without in-neighbors is.
GainMatrix gain_matrix(const GainGraph& g, bool validate_neighbor_graph = true);

class LiftedGraph {
public:
    LiftedGraph(int base_n, GroupOrder order, std::vector<std::pair<Vertex, Vertex>> arcs);

    int base_n() const { return base_n_; }
    GroupOrder order() const { return order_; }
    int vertex_count() const { return base_n_ * order_.value(); }
    /// Sorted, duplicate-free (tail, head) pairs.
    const std::vector<std::pair<Vertex, Vertex>>& arcs() const { return arcs_; }
    bool has_arc(Vertex tail, Vertex head) const;

    friend bool operator==(const LiftedGraph&, const LiftedGraph&) = default;

private:
    int base_n_;
    GroupOrder order_;
    std::vector<std::pair<Vertex, Vertex>> arcs_;
};

LiftedGraph lift_graph(const ArcSet& g);

class LiftedMatrix {
public:
    LiftedMatrix(int base_n, GroupOrder order);

    int base_n() const { return base_n_; }
    GroupOrder order() const { return order_; }
    int size() const { return base_n_ * order_.value(); }
    /// 1-indexed.
    const Rational& at(int r, int c) const { return entries_[index(r, c)]; }
    Rational& at(int r, int c) { return entries_[index(r, c)]; }

    /// n x n block at block-row br, block-column bc (both 0..m-1).
    std::vector<Rational> block(int br, int bc) const;
    bool is_row_stochastic() const;
    bool is_block_circulant() const;
    /// Graph of the matrix: arc c -> r for every nonzero entry (r, c).
    LiftedGraph graph() const;

    friend bool operator==(const LiftedMatrix&, const LiftedMatrix&) = default;

private:
    std::size_t index(int r, int c) const;

    int base_n_;
    GroupOrder order_;
    std::vector<Rational> entries_;
};

LiftedMatrix lift_matrix(const GainGraph& g);

/// Maximal SCCs, each sorted, ordered by smallest member.
std::vector<std::vector<Vertex>> scc_partition(const LiftedGraph& lg);

/// Components C_1..C_m (in that order) expected for a balanced strongly
/// connected graph with clustering vector b: vertex i + p n lies in
/// C_{((p + b(i)) mod m) + 1}. Each set is sorted.
std::vector<std::vector<Vertex>> predict_components(const ClusteringVector& b);

enum class StructureKind { Balanced, Unbalanced, Other };

struct ComponentReport {
    StructureKind kind;
    std::vector<std::vector<Vertex>> sccs;
    std::size_t component_count = 0;
    std::size_t min_size = 0;
    std::size_t max_size = 0;
    std::optional<ClusteringVector> b;
    /// Balanced: predicted components (C_1..C_m).
    std::vector<std::vector<Vertex>> predicted;
    /// Balanced: SCCs equal the prediction as a set partition.
    bool matches_prediction = false;
    /// Unbalanced: count <= floor(m/2) and min size >= 2n.
    bool within_unbalanced_bounds = false;
    bool has_singleton = false;

    /// True when the report contradicts the balanced/unbalanced predictions.
    bool is_counterexample() const;
};

/// Throws std::invalid_argument unless g is strongly connected.
ComponentReport classify(const GainGraph& g);

}  // namespace gaincons
