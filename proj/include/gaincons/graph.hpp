#pragma once

// Gain graphs on vertices 1..n with arcs (tail -> head) carrying a gain
// exponent. An arc (j, i) means j is a neighbor of i.

#include <cstddef>
#include <span>
#include <vector>

#include "gaincons/group.hpp"

namespace gaincons {

using Vertex = int;

struct Arc {
    Vertex tail;
    Vertex head;
    GainExponent gain;

    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Orders arcs by (tail, head, gain exponent).
bool arc_less(const Arc& a, const Arc& b);

/// Vertex count, group order and arc list shared by graphs and multigraphs.
class ArcSet {
public:
    int n() const { return n_; }
    GroupOrder order() const { return order_; }
    std::span<const Arc> arcs() const { return arcs_; }
    const Arc& arc(std::size_t index) const { return arcs_.at(index); }
    std::size_t arc_count() const { return arcs_.size(); }

    friend bool operator==(const ArcSet&, const ArcSet&) = default;

protected:
    ArcSet(int n, GroupOrder order, std::vector<Arc> arcs);

    int n_;
    GroupOrder order_;
    std::vector<Arc> arcs_;
};

/// At most one arc per ordered vertex pair.
class GainGraph : public ArcSet {
public:
    /// Throws std::invalid_argument on bad labels, foreign gains or duplicate
    /// (tail, head) pairs. With validate_neighbor_graph every vertex must carry
    /// a self-arc of identity gain.
    GainGraph(int n, GroupOrder order, std::vector<Arc> arcs,
              bool validate_neighbor_graph = false);

    bool is_neighbor_graph() const;
    const Arc* find(Vertex tail, Vertex head) const;
};

/// Parallel arcs allowed; identical (tail, head, gain) triples are collapsed.
class GainMultigraph : public ArcSet {
public:
    GainMultigraph(int n, GroupOrder order, std::vector<Arc> arcs);
    explicit GainMultigraph(const ArcSet& g);
};

enum class Direction { Forward, Backward };

struct Step {
    std::size_t arc;  // index into ArcSet::arcs()
    Direction direction;

    friend bool operator==(const Step&, const Step&) = default;
};

/// A semi-walk identified by arcs, so parallel arcs stay distinguishable.
/// A walk is a semi-walk whose steps are all Forward.
struct SemiWalk {
    Vertex start;
    std::vector<Step> steps;

    bool is_walk() const;
};

/// Last vertex of the semi-walk; throws if a step is not vertex-consistent.
Vertex end_vertex(const ArcSet& g, const SemiWalk& w);
SemiWalk reversed(const ArcSet& g, const SemiWalk& w);
SemiWalk concat(const SemiWalk& first, const SemiWalk& second);

GainExponent walk_gain(const ArcSet& g, const SemiWalk& w);
GainExponent semiwalk_gain(const ArcSet& g, const SemiWalk& w);

/// Multiset union of arcs; every input must share n and m.
GainMultigraph graph_union(std::span<const ArcSet* const> graphs);
GainMultigraph graph_union(const ArcSet& a, const ArcSet& b);

/// Strongly connected components of a plain digraph on vertices 1..vertex_count.
/// Each component is sorted; components are ordered by smallest member.
std::vector<std::vector<Vertex>> strongly_connected_components(
    int vertex_count, std::span<const std::pair<Vertex, Vertex>> arcs);

bool is_strongly_connected(const ArcSet& g);
std::vector<std::vector<Vertex>> weak_components(const ArcSet& g);

/// Vertices reachable from source along arc directions (source included).
std::vector<bool> reachable_from(int vertex_count,
                                 std::span<const std::pair<Vertex, Vertex>> arcs,
                                 Vertex source);

}  // namespace gaincons
