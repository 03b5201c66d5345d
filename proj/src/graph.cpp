#include "gaincons/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gaincons {

bool arc_less(const Arc& a, const Arc& b) {
    if (a.tail != b.tail) return a.tail < b.tail;
    if (a.head != b.head) return a.head < b.head;
    return a.gain.value() < b.gain.value();
}

ArcSet::ArcSet(int n, GroupOrder order, std::vector<Arc> arcs)
    : n_(n), order_(order), arcs_(std::move(arcs)) {
    if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
    for (const Arc& a : arcs_) {
        if (a.tail < 1 || a.tail > n || a.head < 1 || a.head > n) {
            throw std::invalid_argument("arc (" + std::to_string(a.tail) + ", " +
                                        std::to_string(a.head) + ") outside 1.." +
                                        std::to_string(n));
        }
        if (!(a.gain.order() == order)) {
            throw std::invalid_argument("arc gain belongs to a different group order");
        }
    }
    std::sort(arcs_.begin(), arcs_.end(), arc_less);
}

GainGraph::GainGraph(int n, GroupOrder order, std::vector<Arc> arcs,
                     bool validate_neighbor_graph)
    : ArcSet(n, order, std::move(arcs)) {
    for (std::size_t k = 1; k < arcs_.size(); ++k) {
        if (arcs_[k].tail == arcs_[k - 1].tail && arcs_[k].head == arcs_[k - 1].head) {
            throw std::invalid_argument("duplicate arc (" + std::to_string(arcs_[k].tail) +
                                        ", " + std::to_string(arcs_[k].head) + ")");
        }
    }
    if (validate_neighbor_graph && !is_neighbor_graph()) {
        throw std::invalid_argument(
            "neighbor graph requires a self-arc with gain exponent 0 at every vertex");
    }
}

bool GainGraph::is_neighbor_graph() const {
    for (Vertex v = 1; v <= n_; ++v) {
        const Arc* self = find(v, v);
        if (self == nullptr || !self->gain.is_identity()) return false;
    }
    return true;
}

const Arc* GainGraph::find(Vertex tail, Vertex head) const {
    auto it = std::lower_bound(arcs_.begin(), arcs_.end(), std::pair{tail, head},
                               [](const Arc& a, const std::pair<Vertex, Vertex>& key) {
                                   return std::pair{a.tail, a.head} < key;
                               });
    if (it == arcs_.end() || it->tail != tail || it->head != head) return nullptr;
    return &*it;
}

GainMultigraph::GainMultigraph(int n, GroupOrder order, std::vector<Arc> arcs)
    : ArcSet(n, order, std::move(arcs)) {
    arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
}

GainMultigraph::GainMultigraph(const ArcSet& g)
    : GainMultigraph(g.n(), g.order(), std::vector<Arc>(g.arcs().begin(), g.arcs().end())) {}

bool SemiWalk::is_walk() const {
    return std::all_of(steps.begin(), steps.end(),
                       [](const Step& s) { return s.direction == Direction::Forward; });
}

namespace {

const Arc& checked_arc(const ArcSet& g, const Step& s) {
    if (s.arc >= g.arc_count()) {
        throw std::invalid_argument("semi-walk references nonexistent arc " +
                                    std::to_string(s.arc));
    }
    return g.arc(s.arc);
}

// Returns the vertex reached after taking step s from `at`.
Vertex advance(const ArcSet& g, const Step& s, Vertex at) {
    const Arc& a = checked_arc(g, s);
    const Vertex from = s.direction == Direction::Forward ? a.tail : a.head;
    if (from != at) {
        throw std::invalid_argument("semi-walk step on arc " + std::to_string(s.arc) +
                                    " does not start at vertex " + std::to_string(at));
    }
    return s.direction == Direction::Forward ? a.head : a.tail;
}

}  // namespace

Vertex end_vertex(const ArcSet& g, const SemiWalk& w) {
    if (w.start < 1 || w.start > g.n()) throw std::invalid_argument("semi-walk start out of range");
    Vertex at = w.start;
    for (const Step& s : w.steps) at = advance(g, s, at);
    return at;
}

SemiWalk reversed(const ArcSet& g, const SemiWalk& w) {
    SemiWalk r{end_vertex(g, w), {}};
    r.steps.reserve(w.steps.size());
    for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it) {
        r.steps.push_back({it->arc, it->direction == Direction::Forward ? Direction::Backward
                                                                         : Direction::Forward});
    }
    return r;
}

SemiWalk concat(const SemiWalk& first, const SemiWalk& second) {
    SemiWalk out = first;
    out.steps.insert(out.steps.end(), second.steps.begin(), second.steps.end());
    return out;
}

GainExponent semiwalk_gain(const ArcSet& g, const SemiWalk& w) {
    if (w.start < 1 || w.start > g.n()) throw std::invalid_argument("semi-walk start out of range");
    GainExponent total = GainExponent::identity(g.order());
    Vertex at = w.start;
    for (const Step& s : w.steps) {
        at = advance(g, s, at);
        const GainExponent gain = g.arc(s.arc).gain;
        total = exp_mul(total, s.direction == Direction::Forward ? gain : exp_inv(gain));
    }
    return total;
}

GainExponent walk_gain(const ArcSet& g, const SemiWalk& w) {
    if (!w.is_walk()) throw std::invalid_argument("walk_gain: walk contains a backward step");
    return semiwalk_gain(g, w);
}

GainMultigraph graph_union(std::span<const ArcSet* const> graphs) {
    if (graphs.empty()) throw std::invalid_argument("union of an empty list");
    const int n = graphs.front()->n();
    const GroupOrder order = graphs.front()->order();
    std::vector<Arc> arcs;
    for (const ArcSet* g : graphs) {
        if (g->n() != n || !(g->order() == order)) {
            throw std::invalid_argument("union: graphs differ in vertex count or group order");
        }
        arcs.insert(arcs.end(), g->arcs().begin(), g->arcs().end());
    }
    return GainMultigraph(n, order, std::move(arcs));
}

GainMultigraph graph_union(const ArcSet& a, const ArcSet& b) {
    const ArcSet* both[] = {&a, &b};
    return graph_union(both);
}

std::vector<std::vector<Vertex>> strongly_connected_components(
    int vertex_count, std::span<const std::pair<Vertex, Vertex>> arcs) {
    std::vector<std::vector<int>> out_adj(vertex_count + 1);
    for (const auto& [tail, head] : arcs) out_adj[tail].push_back(head);

    // Iterative Tarjan.
    std::vector<int> index(vertex_count + 1, -1), low(vertex_count + 1, 0);
    std::vector<bool> on_stack(vertex_count + 1, false);
    std::vector<int> stack;
    std::vector<std::pair<int, std::size_t>> call;  // (vertex, next edge)
    std::vector<std::vector<Vertex>> components;
    int counter = 0;

    for (int root = 1; root <= vertex_count; ++root) {
        if (index[root] != -1) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, next] = call.back();
            if (next < out_adj[v].size()) {
                const int w = out_adj[v][next++];
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::vector<Vertex> comp;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                components.push_back(std::move(comp));
            }
            const int finished = v;
            call.pop_back();
            if (!call.empty()) {
                const int parent = call.back().first;
                low[parent] = std::min(low[parent], low[finished]);
            }
        }
    }
    std::sort(components.begin(), components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return components;
}

namespace {

std::vector<std::pair<Vertex, Vertex>> plain_arcs(const ArcSet& g) {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(g.arc_count());
    for (const Arc& a : g.arcs()) out.emplace_back(a.tail, a.head);
    return out;
}

}  // namespace

std::vector<bool> reachable_from(int vertex_count,
                                 std::span<const std::pair<Vertex, Vertex>> arcs,
                                 Vertex source) {
    std::vector<std::vector<int>> adj(vertex_count + 1);
    for (const auto& [tail, head] : arcs) adj[tail].push_back(head);
    std::vector<bool> seen(vertex_count + 1, false);
    std::vector<int> todo{source};
    seen[source] = true;
    while (!todo.empty()) {
        const int v = todo.back();
        todo.pop_back();
        for (int w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                todo.push_back(w);
            }
        }
    }
    return seen;
}

bool is_strongly_connected(const ArcSet& g) {
    const auto arcs = plain_arcs(g);
    return strongly_connected_components(g.n(), arcs).size() == 1;
}

std::vector<std::vector<Vertex>> weak_components(const ArcSet& g) {
    std::vector<int> parent(g.n() + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const Arc& a : g.arcs()) {
        const int ra = find(a.tail), rb = find(a.head);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
    std::vector<std::vector<Vertex>> by_root(g.n() + 1);
    for (Vertex v = 1; v <= g.n(); ++v) by_root[find(v)].push_back(v);
    std::vector<std::vector<Vertex>> out;
    for (auto& comp : by_root) {
        if (!comp.empty()) out.push_back(std::move(comp));
    }
    return out;
}

}  // namespace gaincons
