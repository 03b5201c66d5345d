#include "gaincons/balance.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>

namespace gaincons {

ClusteringVector::ClusteringVector(std::vector<int> exponents, GroupOrder order)
    : exponents_(std::move(exponents)), order_(order) {
    if (exponents_.empty()) throw std::invalid_argument("clustering vector must be non-empty");
    if (exponents_.front() != 0) {
        throw std::invalid_argument("clustering vector must have b(1) = 1 (exponent 0)");
    }
    for (int e : exponents_) {
        if (e < 0 || e >= order.value()) {
            throw std::invalid_argument("clustering vector entry out of range [0, m)");
        }
    }
}

GainExponent ClusteringVector::at(Vertex v) const {
    return GainExponent(exponents_.at(static_cast<std::size_t>(v - 1)), order_);
}

std::vector<std::vector<Vertex>> ClusteringVector::partition() const {
    std::vector<std::vector<Vertex>> parts(order_.value());
    for (int i = 0; i < size(); ++i) parts[exponents_[i]].push_back(i + 1);
    return parts;
}

namespace {

// Steps leaving each vertex: forward along arcs it tails, backward along arcs it heads.
std::vector<std::vector<Step>> incidence(const ArcSet& g) {
    std::vector<std::vector<Step>> out(g.n() + 1);
    for (std::size_t k = 0; k < g.arc_count(); ++k) {
        const Arc& a = g.arc(k);
        out[a.tail].push_back({k, Direction::Forward});
        if (a.head != a.tail) out[a.head].push_back({k, Direction::Backward});
    }
    return out;
}

Vertex step_target(const ArcSet& g, const Step& s) {
    const Arc& a = g.arc(s.arc);
    return s.direction == Direction::Forward ? a.head : a.tail;
}

int step_gain(const ArcSet& g, const Step& s) {
    const Arc& a = g.arc(s.arc);
    const int m = g.order().value();
    return s.direction == Direction::Forward ? a.gain.value() : (m - a.gain.value()) % m;
}

Step flipped(const Step& s) {
    return {s.arc, s.direction == Direction::Forward ? Direction::Backward : Direction::Forward};
}

// Semi-path from `from` to `to` inside a rooted forest given by parent steps.
std::vector<Step> forest_path(const std::vector<std::optional<Step>>& parent_step,
                              const std::vector<int>& depth, const ArcSet& g, Vertex from,
                              Vertex to) {
    auto parent_of = [&](Vertex v) {
        const Step& s = *parent_step[v];
        const Arc& a = g.arc(s.arc);
        return s.direction == Direction::Forward ? a.tail : a.head;
    };
    std::vector<Step> up, down;
    Vertex a = from, b = to;
    while (depth[a] > depth[b]) {
        up.push_back(flipped(*parent_step[a]));
        a = parent_of(a);
    }
    while (depth[b] > depth[a]) {
        down.push_back(*parent_step[b]);
        b = parent_of(b);
    }
    while (a != b) {
        up.push_back(flipped(*parent_step[a]));
        a = parent_of(a);
        down.push_back(*parent_step[b]);
        b = parent_of(b);
    }
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
}

}  // namespace

BalanceVerdict check_balance(const ArcSet& g) {
    const int n = g.n();
    const int m = g.order().value();
    const auto inc = incidence(g);

    std::vector<int> theta(n + 1, -1), depth(n + 1, 0);
    std::vector<std::optional<Step>> parent_step(n + 1);
    for (Vertex root = 1; root <= n; ++root) {
        if (theta[root] != -1) continue;
        theta[root] = 0;
        std::deque<Vertex> queue{root};
        while (!queue.empty()) {
            const Vertex v = queue.front();
            queue.pop_front();
            for (const Step& s : inc[v]) {
                const Vertex w = step_target(g, s);
                if (theta[w] != -1) continue;
                theta[w] = (theta[v] + step_gain(g, s)) % m;
                depth[w] = depth[v] + 1;
                parent_step[w] = s;
                queue.push_back(w);
            }
        }
    }

    for (std::size_t k = 0; k < g.arc_count(); ++k) {
        const Arc& a = g.arc(k);
        const int expected = ((theta[a.head] - theta[a.tail]) % m + m) % m;
        if (expected == a.gain.value()) continue;
        SemiWalk witness{a.tail, forest_path(parent_step, depth, g, a.tail, a.head)};
        witness.steps.push_back({k, Direction::Backward});
        return Unbalanced{std::move(witness),
                          GainExponent::reduce(expected - a.gain.value(), g.order())};
    }
    return Balanced{ClusteringVector(std::vector<int>(theta.begin() + 1, theta.end()), g.order())};
}

bool is_balanced_wrt(const ArcSet& g, const ClusteringVector& b) {
    if (b.size() != g.n()) throw std::invalid_argument("clustering vector length != n");
    if (!(b.order() == g.order())) throw std::invalid_argument("clustering vector group order mismatch");
    const int m = g.order().value();
    return std::all_of(g.arcs().begin(), g.arcs().end(), [&](const Arc& a) {
        const int diff = b.exponents()[a.head - 1] - b.exponents()[a.tail - 1];
        return ((diff % m) + m) % m == a.gain.value();
    });
}

BalanceVerdict oracle_check_balance(const ArcSet& g) {
    const int n = g.n();
    if (n > kOracleMaxVertices) throw std::invalid_argument("oracle_check_balance: graph too large");
    const int m = g.order().value();
    const auto inc = incidence(g);

    // Every semi-cycle is enumerated once per orientation from its smallest vertex.
    std::vector<bool> on_path(n + 1, false);
    std::vector<bool> arc_used(g.arc_count(), false);
    std::vector<Step> path;
    std::optional<Unbalanced> found;

    std::function<void(Vertex, Vertex, int)> extend = [&](Vertex start, Vertex v, int gain) {
        for (const Step& s : inc[v]) {
            if (found) return;
            if (arc_used[s.arc]) continue;
            const Vertex w = step_target(g, s);
            const int next = (gain + step_gain(g, s)) % m;
            if (w == start) {
                if (next != 0) {
                    SemiWalk walk{start, path};
                    walk.steps.push_back(s);
                    found = Unbalanced{std::move(walk), GainExponent(next, g.order())};
                }
                continue;
            }
            if (w < start || on_path[w]) continue;
            on_path[w] = true;
            arc_used[s.arc] = true;
            path.push_back(s);
            extend(start, w, next);
            path.pop_back();
            arc_used[s.arc] = false;
            on_path[w] = false;
        }
    };
    for (Vertex s = 1; s <= n && !found; ++s) {
        on_path[s] = true;
        extend(s, s, 0);
        on_path[s] = false;
    }
    if (found) return *found;

    // No bad semi-cycle: any semi-path from the component anchor gives the potential.
    std::vector<int> theta(n + 1, -1);
    std::function<void(Vertex)> assign = [&](Vertex v) {
        for (const Step& s : inc[v]) {
            const Vertex w = step_target(g, s);
            if (theta[w] != -1) continue;
            theta[w] = (theta[v] + step_gain(g, s)) % m;
            assign(w);
        }
    };
    for (Vertex v = 1; v <= n; ++v) {
        if (theta[v] != -1) continue;
        theta[v] = 0;
        assign(v);
    }
    return Balanced{ClusteringVector(std::vector<int>(theta.begin() + 1, theta.end()), g.order())};
}

BalanceVerdict altafini_balance(const ArcSet& g) {
    if (g.order().value() != 2) throw std::invalid_argument("altafini_balance requires m = 2");
    const int n = g.n();

    // Parity union-find: parity[v] is v's sign relative to parent[v].
    std::vector<int> parent(n + 1), parity(n + 1, 0);
    for (int v = 0; v <= n; ++v) parent[v] = v;
    std::function<std::pair<int, int>(int)> find = [&](int v) -> std::pair<int, int> {
        if (parent[v] == v) return {v, 0};
        auto [root, p] = find(parent[v]);
        parent[v] = root;
        parity[v] ^= p;
        return {root, parity[v]};
    };

    // Arcs that merged two sets form a spanning forest, used for the witness.
    std::vector<std::vector<Step>> forest(n + 1);
    for (std::size_t k = 0; k < g.arc_count(); ++k) {
        const Arc& a = g.arc(k);
        auto [rt, pt] = find(a.tail);
        auto [rh, ph] = find(a.head);
        if (rt != rh) {
            parent[rh] = rt;
            parity[rh] = pt ^ ph ^ a.gain.value();
            forest[a.tail].push_back({k, Direction::Forward});
            forest[a.head].push_back({k, Direction::Backward});
            continue;
        }
        if ((pt ^ ph) == a.gain.value()) continue;

        // Sign conflict: forest path tail -> head, then the arc back to tail.
        std::vector<std::optional<Step>> via(n + 1);
        std::vector<bool> seen(n + 1, false);
        std::deque<Vertex> queue{a.tail};
        seen[a.tail] = true;
        while (!queue.empty()) {
            const Vertex v = queue.front();
            queue.pop_front();
            for (const Step& s : forest[v]) {
                const Vertex w = step_target(g, s);
                if (seen[w]) continue;
                seen[w] = true;
                via[w] = s;
                queue.push_back(w);
            }
        }
        std::vector<Step> steps;
        for (Vertex v = a.head; v != a.tail;) {
            const Step s = *via[v];
            steps.push_back(s);
            v = s.direction == Direction::Forward ? g.arc(s.arc).tail : g.arc(s.arc).head;
        }
        std::reverse(steps.begin(), steps.end());
        steps.push_back({k, Direction::Backward});
        return Unbalanced{SemiWalk{a.tail, std::move(steps)}, GainExponent(1, g.order())};
    }

    std::vector<int> anchor_parity(n + 1, -1);
    std::vector<int> exps(n);
    for (Vertex v = 1; v <= n; ++v) {
        auto [root, p] = find(v);
        if (anchor_parity[root] == -1) anchor_parity[root] = p;
        exps[v - 1] = p ^ anchor_parity[root];
    }
    return Balanced{ClusteringVector(std::move(exps), g.order())};
}

bool directed_cycles_balanced(const ArcSet& g) {
    const int n = g.n();
    if (n > kOracleMaxVertices) throw std::invalid_argument("directed_cycles_balanced: graph too large");
    const int m = g.order().value();
    std::vector<std::vector<std::size_t>> out(n + 1);
    for (std::size_t k = 0; k < g.arc_count(); ++k) out[g.arc(k).tail].push_back(k);

    std::vector<bool> on_path(n + 1, false);
    bool ok = true;
    std::function<void(Vertex, Vertex, int)> extend = [&](Vertex start, Vertex v, int gain) {
        for (std::size_t k : out[v]) {
            if (!ok) return;
            const Arc& a = g.arc(k);
            const int next = (gain + a.gain.value()) % m;
            if (a.head == start) {
                if (next != 0) ok = false;
                continue;
            }
            if (a.head < start || on_path[a.head]) continue;
            on_path[a.head] = true;
            extend(start, a.head, next);
            on_path[a.head] = false;
        }
    };
    for (Vertex s = 1; s <= n && ok; ++s) {
        on_path[s] = true;
        extend(s, s, 0);
        on_path[s] = false;
    }
    return ok;
}

}  // namespace gaincons
