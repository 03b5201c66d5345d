#include "gaincons/lift.hpp"

#include <algorithm>
#include <stdexcept>

namespace gaincons {

GainMatrix::GainMatrix(int n, GroupOrder order)
    : n_(n), order_(order),
      entries_(static_cast<std::size_t>(n) * n, GainEntry{Rational(0), GainExponent::identity(order)}) {}

std::size_t GainMatrix::index(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_) throw std::out_of_range("gain matrix index");
    return static_cast<std::size_t>(i - 1) * n_ + (j - 1);
}

std::complex<double> GainMatrix::complex_at(int i, int j) const {
    const GainEntry& e = at(i, j);
    return e.weight.to_double() * to_complex(e.gain);
}

GainMatrix gain_matrix(const GainGraph& g, bool validate_neighbor_graph) {
    if (validate_neighbor_graph && !g.is_neighbor_graph()) {
        throw std::invalid_argument(
            "gain_matrix: every vertex needs a self-arc with gain exponent 0");
    }
    std::vector<int> in_degree(g.n() + 1, 0);
    for (const Arc& a : g.arcs()) ++in_degree[a.head];
    for (Vertex v = 1; v <= g.n(); ++v) {
        if (in_degree[v] == 0) {
            throw std::invalid_argument("gain_matrix: vertex " + std::to_string(v) +
                                        " has no neighbors");
        }
    }
    GainMatrix out(g.n(), g.order());
    for (const Arc& a : g.arcs()) {
        out.at(a.head, a.tail) = GainEntry{Rational(1, in_degree[a.head]), a.gain};
    }
    return out;
}

LiftedGraph::LiftedGraph(int base_n, GroupOrder order, std::vector<std::pair<Vertex, Vertex>> arcs)
    : base_n_(base_n), order_(order), arcs_(std::move(arcs)) {
    std::sort(arcs_.begin(), arcs_.end());
    arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
}

bool LiftedGraph::has_arc(Vertex tail, Vertex head) const {
    return std::binary_search(arcs_.begin(), arcs_.end(), std::pair{tail, head});
}

LiftedGraph lift_graph(const ArcSet& g) {
    const int n = g.n();
    const int m = g.order().value();
    std::vector<std::pair<Vertex, Vertex>> arcs;
    arcs.reserve(g.arc_count() * m);
    for (const Arc& a : g.arcs()) {
        for (int p = 0; p < m; ++p) {
            arcs.emplace_back(lifted_index(a.tail, (p + a.gain.value()) % m, n),
                              lifted_index(a.head, p, n));
        }
    }
    return LiftedGraph(n, g.order(), std::move(arcs));
}

LiftedMatrix::LiftedMatrix(int base_n, GroupOrder order)
    : base_n_(base_n), order_(order),
      entries_(static_cast<std::size_t>(base_n * order.value()) * (base_n * order.value())) {}

std::size_t LiftedMatrix::index(int r, int c) const {
    const int s = size();
    if (r < 1 || r > s || c < 1 || c > s) throw std::out_of_range("lifted matrix index");
    return static_cast<std::size_t>(r - 1) * s + (c - 1);
}

std::vector<Rational> LiftedMatrix::block(int br, int bc) const {
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(base_n_) * base_n_);
    for (int i = 1; i <= base_n_; ++i) {
        for (int j = 1; j <= base_n_; ++j) {
            out.push_back(at(lifted_index(i, br, base_n_), lifted_index(j, bc, base_n_)));
        }
    }
    return out;
}

bool LiftedMatrix::is_row_stochastic() const {
    for (int r = 1; r <= size(); ++r) {
        Rational sum(0);
        for (int c = 1; c <= size(); ++c) {
            if (at(r, c).num() < 0) return false;
            sum = sum + at(r, c);
        }
        if (!(sum == Rational(1))) return false;
    }
    return true;
}

bool LiftedMatrix::is_block_circulant() const {
    const int m = order_.value();
    for (int br = 0; br < m; ++br) {
        for (int bc = 0; bc < m; ++bc) {
            if (block(br, bc) != block((br + 1) % m, (bc + 1) % m)) return false;
        }
    }
    return true;
}

LiftedGraph LiftedMatrix::graph() const {
    std::vector<std::pair<Vertex, Vertex>> arcs;
    for (int r = 1; r <= size(); ++r) {
        for (int c = 1; c <= size(); ++c) {
            if (!at(r, c).is_zero()) arcs.emplace_back(c, r);
        }
    }
    return LiftedGraph(base_n_, order_, std::move(arcs));
}

LiftedMatrix lift_matrix(const GainGraph& g) {
    const GainMatrix gm = gain_matrix(g, true);
    const int n = g.n();
    const int m = g.order().value();
    LiftedMatrix out(n, g.order());
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            const GainEntry& e = gm.at(i, j);
            if (e.weight.is_zero()) continue;
            for (int p = 0; p < m; ++p) {
                out.at(lifted_index(i, p, n), lifted_index(j, (p + e.gain.value()) % m, n)) = e.weight;
            }
        }
    }
    return out;
}

std::vector<std::vector<Vertex>> scc_partition(const LiftedGraph& lg) {
    return strongly_connected_components(lg.vertex_count(), lg.arcs());
}

std::vector<std::vector<Vertex>> predict_components(const ClusteringVector& b) {
    const int n = b.size();
    const int m = b.order().value();
    std::vector<std::vector<Vertex>> comps(m);
    for (int p = 0; p < m; ++p) {
        for (Vertex i = 1; i <= n; ++i) {
            comps[(p + b.exponents()[i - 1]) % m].push_back(lifted_index(i, p, n));
        }
    }
    for (auto& c : comps) std::sort(c.begin(), c.end());
    return comps;
}

bool ComponentReport::is_counterexample() const {
    return kind == StructureKind::Other ||
           (kind == StructureKind::Unbalanced && !within_unbalanced_bounds);
}

ComponentReport classify(const GainGraph& g) {
    if (!is_strongly_connected(g)) throw std::invalid_argument("classify: graph is not strongly connected");
    const int n = g.n();
    const int m = g.order().value();

    ComponentReport report{};
    report.sccs = scc_partition(lift_graph(g));
    report.component_count = report.sccs.size();
    report.min_size = report.sccs.front().size();
    report.max_size = 0;
    for (const auto& c : report.sccs) {
        report.min_size = std::min(report.min_size, c.size());
        report.max_size = std::max(report.max_size, c.size());
        if (c.size() == 1) report.has_singleton = true;
    }

    const BalanceVerdict verdict = check_balance(g);
    if (const auto* bal = std::get_if<Balanced>(&verdict)) {
        report.b = bal->b;
        report.predicted = predict_components(bal->b);
        auto sorted_prediction = report.predicted;
        std::sort(sorted_prediction.begin(), sorted_prediction.end());
        auto sorted_actual = report.sccs;
        std::sort(sorted_actual.begin(), sorted_actual.end());
        report.matches_prediction = sorted_prediction == sorted_actual;
        report.kind = report.matches_prediction ? StructureKind::Balanced : StructureKind::Other;
    } else {
        report.kind = StructureKind::Unbalanced;
        report.within_unbalanced_bounds =
            report.component_count <= static_cast<std::size_t>(m / 2) &&
            report.min_size >= static_cast<std::size_t>(2 * n);
    }
    return report;
}

}  // namespace gaincons
