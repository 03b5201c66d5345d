#include "gaincons/sequence.hpp"

#include <numeric>
#include <stdexcept>

namespace gaincons {

GraphSequence::GraphSequence(std::vector<GainGraph> graphs, std::optional<std::size_t> period)
    : graphs_(std::move(graphs)), period_(period) {
    if (graphs_.empty()) throw std::invalid_argument("graph sequence is empty");
    for (const GainGraph& g : graphs_) {
        if (g.n() != n() || !(g.order() == order())) {
            throw std::invalid_argument("graph sequence mixes vertex counts or group orders");
        }
        if (!g.is_neighbor_graph()) {
            throw std::invalid_argument(
                "graph sequence entries must carry identity self-arcs at every vertex");
        }
    }
    if (period_ && (*period_ < 1 || *period_ > graphs_.size())) {
        throw std::invalid_argument("period must lie in 1..number of graphs");
    }
}

GraphSequence GraphSequence::periodic(std::vector<GainGraph> graphs, std::size_t period) {
    return GraphSequence(std::move(graphs), period);
}

GraphSequence GraphSequence::periodic(std::vector<GainGraph> graphs) {
    const std::size_t period = graphs.size();
    return GraphSequence(std::move(graphs), period);
}

GraphSequence GraphSequence::finite(std::vector<GainGraph> graphs) {
    return GraphSequence(std::move(graphs), std::nullopt);
}

const GainGraph& GraphSequence::graph_at(std::size_t t) const {
    if (period_) return graphs_[t % *period_];
    if (t >= graphs_.size()) {
        throw std::out_of_range("time " + std::to_string(t) + " past the end of a finite schedule");
    }
    return graphs_[t];
}

GraphSequence GraphSequence::rotated(std::size_t shift) const {
    std::vector<GainGraph> out;
    out.reserve(period());
    for (std::size_t t = 0; t < period(); ++t) out.push_back(graph_at(t + shift));
    return period_ ? periodic(std::move(out)) : finite(std::move(out));
}

GainMultigraph window_union(const GraphSequence& seq, const WindowSpec& w, std::size_t k) {
    if (w.p < 1) throw std::invalid_argument("window length p must be >= 1");
    std::vector<const ArcSet*> members;
    members.reserve(w.p);
    const std::size_t first = w.q + k * w.p;
    for (std::size_t t = first; t < first + w.p; ++t) members.push_back(&seq.graph_at(t));
    return graph_union(members);
}

const char* to_string(SequenceClass c) {
    switch (c) {
        case SequenceClass::RepeatedlyJointlyBalancedWrt: return "repeatedly-jointly-balanced";
        case SequenceClass::RepeatedlyJointlyUnbalanced: return "repeatedly-jointly-unbalanced";
        case SequenceClass::Mixed: return "mixed";
        case SequenceClass::NotJointlyStronglyConnected: return "not-jointly-strongly-connected";
    }
    return "?";
}

std::size_t distinct_window_count(std::size_t period, std::size_t p) {
    return std::lcm(period, p) / p;
}

WindowReport evaluate_window(const GraphSequence& seq, const WindowSpec& w, std::size_t k) {
    const GainMultigraph h = window_union(seq, w, k);
    WindowReport r;
    r.k = k;
    r.first_time = w.q + k * w.p;
    r.strongly_connected = is_strongly_connected(h);
    const BalanceVerdict v = check_balance(h);
    if (const auto* bal = std::get_if<Balanced>(&v)) r.b = bal->b;
    return r;
}

namespace {

SequenceVerdict summarize(std::vector<WindowReport> windows) {
    SequenceVerdict out{SequenceClass::Mixed, std::nullopt, std::move(windows)};
    bool all_connected = true, all_unbalanced = true, common_b = true;
    const std::optional<ClusteringVector>& first_b = out.windows.front().b;
    for (const WindowReport& r : out.windows) {
        all_connected = all_connected && r.strongly_connected;
        all_unbalanced = all_unbalanced && !r.b.has_value();
        common_b = common_b && r.b.has_value() && first_b.has_value() && *r.b == *first_b;
    }
    if (!all_connected) {
        out.kind = SequenceClass::NotJointlyStronglyConnected;
    } else if (common_b) {
        out.kind = SequenceClass::RepeatedlyJointlyBalancedWrt;
        out.b = first_b;
    } else if (all_unbalanced) {
        out.kind = SequenceClass::RepeatedlyJointlyUnbalanced;
    }
    return out;
}

}  // namespace

SequenceVerdict classify_sequence(const GraphSequence& seq, const WindowSpec& w) {
    if (!seq.is_periodic()) throw std::invalid_argument("classify_sequence needs a periodic schedule");
    if (w.p < 1) throw std::invalid_argument("window length p must be >= 1");
    const std::size_t count = distinct_window_count(seq.period(), w.p);
    std::vector<WindowReport> windows;
    windows.reserve(count);
    for (std::size_t k = 0; k < count; ++k) windows.push_back(evaluate_window(seq, w, k));
    return summarize(std::move(windows));
}

std::vector<WindowReport> report_windows(const GraphSequence& seq, const WindowSpec& w) {
    if (w.p < 1) throw std::invalid_argument("window length p must be >= 1");
    const std::size_t count = seq.is_periodic() ? distinct_window_count(seq.period(), w.p)
                              : seq.graphs().size() >= w.q
                                  ? (seq.graphs().size() - w.q) / w.p
                                  : 0;
    std::vector<WindowReport> windows;
    for (std::size_t k = 0; k < count; ++k) windows.push_back(evaluate_window(seq, w, k));
    return windows;
}

std::optional<std::pair<WindowSpec, SequenceVerdict>> search_window(const GraphSequence& seq,
                                                                    std::size_t p_max) {
    if (p_max < 1) throw std::invalid_argument("p_max must be >= 1");
    for (std::size_t p = 1; p <= p_max; ++p) {
        for (std::size_t q = 0; q < seq.period(); ++q) {
            const WindowSpec w{q, p};
            SequenceVerdict v = classify_sequence(seq, w);
            if (v.kind == SequenceClass::RepeatedlyJointlyBalancedWrt ||
                v.kind == SequenceClass::RepeatedlyJointlyUnbalanced) {
                return std::pair{w, std::move(v)};
            }
        }
    }
    return std::nullopt;
}

}  // namespace gaincons
