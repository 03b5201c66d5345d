#pragma once

// Time-varying neighbor-graph sequences and the repeatedly-jointly
// connectivity / balance classification over windows
//   H(k) = N(q + k p) u N(q + k p + 1) u ... u N(q + k p + p - 1).

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "gaincons/balance.hpp"
#include "gaincons/graph.hpp"

namespace gaincons {

struct WindowSpec {
    std::size_t q = 0;
    std::size_t p = 1;

    friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
};

class GraphSequence {
public:
    /// graph_at(t) = graphs[t mod period]; 1 <= period <= graphs.size().
    static GraphSequence periodic(std::vector<GainGraph> graphs, std::size_t period);
    static GraphSequence periodic(std::vector<GainGraph> graphs);
    /// graph_at(t) defined for t < graphs.size() only.
    static GraphSequence finite(std::vector<GainGraph> graphs);

    int n() const { return graphs_.front().n(); }
    GroupOrder order() const { return graphs_.front().order(); }
    const std::vector<GainGraph>& graphs() const { return graphs_; }
    bool is_periodic() const { return period_.has_value(); }
    /// Period for periodic schedules, list length for finite ones.
    std::size_t period() const { return period_.value_or(graphs_.size()); }

    /// Throws std::out_of_range past the end of a finite schedule.
    const GainGraph& graph_at(std::size_t t) const;

    /// Periodic sequence started `shift` steps later.
    GraphSequence rotated(std::size_t shift) const;

private:
    GraphSequence(std::vector<GainGraph> graphs, std::optional<std::size_t> period);

    std::vector<GainGraph> graphs_;
    std::optional<std::size_t> period_;
};

GainMultigraph window_union(const GraphSequence& seq, const WindowSpec& w, std::size_t k);

struct WindowReport {
    std::size_t k = 0;
    std::size_t first_time = 0;
    bool strongly_connected = false;
    /// Set when the window union is balanced.
    std::optional<ClusteringVector> b;
};

enum class SequenceClass {
    RepeatedlyJointlyBalancedWrt,
    RepeatedlyJointlyUnbalanced,
    Mixed,
    NotJointlyStronglyConnected,
};

const char* to_string(SequenceClass c);

struct SequenceVerdict {
    SequenceClass kind;
    std::optional<ClusteringVector> b;  // RepeatedlyJointlyBalancedWrt only
    std::vector<WindowReport> windows;
};

/// Number of distinct windows of a periodic schedule: lcm(period, p) / p.
std::size_t distinct_window_count(std::size_t period, std::size_t p);

WindowReport evaluate_window(const GraphSequence& seq, const WindowSpec& w, std::size_t k);

/// Periodic schedules only (throws std::invalid_argument otherwise).
SequenceVerdict classify_sequence(const GraphSequence& seq, const WindowSpec& w);

/// Per-window reports for every window that fits inside a finite schedule.
std::vector<WindowReport> report_windows(const GraphSequence& seq, const WindowSpec& w);

/// Smallest p first, then smallest q; returns the first connected, non-Mixed verdict.
std::optional<std::pair<WindowSpec, SequenceVerdict>> search_window(const GraphSequence& seq,
                                                                    std::size_t p_max);

}  // namespace gaincons
