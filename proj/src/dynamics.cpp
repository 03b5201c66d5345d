#include "gaincons/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gaincons {

StateVector step(const GainGraph& g, std::span<const Complex> x) {
    if (x.size() != static_cast<std::size_t>(g.n())) {
        throw std::invalid_argument("step: state length does not match vertex count");
    }
    StateVector sum(g.n(), Complex(0.0, 0.0));
    std::vector<int> neighbors(g.n(), 0);
    for (const Arc& a : g.arcs()) {
        sum[a.head - 1] += to_complex(a.gain) * x[a.tail - 1];
        ++neighbors[a.head - 1];
    }
    for (int i = 0; i < g.n(); ++i) {
        if (neighbors[i] == 0) throw std::invalid_argument("step: vertex without neighbors");
        sum[i] /= static_cast<double>(neighbors[i]);
    }
    return sum;
}

StateVector lifted_state(std::span<const Complex> x, GroupOrder order) {
    const int m = order.value();
    StateVector z;
    z.reserve(x.size() * m);
    for (int p = 0; p < m; ++p) {
        const Complex alpha = root_of_unity(p, m);
        for (const Complex& xi : x) z.push_back(alpha * xi);
    }
    return z;
}

StateVector apply_lifted(const LiftedMatrix& gbar, std::span<const Complex> z) {
    const int s = gbar.size();
    if (z.size() != static_cast<std::size_t>(s)) throw std::invalid_argument("apply_lifted: size mismatch");
    StateVector out(s, Complex(0.0, 0.0));
    for (int r = 1; r <= s; ++r) {
        for (int c = 1; c <= s; ++c) {
            const Rational& w = gbar.at(r, c);
            if (!w.is_zero()) out[r - 1] += w.to_double() * z[c - 1];
        }
    }
    return out;
}

double max_modulus(std::span<const Complex> x) {
    double best = 0.0;
    for (const Complex& v : x) best = std::max(best, std::abs(v));
    return best;
}

double modulus_spread(std::span<const Complex> x) {
    if (x.empty()) return 0.0;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const Complex& v : x) {
        lo = std::min(lo, std::abs(v));
        hi = std::max(hi, std::abs(v));
    }
    return hi - lo;
}

double cluster_disagreement(std::span<const Complex> x, const ClusteringVector& b) {
    if (x.size() != static_cast<std::size_t>(b.size())) {
        throw std::invalid_argument("cluster_disagreement: length mismatch");
    }
    std::vector<Complex> aligned(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        aligned[i] = std::conj(to_complex(b.at(static_cast<Vertex>(i + 1)))) * x[i];
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < aligned.size(); ++i) {
        for (std::size_t j = i + 1; j < aligned.size(); ++j) {
            worst = std::max(worst, std::abs(aligned[i] - aligned[j]));
        }
    }
    return worst;
}

SimulationTrace simulate(const GraphSequence& seq, StateVector x0, std::size_t steps,
                         std::optional<ClusteringVector> b) {
    if (x0.size() != static_cast<std::size_t>(seq.n())) {
        throw std::invalid_argument("simulate: initial state length does not match vertex count");
    }
    SimulationTrace trace;
    trace.b = std::move(b);
    trace.states.reserve(steps + 1);
    trace.states.push_back(std::move(x0));
    for (std::size_t t = 0; t < steps; ++t) {
        trace.states.push_back(step(seq.graph_at(t), trace.states.back()));
    }
    for (const StateVector& x : trace.states) {
        trace.modulus_spread.push_back(modulus_spread(x));
        trace.max_modulus.push_back(max_modulus(x));
        if (trace.b) trace.cluster_disagreement.push_back(cluster_disagreement(x, *trace.b));
    }
    return trace;
}

RateFit estimate_rate(std::span<const double> series, double floor) {
    std::size_t end = series.size();
    if (floor > 0.0) {
        const auto below = std::find_if(series.begin(), series.end(),
                                        [floor](double v) { return v < floor; });
        end = static_cast<std::size_t>(below - series.begin());
    }
    const std::size_t begin = end / 2;
    RateFit fit;
    fit.samples = end - begin;
    for (std::size_t t = begin; t < end; ++t) {
        if (series[t] <= 0.0) {
            fit.hit_zero = true;
            fit.slope = -std::numeric_limits<double>::infinity();
            return fit;
        }
    }
    if (fit.samples < 2) return fit;

    double mean_t = 0.0, mean_y = 0.0;
    for (std::size_t t = begin; t < end; ++t) {
        mean_t += static_cast<double>(t);
        mean_y += std::log(series[t]);
    }
    mean_t /= static_cast<double>(fit.samples);
    mean_y /= static_cast<double>(fit.samples);
    double stt = 0.0, sty = 0.0, syy = 0.0;
    for (std::size_t t = begin; t < end; ++t) {
        const double dt = static_cast<double>(t) - mean_t;
        const double dy = std::log(series[t]) - mean_y;
        stt += dt * dt;
        sty += dt * dy;
        syy += dy * dy;
    }
    fit.slope = sty / stt;
    const double residual = syy - fit.slope * sty;
    fit.r_squared = syy == 0.0 ? 1.0 : 1.0 - residual / syy;
    return fit;
}

RateFit estimate_rate(const SimulationTrace& trace, Metric metric, double floor) {
    switch (metric) {
        case Metric::ModulusSpread: return estimate_rate(trace.modulus_spread, floor);
        case Metric::MaxModulus: return estimate_rate(trace.max_modulus, floor);
        case Metric::ClusterDisagreement:
            if (!trace.b) throw std::invalid_argument("trace carries no clustering vector");
            return estimate_rate(trace.cluster_disagreement, floor);
    }
    throw std::invalid_argument("unknown metric");
}

const char* verdict_name(const LimitVerdict& v) {
    if (std::holds_alternative<MModulusConsensus>(v)) return "m-modulus-consensus";
    if (std::holds_alternative<ZeroLimit>(v)) return "zero";
    return "undecided";
}

std::optional<ClusteringVector> recover_clustering(std::span<const Complex> x, GroupOrder order,
                                                   double zero_tol) {
    if (x.empty() || std::abs(x[0]) < zero_tol) return std::nullopt;
    const int m = order.value();
    const double sector = 2.0 * std::numbers::pi / m;
    const double margin = std::numbers::pi / (2.0 * m);
    std::vector<int> exps(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::abs(x[i]) < zero_tol) return std::nullopt;
        const double angle = std::arg(x[i] * std::conj(x[0]));
        const long k = std::lround(angle / sector);
        if (std::abs(angle - k * sector) > margin) return std::nullopt;
        exps[i] = static_cast<int>(((k % m) + m) % m);
    }
    exps[0] = 0;
    return ClusteringVector(std::move(exps), order);
}

LimitVerdict detect_limit(const SimulationTrace& trace, GroupOrder order, const Tolerances& tol) {
    if (trace.length() < 2) return Undecided{};
    const StateVector& last = trace.states.back();
    if (max_modulus(last) < tol.zero_tol) {
        return ZeroLimit{estimate_rate(trace.max_modulus, tol.rate_floor)};
    }
    auto b_hat = recover_clustering(last, order, tol.zero_tol);
    if (!b_hat || cluster_disagreement(last, *b_hat) >= tol.cons_tol) return Undecided{};

    std::map<int, Complex> sums;
    std::map<int, int> counts;
    for (std::size_t i = 0; i < last.size(); ++i) {
        const int e = b_hat->exponents()[i];
        sums[e] += last[i];
        ++counts[e];
    }
    for (auto& [e, v] : sums) {
        v /= static_cast<double>(counts[e]);
        if (std::abs(v) <= tol.zero_tol) return Undecided{};
    }
    for (auto a = sums.begin(); a != sums.end(); ++a) {
        for (auto b = std::next(a); b != sums.end(); ++b) {
            if (std::abs(a->second - b->second) <= tol.sep_tol) return Undecided{};
        }
    }

    std::vector<double> series;
    series.reserve(trace.length());
    for (const StateVector& x : trace.states) series.push_back(cluster_disagreement(x, *b_hat));
    return MModulusConsensus{std::move(*b_hat), std::move(sums), estimate_rate(series, tol.rate_floor)};
}

}  // namespace gaincons
