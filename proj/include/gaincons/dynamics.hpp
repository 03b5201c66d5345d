#pragma once

// Floating-point simulation of x_i(t+1) = (1/m_i) sum_{j in N_i} g_ij x_j(t)
// and the limit / rate diagnostics built on top of it.

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "gaincons/balance.hpp"
#include "gaincons/lift.hpp"
#include "gaincons/sequence.hpp"

namespace gaincons {

using Complex = std::complex<double>;
using StateVector = std::vector<Complex>;

StateVector step(const GainGraph& g, std::span<const Complex> x);

/// Blocks alpha_0 x, alpha_1 x, ..., alpha_{m-1} x.
StateVector lifted_state(std::span<const Complex> x, GroupOrder order);

/// Dense product of the lifted matrix with z.
StateVector apply_lifted(const LiftedMatrix& gbar, std::span<const Complex> z);

double max_modulus(std::span<const Complex> x);
/// max_i |x_i| - min_i |x_i|.
double modulus_spread(std::span<const Complex> x);
/// max_{i,j} |conj(b_i) x_i - conj(b_j) x_j|; zero exactly when x = c * b.
double cluster_disagreement(std::span<const Complex> x, const ClusteringVector& b);

struct SimulationTrace {
    std::vector<StateVector> states;  // states[t], t = 0..T
    std::vector<double> modulus_spread;
    std::vector<double> cluster_disagreement;  // empty without b
    std::vector<double> max_modulus;
    std::optional<ClusteringVector> b;

    std::size_t length() const { return states.size(); }
};

SimulationTrace simulate(const GraphSequence& seq, StateVector x0, std::size_t steps,
                         std::optional<ClusteringVector> b = std::nullopt);

struct Tolerances {
    double zero_tol = 1e-9;
    double cons_tol = 1e-9;
    double sep_tol = 1e-6;
    /// Samples below this are excluded from rate fits (float noise floor).
    double rate_floor = 1e-12;
};

struct RateFit {
    double slope = 0.0;  // per step, natural log
    double r_squared = 0.0;
    std::size_t samples = 0;
    /// An exact zero fell inside the fitted range; slope is -inf.
    bool hit_zero = false;
};

/// Least squares of log(metric) against t over the last half of the series.
/// With floor > 0 the series is first cut at the first sample below floor.
RateFit estimate_rate(std::span<const double> series, double floor = 0.0);

enum class Metric { ModulusSpread, ClusterDisagreement, MaxModulus };
RateFit estimate_rate(const SimulationTrace& trace, Metric metric, double floor = 0.0);

struct MModulusConsensus {
    ClusteringVector b_hat;
    std::map<int, Complex> cluster_values;  // occupied exponent -> limit value
    RateFit rate;
};

struct ZeroLimit {
    RateFit rate;
};

struct Undecided {};

using LimitVerdict = std::variant<MModulusConsensus, ZeroLimit, Undecided>;

const char* verdict_name(const LimitVerdict& v);

/// Reads b_hat from the phases of x_i conj(x_1) on the final state; a phase
/// farther than pi/(2m) from every group element leaves the verdict Undecided,
/// as does a trace with fewer than two samples.
LimitVerdict detect_limit(const SimulationTrace& trace, GroupOrder order,
                          const Tolerances& tol = {});

/// Nearest-element rounding of x_i conj(x_1); nullopt when ambiguous or x_1 ~ 0.
std::optional<ClusteringVector> recover_clustering(std::span<const Complex> x, GroupOrder order,
                                                   double zero_tol);

}  // namespace gaincons
