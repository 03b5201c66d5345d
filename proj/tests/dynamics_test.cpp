#include <gtest/gtest.h>

#include <cmath>

#include "gaincons/dynamics.hpp"
#include "gaincons/lift.hpp"
#include "test_support.hpp"

namespace gaincons {
namespace {

using testing::arc;
using testing::example_graph;

StateVector random_state(testing::Rng& rng, int n) {
    std::normal_distribution<double> normal;
    StateVector x(n);
    for (auto& v : x) v = Complex(normal(rng), normal(rng));
    return x;
}

GraphSequence constant(const GainGraph& g) { return GraphSequence::periodic({g}); }

TEST(StepTest, Examples) {
    std::vector<Arc> arcs;
    for (Vertex t = 1; t <= 3; ++t) {
        for (Vertex h = 1; h <= 3; ++h) arcs.push_back(arc(t, h, 0, 4));
    }
    const GainGraph complete(3, GroupOrder(4), arcs, true);
    const Complex c(0.3, -1.2);
    for (const Complex& v : step(complete, StateVector(3, c))) EXPECT_LT(std::abs(v - c), 1e-15);

    const StateVector y = step(example_graph(), StateVector(3, Complex(1.0, 0.0)));
    const Complex a1 = root_of_unity(1, 3), a2 = root_of_unity(2, 3);
    EXPECT_LT(std::abs(y[0] - 1.0), 1e-15);
    EXPECT_LT(std::abs(y[1] - (1.0 + a1) / 2.0), 1e-15);
    EXPECT_LT(std::abs(y[2] - (a2 + 1.0) / 2.0), 1e-15);

    for (const Complex& v : step(example_graph(), StateVector(3))) EXPECT_EQ(v, Complex(0.0, 0.0));
    EXPECT_THROW(step(example_graph(), StateVector(2)), std::invalid_argument);
}

TEST(StepTest, MatchesGainMatrixProduct) {
    testing::Rng rng(51);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = testing::uniform_int(rng, 1, 6);
        const int m = testing::uniform_int(rng, 2, 5);
        const GainGraph g = testing::random_neighbor_graph(rng, n, m, 0.4, false);
        const GainMatrix gm = gain_matrix(g);
        const StateVector x = random_state(rng, n);
        const StateVector y = step(g, x);
        for (int i = 1; i <= n; ++i) {
            Complex expected(0.0, 0.0);
            for (int j = 1; j <= n; ++j) expected += gm.complex_at(i, j) * x[j - 1];
            EXPECT_LT(std::abs(y[i - 1] - expected), 1e-12);
        }
    }
}

TEST(LiftedStateTest, Examples) {
    for (const Complex& v : lifted_state(StateVector(2), GroupOrder(3))) EXPECT_EQ(v, Complex(0.0, 0.0));
    EXPECT_EQ(lifted_state(StateVector{1.0}, GroupOrder(2)), (StateVector{1.0, -1.0}));
    const StateVector x{1.0, 0.0, 2.0};
    const StateVector z = lifted_state(x, GroupOrder(3));
    ASSERT_EQ(z.size(), 9u);
    for (int p = 0; p < 3; ++p) {
        for (int i = 0; i < 3; ++i) EXPECT_EQ(z[p * 3 + i], root_of_unity(p, 3) * x[i]);
    }
}

TEST(MetricsTest, Examples) {
    EXPECT_EQ(modulus_spread(StateVector{Complex(1, 0), Complex(0, 1), Complex(-1, 0)}), 0.0);
    EXPECT_EQ(modulus_spread(StateVector{1.0, 2.0}), 1.0);
    const ClusteringVector b({0, 1, 0}, GroupOrder(3));
    const Complex c(0.7, -0.2);
    StateVector x(3);
    for (int i = 0; i < 3; ++i) x[i] = c * to_complex(b.at(i + 1));
    EXPECT_LT(cluster_disagreement(x, b), 1e-15);
    EXPECT_GT(cluster_disagreement(StateVector(3, c), b), 0.5);
    EXPECT_THROW(cluster_disagreement(StateVector(2), b), std::invalid_argument);
}

TEST(SimulateTest, Examples) {
    testing::Rng rng(52);
    const SimulationTrace zero_steps = simulate(constant(example_graph()), random_state(rng, 3), 0);
    EXPECT_EQ(zero_steps.length(), 1u);
    EXPECT_TRUE(std::holds_alternative<Undecided>(detect_limit(zero_steps, GroupOrder(3))));

    const ClusteringVector b({0, 1, 0}, GroupOrder(3));
    const SimulationTrace bal = simulate(constant(example_graph()), random_state(rng, 3), 200, b);
    EXPECT_LT(bal.cluster_disagreement.back(), 1e-9);

    const SimulationTrace unb = simulate(constant(testing::two_cycle(1, 1, 3)), random_state(rng, 2), 2000);
    EXPECT_LT(unb.max_modulus.back(), 1e-6);
    EXPECT_THROW(simulate(constant(example_graph()), StateVector(2), 3), std::invalid_argument);
    EXPECT_THROW(simulate(GraphSequence::finite({example_graph()}), StateVector(3), 2), std::out_of_range);
}

TEST(DetectLimitTest, Examples) {
    testing::Rng rng(53);
    const SimulationTrace to_zero = simulate(constant(example_graph()), StateVector(3), 5);
    const LimitVerdict z = detect_limit(to_zero, GroupOrder(3));
    ASSERT_TRUE(std::holds_alternative<ZeroLimit>(z));

    const SimulationTrace run = simulate(constant(example_graph()), random_state(rng, 3), 200);
    const LimitVerdict v = detect_limit(run, GroupOrder(3));
    ASSERT_TRUE(std::holds_alternative<MModulusConsensus>(v));
    const auto& mc = std::get<MModulusConsensus>(v);
    EXPECT_EQ(mc.b_hat, std::get<Balanced>(check_balance(example_graph())).b);
    EXPECT_EQ(mc.cluster_values.size(), 2u);
    EXPECT_TRUE(mc.cluster_values.count(0));
    EXPECT_TRUE(mc.cluster_values.count(1));
    EXPECT_LT(mc.rate.slope, 0.0);
    EXPECT_GT(mc.rate.r_squared, 0.99);

    const SimulationTrace transient = simulate(constant(example_graph()), random_state(rng, 3), 3);
    EXPECT_TRUE(std::holds_alternative<Undecided>(detect_limit(transient, GroupOrder(3))));
}

TEST(EstimateRateTest, Examples) {
    std::vector<double> geometric(60);
    for (std::size_t t = 0; t < geometric.size(); ++t) geometric[t] = 3.0 * std::pow(0.5, static_cast<double>(t));
    const RateFit g = estimate_rate(geometric);
    EXPECT_NEAR(g.slope, std::log(0.5), 1e-6);
    EXPECT_NEAR(g.r_squared, 1.0, 1e-9);
    EXPECT_EQ(g.samples, 30u);

    const RateFit c = estimate_rate(std::vector<double>(20, 0.25));
    EXPECT_EQ(c.slope, 0.0);

    const RateFit zero = estimate_rate(std::vector<double>{1.0, 0.5, 0.0, 0.0});
    EXPECT_TRUE(zero.hit_zero);
    EXPECT_TRUE(std::isinf(zero.slope) && zero.slope < 0);

    // The floor cuts the series before the noise region.
    std::vector<double> noisy = geometric;
    for (std::size_t t = 40; t < noisy.size(); ++t) noisy[t] = 1e-16 * (1.0 + (t % 3));
    EXPECT_NEAR(estimate_rate(noisy, 1e-12).slope, std::log(0.5), 1e-9);
}

TEST(DynamicsProperty, LiftedStepMatchesLiftedMatrix) {
    testing::Rng rng(54);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = testing::uniform_int(rng, 1, 6);
        const int m = testing::uniform_int(rng, 2, 5);
        const GainGraph g = testing::random_neighbor_graph(rng, n, m, 0.4, false);
        const StateVector x = random_state(rng, n);
        const StateVector lhs = lifted_state(step(g, x), g.order());
        const StateVector rhs = apply_lifted(lift_matrix(g), lifted_state(x, g.order()));
        for (std::size_t k = 0; k < lhs.size(); ++k) EXPECT_LT(std::abs(lhs[k] - rhs[k]), 1e-10);
    }
}

TEST(DynamicsProperty, MaxModulusNeverGrows) {
    testing::Rng rng(55);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = testing::uniform_int(rng, 2, 6);
        const int m = testing::uniform_int(rng, 2, 5);
        const GraphSequence seq = GraphSequence::periodic(
            {testing::random_neighbor_graph(rng, n, m, 0.4, false), testing::random_neighbor_graph(rng, n, m, 0.4, false)});
        const SimulationTrace tr = simulate(seq, random_state(rng, n), 100);
        for (std::size_t t = 1; t < tr.length(); ++t) EXPECT_LE(tr.max_modulus[t], tr.max_modulus[t - 1] + 1e-12);
    }
}

TEST(DynamicsProperty, PhaseEquivariance) {
    testing::Rng rng(56);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = testing::uniform_int(rng, 2, 5);
        const int m = testing::uniform_int(rng, 2, 4);
        const GraphSequence seq = trial % 2 == 0
                                      ? testing::balanced_periodic_sequence(rng, testing::random_clustering(rng, n, m), 2)
                                      : testing::unbalanced_periodic_sequence(rng, n, m, 2);
        const StateVector x0 = random_state(rng, n);
        const Complex c(testing::uniform_real(rng, -2, 2), testing::uniform_real(rng, -2, 2));
        StateVector scaled = x0;
        for (auto& v : scaled) v *= c;
        const SimulationTrace a = simulate(seq, x0, 3000);
        const SimulationTrace b = simulate(seq, scaled, 3000);
        for (std::size_t t = 0; t < a.length(); t += 97) {
            for (int i = 0; i < n; ++i) EXPECT_LT(std::abs(c * a.states[t][i] - b.states[t][i]), 1e-9);
        }
        Tolerances tol;
        tol.zero_tol = 1e-6;
        EXPECT_EQ(detect_limit(a, seq.order(), tol).index(), detect_limit(b, seq.order(), tol).index());
    }
}

TEST(DynamicsProperty, RecoveredClusteringMatchesBalance) {
    testing::Rng rng(57);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = testing::uniform_int(rng, 1, 6);
        const int m = testing::uniform_int(rng, 2, 5);
        const ClusteringVector b = testing::random_clustering(rng, n, m);
        const GainGraph g = testing::balanced_neighbor_graph(rng, b, 0.4, true);
        const SimulationTrace tr = simulate(constant(g), random_state(rng, n), 3000);
        const LimitVerdict v = detect_limit(tr, g.order());
        ASSERT_TRUE(std::holds_alternative<MModulusConsensus>(v));
        EXPECT_EQ(std::get<MModulusConsensus>(v).b_hat, std::get<Balanced>(check_balance(g)).b);
    }
}

TEST(DynamicsProperty, SignedGraphsPolarizeOrVanish) {
    testing::Rng rng(58);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = testing::uniform_int(rng, 2, 6);
        ClusteringVector b = testing::random_clustering(rng, n, 2);
        if (b.partition()[1].empty()) {
            std::vector<int> e = b.exponents();
            e.back() = 1;
            b = ClusteringVector(e, GroupOrder(2));
        }
        const SimulationTrace bal =
            simulate(constant(testing::balanced_neighbor_graph(rng, b, 0.4, true)), random_state(rng, n), 3000);
        const LimitVerdict v = detect_limit(bal, GroupOrder(2));
        ASSERT_TRUE(std::holds_alternative<MModulusConsensus>(v));
        const auto& values = std::get<MModulusConsensus>(v).cluster_values;
        ASSERT_EQ(values.size(), 2u);
        EXPECT_LT(std::abs(values.at(0) + values.at(1)), 1e-9);
        EXPECT_GT(std::abs(values.at(0)), 0.0);

        const SimulationTrace unb =
            simulate(constant(testing::unbalanced_strongly_connected(rng, n, 2, 0.4)), random_state(rng, n), 5000);
        EXPECT_TRUE(std::holds_alternative<ZeroLimit>(detect_limit(unb, GroupOrder(2))));
    }
}

// Structured initial states aligned with a clustering vector still vanish on
// unbalanced graphs.
TEST(DynamicsProperty, AlignedInitialStatesVanishWhenUnbalanced) {
    testing::Rng rng(59);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = testing::uniform_int(rng, 2, 6);
        const int m = testing::uniform_int(rng, 2, 4);
        const ClusteringVector b = testing::random_clustering(rng, n, m);
        StateVector x0(n);
        for (int i = 0; i < n; ++i) x0[i] = to_complex(b.at(i + 1));
        const SimulationTrace tr =
            simulate(constant(testing::unbalanced_strongly_connected(rng, n, m, 0.4)), x0, 10000);
        EXPECT_LT(tr.max_modulus.back(), 1e-6);
    }
}

}  // namespace
}  // namespace gaincons
