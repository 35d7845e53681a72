#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles/jacobi_eigen.hpp"
#include "sqenergy/enumeration.hpp"
#include "sqenergy/error.hpp"
#include "sqenergy/spectral.hpp"
#include "support/random_graphs.hpp"

using namespace sqenergy;

namespace {

constexpr double kTight = 1e-10;

Graph complete_graph(std::size_t n) {
    std::vector<Edge> e;
    for (Vertex j = 1; j < n; ++j)
        for (Vertex i = 0; i < j; ++i) e.emplace_back(i, j);
    return Graph::from_edges(n, e);
}

Graph petersen() {
    std::vector<Edge> e;
    for (Vertex i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);
        e.emplace_back(i, i + 5);
        e.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    return Graph::from_edges(10, e);
}

void expect_values(const std::vector<double>& got, const std::vector<double>& want, double tol = kTight) {
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "index " << i;
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Spectral, SmallSpectra) {
    const double r2 = std::sqrt(2.0);
    expect_values(eigen_decompose(complete_graph(2)).eigenvalues, {1, -1});
    expect_values(eigen_decompose(complete_graph(3)).eigenvalues, {2, -1, -1});
    expect_values(eigen_decompose(Graph::from_edges(3, {{0, 1}, {1, 2}})).eigenvalues, {r2, 0, -r2});
    EXPECT_TRUE(eigen_decompose(Graph(0)).eigenvalues.empty());
}

TEST(Spectral, AgreesWithJacobiOracle) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 60; ++t) {
        const Graph g = testing_support::random_graph(rng, 1 + static_cast<std::size_t>(t % 30), 0.35);
        const auto want = oracle::adjacency_eigenvalues(g.order(), testing_support::edge_pairs(g));
        expect_values(eigen_decompose(g).eigenvalues, want, 1e-9);
        expect_values(eigenvalues(g), want, 1e-9);
    }
}

TEST(Spectral, DecompositionInvariants) {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 50; ++t) {
        const Graph g = testing_support::random_graph(rng, 1 + static_cast<std::size_t>(t), 0.3);
        const Spectrum s = eigen_decompose(g);
        const auto n = static_cast<Eigen::Index>(g.order());
        EXPECT_TRUE(std::is_sorted(s.eigenvalues.rbegin(), s.eigenvalues.rend()));
        EXPECT_LE(s.residual_bound, 1e-10 * std::max(1.0, std::abs(s.eigenvalues.front())));
        EXPECT_LE(max_abs(s.eigenvectors.transpose() * s.eigenvectors - Eigen::MatrixXd::Identity(n, n)), 1e-10);
    }
}

TEST(Spectral, SquareEnergiesExamples) {
    const EnergyReport k3 = energy_report(complete_graph(3));
    EXPECT_NEAR(k3.s_plus, 4.0, kTight);
    EXPECT_NEAR(k3.s_minus, 2.0, kTight);
    EXPECT_NEAR(k3.s, 2.0, kTight);

    const EnergyReport p3 = energy_report(Graph::from_edges(3, {{0, 1}, {1, 2}}));
    EXPECT_NEAR(p3.s_plus, 2.0, kTight);
    EXPECT_NEAR(p3.s_minus, 2.0, kTight);
    EXPECT_EQ(p3.m, 2u);

    const EnergyReport k1 = energy_report(Graph(1));
    EXPECT_EQ(k1.s_plus, 0.0);
    EXPECT_EQ(k1.s_minus, 0.0);
    EXPECT_DOUBLE_EQ(k1.zero_threshold, 1e-8);

    // Spectrum 3, 1^5, (-2)^4 per the Jacobi oracle.
    const Graph pg = petersen();
    const auto oracle_values = oracle::adjacency_eigenvalues(10, testing_support::edge_pairs(pg));
    const auto sums = oracle::square_sums(oracle_values, 1e-8);
    EXPECT_NEAR(sums.plus, 14.0, 1e-9);
    EXPECT_NEAR(sums.minus, 16.0, 1e-9);
    const EnergyReport pr = energy_report(pg);
    EXPECT_NEAR(pr.s_plus, 14.0, kTight);
    EXPECT_NEAR(pr.s_minus, 16.0, kTight);
    EXPECT_NEAR(pr.s, 14.0, kTight);
}

TEST(Spectral, ZeroEigenvaluesExcluded) {
    // A star's zero eigenvalues are never counted as positive or negative.
    const EnergyReport r =
        square_energies(std::vector<double>{2.0, 1e-12, -1e-12, -2.0}, 4);
    EXPECT_DOUBLE_EQ(r.s_plus, 4.0);
    EXPECT_DOUBLE_EQ(r.s_minus, 4.0);
    EXPECT_DOUBLE_EQ(r.zero_threshold, 2e-8);
}

TEST(Spectral, SplitExamples) {
    const SpectralSplit empty = spectral_split(eigen_decompose(Graph(4)));
    EXPECT_EQ(max_abs(empty.a_plus), 0.0);
    EXPECT_EQ(max_abs(empty.a_minus), 0.0);

    const SpectralSplit k2 = spectral_split(eigen_decompose(complete_graph(2)));
    Eigen::Matrix2d plus;
    plus << 0.5, 0.5, 0.5, 0.5;
    Eigen::Matrix2d minus;
    minus << 0.5, -0.5, -0.5, 0.5;
    EXPECT_LE(max_abs(k2.a_plus - plus), kTight);
    EXPECT_LE(max_abs(k2.a_minus - minus), kTight);

    EXPECT_THROW(spectral_split(Spectrum{{1.0, -1.0}, {}, 0.0}), PreconditionError);
}

TEST(Spectral, GraphEnergyExamples) {
    EXPECT_NEAR(graph_energy(eigen_decompose(complete_graph(2))), 2.0, kTight);
    EXPECT_NEAR(graph_energy(eigen_decompose(complete_graph(3))), 4.0, kTight);
    const Graph c4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    expect_values(oracle::adjacency_eigenvalues(4, testing_support::edge_pairs(c4)), {2, 0, 0, -2});
    EXPECT_NEAR(graph_energy(eigen_decompose(c4)), 4.0, kTight);
}

TEST(Spectral, InterlacingExamples) {
    const auto r = interlacing_check(eigen_decompose(complete_graph(3)), eigen_decompose(complete_graph(2)));
    EXPECT_TRUE(r.holds);

    const std::vector<double> outer{0.0};
    EXPECT_TRUE(interlacing_check(outer, std::vector<double>{}, 1e-8).holds);

    const auto bad = interlacing_check(std::vector<double>{2.0, -1.0}, std::vector<double>{3.0}, 1e-8);
    EXPECT_FALSE(bad.holds);
    EXPECT_NEAR(bad.max_violation, 1.0, 1e-15);

    EXPECT_THROW(interlacing_check(std::vector<double>{1.0}, std::vector<double>{1.0}, 1e-8), PreconditionError);
}

TEST(Spectral, InterlacingRandomVertexDeletion) {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 40);
        const Graph g = testing_support::random_graph(rng, n, 0.3);
        const Vertex v = static_cast<Vertex>(rng() % n);
        const Graph h = induced_subgraph(g, complement(VertexSet(n, {v})));
        EXPECT_TRUE(interlacing_check(eigen_decompose(g), eigen_decompose(h)).holds);
    }
}

TEST(Spectral, InterlacingExhaustiveSmallGraphs) {
    for (std::size_t n = 1; n <= 6; ++n) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pair_count(n)); ++mask) {
            const Graph g = graph_from_edge_mask(n, mask);
            const auto outer = eigenvalues(g);
            for (Vertex v = 0; v < n; ++v) {
                const auto inner = eigenvalues(induced_subgraph(g, complement(VertexSet(n, {v}))));
                ASSERT_TRUE(interlacing_check(outer, inner, 1e-8).holds) << "n=" << n << " mask=" << mask;
            }
        }
    }
}

TEST(Spectral, TraceAndSplitIdentities) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng() % 64);
        const Graph g = testing_support::random_graph(rng, n, 0.05 + 0.5 * static_cast<double>(t % 10) / 10.0);
        const Spectrum s = eigen_decompose(g);
        const EnergyReport r = square_energies(s, g.size());
        double sum = 0.0;
        double sq = 0.0;
        for (double x : s.eigenvalues) {
            sum += x;
            sq += x * x;
        }
        const double two_m = 2.0 * static_cast<double>(g.size());
        EXPECT_LE(std::abs(sum), 1e-8 * static_cast<double>(n));
        EXPECT_LE(std::abs(sq - two_m), 1e-8 * std::max(1.0, two_m));
        EXPECT_DOUBLE_EQ(r.s, std::min(r.s_plus, r.s_minus));
        EXPECT_LE(std::abs(r.s_plus + r.s_minus - two_m), 1e-8 * std::max(1.0, two_m));

        const SpectralSplit split = spectral_split(s);
        EXPECT_LE(max_abs(adjacency_matrix(g) - (split.a_plus - split.a_minus)), 1e-7);
        EXPECT_LE(max_abs(split.a_plus * split.a_minus), 1e-7);
        EXPECT_LE(max_abs(split.a_minus * split.a_plus), 1e-7);
        EXPECT_NEAR((split.a_plus * split.a_plus).trace(), r.s_plus, 1e-7);
        EXPECT_NEAR((split.a_minus * split.a_minus).trace(), r.s_minus, 1e-7);
    }
}

TEST(Spectral, PsdPrincipalBlocks) {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng() % 40);
        const Graph g = testing_support::random_graph(rng, n, 0.3);
        const SpectralSplit split = spectral_split(eigen_decompose(g));
        std::vector<Vertex> members;
        for (Vertex v = 0; v < n; ++v)
            if (rng() % 2) members.push_back(v);
        if (members.empty()) continue;
        const auto k = static_cast<Eigen::Index>(members.size());
        Eigen::MatrixXd bp(k, k);
        Eigen::MatrixXd bm(k, k);
        for (Eigen::Index i = 0; i < k; ++i)
            for (Eigen::Index j = 0; j < k; ++j) {
                bp(i, j) = split.a_plus(static_cast<Eigen::Index>(members[i]), static_cast<Eigen::Index>(members[j]));
                bm(i, j) = split.a_minus(static_cast<Eigen::Index>(members[i]), static_cast<Eigen::Index>(members[j]));
            }
        EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(bp).eigenvalues().minCoeff(), -1e-7);
        EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(bm).eigenvalues().minCoeff(), -1e-7);
    }
}

TEST(Spectral, BipartiteSquareEnergyEqualsEdgeCount) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng() % 39);
        const Graph g = testing_support::random_connected_bipartite(rng, n, 0.2);
        ASSERT_TRUE(is_bipartite(g));
        const EnergyReport r = energy_report(g);
        const double m = static_cast<double>(g.size());
        EXPECT_LE(std::abs(r.s_plus - m), 1e-7 * std::max(1.0, m));
        EXPECT_LE(std::abs(r.s_minus - m), 1e-7 * std::max(1.0, m));
    }
}

TEST(Spectral, EnergySuperadditivity) {
    std::mt19937_64 rng(37);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 3 + static_cast<std::size_t>(rng() % 30);
        const Graph g = testing_support::random_graph(rng, n, 0.3);
        const auto parts = testing_support::random_partition(rng, n, 2 + static_cast<std::size_t>(t % 2));
        double sum = 0.0;
        for (const auto& p : parts) sum += graph_energy(eigen_decompose(induced_subgraph(g, p)));
        EXPECT_GE(graph_energy(eigen_decompose(g)) - sum, -1e-7);
    }
}
