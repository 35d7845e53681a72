#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles/counting.hpp"
#include "sqenergy/enumeration.hpp"
#include "sqenergy/error.hpp"
#include "sqenergy/graph6.hpp"
#include "sqenergy/json_io.hpp"

using namespace sqenergy;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST(Enumeration, MaskOrderMatchesGraph6Columns) {
    EXPECT_EQ(graph_from_edge_mask(3, 0b001), Graph::from_edges(3, {{0, 1}}));
    EXPECT_EQ(graph_from_edge_mask(3, 0b010), Graph::from_edges(3, {{0, 2}}));
    EXPECT_EQ(graph_from_edge_mask(3, 0b100), Graph::from_edges(3, {{1, 2}}));
    EXPECT_EQ(graph_from_edge_mask(4, 0b1000), Graph::from_edges(4, {{0, 3}}));
}

TEST(Enumeration, MaskConnectivityAgreesWithGraph) {
    for (std::size_t n = 1; n <= 6; ++n)
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pair_count(n)); ++mask)
            ASSERT_EQ(mask_is_connected(n, mask), is_connected(graph_from_edge_mask(n, mask))) << n << " " << mask;
}

TEST(Enumeration, ConnectedCountsMatchOracle) {
    const auto expected = oracle::connected_labeled_counts(kMaxBuiltinOrder);
    EXPECT_EQ(expected, (std::vector<std::uint64_t>{0, 1, 1, 4, 38, 728, 26704, 1866256}));
    for (std::size_t n = 1; n <= kMaxBuiltinOrder; ++n) {
        std::uint64_t count = 0;
        enumerate_connected_labeled(n, [&](const Graph& g) {
            ++count;
            if (n <= 5) ASSERT_TRUE(is_connected(g));
        });
        EXPECT_EQ(count, expected[n]) << "n=" << n;
    }
}

TEST(Enumeration, MaskRangesConcatenate) {
    const std::size_t n = 5;
    const std::uint64_t total = std::uint64_t{1} << pair_count(n);
    std::vector<std::string> whole, pieces;
    enumerate_connected_labeled(n, 0, total, [&](const Graph& g) { whole.push_back(to_graph6(g)); });
    for (std::uint64_t lo = 0; lo < total; lo += 100)
        enumerate_connected_labeled(n, lo, std::min(total, lo + 100),
                                    [&](const Graph& g) { pieces.push_back(to_graph6(g)); });
    EXPECT_EQ(whole, pieces);
}

TEST(Enumeration, RejectsUnsupportedOrder) {
    EXPECT_THROW(enumerate_connected_labeled(0), PreconditionError);
    EXPECT_THROW(enumerate_connected_labeled(kMaxBuiltinOrder + 1), PreconditionError);
}

TEST(Ingest, ReadsRecords) {
    std::istringstream in(">>graph6<<A_\n\nBw\n");
    const auto graphs = ingest_graph6_stream(in);
    ASSERT_EQ(graphs.size(), 2u);
    EXPECT_EQ(graphs[0].line, 1u);
    EXPECT_EQ(graphs[0].graph, Graph::from_edges(2, {{0, 1}}));
    EXPECT_EQ(graphs[1].line, 3u);
    EXPECT_EQ(graphs[1].graph, Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}}));
}

TEST(Ingest, MalformedLineIsNamed) {
    const auto path = write_temp("sqenergy_bad.g6", "A_\nBw\nB!\n");
    try {
        ingest_graph6_file(path);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
    std::filesystem::remove(path);
}

TEST(Ingest, EmptyAndMissingFiles) {
    const auto path = write_temp("sqenergy_empty.g6", "");
    EXPECT_TRUE(ingest_graph6_file(path).empty());
    std::filesystem::remove(path);
    EXPECT_THROW(ingest_graph6_file("/nonexistent/graphs.g6"), ParseError);
}

TEST(Sweep, OrderFour) {
    const auto summaries = sweep(BuiltinSource{4});
    ASSERT_EQ(summaries.size(), 1u);
    const SweepSummary& s = summaries[0];
    EXPECT_EQ(s.graphs_tested, 38u);
    EXPECT_EQ(s.violations, 0u);
    EXPECT_EQ(s.solver_failures, 0u);
    EXPECT_NEAR(s.min_s, 3.0, 1e-9);
    EXPECT_NEAR(s.min_s_margin, 0.0, 1e-9);
    EXPECT_DOUBLE_EQ(s.threshold, 3.0);
    EXPECT_FALSE(s.minimizers.empty());
    EXPECT_TRUE(std::is_sorted(s.minimizers.begin(), s.minimizers.end()));
}

TEST(Sweep, MinimizersReproduceMinimum) {
    SweepOptions opts;
    opts.top_k = 1000;
    for (std::size_t n = 4; n <= 6; ++n) {
        const SweepSummary s = sweep(BuiltinSource{n}, opts).at(0);
        ASSERT_FALSE(s.minimizers.empty());
        for (const auto& code : s.minimizers)
            EXPECT_NEAR(energy_report(parse_graph6(code)).s, s.min_s, 1e-9) << code;
    }
}

TEST(Sweep, OrderFourMinimizersIncludeCompleteGraphAndStar) {
    SweepOptions opts;
    opts.top_k = 100;
    const SweepSummary s = sweep(BuiltinSource{4}, opts).at(0);
    const std::string k4 = to_graph6(Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
    const std::string star = to_graph6(Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}}));
    EXPECT_NE(std::find(s.minimizers.begin(), s.minimizers.end(), k4), s.minimizers.end());
    EXPECT_NE(std::find(s.minimizers.begin(), s.minimizers.end(), star), s.minimizers.end());
}

TEST(Sweep, InvariantUnderOrderAndWorkers) {
    const std::vector<Graph> graphs = enumerate_connected_labeled(6);
    SweepOptions opts;
    opts.top_k = 5;
    const std::string reference = to_json(sweep_graphs(graphs, opts).at(0)).dump();

    std::vector<Graph> shuffled = graphs;
    std::mt19937_64 rng(3);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (std::size_t workers : {1u, 2u, 3u, 8u}) {
        opts.workers = workers;
        EXPECT_EQ(to_json(sweep_graphs(shuffled, opts).at(0)).dump(), reference) << workers;
        EXPECT_EQ(to_json(sweep(BuiltinSource{6}, opts).at(0)).dump(), reference) << workers;
    }
}

TEST(Sweep, ViolationsAgainstStrongerThreshold) {
    SweepOptions opts;
    opts.threshold = BoundTarget::constant(100.0);
    const SweepSummary s = sweep(BuiltinSource{4}, opts).at(0);
    EXPECT_EQ(s.violations, 38u);
    EXPECT_LT(s.min_s_margin, 0.0);
}

TEST(Sweep, FileSourceGroupsByOrder) {
    const auto path = write_temp("sqenergy_mixed.g6", "Bw\nA_\nA?\nCF\n");
    const auto summaries = sweep(FileSource{path});
    std::filesystem::remove(path);
    ASSERT_EQ(summaries.size(), 3u);
    EXPECT_EQ(summaries[0].n, 2u);
    EXPECT_EQ(summaries[0].graphs_tested, 1u);
    EXPECT_EQ(summaries[0].skipped_disconnected, 1u);
    EXPECT_EQ(summaries[1].n, 3u);
    EXPECT_EQ(summaries[2].n, 4u);
}

TEST(Sweep, AllGraphsIncludesDisconnected) {
    SweepOptions opts;
    opts.connected_only = false;
    opts.threshold = BoundTarget::constant(0.0);
    const std::vector<Graph> graphs{Graph(3), Graph::from_edges(3, {{0, 1}})};
    const SweepSummary s = sweep_graphs(graphs, opts).at(0);
    EXPECT_EQ(s.graphs_tested, 2u);
    EXPECT_EQ(s.minimizers, (std::vector<std::string>{"B?"}));
}
