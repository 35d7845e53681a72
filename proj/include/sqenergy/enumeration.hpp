#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "sqenergy/bound.hpp"
#include "sqenergy/graph.hpp"
#include "sqenergy/spectral.hpp"

namespace sqenergy {

inline constexpr std::size_t kMaxBuiltinOrder = 7;

// Number of vertex pairs, i.e. bits in an edge mask on n vertices.
constexpr std::size_t pair_count(std::size_t n) { return n * (n - (n > 0 ? 1 : 0)) / 2; }

// Graph whose edges are the set bits of mask, bit k being the k-th pair in
// graph6 column order: (0,1), (0,2), (1,2), (0,3), ...
Graph graph_from_edge_mask(std::size_t n, std::uint64_t mask);

// Connectivity test on an edge mask without building a Graph (n <= 11).
bool mask_is_connected(std::size_t n, std::uint64_t mask);

// Calls visit(graph) for each connected labelled graph on n vertices with
// edge mask in [mask_begin, mask_end), ascending. Throws PreconditionError
// unless 1 <= n <= kMaxBuiltinOrder.
void enumerate_connected_labeled(std::size_t n, std::uint64_t mask_begin, std::uint64_t mask_end,
                                 const std::function<void(const Graph&)>& visit);
void enumerate_connected_labeled(std::size_t n, const std::function<void(const Graph&)>& visit);

std::vector<Graph> enumerate_connected_labeled(std::size_t n);

struct NumberedGraph {
    std::size_t line = 0;  // 1-based line in the source file
    Graph graph;
};

// Reads one graph6 record per line; blank lines and a ">>graph6<<" header
// are skipped. Throws ParseError naming the failing line.
std::vector<NumberedGraph> ingest_graph6_file(const std::filesystem::path& path);
std::vector<NumberedGraph> ingest_graph6_stream(std::istream& in);

struct BuiltinSource {
    std::size_t n = 0;
};

struct FileSource {
    std::filesystem::path path;
};

using GraphSource = std::variant<BuiltinSource, FileSource>;

struct SweepOptions {
    BoundTarget threshold = BoundTarget::n_minus_one();
    bool connected_only = true;
    std::size_t top_k = 10;
    std::size_t workers = 1;
    double tolerance = 1e-6;     // violation iff s - threshold < -tolerance
    double tie_tolerance = 1e-9; // minimizers: s <= min_s + tie_tolerance
    Tolerances spectral;
};

struct SweepSummary {
    std::size_t n = 0;
    std::size_t graphs_tested = 0;
    std::size_t skipped_disconnected = 0;
    std::size_t solver_failures = 0;
    std::size_t violations = 0;
    double threshold = 0.0;
    double min_s = 0.0;
    double min_s_margin = 0.0;
    std::vector<std::string> minimizers;  // lexicographically least graph6 strings
    BoundTarget threshold_kind;
    double tolerance = 0.0;
    double tie_tolerance = 0.0;
    double wall_seconds = 0.0;
};

// One summary per order present in the source, ascending by n.
std::vector<SweepSummary> sweep(const GraphSource& source, const SweepOptions& options = {});

// Sweep over an in-memory list, e.g. a shuffled copy of a source.
std::vector<SweepSummary> sweep_graphs(const std::vector<Graph>& graphs, const SweepOptions& options = {});

// "n=7 graphs=1866256 violations=0 min_s=6 margin=0 bound=n-1"
std::string digest(const SweepSummary& summary);

}  // namespace sqenergy
