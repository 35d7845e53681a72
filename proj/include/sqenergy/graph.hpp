#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace sqenergy {

using Vertex = std::size_t;

// Unordered vertex pair, stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Sorted, duplicate-free subset of {0..n-1}.
class VertexSet {
public:
    VertexSet() = default;

    // Sorts and deduplicates; throws PreconditionError if a member is >= n.
    VertexSet(std::size_t n, std::vector<Vertex> members);

    static VertexSet all(std::size_t n);

    std::size_t universe() const noexcept { return n_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(Vertex v) const;

    const std::vector<Vertex>& members() const noexcept { return members_; }
    Vertex operator[](std::size_t i) const { return members_[i]; }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Vertex> members_;
};

// Simple undirected graph with dense bit-row adjacency. Immutable once built.
class Graph {
public:
    Graph() = default;

    // Edgeless graph on n vertices.
    explicit Graph(std::size_t n);

    // Throws PreconditionError on self-loops or out-of-range endpoints.
    // Repeated edges are collapsed.
    static Graph from_edges(std::size_t n, std::span<const Edge> edges);
    static Graph from_edges(std::size_t n, std::initializer_list<Edge> edges);

    std::size_t order() const noexcept { return n_; }
    std::size_t size() const noexcept { return m_; }

    bool adjacent(Vertex i, Vertex j) const;
    std::size_t degree(Vertex v) const;
    std::size_t max_degree() const;

    // Ascending neighbour list.
    std::vector<Vertex> neighbors(Vertex v) const;

    // All edges in graph6 column order: by larger endpoint, then smaller.
    std::vector<Edge> edges() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::uint64_t* row(Vertex v) { return bits_.data() + v * words_; }
    const std::uint64_t* row(Vertex v) const { return bits_.data() + v * words_; }
    void set(Vertex i, Vertex j);

    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct SpanningTree {
    Vertex root = 0;
    std::vector<Edge> edges;            // sorted
    std::vector<std::optional<Vertex>> parent;  // parent[root] is empty

    std::size_t degree(Vertex v) const;
};

struct ComponentClassification {
    std::size_t triangles = 0;  // K3
    std::size_t paths3 = 0;     // P3
    std::size_t edges = 0;      // K2
    std::size_t isolated = 0;   // K1
    std::vector<VertexSet> others;

    friend bool operator==(const ComponentClassification&, const ComponentClassification&) = default;
};

// Ordered vertex quadruple (a, b, c, d) spanning a path ab, bc, cd.
using P4Witness = std::array<Vertex, 4>;

bool is_connected(const Graph& g);
bool is_bipartite(const Graph& g);

// True iff g is connected and 2-regular (n >= 3).
bool is_cycle(const Graph& g);

// Disjoint cover ordered by smallest member.
std::vector<VertexSet> components(const Graph& g);

// Vertices relabelled 0..|s|-1 in the order of s.
Graph induced_subgraph(const Graph& g, const VertexSet& s);

// Members of {0..n-1} not in s.
VertexSet complement(const VertexSet& s);

// BFS with ascending-neighbour exploration. Throws on disconnected input.
SpanningTree bfs_spanning_tree(const Graph& g, Vertex root);

// Lexicographically least P4 subgraph witness, if one exists.
std::optional<P4Witness> find_p4(const Graph& g);

// Tally K3 / P3 / K2 / K1 components. Throws PreconditionError if g has a P4.
ComponentClassification classify_p4_free_components(const Graph& g);

}  // namespace sqenergy
