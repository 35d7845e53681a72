#include "sqenergy/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <string>

#include "sqenergy/error.hpp"

namespace sqenergy {

// ---------------------------------------------------------------- VertexSet

VertexSet::VertexSet(std::size_t n, std::vector<Vertex> members) : n_(n), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && members_.back() >= n_) {
        throw PreconditionError("vertex " + std::to_string(members_.back()) + " out of range for n = " +
                                std::to_string(n_));
    }
}

VertexSet VertexSet::all(std::size_t n) {
    std::vector<Vertex> m(n);
    std::iota(m.begin(), m.end(), Vertex{0});
    return VertexSet(n, std::move(m));
}

bool VertexSet::contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }

VertexSet complement(const VertexSet& s) {
    std::vector<Vertex> rest;
    rest.reserve(s.universe() - s.size());
    for (Vertex v = 0; v < s.universe(); ++v) {
        if (!s.contains(v)) rest.push_back(v);
    }
    return VertexSet(s.universe(), std::move(rest));
}

// -------------------------------------------------------------------- Graph

Graph::Graph(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
    Graph g(n);
    for (const Edge& e : edges) {
        if (e.u == e.v) throw PreconditionError("self-loop at vertex " + std::to_string(e.u));
        if (e.v >= n) {
            throw PreconditionError("edge endpoint " + std::to_string(e.v) + " out of range for n = " +
                                    std::to_string(n));
        }
        g.set(e.u, e.v);
    }
    return g;
}

Graph Graph::from_edges(std::size_t n, std::initializer_list<Edge> edges) {
    return from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
}

void Graph::set(Vertex i, Vertex j) {
    if (adjacent(i, j)) return;
    row(i)[j / 64] |= std::uint64_t{1} << (j % 64);
    row(j)[i / 64] |= std::uint64_t{1} << (i % 64);
    ++m_;
}

bool Graph::adjacent(Vertex i, Vertex j) const {
    if (i >= n_ || j >= n_) return false;
    return (row(i)[j / 64] >> (j % 64)) & 1U;
}

std::size_t Graph::degree(Vertex v) const {
    std::size_t d = 0;
    const std::uint64_t* r = row(v);
    for (std::size_t w = 0; w < words_; ++w) d += static_cast<std::size_t>(std::popcount(r[w]));
    return d;
}

std::size_t Graph::max_degree() const {
    std::size_t best = 0;
    for (Vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
    return best;
}

std::vector<Vertex> Graph::neighbors(Vertex v) const {
    std::vector<Vertex> out;
    const std::uint64_t* r = row(v);
    for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t bits = r[w];
        while (bits != 0) {
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex j = 1; j < n_; ++j) {
        for (Vertex i = 0; i < j; ++i) {
            if (adjacent(i, j)) out.emplace_back(i, j);
        }
    }
    return out;
}

std::size_t SpanningTree::degree(Vertex v) const {
    return static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [v](const Edge& e) { return e.u == v || e.v == v; }));
}

// ------------------------------------------------------------- algorithms

std::vector<VertexSet> components(const Graph& g) {
    const std::size_t n = g.order();
    std::vector<bool> seen(n, false);
    std::vector<VertexSet> out;
    for (Vertex s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<Vertex> comp{s};
        seen[s] = true;
        for (std::size_t head = 0; head < comp.size(); ++head) {
            for (Vertex w : g.neighbors(comp[head])) {
                if (!seen[w]) {
                    seen[w] = true;
                    comp.push_back(w);
                }
            }
        }
        out.emplace_back(n, std::move(comp));
    }
    return out;
}

bool is_connected(const Graph& g) { return g.order() <= 1 || components(g).size() == 1; }

bool is_bipartite(const Graph& g) {
    const std::size_t n = g.order();
    std::vector<int> colour(n, -1);
    for (Vertex s = 0; s < n; ++s) {
        if (colour[s] >= 0) continue;
        colour[s] = 0;
        std::deque<Vertex> queue{s};
        while (!queue.empty()) {
            Vertex u = queue.front();
            queue.pop_front();
            for (Vertex w : g.neighbors(u)) {
                if (colour[w] < 0) {
                    colour[w] = 1 - colour[u];
                    queue.push_back(w);
                } else if (colour[w] == colour[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool is_cycle(const Graph& g) {
    if (g.order() < 3 || !is_connected(g)) return false;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (g.degree(v) != 2) return false;
    }
    return true;
}

Graph induced_subgraph(const Graph& g, const VertexSet& s) {
    if (!s.empty() && s.members().back() >= g.order()) {
        throw PreconditionError("vertex set member out of range for graph of order " + std::to_string(g.order()));
    }
    std::vector<Edge> edges;
    for (std::size_t j = 1; j < s.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (g.adjacent(s[i], s[j])) edges.emplace_back(i, j);
        }
    }
    return Graph::from_edges(s.size(), edges);
}

SpanningTree bfs_spanning_tree(const Graph& g, Vertex root) {
    const std::size_t n = g.order();
    if (root >= n) throw PreconditionError("BFS root out of range");
    SpanningTree tree;
    tree.root = root;
    tree.parent.assign(n, std::nullopt);
    std::vector<bool> seen(n, false);
    seen[root] = true;
    std::deque<Vertex> queue{root};
    std::size_t reached = 1;
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(u)) {
            if (seen[w]) continue;
            seen[w] = true;
            tree.parent[w] = u;
            tree.edges.emplace_back(u, w);
            queue.push_back(w);
            ++reached;
        }
    }
    if (reached != n) throw PreconditionError("spanning tree requested for a disconnected graph");
    std::sort(tree.edges.begin(), tree.edges.end());
    return tree;
}

std::optional<P4Witness> find_p4(const Graph& g) {
    // Ascending nested scans hit the lexicographically least quadruple first.
    for (Vertex a = 0; a < g.order(); ++a) {
        for (Vertex b : g.neighbors(a)) {
            for (Vertex c : g.neighbors(b)) {
                if (c == a) continue;
                for (Vertex d : g.neighbors(c)) {
                    if (d != a && d != b) return P4Witness{a, b, c, d};
                }
            }
        }
    }
    return std::nullopt;
}

ComponentClassification classify_p4_free_components(const Graph& g) {
    if (find_p4(g)) throw PreconditionError("classification requires a P4-free graph");
    ComponentClassification out;
    for (VertexSet& comp : components(g)) {
        const Graph h = induced_subgraph(g, comp);
        switch (comp.size()) {
            case 1: ++out.isolated; break;
            case 2: ++out.edges; break;
            case 3:
                if (h.size() == 3) {
                    ++out.triangles;
                } else {
                    ++out.paths3;
                }
                break;
            default: out.others.push_back(std::move(comp)); break;
        }
    }
    return out;
}

}  // namespace sqenergy
