#include "sqenergy/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sqenergy/error.hpp"

namespace sqenergy {

namespace {

constexpr double kBoundSlop = 1e-9;
constexpr std::size_t kDirectMaxOrder = 10;
constexpr std::size_t kMinPartOrder = 4;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Union-find over local vertex labels, tracking component sizes.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

    std::size_t size_of(std::size_t x) { return size_[find(x)]; }

    std::vector<Vertex> members_of(std::size_t x) {
        const std::size_t r = find(x);
        std::vector<Vertex> out;
        for (std::size_t v = 0; v < parent_.size(); ++v) {
            if (find(v) == r) out.push_back(v);
        }
        return out;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

// Local-to-global relabelling for a part of the root graph.
VertexSet lift(const VertexSet& global, const std::vector<Vertex>& local) {
    std::vector<Vertex> out;
    out.reserve(local.size());
    for (Vertex v : local) out.push_back(global[v]);
    return VertexSet(global.universe(), std::move(out));
}

// Vertices of the subtree hanging below `top` in a rooted spanning tree.
std::vector<Vertex> subtree(const SpanningTree& tree, Vertex top) {
    const std::size_t n = tree.parent.size();
    std::vector<std::vector<Vertex>> kids(n);
    for (Vertex w = 0; w < n; ++w) {
        if (tree.parent[w]) kids[*tree.parent[w]].push_back(w);
    }
    std::vector<Vertex> out{top};
    for (std::size_t head = 0; head < out.size(); ++head) {
        for (Vertex w : kids[out[head]]) out.push_back(w);
    }
    return out;
}

struct LocalSplit {
    std::vector<Vertex> part;  // local labels; the other side is its complement
};

class Builder {
public:
    Builder(const Graph& root, const Tolerances& tol) : root_(root), tol_(tol) {}

    CertificateNode certify(const VertexSet& s) {
        const Graph h = induced_subgraph(root_, s);

        const auto comps = components(h);
        if (comps.size() > 1) {
            std::vector<VertexSet> parts;
            for (const VertexSet& c : comps) parts.push_back(lift(s, c.members()));
            return split(s, parts);
        }

        const std::size_t k = s.size();
        if (k <= kDirectMaxOrder) {
            const EnergyReport r = energy_report(h, tol_);
            return {s, r.s, DirectLeaf{r.s_plus, r.s_minus}};
        }
        if (is_bipartite(h)) return {s, static_cast<double>(h.size()), BipartiteLeaf{h.size()}};
        if (is_cycle(h)) {
            const EnergyReport r = energy_report(h, tol_);
            return {s, r.s, CycleLeaf{r.s_plus, r.s_minus}};
        }

        Vertex apex = 0;
        for (Vertex v = 1; v < k; ++v) {
            if (h.degree(v) > h.degree(apex)) apex = v;
        }
        const std::size_t delta = h.degree(apex);
        const SpanningTree tree = bfs_spanning_tree(h, apex);

        if (delta <= 3) {
            if (auto cut = balanced_edge(tree, k)) return split_local(s, *cut);
            return fallback(s, h, kReasonNoBalancedEdge);
        }
        if (auto branch = large_branch(tree, apex)) return split_local(s, *branch);
        return apex_cases(s, h, tree, apex);
    }

private:
    // Max degree 3: an edge of T whose removal leaves two sides of order >= 4.
    static std::optional<LocalSplit> balanced_edge(const SpanningTree& tree, std::size_t k) {
        for (const Edge& e : tree.edges) {
            const Vertex child = (tree.parent[e.v] && *tree.parent[e.v] == e.u) ? e.v : e.u;
            auto below = subtree(tree, child);
            if (below.size() >= kMinPartOrder && k - below.size() >= kMinPartOrder) return LocalSplit{std::move(below)};
        }
        return std::nullopt;
    }

    // Max degree >= 4: a component of T - v of order >= 4.
    static std::optional<LocalSplit> large_branch(const SpanningTree& tree, Vertex apex) {
        std::vector<std::vector<Vertex>> branches;
        for (Vertex w = 0; w < tree.parent.size(); ++w) {
            if (tree.parent[w] && *tree.parent[w] == apex) branches.push_back(subtree(tree, w));
        }
        for (auto& b : branches) std::sort(b.begin(), b.end());
        std::sort(branches.begin(), branches.end());
        for (auto& b : branches) {
            if (b.size() >= kMinPartOrder) return LocalSplit{std::move(b)};
        }
        return std::nullopt;
    }

    CertificateNode apex_cases(const VertexSet& s, const Graph& h, const SpanningTree& tree, Vertex apex) {
        const std::size_t k = s.size();
        const VertexSet rest_local = complement(VertexSet(k, {apex}));
        const Graph minus_apex = induced_subgraph(h, rest_local);

        if (auto p4 = find_p4(minus_apex)) {
            P4Witness path{};
            for (std::size_t i = 0; i < 4; ++i) path[i] = rest_local[(*p4)[i]];
            return split_local(s, p4_component(tree, apex, path, k));
        }

        const ComponentClassification cls = classify_p4_free_components(minus_apex);
        if (!cls.others.empty()) return fallback(s, h, kReasonNonStandardComponent);

        if (k == 11) {
            for (const Edge& e : h.edges()) {
                if (e.u == apex || e.v == apex) continue;
                const VertexSet pair(k, {e.u, e.v});
                if (is_connected(induced_subgraph(h, complement(pair)))) return split_local(s, LocalSplit{pair.members()});
            }
            return fallback(s, h, kReasonNoEdgeForOrder11);
        }

        StarCaseLeaf leaf;
        leaf.apex = s[apex];
        leaf.counts = {cls.triangles, cls.paths3, cls.edges, cls.isolated};
        leaf.branch = cls.triangles >= 1 ? StarBranch::TrianglePresent : StarBranch::TriangleFree;
        return {s, static_cast<double>(k) - 3.0, leaf};
    }

    // Component of T - v + e of order >= 4 for the first edge e of H that
    // produces one, otherwise the component of T - v + E(H) containing H.
    static LocalSplit p4_component(const SpanningTree& tree, Vertex apex, const P4Witness& path, std::size_t k) {
        DisjointSets forest(k);
        for (const Edge& e : tree.edges) {
            if (e.u != apex && e.v != apex) forest.unite(e.u, e.v);
        }
        for (std::size_t i = 0; i + 1 < 4; ++i) {
            DisjointSets trial = forest;
            trial.unite(path[i], path[i + 1]);
            if (trial.size_of(path[i]) >= kMinPartOrder) return LocalSplit{trial.members_of(path[i])};
        }
        for (std::size_t i = 0; i + 1 < 4; ++i) forest.unite(path[i], path[i + 1]);
        return LocalSplit{forest.members_of(path[0])};
    }

    CertificateNode split_local(const VertexSet& s, const LocalSplit& cut) {
        const VertexSet part(s.size(), cut.part);
        const VertexSet a = lift(s, part.members());
        const VertexSet b = lift(s, complement(part).members());
        std::vector<VertexSet> parts{a, b};
        std::sort(parts.begin(), parts.end(), [](const VertexSet& x, const VertexSet& y) { return x[0] < y[0]; });
        return split(s, parts);
    }

    CertificateNode split(const VertexSet& s, const std::vector<VertexSet>& parts) {
        SplitNode node;
        double total = 0.0;
        for (const VertexSet& p : parts) {
            node.children.push_back(certify(p));
            total += node.children.back().claimed_bound;
        }
        const std::size_t k = s.size();
        if (k >= kMinPartOrder && total < 0.75 * static_cast<double>(k) - kBoundSlop) {
            return fallback(s, induced_subgraph(root_, s), kReasonSplitBelowTarget);
        }
        return {s, total, std::move(node)};
    }

    CertificateNode fallback(const VertexSet& s, const Graph& h, std::string_view reason) {
        const EnergyReport r = energy_report(h, tol_);
        return {s, r.s, FallbackLeaf{std::string(reason), r.s_plus, r.s_minus}};
    }

    const Graph& root_;
    const Tolerances& tol_;
};

void collect(const CertificateNode& node, std::size_t depth, CertificateStats& stats) {
    ++stats.nodes;
    ++stats.by_kind[static_cast<std::size_t>(node.kind())];
    stats.depth = std::max(stats.depth, depth);
    if (const auto* sp = std::get_if<SplitNode>(&node.payload)) {
        for (const auto& c : sp->children) collect(c, depth + 1, stats);
    }
}

// ------------------------------------------------------------ verification

class Verifier {
public:
    Verifier(const Graph& g, const Tolerances& tol) : g_(g), tol_(tol) {}

    NodeCheck check(const CertificateNode& node) {
        NodeCheck out;
        out.kind = node.kind();
        out.vertices = node.vertices;
        out.claimed_bound = node.claimed_bound;

        if (node.vertices.universe() != g_.order()) {
            fail(out, "vertex set refers to a graph of order " + std::to_string(node.vertices.universe()));
            return out;
        }

        const Graph h = induced_subgraph(g_, node.vertices);
        const EnergyReport r = energy_report(h, tol_);
        out.recomputed_s = r.s;
        out.recomputed_s_plus = r.s_plus;
        out.recomputed_s_minus = r.s_minus;
        out.slack = r.s - node.claimed_bound;
        if (!std::isfinite(node.claimed_bound)) fail(out, "claimed bound is not finite");
        if (out.slack < -tol_.cert) fail(out, "claimed bound exceeds recomputed s");

        std::visit(Overloaded{
                       [&](const DirectLeaf& leaf) { check_numeric(out, leaf.s_plus, leaf.s_minus); },
                       [&](const CycleLeaf& leaf) {
                           if (!is_cycle(h)) fail(out, "cycle leaf does not induce a cycle");
                           check_numeric(out, leaf.s_plus, leaf.s_minus);
                       },
                       [&](const FallbackLeaf& leaf) { check_numeric(out, leaf.s_plus, leaf.s_minus); },
                       [&](const BipartiteLeaf& leaf) {
                           if (!is_bipartite(h)) fail(out, "bipartite leaf is not bipartite");
                           if (leaf.m != h.size()) fail(out, "recorded edge count does not match");
                           if (std::abs(node.claimed_bound - static_cast<double>(h.size())) > tol_.cert) {
                               fail(out, "bipartite leaf must claim its edge count");
                           }
                       },
                       [&](const StarCaseLeaf& leaf) { check_star(out, node, h, leaf); },
                       [&](const SplitNode& sp) { check_split(out, node, sp); },
                   },
                   node.payload);
        return out;
    }

private:
    static void fail(NodeCheck& out, std::string problem) {
        out.ok = false;
        out.problems.push_back(std::move(problem));
    }

    void check_numeric(NodeCheck& out, double s_plus, double s_minus) const {
        if (std::abs(s_plus - out.recomputed_s_plus) > tol_.cert) fail(out, "recorded s_plus does not match");
        if (std::abs(s_minus - out.recomputed_s_minus) > tol_.cert) fail(out, "recorded s_minus does not match");
    }

    void check_star(NodeCheck& out, const CertificateNode& node, const Graph& h, const StarCaseLeaf& leaf) const {
        const std::size_t k = node.vertices.size();
        if (k < 12) fail(out, "star case requires order >= 12");
        if (!node.vertices.contains(leaf.apex)) {
            fail(out, "apex not in the node's vertex set");
            return;
        }
        const auto local_apex = static_cast<Vertex>(
            std::lower_bound(node.vertices.begin(), node.vertices.end(), leaf.apex) - node.vertices.begin());
        const Graph rest = induced_subgraph(h, complement(VertexSet(k, {local_apex})));
        if (find_p4(rest)) {
            fail(out, "graph minus apex contains a P4");
            return;
        }
        const ComponentClassification cls = classify_p4_free_components(rest);
        const std::array<std::size_t, 4> counts{cls.triangles, cls.paths3, cls.edges, cls.isolated};
        if (!cls.others.empty()) fail(out, "graph minus apex has components other than K3, P3, K2, K1");
        if (counts != leaf.counts) fail(out, "component counts do not match");
        const StarBranch expect = cls.triangles >= 1 ? StarBranch::TrianglePresent : StarBranch::TriangleFree;
        if (leaf.branch != expect) fail(out, "branch tag inconsistent with triangle count");

        const double bound = static_cast<double>(k) - 3.0;
        if (std::abs(node.claimed_bound - bound) > tol_.cert) fail(out, "star case must claim order - 3");
        if (out.recomputed_s_plus < bound - tol_.cert) fail(out, "s_plus below order - 3");
        if (out.recomputed_s_minus < bound - tol_.cert) fail(out, "s_minus below order - 3");
    }

    void check_split(NodeCheck& out, const CertificateNode& node, const SplitNode& sp) {
        if (sp.children.size() < 2) fail(out, "split node needs at least two children");

        std::vector<int> owner(g_.order(), -1);
        std::size_t covered = 0;
        double claimed_sum = 0.0;
        double plus_sum = 0.0;
        double minus_sum = 0.0;
        for (std::size_t i = 0; i < sp.children.size(); ++i) {
            const CertificateNode& child = sp.children[i];
            for (Vertex v : child.vertices) {
                if (v >= g_.order() || !node.vertices.contains(v)) {
                    fail(out, "child vertex " + std::to_string(v) + " outside the node's vertex set");
                    continue;
                }
                if (owner[v] >= 0) {
                    fail(out, "children overlap at vertex " + std::to_string(v));
                    continue;
                }
                owner[v] = static_cast<int>(i);
                ++covered;
            }
            NodeCheck c = check(child);
            claimed_sum += child.claimed_bound;
            plus_sum += c.recomputed_s_plus;
            minus_sum += c.recomputed_s_minus;
            if (!c.ok) fail(out, "child " + std::to_string(i) + " failed");
            out.children.push_back(std::move(c));
        }
        if (covered != node.vertices.size()) fail(out, "children do not cover the node's vertex set");
        if (std::abs(claimed_sum - node.claimed_bound) > tol_.cert) fail(out, "claimed bound is not the sum of children");

        out.s_plus_slack = out.recomputed_s_plus - plus_sum;
        out.s_minus_slack = out.recomputed_s_minus - minus_sum;
        if (*out.s_plus_slack < -tol_.cert) fail(out, "s_plus superadditivity violated");
        if (*out.s_minus_slack < -tol_.cert) fail(out, "s_minus superadditivity violated");
    }

    const Graph& g_;
    const Tolerances& tol_;
};

}  // namespace

std::string_view to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Direct: return "direct";
        case NodeKind::Bipartite: return "bipartite";
        case NodeKind::Cycle: return "cycle";
        case NodeKind::Split: return "split";
        case NodeKind::StarCase: return "star_case";
        case NodeKind::Fallback: return "fallback";
    }
    return "unknown";
}

std::optional<NodeKind> node_kind_from_string(std::string_view name) {
    for (auto k : {NodeKind::Direct, NodeKind::Bipartite, NodeKind::Cycle, NodeKind::Split, NodeKind::StarCase,
                   NodeKind::Fallback}) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

std::string_view to_string(StarBranch branch) {
    return branch == StarBranch::TrianglePresent ? "l1_positive" : "l1_zero";
}

std::optional<StarBranch> star_branch_from_string(std::string_view name) {
    if (name == "l1_positive") return StarBranch::TrianglePresent;
    if (name == "l1_zero") return StarBranch::TriangleFree;
    return std::nullopt;
}

NodeKind CertificateNode::kind() const noexcept {
    return std::visit(Overloaded{
                          [](const DirectLeaf&) { return NodeKind::Direct; },
                          [](const BipartiteLeaf&) { return NodeKind::Bipartite; },
                          [](const CycleLeaf&) { return NodeKind::Cycle; },
                          [](const SplitNode&) { return NodeKind::Split; },
                          [](const StarCaseLeaf&) { return NodeKind::StarCase; },
                          [](const FallbackLeaf&) { return NodeKind::Fallback; },
                      },
                      payload);
}

bool Certificate::target_met() const {
    return root.claimed_bound >= target.value(root.vertices.size()) - kBoundSlop;
}

CertificateStats summarize(const Certificate& cert) {
    CertificateStats stats;
    collect(cert.root, 0, stats);
    return stats;
}

Certificate certify_three_quarters(const Graph& g, BoundTarget target, const Tolerances& tol) {
    if (g.order() < 4) {
        throw PreconditionError("certification requires order n >= 4, got n = " + std::to_string(g.order()));
    }
    if (!is_connected(g)) throw PreconditionError("certification requires a connected graph");

    Builder builder(g, tol);
    Certificate cert{builder.certify(VertexSet::all(g.order())), target};
    if (!cert.target_met() && cert.root.kind() != NodeKind::Direct && cert.root.kind() != NodeKind::Fallback) {
        const EnergyReport r = energy_report(g, tol);
        if (r.s > cert.root.claimed_bound) {
            cert.root = CertificateNode{VertexSet::all(g.order()), r.s,
                                        FallbackLeaf{std::string(kReasonRootBelowTarget), r.s_plus, r.s_minus}};
        }
    }
    return cert;
}

VerificationReport verify_certificate(const Graph& g, const Certificate& cert, const Tolerances& tol) {
    if (cert.root.vertices != VertexSet::all(g.order())) {
        throw CertificateError("certificate root vertex set does not match the graph's vertex set");
    }
    VerificationReport report;
    report.target = cert.target;
    report.target_value = cert.target.value(g.order());
    report.tolerances = tol;
    report.root = Verifier(g, tol).check(cert.root);
    if (cert.root.claimed_bound < report.target_value - kBoundSlop) {
        report.root.ok = false;
        report.root.problems.push_back("root bound below target " + cert.target.label());
    }
    report.pass = report.root.ok;
    return report;
}

PartitionSlack partition_inequality_check(const Graph& g, const std::vector<VertexSet>& parts, const Tolerances& tol) {
    std::vector<bool> used(g.order(), false);
    for (const VertexSet& p : parts) {
        for (Vertex v : p) {
            if (v >= g.order()) throw PreconditionError("part member " + std::to_string(v) + " out of range");
            if (used[v]) throw PreconditionError("parts overlap at vertex " + std::to_string(v));
            used[v] = true;
        }
    }
    const EnergyReport whole = energy_report(g, tol);
    PartitionSlack slack{whole.s_plus, whole.s_minus};
    for (const VertexSet& p : parts) {
        const EnergyReport r = energy_report(induced_subgraph(g, p), tol);
        slack.s_plus -= r.s_plus;
        slack.s_minus -= r.s_minus;
    }
    return slack;
}

}  // namespace sqenergy
