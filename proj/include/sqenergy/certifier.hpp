#pragma once

// Certificates witnessing s(G) >= 3n/4 for connected graphs.
//
// A certificate is a tree. Leaves carry bounds that are checked directly
// (eigenvalues of the leaf's induced subgraph, bipartiteness, or the
// apex-star interlacing argument); internal SplitNodes partition their vertex
// set and claim the sum of their children's bounds, which is sound because
// s+ and s- are both superadditive over vertex-disjoint induced subgraphs.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sqenergy/bound.hpp"
#include "sqenergy/graph.hpp"
#include "sqenergy/spectral.hpp"

namespace sqenergy {

enum class NodeKind { Direct, Bipartite, Cycle, Split, StarCase, Fallback };

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> node_kind_from_string(std::string_view name);

// Which interlacing chain bounds s+ at a star-case leaf.
enum class StarBranch { TrianglePresent, TriangleFree };

std::string_view to_string(StarBranch branch);
std::optional<StarBranch> star_branch_from_string(std::string_view name);

struct CertificateNode;

// Small part (order <= 10) evaluated numerically; claims min(s+, s-).
struct DirectLeaf {
    double s_plus = 0.0;
    double s_minus = 0.0;
};

// Bipartite part; claims its edge count.
struct BipartiteLeaf {
    std::size_t m = 0;
};

struct CycleLeaf {
    double s_plus = 0.0;
    double s_minus = 0.0;
};

// Children partition the node's vertex set.
struct SplitNode {
    std::vector<CertificateNode> children;
};

// Apex v whose removal leaves l1 K3 + l2 P3 + l3 K2 + l4 K1; claims order - 3.
struct StarCaseLeaf {
    Vertex apex = 0;
    std::array<std::size_t, 4> counts{};  // l1..l4
    StarBranch branch = StarBranch::TriangleFree;
};

// Numeric bound for parts the case analysis does not reach.
struct FallbackLeaf {
    std::string reason;
    double s_plus = 0.0;
    double s_minus = 0.0;
};

struct CertificateNode {
    VertexSet vertices;  // relative to the root graph
    double claimed_bound = 0.0;
    std::variant<DirectLeaf, BipartiteLeaf, CycleLeaf, SplitNode, StarCaseLeaf, FallbackLeaf> payload;

    NodeKind kind() const noexcept;
};

struct Certificate {
    CertificateNode root;
    BoundTarget target;

    // Root bound reaches target.value(n) (up to 1e-9).
    bool target_met() const;
};

struct CertificateStats {
    std::size_t nodes = 0;
    std::size_t depth = 0;
    std::array<std::size_t, 6> by_kind{};  // indexed by NodeKind

    std::size_t count(NodeKind k) const { return by_kind[static_cast<std::size_t>(k)]; }
};

CertificateStats summarize(const Certificate& cert);

// Fallback reasons.
inline constexpr std::string_view kReasonNonStandardComponent = "p4_free_component_outside_k3_p3_k2_k1";
inline constexpr std::string_view kReasonNoEdgeForOrder11 = "no_edge_with_connected_remainder";
inline constexpr std::string_view kReasonNoBalancedEdge = "no_balanced_tree_edge";
inline constexpr std::string_view kReasonSplitBelowTarget = "split_bound_below_3k_over_4";
inline constexpr std::string_view kReasonRootBelowTarget = "structural_bound_below_requested_target";

// Builds a certificate by the case analysis:
//   order <= 10 direct; bipartite; cycle; max-degree BFS tree with a balanced
//   edge split when the max degree is 3; a large branch of T - v; a P4 in
//   G - v; otherwise the apex-star case (order >= 12) or an edge split (order 11).
// Anything outside the enumeration becomes a FallbackLeaf.
//
// Throws PreconditionError for disconnected g or order < 4. If even the
// numeric bound misses the target the returned certificate has
// target_met() == false.
Certificate certify_three_quarters(const Graph& g, BoundTarget target = BoundTarget::three_quarters(),
                                   const Tolerances& tol = {});

struct NodeCheck {
    NodeKind kind = NodeKind::Direct;
    VertexSet vertices;
    double claimed_bound = 0.0;
    double recomputed_s = 0.0;
    double recomputed_s_plus = 0.0;
    double recomputed_s_minus = 0.0;
    double slack = 0.0;  // recomputed_s - claimed_bound
    // Split nodes only: s+(node) - sum s+(children), likewise for s-.
    std::optional<double> s_plus_slack;
    std::optional<double> s_minus_slack;
    bool ok = true;
    std::vector<std::string> problems;
    std::vector<NodeCheck> children;
};

struct VerificationReport {
    bool pass = false;
    double target_value = 0.0;
    BoundTarget target;
    Tolerances tolerances;
    NodeCheck root;
};

// Recomputes every node. Throws CertificateError if the root vertex set is
// not all of V(g); every other defect is reported as a failed node.
VerificationReport verify_certificate(const Graph& g, const Certificate& cert, const Tolerances& tol = {});

struct PartitionSlack {
    double s_plus = 0.0;
    double s_minus = 0.0;
};

// (s+(g) - sum s+(g[part]), s-(g) - sum s-(g[part])). Parts must be disjoint;
// they need not cover V(g). Throws PreconditionError on overlap.
PartitionSlack partition_inequality_check(const Graph& g, const std::vector<VertexSet>& parts,
                                          const Tolerances& tol = {});

}  // namespace sqenergy
