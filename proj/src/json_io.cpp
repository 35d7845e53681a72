#include "sqenergy/json_io.hpp"

#include <sstream>

#include "sqenergy/error.hpp"

namespace sqenergy {

namespace {

Json vertex_array(const VertexSet& s) {
    Json a = Json::array();
    for (Vertex v : s) a.push_back(v);
    return a;
}

template <class T>
T field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw CertificateError(std::string("certificate node missing '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw CertificateError(std::string("certificate field '") + key + "': " + e.what());
    }
}

VertexSet parse_vertices(const Json& j, std::size_t n) {
    const auto raw = field<std::vector<long long>>(j, "vertices");
    std::vector<Vertex> out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] < 0 || static_cast<std::size_t>(raw[i]) >= n) {
            throw CertificateError("vertex " + std::to_string(raw[i]) + " out of range for n = " + std::to_string(n));
        }
        if (i > 0 && raw[i] <= raw[i - 1]) throw CertificateError("vertices must be strictly ascending");
        out.push_back(static_cast<Vertex>(raw[i]));
    }
    return VertexSet(n, std::move(out));
}

CertificateNode parse_node(const Json& j, std::size_t n) {
    CertificateNode node;
    node.vertices = parse_vertices(j, n);
    node.claimed_bound = field<double>(j, "claimed_bound");
    const auto kind_name = field<std::string>(j, "kind");
    const auto kind = node_kind_from_string(kind_name);
    if (!kind) throw CertificateError("unknown certificate node kind '" + kind_name + "'");

    switch (*kind) {
        case NodeKind::Direct:
            node.payload = DirectLeaf{field<double>(j, "s_plus"), field<double>(j, "s_minus")};
            break;
        case NodeKind::Cycle:
            node.payload = CycleLeaf{field<double>(j, "s_plus"), field<double>(j, "s_minus")};
            break;
        case NodeKind::Fallback:
            node.payload =
                FallbackLeaf{field<std::string>(j, "reason"), field<double>(j, "s_plus"), field<double>(j, "s_minus")};
            break;
        case NodeKind::Bipartite: node.payload = BipartiteLeaf{field<std::size_t>(j, "m")}; break;
        case NodeKind::StarCase: {
            StarCaseLeaf leaf;
            leaf.apex = field<std::size_t>(j, "apex");
            leaf.counts = {field<std::size_t>(j, "l1"), field<std::size_t>(j, "l2"), field<std::size_t>(j, "l3"),
                           field<std::size_t>(j, "l4")};
            const auto branch_name = field<std::string>(j, "branch");
            const auto branch = star_branch_from_string(branch_name);
            if (!branch) throw CertificateError("unknown star_case branch '" + branch_name + "'");
            leaf.branch = *branch;
            node.payload = leaf;
            break;
        }
        case NodeKind::Split: {
            if (!j.contains("children") || !j.at("children").is_array()) {
                throw CertificateError("split node needs a children array");
            }
            SplitNode sp;
            for (const Json& c : j.at("children")) sp.children.push_back(parse_node(c, n));
            node.payload = std::move(sp);
            break;
        }
    }
    return node;
}

}  // namespace

Json to_json(const EnergyReport& r) {
    Json j;
    j["n"] = r.n;
    j["m"] = r.m;
    j["s_plus"] = r.s_plus;
    j["s_minus"] = r.s_minus;
    j["s"] = r.s;
    j["energy"] = r.energy;
    j["zero_threshold"] = r.zero_threshold;
    j["eigenvalues"] = r.eigenvalues;
    return j;
}

std::string energy_csv_header() { return "n,m,s_plus,s_minus,s,energy,zero_threshold"; }

std::string energy_csv_row(const EnergyReport& r) {
    std::ostringstream out;
    out << r.n << ',' << r.m << ',' << format_double(r.s_plus) << ',' << format_double(r.s_minus) << ','
        << format_double(r.s) << ',' << format_double(r.energy) << ',' << format_double(r.zero_threshold);
    return out.str();
}

Json to_json(const CertificateNode& node) {
    Json j;
    j["kind"] = std::string(to_string(node.kind()));
    j["vertices"] = vertex_array(node.vertices);
    j["claimed_bound"] = node.claimed_bound;
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, DirectLeaf> || std::is_same_v<P, CycleLeaf>) {
                j["s_plus"] = p.s_plus;
                j["s_minus"] = p.s_minus;
            } else if constexpr (std::is_same_v<P, FallbackLeaf>) {
                j["reason"] = p.reason;
                j["s_plus"] = p.s_plus;
                j["s_minus"] = p.s_minus;
            } else if constexpr (std::is_same_v<P, BipartiteLeaf>) {
                j["m"] = p.m;
            } else if constexpr (std::is_same_v<P, StarCaseLeaf>) {
                j["apex"] = p.apex;
                j["l1"] = p.counts[0];
                j["l2"] = p.counts[1];
                j["l3"] = p.counts[2];
                j["l4"] = p.counts[3];
                j["branch"] = std::string(to_string(p.branch));
            } else {
                Json children = Json::array();
                for (const auto& c : p.children) children.push_back(to_json(c));
                j["children"] = std::move(children);
            }
        },
        node.payload);
    return j;
}

Json to_json(const Certificate& cert) { return to_json(cert.root); }

Certificate certificate_from_json(const Json& j, std::size_t n, BoundTarget target) {
    return Certificate{parse_node(j, n), target};
}

Json to_json(const NodeCheck& c) {
    Json j;
    j["kind"] = std::string(to_string(c.kind));
    j["vertices"] = vertex_array(c.vertices);
    j["claimed_bound"] = c.claimed_bound;
    j["recomputed"] = c.recomputed_s;
    j["slack"] = c.slack;
    if (c.s_plus_slack) j["s_plus_slack"] = *c.s_plus_slack;
    if (c.s_minus_slack) j["s_minus_slack"] = *c.s_minus_slack;
    j["ok"] = c.ok;
    if (!c.problems.empty()) j["problems"] = c.problems;
    if (c.kind == NodeKind::Split) {
        Json children = Json::array();
        for (const auto& child : c.children) children.push_back(to_json(child));
        j["children"] = std::move(children);
    }
    return j;
}

Json to_json(const VerificationReport& report) {
    Json j;
    j["pass"] = report.pass;
    j["target"] = report.target.label();
    j["target_value"] = report.target_value;
    j["tolerances"] = {{"tau_cert", report.tolerances.cert}, {"tau_eig", report.tolerances.eig}};
    j["root"] = to_json(report.root);
    return j;
}

Json to_json(const SweepSummary& s, bool include_timing) {
    Json j;
    j["n"] = s.n;
    j["graphs_tested"] = s.graphs_tested;
    j["violations"] = s.violations;
    j["min_s"] = s.min_s;
    j["min_s_margin"] = s.min_s_margin;
    j["minimizers"] = s.minimizers;
    j["threshold_kind"] = s.threshold_kind.label();
    j["threshold"] = s.threshold;
    j["tolerances"] = {{"violation", s.tolerance}, {"tie", s.tie_tolerance}};
    j["skipped_disconnected"] = s.skipped_disconnected;
    j["solver_failures"] = s.solver_failures;
    if (include_timing) j["wall_seconds"] = s.wall_seconds;
    return j;
}

Json to_json(const PartitionSlack& slack) {
    Json j;
    j["s_plus_slack"] = slack.s_plus;
    j["s_minus_slack"] = slack.s_minus;
    return j;
}

}  // namespace sqenergy
