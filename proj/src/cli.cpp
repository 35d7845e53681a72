#include "sqenergy/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sqenergy/certifier.hpp"
#include "sqenergy/enumeration.hpp"
#include "sqenergy/graph6.hpp"
#include "sqenergy/json_io.hpp"

namespace sqenergy::cli {

namespace {

std::size_t parse_index(std::string_view text, std::string_view what) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw UsageError("invalid " + std::string(what) + " '" + std::string(text) + "'");
    }
    return v;
}

OutputFormat parse_format(const std::string& text) {
    if (text == "json") return OutputFormat::Json;
    if (text == "csv") return OutputFormat::Csv;
    if (text == "text") return OutputFormat::Text;
    throw UsageError("unknown format '" + text + "' (expected json, csv or text)");
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

// Graph inputs for commands taking a positional graph6 string or --file.
std::vector<Graph> load_graphs(const CliConfig& c) {
    if (c.graph6) return {parse_graph6(*c.graph6)};
    std::vector<Graph> out;
    for (auto& ng : ingest_graph6_file(*c.file)) out.push_back(std::move(ng.graph));
    return out;
}

Graph load_single_graph(const CliConfig& c) {
    auto graphs = load_graphs(c);
    if (graphs.size() != 1) {
        throw UsageError("this command takes exactly one graph, input has " + std::to_string(graphs.size()));
    }
    return std::move(graphs.front());
}

std::string text_report(const EnergyReport& r) {
    std::ostringstream out;
    out << "n=" << r.n << " m=" << r.m << " s_plus=" << format_double(r.s_plus)
        << " s_minus=" << format_double(r.s_minus) << " s=" << format_double(r.s)
        << " energy=" << format_double(r.energy);
    return out.str();
}

struct Emitted {
    std::string body;
    int status = kExitOk;
};

Emitted cmd_compute(const CliConfig& c) {
    const auto graphs = load_graphs(c);
    std::vector<EnergyReport> reports;
    for (const Graph& g : graphs) reports.push_back(energy_report(g, c.tol));

    std::ostringstream out;
    switch (c.format) {
        case OutputFormat::Json:
            if (c.graph6) {
                out << to_json(reports.front()).dump(2) << '\n';
            } else {
                Json arr = Json::array();
                for (const auto& r : reports) arr.push_back(to_json(r));
                out << arr.dump(2) << '\n';
            }
            break;
        case OutputFormat::Csv:
            out << energy_csv_header() << '\n';
            for (const auto& r : reports) out << energy_csv_row(r) << '\n';
            break;
        case OutputFormat::Text:
            for (const auto& r : reports) out << text_report(r) << '\n';
            break;
    }
    return {out.str(), kExitOk};
}

Emitted cmd_certify(const CliConfig& c) {
    const auto graphs = load_graphs(c);
    const BoundTarget target = c.bound.value_or(BoundTarget::three_quarters());
    std::ostringstream out;
    Json arr = Json::array();
    int status = kExitOk;
    for (const Graph& g : graphs) {
        const Certificate cert = certify_three_quarters(g, target, c.tol);
        const VerificationReport report = verify_certificate(g, cert, c.tol);
        if (!cert.target_met() || !report.pass) status = kExitFailed;
        if (c.format == OutputFormat::Json) {
            arr.push_back(to_json(cert));
        } else {
            const CertificateStats st = summarize(cert);
            out << "n=" << g.order() << " bound=" << format_double(cert.root.claimed_bound)
                << " target=" << target.label() << "=" << format_double(target.value(g.order()))
                << " root=" << to_string(cert.root.kind()) << " nodes=" << st.nodes
                << " fallbacks=" << st.count(NodeKind::Fallback) << " verified=" << (report.pass ? "yes" : "no")
                << '\n';
        }
    }
    if (c.format == OutputFormat::Json) out << (c.graph6 ? arr.front() : arr).dump(2) << '\n';
    return {out.str(), status};
}

Emitted cmd_verify(const CliConfig& c) {
    const Graph g = load_single_graph(c);
    std::ifstream in(*c.cert_path);
    if (!in) throw UsageError("cannot open certificate file '" + c.cert_path->string() + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw CertificateError(std::string("malformed certificate JSON: ") + e.what());
    }
    const Certificate cert =
        certificate_from_json(j, g.order(), c.bound.value_or(BoundTarget::three_quarters()));
    const VerificationReport report = verify_certificate(g, cert, c.tol);

    std::ostringstream out;
    if (c.format == OutputFormat::Json) {
        out << to_json(report).dump(2) << '\n';
    } else {
        out << (report.pass ? "PASS" : "FAIL") << " root_claimed=" << format_double(report.root.claimed_bound)
            << " root_recomputed=" << format_double(report.root.recomputed_s)
            << " root_slack=" << format_double(report.root.slack) << '\n';
    }
    return {out.str(), report.pass ? kExitOk : kExitFailed};
}

Emitted cmd_sweep(const CliConfig& c) {
    SweepOptions opt;
    opt.threshold = c.bound.value_or(BoundTarget::n_minus_one());
    opt.connected_only = c.connected_only;
    opt.top_k = c.top_k;
    opt.workers = c.threads;
    opt.tolerance = c.tol.cert;
    opt.spectral = c.tol;

    std::vector<SweepSummary> summaries;
    if (c.builtin) {
        for (std::size_t n = c.builtin->first; n <= c.builtin->second; ++n) {
            for (auto& s : sweep(BuiltinSource{n}, opt)) summaries.push_back(std::move(s));
        }
    } else {
        summaries = sweep(FileSource{*c.file}, opt);
    }

    int status = kExitOk;
    for (const auto& s : summaries) {
        if (s.violations > 0 || s.solver_failures > 0) status = kExitFailed;
    }
    std::ostringstream out;
    if (c.format == OutputFormat::Json) {
        Json arr = Json::array();
        for (const auto& s : summaries) arr.push_back(to_json(s, c.timing));
        out << arr.dump(2) << '\n';
    } else {
        for (const auto& s : summaries) {
            out << digest(s);
            if (c.timing) out << " seconds=" << format_double(s.wall_seconds);
            out << '\n';
        }
    }
    return {out.str(), status};
}

Emitted cmd_split_check(const CliConfig& c) {
    const Graph g = load_single_graph(c);
    std::vector<VertexSet> parts;
    for (auto& p : parse_parts(*c.parts)) parts.emplace_back(g.order(), std::move(p));
    const PartitionSlack slack = partition_inequality_check(g, parts, c.tol);
    const bool ok = slack.s_plus >= -c.tol.cert && slack.s_minus >= -c.tol.cert;

    std::ostringstream out;
    if (c.format == OutputFormat::Json) {
        out << to_json(slack).dump(2) << '\n';
    } else {
        out << "s_plus_slack=" << format_double(slack.s_plus) << " s_minus_slack=" << format_double(slack.s_minus)
            << '\n';
    }
    return {out.str(), ok ? kExitOk : kExitFailed};
}

}  // namespace

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const std::size_t n = parse_index(text, "range");
        return {n, n};
    }
    const std::size_t a = parse_index(std::string_view(text).substr(0, dots), "range start");
    const std::size_t b = parse_index(std::string_view(text).substr(dots + 2), "range end");
    if (a > b) throw UsageError("empty range '" + text + "'");
    return {a, b};
}

std::vector<std::vector<std::size_t>> parse_parts(const std::string& text) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& part : split(text, ';')) {
        std::vector<std::size_t> members;
        for (const auto& item : split(part, ',')) {
            if (!item.empty()) members.push_back(parse_index(item, "vertex"));
        }
        if (members.empty()) throw UsageError("empty part in '" + text + "'");
        out.push_back(std::move(members));
    }
    if (out.empty()) throw UsageError("no parts given");
    return out;
}

void validate(const CliConfig& c) {
    const int inputs = static_cast<int>(c.graph6.has_value()) + static_cast<int>(c.file.has_value()) +
                       static_cast<int>(c.builtin.has_value());
    if (inputs != 1) throw UsageError("give exactly one input: a graph6 string, --file or --builtin");
    if (c.builtin && c.command != Command::Sweep) throw UsageError("--builtin is only valid for sweep");
    if (c.command == Command::Sweep && c.graph6) throw UsageError("sweep takes --builtin or --file");
    if (c.builtin && (c.builtin->first < 1 || c.builtin->second > kMaxBuiltinOrder)) {
        throw UsageError("--builtin range must lie within 1.." + std::to_string(kMaxBuiltinOrder));
    }
    if (c.command == Command::VerifyCert && !c.cert_path) throw UsageError("verify-cert needs --cert <path>");
    if (c.command != Command::VerifyCert && c.cert_path) throw UsageError("--cert is only valid for verify-cert");
    if (c.command == Command::SplitCheck && !c.parts) throw UsageError("split-check needs --parts");
    if (c.command != Command::SplitCheck && c.parts) throw UsageError("--parts is only valid for split-check");
    if (c.format == OutputFormat::Csv && c.command != Command::Compute) {
        throw UsageError("csv output is only available for compute");
    }
    if (c.threads < 1) throw UsageError("--threads must be at least 1");
    if (!(c.tol.eig > 0.0) || !(c.tol.cert > 0.0)) throw UsageError("tolerances must be positive");
}

std::optional<CliConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
    CLI::App app{"Square energy of graphs: spectra, certificates and exhaustive sweeps", "sqenergy"};
    app.require_subcommand(1);

    struct Raw {
        std::string graph6, file, builtin, cert, parts, bound, format = "json", out;
        double tol_eig = Tolerances{}.eig;
        double tol_cert = Tolerances{}.cert;
        std::size_t threads = 1;
        std::size_t top_k = 10;
        bool connected_only = true;
        bool timing = false;
    } raw;

    const std::vector<std::pair<Command, std::pair<const char*, const char*>>> commands{
        {Command::Compute, {"compute", "Energy report (s+, s-, s, energy) for each input graph"}},
        {Command::Certify, {"certify", "Build and self-check a certificate that s(G) meets the bound"}},
        {Command::VerifyCert, {"verify-cert", "Verify a certificate JSON file against a graph"}},
        {Command::Sweep, {"sweep", "Check s(G) against the bound over a stream of graphs"}},
        {Command::SplitCheck, {"split-check", "Superadditivity slacks for a vertex partition"}},
    };

    for (const auto& [cmd, names] : commands) {
        CLI::App* sub = app.add_subcommand(names.first, names.second);
        if (cmd != Command::Sweep) sub->add_option("graph6", raw.graph6, "graph6-encoded input graph");
        sub->add_option("--file", raw.file, "File with one graph6 string per line");
        if (cmd == Command::Sweep) sub->add_option("--builtin", raw.builtin, "Order range a..b of built-in enumeration");
        if (cmd == Command::VerifyCert) sub->add_option("--cert", raw.cert, "Certificate JSON file");
        if (cmd == Command::SplitCheck) sub->add_option("--parts", raw.parts, "Parts, e.g. \"0,1;2,3\"");
        sub->add_option("--bound", raw.bound, "n-1 | 3n/4 | <real>");
        sub->add_option("--format", raw.format, "json | csv | text");
        sub->add_option("--out", raw.out, "Write the report to this path");
        sub->add_option("--threads", raw.threads, "Worker threads for sweeps");
        sub->add_option("--tol-eig", raw.tol_eig, "Eigen residual tolerance");
        sub->add_option("--tol-cert", raw.tol_cert, "Certificate / violation tolerance");
        sub->add_option("--top-k", raw.top_k, "Minimizers kept per order");
        sub->add_flag("--connected-only,!--all-graphs", raw.connected_only,
                      "Skip disconnected graphs in file sweeps (default on)");
        sub->add_flag("--timing", raw.timing, "Include wall time in sweep output");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    CliConfig c;
    for (const auto& [cmd, names] : commands) {
        if (app.got_subcommand(names.first)) c.command = cmd;
    }
    if (!raw.graph6.empty()) c.graph6 = raw.graph6;
    if (!raw.file.empty()) c.file = raw.file;
    if (!raw.builtin.empty()) c.builtin = parse_range(raw.builtin);
    if (!raw.cert.empty()) c.cert_path = raw.cert;
    if (!raw.parts.empty()) c.parts = raw.parts;
    if (!raw.bound.empty()) {
        try {
            c.bound = BoundTarget::parse(raw.bound);
        } catch (const ParseError& e) {
            throw UsageError(e.what());
        }
    }
    c.format = parse_format(raw.format);
    if (!raw.out.empty()) c.out = raw.out;
    c.tol.eig = raw.tol_eig;
    c.tol.cert = raw.tol_cert;
    c.threads = raw.threads;
    c.top_k = raw.top_k;
    c.connected_only = raw.connected_only;
    c.timing = raw.timing;
    validate(c);
    return c;
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
    Emitted result;
    try {
        validate(config);
        switch (config.command) {
            case Command::Compute: result = cmd_compute(config); break;
            case Command::Certify: result = cmd_certify(config); break;
            case Command::VerifyCert: result = cmd_verify(config); break;
            case Command::Sweep: result = cmd_sweep(config); break;
            case Command::SplitCheck: result = cmd_split_check(config); break;
        }
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailed;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    if (config.out) {
        std::ofstream file(*config.out);
        if (!file) {
            err << "error: cannot write '" << config.out->string() << "'\n";
            return kExitUsage;
        }
        file << result.body;
    } else {
        out << result.body;
    }
    return result.status;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::optional<CliConfig> config;
    try {
        config = parse_args(argc, argv, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    if (!config) return kExitOk;
    return run(*config, out, err);
}

}  // namespace sqenergy::cli
