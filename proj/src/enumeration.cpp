#include "sqenergy/enumeration.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "sqenergy/error.hpp"
#include "sqenergy/graph6.hpp"

namespace sqenergy {

namespace {

void check_builtin_order(std::size_t n) {
    if (n < 1 || n > kMaxBuiltinOrder) {
        throw PreconditionError("built-in enumeration supports 1 <= n <= " + std::to_string(kMaxBuiltinOrder) +
                                ", got n = " + std::to_string(n));
    }
}

// Per-order running aggregate. merge() is associative and commutative, so
// the final summary does not depend on how the stream was partitioned.
struct Accumulator {
    std::size_t graphs = 0;
    std::size_t skipped = 0;
    std::size_t failures = 0;
    std::size_t violations = 0;
    double min_s = std::numeric_limits<double>::infinity();
    double min_margin = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, std::string>> candidates;

    void prune(double tie) {
        std::erase_if(candidates, [&](const auto& c) { return c.first > min_s + tie; });
    }

    void add(const Graph& g, const SweepOptions& opt) {
        if (opt.connected_only && !is_connected(g)) {
            ++skipped;
            return;
        }
        double s = 0.0;
        try {
            const std::vector<double> values = eigenvalues(g);
            double sum = 0.0;
            double sq = 0.0;
            for (double x : values) {
                sum += x;
                sq += x * x;
            }
            const double two_m = 2.0 * static_cast<double>(g.size());
            const auto n = static_cast<double>(g.order());
            if (std::abs(sum) > opt.spectral.trace * std::max(1.0, n) ||
                std::abs(sq - two_m) > opt.spectral.trace * std::max(1.0, two_m)) {
                ++failures;
                return;
            }
            s = square_energies(values, g.size(), opt.spectral).s;
        } catch (const ConvergenceError&) {
            ++failures;
            return;
        }

        ++graphs;
        const double margin = s - opt.threshold.value(g.order());
        if (margin < -opt.tolerance) ++violations;
        min_margin = std::min(min_margin, margin);
        if (s < min_s) {
            min_s = s;
            prune(opt.tie_tolerance);
        }
        if (s <= min_s + opt.tie_tolerance) candidates.emplace_back(s, to_graph6(g));
    }

    void merge(Accumulator&& other, double tie) {
        graphs += other.graphs;
        skipped += other.skipped;
        failures += other.failures;
        violations += other.violations;
        min_s = std::min(min_s, other.min_s);
        min_margin = std::min(min_margin, other.min_margin);
        candidates.insert(candidates.end(), std::make_move_iterator(other.candidates.begin()),
                          std::make_move_iterator(other.candidates.end()));
        prune(tie);
    }
};

using AccumulatorMap = std::map<std::size_t, Accumulator>;

void merge_into(AccumulatorMap& into, AccumulatorMap&& from, double tie) {
    for (auto& [n, acc] : from) into[n].merge(std::move(acc), tie);
}

// Splits [0, total) into chunks processed by `workers` threads; each chunk
// fills its own map, and the maps are merged in chunk order.
template <class Work>
AccumulatorMap run_chunks(std::uint64_t total, std::size_t workers, double tie, Work work) {
    workers = std::max<std::size_t>(1, workers);
    const std::uint64_t chunk_count = std::min<std::uint64_t>(std::max<std::uint64_t>(total, 1), workers * 16);
    const std::uint64_t chunk = (total + chunk_count - 1) / chunk_count;
    std::vector<AccumulatorMap> partial(chunk_count);
    std::atomic<std::uint64_t> next{0};
    std::vector<std::exception_ptr> errors(workers);

    auto body = [&](std::size_t w) {
        try {
            for (std::uint64_t c = next++; c < chunk_count; c = next++) {
                const std::uint64_t lo = c * chunk;
                const std::uint64_t hi = std::min(total, lo + chunk);
                if (lo < hi) work(lo, hi, partial[c]);
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };

    if (workers == 1) {
        body(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body, w);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    AccumulatorMap result;
    for (auto& p : partial) merge_into(result, std::move(p), tie);
    return result;
}

std::vector<SweepSummary> finish(AccumulatorMap&& accs, const SweepOptions& opt, double seconds) {
    std::vector<SweepSummary> out;
    for (auto& [n, acc] : accs) {
        SweepSummary s;
        s.n = n;
        s.graphs_tested = acc.graphs;
        s.skipped_disconnected = acc.skipped;
        s.solver_failures = acc.failures;
        s.violations = acc.violations;
        s.threshold = opt.threshold.value(n);
        s.min_s = acc.graphs > 0 ? acc.min_s : 0.0;
        s.min_s_margin = acc.graphs > 0 ? acc.min_margin : 0.0;
        s.threshold_kind = opt.threshold;
        s.tolerance = opt.tolerance;
        s.tie_tolerance = opt.tie_tolerance;
        s.wall_seconds = seconds;

        std::vector<std::string> names;
        for (auto& c : acc.candidates) names.push_back(std::move(c.second));
        std::sort(names.begin(), names.end());
        names.erase(std::unique(names.begin(), names.end()), names.end());
        if (names.size() > opt.top_k) names.resize(opt.top_k);
        s.minimizers = std::move(names);
        out.push_back(std::move(s));
    }
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

Graph graph_from_edge_mask(std::size_t n, std::uint64_t mask) {
    std::vector<Edge> edges;
    std::size_t k = 0;
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i, ++k) {
            if ((mask >> k) & 1U) edges.emplace_back(i, j);
        }
    }
    return Graph::from_edges(n, edges);
}

bool mask_is_connected(std::size_t n, std::uint64_t mask) {
    if (n <= 1) return true;
    std::array<std::uint32_t, 32> adj{};
    std::size_t k = 0;
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i, ++k) {
            if ((mask >> k) & 1U) {
                adj[i] |= 1U << j;
                adj[j] |= 1U << i;
            }
        }
    }
    std::uint32_t seen = 1;
    std::uint32_t frontier = 1;
    while (frontier != 0) {
        std::uint32_t next = 0;
        for (std::uint32_t f = frontier; f != 0; f &= f - 1) next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == (n == 32 ? ~0U : (1U << n) - 1U);
}

void enumerate_connected_labeled(std::size_t n, std::uint64_t mask_begin, std::uint64_t mask_end,
                                 const std::function<void(const Graph&)>& visit) {
    check_builtin_order(n);
    mask_end = std::min(mask_end, std::uint64_t{1} << pair_count(n));
    for (std::uint64_t mask = mask_begin; mask < mask_end; ++mask) {
        if (mask_is_connected(n, mask)) visit(graph_from_edge_mask(n, mask));
    }
}

void enumerate_connected_labeled(std::size_t n, const std::function<void(const Graph&)>& visit) {
    check_builtin_order(n);
    enumerate_connected_labeled(n, 0, std::uint64_t{1} << pair_count(n), visit);
}

std::vector<Graph> enumerate_connected_labeled(std::size_t n) {
    std::vector<Graph> out;
    enumerate_connected_labeled(n, [&](const Graph& g) { out.push_back(g); });
    return out;
}

std::vector<NumberedGraph> ingest_graph6_stream(std::istream& in) {
    std::vector<NumberedGraph> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.starts_with(kGraph6Header)) line.erase(0, kGraph6Header.size());
        if (line.empty()) continue;
        try {
            out.push_back({number, parse_graph6(line)});
        } catch (const Error& e) {
            throw ParseError("line " + std::to_string(number) + ": " + e.what());
        }
    }
    return out;
}

std::vector<NumberedGraph> ingest_graph6_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph6 file '" + path.string() + "'");
    return ingest_graph6_stream(in);
}

std::vector<SweepSummary> sweep_graphs(const std::vector<Graph>& graphs, const SweepOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    auto accs = run_chunks(graphs.size(), options.workers, options.tie_tolerance,
                           [&](std::uint64_t lo, std::uint64_t hi, AccumulatorMap& acc) {
                               for (std::uint64_t i = lo; i < hi; ++i) {
                                   acc[graphs[i].order()].add(graphs[i], options);
                               }
                           });
    return finish(std::move(accs), options, seconds_since(start));
}

std::vector<SweepSummary> sweep(const GraphSource& source, const SweepOptions& options) {
    if (const auto* file = std::get_if<FileSource>(&source)) {
        std::vector<Graph> graphs;
        for (auto& ng : ingest_graph6_file(file->path)) graphs.push_back(std::move(ng.graph));
        return sweep_graphs(graphs, options);
    }

    const std::size_t n = std::get<BuiltinSource>(source).n;
    check_builtin_order(n);
    const auto start = std::chrono::steady_clock::now();
    auto accs = run_chunks(std::uint64_t{1} << pair_count(n), options.workers, options.tie_tolerance,
                           [&](std::uint64_t lo, std::uint64_t hi, AccumulatorMap& acc) {
                               Accumulator& a = acc[n];
                               for (std::uint64_t mask = lo; mask < hi; ++mask) {
                                   if (mask_is_connected(n, mask)) a.add(graph_from_edge_mask(n, mask), options);
                               }
                           });
    accs[n];  // an order with no graphs still gets a summary
    return finish(std::move(accs), options, seconds_since(start));
}

std::string digest(const SweepSummary& s) {
    std::ostringstream out;
    out << "n=" << s.n << " graphs=" << s.graphs_tested << " violations=" << s.violations
        << " min_s=" << format_double(s.min_s) << " margin=" << format_double(s.min_s_margin)
        << " bound=" << s.threshold_kind.label();
    if (s.skipped_disconnected > 0) out << " skipped_disconnected=" << s.skipped_disconnected;
    if (s.solver_failures > 0) out << " solver_failures=" << s.solver_failures;
    if (!s.minimizers.empty()) out << " argmin=" << s.minimizers.front();
    return out.str();
}

}  // namespace sqenergy
