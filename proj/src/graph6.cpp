#include "sqenergy/graph6.hpp"

#include <vector>

#include "sqenergy/error.hpp"

namespace sqenergy {

namespace {

constexpr int kOffset = 63;
constexpr unsigned char kLongFormMarker = 126;

std::string_view trim_line(std::string_view line) {
    if (line.starts_with(kGraph6Header)) line.remove_prefix(kGraph6Header.size());
    if (line.ends_with('\n')) line.remove_suffix(1);
    if (line.ends_with('\r')) line.remove_suffix(1);
    return line;
}

}  // namespace

Graph parse_graph6(std::string_view line) {
    line = trim_line(line);
    if (line.empty()) throw ParseError("empty graph6 record");

    for (std::size_t i = 0; i < line.size(); ++i) {
        const auto c = static_cast<unsigned char>(line[i]);
        if (c < 63 || c > 126) {
            throw ParseError("graph6 byte " + std::to_string(static_cast<int>(c)) + " at offset " +
                             std::to_string(i) + " outside [63,126]");
        }
    }

    std::size_t n = 0;
    std::size_t pos = 0;
    if (static_cast<unsigned char>(line[0]) != kLongFormMarker) {
        n = static_cast<std::size_t>(line[0] - kOffset);
        pos = 1;
    } else {
        if (line.size() >= 2 && static_cast<unsigned char>(line[1]) == kLongFormMarker) {
            throw ParseError("8-byte graph6 size form is not supported");
        }
        if (line.size() < 4) throw ParseError("truncated graph6 size header");
        for (std::size_t i = 1; i <= 3; ++i) n = (n << 6) | static_cast<std::size_t>(line[i] - kOffset);
        pos = 4;
        if (n <= 62) throw ParseError("non-canonical long-form size " + std::to_string(n));
    }

    const std::size_t bit_count = n * (n - (n > 0 ? 1 : 0)) / 2;
    const std::size_t expected = (bit_count + 5) / 6;
    const std::size_t body = line.size() - pos;
    if (body != expected) {
        throw ParseError("graph6 body has " + std::to_string(body) + " bytes, expected " + std::to_string(expected) +
                         " for n = " + std::to_string(n));
    }

    std::vector<Edge> edges;
    std::size_t k = 0;
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i, ++k) {
            const int byte = line[pos + k / 6] - kOffset;
            if ((byte >> (5 - k % 6)) & 1) edges.emplace_back(i, j);
        }
    }
    return Graph::from_edges(n, edges);
}

std::string to_graph6(const Graph& g) {
    const std::size_t n = g.order();
    if (n > kGraph6MaxOrder) {
        throw PreconditionError("graph of order " + std::to_string(n) + " too large for graph6 4-byte form");
    }
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + kOffset));
    } else {
        out.push_back(static_cast<char>(kLongFormMarker));
        for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + kOffset));
    }

    int acc = 0;
    int filled = 0;
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(acc + kOffset));
                acc = 0;
                filled = 0;
            }
        }
    }
    if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + kOffset));
    return out;
}

}  // namespace sqenergy
