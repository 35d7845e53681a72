#pragma once

#include <string>
#include <string_view>

#include "sqenergy/graph.hpp"

namespace sqenergy {

// Largest order representable in the short and 4-byte long forms.
inline constexpr std::size_t kGraph6MaxOrder = (std::size_t{1} << 18) - 1;

inline constexpr std::string_view kGraph6Header = ">>graph6<<";

// Decodes one graph6 record. A single trailing "\n" (or "\r\n") and a leading
// ">>graph6<<" header are tolerated. Throws ParseError.
Graph parse_graph6(std::string_view line);

// Canonical graph6 encoding of the labelled graph. Throws PreconditionError
// for n > kGraph6MaxOrder.
std::string to_graph6(const Graph& g);

}  // namespace sqenergy
