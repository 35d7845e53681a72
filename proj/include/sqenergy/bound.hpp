#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace sqenergy {

// Lower bound a graph of order n is checked against.
struct BoundTarget {
    enum class Kind { NMinusOne, ThreeQuarters, Custom };

    Kind kind = Kind::ThreeQuarters;
    double custom = 0.0;

    static BoundTarget n_minus_one() { return {Kind::NMinusOne, 0.0}; }
    static BoundTarget three_quarters() { return {Kind::ThreeQuarters, 0.0}; }
    static BoundTarget constant(double value) { return {Kind::Custom, value}; }

    // Accepts "n-1", "3n/4", or a finite real. Throws ParseError.
    static BoundTarget parse(std::string_view text);

    double value(std::size_t n) const;

    // "n-1", "3n/4", or the shortest round-trip decimal of the constant.
    std::string label() const;

    friend bool operator==(const BoundTarget&, const BoundTarget&) = default;
};

// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

}  // namespace sqenergy
