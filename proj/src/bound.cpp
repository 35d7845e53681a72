#include "sqenergy/bound.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "sqenergy/error.hpp"

namespace sqenergy {

BoundTarget BoundTarget::parse(std::string_view text) {
    if (text == "n-1") return n_minus_one();
    if (text == "3n/4") return three_quarters();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw ParseError("bound must be n-1, 3n/4 or a real number, got '" + std::string(text) + "'");
    }
    return constant(v);
}

double BoundTarget::value(std::size_t n) const {
    const auto dn = static_cast<double>(n);
    switch (kind) {
        case Kind::NMinusOne: return dn - 1.0;
        case Kind::ThreeQuarters: return 3.0 * dn / 4.0;
        case Kind::Custom: return custom;
    }
    return custom;
}

std::string BoundTarget::label() const {
    switch (kind) {
        case Kind::NMinusOne: return "n-1";
        case Kind::ThreeQuarters: return "3n/4";
        case Kind::Custom: return format_double(custom);
    }
    return {};
}

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace sqenergy
