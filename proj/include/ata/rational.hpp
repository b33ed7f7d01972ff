#pragma once

#include <boost/rational.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace ata {

/// Exact rational arithmetic for clock values and timestamps. Region
/// membership (fractional part zero vs nonzero) is discontinuous, so no
/// floating point is used anywhere past input parsing.
using Rat = boost::rational<long long>;

/// Integer part of a nonnegative rational.
long long rat_floor(const Rat& v);

/// Fractional part, v - floor(v), for nonnegative v.
Rat rat_fract(const Rat& v);

bool rat_is_integral(const Rat& v);

/// "13/10" for proper fractions, "2" for integers.
std::string rat_to_string(const Rat& v);

/// Accepts "2", "13/10" and exact decimals like "1.3". Decimals convert
/// exactly (1.3 -> 13/10). Returns nullopt on malformed input or negative
/// values.
std::optional<Rat> rat_from_string(std::string_view text);

} // namespace ata
