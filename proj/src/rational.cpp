#include "ata/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace ata {

long long rat_floor(const Rat& v) {
    // v >= 0 throughout this code base.
    return v.numerator() / v.denominator();
}

Rat rat_fract(const Rat& v) {
    return v - Rat(rat_floor(v));
}

bool rat_is_integral(const Rat& v) {
    return v.denominator() == 1;
}

std::string rat_to_string(const Rat& v) {
    if (v.denominator() == 1) return std::to_string(v.numerator());
    return std::to_string(v.numerator()) + "/" + std::to_string(v.denominator());
}

namespace {

std::optional<long long> parse_digits(std::string_view s) {
    if (s.empty() || s.size() > 18) return std::nullopt;
    long long out = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        out = out * 10 + (c - '0');
    }
    return out;
}

} // namespace

std::optional<Rat> rat_from_string(std::string_view text) {
    if (text.empty()) return std::nullopt;
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        auto num = parse_digits(text.substr(0, slash));
        auto den = parse_digits(text.substr(slash + 1));
        if (!num || !den || *den == 0) return std::nullopt;
        return Rat(*num, *den);
    }
    auto dot = text.find('.');
    if (dot != std::string_view::npos) {
        auto whole = parse_digits(text.substr(0, dot));
        std::string_view frac = text.substr(dot + 1);
        if (!whole || frac.empty() || frac.size() > 9) return std::nullopt;
        auto digits = parse_digits(frac);
        if (!digits) return std::nullopt;
        long long den = 1;
        for (size_t i = 0; i < frac.size(); ++i) den *= 10;
        return Rat(*whole) + Rat(*digits, den);
    }
    auto whole = parse_digits(text);
    if (!whole) return std::nullopt;
    return Rat(*whole);
}

} // namespace ata
