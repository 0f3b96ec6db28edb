#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "mopr/errors.hpp"

namespace mopr {

/// Exact rational scalar. GMP keeps every value canonical (gcd 1, positive denominator).
using Rat = mpq_class;

/// Parses "p", "-p" or "p/q". Whitespace is not accepted; q must be nonzero.
inline Rat parse_rat(std::string_view text) {
    auto digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    std::string_view body = text;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!digits(num) || !digits(den))
        throw ParseError("malformed rational \"" + std::string(text) + "\"");
    if (den.find_first_not_of('0') == std::string_view::npos)
        throw ParseError("zero denominator in \"" + std::string(text) + "\"");

    Rat value;
    value.get_num() = mpz_class(std::string(num));
    value.get_den() = mpz_class(std::string(den));
    value.canonicalize();
    if (text.front() == '-') value = -value;
    return value;
}

/// "p/q", or "p" when the denominator is one.
inline std::string format_rat(const Rat& value) { return value.get_str(); }

inline Rat factorial(unsigned n) {
    mpz_class out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return Rat(out);
}

inline Rat pow_rat(const Rat& base, unsigned exponent) {
    Rat out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    out.canonicalize();
    return out;
}

/// d^order/dz^order of z^power at z = at.
inline Rat derivative_of_power(unsigned power, unsigned order, const Rat& at) {
    if (order > power) return Rat(0);
    Rat coeff = 1;
    for (unsigned i = 0; i < order; ++i) coeff *= power - i;
    return Rat(coeff * pow_rat(at, power - order));
}

}  // namespace mopr
