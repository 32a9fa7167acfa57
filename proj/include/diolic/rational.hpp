#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace diolic {

/// Exact rational number; GMP keeps it canonical (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "INT" or "INT/INT" with an optional leading sign.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline Rational binomial(unsigned n, unsigned k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return Rational(r);
}

}  // namespace diolic
