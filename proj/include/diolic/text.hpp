#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "diolic/poly.hpp"

namespace diolic {

/// Parses the polynomial grammar
///
///   poly   := ['+'|'-'] term (('+'|'-') term)*
///   term   := coeff ('*' factor)* | factor ('*' factor)*
///   factor := 'x'INDEX ('^'EXP)?          (and 'k'INDEX when momenta are enabled)
///   coeff  := INT | INT'/'INT
///
/// Variable indices are 1-based in text. With `momenta`, the result lives over
/// 2n variables: x_i is variable i-1 and k_i (the momentum xi_i) is n+i-1.
Poly parse_poly(std::string_view text, std::size_t n, bool momenta = false);

/// Canonical text; `xcount` variables print as x1..; the rest as k1.. .
/// parse_poly(format_poly(p)) == p.
std::string format_poly(const Poly& p, std::size_t xcount);
inline std::string format_poly(const Poly& p) { return format_poly(p, p.nvars()); }

}  // namespace diolic

namespace diolic {

/// "(p1, p2, ...)".
std::string format_vec(const PolyVec& v);

}  // namespace diolic
