#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "diolic/diffop.hpp"
#include "diolic/diole.hpp"
#include "diolic/diolic_diffops.hpp"
#include "diolic/multider.hpp"
#include "diolic/symbols.hpp"

namespace diolic {

using Json = nlohmann::json;

/// Dimension caps applied to problem files and CLI requests.
struct Limits {
    std::size_t n = 4, m = 3, order = 4, degree_bound = 6, cochain = 20000;
};

/// "n=4,m=3,order=4,D=6,cochain=20000"; any subset of the keys, in any order.
Limits parse_limits(std::string_view text, Limits base = {});

/// A problem file in canonical form: polynomials, symbols and operators are
/// re-printed in their canonical text, so print/parse round-trips exactly.
struct Problem {
    std::string kind;
    Json data;
    friend bool operator==(const Problem&, const Problem&) = default;
};

/// Throws ParseError (with line and column in the message) on malformed JSON,
/// unknown keys, missing keys or malformed entries.
Problem parse_problem(std::string_view text);
std::string print_problem(const Problem& p);

// ---------------------------------------------------------- value encodings

/// Operator as a list of {"sigma": [...], "coeff": "<poly>"} records.
Json op_to_json(const ScalarOp& op);
ScalarOp op_from_json(const Json& j, std::size_t n);
Json matrix_op_to_json(const MatrixOp& op);
MatrixOp matrix_op_from_json(const Json& j, std::size_t n, std::size_t rows, std::size_t cols);

/// {"X": [...], "G": [[...]]}, {"Z": [[...]]}, {"phi": [...]}, or "0".
Json der_to_json(const AnyDer& d);
AnyDer der_from_json(const Json& j, std::optional<std::size_t> n);
/// "(d1, 0)"-style rendering.
std::string der_display(const AnyDer& d);

/// {"order", "boxA", "M"}, {"order", "ops"}, {"order", "op"}, or "0".
Json diff_to_json(const AnyDiff& d);
AnyDiff diff_from_json(const Json& j, std::optional<std::size_t> n);

/// {"k", "s", "Ms"}, {"k", "comps"}, {"k", "t"}.
Json diolic_symbol_to_json(const DiolicSymbol0& s);
Json diolic_symbol_to_json(const DiolicSymbol1& s);
Json diolic_symbol_to_json(const DiolicSymbolNeg1& s);

Json element_to_json(const DiolicElement& e);
GradedElement element_from_json(const Json& j, std::size_t n, std::size_t m);

// ------------------------------------------------------------------ reports

/// Reports are JSON objects with sorted keys: "verdict" (pass/fail/value),
/// "residuals", "notes", optional "value", "betti", "dims", "euler", and
/// "engine_version".
Json check_problem(const Problem& p, const Limits& lim = {});
Json bracket_report(const std::string& kind, const Json& left, const Json& right,
                    std::optional<std::size_t> n, const Limits& lim = {});
Json ce_report(const Problem& p, const Limits& lim = {});
Json der_cohomology_report(std::size_t n, std::size_t m, std::size_t D, const Limits& lim = {});

/// Report for an exception escaping one of the above.
Json error_report(const std::exception& e);

/// 0 pass/value, 1 fail, 2 input error, 3 resource cap, 4 internal error.
int exit_code(const Json& report);

std::string engine_version();

}  // namespace diolic
