#include "diolic/problem.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "diolic/complexes.hpp"
#include "diolic/error.hpp"
#include "diolic/text.hpp"

#ifndef DIOLIC_VERSION
#define DIOLIC_VERSION "0.0.0"
#endif

namespace diolic {

std::string engine_version() { return std::string("diolic ") + DIOLIC_VERSION; }

Limits parse_limits(std::string_view text, Limits base) {
    std::string s(text);
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("--max-dim: expected key=value, got '" + item + "'");
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        std::size_t v = 0;
        try {
            std::size_t used = 0;
            v = std::stoul(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
        } catch (const std::exception&) {
            throw ParseError("--max-dim: '" + val + "' is not a nonnegative integer");
        }
        if (key == "n") base.n = v;
        else if (key == "m") base.m = v;
        else if (key == "order") base.order = v;
        else if (key == "D") base.degree_bound = v;
        else if (key == "cochain") base.cochain = v;
        else throw ParseError("--max-dim: unknown key '" + key + "' (use n, m, order, D, cochain)");
    }
    return base;
}

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
    throw ParseError(path + ": " + msg);
}

std::size_t get_size(const Json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) bad(path, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

const std::string& get_string(const Json& j, const std::string& path) {
    if (!j.is_string()) bad(path, "expected a string");
    return j.get_ref<const std::string&>();
}

Poly poly_of(const Json& j, std::size_t n, const std::string& path) {
    try {
        return parse_poly(get_string(j, path), n);
    } catch (const ParseError& e) {
        bad(path, e.what());
    }
}

Rational rational_of(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    try {
        return parse_rational(get_string(j, path));
    } catch (const ParseError& e) {
        bad(path, e.what());
    } catch (const std::invalid_argument&) {
        bad(path, "malformed rational");
    }
}

MultiIndex sigma_of(const Json& j, std::size_t n, const std::string& path) {
    if (!j.is_array()) bad(path, "expected an array of exponents");
    if (j.size() != n) bad(path, "expected " + std::to_string(n) + " entries");
    std::vector<unsigned> e;
    for (std::size_t i = 0; i < j.size(); ++i)
        e.push_back(static_cast<unsigned>(get_size(j[i], path + "[" + std::to_string(i) + "]")));
    return MultiIndex(std::move(e));
}

Json sigma_json(const MultiIndex& s) { return Json(s.entries()); }

const Json& array_at(const Json& j, std::size_t len, const std::string& path) {
    if (!j.is_array()) bad(path, "expected an array");
    if (j.size() != len) bad(path, "expected " + std::to_string(len) + " entries, got " + std::to_string(j.size()));
    return j;
}

std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

// ------------------------------------------------------------ schema

enum class Leaf { Int, String, Poly, Rational, Op, Symbol, Connection, Raw };

struct Field {
    Leaf leaf;
    int depth;
    bool required;
};

using Schema = std::map<std::string, Field>;

const std::map<std::string, Schema>& schemas() {
    static const std::map<std::string, Schema> s = {
        {"poisson0",
         {{"n", {Leaf::Int, 0, true}}, {"m", {Leaf::Int, 0, true}},
          {"bivector", {Leaf::Poly, 1, true}}, {"end_part", {Leaf::Poly, 3, false}}}},
        {"jacobi0",
         {{"n", {Leaf::Int, 0, true}}, {"m", {Leaf::Int, 0, true}},
          {"jacobi_aa", {Leaf::Poly, 2, true}}, {"jacobi_ap", {Leaf::Op, 3, true}}}},
        {"jacobi_neg1",
         {{"n", {Leaf::Int, 0, true}}, {"m", {Leaf::Int, 0, false}},
          {"jacobi_aa", {Leaf::Poly, 2, true}}}},
        {"algebroid",
         {{"n", {Leaf::Int, 0, true}}, {"m", {Leaf::Int, 0, true}},
          {"anchor", {Leaf::Poly, 2, true}}, {"structure", {Leaf::Poly, 3, true}}}},
        {"diolic_diffop",
         {{"n", {Leaf::Int, 0, true}}, {"m", {Leaf::Int, 0, true}}, {"order", {Leaf::Int, 0, true}},
          {"boxA", {Leaf::Op, 0, true}}, {"M", {Leaf::Op, 2, false}}, {"boxP", {Leaf::Op, 2, false}}}},
        {"k_connection",
         {{"n", {Leaf::Int, 0, true}}, {"m", {Leaf::Int, 0, true}}, {"order", {Leaf::Int, 0, true}},
          {"connection", {Leaf::Connection, 1, true}}}},
        {"ce",
         {{"dim", {Leaf::Int, 0, true}}, {"c", {Leaf::Rational, 3, true}},
          {"rep_dim", {Leaf::Int, 0, true}}, {"rho", {Leaf::Rational, 3, true}}}},
        {"der_cohomology",
         {{"n", {Leaf::Int, 0, true}}, {"m", {Leaf::Int, 0, true}},
          {"degree_bound", {Leaf::Int, 0, true}}}},
        {"bracket",
         {{"bracket_kind", {Leaf::String, 0, true}}, {"n", {Leaf::Int, 0, false}},
          {"left", {Leaf::Raw, 0, true}}, {"right", {Leaf::Raw, 0, true}}}},
        {"symbol",
         {{"n", {Leaf::Int, 0, true}}, {"left", {Leaf::Symbol, 0, true}},
          {"right", {Leaf::Symbol, 0, true}}}},
    };
    return s;
}

Json normalize_leaf(const Json& v, Leaf leaf, std::size_t n, const std::string& path);

Json normalize(const Json& v, const Field& f, std::size_t n, const std::string& path, int depth = 0) {
    if (depth < f.depth) {
        if (!v.is_array()) bad(path, "expected an array");
        Json out = Json::array();
        for (std::size_t i = 0; i < v.size(); ++i) out.push_back(normalize(v[i], f, n, idx(path, i), depth + 1));
        return out;
    }
    return normalize_leaf(v, f.leaf, n, path);
}

Json normalize_connection(const Json& v, std::size_t n, const std::string& path) {
    if (!v.is_object()) bad(path, "expected a record with sigma, boxA, M");
    for (const auto& [k, _] : v.items())
        if (k != "sigma" && k != "boxA" && k != "M") bad(path, "unknown key '" + k + "'");
    if (!v.contains("sigma") || !v.contains("boxA") || !v.contains("M"))
        bad(path, "record needs sigma, boxA and M");
    Json out;
    out["sigma"] = sigma_json(sigma_of(v["sigma"], n, path + ".sigma"));
    out["boxA"] = normalize_leaf(v["boxA"], Leaf::Op, n, path + ".boxA");
    out["M"] = normalize(v["M"], {Leaf::Op, 2, true}, n, path + ".M");
    return out;
}

Json normalize_leaf(const Json& v, Leaf leaf, std::size_t n, const std::string& path) {
    switch (leaf) {
        case Leaf::Int: return Json(get_size(v, path));
        case Leaf::String: return Json(get_string(v, path));
        case Leaf::Poly: return Json(format_poly(poly_of(v, n, path)));
        case Leaf::Rational: return Json(to_string(rational_of(v, path)));
        case Leaf::Op:
            try {
                return op_to_json(op_from_json(v, n));
            } catch (const Error& e) {
                bad(path, e.what());
            }
        case Leaf::Symbol:
            try {
                return Json(format_symbol(parse_symbol(get_string(v, path), n)));
            } catch (const ParseError& e) {
                bad(path, e.what());
            } catch (const DomainError& e) {
                bad(path, e.what());
            }
        case Leaf::Connection: return normalize_connection(v, n, path);
        case Leaf::Raw: return v;
    }
    bad(path, "unsupported entry");
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

Problem parse_problem(std::string_view text) {
    Json raw;
    try {
        raw = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte);
        std::ostringstream os;
        os << "line " << line << ", column " << col << ": malformed JSON";
        throw ParseError(os.str(), e.byte == 0 ? 0 : e.byte - 1);
    }
    if (!raw.is_object()) throw ParseError("problem file must be a JSON object");
    if (!raw.contains("kind")) throw ParseError("problem file needs a 'kind'");
    const std::string kind = get_string(raw["kind"], "kind");
    auto it = schemas().find(kind);
    if (it == schemas().end()) throw ParseError("kind: unknown problem kind '" + kind + "'");
    const Schema& schema = it->second;

    for (const auto& [k, _] : raw.items())
        if (k != "kind" && k != "description" && !schema.count(k)) bad(k, "unknown key for kind " + kind);
    for (const auto& [k, f] : schema)
        if (f.required && !raw.contains(k)) bad(k, "missing required key");

    std::size_t n = raw.contains("n") ? get_size(raw["n"], "n") : 0;
    Json out;
    out["kind"] = kind;
    if (raw.contains("description")) out["description"] = get_string(raw["description"], "description");
    for (const auto& [k, f] : schema)
        if (raw.contains(k)) out[k] = normalize(raw[k], f, n, k);
    return Problem{kind, std::move(out)};
}

std::string print_problem(const Problem& p) { return p.data.dump(2) + "\n"; }

// ------------------------------------------------------------ encodings

Json op_to_json(const ScalarOp& op) {
    Json out = Json::array();
    for (const auto& [sigma, c] : op.coeffs()) out.push_back({{"sigma", sigma_json(sigma)}, {"coeff", format_poly(c)}});
    return out;
}

ScalarOp op_from_json(const Json& j, std::size_t n) {
    if (!j.is_array()) throw ParseError("operator: expected a list of {sigma, coeff} records");
    ScalarOp op(n);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const Json& r = j[i];
        std::string path = idx("operator", i);
        if (!r.is_object() || !r.contains("sigma") || !r.contains("coeff") || r.size() != 2)
            bad(path, "expected a record {sigma, coeff}");
        op.add_term(sigma_of(r["sigma"], n, path + ".sigma"), poly_of(r["coeff"], n, path + ".coeff"));
    }
    return op;
}

Json matrix_op_to_json(const MatrixOp& op) {
    Json out = Json::array();
    for (std::size_t i = 0; i < op.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < op.cols(); ++j) row.push_back(op_to_json(op(i, j)));
        out.push_back(row);
    }
    return out;
}

MatrixOp matrix_op_from_json(const Json& j, std::size_t n, std::size_t rows, std::size_t cols) {
    array_at(j, rows, "matrix operator");
    MatrixOp op(n, rows, cols);
    for (std::size_t a = 0; a < rows; ++a) {
        array_at(j[a], cols, idx("matrix operator", a));
        for (std::size_t b = 0; b < cols; ++b) op(a, b) = op_from_json(j[a][b], n);
    }
    return op;
}

namespace {

std::vector<Poly> polys_of(const Json& j, std::size_t len, std::size_t n, const std::string& path) {
    array_at(j, len, path);
    std::vector<Poly> out;
    for (std::size_t i = 0; i < len; ++i) out.push_back(poly_of(j[i], n, idx(path, i)));
    return out;
}

std::vector<std::vector<Poly>> poly_matrix_of(const Json& j, std::size_t r, std::size_t c, std::size_t n,
                                              const std::string& path) {
    array_at(j, r, path);
    std::vector<std::vector<Poly>> out;
    for (std::size_t i = 0; i < r; ++i) out.push_back(polys_of(j[i], c, n, idx(path, i)));
    return out;
}

PolyMat polymat_of(const Json& j, std::size_t m, std::size_t n, const std::string& path) {
    auto rows = poly_matrix_of(j, m, m, n, path);
    PolyMat g(n, m, m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) g(a, b) = rows[a][b];
    return g;
}

Json polys_json(const std::vector<Poly>& v) {
    Json out = Json::array();
    for (const auto& p : v) out.push_back(format_poly(p));
    return out;
}

Json polymat_json(const PolyMat& g) {
    Json out = Json::array();
    for (std::size_t a = 0; a < g.rows(); ++a) {
        Json row = Json::array();
        for (std::size_t b = 0; b < g.cols(); ++b) row.push_back(format_poly(g(a, b)));
        out.push_back(row);
    }
    return out;
}

// Largest x/k index appearing in any string below j.
std::size_t scan_index(const Json& j) {
    std::size_t best = 0;
    if (j.is_string()) {
        static const std::regex var("[xk]([0-9]+)");
        const std::string& s = j.get_ref<const std::string&>();
        for (auto it = std::sregex_iterator(s.begin(), s.end(), var); it != std::sregex_iterator(); ++it)
            best = std::max<std::size_t>(best, std::stoul((*it)[1].str()));
    } else if (j.is_structured()) {
        for (const auto& v : j) best = std::max(best, scan_index(v));
    }
    return best;
}

// Variable count from the structure of an operand, if it pins one down.
std::optional<std::size_t> structural_n(const Json& j) {
    if (j.is_object()) {
        if (j.contains("n") && j["n"].is_number_unsigned()) return j["n"].get<std::size_t>();
        if (j.contains("X") && j["X"].is_array()) return j["X"].size();
        if (j.contains("Z") && j["Z"].is_array() && !j["Z"].empty() && j["Z"][0].is_array())
            return j["Z"][0].size();
        if (j.contains("sigma") && j["sigma"].is_array()) return j["sigma"].size();
    }
    if (j.is_structured())
        for (const auto& v : j)
            if (auto r = structural_n(v)) return r;
    return std::nullopt;
}

std::size_t resolve_n(std::optional<std::size_t> given, const Json& a, const Json& b) {
    if (given) return *given;
    if (auto r = structural_n(a)) return *r;
    if (auto r = structural_n(b)) return *r;
    return std::max<std::size_t>(1, std::max(scan_index(a), scan_index(b)));
}

std::string vf_display(const VectorField& x) {
    std::string out;
    for (std::size_t i = 0; i < x.nvars(); ++i) {
        const Poly& c = x[i];
        if (c.is_zero()) continue;
        std::string term = "d" + std::to_string(i + 1);
        if (c != Poly(c.nvars(), 1)) {
            std::string cs = format_poly(c);
            bool single = c.terms().size() == 1;
            term = (single ? cs : "(" + cs + ")") + "*" + term;
        }
        out += (out.empty() ? "" : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

std::string mat_display(const PolyMat& g) {
    if (g.is_zero()) return "0";
    std::string out = "[";
    for (std::size_t a = 0; a < g.rows(); ++a) {
        out += a ? ", [" : "[";
        for (std::size_t b = 0; b < g.cols(); ++b) out += (b ? ", " : "") + format_poly(g(a, b));
        out += "]";
    }
    return out + "]";
}

void cap(std::size_t value, std::size_t limit, const std::string& quantity) {
    if (value > limit) {
        std::ostringstream os;
        os << quantity << " = " << value << " exceeds the cap " << limit;
        throw ResourceError(os.str(), quantity, value, limit);
    }
}

}  // namespace

Json der_to_json(const AnyDer& d) {
    return std::visit(
        [](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Der0>) {
                return {{"X", polys_json(x.X.components())}, {"G", polymat_json(x.G)}};
            } else if constexpr (std::is_same_v<T, Der1>) {
                Json z = Json::array();
                for (const auto& v : x.Z) z.push_back(polys_json(v.components()));
                return {{"Z", z}};
            } else if constexpr (std::is_same_v<T, DerNeg1>) {
                return {{"phi", polys_json(x.phi)}};
            } else {
                return "0";
            }
        },
        d);
}

std::string der_display(const AnyDer& d) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Der0>) {
                return "(" + vf_display(x.X) + ", " + mat_display(x.G) + ")";
            } else if constexpr (std::is_same_v<T, Der1>) {
                if (x.is_zero()) return "0";
                std::string out = "(";
                for (std::size_t a = 0; a < x.Z.size(); ++a) out += (a ? ", " : "") + vf_display(x.Z[a]);
                return out + ")";
            } else if constexpr (std::is_same_v<T, DerNeg1>) {
                return format_poly(x.phi.front());
            } else {
                return "0";
            }
        },
        d);
}

AnyDer der_from_json(const Json& j, std::optional<std::size_t> n_hint) {
    if (j.is_string() && j.get<std::string>() == "0") return ZeroDer{};
    if (!j.is_object()) throw ParseError("derivation: expected an object with X/G, Z or phi");
    for (const auto& [k, _] : j.items())
        if (k != "X" && k != "G" && k != "Z" && k != "phi" && k != "n") bad("derivation", "unknown key '" + k + "'");
    if (j.contains("X")) {
        if (!j["X"].is_array()) bad("derivation.X", "expected an array");
        std::size_t n = j["X"].size();
        if (!j.contains("G") || !j["G"].is_array()) bad("derivation", "Der0 needs X and G");
        std::size_t m = j["G"].size();
        return Der0(VectorField(polys_of(j["X"], n, n, "X")), polymat_of(j["G"], m, n, "G"));
    }
    if (j.contains("Z")) {
        const Json& z = j["Z"];
        if (!z.is_array() || z.empty() || !z[0].is_array()) bad("derivation.Z", "expected an m x n array");
        std::size_t n = z[0].size();
        std::vector<VectorField> comps;
        for (std::size_t a = 0; a < z.size(); ++a) comps.emplace_back(polys_of(z[a], n, n, idx("Z", a)));
        return Der1(std::move(comps));
    }
    if (j.contains("phi")) {
        std::size_t n = j.contains("n") ? get_size(j["n"], "n") : n_hint.value_or(std::max<std::size_t>(1, scan_index(j)));
        if (!j["phi"].is_array()) bad("derivation.phi", "expected an array");
        return DerNeg1(polys_of(j["phi"], j["phi"].size(), n, "phi"));
    }
    throw ParseError("derivation: expected X/G, Z or phi");
}

Json diff_to_json(const AnyDiff& d) {
    return std::visit(
        [](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, DiffOp0>) {
                return {{"order", x.k}, {"boxA", op_to_json(x.boxA)}, {"M", matrix_op_to_json(x.M)}};
            } else if constexpr (std::is_same_v<T, DiffOp1>) {
                Json ops = Json::array();
                for (const auto& o : x.ops) ops.push_back(op_to_json(o));
                return {{"order", x.k}, {"ops", ops}};
            } else if constexpr (std::is_same_v<T, DiffOpNeg1>) {
                return {{"order", x.k}, {"op", op_to_json(x.op)}};
            } else {
                return "0";
            }
        },
        d);
}

AnyDiff diff_from_json(const Json& j, std::optional<std::size_t> n_hint) {
    if (j.is_string() && j.get<std::string>() == "0") return ZeroDiff{};
    if (!j.is_object()) throw ParseError("operator: expected an object with order and boxA/M, ops or op");
    for (const auto& [k, _] : j.items())
        if (k != "order" && k != "boxA" && k != "M" && k != "ops" && k != "op" && k != "n" && k != "m")
            bad("operator", "unknown key '" + k + "'");
    if (!j.contains("order")) bad("operator", "missing order");
    int k = static_cast<int>(get_size(j["order"], "order"));
    std::size_t n = j.contains("n") ? get_size(j["n"], "n")
                                    : structural_n(j).value_or(n_hint.value_or(std::max<std::size_t>(1, scan_index(j))));
    if (j.contains("boxA")) {
        std::size_t m = j.contains("m") ? get_size(j["m"], "m") : (j.contains("M") && j["M"].is_array() ? j["M"].size() : 0);
        if (m == 0) bad("operator", "degree-0 operator needs M or m");
        MatrixOp M = j.contains("M") ? matrix_op_from_json(j["M"], n, m, m) : MatrixOp(n, m, m);
        return DiffOp0(k, op_from_json(j["boxA"], n), std::move(M));
    }
    if (j.contains("ops")) {
        if (!j["ops"].is_array() || j["ops"].empty()) bad("operator.ops", "expected a nonempty array");
        std::vector<ScalarOp> ops;
        for (const auto& o : j["ops"]) ops.push_back(op_from_json(o, n));
        return DiffOp1(k, std::move(ops));
    }
    if (j.contains("op")) return DiffOpNeg1(k, op_from_json(j["op"], n), j.contains("m") ? get_size(j["m"], "m") : 1);
    throw ParseError("operator: expected boxA, ops or op");
}

Json diolic_symbol_to_json(const DiolicSymbol0& s) {
    Json ms = Json::array();
    for (const auto& row : s.Ms) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(format_symbol(e));
        ms.push_back(r);
    }
    return {{"k", s.k}, {"s", format_symbol(s.s)}, {"Ms", ms}};
}

Json diolic_symbol_to_json(const DiolicSymbol1& s) {
    Json c = Json::array();
    for (const auto& e : s.comps) c.push_back(format_symbol(e));
    return {{"k", s.k}, {"comps", c}};
}

Json diolic_symbol_to_json(const DiolicSymbolNeg1& s) { return {{"k", s.k}, {"t", format_symbol(s.t)}}; }

namespace {

SymbolPoly symbol_of(const Json& j, std::size_t n, int k, const std::string& path) {
    SymbolPoly s;
    try {
        s = parse_symbol(get_string(j, path), n, k);
    } catch (const ParseError& e) {
        bad(path, e.what());
    }
    if (s.degree() != k) bad(path, "expected momentum degree " + std::to_string(k));
    return s;
}

using AnySymbol = std::variant<DiolicSymbol0, DiolicSymbol1, DiolicSymbolNeg1>;

AnySymbol diolic_symbol_from_json(const Json& j, std::size_t n) {
    if (!j.is_object() || !j.contains("k")) throw ParseError("diolic symbol: expected an object with k");
    for (const auto& [key, _] : j.items())
        if (key != "k" && key != "s" && key != "Ms" && key != "comps" && key != "t" && key != "n")
            bad("diolic symbol", "unknown key '" + key + "'");
    int k = static_cast<int>(get_size(j["k"], "k"));
    if (j.contains("s")) {
        DiolicSymbol0 out{k, symbol_of(j["s"], n, k, "s"), {}};
        if (!j.contains("Ms") || !j["Ms"].is_array()) bad("Ms", "degree-0 symbol needs Ms");
        std::size_t m = j["Ms"].size();
        for (std::size_t a = 0; a < m; ++a) {
            array_at(j["Ms"][a], m, idx("Ms", a));
            std::vector<SymbolPoly> row;
            for (std::size_t b = 0; b < m; ++b)
                row.push_back(symbol_of(j["Ms"][a][b], n, k - 1, idx(idx("Ms", a), b)));
            out.Ms.push_back(std::move(row));
        }
        return out;
    }
    if (j.contains("comps")) {
        DiolicSymbol1 out{k, {}};
        if (!j["comps"].is_array() || j["comps"].empty()) bad("comps", "expected a nonempty array");
        for (std::size_t a = 0; a < j["comps"].size(); ++a) out.comps.push_back(symbol_of(j["comps"][a], n, k, idx("comps", a)));
        return out;
    }
    if (j.contains("t")) return DiolicSymbolNeg1{k, symbol_of(j["t"], n, k, "t")};
    throw ParseError("diolic symbol: expected s/Ms, comps or t");
}

}  // namespace

Json element_to_json(const DiolicElement& e) {
    Json p = Json::array();
    for (std::size_t a = 0; a < e.p.rank(); ++a) p.push_back(format_poly(e.p[a]));
    return {{"a", format_poly(e.a)}, {"p", p}};
}

GradedElement element_from_json(const Json& j, std::size_t n, std::size_t m) {
    if (j.is_object() && j.size() == 1 && j.contains("a")) return GradedElement::even(poly_of(j["a"], n, "a"), m);
    if (j.is_object() && j.size() == 1 && j.contains("p")) {
        auto comps = polys_of(j["p"], m, n, "p");
        PolyVec v(n, m);
        for (std::size_t a = 0; a < m; ++a) v[a] = comps[a];
        return GradedElement::odd(v);
    }
    throw ParseError("element: expected {\"a\": poly} or {\"p\": [poly, ...]}");
}

// ------------------------------------------------------------------ reports

namespace {

Json residual_list(const std::vector<Residual>& rs) {
    Json out = Json::array();
    for (const auto& r : rs) out.push_back({{"name", r.name}, {"value", r.value}});
    return out;
}

Json base_report(const std::string& kind, const std::string& verdict) {
    Json r;
    r["kind"] = kind;
    r["verdict"] = verdict;
    r["residuals"] = Json::array();
    r["notes"] = Json::array();
    r["engine_version"] = engine_version();
    return r;
}

Json from_check(const std::string& kind, const CheckReport& c) {
    Json r = base_report(kind, c.pass ? "pass" : "fail");
    r["residuals"] = residual_list(c.residuals);
    r["notes"] = residual_list(c.notes);
    return r;
}

void attach_cohomology(Json& r, const CohomologyResult& c) {
    r["betti"] = c.betti;
    r["dims"] = c.dims;
    r["ranks"] = c.ranks;
    r["euler"] = {{"from_dims", c.euler_dims()},
                  {"from_betti", c.euler_betti()},
                  {"holds", c.euler_dims() == c.euler_betti()}};
}

std::string sigma_text(const MultiIndex& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + ")";
}

void cap_nm(const Json& d, const Limits& lim) {
    if (d.contains("n")) cap(d["n"].get<std::size_t>(), lim.n, "n");
    if (d.contains("m")) cap(d["m"].get<std::size_t>(), lim.m, "m");
    if (d.contains("order")) cap(d["order"].get<std::size_t>(), lim.order, "order");
}

std::vector<std::vector<std::vector<Poly>>> poly_cube(const Json& j, std::size_t a, std::size_t b, std::size_t c,
                                                      std::size_t n, const std::string& path) {
    array_at(j, a, path);
    std::vector<std::vector<std::vector<Poly>>> out;
    for (std::size_t i = 0; i < a; ++i) out.push_back(poly_matrix_of(j[i], b, c, n, idx(path, i)));
    return out;
}

std::vector<std::vector<std::vector<Rational>>> rational_cube(const Json& j, std::size_t a, std::size_t b,
                                                              std::size_t c, const std::string& path) {
    array_at(j, a, path);
    std::vector<std::vector<std::vector<Rational>>> out(a);
    for (std::size_t i = 0; i < a; ++i) {
        array_at(j[i], b, idx(path, i));
        for (std::size_t k = 0; k < b; ++k) {
            array_at(j[i][k], c, idx(idx(path, i), k));
            std::vector<Rational> row;
            for (std::size_t l = 0; l < c; ++l) row.push_back(rational_of(j[i][k][l], path));
            out[i].push_back(std::move(row));
        }
    }
    return out;
}

CEData ce_of(const Json& d) {
    std::size_t r = d["dim"].get<std::size_t>(), d1 = d["rep_dim"].get<std::size_t>();
    return CEData(r, rational_cube(d["c"], r, r, r, "c"), d1, rational_cube(d["rho"], r, d1, d1, "rho"));
}

Json check_poisson0(const Json& d) {
    std::size_t n = d["n"], m = d["m"];
    auto upper = polys_of(d["bivector"], n * (n - 1) / 2, n, "bivector");
    std::vector<PolyMat> end;
    for (std::size_t i = 0; i < n; ++i)
        end.push_back(d.contains("end_part") ? polymat_of(array_at(d["end_part"], n, "end_part")[i], m, n, idx("end_part", i))
                                             : PolyMat(n, m, m));
    return from_check("poisson0", is_poisson0(BiDer0::from_upper(n, m, upper, std::move(end))));
}

Json check_jacobi0(const Json& d) {
    std::size_t n = d["n"], m = d["m"];
    auto c = poly_matrix_of(d["jacobi_aa"], n + 1, n + 1, n, "jacobi_aa");
    array_at(d["jacobi_ap"], n + 1, "jacobi_ap");
    std::vector<MatrixOp> D;
    for (std::size_t s = 0; s <= n; ++s) D.push_back(matrix_op_from_json(d["jacobi_ap"][s], n, m, m));
    return from_check("jacobi0", is_jacobi0(JacobiOp0(std::move(c), std::move(D), n, m)));
}

Json check_jacobi_neg1(const Json& d) {
    std::size_t n = d["n"], m = d.value("m", std::size_t{1});
    auto j = poly_matrix_of(d["jacobi_aa"], n + 1, n + 1, n, "jacobi_aa");
    return from_check("jacobi_neg1", is_jacobi_neg1(JacobiNeg1(std::move(j), n, m)));
}

Json check_algebroid(const Json& d) {
    std::size_t n = d["n"], m = d["m"];
    auto rho = poly_matrix_of(d["anchor"], m, n, n, "anchor");
    auto c = poly_cube(d["structure"], m, m, m, n, "structure");
    return from_check("algebroid", is_lie_algebroid(BiDerNeg1(std::move(rho), std::move(c), n)));
}

Json check_diffop(const Json& d) {
    std::size_t n = d["n"], m = d["m"];
    int k = d["order"].get<int>();
    if (d.contains("M") == d.contains("boxP")) throw ParseError("diolic_diffop: give exactly one of M and boxP");
    ScalarOp boxA = op_from_json(d["boxA"], n);
    MatrixOp boxP = d.contains("boxP") ? matrix_op_from_json(d["boxP"], n, m, m)
                                       : MatrixOp::diagonal(boxA, m) + matrix_op_from_json(d["M"], n, m, m);
    CheckReport rep;
    if (boxA.order() > k) rep.fail("order(boxA)", std::to_string(boxA.order()));
    if (!verify_diolic_diffop(boxA, boxP, k)) {
        MatrixOp diff = boxP - MatrixOp::diagonal(boxA, m);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                for (const auto& [sigma, c] : diff(a, b).coeffs())
                    if (static_cast<int>(sigma.total_degree()) >= k)
                        rep.fail("symbol_mismatch[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "][d^" +
                                     sigma_text(sigma) + "]",
                                 format_poly(c));
        if (rep.pass) throw InternalError("diolic_diffop: verdict without a witness");
    }
    return from_check("diolic_diffop", rep);
}

Json check_connection(const Json& d) {
    std::size_t n = d["n"], m = d["m"];
    int k = d["order"].get<int>();
    ConnectionTable table;
    for (const auto& r : d["connection"]) {
        MultiIndex sigma = sigma_of(r["sigma"], n, "sigma");
        if (table.count(sigma)) throw ParseError("connection: duplicate generator d^" + sigma_text(sigma));
        table.emplace(sigma, DiffOp0(k, op_from_json(r["boxA"], n), matrix_op_from_json(r["M"], n, m, m)));
    }
    return from_check("k_connection", check_k_connection(table, k, n));
}

Json check_ce(const Json& d, const Limits& lim) {
    CEData l = ce_of(d);
    CheckReport c = diolic_lie_check(l);
    Json r = from_check("ce", c);
    if (c.pass) {
        for (std::size_t p = 0; p <= l.r; ++p) {
            std::size_t dim = 1;
            for (std::size_t i = 0; i < p; ++i) dim = dim * (l.r - i) / (i + 1);
            cap(dim * l.d1, lim.cochain, "cochain_dim");
        }
        attach_cohomology(r, ce_cohomology(l));
    }
    return r;
}

Json check_symbol(const Json& d, const Limits& lim) {
    std::size_t n = d["n"];
    SymbolPoly s = parse_symbol(d["left"].get<std::string>(), n), t = parse_symbol(d["right"].get<std::string>(), n);
    cap(static_cast<std::size_t>(std::max(s.degree(), t.degree())), lim.order, "symbol_degree");
    Json r = base_report("symbol", "value");
    r["value"] = {{"poisson", format_symbol(poisson_bracket(s, t))}, {"star", format_symbol(star(s, t))}};
    return r;
}

}  // namespace

Json check_problem(const Problem& p, const Limits& lim) {
    const Json& d = p.data;
    cap_nm(d, lim);
    if (p.kind == "poisson0") return check_poisson0(d);
    if (p.kind == "jacobi0") return check_jacobi0(d);
    if (p.kind == "jacobi_neg1") return check_jacobi_neg1(d);
    if (p.kind == "algebroid") return check_algebroid(d);
    if (p.kind == "diolic_diffop") return check_diffop(d);
    if (p.kind == "k_connection") return check_connection(d);
    if (p.kind == "ce") return check_ce(d, lim);
    if (p.kind == "der_cohomology")
        return der_cohomology_report(d["n"], d["m"], d["degree_bound"], lim);
    if (p.kind == "bracket") {
        std::optional<std::size_t> n;
        if (d.contains("n")) n = d["n"].get<std::size_t>();
        return bracket_report(d["bracket_kind"], d["left"], d["right"], n, lim);
    }
    if (p.kind == "symbol") return check_symbol(d, lim);
    throw ParseError("unknown problem kind '" + p.kind + "'");
}

Json ce_report(const Problem& p, const Limits& lim) {
    if (p.kind != "ce") throw ParseError("cohomology --ce expects a problem of kind ce, got " + p.kind);
    Json r = check_ce(p.data, lim);
    if (r["verdict"] == "pass") r["verdict"] = "value";
    return r;
}

Json der_cohomology_report(std::size_t n, std::size_t m, std::size_t D, const Limits& lim) {
    cap(n, lim.n, "n");
    cap(m, lim.m, "m");
    cap(D, lim.degree_bound, "D");
    Json r = base_report("der_cohomology", "value");
    attach_cohomology(r, der_cohomology_truncated(n, m, static_cast<unsigned>(D), lim.cochain));
    return r;
}

Json bracket_report(const std::string& kind, const Json& left, const Json& right, std::optional<std::size_t> n_given,
                    const Limits& lim) {
    const std::size_t n = resolve_n(n_given, left, right);
    cap(n, lim.n, "n");
    Json r = base_report("bracket", "value");
    r["bracket_kind"] = kind;
    if (kind == "symbol") {
        SymbolPoly s = parse_symbol(get_string(left, "left"), n), t = parse_symbol(get_string(right, "right"), n);
        cap(static_cast<std::size_t>(std::max(s.degree(), t.degree())), lim.order, "symbol_degree");
        r["value"] = format_symbol(poisson_bracket(s, t));
        return r;
    }
    if (kind == "der" || kind == "der0" || kind == "der0-der1" || kind == "der1-der1") {
        AnyDer a = der_from_json(left, n), b = der_from_json(right, n);
        auto want = [&](const AnyDer& x, int deg, const char* side) {
            if (degree_of(x) != deg)
                throw DomainError(std::string("bracket --kind ") + kind + ": " + side + " operand has degree " +
                                  std::to_string(degree_of(x)) + ", expected " + std::to_string(deg));
        };
        if (kind == "der0") want(a, 0, "left"), want(b, 0, "right");
        if (kind == "der0-der1") want(a, 0, "left"), want(b, 1, "right");
        if (kind == "der1-der1") want(a, 1, "left"), want(b, 1, "right");
        for (const AnyDer* x : {&a, &b})
            if (!std::holds_alternative<ZeroDer>(*x)) {
                std::size_t m = std::visit([](const auto& v) -> std::size_t {
                    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, ZeroDer>) return 0;
                    else return v.rank();
                }, *x);
                cap(m, lim.m, "m");
            }
        AnyDer c = graded_commutator(a, b);
        r["value"] = der_to_json(c);
        r["display"] = der_display(c);
        r["degree"] = degree_of(c);
        return r;
    }
    if (kind == "diff") {
        AnyDiff a = diff_from_json(left, n), b = diff_from_json(right, n);
        for (const AnyDiff* x : {&a, &b})
            std::visit([&](const auto& v) {
                if constexpr (!std::is_same_v<std::decay_t<decltype(v)>, ZeroDiff>) {
                    cap(static_cast<std::size_t>(v.k), lim.order, "order");
                    cap(v.rank(), lim.m, "m");
                }
            }, *x);
        AnyDiff c = graded_commutator(a, b);
        r["value"] = diff_to_json(c);
        r["degree"] = degree_of(c);
        return r;
    }
    if (kind == "diolic-symbol") {
        AnySymbol a = diolic_symbol_from_json(left, n), b = diolic_symbol_from_json(right, n);
        if (!std::holds_alternative<DiolicSymbol0>(a))
            throw DomainError("bracket --kind diolic-symbol: the left symbol must have degree 0");
        const auto& s = std::get<DiolicSymbol0>(a);
        cap(static_cast<std::size_t>(s.k), lim.order, "order");
        r["value"] = std::visit([&](const auto& t) -> Json {
            cap(static_cast<std::size_t>(t.k), lim.order, "order");
            return diolic_symbol_to_json(diolic_poisson_bracket(s, t));
        }, b);
        return r;
    }
    if (kind == "schouten") {
        if (!left.is_object()) throw ParseError("schouten: left operand must be a biderivation object");
        for (const auto& [key, _] : left.items())
            if (key != "n" && key != "m" && key != "bivector" && key != "end_part")
                bad("schouten", "unknown key '" + key + "'");
        std::size_t m = left.contains("m") ? get_size(left["m"], "m") : 1;
        cap(m, lim.m, "m");
        auto upper = polys_of(left.at("bivector"), n * (n - 1) / 2, n, "bivector");
        std::vector<PolyMat> end;
        for (std::size_t i = 0; i < n; ++i)
            end.push_back(left.contains("end_part") ? polymat_of(array_at(left["end_part"], n, "end_part")[i], m, n, "end_part")
                                                    : PolyMat(n, m, m));
        BiDer0 pi = BiDer0::from_upper(n, m, upper, std::move(end));
        array_at(right, 3, "schouten arguments");
        auto z1 = element_from_json(right[0], n, m), z2 = element_from_json(right[1], n, m),
             z3 = element_from_json(right[2], n, m);
        r["value"] = element_to_json(schouten_self_eval(pi, z1, z2, z3));
        return r;
    }
    throw ParseError("bracket: unknown kind '" + kind +
                     "' (symbol, der, der0, der0-der1, der1-der1, diff, diolic-symbol, schouten)");
}

Json error_report(const std::exception& e) {
    Json r;
    r["verdict"] = "error";
    r["engine_version"] = engine_version();
    Json err;
    err["message"] = e.what();
    if (auto* pe = dynamic_cast<const ParseError*>(&e)) {
        err["type"] = "parse";
        if (pe->position() != std::string::npos) err["position"] = pe->position();
    } else if (auto* re = dynamic_cast<const ResourceError*>(&e)) {
        err["type"] = "resource";
        err["quantity"] = re->quantity();
        err["value"] = re->value();
        err["cap"] = re->cap();
    } else if (dynamic_cast<const InternalError*>(&e)) {
        err["type"] = "internal";
    } else {
        err["type"] = "input";
    }
    r["error"] = err;
    return r;
}

int exit_code(const Json& report) {
    const std::string v = report.value("verdict", "error");
    if (v == "pass" || v == "value") return 0;
    if (v == "fail") return 1;
    const std::string t = report.contains("error") ? report["error"].value("type", "input") : "input";
    if (t == "resource") return 3;
    if (t == "internal") return 4;
    return 2;
}

}  // namespace diolic
