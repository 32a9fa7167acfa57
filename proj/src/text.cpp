#include "diolic/text.hpp"

#include <cctype>
#include <sstream>

#include "diolic/error.hpp"

namespace diolic {

namespace {

class PolyParser {
public:
    PolyParser(std::string_view s, std::size_t n, bool momenta)
        : s_(s), n_(n), momenta_(momenta), nvars_(momenta ? 2 * n : n) {}

    Poly parse() {
        Poly result(nvars_);
        skip_ws();
        if (at_end()) fail("empty polynomial");
        int sign = 1;
        if (peek() == '+' || peek() == '-') {
            sign = peek() == '-' ? -1 : 1;
            ++pos_;
        }
        result += parse_term() * Rational(sign);
        for (;;) {
            skip_ws();
            if (at_end()) break;
            char c = peek();
            if (c != '+' && c != '-') fail(std::string("expected '+' or '-' but found '") + c + "'");
            ++pos_;
            Poly t = parse_term();
            if (c == '-') result -= t;
            else result += t;
        }
        return result;
    }

private:
    Poly parse_term() {
        skip_ws();
        if (at_end()) fail("expected a term");
        Rational coeff = 1;
        MultiIndex e(nvars_);
        bool need_factor = true;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = parse_coeff();
            need_factor = false;
        } else {
            parse_factor(e);
            need_factor = false;
        }
        for (;;) {
            skip_ws();
            if (at_end() || peek() != '*') break;
            ++pos_;
            skip_ws();
            parse_factor(e);
        }
        (void)need_factor;
        return Poly::monomial(e, coeff);
    }

    Rational parse_coeff() {
        Integer num = parse_uint("coefficient");
        skip_ws();
        if (!at_end() && peek() == '/') {
            ++pos_;
            skip_ws();
            std::size_t at = pos_;
            Integer den = parse_uint("denominator");
            if (den == 0) fail_at("zero denominator", at);
            Rational q(num, den);
            q.canonicalize();
            return q;
        }
        return Rational(num);
    }

    void parse_factor(MultiIndex& e) {
        if (at_end()) fail("expected a variable");
        char c = peek();
        std::size_t at = pos_;
        bool is_momentum = false;
        if (c == 'x') {
        } else if (c == 'k' && momenta_) {
            is_momentum = true;
        } else {
            fail(std::string("expected a variable but found '") + c + "'");
        }
        ++pos_;
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected a variable index");
        Integer idx = parse_uint("variable index");
        if (idx < 1) fail_at("variable index must be >= 1", at);
        if (idx > Integer(static_cast<unsigned long>(n_))) {
            std::ostringstream os;
            os << "variable index " << idx.get_str() << " out of range (n = " << n_ << ")";
            fail_at(os.str(), at);
        }
        unsigned long exp = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
            ++pos_;
            skip_ws();
            Integer ex = parse_uint("exponent");
            if (!ex.fits_uint_p()) fail("exponent too large");
            exp = ex.get_ui();
        }
        std::size_t var = idx.get_ui() - 1 + (is_momentum ? n_ : 0);
        e[var] += static_cast<unsigned>(exp);
    }

    Integer parse_uint(const char* what) {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail(std::string("expected ") + what);
        return Integer(std::string(s_.substr(start, pos_ - start)), 10);
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    [[noreturn]] void fail(const std::string& msg) { fail_at(msg, pos_); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t at) {
        std::ostringstream os;
        os << msg << " at position " << at;
        throw ParseError(os.str(), at);
    }

    std::string_view s_;
    std::size_t n_;
    bool momenta_;
    std::size_t nvars_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, std::size_t n, bool momenta) {
    return PolyParser(text, n, momenta).parse();
}

std::string format_poly(const Poly& p, std::size_t xcount) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        Rational mag = abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        if (mag != 1 || e.is_zero()) {
            os << mag.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (wrote) os << '*';
            if (i < xcount) os << 'x' << (i + 1);
            else os << 'k' << (i - xcount + 1);
            if (e[i] > 1) os << '^' << e[i];
            wrote = true;
        }
    }
    return os.str();
}

}  // namespace diolic

namespace diolic {

std::string format_vec(const PolyVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.rank(); ++i) {
        if (i) s += ", ";
        s += format_poly(v[i]);
    }
    return s + ")";
}

}  // namespace diolic
