#include "diolic/symbols.hpp"

#include <algorithm>

#include "diolic/error.hpp"
#include "diolic/text.hpp"

namespace diolic {

namespace {

int momentum_degree(const MultiIndex& e, std::size_t n) {
    int d = 0;
    for (std::size_t i = n; i < 2 * n; ++i) d += static_cast<int>(e[i]);
    return d;
}

// Embeds a Poly over n variables into the 2n-variable symbol ring.
Poly lift(const Poly& a) {
    const std::size_t n = a.nvars();
    Poly r(2 * n);
    for (const auto& [e, c] : a.terms()) {
        MultiIndex f(2 * n);
        for (std::size_t i = 0; i < n; ++i) f[i] = e[i];
        r.add_term(f, c);
    }
    return r;
}

void require_same_n(const SymbolPoly& a, const SymbolPoly& b, const char* where) {
    require_same_nvars(a.nvars(), b.nvars(), where);
}

}  // namespace

SymbolPoly::SymbolPoly(std::size_t n, int k) : n_(n), k_(k), p_(2 * n) {}

SymbolPoly::SymbolPoly(std::size_t n, int k, Poly p) : n_(n), k_(k), p_(std::move(p)) {
    require_same_nvars(p_.nvars(), 2 * n, "SymbolPoly");
    for (const auto& [e, c] : p_.terms())
        if (momentum_degree(e, n) != k)
            throw DomainError("SymbolPoly: not homogeneous of the stated momentum degree");
}

SymbolPoly SymbolPoly::function(const Poly& a) { return SymbolPoly(a.nvars(), 0, lift(a)); }

SymbolPoly& SymbolPoly::operator+=(const SymbolPoly& o) {
    require_same_n(*this, o, "SymbolPoly::+");
    if (o.is_zero()) return *this;
    if (is_zero()) k_ = o.k_;
    else if (k_ != o.k_) throw DomainError("SymbolPoly::+: momentum degrees differ");
    p_ += o.p_;
    return *this;
}

SymbolPoly& SymbolPoly::operator-=(const SymbolPoly& o) { return *this += -o; }

SymbolPoly SymbolPoly::operator-() const { return SymbolPoly(n_, k_, -p_); }

SymbolPoly parse_symbol(std::string_view text, std::size_t n, int zero_degree) {
    Poly p = parse_poly(text, n, true);
    if (p.is_zero()) return SymbolPoly(n, zero_degree);
    int k = momentum_degree(p.terms().begin()->first, n);
    for (const auto& [e, c] : p.terms())
        if (momentum_degree(e, n) != k)
            throw ParseError("symbol is not homogeneous in the momenta k1..kn");
    return SymbolPoly(n, k, std::move(p));
}

std::string format_symbol(const SymbolPoly& s) { return format_poly(s.poly(), s.nvars()); }

SymbolPoly smbl_scalar(const ScalarOp& op, int k) {
    if (op.order() > k) throw DomainError("smbl_scalar: operator order exceeds k");
    const std::size_t n = op.nvars();
    Poly r(2 * n);
    for (const auto& [sigma, c] : op.coeffs()) {
        if (static_cast<int>(sigma.total_degree()) != k) continue;
        for (const auto& [e, q] : c.terms()) {
            MultiIndex f(2 * n);
            for (std::size_t i = 0; i < n; ++i) {
                f[i] = e[i];
                f[n + i] = sigma[i];
            }
            r.add_term(f, q);
        }
    }
    return SymbolPoly(n, k, std::move(r));
}

SymbolPoly star(const SymbolPoly& s, const SymbolPoly& t) {
    require_same_n(s, t, "star");
    return SymbolPoly(s.nvars(), s.degree() + t.degree(), s.poly() * t.poly());
}

SymbolPoly poisson_bracket(const SymbolPoly& s, const SymbolPoly& t) {
    require_same_n(s, t, "poisson_bracket");
    const std::size_t n = s.nvars();
    Poly r(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        r += partial(s.poly(), n + i) * partial(t.poly(), i);
        r -= partial(s.poly(), i) * partial(t.poly(), n + i);
    }
    return SymbolPoly(n, s.degree() + t.degree() - 1, std::move(r));
}

bool DiolicSymbol0::is_zero() const {
    if (!s.is_zero()) return false;
    for (const auto& row : Ms)
        for (const auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}

bool DiolicSymbol1::is_zero() const {
    return std::all_of(comps.begin(), comps.end(), [](const SymbolPoly& c) { return c.is_zero(); });
}

DiolicSymbol0 diolic_symbol0(const DiffOp0& b) {
    DiolicSymbol0 out;
    out.k = b.k;
    out.s = smbl_scalar(b.boxA, b.k);
    const std::size_t m = b.rank();
    out.Ms.assign(m, std::vector<SymbolPoly>(m, SymbolPoly(b.nvars(), b.k - 1)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) out.Ms[i][j] = smbl_scalar(b.M(i, j), b.k - 1);
    return out;
}

DiolicSymbol1 diolic_symbol1(const DiffOp1& b) {
    DiolicSymbol1 out;
    out.k = b.k;
    for (const auto& op : b.ops) out.comps.push_back(smbl_scalar(op, b.k));
    return out;
}

DiolicSymbolNeg1 diolic_symbol_neg1(const DiffOpNeg1& b) { return {b.k, smbl_scalar(b.op, b.k)}; }

DiolicSymbol1 diolic_poisson_bracket(const DiolicSymbol0& S, const DiolicSymbol1& T) {
    if (S.rank() != T.rank()) throw DimensionError("diolic_poisson_bracket: ranks differ");
    const std::size_t m = S.rank();
    const std::size_t n = S.s.nvars();
    DiolicSymbol1 out;
    out.k = std::max(S.k + T.k - 1, 0);
    for (std::size_t j = 0; j < m; ++j) {
        SymbolPoly c(n, S.k + T.k - 1);
        c += poisson_bracket(S.s, T.comps[j]);
        for (std::size_t b = 0; b < m; ++b) c += star(S.Ms[j][b], T.comps[b]);
        out.comps.push_back(std::move(c));
    }
    return out;
}

DiolicSymbol0 diolic_poisson_bracket(const DiolicSymbol0& S, const DiolicSymbol0& T) {
    if (S.rank() != T.rank()) throw DimensionError("diolic_poisson_bracket: ranks differ");
    const std::size_t m = S.rank();
    const std::size_t n = S.s.nvars();
    const int k = S.k + T.k - 1;
    DiolicSymbol0 out;
    out.k = std::max(k, 0);
    out.s = SymbolPoly(n, k) + poisson_bracket(S.s, T.s);
    out.Ms.assign(m, std::vector<SymbolPoly>(m, SymbolPoly(n, k - 1)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            SymbolPoly e(n, k - 1);
            e += poisson_bracket(S.s, T.Ms[i][j]);
            e -= poisson_bracket(T.s, S.Ms[i][j]);
            for (std::size_t a = 0; a < m; ++a) {
                e += star(S.Ms[i][a], T.Ms[a][j]);
                e -= star(T.Ms[i][a], S.Ms[a][j]);
            }
            out.Ms[i][j] = std::move(e);
        }
    return out;
}

DiolicSymbolNeg1 diolic_poisson_bracket(const DiolicSymbol0& S, const DiolicSymbolNeg1& T) {
    if (S.rank() != 1) throw DomainError("diolic_poisson_bracket: degree -1 symbols need rank 1");
    const int k = S.k + T.k - 1;
    SymbolPoly t(S.s.nvars(), k);
    t += poisson_bracket(S.s, T.t);
    t -= star(T.t, S.Ms[0][0]);
    return {std::max(k, 0), t};
}

Der0 lambda_k(const DiffOp0& b, const std::vector<Poly>& args) {
    if (b.k < 1 || args.size() != static_cast<std::size_t>(b.k - 1))
        throw DomainError("lambda_k: expected exactly k-1 arguments");
    ScalarOp a = b.boxA;
    MatrixOp m = b.M;
    for (const auto& x : args) {
        a = delta(x, a);
        m = delta(x, m);
    }
    if (a.order() > 1 || m.order() > 0)
        throw InternalError("lambda_k: nested delta has unexpected order");
    return Der0(a.first_order_part(), m.zeroth_order_part());
}

}  // namespace diolic
