#include "diolic/multider.hpp"

#include <sstream>

#include "diolic/error.hpp"
#include "diolic/text.hpp"

namespace diolic {

namespace {

int sign_of(int exponent) { return (exponent % 2 == 0) ? 1 : -1; }

bool in_range(int degree) { return degree == 0 || degree == 1; }

// Residual lists are capped; the count of suppressed entries becomes a note.
constexpr std::size_t kMaxResiduals = 24;

class CappedReport {
public:
    explicit CappedReport(CheckReport& r) : r_(r) {}
    void fail(const std::string& name, const std::string& value) {
        if (shown_ < kMaxResiduals) {
            r_.fail(name, value);
            ++shown_;
        } else {
            r_.pass = false;
            ++hidden_;
        }
    }
    ~CappedReport() {
        if (hidden_) r_.note("suppressed_residuals", std::to_string(hidden_));
    }

private:
    CheckReport& r_;
    std::size_t shown_ = 0, hidden_ = 0;
};

struct Probe {
    GradedElement z;
    std::string label;
};

std::vector<Probe> even_probes(std::size_t n, std::size_t m, unsigned d) {
    std::vector<Probe> out;
    for (const auto& e : monomials_up_to(n, d)) {
        Poly a = Poly::monomial(e);
        out.push_back({GradedElement::even(a, m), format_poly(a)});
    }
    return out;
}

std::vector<Probe> odd_probes(std::size_t n, std::size_t m, unsigned d) {
    std::vector<Probe> out;
    for (const auto& e : monomials_up_to(n, d))
        for (std::size_t b = 0; b < m; ++b) {
            Poly a = Poly::monomial(e);
            std::string label = e.is_zero() ? "" : format_poly(a) + "*";
            out.push_back({GradedElement::odd(PolyVec::basis(n, m, b, a)),
                           label + "e" + std::to_string(b + 1)});
        }
    return out;
}

std::string format_element(const GradedElement& z) {
    if (z.degree == 0) return format_poly(z.value.a);
    if (z.degree == 1) return format_vec(z.value.p);
    return "0";
}

std::string triple_name(const char* family, const Probe& a, const Probe& b, const Probe& c) {
    return std::string(family) + "[" + a.label + ", " + b.label + ", " + c.label + "]";
}

GradedElement add(const GradedElement& x, const GradedElement& y, int c) {
    GradedElement r = x;
    r.value = x.value + Poly(x.value.nvars(), c) * y.value;
    return r;
}

// d_s for slot s: identity at 0, d_{s-1} otherwise.
Poly slot_partial(const Poly& a, std::size_t s) { return s == 0 ? a : partial(a, s - 1); }

void require_square(const std::vector<std::vector<Poly>>& c, std::size_t size, std::size_t n,
                    const char* where) {
    if (c.size() != size) throw DimensionError(std::string(where) + ": wrong number of rows");
    for (const auto& row : c) {
        if (row.size() != size) throw DimensionError(std::string(where) + ": wrong number of columns");
        for (const auto& p : row) require_same_nvars(p.nvars(), n, where);
    }
}

bool antisymmetric(const std::vector<std::vector<Poly>>& c) {
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i; j < c.size(); ++j)
            if (!(c[i][j] == -c[j][i])) return false;
    return true;
}

}  // namespace

// ----------------------------------------------------------- GradedElement

GradedElement GradedElement::even(const Poly& a, std::size_t rank) {
    return {0, DiolicElement::even(a, rank)};
}

GradedElement GradedElement::odd(const PolyVec& p) { return {1, DiolicElement::odd(p)}; }

GradedElement GradedElement::zero(int degree, std::size_t nvars, std::size_t rank) {
    return {degree, DiolicElement(Poly(nvars), PolyVec(nvars, rank))};
}

// ----------------------------------------------------------------- MultiDer

MultiDer::MultiDer(int arity, int degree, std::size_t nvars, std::size_t rank, Eval f)
    : arity_(arity), degree_(degree), n_(nvars), m_(rank),
      f_(std::make_shared<const Eval>(std::move(f))) {
    if (arity < 1) throw InternalError("MultiDer: use element() for arity 0");
}

MultiDer MultiDer::element(const GradedElement& e, std::size_t rank) {
    MultiDer d;
    d.degree_ = e.degree;
    d.n_ = e.value.nvars();
    d.m_ = rank;
    d.elem_ = std::make_shared<const GradedElement>(
        in_range(e.degree) ? e : GradedElement::zero(e.degree, e.value.nvars(), rank));
    return d;
}

GradedElement MultiDer::operator()(const std::vector<GradedElement>& args) const {
    if (static_cast<int>(args.size()) != arity_)
        throw InternalError("MultiDer: wrong number of arguments");
    int out = degree_;
    for (const auto& a : args) {
        if (!in_range(a.degree)) return GradedElement::zero(out, n_, m_);
        out += a.degree;
    }
    if (!in_range(out)) return GradedElement::zero(out, n_, m_);
    DiolicElement v = (*f_)(args);
    // Keep only the component of the output degree.
    if (out == 0) return GradedElement::even(v.a, m_);
    return GradedElement::odd(v.p);
}

GradedElement MultiDer::value() const {
    if (arity_ != 0) throw InternalError("MultiDer::value: not an element");
    return *elem_;
}

MultiDer MultiDer::curry(const GradedElement& a) const {
    if (arity_ == 0) throw InternalError("MultiDer::curry: no slot to fill");
    if (arity_ == 1) return element((*this)({a}), m_);
    MultiDer self = *this;
    return MultiDer(arity_ - 1, degree_ + a.degree, n_, m_,
                    [self, a](const std::vector<GradedElement>& rest) {
                        std::vector<GradedElement> args;
                        args.reserve(rest.size() + 1);
                        args.push_back(a);
                        args.insert(args.end(), rest.begin(), rest.end());
                        return self(args).value;
                    });
}

MultiDer combine(const MultiDer& x, const Rational& c, const MultiDer& y) {
    if (x.arity_ != y.arity_ || x.degree_ != y.degree_)
        throw InternalError("combine: arity or degree mismatch");
    const Poly cp(x.n_, c);
    if (x.arity_ == 0) {
        GradedElement e = x.value();
        e.value = e.value + cp * y.value().value;
        return MultiDer::element(e, x.m_);
    }
    return MultiDer(x.arity_, x.degree_, x.n_, x.m_,
                    [x, y, cp](const std::vector<GradedElement>& args) {
                        return x(args).value + cp * y(args).value;
                    });
}

MultiDer schouten(const MultiDer& d, const MultiDer& e) {
    const int i = d.arity(), j = e.arity(), h = e.degree();
    if (i == 0 && j == 0) throw InternalError("schouten: bracket of two elements");
    if (j == 0) return d.curry(e.value());
    if (i == 0) {
        const GradedElement c = d.value();
        MultiDer v = e.curry(c);
        MultiDer zero = combine(v, -1, v);
        return combine(zero, sign_of(c.degree * h + j), v);
    }
    return MultiDer(i + j - 1, d.degree() + h, d.nvars(), d.rank(),
                    [d, e, h, j](const std::vector<GradedElement>& args) {
                        const GradedElement& a = args.front();
                        MultiDer t1 = schouten(d, e.curry(a));
                        MultiDer t2 = schouten(d.curry(a), e);
                        MultiDer r = combine(t1, -sign_of(a.degree * h + j), t2);
                        if (r.arity() == 0) return r.value().value;
                        std::vector<GradedElement> rest(args.begin() + 1, args.end());
                        return r(rest).value;
                    });
}

// -------------------------------------------------------------------- BiDer0

BiDer0::BiDer0(std::vector<std::vector<Poly>> piAA, std::vector<PolyMat> piEnd, std::size_t rank)
    : n(piAA.size()), m(rank), PiAA(std::move(piAA)), PiEnd(std::move(piEnd)) {
    require_square(PiAA, n, n, "BiDer0");
    if (!antisymmetric(PiAA)) throw DomainError("BiDer0: bivector must be antisymmetric");
    if (PiEnd.size() != n) throw DimensionError("BiDer0: end part needs one matrix per variable");
    for (const auto& g : PiEnd) {
        require_same_nvars(g.nvars(), n, "BiDer0");
        if (g.rows() != m || g.cols() != m) throw DimensionError("BiDer0: end part must be m x m");
    }
}

BiDer0 BiDer0::from_upper(std::size_t n, std::size_t m, const std::vector<Poly>& upper,
                          std::vector<PolyMat> piEnd) {
    if (upper.size() != n * (n - 1) / 2)
        throw DimensionError("BiDer0: upper triangle needs n(n-1)/2 entries");
    std::vector<std::vector<Poly>> pi(n, std::vector<Poly>(n, Poly(n)));
    std::size_t t = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++t) {
            pi[i][j] = upper[t];
            pi[j][i] = -upper[t];
        }
    return BiDer0(std::move(pi), std::move(piEnd), m);
}

Poly BiDer0::eval(const Poly& a, const Poly& b) const {
    Poly r(n);
    for (std::size_t i = 0; i < n; ++i) {
        Poly da = partial(a, i);
        if (da.is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (!PiAA[i][j].is_zero()) r += PiAA[i][j] * da * partial(b, j);
    }
    return r;
}

PolyVec BiDer0::eval(const Poly& a, const PolyVec& p) const {
    PolyVec r(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        Poly da = partial(a, i);
        if (da.is_zero()) continue;
        PolyVec inner = PiEnd[i] * p;
        for (std::size_t j = 0; j < n; ++j) {
            if (PiAA[i][j].is_zero()) continue;
            for (std::size_t b = 0; b < m; ++b) inner[b] += PiAA[i][j] * partial(p[b], j);
        }
        r += da * inner;
    }
    return r;
}

GradedElement BiDer0::eval(const GradedElement& z1, const GradedElement& z2) const {
    const int out = z1.degree + z2.degree;
    if (!in_range(z1.degree) || !in_range(z2.degree) || !in_range(out))
        return GradedElement::zero(out, n, m);
    if (z1.degree == 0 && z2.degree == 0) return GradedElement::even(eval(z1.value.a, z2.value.a), m);
    if (z1.degree == 0) return GradedElement::odd(eval(z1.value.a, z2.value.p));
    return GradedElement::odd(-eval(z2.value.a, z1.value.p));
}

MultiDer BiDer0::as_multider() const {
    BiDer0 self = *this;
    return MultiDer(2, 0, n, m, [self](const std::vector<GradedElement>& args) {
        return self.eval(args[0], args[1]).value;
    });
}

DiolicElement schouten_self_eval(const BiDer0& pi, const GradedElement& z1,
                                 const GradedElement& z2, const GradedElement& z3) {
    MultiDer p = pi.as_multider();
    return schouten(p, p)({z1, z2, z3}).value;
}

CheckReport poisson0_pde_report(const BiDer0& pi) {
    const std::size_t n = pi.n, m = pi.m;
    const auto& P = pi.PiAA;
    const auto& M = pi.PiEnd;
    CheckReport rep;
    auto idx = [](std::initializer_list<std::size_t> v) {
        std::string s = "[";
        bool first = true;
        for (auto i : v) {
            s += (first ? "" : ",") + std::to_string(i + 1);
            first = false;
        }
        return s + "]";
    };

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Poly r(n);
                for (std::size_t l = 0; l < n; ++l)
                    r += P[i][l] * partial(P[j][k], l) + P[j][l] * partial(P[k][i], l) +
                         P[k][l] * partial(P[i][j], l);
                if (!r.is_zero()) rep.fail("poisson" + idx({i, j, k}), format_poly(r));
            }

    auto apply_field = [&](std::size_t j, const PolyMat& g) {
        PolyMat r(n, m, m);
        for (std::size_t l = 0; l < n; ++l) {
            if (P[j][l].is_zero()) continue;
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = 0; b < m; ++b) r(a, b) += P[j][l] * partial(g(a, b), l);
        }
        return r;
    };
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            PolyMat full = apply_field(j, M[k]) - apply_field(k, M[j]) + commutator(M[j], M[k]);
            PolyMat printed(n, m, m);
            for (std::size_t i = 0; i < n; ++i) {
                full -= partial(P[j][k], i) * M[i];
                printed += partial(P[j][k], i) * M[i];
            }
            printed -= apply_field(j, M[k]) - apply_field(k, M[j]);
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = 0; b < m; ++b) {
                    if (!full(a, b).is_zero())
                        rep.fail("diolic" + idx({j, k}) + idx({a, b}), format_poly(full(a, b)));
                    if (!printed(a, b).is_zero())
                        rep.note("printed_form" + idx({j, k}) + idx({a, b}),
                                 format_poly(printed(a, b)));
                }
        }

    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            Poly xj = Poly::variable(n, j), xk = Poly::variable(n, k);
            Poly bracket = pi.eval(xj, xk);
            for (const auto& probe : odd_probes(n, m, 1)) {
                const PolyVec& p = probe.z.value.p;
                PolyVec r = pi.eval(xj, pi.eval(xk, p)) - pi.eval(xk, pi.eval(xj, p)) -
                            pi.eval(bracket, p);
                if (!r.is_zero())
                    rep.fail("commutator" + idx({j, k}) + "[" + probe.label + "]", format_vec(r));
            }
        }
    return rep;
}

bool schouten_vanishes(const BiDer0& pi) {
    const std::size_t n = pi.n, m = pi.m;
    MultiDer p = pi.as_multider();
    MultiDer s = schouten(p, p);
    auto evens = even_probes(n, m, 2);
    auto odds = odd_probes(n, m, 2);
    for (std::size_t i = 0; i < evens.size(); ++i)
        for (std::size_t j = i; j < evens.size(); ++j) {
            for (std::size_t k = j; k < evens.size(); ++k)
                if (!s({evens[i].z, evens[j].z, evens[k].z}).is_zero()) return false;
            for (const auto& o : odds)
                if (!s({o.z, evens[i].z, evens[j].z}).is_zero()) return false;
        }
    return true;
}

CheckReport is_poisson0(const BiDer0& pi) {
    CheckReport rep = poisson0_pde_report(pi);
    if (rep.pass != schouten_vanishes(pi))
        throw InternalError("is_poisson0: PDE verdict disagrees with the Schouten bracket");
    return rep;
}

// -------------------------------------------------------------------- BiDer1

BiDer1::BiDer1(std::vector<std::vector<std::vector<Poly>>> pi, std::size_t nvars, std::size_t rank)
    : n(nvars), m(rank), Pi(std::move(pi)) {
    if (Pi.size() != n) throw DimensionError("BiDer1: wrong shape");
    for (std::size_t i = 0; i < n; ++i) {
        if (Pi[i].size() != n) throw DimensionError("BiDer1: wrong shape");
        for (std::size_t j = 0; j < n; ++j) {
            if (Pi[i][j].size() != m) throw DimensionError("BiDer1: wrong shape");
            for (std::size_t a = 0; a < m; ++a) require_same_nvars(Pi[i][j][a].nvars(), n, "BiDer1");
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t a = 0; a < m; ++a)
                if (!(Pi[i][j][a] == -Pi[j][i][a]))
                    throw DomainError("BiDer1: bivector must be antisymmetric");
}

PolyVec BiDer1::eval(const Poly& a, const Poly& b) const {
    PolyVec r(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        Poly da = partial(a, i);
        if (da.is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            Poly dd = da * partial(b, j);
            if (dd.is_zero()) continue;
            for (std::size_t c = 0; c < m; ++c) r[c] += Pi[i][j][c] * dd;
        }
    }
    return r;
}

// ----------------------------------------------------------------- BiDerNeg1

BiDerNeg1::BiDerNeg1(std::vector<std::vector<Poly>> rho_,
                     std::vector<std::vector<std::vector<Poly>>> structure_, std::size_t nvars)
    : n(nvars), m(rho_.size()), rho(std::move(rho_)), structure(std::move(structure_)) {
    for (const auto& r : rho) {
        if (r.size() != n) throw DimensionError("BiDerNeg1: anchor must be m x n");
        for (const auto& p : r) require_same_nvars(p.nvars(), n, "BiDerNeg1");
    }
    if (structure.size() != m) throw DimensionError("BiDerNeg1: structure must be m x m x m");
    for (const auto& s : structure) {
        if (s.size() != m) throw DimensionError("BiDerNeg1: structure must be m x m x m");
        for (const auto& t : s) {
            if (t.size() != m) throw DimensionError("BiDerNeg1: structure must be m x m x m");
            for (const auto& p : t) require_same_nvars(p.nvars(), n, "BiDerNeg1");
        }
    }
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b)
            for (std::size_t c = 0; c < m; ++c)
                if (!(structure[a][b][c] == -structure[b][a][c]))
                    throw DomainError("BiDerNeg1: structure functions must be antisymmetric");
}

VectorField BiDerNeg1::anchor(const PolyVec& p) const {
    VectorField x(n);
    for (std::size_t a = 0; a < m; ++a) {
        if (p[a].is_zero()) continue;
        for (std::size_t i = 0; i < n; ++i) x[i] += p[a] * rho[a][i];
    }
    return x;
}

PolyVec BiDerNeg1::bracket(const PolyVec& p, const PolyVec& q) const {
    PolyVec r(n, m);
    for (std::size_t a = 0; a < m; ++a) {
        if (p[a].is_zero()) continue;
        for (std::size_t b = 0; b < m; ++b) {
            if (q[b].is_zero()) continue;
            Poly pq = p[a] * q[b];
            for (std::size_t c = 0; c < m; ++c)
                if (!structure[a][b][c].is_zero()) r[c] += pq * structure[a][b][c];
        }
    }
    VectorField rp = anchor(p), rq = anchor(q);
    for (std::size_t b = 0; b < m; ++b) r[b] += rp.apply(q[b]) - rq.apply(p[b]);
    return r;
}

Der0 BiDerNeg1::der_of_basis(std::size_t a) const {
    VectorField x(rho[a]);
    PolyMat g(n, m, m);
    for (std::size_t b = 0; b < m; ++b)
        for (std::size_t c = 0; c < m; ++c) g(c, b) = structure[a][b][c];
    return Der0(x, g);
}

GradedElement BiDerNeg1::eval(const GradedElement& z1, const GradedElement& z2) const {
    const int out = z1.degree + z2.degree - 1;
    if (!in_range(z1.degree) || !in_range(z2.degree) || !in_range(out))
        return GradedElement::zero(out, n, m);
    if (z1.degree == 1 && z2.degree == 1) return GradedElement::odd(bracket(z1.value.p, z2.value.p));
    if (z1.degree == 1) return GradedElement::even(anchor(z1.value.p).apply(z2.value.a), m);
    return GradedElement::even(-anchor(z2.value.p).apply(z1.value.a), m);
}

CheckReport is_lie_algebroid(const BiDerNeg1& l) {
    const std::size_t n = l.n, m = l.m;
    CheckReport rep;
    {
        CappedReport capped(rep);
        auto probes = odd_probes(n, m, 2);
        for (std::size_t i = 0; i < probes.size(); ++i)
            for (std::size_t j = i + 1; j < probes.size(); ++j) {
                const PolyVec& p = probes[i].z.value.p;
                const PolyVec& q = probes[j].z.value.p;
                PolyVec pq = l.bracket(p, q);
                for (std::size_t k = j + 1; k < probes.size(); ++k) {
                    const PolyVec& r = probes[k].z.value.p;
                    PolyVec jac = l.bracket(pq, r) - l.bracket(p, l.bracket(q, r)) +
                                  l.bracket(q, l.bracket(p, r));
                    if (!jac.is_zero())
                        capped.fail(triple_name("jacobi", probes[i], probes[j], probes[k]),
                                    format_vec(jac));
                }
            }
    }
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            VectorField lhs = l.anchor(l.bracket(PolyVec::basis(n, m, a), PolyVec::basis(n, m, b)));
            VectorField rhs = lie_bracket(VectorField(l.rho[a]), VectorField(l.rho[b]));
            VectorField d = lhs - rhs;
            for (std::size_t i = 0; i < n; ++i)
                if (!d[i].is_zero())
                    rep.fail("anchor[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "][" +
                                 std::to_string(i + 1) + "]",
                             format_poly(d[i]));
        }
    return rep;
}

// ----------------------------------------------------------------- BiDerNeg2

BiDerNeg2::BiDerNeg2(Poly g_, std::size_t rank) : g(std::move(g_)) {
    if (rank != 1) throw DomainError("degree -2 biderivations exist only for rank 1");
}

Poly BiDerNeg2::eval(const PolyVec& p, const PolyVec& q) const {
    if (p.rank() != 1 || q.rank() != 1) throw DimensionError("BiDerNeg2::eval: rank must be 1");
    return g * p[0] * q[0];
}

// ----------------------------------------------------------------- Jacobi

GradedElement graded_jacobiator(const GradedBracket& b, int g, const GradedElement& z1,
                                const GradedElement& z2, const GradedElement& z3) {
    GradedElement t1 = b(b(z1, z2), z3);
    GradedElement t2 = b(z1, b(z2, z3));
    GradedElement t3 = b(z2, b(z1, z3));
    GradedElement r = add(t1, t2, -1);
    return add(r, t3, sign_of((z1.degree + g) * (z2.degree + g)));
}

JacobiOp0::JacobiOp0(std::vector<std::vector<Poly>> c, std::vector<MatrixOp> d, std::size_t nvars,
                     std::size_t rank)
    : n(nvars), m(rank), cAA(std::move(c)), D(std::move(d)) {
    require_square(cAA, n + 1, n, "JacobiOp0");
    if (!antisymmetric(cAA)) throw DomainError("JacobiOp0: scalar part must be skew-symmetric");
    if (D.size() != n + 1) throw DimensionError("JacobiOp0: need n+1 module operators");
    for (const auto& op : D) {
        require_same_nvars(op.nvars(), n, "JacobiOp0");
        if (op.rows() != m || op.cols() != m) throw DimensionError("JacobiOp0: operators must be m x m");
        if (op.order() > 1) throw DomainError("JacobiOp0: module operators must have order <= 1");
    }
    // Second-slot symbol: B(a, bp) - b B(a, p) = (B(a, b) - b B(a, 1)) p.
    auto mons = monomials_up_to(n, 2);
    const Poly one(n, 1);
    for (const auto& ea : mons) {
        Poly a = Poly::monomial(ea);
        Poly a1 = eval(a, one);
        for (const auto& eb : mons) {
            Poly b = Poly::monomial(eb);
            Poly s = eval(a, b) - b * a1;
            for (std::size_t beta = 0; beta < m; ++beta) {
                PolyVec p = PolyVec::basis(n, m, beta);
                if (!(eval(a, b * p) - b * eval(a, p) == s * p))
                    throw DomainError("JacobiOp0: module part does not share the scalar symbol");
            }
        }
    }
}

JacobiOp0 JacobiOp0::from_poisson(const BiDer0& pi) {
    const std::size_t n = pi.n, m = pi.m;
    std::vector<std::vector<Poly>> c(n + 1, std::vector<Poly>(n + 1, Poly(n)));
    std::vector<MatrixOp> d(n + 1, MatrixOp(n, m, m));
    for (std::size_t i = 0; i < n; ++i) {
        ScalarOp x(n);
        for (std::size_t j = 0; j < n; ++j) {
            c[i + 1][j + 1] = pi.PiAA[i][j];
            x.add_term(MultiIndex::unit(n, j), pi.PiAA[i][j]);
        }
        d[i + 1] = MatrixOp::diagonal(x, m) + MatrixOp::from_matrix(pi.PiEnd[i]);
    }
    return JacobiOp0(std::move(c), std::move(d), n, m);
}

Poly JacobiOp0::eval(const Poly& a, const Poly& b) const {
    Poly r(n);
    for (std::size_t s = 0; s <= n; ++s) {
        Poly da = slot_partial(a, s);
        if (da.is_zero()) continue;
        for (std::size_t t = 0; t <= n; ++t)
            if (!cAA[s][t].is_zero()) r += cAA[s][t] * da * slot_partial(b, t);
    }
    return r;
}

PolyVec JacobiOp0::eval(const Poly& a, const PolyVec& p) const {
    PolyVec r(n, m);
    for (std::size_t s = 0; s <= n; ++s) {
        Poly da = slot_partial(a, s);
        if (!da.is_zero()) r += da * D[s].apply(p);
    }
    return r;
}

GradedElement JacobiOp0::eval(const GradedElement& z1, const GradedElement& z2) const {
    const int out = z1.degree + z2.degree;
    if (!in_range(z1.degree) || !in_range(z2.degree) || !in_range(out))
        return GradedElement::zero(out, n, m);
    if (z1.degree == 0 && z2.degree == 0) return GradedElement::even(eval(z1.value.a, z2.value.a), m);
    if (z1.degree == 0) return GradedElement::odd(eval(z1.value.a, z2.value.p));
    return GradedElement::odd(-eval(z2.value.a, z1.value.p));
}

GradedElement jacobiator0(const JacobiOp0& b, const GradedElement& z1, const GradedElement& z2,
                          const GradedElement& z3) {
    GradedBracket br = [&b](const GradedElement& x, const GradedElement& y) { return b.eval(x, y); };
    return graded_jacobiator(br, 0, z1, z2, z3);
}

CheckReport is_jacobi0(const JacobiOp0& b) {
    const std::size_t n = b.n, m = b.m;
    CheckReport rep;

    // The module component of the Jacobiator on coordinates and 1.
    std::vector<Probe> coords{{GradedElement::even(Poly(n, 1), m), "1"}};
    for (std::size_t i = 0; i < n; ++i)
        coords.push_back({GradedElement::even(Poly::variable(n, i), m), "x" + std::to_string(i + 1)});
    for (std::size_t i = 0; i < coords.size(); ++i)
        for (std::size_t j = i + 1; j < coords.size(); ++j) {
            const Poly& a = coords[i].z.value.a;
            const Poly& c = coords[j].z.value.a;
            for (std::size_t beta = 0; beta < m; ++beta) {
                PolyVec p = PolyVec::basis(n, m, beta);
                PolyVec r = b.eval(b.eval(a, c), p) - b.eval(a, b.eval(c, p)) + b.eval(c, b.eval(a, p));
                if (!r.is_zero())
                    rep.fail("diolic_jacobi[" + coords[i].label + ", " + coords[j].label + ", e" +
                                 std::to_string(beta + 1) + "]",
                             format_vec(r));
            }
        }

    CappedReport capped(rep);
    auto evens = even_probes(n, m, 3);
    auto odds = odd_probes(n, m, 3);
    for (std::size_t i = 0; i < evens.size(); ++i)
        for (std::size_t j = i; j < evens.size(); ++j) {
            for (std::size_t k = j; k < evens.size(); ++k) {
                GradedElement r = jacobiator0(b, evens[i].z, evens[j].z, evens[k].z);
                if (!r.is_zero())
                    capped.fail(triple_name("jacobiator", evens[i], evens[j], evens[k]),
                                format_element(r));
            }
            for (const auto& o : odds) {
                GradedElement r = jacobiator0(b, o.z, evens[i].z, evens[j].z);
                if (!r.is_zero())
                    capped.fail(triple_name("jacobiator", o, evens[i], evens[j]), format_element(r));
            }
        }
    return rep;
}

JacobiNeg1::JacobiNeg1(std::vector<std::vector<Poly>> j, std::size_t nvars, std::size_t rank)
    : n(nvars), J(std::move(j)) {
    if (rank != 1) throw DomainError("degree -1 Jacobi brackets exist only for rank 1");
    require_square(J, n + 1, n, "JacobiNeg1");
}

Poly JacobiNeg1::eval(const Poly& f, const Poly& g) const {
    Poly r(n);
    for (std::size_t s = 0; s <= n; ++s) {
        Poly df = slot_partial(f, s);
        if (df.is_zero()) continue;
        for (std::size_t t = 0; t <= n; ++t)
            if (!J[s][t].is_zero()) r += J[s][t] * df * slot_partial(g, t);
    }
    return r;
}

CheckReport is_jacobi_neg1(const JacobiNeg1& j) {
    CheckReport rep;
    const std::size_t n = j.n;
    for (std::size_t s = 0; s <= n; ++s)
        for (std::size_t t = s; t <= n; ++t) {
            Poly d = j.J[s][t] + j.J[t][s];
            if (!d.is_zero())
                rep.fail("skew[" + std::to_string(s) + "," + std::to_string(t) + "]", format_poly(d));
        }
    CappedReport capped(rep);
    auto probes = even_probes(n, 1, 3);
    for (std::size_t a = 0; a < probes.size(); ++a)
        for (std::size_t b = a + 1; b < probes.size(); ++b)
            for (std::size_t c = b + 1; c < probes.size(); ++c) {
                const Poly& f = probes[a].z.value.a;
                const Poly& g = probes[b].z.value.a;
                const Poly& h = probes[c].z.value.a;
                Poly r = j.eval(j.eval(f, g), h) - j.eval(f, j.eval(g, h)) + j.eval(g, j.eval(f, h));
                if (!r.is_zero())
                    capped.fail(triple_name("jacobiator", probes[a], probes[b], probes[c]),
                                format_poly(r));
            }
    return rep;
}

}  // namespace diolic
