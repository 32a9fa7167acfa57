#include "diolic/diole.hpp"

#include <algorithm>
#include <map>

#include "diolic/error.hpp"
#include "diolic/linalg.hpp"

namespace diolic {

namespace {

void require_rank(std::size_t a, std::size_t b, const char* where) {
    if (a != b) throw DimensionError(std::string(where) + ": module ranks differ");
}

PolyMat apply_entrywise(const VectorField& x, const PolyMat& g) {
    PolyMat r(g.nvars(), g.rows(), g.cols());
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) r(i, j) = x.apply(g(i, j));
    return r;
}

void require_same_symbol(const Der0& d, const Der0& d2, const char* where) {
    if (!(d.X == d2.X)) throw DomainError(std::string(where) + ": derivations have different symbols");
}

void check_against_blocks(const AnyDer& d1, const AnyDer& d2, const AnyDer& out,
                          std::size_t n, std::size_t m) {
    MatrixOp expect = block_commutator(block_of(d1, n, m), degree_of(d1), block_of(d2, n, m),
                                       degree_of(d2));
    if (!(expect == block_of(out, n, m)))
        throw InternalError("graded_commutator: coordinate formula disagrees with composed operators");
}

std::pair<std::size_t, std::size_t> dims_of(const AnyDer& d) {
    return std::visit(
        [](const auto& x) -> std::pair<std::size_t, std::size_t> {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ZeroDer>) return {0, 0};
            else return {x.nvars(), x.rank()};
        },
        d);
}

}  // namespace

// ------------------------------------------------------------ DiolicElement

DiolicElement::DiolicElement(Poly a_, PolyVec p_) : a(std::move(a_)), p(std::move(p_)) {
    require_same_nvars(a.nvars(), p.nvars(), "DiolicElement");
}

DiolicElement DiolicElement::even(const Poly& a, std::size_t rank) {
    return {a, PolyVec(a.nvars(), rank)};
}

DiolicElement DiolicElement::odd(const PolyVec& p) { return {Poly(p.nvars()), p}; }

DiolicElement& DiolicElement::operator+=(const DiolicElement& o) {
    a += o.a;
    p += o.p;
    return *this;
}

DiolicElement& DiolicElement::operator-=(const DiolicElement& o) {
    a -= o.a;
    p -= o.p;
    return *this;
}

DiolicElement operator*(const DiolicElement& x, const DiolicElement& y) {
    require_rank(x.rank(), y.rank(), "DiolicElement::*");
    return {x.a * y.a, x.a * y.p + y.a * x.p};
}

DiolicElement operator*(const Poly& c, DiolicElement x) {
    x.a *= c;
    x.p *= c;
    return x;
}

// --------------------------------------------------------------------- Der0

Der0::Der0(VectorField x, PolyMat g) : X(std::move(x)), G(std::move(g)) {
    require_same_nvars(X.nvars(), G.nvars(), "Der0");
    if (G.rows() != G.cols()) throw DimensionError("Der0: G must be square");
}

Der0 Der0::split(const VectorField& x, std::size_t rank) {
    return Der0(x, PolyMat(x.nvars(), rank, rank));
}

PolyVec Der0::apply(const PolyVec& p) const {
    require_rank(p.rank(), rank(), "Der0::apply");
    PolyVec r = G * p;
    for (std::size_t i = 0; i < p.rank(); ++i) r[i] += X.apply(p[i]);
    return r;
}

DiolicElement Der0::apply(const DiolicElement& e) const { return {apply(e.a), apply(e.p)}; }

MatrixOp Der0::block() const {
    const std::size_t n = nvars(), m = rank();
    MatrixOp b(n, m + 1, m + 1);
    ScalarOp x = ScalarOp::from_vector_field(X);
    b(0, 0) = x;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            ScalarOp e = ScalarOp::multiplication(G(i, j));
            if (i == j) e += x;
            b(i + 1, j + 1) = e;
        }
    return b;
}

// --------------------------------------------------------------------- Der1

Der1::Der1(std::vector<VectorField> z) : Z(std::move(z)) {
    for (const auto& v : Z) require_same_nvars(v.nvars(), nvars(), "Der1");
}

Der1 Der1::zero(std::size_t nvars, std::size_t rank) {
    return Der1(std::vector<VectorField>(rank, VectorField(nvars)));
}

bool Der1::is_zero() const {
    return std::all_of(Z.begin(), Z.end(), [](const VectorField& v) { return v.is_zero(); });
}

PolyVec Der1::apply(const Poly& a) const {
    PolyVec r(a.nvars(), rank());
    for (std::size_t i = 0; i < rank(); ++i) r[i] = Z[i].apply(a);
    return r;
}

DiolicElement Der1::apply(const DiolicElement& e) const {
    // P is sent to degree 2, which is zero.
    return DiolicElement::odd(apply(e.a));
}

MatrixOp Der1::block() const {
    MatrixOp b(nvars(), rank() + 1, rank() + 1);
    for (std::size_t i = 0; i < rank(); ++i) b(i + 1, 0) = ScalarOp::from_vector_field(Z[i]);
    return b;
}

// ------------------------------------------------------------------ DerNeg1

DerNeg1::DerNeg1(std::vector<Poly> phi_) : phi(std::move(phi_)) {
    if (phi.size() != 1)
        throw DomainError("degree -1 derivations exist only for modules of rank 1");
}

Poly DerNeg1::apply(const PolyVec& p) const {
    require_rank(p.rank(), 1, "DerNeg1::apply");
    return phi[0] * p[0];
}

DiolicElement DerNeg1::apply(const DiolicElement& e) const {
    return DiolicElement::even(apply(e.p), 1);
}

MatrixOp DerNeg1::block() const {
    MatrixOp b(nvars(), 2, 2);
    b(0, 1) = ScalarOp::multiplication(phi[0]);
    return b;
}

// --------------------------------------------------------------- AnyDer glue

int degree_of(const AnyDer& d) {
    switch (d.index()) {
        case 0: return 0;
        case 1: return 1;
        case 2: return -1;
        default: return std::get<ZeroDer>(d).degree;
    }
}

bool is_zero(const AnyDer& d) {
    return std::visit(
        [](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ZeroDer>) return true;
            else return x.is_zero();
        },
        d);
}

MatrixOp block_of(const AnyDer& d, std::size_t nvars, std::size_t rank) {
    return std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ZeroDer>) return MatrixOp(nvars, rank + 1, rank + 1);
            else return x.block();
        },
        d);
}

MatrixOp block_commutator(const MatrixOp& a, int deg_a, const MatrixOp& b, int deg_b) {
    MatrixOp ab = compose(a, b), ba = compose(b, a);
    return ((deg_a * deg_b) % 2 == 0) ? ab - ba : ab + ba;
}

// -------------------------------------------------------------- commutators

namespace {

Der0 formula(const Der0& d1, const Der0& d2) {
    require_rank(d1.rank(), d2.rank(), "graded_commutator");
    PolyMat g = apply_entrywise(d1.X, d2.G) - apply_entrywise(d2.X, d1.G) + commutator(d1.G, d2.G);
    return Der0(lie_bracket(d1.X, d2.X), g);
}

Der1 formula(const Der0& d1, const Der1& d2) {
    require_rank(d1.rank(), d2.rank(), "graded_commutator");
    const std::size_t m = d1.rank();
    std::vector<VectorField> z;
    for (std::size_t a = 0; a < m; ++a) {
        VectorField v = lie_bracket(d1.X, d2.Z[a]);
        for (std::size_t b = 0; b < m; ++b)
            if (!d1.G(a, b).is_zero()) v += d1.G(a, b) * d2.Z[b];
        z.push_back(std::move(v));
    }
    return Der1(std::move(z));
}

DerNeg1 formula(const Der0& d1, const DerNeg1& d2) {
    require_rank(d1.rank(), d2.rank(), "graded_commutator");
    return DerNeg1({d1.X.apply(d2.phi[0]) - d1.G(0, 0) * d2.phi[0]});
}

Der0 formula(const Der1& d1, const DerNeg1& d2) {
    require_rank(d1.rank(), d2.rank(), "graded_commutator");
    const Poly& phi = d2.phi[0];
    PolyMat g(phi.nvars(), 1, 1);
    g(0, 0) = d1.Z[0].apply(phi);
    return Der0(phi * d1.Z[0], g);
}

AnyDer negated(AnyDer r) {
    return std::visit(
        [](auto x) -> AnyDer {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Der0>) {
                return Der0(Poly(x.nvars(), -1) * x.X, PolyMat(x.nvars(), x.rank(), x.rank()) - x.G);
            } else if constexpr (std::is_same_v<T, Der1>) {
                for (auto& v : x.Z) v = Poly(v.nvars(), -1) * v;
                return x;
            } else if constexpr (std::is_same_v<T, DerNeg1>) {
                return DerNeg1({-x.phi[0]});
            } else {
                return x;
            }
        },
        std::move(r));
}

AnyDer formula_any(const AnyDer& d1, const AnyDer& d2) {
    const int g = degree_of(d1), h = degree_of(d2);
    if (std::holds_alternative<ZeroDer>(d1) || std::holds_alternative<ZeroDer>(d2) ||
        g + h > 1 || g + h < -1)
        return ZeroDer{g + h};
    // [Y, X] = -(-1)^{gh} [X, Y]
    const bool odd_swap = (g * h) % 2 != 0;
    auto swapped = [&](AnyDer r) { return odd_swap ? r : negated(std::move(r)); };
    if (g == 0 && h == 0) return formula(std::get<Der0>(d1), std::get<Der0>(d2));
    if (g == 0 && h == 1) return formula(std::get<Der0>(d1), std::get<Der1>(d2));
    if (g == 1 && h == 0) return swapped(formula(std::get<Der0>(d2), std::get<Der1>(d1)));
    if (g == 0 && h == -1) return formula(std::get<Der0>(d1), std::get<DerNeg1>(d2));
    if (g == -1 && h == 0) return swapped(formula(std::get<Der0>(d2), std::get<DerNeg1>(d1)));
    if (g == 1 && h == -1) return formula(std::get<Der1>(d1), std::get<DerNeg1>(d2));
    return swapped(formula(std::get<Der1>(d2), std::get<DerNeg1>(d1)));
}

}  // namespace

AnyDer graded_commutator(const AnyDer& d1, const AnyDer& d2) {
    auto [n1, m1] = dims_of(d1);
    auto [n2, m2] = dims_of(d2);
    if (!std::holds_alternative<ZeroDer>(d1) && !std::holds_alternative<ZeroDer>(d2)) {
        require_same_nvars(n1, n2, "graded_commutator");
        require_rank(m1, m2, "graded_commutator");
    }
    AnyDer out = formula_any(d1, d2);
    std::size_t n = std::max(n1, n2), m = std::max(m1, m2);
    if (!std::holds_alternative<ZeroDer>(d1) && !std::holds_alternative<ZeroDer>(d2))
        check_against_blocks(d1, d2, out, n, m);
    return out;
}

Der0 graded_commutator(const Der0& d1, const Der0& d2) {
    return std::get<Der0>(graded_commutator(AnyDer(d1), AnyDer(d2)));
}

Der1 graded_commutator(const Der0& d1, const Der1& d2) {
    return std::get<Der1>(graded_commutator(AnyDer(d1), AnyDer(d2)));
}

DerNeg1 graded_commutator(const Der0& d1, const DerNeg1& d2) {
    return std::get<DerNeg1>(graded_commutator(AnyDer(d1), AnyDer(d2)));
}

Der0 graded_commutator(const Der1& d1, const DerNeg1& d2) {
    return std::get<Der0>(graded_commutator(AnyDer(d1), AnyDer(d2)));
}

// ------------------------------------------------------------ module action

Der1 p_action(const PolyVec& p, const Der0& d) {
    require_same_nvars(p.nvars(), d.nvars(), "p_action");
    require_rank(p.rank(), d.rank(), "p_action");
    std::vector<VectorField> z;
    for (std::size_t a = 0; a < p.rank(); ++a) z.push_back(p[a] * d.X);
    return Der1(std::move(z));
}

// ------------------------------------------------------ artificial dioles

Der0 direct_sum_der(const Der0& d, const Der0& d2) {
    require_same_symbol(d, d2, "direct_sum_der");
    const std::size_t m = d.rank(), m2 = d2.rank();
    PolyMat g(d.nvars(), m + m2, m + m2);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) g(i, j) = d.G(i, j);
    for (std::size_t i = 0; i < m2; ++i)
        for (std::size_t j = 0; j < m2; ++j) g(m + i, m + j) = d2.G(i, j);
    return Der0(d.X, g);
}

Der0 tensor_der(const Der0& d, const Der0& d2) {
    require_same_symbol(d, d2, "tensor_der");
    const std::size_t m = d.rank(), m2 = d2.rank();
    PolyMat g(d.nvars(), m * m2, m * m2);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m2; ++b)
            for (std::size_t c = 0; c < m; ++c)
                for (std::size_t e = 0; e < m2; ++e) {
                    Poly& entry = g(a * m2 + b, c * m2 + e);
                    if (b == e) entry += d.G(a, c);
                    if (a == c) entry += d2.G(b, e);
                }
    return Der0(d.X, g);
}

Der0 hom_der(const Der0& d, const Der0& d2) {
    require_same_symbol(d, d2, "hom_der");
    // Hom(D, D')(phi) = D' phi - phi D = X(phi) + H phi - phi G.
    const std::size_t m = d.rank(), m2 = d2.rank();
    PolyMat g(d.nvars(), m2 * m, m2 * m);
    for (std::size_t a = 0; a < m2; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t c = 0; c < m2; ++c)
                for (std::size_t e = 0; e < m; ++e) {
                    Poly& entry = g(a * m + b, c * m + e);
                    if (b == e) entry += d2.G(a, c);
                    if (a == c) entry -= d.G(e, b);
                }
    return Der0(d.X, g);
}

namespace {

void subsets(std::size_t m, std::size_t k, std::size_t start, bool repeat,
             std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < m; ++i) {
        cur.push_back(i);
        subsets(m, k, repeat ? i : i + 1, repeat, cur, out);
        cur.pop_back();
    }
}

Der0 power_der(const Der0& d, std::size_t k, bool exterior) {
    const std::size_t m = d.rank();
    if (k > m) throw DomainError("power derivation: k exceeds the module rank");
    auto basis = exterior ? exterior_basis(m, k) : symmetric_basis(m, k);
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
    PolyMat g(d.nvars(), basis.size(), basis.size());
    for (std::size_t s = 0; s < basis.size(); ++s) {
        const auto& S = basis[s];
        for (std::size_t pos = 0; pos < k; ++pos)
            for (std::size_t r = 0; r < m; ++r) {
                const Poly& c = d.G(r, S[pos]);
                if (c.is_zero()) continue;
                std::vector<std::size_t> T = S;
                T[pos] = r;
                int sign = 1;
                if (exterior) {
                    bool dup = false;
                    for (std::size_t i = 0; i < k; ++i)
                        for (std::size_t j = i + 1; j < k; ++j) {
                            if (T[i] == T[j]) dup = true;
                            if (T[i] > T[j]) sign = -sign;
                        }
                    if (dup) continue;
                }
                std::sort(T.begin(), T.end());
                g(index.at(T), s) += c * Rational(sign);
            }
    }
    return Der0(d.X, g);
}

}  // namespace

std::vector<std::vector<std::size_t>> exterior_basis(std::size_t m, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    subsets(m, k, 0, false, cur, out);
    return out;
}

std::vector<std::vector<std::size_t>> symmetric_basis(std::size_t m, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    subsets(m, k, 0, true, cur, out);
    return out;
}

Der0 exterior_der(const Der0& d, std::size_t k) { return power_der(d, k, true); }
Der0 symmetric_der(const Der0& d, std::size_t k) { return power_der(d, k, false); }

bool satisfies_der_leibniz(const Der0& d) {
    const std::size_t n = d.nvars(), m = d.rank();
    auto mons = monomials_up_to(n, 2);
    for (const auto& ea : mons) {
        Poly a = Poly::monomial(ea);
        for (const auto& eb : mons) {
            Poly b = Poly::monomial(eb);
            if (!(d.apply(a * b) == d.apply(a) * b + a * d.apply(b))) return false;
        }
        for (const auto& et : monomials_up_to(n, 1))
            for (std::size_t beta = 0; beta < m; ++beta) {
                PolyVec p = PolyVec::basis(n, m, beta, Poly::monomial(et));
                if (!(d.apply(a * p) == d.apply(a) * p + a * d.apply(p))) return false;
            }
    }
    return true;
}

// -------------------------------------------------------- phi-der operators

TruncatedDiolicModule::TruncatedDiolicModule(std::size_t nvars_, std::size_t m_,
                                             std::size_t rank0_, std::size_t rank1_,
                                             std::vector<std::vector<std::vector<Poly>>> phi_)
    : nvars(nvars_), m(m_), rank0(rank0_), rank1(rank1_), phi(std::move(phi_)) {
    if (phi.size() != m) throw DimensionError("TruncatedDiolicModule: phi must have m slices");
    for (const auto& s : phi) {
        if (s.size() != rank0) throw DimensionError("TruncatedDiolicModule: bad phi shape");
        for (const auto& r : s) {
            if (r.size() != rank1) throw DimensionError("TruncatedDiolicModule: bad phi shape");
            for (const auto& p : r) require_same_nvars(p.nvars(), nvars, "TruncatedDiolicModule");
        }
    }
}

TruncatedDiolicModule TruncatedDiolicModule::identity(std::size_t nvars, std::size_t m) {
    std::vector<std::vector<std::vector<Poly>>> phi(
        m, std::vector<std::vector<Poly>>(1, std::vector<Poly>(m, Poly(nvars))));
    for (std::size_t a = 0; a < m; ++a) phi[a][0][a] = Poly(nvars, 1);
    return TruncatedDiolicModule(nvars, m, 1, m, std::move(phi));
}

PolyVec TruncatedDiolicModule::structure(const PolyVec& q, const PolyVec& p) const {
    if (q.rank() != rank0 || p.rank() != m)
        throw DimensionError("TruncatedDiolicModule::structure: rank mismatch");
    PolyVec r(nvars, rank1);
    for (std::size_t a = 0; a < m; ++a) {
        if (p[a].is_zero()) continue;
        for (std::size_t i = 0; i < rank0; ++i) {
            if (q[i].is_zero()) continue;
            Poly pq = p[a] * q[i];
            for (std::size_t j = 0; j < rank1; ++j)
                if (!phi[a][i][j].is_zero()) r[j] += pq * phi[a][i][j];
        }
    }
    return r;
}

bool check_phi_der(const TruncatedDiolicModule& mod, const MatrixOp& xa, const MatrixOp& xp) {
    const std::size_t n = mod.nvars;
    require_same_nvars(xa.nvars(), n, "check_phi_der");
    require_same_nvars(xp.nvars(), n, "check_phi_der");
    if (xa.rows() != mod.rank0 || xa.cols() != 1)
        throw DimensionError("check_phi_der: A-part must map A to Q0");
    if (xp.rows() != mod.rank1 || xp.cols() != mod.m)
        throw DimensionError("check_phi_der: P-part must map P to Q1");
    if (!xa.apply(PolyVec(std::vector<Poly>{Poly(n, 1)})).is_zero())
        throw DomainError("check_phi_der: A-part does not kill constants");
    for (const auto& ea : monomials_up_to(n, 2)) {
        Poly a = Poly::monomial(ea);
        PolyVec xa_a = xa.apply(PolyVec(std::vector<Poly>{a}));
        for (const auto& et : monomials_up_to(n, 1))
            for (std::size_t beta = 0; beta < mod.m; ++beta) {
                PolyVec p = PolyVec::basis(n, mod.m, beta, Poly::monomial(et));
                PolyVec lhs = xp.apply(a * p);
                PolyVec rhs = mod.structure(xa_a, p) + a * xp.apply(p);
                if (!(lhs == rhs)) return false;
            }
    }
    return true;
}

DerNeg1Obstruction derneg1_obstruction(std::size_t m) {
    // Unknown u_alpha = D(e_alpha). Pair (a, b): u_a e_b - u_b e_a = 0.
    std::vector<std::vector<Rational>> rows;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b)
            for (std::size_t c = 0; c < m; ++c) {
                std::vector<Rational> row(m, 0);
                if (c == b) row[a] += 1;
                if (c == a) row[b] -= 1;
                rows.push_back(std::move(row));
            }
    DerNeg1Obstruction o;
    o.m = m;
    o.equations = rows.size();
    o.unknowns = m;
    o.solution_dimension = m - (rows.empty() ? 0 : rank(rows));
    return o;
}

}  // namespace diolic
