#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "../support/oracles.hpp"
#include "diolic/error.hpp"
#include "diolic/multider.hpp"
#include "diolic/text.hpp"

using namespace diolic;

namespace {

Poly P(const char* s, std::size_t n) { return parse_poly(s, n); }

BiDer0 symplectic(std::size_t m, std::vector<PolyMat> end = {}) {
    if (end.empty()) end.assign(2, PolyMat(2, m, m));
    return BiDer0::from_upper(2, m, {P("1", 2)}, end);
}

BiDer0 so3(std::size_t m = 1) {
    return BiDer0::from_upper(3, m, {P("x3", 3), P("-x2", 3), P("x1", 3)},
                              std::vector<PolyMat>(3, PolyMat(3, m, m)));
}

PolyMat constant(std::size_t n, std::vector<std::vector<int>> rows) {
    PolyMat g(n, rows.size(), rows.size());
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < rows.size(); ++b) g(a, b) = Poly(n, rows[a][b]);
    return g;
}

bool has_residual(const CheckReport& r, const std::string& prefix) {
    return std::any_of(r.residuals.begin(), r.residuals.end(),
                       [&](const Residual& x) { return x.name.rfind(prefix, 0) == 0; });
}

JacobiOp0 witt_lift(MatrixOp d0, MatrixOp d1) {
    std::vector<std::vector<Poly>> c{{Poly(1), Poly(1, 1)}, {Poly(1, -1), Poly(1)}};
    return JacobiOp0(c, {std::move(d0), std::move(d1)}, 1, d0.rows());
}

}  // namespace

TEST_CASE("biderivation evaluation examples") {
    CHECK(symplectic(1).eval(P("x1", 2), P("x2", 2)) == P("1", 2));
    CHECK(so3().eval(P("x1", 3), P("x2", 3)) == P("x3", 3));
}

TEST_CASE("biderivation is skew on A and satisfies the Der-Leibniz rule") {
    oracle::Rng rng(51);
    for (int t = 0; t < 20; ++t) {
        std::vector<PolyMat> end;
        for (int i = 0; i < 2; ++i) {
            PolyMat g(2, 2, 2);
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 2; ++b) g(a, b) = rng.poly(2, 1, 2);
            end.push_back(g);
        }
        BiDer0 pi = BiDer0::from_upper(2, 2, {rng.poly(2, 2)}, end);
        Poly a = rng.poly(2, 3), b = rng.poly(2, 3);
        PolyVec p(std::vector<Poly>{rng.poly(2, 2), rng.poly(2, 2)});
        CHECK(pi.eval(a, b) == -pi.eval(b, a));
        CHECK(pi.eval(a, b * p) == pi.eval(a, b) * p + b * pi.eval(a, p));
    }
}

TEST_CASE("Schouten self-bracket examples") {
    auto e = [](const char* s, std::size_t n) { return GradedElement::even(P(s, n), 1); };
    CHECK(schouten_self_eval(so3(), e("1", 3), e("1", 3), e("1", 3)).is_zero());
    CHECK(schouten_self_eval(symplectic(1), e("x1", 2), e("x2", 2), e("x1*x2", 2)).is_zero());
    CHECK(schouten_self_eval(so3(), e("x1", 3), e("x2", 3), e("x3", 3)).is_zero());
}

TEST_CASE("Schouten self-bracket is a fixed multiple of the Jacobiator on functions") {
    BiDer0 pi = BiDer0::from_upper(3, 1, {P("x1", 3), P("0", 3), P("x1*x2", 3)},
                                   std::vector<PolyMat>(3, PolyMat(3, 1, 1)));
    oracle::Rng rng(52);
    Rational lambda = 0;
    for (int t = 0; t < 15; ++t) {
        Poly a = rng.nonzero_poly(3, 2, 4), b = rng.nonzero_poly(3, 2, 4), c = rng.nonzero_poly(3, 2, 4);
        Poly jac = pi.eval(pi.eval(a, b), c) + pi.eval(pi.eval(b, c), a) + pi.eval(pi.eval(c, a), b);
        Poly s = schouten_self_eval(pi, GradedElement::even(a, 1), GradedElement::even(b, 1), GradedElement::even(c, 1)).a;
        if (lambda == 0 && !jac.is_zero()) {
            const auto& [e, v] = *jac.terms().begin();
            lambda = s.coeff(e) / v;
        }
        CHECK(s == lambda * jac);
    }
    CHECK(lambda != 0);
}

TEST_CASE("Schouten self-bracket is graded skew under transpositions") {
    std::vector<PolyMat> end{constant(2, {{0, 1}, {0, 0}}), PolyMat(2, 2, 2)};
    end[1](1, 0) = P("x1", 2);
    BiDer0 pi = BiDer0::from_upper(2, 2, {P("x1*x2", 2)}, end);
    oracle::Rng rng(53);
    for (int t = 0; t < 10; ++t) {
        GradedElement a = GradedElement::even(rng.poly(2, 2), 2), b = GradedElement::even(rng.poly(2, 2), 2);
        GradedElement p = GradedElement::odd(PolyVec(std::vector<Poly>{rng.poly(2, 2), rng.poly(2, 2)}));
        DiolicElement abp = schouten_self_eval(pi, a, b, p), bap = schouten_self_eval(pi, b, a, p);
        DiolicElement apb = schouten_self_eval(pi, a, p, b);
        // Total degree of the 3-derivation is 1; a transposition of even arguments
        // and of an even with an odd argument both flip the sign.
        CHECK(abp + bap == DiolicElement(Poly(2), PolyVec(2, 2)));
        CHECK(abp + apb == DiolicElement(Poly(2), PolyVec(2, 2)));
    }
}

TEST_CASE("Poisson checker: symplectic and so(3) pass") {
    CHECK(is_poisson0(symplectic(1, {constant(2, {{3}}), constant(2, {{-5}})})).pass);
    CHECK(is_poisson0(symplectic(2, {constant(2, {{1, 2}, {0, 1}}), constant(2, {{3, 4}, {0, 3}})})).pass);
    CHECK(is_poisson0(so3()).pass);
}

TEST_CASE("Poisson checker: constant end parts that do not commute fail") {
    // With a constant bivector the only surviving term is the matrix commutator.
    CheckReport r = is_poisson0(symplectic(2, {constant(2, {{0, 1}, {0, 0}}), constant(2, {{0, 0}, {1, 0}})}));
    CHECK_FALSE(r.pass);
    CHECK(has_residual(r, "diolic"));
}

TEST_CASE("Poisson checker: designed failure in the diolic equation") {
    std::vector<PolyMat> end(3, PolyMat(3, 1, 1));
    end[2](0, 0) = P("x2", 3);
    CheckReport r = is_poisson0(BiDer0::from_upper(3, 1, {P("x1", 3), P("0", 3), P("0", 3)}, end));
    CHECK_FALSE(r.pass);
    CHECK(has_residual(r, "diolic"));
    CHECK_FALSE(schouten_vanishes(BiDer0::from_upper(3, 1, {P("x1", 3), P("0", 3), P("0", 3)}, end)));
}

TEST_CASE("Poisson checker: non-Poisson bivector fails the usual equation") {
    CheckReport r = is_poisson0(BiDer0::from_upper(3, 1, {P("x1", 3), P("0", 3), P("x1*x2", 3)},
                                                   std::vector<PolyMat>(3, PolyMat(3, 1, 1))));
    CHECK_FALSE(r.pass);
    CHECK(has_residual(r, "poisson[1,2,3]"));
}

TEST_CASE("Lie algebroid checker") {
    // Tangent algebroid.
    std::vector<std::vector<Poly>> rho{{P("1", 2), P("0", 2)}, {P("0", 2), P("1", 2)}};
    std::vector<std::vector<std::vector<Poly>>> zero(2, std::vector<std::vector<Poly>>(2, std::vector<Poly>(2, Poly(2))));
    CHECK(is_lie_algebroid(BiDerNeg1(rho, zero, 2)).pass);

    // Bundle of so(3) over a line.
    auto so3c = [](int defect) {
        std::vector<std::vector<std::vector<Poly>>> c(3, std::vector<std::vector<Poly>>(3, std::vector<Poly>(3, Poly(1))));
        auto set = [&](int a, int b, int e, int v) {
            c[a][b][e] = Poly(1, v);
            c[b][a][e] = Poly(1, -v);
        };
        set(0, 1, 2, 1);
        set(1, 2, 0, 1);
        set(2, 0, 1, 1);
        if (defect) set(0, 1, 0, defect);
        return c;
    };
    std::vector<std::vector<Poly>> rho0(3, std::vector<Poly>(1, Poly(1)));
    CHECK(is_lie_algebroid(BiDerNeg1(rho0, so3c(0), 1)).pass);
    CheckReport bad = is_lie_algebroid(BiDerNeg1(rho0, so3c(1), 1));
    CHECK_FALSE(bad.pass);
    CHECK(has_residual(bad, "jacobi"));

    // Rank-2 brackets with zero anchor satisfy Jacobi identically.
    std::vector<std::vector<std::vector<Poly>>> c2(2, std::vector<std::vector<Poly>>(2, std::vector<Poly>(2, Poly(1))));
    c2[0][1][0] = P("x1", 1);
    c2[0][1][1] = P("1", 1);
    c2[1][0][0] = P("-x1", 1);
    c2[1][0][1] = P("-1", 1);
    CHECK(is_lie_algebroid(BiDerNeg1(std::vector<std::vector<Poly>>(2, std::vector<Poly>(1, Poly(1))), c2, 1)).pass);
}

TEST_CASE("Lie algebroid anchor must be a morphism") {
    // Tangent anchor with a bracket that is not sent to the vector field bracket.
    std::vector<std::vector<Poly>> rho{{P("1", 2), P("0", 2)}, {P("0", 2), P("1", 2)}};
    std::vector<std::vector<std::vector<Poly>>> c(2, std::vector<std::vector<Poly>>(2, std::vector<Poly>(2, Poly(2))));
    c[0][1][0] = P("1", 2);
    c[1][0][0] = P("-1", 2);
    CheckReport r = is_lie_algebroid(BiDerNeg1(rho, c, 2));
    CHECK_FALSE(r.pass);
    CHECK(has_residual(r, "anchor"));
}

TEST_CASE("algebroid brackets satisfy the graded Jacobi identity as degree -1 brackets") {
    std::vector<std::vector<Poly>> rho{{P("1", 2), P("0", 2)}, {P("x1", 2), P("x2", 2)}};
    std::vector<std::vector<std::vector<Poly>>> c(2, std::vector<std::vector<Poly>>(2, std::vector<Poly>(2, Poly(2))));
    // [e1, e2] lifts [d1, x1 d1 + x2 d2] = d1.
    c[0][1][0] = P("1", 2);
    c[1][0][0] = P("-1", 2);
    BiDerNeg1 l(rho, c, 2);
    REQUIRE(is_lie_algebroid(l).pass);
    GradedBracket b = [&](const GradedElement& x, const GradedElement& y) { return l.eval(x, y); };
    oracle::Rng rng(54);
    for (int t = 0; t < 10; ++t) {
        auto odd = [&] { return GradedElement::odd(PolyVec(std::vector<Poly>{rng.poly(2, 2), rng.poly(2, 2)})); };
        auto even = [&] { return GradedElement::even(rng.poly(2, 2), 2); };
        CHECK(graded_jacobiator(b, -1, odd(), odd(), odd()).is_zero());
        CHECK(graded_jacobiator(b, -1, odd(), odd(), even()).is_zero());
    }
}

TEST_CASE("degree -2 pairing") {
    BiDerNeg2 one(P("1", 2), 1), g(P("x1", 2), 1);
    PolyVec p(std::vector<Poly>{P("x1", 2)}), q(std::vector<Poly>{P("x2", 2)});
    CHECK(one.eval(p, p) == P("x1^2", 2));
    CHECK(g.eval(p, q) == g.eval(q, p));
    CHECK(g.eval(PolyVec(std::vector<Poly>{P("1", 2)}), q) == P("x1*x2", 2));
    CHECK_THROWS_AS(BiDerNeg2(P("1", 2), 2), DomainError);
}

TEST_CASE("Jacobi operators: construction and Jacobiator examples") {
    MatrixOp d0 = MatrixOp::diagonal(ScalarOp::derivative(1, 0), 1);
    MatrixOp d1 = MatrixOp::from_matrix(PolyMat(1, 1, 1) - PolyMat::identity(1, 1));
    JacobiOp0 w = witt_lift(d0, d1);
    auto e = [](const char* s) { return GradedElement::even(P(s, 1), 1); };
    CHECK(jacobiator0(w, e("x1"), e("x1^2"), e("x1^3")).is_zero());

    JacobiOp0 lifted = JacobiOp0::from_poisson(so3());
    CHECK(jacobiator0(lifted, GradedElement::even(P("1", 3), 1), GradedElement::even(P("x1*x2", 3), 1),
                      GradedElement::even(P("x3^2", 3), 1))
              .is_zero());

    std::vector<std::vector<Poly>> sym{{Poly(1, 1), Poly(1)}, {Poly(1), Poly(1)}};
    CHECK_THROWS_AS(JacobiOp0(sym, {d0, d1}, 1, 1), DomainError);
}

TEST_CASE("Jacobi checker") {
    CHECK(is_jacobi0(JacobiOp0::from_poisson(so3())).pass);
    CHECK(is_jacobi0(JacobiOp0::from_poisson(symplectic(1, {constant(2, {{2}}), constant(2, {{7}})}))).pass);

    MatrixOp d0 = MatrixOp::diagonal(ScalarOp::derivative(1, 0), 1);
    MatrixOp d1 = MatrixOp::from_matrix(PolyMat(1, 1, 1) - PolyMat::identity(1, 1));
    CHECK(is_jacobi0(witt_lift(d0, d1)).pass);

    // A non-constant weight in the derivative slot breaks the module identity.
    MatrixOp bent = d1 + MatrixOp::from_matrix([] {
        PolyMat g(1, 1, 1);
        g(0, 0) = Poly::variable(1, 0);
        return g;
    }());
    CheckReport r = is_jacobi0(witt_lift(d0, bent));
    CHECK_FALSE(r.pass);
    CHECK(has_residual(r, "diolic_jacobi"));
}

TEST_CASE("degree -1 Jacobi brackets") {
    std::vector<std::vector<Poly>> witt{{Poly(1), Poly(1, 1)}, {Poly(1, -1), Poly(1)}};
    CHECK(is_jacobi_neg1(JacobiNeg1(witt, 1, 1)).pass);
    CHECK(is_jacobi_neg1(JacobiNeg1(std::vector<std::vector<Poly>>(2, std::vector<Poly>(2, Poly(1))), 1, 1)).pass);
    CHECK_THROWS_AS(JacobiNeg1(witt, 1, 2), DomainError);

    // h (f g' - g f') is the vector field bracket transported along f -> f h d.
    std::vector<std::vector<Poly>> scaled{{Poly(1), P("x1", 1)}, {P("-x1", 1), Poly(1)}};
    JacobiNeg1 j(scaled, 1, 1);
    bool direct = true;
    for (const auto& a : monomials_up_to(1, 3))
        for (const auto& b : monomials_up_to(1, 3))
            for (const auto& c : monomials_up_to(1, 3)) {
                Poly f = Poly::monomial(a), g = Poly::monomial(b), h = Poly::monomial(c);
                Poly s = j.eval(j.eval(f, g), h) + j.eval(j.eval(g, h), f) + j.eval(j.eval(h, f), g);
                direct = direct && s.is_zero();
            }
    CHECK(is_jacobi_neg1(j).pass == direct);
    CHECK(direct);

    std::vector<std::vector<Poly>> skewless{{Poly(1), Poly(1, 1)}, {Poly(1, 1), Poly(1)}};
    CheckReport r = is_jacobi_neg1(JacobiNeg1(skewless, 1, 1));
    CHECK_FALSE(r.pass);
    CHECK(has_residual(r, "skew"));
}
