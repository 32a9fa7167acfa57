#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../support/oracles.hpp"
#include "diolic/error.hpp"
#include "diolic/symbols.hpp"
#include "diolic/text.hpp"

using namespace diolic;

namespace {
Poly P(const char* s, std::size_t n) { return parse_poly(s, n); }
SymbolPoly S(const char* s, std::size_t n, int zero_degree = 0) { return parse_symbol(s, n, zero_degree); }
ScalarOp D(MultiIndex sigma, const char* c) { return ScalarOp::derivative(sigma, P(c, sigma.size())); }

// Random symbol of momentum degree k, built as the symbol of a random operator.
SymbolPoly random_symbol(oracle::Rng& rng, std::size_t n, int k) {
    return smbl_scalar(rng.op_exact(n, k, 2), k);
}
}  // namespace

TEST_CASE("top-order part") {
    ScalarOp op = D({2, 0}, "x1") + D({0, 1}, "1");
    CHECK(smbl_scalar(op, 2) == S("x1*k1^2", 2));
    CHECK(smbl_scalar(D({0, 1}, "1"), 2).is_zero());
    CHECK(smbl_scalar(D({0, 1}, "1"), 2).degree() == 2);
    Poly a = P("x1^2 - 3*x2", 2);
    CHECK(smbl_scalar(ScalarOp::multiplication(a), 0) == SymbolPoly::function(a));
    CHECK_THROWS_AS(smbl_scalar(op, 1), DomainError);
}

TEST_CASE("symbol text round trip") {
    for (const char* t : {"x1*k1^2", "k1*k2 - 2/3*x2*k2^2", "1"}) {
        SymbolPoly s = S(t, 2);
        CHECK(S(format_symbol(s).c_str(), 2, s.degree()) == s);
    }
    CHECK_THROWS_AS(S("k1 + k1^2", 1), ParseError);
}

TEST_CASE("product of symbols") {
    CHECK(star(S("k1", 1), S("x1*k1", 1)) == S("x1*k1^2", 1));
    ScalarOp comp = compose(D({1}, "1"), D({1}, "x1"));
    CHECK(smbl_scalar(comp, 2) == S("x1*k1^2", 1));
    CHECK(smbl_scalar(comp, 2) == star(S("k1", 1), S("x1*k1", 1)));
    CHECK(star(S("x1*k1", 1), SymbolPoly(1, 3)).is_zero());
    CHECK(star(S("x1*k1", 1), SymbolPoly(1, 3)).degree() == 4);
    CHECK_THROWS_AS(star(S("k1", 1), S("k1", 2)), DimensionError);
}

TEST_CASE("symbol map is multiplicative on random operators") {
    oracle::Rng rng(7);
    for (int t = 0; t < 25; ++t) {
        int k = rng.uniform(0, 3), l = rng.uniform(0, 3);
        ScalarOp a = rng.op_exact(2, k, 2), b = rng.op_exact(2, l, 2);
        CHECK(smbl_scalar(compose(a, b), k + l) == star(smbl_scalar(a, k), smbl_scalar(b, l)));
    }
}

TEST_CASE("bracket examples") {
    SymbolPoly r = poisson_bracket(S("k1", 1), S("x1", 1));
    CHECK(r == S("1", 1));
    CHECK(r == smbl_scalar(commutator(D({1}, "1"), ScalarOp::multiplication(P("x1", 1))), 0));
    CHECK(poisson_bracket(S("k1", 2), S("k2", 2)).is_zero());
    CHECK(poisson_bracket(S("x1*k1", 1), S("x1*k1", 1)).is_zero());
}

TEST_CASE("bracket of symbols is the symbol of the commutator") {
    oracle::Rng rng(11);
    for (int t = 0; t < 25; ++t) {
        int k = rng.uniform(1, 3), l = rng.uniform(1, 3);
        ScalarOp a = rng.op_exact(2, k, 2), b = rng.op_exact(2, l, 2);
        CHECK(smbl_scalar(commutator(a, b), k + l - 1) ==
              poisson_bracket(smbl_scalar(a, k), smbl_scalar(b, l)));
    }
}

TEST_CASE("bracket is a graded Poisson bracket") {
    oracle::Rng rng(13);
    for (int t = 0; t < 15; ++t) {
        SymbolPoly f = random_symbol(rng, 2, rng.uniform(0, 2));
        SymbolPoly g = random_symbol(rng, 2, rng.uniform(0, 2));
        SymbolPoly h = random_symbol(rng, 2, rng.uniform(0, 2));
        CHECK(poisson_bracket(f, g) == -poisson_bracket(g, f));
        CHECK(poisson_bracket(f, star(g, h)) == star(poisson_bracket(f, g), h) + star(g, poisson_bracket(f, h)));
        SymbolPoly jac = poisson_bracket(f, poisson_bracket(g, h)) + poisson_bracket(g, poisson_bracket(h, f)) +
                         poisson_bracket(h, poisson_bracket(f, g));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("hamiltonian derivation") {
    CHECK(hamiltonian_apply(S("k1", 1), S("x1^2", 1)) == S("2*x1", 1));
    CHECK(hamiltonian_apply(S("x1*k1^2", 1), S("1", 1)).is_zero());
    oracle::Rng rng(17);
    for (int t = 0; t < 15; ++t) {
        SymbolPoly s = random_symbol(rng, 2, rng.uniform(0, 2));
        SymbolPoly a = random_symbol(rng, 2, rng.uniform(0, 2));
        SymbolPoly b = random_symbol(rng, 2, rng.uniform(0, 2));
        CHECK(hamiltonian_apply(s, star(a, b)) == star(hamiltonian_apply(s, a), b) + star(a, hamiltonian_apply(s, b)));
    }
}

TEST_CASE("diolic symbols of operators") {
    DiffOp0 b(2, D({2, 0}, "1"), MatrixOp::from_matrix(P("x1", 2) * PolyMat::identity(2, 2)));
    DiolicSymbol0 s = diolic_symbol0(b);
    CHECK(s.s == S("k1^2", 2));
    REQUIRE(s.rank() == 2);
    for (const auto& row : s.Ms)
        for (const auto& e : row) CHECK(e.is_zero());

    MatrixOp m2 = MatrixOp::diagonal(D({0, 1}, "1"), 2);
    DiolicSymbol0 s2 = diolic_symbol0(DiffOp0(2, D({2, 0}, "1"), m2));
    CHECK(s2.s == S("k1^2", 2));
    CHECK(s2.Ms[0][0] == S("k2", 2));
    CHECK(s2.Ms[1][1] == S("k2", 2));
    CHECK(s2.Ms[0][1].is_zero());

    DiffOp0 low(2, D({0, 1}, "x2"), MatrixOp::from_matrix(PolyMat::unit(2, 2, 0, 1)));
    CHECK(diolic_symbol0(low).is_zero());

    DiolicSymbol1 s1 = diolic_symbol1(DiffOp1(1, {D({1, 0}, "1"), D({0, 1}, "1")}));
    REQUIRE(s1.rank() == 2);
    CHECK(s1.comps[0] == S("k1", 2));
    CHECK(s1.comps[1] == S("k2", 2));
}

TEST_CASE("diolic bracket examples") {
    DiolicSymbol0 S0{2, S("k1^2", 1), {{SymbolPoly(1, 1)}}};
    DiolicSymbol1 T{1, {S("x1*k1", 1)}};
    DiolicSymbol1 r = diolic_poisson_bracket(S0, T);
    REQUIRE(r.rank() == 1);
    CHECK(r.comps[0] == S("2*k1^2", 1));
    ScalarOp c = commutator(D({2}, "1"), D({1}, "x1"));
    CHECK(smbl_scalar(c, 2) == r.comps[0]);

    // Scalar part zero, constant matrix part: the bracket is the matrix action.
    std::vector<std::vector<SymbolPoly>> ms{{S("1", 2), S("2", 2)}, {S("0", 2), S("-1", 2)}};
    DiolicSymbol0 Sc{1, SymbolPoly(2, 1), ms};
    DiolicSymbol1 Tc{2, {S("x1*k2^2", 2), S("k1*k2", 2)}};
    DiolicSymbol1 rc = diolic_poisson_bracket(Sc, Tc);
    CHECK(rc.comps[0] == Tc.comps[0] + star(S("2", 2), Tc.comps[1]));
    CHECK(rc.comps[1] == -Tc.comps[1]);
}

TEST_CASE("diolic bracket is the symbol of the commutator") {
    oracle::Rng rng(23);
    for (int t = 0; t < 15; ++t) {
        int k = rng.uniform(1, 2), l = rng.uniform(1, 2);
        DiffOp0 b(k, rng.op_exact(2, k, 1), rng.matrix_op(2, 2, 2, k - 1, 1));
        DiffOp1 c(l, {rng.op_exact(2, l, 1), rng.op_exact(2, l, 1)});
        AnyDiff com = graded_commutator(AnyDiff(b), AnyDiff(c));
        REQUIRE(std::holds_alternative<DiffOp1>(com));
        DiolicSymbol1 lhs = diolic_symbol1(std::get<DiffOp1>(com));
        DiolicSymbol1 rhs = diolic_poisson_bracket(diolic_symbol0(b), diolic_symbol1(c));
        CHECK(lhs.comps == rhs.comps);
    }
}

TEST_CASE("degree-0 diolic bracket is skew and matches the commutator") {
    oracle::Rng rng(29);
    for (int t = 0; t < 15; ++t) {
        int k = rng.uniform(1, 2), l = rng.uniform(1, 2);
        DiffOp0 a(k, rng.op_exact(2, k, 1), rng.matrix_op(2, 2, 2, k - 1, 1));
        DiffOp0 b(l, rng.op_exact(2, l, 1), rng.matrix_op(2, 2, 2, l - 1, 1));
        DiolicSymbol0 sa = diolic_symbol0(a), sb = diolic_symbol0(b);
        DiolicSymbol0 ab = diolic_poisson_bracket(sa, sb), ba = diolic_poisson_bracket(sb, sa);
        CHECK(ab.s == -ba.s);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) CHECK(ab.Ms[i][j] == -ba.Ms[i][j]);
        AnyDiff com = graded_commutator(AnyDiff(a), AnyDiff(b));
        REQUIRE(std::holds_alternative<DiffOp0>(com));
        DiolicSymbol0 direct = diolic_symbol0(std::get<DiffOp0>(com));
        CHECK(direct.s == ab.s);
        CHECK(direct.Ms == ab.Ms);
    }
}

TEST_CASE("rank-one degree -1 bracket matches the commutator") {
    oracle::Rng rng(31);
    for (int t = 0; t < 10; ++t) {
        int k = rng.uniform(1, 2), l = rng.uniform(1, 2);
        DiffOp0 a(k, rng.op_exact(2, k, 1), rng.matrix_op(2, 1, 1, k - 1, 1));
        DiffOpNeg1 c(l, rng.op_exact(2, l, 1));
        AnyDiff com = graded_commutator(AnyDiff(a), AnyDiff(c));
        REQUIRE(std::holds_alternative<DiffOpNeg1>(com));
        CHECK(diolic_symbol_neg1(std::get<DiffOpNeg1>(com)).t ==
              diolic_poisson_bracket(diolic_symbol0(a), diolic_symbol_neg1(c)).t);
    }
}

TEST_CASE("nested delta of the module part") {
    DiffOp0 b(2, D({2}, "1"), MatrixOp(1, 2, 2));
    Der0 d = lambda_k(b, {P("x1", 1)});
    CHECK(d.X == VectorField(std::vector<Poly>{P("-2", 1)}));
    CHECK(d.G.is_zero());
    CHECK_THROWS_AS(lambda_k(b, {}), DomainError);
    CHECK_THROWS_AS(lambda_k(b, {P("x1", 1), P("x1", 1)}), DomainError);

    // Operators of order k - 1 are killed on every argument.
    DiffOp0 low(3, D({1, 1}, "x1") + D({0, 2}, "1"), MatrixOp::from_matrix(P("x2", 2) * PolyMat::unit(2, 2, 1, 0)));
    for (const auto& e1 : monomials_up_to(2, 2))
        for (const auto& e2 : monomials_up_to(2, 2))
            CHECK(lambda_k(low, {Poly::monomial(e1), Poly::monomial(e2)}).is_zero());

    // The deltas commute, so the result is symmetric in the arguments.
    oracle::Rng rng(37);
    for (int t = 0; t < 10; ++t) {
        DiffOp0 c(3, rng.op_exact(2, 3, 1), rng.matrix_op(2, 2, 2, 2, 1));
        Poly u = rng.nonzero_poly(2, 2, 3), v = rng.nonzero_poly(2, 2, 3);
        CHECK(lambda_k(c, {u, v}) == lambda_k(c, {v, u}));
    }
}

TEST_CASE("kernel of the nested delta is the lower-order operators") {
    oracle::Rng rng(43);
    for (int t = 0; t < 10; ++t) {
        int k = 2;
        bool low = rng.coin();
        ScalarOp a = low ? rng.op_exact(1, k - 1, 2) : rng.op_exact(1, k, 2);
        MatrixOp m = low ? rng.matrix_op(1, 2, 2, k - 2, 1) : rng.matrix_op(1, 2, 2, k - 1, 1);
        DiffOp0 b(k, a, m);
        bool vanishes = true;
        for (const auto& e : monomials_up_to(1, k))
            if (!lambda_k(b, {Poly::monomial(e)}).is_zero()) vanishes = false;
        bool lower = a.order() <= k - 1 && m.order() <= k - 2;
        CHECK(vanishes == lower);
    }
}
