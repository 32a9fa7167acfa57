#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../support/oracles.hpp"
#include "diolic/error.hpp"
#include "diolic/text.hpp"

using namespace diolic;

namespace {
Poly P(const char* s, std::size_t n) { return parse_poly(s, n); }
ScalarOp D(MultiIndex sigma, const char* c) {
    std::size_t n = sigma.size();
    return ScalarOp::derivative(sigma, P(c, n));
}
ScalarOp mult(const char* a, std::size_t n) { return ScalarOp::multiplication(P(a, n)); }
}  // namespace

TEST_CASE("apply examples") {
    CHECK(D({1}, "1").apply(P("x1^2", 1)) == P("2*x1", 1));
    CHECK(D({1}, "x1").apply(P("x1^3", 1)) == P("3*x1^3", 1));
    Poly p = P("x1^2*x2 - 7", 2);
    CHECK(D({0, 0}, "1").apply(p) == p);
}

TEST_CASE("composition examples") {
    CHECK(compose(D({1}, "1"), mult("x1", 1)) == D({1}, "x1") + mult("1", 1));
    CHECK(compose(D({1, 0}, "1"), D({0, 1}, "1")) == D({1, 1}, "1"));
    CHECK(compose(D({1}, "1"), D({1}, "x1")).order() == 2);
}

TEST_CASE("composition agrees with nested application") {
    oracle::Rng rng(21);
    for (int i = 0; i < 60; ++i) {
        ScalarOp a = rng.op(2, 2, 2), b = rng.op(2, 2, 2);
        ScalarOp c = compose(a, b);
        for (const auto& e : monomials_up_to(2, 4)) {
            Poly f = Poly::monomial(e);
            CHECK(c.apply(f) == a.apply(b.apply(f)));
        }
    }
}

TEST_CASE("commutator examples") {
    CHECK(commutator(D({1}, "1"), mult("x1", 1)) == mult("1", 1));
    CHECK(commutator(D({1, 0}, "1"), D({0, 1}, "1")).is_zero());
    CHECK(commutator(D({1}, "x1"), D({1}, "x1^2")) == D({1}, "x1^2"));
}

TEST_CASE("delta examples") {
    CHECK(delta(P("x1", 1), D({1}, "1")) == mult("-1", 1));
    oracle::Rng rng(22);
    for (int i = 0; i < 20; ++i) CHECK(delta(rng.poly(2, 2), ScalarOp::multiplication(rng.poly(2, 2))).is_zero());
    CHECK(delta(P("x1", 1), delta(P("x1", 1), D({1}, "1"))).is_zero());
}

TEST_CASE("delta lowers order by at least one") {
    oracle::Rng rng(23);
    for (int i = 0; i < 60; ++i) {
        ScalarOp op = rng.op_exact(2, rng.uniform(0, 3), 2);
        Poly a = rng.poly(2, 2);
        CHECK(delta(a, op).order() <= std::max(op.order() - 1, -1));
        // Independent route: the definition on monomials.
        ScalarOp d = delta(a, op);
        for (const auto& e : monomials_up_to(2, 3)) {
            Poly f = Poly::monomial(e);
            CHECK(d.apply(f) == a * op.apply(f) - op.apply(a * f));
        }
    }
}

TEST_CASE("order verification examples") {
    CHECK_FALSE(verify_order(D({1, 1}, "1"), 1));
    CHECK(verify_order(D({1, 1}, "1"), 2));
    CHECK(verify_order(mult("x1", 1), 0));
    CHECK(verify_order(ScalarOp(1), 0));
}

TEST_CASE("order verification routes agree on random operators") {
    oracle::Rng rng(24);
    for (int i = 0; i < 80; ++i) {
        ScalarOp op = rng.op_exact(2, rng.uniform(-1, 3), 2);
        for (int k = 0; k <= 3; ++k) CHECK(verify_order(op, k) == (op.order() <= k));
    }
}

TEST_CASE("matrix operator examples") {
    MatrixOp d = MatrixOp::diagonal(D({1}, "1"), 2);
    PolyVec v(std::vector<Poly>{P("x1", 1), P("x1^2", 1)});
    CHECK(d.apply(v) == PolyVec(std::vector<Poly>{P("1", 1), P("2*x1", 1)}));

    MatrixOp e12 = MatrixOp::from_matrix(PolyMat::unit(1, 2, 0, 1));
    PolyVec w(std::vector<Poly>{P("x1^3 + 1", 1), P("5*x1", 1)});
    CHECK(e12.apply(w) == PolyVec(std::vector<Poly>{P("5*x1", 1), Poly(1)}));

    MatrixOp lhs = compose(d, MatrixOp::diagonal(mult("x1", 1), 2));
    MatrixOp rhs = MatrixOp::diagonal(D({1}, "x1"), 2) + MatrixOp::diagonal(mult("1", 1), 2);
    CHECK(lhs == rhs);
}

TEST_CASE("matrix operator order and delta routes") {
    oracle::Rng rng(25);
    for (int i = 0; i < 30; ++i) {
        MatrixOp m = rng.matrix_op(2, 2, 2, rng.uniform(0, 2), 2);
        for (int k = 0; k <= 3; ++k) CHECK(verify_order(m, k) == (m.order() <= k));
    }
}
