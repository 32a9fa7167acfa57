#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../support/oracles.hpp"
#include "diolic/error.hpp"
#include "diolic/linalg.hpp"
#include "diolic/text.hpp"

using namespace diolic;

namespace {
Poly P(const char* s, std::size_t n) { return parse_poly(s, n); }
}

TEST_CASE("parse reads coefficients and exponents") {
    Poly p = P("x1^2 - 1/2*x2", 2);
    CHECK(p.terms().size() == 2);
    CHECK(p.coeff(MultiIndex{2, 0}) == 1);
    CHECK(p.coeff(MultiIndex{0, 1}) == Rational(-1, 2));
}

TEST_CASE("parse of zero is the empty polynomial") {
    CHECK(P("0", 1).is_zero());
    CHECK(P("0", 1).terms().empty());
}

TEST_CASE("parse rejects variable index 0 with a position") {
    try {
        (void)P("x0", 2);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("variable index must be >= 1") != std::string::npos);
        CHECK(e.position() != std::string::npos);
    }
}

TEST_CASE("parse rejects out-of-range indices and garbage") {
    CHECK_THROWS_AS((void)P("x3", 2), ParseError);
    CHECK_THROWS_AS((void)P("x1 +", 1), ParseError);
    CHECK_THROWS_AS((void)P("1/0", 1), ParseError);
    CHECK_THROWS_AS((void)P("x1**2", 1), ParseError);
}

TEST_CASE("whitespace is insignificant and leading signs are allowed") {
    CHECK(P(" - x1 * x2 + 3 ", 2) == P("3-x1*x2", 2));
    CHECK(P("2*x1*x1", 1) == P("2*x1^2", 1));
}

TEST_CASE("format is canonical and round-trips") {
    oracle::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        Poly p = rng.poly(3, 4, 5);
        CHECK(parse_poly(format_poly(p), 3) == p);
    }
    CHECK(format_poly(P("x2 - 1/2*x1^2 + 0*x1", 2)) == "-1/2*x1^2 + x2");
    CHECK(format_poly(Poly(2)) == "0");
}

TEST_CASE("product examples") {
    CHECK(P("x1", 1) * P("x1", 1) == P("x1^2", 1));
    CHECK((P("x1+1", 1) * P("x1-1", 1)) == P("x1^2-1", 1));
    CHECK((P("3*x1^2 + x1", 1) * Poly(1)).is_zero());
}

TEST_CASE("product agrees with evaluation at random points") {
    oracle::Rng rng(12);
    for (int i = 0; i < 100; ++i) {
        Poly a = rng.poly(3, 3), b = rng.poly(3, 3);
        std::vector<Rational> pt{rng.rational(), rng.rational(), rng.rational()};
        CHECK(oracle::evaluate(a * b, pt) == oracle::evaluate(a, pt) * oracle::evaluate(b, pt));
        CHECK(oracle::evaluate(a + b, pt) == oracle::evaluate(a, pt) + oracle::evaluate(b, pt));
    }
}

TEST_CASE("partial derivative examples") {
    CHECK(partial(P("x1^2*x2", 2), 0) == P("2*x1*x2", 2));
    CHECK(partial(P("x1", 2), 1).is_zero());
    CHECK(partial(P("3/2*x1", 1), 0) == P("3/2", 1));
}

TEST_CASE("partial derivative obeys Leibniz") {
    oracle::Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        Poly a = rng.poly(2, 3), b = rng.poly(2, 3);
        CHECK(partial(a * b, 1) == partial(a, 1) * b + a * partial(b, 1));
    }
}

TEST_CASE("monomial enumeration") {
    auto m = monomials_up_to(2, 1);
    REQUIRE(m.size() == 3);
    CHECK(m[0] == MultiIndex{0, 0});
    CHECK(m[1] == MultiIndex{1, 0});
    CHECK(m[2] == MultiIndex{0, 1});
    CHECK(monomials_up_to(2, 2).size() == 6);
    auto z = monomials_up_to(1, 0);
    REQUIRE(z.size() == 1);
    CHECK(z[0] == MultiIndex{0});
}

TEST_CASE("mixing variable counts is a dimension error") {
    CHECK_THROWS_AS(P("x1", 1) + P("x1", 2), DimensionError);
}

TEST_CASE("sparse and dense rank agree with the fraction-free oracle") {
    oracle::Rng rng(14);
    for (int t = 0; t < 60; ++t) {
        std::size_t r = static_cast<std::size_t>(rng.uniform(1, 7)), c = static_cast<std::size_t>(rng.uniform(1, 7));
        std::vector<std::vector<Rational>> a(r, std::vector<Rational>(c, 0));
        for (auto& row : a)
            for (auto& v : row)
                if (rng.coin(0.4)) v = rng.rational();
        if (r > 2)  // a dependent row
            for (std::size_t j = 0; j < c; ++j) a[r - 1][j] = a[0][j] * 2 - a[1][j];
        SparseMatrix s(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (a[i][j] != 0) s.add(i, j, a[i][j]);
        std::size_t expect = oracle::bareiss_rank(a);
        CHECK(rank(a) == expect);
        CHECK(rank(s) == expect);
        auto ns = nullspace(a, c);
        CHECK(ns.size() == c - expect);
        for (const auto& v : ns)
            for (std::size_t i = 0; i < r; ++i) {
                Rational dot = 0;
                for (std::size_t j = 0; j < c; ++j) dot += a[i][j] * v[j];
                CHECK(dot == 0);
            }
    }
}
