#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "../support/oracles.hpp"
#include "diolic/complexes.hpp"
#include "diolic/error.hpp"
#include "diolic/text.hpp"

using namespace diolic;

namespace {
using Cube = std::vector<std::vector<std::vector<Rational>>>;
using Mat = std::vector<std::vector<Rational>>;

Poly P(const char* s, std::size_t n) { return parse_poly(s, n); }

Cube zeros(std::size_t a, std::size_t b, std::size_t c) {
    return Cube(a, Mat(b, std::vector<Rational>(c)));
}

// sl2 in the basis (e, f, h): [e,f] = h, [h,e] = 2e, [h,f] = -2f.
Cube sl2() {
    Cube c = zeros(3, 3, 3);
    auto set = [&](std::size_t a, std::size_t b, std::size_t d, int v) {
        c[a][b][d] = v;
        c[b][a][d] = -v;
    };
    set(0, 1, 2, 1);
    set(2, 0, 0, 2);
    set(2, 1, 1, -2);
    return c;
}

CEData adjoint(const Cube& c) {
    std::size_t r = c.size();
    Cube rho = zeros(r, r, r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
            for (std::size_t d = 0; d < r; ++d) rho[a][d][b] = c[a][b][d];
    return CEData(r, c, r, rho);
}

CEData trivial(const Cube& c, std::size_t d1) {
    return CEData(c.size(), c, d1, zeros(c.size(), d1, d1));
}

FatForm random_form(oracle::Rng& rng, std::size_t n, std::size_t m, std::size_t k) {
    FatForm w(n, m, k);
    for (const auto& t : w.tuples()) {
        std::vector<Poly> comps;
        for (std::size_t a = 0; a < m; ++a) comps.push_back(rng.poly(n, 2, 2));
        w.set(t, PolyVec(comps));
    }
    return w;
}

// Rank of d^k on the degree <= D truncation, assembled by applying the
// differential to every basis cochain and reading off coefficients.
std::size_t rank_by_application(std::size_t n, std::size_t m, unsigned D, std::size_t k) {
    auto monos = monomials_up_to(n, D);
    FatForm shape(n, m, k + 1);
    std::map<std::tuple<std::size_t, std::size_t, MultiIndex>, std::size_t> row;
    for (std::size_t t = 0; t < shape.tuples().size(); ++t)
        for (std::size_t a = 0; a < m; ++a)
            for (const auto& e : monos) row.emplace(std::make_tuple(t, a, e), row.size());
    Mat cols;
    FatForm src(n, m, k);
    for (const auto& t : src.tuples())
        for (std::size_t a = 0; a < m; ++a)
            for (const auto& e : monos) {
                FatForm w(n, m, k);
                w.set(t, PolyVec::basis(n, m, a, Poly::monomial(e)));
                FatForm dw = der_differential(w);
                std::vector<Rational> col(row.size());
                for (std::size_t ti = 0; ti < dw.tuples().size(); ++ti)
                    for (std::size_t b = 0; b < m; ++b)
                        for (const auto& [ex, c] : dw.at(dw.tuples()[ti])[b].terms())
                            col[row.at(std::make_tuple(ti, b, ex))] = c;
                cols.push_back(col);
            }
    return oracle::bareiss_rank(cols);
}
}  // namespace

TEST_CASE("degree zero differential") {
    FatForm w = der_differential(FatForm::zero_form(PolyVec(std::vector<Poly>{P("x1", 1)})));
    REQUIRE(w.degree() == 1);
    CHECK(w.at({0})[0] == P("1", 1));
    CHECK(w.at({1})[0] == P("x1", 1));
}

TEST_CASE("degree one differential on a rank-one bundle") {
    Poly f = P("x1^2 - 3", 1), g = P("2*x1^3 + x1", 1);
    FatForm w(1, 1, 1);
    w.set({0}, PolyVec(std::vector<Poly>{f}));
    w.set({1}, PolyVec(std::vector<Poly>{g}));
    FatForm dw = der_differential(w);
    CHECK(dw.at({0, 1})[0] == partial(g, 0) - f);
    CHECK(dw.eval({1, 0})[0] == f - partial(g, 0));
    CHECK_THROWS_AS(der_differential(dw), DomainError);
}

TEST_CASE("the differential squares to zero") {
    oracle::Rng rng(3);
    for (std::size_t n = 1; n <= 2; ++n)
        for (std::size_t m = 1; m <= 2; ++m)
            for (std::size_t k = 0; k <= 2 && k + 2 <= n + m * m; ++k) {
                FatForm w = random_form(rng, n, m, k);
                CHECK(der_differential(der_differential(w)).is_zero());
            }
}

TEST_CASE("basis brackets of the matrix units") {
    DerBasis b(1, 2);
    // [E^{01}, E^{10}] = E^{00} - E^{11}
    auto r = b.bracket(b.unit_index(0, 1), b.unit_index(1, 0));
    std::map<std::size_t, Rational> got(r.begin(), r.end());
    CHECK(got.size() == 2);
    CHECK(got[b.unit_index(0, 0)] == 1);
    CHECK(got[b.unit_index(1, 1)] == -1);
    CHECK(b.bracket(0, b.unit_index(0, 1)).empty());
    PolyVec p(std::vector<Poly>{P("x1", 1), P("x1^2", 1)});
    // E^{ab} p = p^b e_a
    CHECK(b.apply(b.unit_index(0, 1), p) == PolyVec(std::vector<Poly>{P("x1^2", 1), P("0", 1)}));
}

TEST_CASE("truncated cohomology of the line bundle over the line") {
    CohomologyResult r = der_cohomology_truncated(1, 1, 3);
    CHECK(r.dims == std::vector<std::size_t>{4, 8, 4});
    CHECK(r.betti == std::vector<std::size_t>{0, 0, 0});
    CHECK(r.euler_dims() == 0);
    CHECK(r.euler_betti() == r.euler_dims());
}

TEST_CASE("truncated cohomology for rank two, golden value") {
    CohomologyResult r = der_cohomology_truncated(1, 2, 1);
    CHECK(r.dims == std::vector<std::size_t>{4, 20, 40, 40, 20, 4});
    CHECK(r.ranks == std::vector<std::size_t>{4, 16, 24, 16, 4});
    CHECK(r.betti == std::vector<std::size_t>{0, 0, 0, 0, 0, 0});
    CHECK(r.euler_betti() == r.euler_dims());
    for (std::size_t k = 0; k < r.ranks.size(); ++k) {
        CHECK(oracle::bareiss_rank(der_differential_matrix(1, 2, 1, k)) == r.ranks[k]);
        CHECK(rank_by_application(1, 2, 1, k) == r.ranks[k]);
    }
}

TEST_CASE("truncated cohomology in two variables") {
    CohomologyResult r = der_cohomology_truncated(2, 1, 2);
    CHECK(r.betti == std::vector<std::size_t>{0, 0, 0, 0});
    for (std::size_t k = 0; k < r.ranks.size(); ++k)
        CHECK(rank_by_application(2, 1, 2, k) == r.ranks[k]);
    CHECK_THROWS_AS(der_cohomology_truncated(2, 2, 3, 100), ResourceError);
}

TEST_CASE("Chevalley-Eilenberg cohomology") {
    CohomologyResult ab = ce_cohomology(trivial(zeros(2, 2, 2), 1));
    CHECK(ab.betti == std::vector<std::size_t>{1, 2, 1});

    Cube line = zeros(1, 1, 1);
    CohomologyResult id = ce_cohomology(CEData(1, line, 1, Cube{{{Rational(1)}}}));
    CHECK(id.betti == std::vector<std::size_t>{0, 0});

    CohomologyResult ad = ce_cohomology(adjoint(sl2()));
    CHECK(ad.dims == std::vector<std::size_t>{3, 9, 9, 3});
    CHECK(ad.betti == std::vector<std::size_t>{0, 0, 0, 0});

    CohomologyResult tr = ce_cohomology(trivial(sl2(), 1));
    CHECK(tr.betti == std::vector<std::size_t>{1, 0, 0, 1});
    CHECK(tr.euler_betti() == tr.euler_dims());

    for (const CEData& l : {trivial(zeros(2, 2, 2), 1), adjoint(sl2()), trivial(sl2(), 1)})
        for (std::size_t p = 0; p < l.r; ++p) {
            CHECK(oracle::bareiss_rank(ce_differential_matrix(l, p)) == ce_cohomology(l).ranks[p]);
        }
}

TEST_CASE("CE differential squares to zero") {
    oracle::Rng rng(19);
    for (const CEData& l : {adjoint(sl2()), trivial(sl2(), 2)}) {
        for (std::size_t p = 0; p + 2 <= l.r; ++p) {
            std::size_t len = ce_differential_matrix(l, p).front().size();
            std::vector<Rational> t(len);
            for (auto& v : t) v = rng.rational();
            auto dd = ce_differential(l, p + 1, ce_differential(l, p, t));
            for (const auto& v : dd) CHECK(v == 0);
        }
    }
}

TEST_CASE("diolic Lie algebra check") {
    CHECK(diolic_lie_check(adjoint(sl2())).pass);

    Cube rho = zeros(2, 2, 2);
    rho[0][0][1] = 1;
    rho[1][0][0] = 3;
    rho[1][1][1] = 3;
    rho[1][0][1] = 2;
    CHECK(diolic_lie_check(CEData(2, zeros(2, 2, 2), 2, rho)).pass);

    CEData bent = adjoint(sl2());
    bent.rho[2][0][0] += 1;
    CheckReport r = diolic_lie_check(bent);
    CHECK_FALSE(r.pass);
    REQUIRE_FALSE(r.residuals.empty());
    CHECK(r.residuals.front().name.rfind("representation[", 0) == 0);

    Cube c = sl2();
    c[0][1][0] = 1;
    c[1][0][0] = -1;
    CHECK_FALSE(diolic_lie_check(trivial(c, 1)).pass);
    CHECK_THROWS_AS(CEData(2, zeros(2, 2, 2), 1, zeros(1, 1, 1)), DimensionError);
}
