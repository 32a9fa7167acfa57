#pragma once

// Independent oracles and seeded generators shared by the test binaries.

#include <cstdint>
#include <random>
#include <vector>

#include "diolic/diffop.hpp"
#include "diolic/poly.hpp"
#include "diolic/rational.hpp"

namespace oracle {

using diolic::Integer;
using diolic::MatrixOp;
using diolic::MultiIndex;
using diolic::Poly;
using diolic::Rational;
using diolic::ScalarOp;

/// Value of p at a rational point, summed term by term.
inline Rational evaluate(const Poly& p, const std::vector<Rational>& pt) {
    Rational s = 0;
    for (const auto& [e, c] : p.terms()) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned k = 0; k < e[i]; ++k) t *= pt[i];
        s += t;
    }
    return s;
}

/// Fraction-free (Bareiss) rank over Z after clearing denominators row by row.
inline std::size_t bareiss_rank(const std::vector<std::vector<Rational>>& a) {
    if (a.empty()) return 0;
    const std::size_t rows = a.size(), cols = a.front().size();
    std::vector<std::vector<Integer>> m(rows, std::vector<Integer>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        Integer l = 1;
        for (const auto& v : a[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
        for (std::size_t j = 0; j < cols; ++j) m[i][j] = a[i][j].get_num() * (l / a[i][j].get_den());
    }
    std::size_t r = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]);
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return r;
}

/// Operator equality through the spanning set: agree on all monomials of
/// degree <= d (d at least the larger order).
inline bool same_action(const ScalarOp& a, const ScalarOp& b, unsigned d) {
    for (const auto& e : diolic::monomials_up_to(a.nvars(), d))
        if (a.apply(Poly::monomial(e)) != b.apply(Poly::monomial(e))) return false;
    return true;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(g_); }

    Rational rational() {
        int num = uniform(-4, 4);
        int den = uniform(1, 3);
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    MultiIndex index(std::size_t n, unsigned max_deg) {
        MultiIndex e(n);
        unsigned total = static_cast<unsigned>(uniform(0, static_cast<int>(max_deg)));
        for (unsigned k = 0; k < total; ++k) e[static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1))] += 1;
        return e;
    }

    Poly poly(std::size_t n, unsigned max_deg, int max_terms = 3) {
        Poly p(n);
        int t = uniform(0, max_terms);
        for (int i = 0; i < t; ++i) p.add_term(index(n, max_deg), rational());
        return p;
    }

    Poly nonzero_poly(std::size_t n, unsigned max_deg, int max_terms = 3) {
        for (;;) {
            Poly p = poly(n, max_deg, max_terms);
            if (!p.is_zero()) return p;
        }
    }

    ScalarOp op(std::size_t n, unsigned order, unsigned coeff_deg, int max_terms = 3) {
        ScalarOp o(n);
        int t = uniform(1, max_terms);
        for (int i = 0; i < t; ++i) o.add_term(index(n, order), poly(n, coeff_deg, 2));
        return o;
    }

    /// An operator whose order is exactly `order` (unless order < 0: zero).
    ScalarOp op_exact(std::size_t n, int order, unsigned coeff_deg) {
        if (order < 0) return ScalarOp(n);
        ScalarOp o = op(n, static_cast<unsigned>(order), coeff_deg);
        MultiIndex top(n);
        for (int k = 0; k < order; ++k) top[static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1))] += 1;
        o.add_term(top, nonzero_poly(n, coeff_deg, 1));
        if (o.order() != order) return op_exact(n, order, coeff_deg);
        return o;
    }

    MatrixOp matrix_op(std::size_t n, std::size_t rows, std::size_t cols, int order, unsigned coeff_deg) {
        MatrixOp m(n, rows, cols);
        if (order < 0) return m;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (coin(0.6)) m(i, j) = op(n, static_cast<unsigned>(order), coeff_deg, 2);
        return m;
    }

    std::mt19937_64& engine() { return g_; }

private:
    std::mt19937_64 g_;
};

}  // namespace oracle
