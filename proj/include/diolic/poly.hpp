#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "diolic/multi_index.hpp"
#include "diolic/rational.hpp"

namespace diolic {

/// Sparse polynomial in Q[x1..xn]. Zero coefficients are never stored, so
/// structural equality is mathematical equality.
class Poly {
public:
    using TermMap = std::map<MultiIndex, Rational, TermOrder>;

    Poly() = default;
    explicit Poly(std::size_t nvars) : n_(nvars) {}
    Poly(std::size_t nvars, const Rational& c);

    static Poly variable(std::size_t nvars, std::size_t i);
    static Poly monomial(const MultiIndex& e, const Rational& c = 1);

    std::size_t nvars() const noexcept { return n_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;
    /// Total degree; -1 for the zero polynomial.
    int degree() const;
    const TermMap& terms() const noexcept { return terms_; }
    Rational coeff(const MultiIndex& e) const;
    /// Coefficient of the constant monomial.
    Rational constant_term() const;

    /// Adds c * x^e in place.
    void add_term(const MultiIndex& e, const Rational& c);

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Rational& c);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    Poly operator-() const;

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    /// Evaluates with x_i replaced by the given polynomials (all over a common
    /// variable count).
    Poly substitute(const std::vector<Poly>& values) const;

private:
    std::size_t n_ = 0;
    TermMap terms_;
};

/// Formal partial derivative d/dx_i (0-based i).
Poly partial(const Poly& p, std::size_t i);
/// Iterated partial derivative d^sigma.
Poly partial(const Poly& p, const MultiIndex& sigma);

Poly pow(const Poly& p, unsigned e);

/// Element of P = A^m.
class PolyVec {
public:
    PolyVec() = default;
    PolyVec(std::size_t nvars, std::size_t rank) : n_(nvars), c_(rank, Poly(nvars)) {}
    explicit PolyVec(std::vector<Poly> comps);

    /// The basis section e_alpha (0-based) scaled by `coeff`.
    static PolyVec basis(std::size_t nvars, std::size_t rank, std::size_t alpha,
                         const Poly& coeff);
    static PolyVec basis(std::size_t nvars, std::size_t rank, std::size_t alpha) {
        return basis(nvars, rank, alpha, Poly(nvars, 1));
    }

    std::size_t nvars() const noexcept { return n_; }
    std::size_t rank() const noexcept { return c_.size(); }
    const Poly& operator[](std::size_t i) const { return c_[i]; }
    Poly& operator[](std::size_t i) { return c_[i]; }
    const std::vector<Poly>& components() const noexcept { return c_; }
    bool is_zero() const;

    PolyVec& operator+=(const PolyVec& o);
    PolyVec& operator-=(const PolyVec& o);
    PolyVec& operator*=(const Poly& a);
    friend PolyVec operator+(PolyVec a, const PolyVec& b) { return a += b; }
    friend PolyVec operator-(PolyVec a, const PolyVec& b) { return a -= b; }
    friend PolyVec operator*(const Poly& a, PolyVec v) { return v *= a; }
    PolyVec operator-() const;
    friend bool operator==(const PolyVec&, const PolyVec&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Poly> c_;
};

/// rows x cols matrix of polynomials; an element of Hom_A(A^cols, A^rows).
class PolyMat {
public:
    PolyMat() = default;
    PolyMat(std::size_t nvars, std::size_t rows, std::size_t cols)
        : n_(nvars), rows_(rows), cols_(cols), a_(rows * cols, Poly(nvars)) {}

    static PolyMat identity(std::size_t nvars, std::size_t m);
    /// Matrix unit E^{ij}: 1 at (i, j).
    static PolyMat unit(std::size_t nvars, std::size_t m, std::size_t i, std::size_t j);

    std::size_t nvars() const noexcept { return n_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const Poly& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    Poly& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    bool is_zero() const;

    PolyMat& operator+=(const PolyMat& o);
    PolyMat& operator-=(const PolyMat& o);
    friend PolyMat operator+(PolyMat a, const PolyMat& b) { return a += b; }
    friend PolyMat operator-(PolyMat a, const PolyMat& b) { return a -= b; }
    friend PolyMat operator*(const PolyMat& a, const PolyMat& b);
    friend PolyMat operator*(const Poly& s, PolyMat a);
    friend PolyVec operator*(const PolyMat& a, const PolyVec& v);
    friend bool operator==(const PolyMat&, const PolyMat&) = default;

private:
    std::size_t n_ = 0, rows_ = 0, cols_ = 0;
    std::vector<Poly> a_;
};

/// A*B - B*A for square matrices.
PolyMat commutator(const PolyMat& a, const PolyMat& b);

void require_same_nvars(std::size_t a, std::size_t b, const char* where);

}  // namespace diolic
