#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "diolic/poly.hpp"

namespace diolic {

/// The derivation sum_i X^i d_i of A.
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(std::size_t nvars) : n_(nvars), c_(nvars, Poly(nvars)) {}
    explicit VectorField(std::vector<Poly> comps);

    std::size_t nvars() const noexcept { return n_; }
    const Poly& operator[](std::size_t i) const { return c_[i]; }
    Poly& operator[](std::size_t i) { return c_[i]; }
    const std::vector<Poly>& components() const noexcept { return c_; }
    bool is_zero() const;

    Poly apply(const Poly& p) const;

    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(const Poly& a, VectorField v);
    friend bool operator==(const VectorField&, const VectorField&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Poly> c_;
};

/// Lie bracket of vector fields, XY - YX.
VectorField lie_bracket(const VectorField& x, const VectorField& y);

/// sum_sigma a_sigma d^sigma acting on A, coefficients kept to the left.
class ScalarOp {
public:
    using CoeffMap = std::map<MultiIndex, Poly, TermOrder>;

    ScalarOp() = default;
    explicit ScalarOp(std::size_t nvars) : n_(nvars) {}

    /// Multiplication by a.
    static ScalarOp multiplication(const Poly& a);
    /// c * d^sigma.
    static ScalarOp derivative(const MultiIndex& sigma, const Poly& c);
    static ScalarOp derivative(std::size_t nvars, std::size_t i);
    static ScalarOp from_vector_field(const VectorField& x);

    std::size_t nvars() const noexcept { return n_; }
    bool is_zero() const noexcept { return c_.empty(); }
    /// max |sigma| over nonzero coefficients; -1 for the zero operator.
    int order() const;
    const CoeffMap& coeffs() const noexcept { return c_; }
    Poly coeff(const MultiIndex& sigma) const;
    void add_term(const MultiIndex& sigma, const Poly& c);

    /// Terms with |sigma| == d.
    ScalarOp homogeneous_part(unsigned d) const;
    /// Terms with |sigma| <= d.
    ScalarOp truncated(unsigned d) const;
    /// The order-1 part as a vector field.
    VectorField first_order_part() const;

    Poly apply(const Poly& p) const;

    ScalarOp& operator+=(const ScalarOp& o);
    ScalarOp& operator-=(const ScalarOp& o);
    friend ScalarOp operator+(ScalarOp a, const ScalarOp& b) { return a += b; }
    friend ScalarOp operator-(ScalarOp a, const ScalarOp& b) { return a -= b; }
    ScalarOp operator-() const;
    /// Left multiplication a * op.
    friend ScalarOp operator*(const Poly& a, const ScalarOp& op);
    friend ScalarOp operator*(const Rational& c, const ScalarOp& op);
    friend bool operator==(const ScalarOp& a, const ScalarOp& b) {
        return a.n_ == b.n_ && a.c_ == b.c_;
    }

private:
    std::size_t n_ = 0;
    CoeffMap c_;
};

ScalarOp compose(const ScalarOp& a, const ScalarOp& b);
/// a o b - b o a.
ScalarOp commutator(const ScalarOp& a, const ScalarOp& b);
/// a o Op - Op o a.
ScalarOp delta(const Poly& a, const ScalarOp& op);

/// rows x cols matrix of scalar operators, an operator A^cols -> A^rows.
class MatrixOp {
public:
    MatrixOp() = default;
    MatrixOp(std::size_t nvars, std::size_t rows, std::size_t cols)
        : n_(nvars), rows_(rows), cols_(cols), a_(rows * cols, ScalarOp(nvars)) {}

    /// op on the diagonal of an m x m matrix.
    static MatrixOp diagonal(const ScalarOp& op, std::size_t m);
    /// Order-0 operator given by a matrix of functions.
    static MatrixOp from_matrix(const PolyMat& g);

    std::size_t nvars() const noexcept { return n_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const ScalarOp& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    ScalarOp& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    bool is_zero() const;
    int order() const;

    /// Entrywise homogeneous part / truncation.
    MatrixOp homogeneous_part(unsigned d) const;
    MatrixOp truncated(unsigned d) const;
    /// The order-0 part as a matrix of functions.
    PolyMat zeroth_order_part() const;

    PolyVec apply(const PolyVec& v) const;

    MatrixOp& operator+=(const MatrixOp& o);
    MatrixOp& operator-=(const MatrixOp& o);
    friend MatrixOp operator+(MatrixOp a, const MatrixOp& b) { return a += b; }
    friend MatrixOp operator-(MatrixOp a, const MatrixOp& b) { return a -= b; }
    MatrixOp operator-() const;
    friend MatrixOp operator*(const Poly& a, const MatrixOp& op);
    friend MatrixOp operator*(const Rational& c, const MatrixOp& op);
    friend bool operator==(const MatrixOp&, const MatrixOp&) = default;

private:
    std::size_t n_ = 0, rows_ = 0, cols_ = 0;
    std::vector<ScalarOp> a_;
};

MatrixOp compose(const MatrixOp& a, const MatrixOp& b);
MatrixOp commutator(const MatrixOp& a, const MatrixOp& b);
MatrixOp delta(const Poly& a, const MatrixOp& op);

/// Order check by coefficient inspection.
bool order_at_most_by_coeffs(const ScalarOp& op, int k);
bool order_at_most_by_coeffs(const MatrixOp& op, int k);

/// Order check by evaluating every nest d_{x_i0} ... d_{x_ik}(op) on a
/// monomial spanning set large enough to detect any surviving term.
bool order_at_most_by_deltas(const ScalarOp& op, int k);
bool order_at_most_by_deltas(const MatrixOp& op, int k);

/// Runs both routes; throws InternalError if they disagree.
bool verify_order(const ScalarOp& op, int k);
bool verify_order(const MatrixOp& op, int k);

/// True iff op kills every monomial (times every basis vector) of degree <= d.
/// For an operator of order <= d this decides whether op is zero.
bool kills_monomials(const ScalarOp& op, unsigned d);
bool kills_monomials(const MatrixOp& op, unsigned d);

}  // namespace diolic
