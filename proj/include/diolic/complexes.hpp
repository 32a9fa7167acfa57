#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "diolic/check.hpp"
#include "diolic/diole.hpp"
#include "diolic/poly.hpp"
#include "diolic/rational.hpp"

namespace diolic {

/// Free basis of Der(P) for P = A^m: index i < n is d_i (acting componentwise),
/// index n + a*m + b is the matrix unit E^{ab} with E^{ab} p = p^b e_a.
class DerBasis {
public:
    DerBasis(std::size_t n, std::size_t m);

    std::size_t nvars() const noexcept { return n_; }
    std::size_t rank() const noexcept { return m_; }
    std::size_t size() const noexcept { return n_ + m_ * m_; }
    std::size_t unit_index(std::size_t a, std::size_t b) const { return n_ + a * m_ + b; }

    /// The basis element as a Der0.
    Der0 element(std::size_t i) const;
    PolyVec apply(std::size_t i, const PolyVec& p) const;
    /// [B_i, B_j] as (index, coefficient) pairs.
    const std::vector<std::pair<std::size_t, Rational>>& bracket(std::size_t i, std::size_t j) const;

private:
    std::size_t n_, m_;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> table_;
};

/// Alternating A-multilinear map Der(P)^k -> P, stored on increasing k-tuples
/// of basis indices (the order of exterior_basis).
class FatForm {
public:
    FatForm(std::size_t n, std::size_t m, std::size_t k);
    /// The 0-form p.
    static FatForm zero_form(const PolyVec& p);

    std::size_t nvars() const noexcept { return n_; }
    std::size_t rank() const noexcept { return m_; }
    std::size_t degree() const noexcept { return k_; }
    const std::vector<std::vector<std::size_t>>& tuples() const noexcept { return tuples_; }

    /// Value on an increasing tuple.
    const PolyVec& at(const std::vector<std::size_t>& tuple) const;
    void set(const std::vector<std::size_t>& tuple, PolyVec v);
    /// Value on an arbitrary tuple, using antisymmetry.
    PolyVec eval(std::vector<std::size_t> tuple) const;
    bool is_zero() const;
    friend bool operator==(const FatForm&, const FatForm&) = default;

private:
    std::size_t index_of(const std::vector<std::size_t>& tuple) const;

    std::size_t n_, m_, k_;
    std::vector<std::vector<std::size_t>> tuples_;
    std::vector<PolyVec> values_;
};

/// (dw)(B_0..B_k) = sum_i (-1)^i B_i(w(..^i..)) + sum_{i<j} (-1)^{i+j} w([B_i,B_j], ..^i..^j..).
/// Throws DomainError when k + 1 exceeds the basis size.
FatForm der_differential(const FatForm& w);

struct CohomologyResult {
    std::vector<std::size_t> dims;
    std::vector<std::size_t> ranks;  // rank of d^k, k = 0..size-2
    std::vector<std::size_t> betti;

    long euler_dims() const;
    long euler_betti() const;
};

/// Rational matrix of d^k restricted to coefficient degree <= D, columns and rows
/// ordered by (tuple, component, monomial).
std::vector<std::vector<Rational>> der_differential_matrix(std::size_t n, std::size_t m,
                                                           unsigned D, std::size_t k);

/// Betti numbers of the Der-complex truncated to coefficient degree <= D.
/// Throws ResourceError when a cochain space exceeds max_dim.
CohomologyResult der_cohomology_truncated(std::size_t n, std::size_t m, unsigned D,
                                          std::size_t max_dim = std::numeric_limits<std::size_t>::max());

/// Finite-dimensional Lie algebra g0 with a representation on g1.
/// c[a][b][d] is the coefficient of basis element d in [a, b].
struct CEData {
    std::size_t r = 0, d1 = 0;
    std::vector<std::vector<std::vector<Rational>>> c;
    std::vector<std::vector<std::vector<Rational>>> rho;  // r matrices d1 x d1

    CEData(std::size_t r_, std::vector<std::vector<std::vector<Rational>>> c_, std::size_t d1_,
           std::vector<std::vector<std::vector<Rational>>> rho_);
};

/// Skewness and Jacobi for c, and the representation property of rho.
CheckReport diolic_lie_check(const CEData& l);

/// Cochains Hom(wedge^p g0, g1) as vectors ordered by (p-subset, component).
std::vector<Rational> ce_differential(const CEData& l, std::size_t p, const std::vector<Rational>& t);
std::vector<std::vector<Rational>> ce_differential_matrix(const CEData& l, std::size_t p);
CohomologyResult ce_cohomology(const CEData& l);

}  // namespace diolic
