#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "diolic/diffop.hpp"
#include "diolic/poly.hpp"

namespace diolic {

/// a + p in A + P, with P.P = 0.
struct DiolicElement {
    Poly a;
    PolyVec p;

    DiolicElement() = default;
    DiolicElement(Poly a_, PolyVec p_);
    static DiolicElement even(const Poly& a, std::size_t rank);
    static DiolicElement odd(const PolyVec& p);

    std::size_t nvars() const noexcept { return a.nvars(); }
    std::size_t rank() const noexcept { return p.rank(); }
    bool is_zero() const { return a.is_zero() && p.is_zero(); }

    DiolicElement& operator+=(const DiolicElement& o);
    DiolicElement& operator-=(const DiolicElement& o);
    friend DiolicElement operator+(DiolicElement x, const DiolicElement& y) { return x += y; }
    friend DiolicElement operator-(DiolicElement x, const DiolicElement& y) { return x -= y; }
    friend DiolicElement operator*(const DiolicElement& x, const DiolicElement& y);
    friend DiolicElement operator*(const Poly& c, DiolicElement x);
    friend bool operator==(const DiolicElement&, const DiolicElement&) = default;
};

/// Degree-0 derivation: X on A, X.I + G on P.
struct Der0 {
    VectorField X;
    PolyMat G;

    Der0() = default;
    Der0(VectorField x, PolyMat g);
    /// The trivial lift of X.
    static Der0 split(const VectorField& x, std::size_t rank);

    std::size_t nvars() const noexcept { return X.nvars(); }
    std::size_t rank() const noexcept { return G.rows(); }
    bool is_zero() const { return X.is_zero() && G.is_zero(); }

    Poly apply(const Poly& a) const { return X.apply(a); }
    PolyVec apply(const PolyVec& p) const;
    DiolicElement apply(const DiolicElement& e) const;

    /// (1+m)x(1+m) operator on the column (a, p^1..p^m).
    MatrixOp block() const;

    friend bool operator==(const Der0&, const Der0&) = default;
};

/// Degree-1 derivation a -> sum_alpha Z^alpha(a) e_alpha.
struct Der1 {
    std::vector<VectorField> Z;

    Der1() = default;
    explicit Der1(std::vector<VectorField> z);
    static Der1 zero(std::size_t nvars, std::size_t rank);

    std::size_t nvars() const noexcept { return Z.empty() ? 0 : Z.front().nvars(); }
    std::size_t rank() const noexcept { return Z.size(); }
    bool is_zero() const;

    PolyVec apply(const Poly& a) const;
    DiolicElement apply(const DiolicElement& e) const;
    MatrixOp block() const;

    friend bool operator==(const Der1&, const Der1&) = default;
};

/// Degree -1 derivation p -> sum phi_alpha p^alpha. Only exists for rank 1.
struct DerNeg1 {
    std::vector<Poly> phi;

    DerNeg1() = default;
    /// Throws DomainError unless phi has exactly one component.
    explicit DerNeg1(std::vector<Poly> phi_);

    std::size_t nvars() const noexcept { return phi.front().nvars(); }
    std::size_t rank() const noexcept { return phi.size(); }
    bool is_zero() const { return phi.front().is_zero(); }

    Poly apply(const PolyVec& p) const;
    DiolicElement apply(const DiolicElement& e) const;
    MatrixOp block() const;

    friend bool operator==(const DerNeg1&, const DerNeg1&) = default;
};

/// The zero derivation of a degree with no nonzero derivations (|degree| >= 2).
struct ZeroDer {
    int degree = 2;
    friend bool operator==(const ZeroDer&, const ZeroDer&) = default;
};

using AnyDer = std::variant<Der0, Der1, DerNeg1, ZeroDer>;

int degree_of(const AnyDer& d);
bool is_zero(const AnyDer& d);
/// Graded operator on the column (a, p); the zero matrix for ZeroDer.
MatrixOp block_of(const AnyDer& d, std::size_t nvars, std::size_t rank);

/// Graded commutator [D, D'] = DD' - (-1)^{|D||D'|} D'D by the coordinate
/// formulas. Each result is re-checked against the composed block operators
/// and an InternalError is raised on disagreement.
AnyDer graded_commutator(const AnyDer& d1, const AnyDer& d2);
Der0 graded_commutator(const Der0& d1, const Der0& d2);
Der1 graded_commutator(const Der0& d1, const Der1& d2);
DerNeg1 graded_commutator(const Der0& d1, const DerNeg1& d2);
Der0 graded_commutator(const Der1& d1, const DerNeg1& d2);

/// Graded commutator computed only by composing block operators.
MatrixOp block_commutator(const MatrixOp& a, int deg_a, const MatrixOp& b, int deg_b);

/// The Atiyah projection Der0 -> D(A).
inline const VectorField& symbol_sigma(const Der0& d) { return d.X; }

/// (p.D)(a) = X(a) p.
Der1 p_action(const PolyVec& p, const Der0& d);

/// Induced derivations on constructions from P and P'. Both inputs must share
/// the symbol X.
Der0 direct_sum_der(const Der0& d, const Der0& d2);
/// Basis e_a (x) e'_b at index a*m' + b.
Der0 tensor_der(const Der0& d, const Der0& d2);
/// Hom(P, P'); phi has entry phi_{ab} (row a of P', column b of P) at a*m + b.
Der0 hom_der(const Der0& d, const Der0& d2);
/// Exterior power; basis = increasing k-subsets in lexicographic order.
Der0 exterior_der(const Der0& d, std::size_t k);
/// Symmetric power; basis = non-decreasing k-tuples in lexicographic order.
Der0 symmetric_der(const Der0& d, std::size_t k);

std::vector<std::vector<std::size_t>> exterior_basis(std::size_t m, std::size_t k);
std::vector<std::vector<std::size_t>> symmetric_basis(std::size_t m, std::size_t k);

/// Checks X(ab) = X(a)b + aX(b) on A and X0(ap) = X(a)p + aX0(p) on a probe
/// set of monomials of degree <= 2 times basis sections.
bool satisfies_der_leibniz(const Der0& d);

/// Q0 + Q1 with A-bilinear phi: P x Q0 -> Q1, phi[alpha][i][j] the coefficient
/// of f_j in phi(e_alpha, q_i).
struct TruncatedDiolicModule {
    std::size_t nvars = 0, m = 0, rank0 = 0, rank1 = 0;
    std::vector<std::vector<std::vector<Poly>>> phi;

    TruncatedDiolicModule(std::size_t nvars_, std::size_t m_, std::size_t rank0_,
                          std::size_t rank1_,
                          std::vector<std::vector<std::vector<Poly>>> phi_);

    /// The diole itself: Q0 = A, Q1 = P, phi = module action.
    static TruncatedDiolicModule identity(std::size_t nvars, std::size_t m);

    /// phi(q, p).
    PolyVec structure(const PolyVec& q, const PolyVec& p) const;
};

/// The phi-der rule XP(a p) = phi(XA(a), p) + a XP(p), checked on monomials
/// a of degree <= 2 against sections x^tau e_beta with |tau| <= 1.
/// xa: rank0 x 1 operator (must kill 1); xp: rank1 x m.
bool check_phi_der(const TruncatedDiolicModule& mod, const MatrixOp& xa, const MatrixOp& xp);

/// Degree -1 obstruction: the relation D(e_a) e_b = e_a D(e_b) over all basis
/// pairs as a linear system in the values D(e_alpha).
struct DerNeg1Obstruction {
    std::size_t m = 0;
    std::size_t equations = 0;
    std::size_t unknowns = 0;
    std::size_t solution_dimension = 0;
};
DerNeg1Obstruction derneg1_obstruction(std::size_t m);

}  // namespace diolic
