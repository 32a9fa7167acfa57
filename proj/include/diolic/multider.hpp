#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "diolic/check.hpp"
#include "diolic/diffop.hpp"
#include "diolic/diole.hpp"

namespace diolic {

/// Homogeneous element of the diole: degree 0 lives in A, degree 1 in P.
/// Any other degree denotes the zero element.
struct GradedElement {
    int degree = 0;
    DiolicElement value;

    static GradedElement even(const Poly& a, std::size_t rank);
    static GradedElement odd(const PolyVec& p);
    static GradedElement zero(int degree, std::size_t nvars, std::size_t rank);

    bool is_zero() const { return value.is_zero(); }
    friend bool operator==(const GradedElement&, const GradedElement&) = default;
};

/// A graded multiderivation of the given arity and degree, known through its
/// values on homogeneous arguments. Arity 0 is a plain element.
class MultiDer {
public:
    using Eval = std::function<DiolicElement(const std::vector<GradedElement>&)>;

    MultiDer(int arity, int degree, std::size_t nvars, std::size_t rank, Eval f);
    static MultiDer element(const GradedElement& e, std::size_t rank);

    int arity() const noexcept { return arity_; }
    int degree() const noexcept { return degree_; }
    std::size_t nvars() const noexcept { return n_; }
    std::size_t rank() const noexcept { return m_; }

    /// Value on a full argument list; zero when the output degree is not 0 or 1.
    GradedElement operator()(const std::vector<GradedElement>& args) const;
    /// The element of an arity-0 multiderivation.
    GradedElement value() const;
    /// Fills the first slot.
    MultiDer curry(const GradedElement& a) const;
    /// x + c y.
    friend MultiDer combine(const MultiDer& x, const Rational& c, const MultiDer& y);

private:
    MultiDer() = default;

    int arity_ = 0, degree_ = 0;
    std::size_t n_ = 0, m_ = 0;
    std::shared_ptr<const Eval> f_;
    std::shared_ptr<const GradedElement> elem_;
};

/// The Schouten bracket through its inductive definition:
/// [[X, a]] = X(a), [[a, N]] = (-1)^{|a|h + j} N(a), and
/// [[D, N]](a) = [[D, N(a)]] - (-1)^{|a|h + j} [[D(a), N]].
MultiDer schouten(const MultiDer& d, const MultiDer& e);

// ------------------------------------------------------------ biderivations

/// Degree-0 biderivation: bivector Pi^{ij} plus end part M^i = PiEnd[i].
struct BiDer0 {
    std::size_t n = 0, m = 0;
    std::vector<std::vector<Poly>> PiAA;  // n x n, antisymmetric
    std::vector<PolyMat> PiEnd;           // n matrices m x m

    BiDer0(std::vector<std::vector<Poly>> piAA, std::vector<PolyMat> piEnd, std::size_t rank);
    /// The bivector from upper-triangle entries Pi^{ij}, i < j, row by row.
    static BiDer0 from_upper(std::size_t n, std::size_t m, const std::vector<Poly>& upper,
                             std::vector<PolyMat> piEnd);

    Poly eval(const Poly& a, const Poly& b) const;
    PolyVec eval(const Poly& a, const PolyVec& p) const;
    /// Graded evaluation with Pi(p, a) = -Pi(a, p) and Pi(p, q) = 0.
    GradedElement eval(const GradedElement& z1, const GradedElement& z2) const;
    MultiDer as_multider() const;
};

/// [[Pi, Pi]](z1, z2, z3).
DiolicElement schouten_self_eval(const BiDer0& pi, const GradedElement& z1,
                                 const GradedElement& z2, const GradedElement& z3);

/// The coordinate PDE families. Verdict uses the full compatibility equation;
/// the residual of the equation without the matrix commutator term and with
/// the opposite overall sign is attached as notes.
CheckReport poisson0_pde_report(const BiDer0& pi);

/// True iff [[Pi, Pi]] vanishes on monomial triples of degree <= 2 with at
/// most one entry in P.
bool schouten_vanishes(const BiDer0& pi);

/// PDE verdict, cross-checked against schouten_vanishes (InternalError on
/// disagreement).
CheckReport is_poisson0(const BiDer0& pi);

/// P-valued bivector (a, b) -> sum Pi^{ij,alpha} d_i a d_j b e_alpha.
struct BiDer1 {
    std::size_t n = 0, m = 0;
    std::vector<std::vector<std::vector<Poly>>> Pi;  // n x n x m, antisymmetric in i, j

    BiDer1(std::vector<std::vector<std::vector<Poly>>> pi, std::size_t nvars, std::size_t rank);
    PolyVec eval(const Poly& a, const Poly& b) const;
};

/// Degree -1 biderivation: anchor rho and structure functions. structure[a][b][c]
/// is the coefficient of e_c in [e_a, e_b].
struct BiDerNeg1 {
    std::size_t n = 0, m = 0;
    std::vector<std::vector<Poly>> rho;                     // m x n
    std::vector<std::vector<std::vector<Poly>>> structure;  // m x m x m

    BiDerNeg1(std::vector<std::vector<Poly>> rho_,
              std::vector<std::vector<std::vector<Poly>>> structure_, std::size_t nvars);

    VectorField anchor(const PolyVec& p) const;
    /// [p, q] = p^a q^b c_ab + rho(p)(q^b) e_b - rho(q)(p^a) e_a.
    PolyVec bracket(const PolyVec& p, const PolyVec& q) const;
    /// e_a -> Der0 with symbol rho(e_a) and matrix C_a.
    Der0 der_of_basis(std::size_t a) const;
    /// Graded evaluation as a degree -1 bracket: (p, q) -> [p, q],
    /// (p, a) -> rho(p)(a), (a, p) -> -rho(p)(a), (a, b) -> 0.
    GradedElement eval(const GradedElement& z1, const GradedElement& z2) const;
};

CheckReport is_lie_algebroid(const BiDerNeg1& l);

/// Degree -2 pairing g.p.q on a rank-1 module.
struct BiDerNeg2 {
    Poly g;
    /// Throws DomainError unless rank == 1.
    BiDerNeg2(Poly g_, std::size_t rank);
    Poly eval(const PolyVec& p, const PolyVec& q) const;
};

// -------------------------------------------------------- Jacobi structures

using GradedBracket = std::function<GradedElement(const GradedElement&, const GradedElement&)>;

/// B(B(z1,z2),z3) - B(z1,B(z2,z3)) + (-1)^{(|z1|+g)(|z2|+g)} B(z2,B(z1,z3)).
/// For at most one odd argument and g = 0 this is the cyclic sum.
GradedElement graded_jacobiator(const GradedBracket& b, int g, const GradedElement& z1,
                                const GradedElement& z2, const GradedElement& z3);

/// First-order skew bidifferential operator of degree 0. Slot index 0 stands
/// for the identity, index i+1 for d_i.
struct JacobiOp0 {
    std::size_t n = 0, m = 0;
    std::vector<std::vector<Poly>> cAA;  // (n+1) x (n+1), antisymmetric
    std::vector<MatrixOp> D;             // n+1 operators P -> P of order <= 1

    /// Validates skewness and the shared scalar symbol in the second slot.
    JacobiOp0(std::vector<std::vector<Poly>> c, std::vector<MatrixOp> d, std::size_t nvars,
              std::size_t rank);
    /// Lift of a biderivation with Box(1, -) = 0.
    static JacobiOp0 from_poisson(const BiDer0& pi);

    Poly eval(const Poly& a, const Poly& b) const;
    PolyVec eval(const Poly& a, const PolyVec& p) const;
    GradedElement eval(const GradedElement& z1, const GradedElement& z2) const;
};

GradedElement jacobiator0(const JacobiOp0& b, const GradedElement& z1, const GradedElement& z2,
                          const GradedElement& z3);
CheckReport is_jacobi0(const JacobiOp0& b);

/// Degree -1 Jacobi bracket on a rank-1 module: {f p0, g p0} = J(f, g) p0.
struct JacobiNeg1 {
    std::size_t n = 0;
    std::vector<std::vector<Poly>> J;  // (n+1) x (n+1)

    /// Throws DomainError unless rank == 1.
    JacobiNeg1(std::vector<std::vector<Poly>> j, std::size_t nvars, std::size_t rank);
    Poly eval(const Poly& f, const Poly& g) const;
};

CheckReport is_jacobi_neg1(const JacobiNeg1& j);

}  // namespace diolic
