#pragma once

#include <cstddef>
#include <map>
#include <variant>
#include <vector>

#include "diolic/check.hpp"
#include "diolic/diffop.hpp"
#include "diolic/diole.hpp"

namespace diolic {

/// Degree-0 operator of order <= k in split form: boxA on A and
/// boxA.I + M on P, with order(M) <= k - 1.
struct DiffOp0 {
    int k = 0;
    ScalarOp boxA;
    MatrixOp M;

    DiffOp0() = default;
    /// Throws DomainError when the order bounds fail.
    DiffOp0(int k_, ScalarOp box, MatrixOp m);
    /// From an unsplit pair; throws DomainError unless the pair shares its
    /// scalar-type symbol at order k.
    static DiffOp0 from_pair(const ScalarOp& boxA, const MatrixOp& boxP, int k);

    std::size_t nvars() const noexcept { return boxA.nvars(); }
    std::size_t rank() const noexcept { return M.rows(); }
    MatrixOp boxP() const;
    DiolicElement apply(const DiolicElement& e) const;
    MatrixOp block() const;
    bool is_zero() const { return boxA.is_zero() && M.is_zero(); }

    friend bool operator==(const DiffOp0&, const DiffOp0&) = default;
};

/// Degree-1 operator a -> sum ops^alpha(a) e_alpha.
struct DiffOp1 {
    int k = 0;
    std::vector<ScalarOp> ops;

    DiffOp1() = default;
    DiffOp1(int k_, std::vector<ScalarOp> ops_);

    std::size_t nvars() const noexcept { return ops.front().nvars(); }
    std::size_t rank() const noexcept { return ops.size(); }
    PolyVec apply(const Poly& a) const;
    DiolicElement apply(const DiolicElement& e) const;
    MatrixOp block() const;
    bool is_zero() const;

    friend bool operator==(const DiffOp1&, const DiffOp1&) = default;
};

/// Degree -1 operator P -> A; only for rank 1.
struct DiffOpNeg1 {
    int k = 0;
    ScalarOp op;

    DiffOpNeg1() = default;
    /// Throws DomainError unless rank == 1 and order(op) <= k.
    DiffOpNeg1(int k_, ScalarOp op_, std::size_t rank = 1);

    std::size_t nvars() const noexcept { return op.nvars(); }
    std::size_t rank() const noexcept { return 1; }
    Poly apply(const PolyVec& p) const;
    MatrixOp block() const;
    bool is_zero() const { return op.is_zero(); }

    friend bool operator==(const DiffOpNeg1&, const DiffOpNeg1&) = default;
};

struct ZeroDiff {
    int degree = 2;
    friend bool operator==(const ZeroDiff&, const ZeroDiff&) = default;
};

using AnyDiff = std::variant<DiffOp0, DiffOp1, DiffOpNeg1, ZeroDiff>;

int degree_of(const AnyDiff& d);
bool is_zero(const AnyDiff& d);
MatrixOp block_of(const AnyDiff& d, std::size_t nvars, std::size_t rank);

/// Graded commutator by the coordinate formulas, re-checked against composed
/// block operators (InternalError on disagreement).
AnyDiff graded_commutator(const AnyDiff& b1, const AnyDiff& b2);

/// Shared scalar-type symbol test: boxP - boxA.I has order <= k - 1. Runs
/// the coefficient route and the delta route and requires them to agree.
bool verify_diolic_diffop(const ScalarOp& boxA, const MatrixOp& boxP, int k);

inline const ScalarOp& atiyah_project(const DiffOp0& b) { return b.boxA; }
/// The diagonal section box -> (box, 0).
DiffOp0 atiyah_split(const ScalarOp& box, int k, std::size_t rank);

/// Values of a k-connection on the generators d^sigma, 1 <= |sigma| <= k.
using ConnectionTable = std::map<MultiIndex, DiffOp0>;

/// Section and unital conditions on every generator. Throws DomainError for
/// a missing generator.
CheckReport check_k_connection(const ConnectionTable& table, int k, std::size_t nvars);

/// a -> boxA(a) p.
DiffOp1 beta_diff(const PolyVec& p, const DiffOp0& b);

}  // namespace diolic
