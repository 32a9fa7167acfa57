#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "diolic/diffop.hpp"
#include "diolic/diole.hpp"
#include "diolic/diolic_diffops.hpp"
#include "diolic/poly.hpp"

namespace diolic {

/// Polynomial in x and the momenta xi, homogeneous of degree k in xi. Stored
/// as a Poly over 2n variables: x_i at index i, xi_i at index n + i.
class SymbolPoly {
public:
    SymbolPoly() = default;
    /// The zero symbol of momentum degree k.
    SymbolPoly(std::size_t n, int k);
    /// Throws DomainError unless p is homogeneous of degree k in xi.
    SymbolPoly(std::size_t n, int k, Poly p);
    /// A function of x only, momentum degree 0.
    static SymbolPoly function(const Poly& a);

    std::size_t nvars() const noexcept { return n_; }
    int degree() const noexcept { return k_; }
    const Poly& poly() const noexcept { return p_; }
    bool is_zero() const noexcept { return p_.is_zero(); }

    SymbolPoly& operator+=(const SymbolPoly& o);
    SymbolPoly& operator-=(const SymbolPoly& o);
    friend SymbolPoly operator+(SymbolPoly a, const SymbolPoly& b) { return a += b; }
    friend SymbolPoly operator-(SymbolPoly a, const SymbolPoly& b) { return a -= b; }
    SymbolPoly operator-() const;
    friend bool operator==(const SymbolPoly&, const SymbolPoly&) = default;

private:
    std::size_t n_ = 0;
    int k_ = 0;
    Poly p_;
};

/// Text in the polynomial grammar with momenta k1..kn. The momentum degree is
/// read off the terms; `zero_degree` is used for "0".
SymbolPoly parse_symbol(std::string_view text, std::size_t n, int zero_degree = 0);
std::string format_symbol(const SymbolPoly& s);

/// sum_{|sigma| = k} a_sigma xi^sigma. DomainError when order(op) > k.
SymbolPoly smbl_scalar(const ScalarOp& op, int k);

/// Commutative product; degrees add.
SymbolPoly star(const SymbolPoly& s, const SymbolPoly& t);

/// {F, G} = sum_i dF/dxi_i dG/dx_i - dF/dx_i dG/dxi_i.
SymbolPoly poisson_bracket(const SymbolPoly& s, const SymbolPoly& t);

inline SymbolPoly hamiltonian_apply(const SymbolPoly& s, const SymbolPoly& t) {
    return poisson_bracket(s, t);
}

/// Symbol of a degree-0 operator under the fixed splitting: scalar part at
/// order k, matrix part at order k - 1.
struct DiolicSymbol0 {
    int k = 0;
    SymbolPoly s;
    std::vector<std::vector<SymbolPoly>> Ms;

    std::size_t rank() const noexcept { return Ms.size(); }
    bool is_zero() const;
    friend bool operator==(const DiolicSymbol0&, const DiolicSymbol0&) = default;
};

struct DiolicSymbol1 {
    int k = 0;
    std::vector<SymbolPoly> comps;

    std::size_t rank() const noexcept { return comps.size(); }
    bool is_zero() const;
    friend bool operator==(const DiolicSymbol1&, const DiolicSymbol1&) = default;
};

/// Rank-1 symbol of a degree -1 operator.
struct DiolicSymbolNeg1 {
    int k = 0;
    SymbolPoly t;
    friend bool operator==(const DiolicSymbolNeg1&, const DiolicSymbolNeg1&) = default;
};

DiolicSymbol0 diolic_symbol0(const DiffOp0& b);
DiolicSymbol1 diolic_symbol1(const DiffOp1& b);
DiolicSymbolNeg1 diolic_symbol_neg1(const DiffOpNeg1& b);

/// Degree (0,1): components {s, T_j} + sum_b Ms_{jb} T_b.
DiolicSymbol1 diolic_poisson_bracket(const DiolicSymbol0& S, const DiolicSymbol1& T);
/// Degree (0,0): ({s, t}, {s, Ns} - {t, Ms} + [Ms, Ns]).
DiolicSymbol0 diolic_poisson_bracket(const DiolicSymbol0& S, const DiolicSymbol0& T);
/// Degree (0,-1), rank 1: {s, t} - t Ms.
DiolicSymbolNeg1 diolic_poisson_bracket(const DiolicSymbol0& S, const DiolicSymbolNeg1& T);

/// The nested delta d_{a_1} ... d_{a_{k-1}} of the P-part of an order-k
/// operator, read off as a Der0: X is its first-order part and G the nested
/// delta of the matrix part. Throws DomainError on a wrong argument count.
Der0 lambda_k(const DiffOp0& b, const std::vector<Poly>& args);

}  // namespace diolic
