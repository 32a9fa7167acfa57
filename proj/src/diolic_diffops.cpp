#include "diolic/diolic_diffops.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "diolic/error.hpp"
#include "diolic/text.hpp"

namespace diolic {

namespace {

void require_rank(std::size_t a, std::size_t b, const char* where) {
    if (a != b) throw DimensionError(std::string(where) + ": module ranks differ");
}

std::pair<std::size_t, std::size_t> dims_of(const AnyDiff& d) {
    return std::visit(
        [](const auto& x) -> std::pair<std::size_t, std::size_t> {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ZeroDiff>) return {0, 0};
            else return {x.nvars(), x.rank()};
        },
        d);
}

int commutator_order(int k, int l) { return std::max(k + l - 1, 0); }

// Evaluates the nest d_{a_0} ... d_{a_last}(op) on f using only op's action.
PolyVec nest_apply(const std::vector<Poly>& as, std::size_t j, const PolyVec& f,
                   const std::function<PolyVec(const PolyVec&)>& op) {
    if (j == as.size()) return op(f);
    return as[j] * nest_apply(as, j + 1, f, op) - nest_apply(as, j + 1, as[j] * f, op);
}

}  // namespace

// ------------------------------------------------------------------ DiffOp0

DiffOp0::DiffOp0(int k_, ScalarOp box, MatrixOp m) : k(k_), boxA(std::move(box)), M(std::move(m)) {
    if (k < 0) throw DomainError("DiffOp0: order must be non-negative");
    require_same_nvars(boxA.nvars(), M.nvars(), "DiffOp0");
    if (M.rows() != M.cols()) throw DimensionError("DiffOp0: matrix part must be square");
    if (boxA.order() > k) throw DomainError("DiffOp0: scalar part exceeds the order bound");
    if (M.order() > k - 1) throw DomainError("DiffOp0: matrix part must have order <= k-1");
}

DiffOp0 DiffOp0::from_pair(const ScalarOp& boxA, const MatrixOp& boxP, int k) {
    if (!verify_diolic_diffop(boxA, boxP, k))
        throw DomainError("DiffOp0: the pair does not share a scalar-type symbol");
    return DiffOp0(k, boxA, boxP - MatrixOp::diagonal(boxA, boxP.rows()));
}

MatrixOp DiffOp0::boxP() const { return MatrixOp::diagonal(boxA, rank()) + M; }

DiolicElement DiffOp0::apply(const DiolicElement& e) const {
    return {boxA.apply(e.a), boxP().apply(e.p)};
}

MatrixOp DiffOp0::block() const {
    const std::size_t m = rank();
    MatrixOp b(nvars(), m + 1, m + 1);
    b(0, 0) = boxA;
    MatrixOp p = boxP();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) b(i + 1, j + 1) = p(i, j);
    return b;
}

// ------------------------------------------------------------------ DiffOp1

DiffOp1::DiffOp1(int k_, std::vector<ScalarOp> ops_) : k(k_), ops(std::move(ops_)) {
    if (k < 0) throw DomainError("DiffOp1: order must be non-negative");
    if (ops.empty()) throw DimensionError("DiffOp1: rank must be positive");
    for (const auto& o : ops) {
        require_same_nvars(o.nvars(), nvars(), "DiffOp1");
        if (o.order() > k) throw DomainError("DiffOp1: component exceeds the order bound");
    }
}

PolyVec DiffOp1::apply(const Poly& a) const {
    PolyVec r(a.nvars(), rank());
    for (std::size_t i = 0; i < rank(); ++i) r[i] = ops[i].apply(a);
    return r;
}

DiolicElement DiffOp1::apply(const DiolicElement& e) const { return DiolicElement::odd(apply(e.a)); }

MatrixOp DiffOp1::block() const {
    MatrixOp b(nvars(), rank() + 1, rank() + 1);
    for (std::size_t i = 0; i < rank(); ++i) b(i + 1, 0) = ops[i];
    return b;
}

bool DiffOp1::is_zero() const {
    return std::all_of(ops.begin(), ops.end(), [](const ScalarOp& o) { return o.is_zero(); });
}

// --------------------------------------------------------------- DiffOpNeg1

DiffOpNeg1::DiffOpNeg1(int k_, ScalarOp op_, std::size_t rank) : k(k_), op(std::move(op_)) {
    if (rank != 1) throw DomainError("degree -1 differential operators exist only for rank 1");
    if (k < 0 || op.order() > k) throw DomainError("DiffOpNeg1: operator exceeds the order bound");
}

Poly DiffOpNeg1::apply(const PolyVec& p) const {
    require_rank(p.rank(), 1, "DiffOpNeg1::apply");
    return op.apply(p[0]);
}

MatrixOp DiffOpNeg1::block() const {
    MatrixOp b(nvars(), 2, 2);
    b(0, 1) = op;
    return b;
}

// ---------------------------------------------------------------- AnyDiff

int degree_of(const AnyDiff& d) {
    switch (d.index()) {
        case 0: return 0;
        case 1: return 1;
        case 2: return -1;
        default: return std::get<ZeroDiff>(d).degree;
    }
}

bool is_zero(const AnyDiff& d) {
    return std::visit(
        [](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ZeroDiff>) return true;
            else return x.is_zero();
        },
        d);
}

MatrixOp block_of(const AnyDiff& d, std::size_t nvars, std::size_t rank) {
    return std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ZeroDiff>) return MatrixOp(nvars, rank + 1, rank + 1);
            else return x.block();
        },
        d);
}

namespace {

DiffOp0 formula(const DiffOp0& b1, const DiffOp0& b2) {
    require_rank(b1.rank(), b2.rank(), "graded_commutator");
    const std::size_t m = b1.rank();
    MatrixOp a1 = MatrixOp::diagonal(b1.boxA, m), a2 = MatrixOp::diagonal(b2.boxA, m);
    MatrixOp mp = commutator(a1, b2.M) + commutator(b1.M, a2) + commutator(b1.M, b2.M);
    return DiffOp0(commutator_order(b1.k, b2.k), commutator(b1.boxA, b2.boxA), mp);
}

DiffOp1 formula(const DiffOp0& b1, const DiffOp1& b2) {
    require_rank(b1.rank(), b2.rank(), "graded_commutator");
    const std::size_t m = b1.rank();
    std::vector<ScalarOp> ops;
    for (std::size_t j = 0; j < m; ++j) {
        ScalarOp o = commutator(b1.boxA, b2.ops[j]);
        for (std::size_t b = 0; b < m; ++b)
            if (!b1.M(j, b).is_zero()) o += compose(b1.M(j, b), b2.ops[b]);
        ops.push_back(std::move(o));
    }
    return DiffOp1(commutator_order(b1.k, b2.k), std::move(ops));
}

DiffOpNeg1 formula(const DiffOp0& b1, const DiffOpNeg1& b2) {
    require_rank(b1.rank(), 1, "graded_commutator");
    ScalarOp o = commutator(b1.boxA, b2.op) - compose(b2.op, b1.M(0, 0));
    return DiffOpNeg1(commutator_order(b1.k, b2.k), o);
}

DiffOp0 formula(const DiffOp1& b1, const DiffOpNeg1& b2) {
    require_rank(b1.rank(), 1, "graded_commutator");
    // Anticommutator: diag(op o d, d o op).
    const ScalarOp& d = b1.ops[0];
    MatrixOp mp(d.nvars(), 1, 1);
    mp(0, 0) = commutator(d, b2.op);
    return DiffOp0(b1.k + b2.k, compose(b2.op, d), mp);
}

AnyDiff negated(AnyDiff r) {
    return std::visit(
        [](auto x) -> AnyDiff {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, DiffOp0>) {
                x.boxA = -x.boxA;
                x.M = -x.M;
            } else if constexpr (std::is_same_v<T, DiffOp1>) {
                for (auto& o : x.ops) o = -o;
            } else if constexpr (std::is_same_v<T, DiffOpNeg1>) {
                x.op = -x.op;
            }
            return x;
        },
        std::move(r));
}

AnyDiff formula_any(const AnyDiff& d1, const AnyDiff& d2) {
    const int g = degree_of(d1), h = degree_of(d2);
    if (std::holds_alternative<ZeroDiff>(d1) || std::holds_alternative<ZeroDiff>(d2) ||
        g + h > 1 || g + h < -1)
        return ZeroDiff{g + h};
    // [Y, X] = -(-1)^{gh} [X, Y]
    const bool odd_swap = (g * h) % 2 != 0;
    auto swapped = [&](AnyDiff r) { return odd_swap ? r : negated(std::move(r)); };
    if (g == 0 && h == 0) return formula(std::get<DiffOp0>(d1), std::get<DiffOp0>(d2));
    if (g == 0 && h == 1) return formula(std::get<DiffOp0>(d1), std::get<DiffOp1>(d2));
    if (g == 1 && h == 0) return swapped(formula(std::get<DiffOp0>(d2), std::get<DiffOp1>(d1)));
    if (g == 0 && h == -1) return formula(std::get<DiffOp0>(d1), std::get<DiffOpNeg1>(d2));
    if (g == -1 && h == 0) return swapped(formula(std::get<DiffOp0>(d2), std::get<DiffOpNeg1>(d1)));
    if (g == 1 && h == -1) return formula(std::get<DiffOp1>(d1), std::get<DiffOpNeg1>(d2));
    return swapped(formula(std::get<DiffOp1>(d2), std::get<DiffOpNeg1>(d1)));
}

}  // namespace

AnyDiff graded_commutator(const AnyDiff& b1, const AnyDiff& b2) {
    const bool real = !std::holds_alternative<ZeroDiff>(b1) && !std::holds_alternative<ZeroDiff>(b2);
    auto [n1, m1] = dims_of(b1);
    auto [n2, m2] = dims_of(b2);
    if (real) {
        require_same_nvars(n1, n2, "graded_commutator");
        require_rank(m1, m2, "graded_commutator");
    }
    AnyDiff out = formula_any(b1, b2);
    if (real) {
        MatrixOp expect = block_commutator(block_of(b1, n1, m1), degree_of(b1),
                                           block_of(b2, n1, m1), degree_of(b2));
        if (!(expect == block_of(out, n1, m1)))
            throw InternalError("graded_commutator: coordinate formula disagrees with composed operators");
    }
    return out;
}

// ------------------------------------------------------ symbol condition

bool verify_diolic_diffop(const ScalarOp& boxA, const MatrixOp& boxP, int k) {
    require_same_nvars(boxA.nvars(), boxP.nvars(), "verify_diolic_diffop");
    if (boxP.rows() != boxP.cols()) throw DimensionError("verify_diolic_diffop: boxP must be square");
    if (boxA.order() > k || boxP.order() > k)
        throw DomainError("verify_diolic_diffop: operators exceed the order bound");
    const std::size_t n = boxA.nvars(), m = boxP.rows();
    const MatrixOp diff = boxP - MatrixOp::diagonal(boxA, m);

    const bool by_coeffs = diff.order() <= k - 1;

    // Delta route: every k-fold nest of coordinates, and d_a^k for monomials a
    // of degree <= k+1, must give equal values on A and P. A k-fold nest of an
    // order-<=k operator is A-linear, so basis sections are enough as probes.
    bool by_deltas = true;
    if (k == 0) {
        by_deltas = kills_monomials(diff, 0);
    } else {
        auto pa = [&](const PolyVec& f) { return boxP.apply(f); };
        auto aa = [&](const PolyVec& f) {
            PolyVec r(n, m);
            for (std::size_t i = 0; i < m; ++i) r[i] = boxA.apply(f[i]);
            return r;
        };
        std::vector<std::vector<Poly>> nests;
        for (const auto& mi : monomials_of_degree(n, static_cast<unsigned>(k))) {
            std::vector<Poly> nest;
            for (std::size_t i = 0; i < n; ++i)
                for (unsigned r = 0; r < mi[i]; ++r) nest.push_back(Poly::variable(n, i));
            nests.push_back(std::move(nest));
        }
        for (const auto& e : monomials_up_to(n, static_cast<unsigned>(k + 1)))
            if (!e.is_zero()) nests.emplace_back(static_cast<std::size_t>(k), Poly::monomial(e));
        for (const auto& nest : nests) {
            for (std::size_t b = 0; b < m && by_deltas; ++b) {
                PolyVec f = PolyVec::basis(n, m, b);
                if (!(nest_apply(nest, 0, f, pa) == nest_apply(nest, 0, f, aa))) by_deltas = false;
            }
            if (!by_deltas) break;
        }
    }
    if (by_coeffs != by_deltas)
        throw InternalError("verify_diolic_diffop: coefficient and delta routes disagree");
    return by_coeffs;
}

DiffOp0 atiyah_split(const ScalarOp& box, int k, std::size_t rank) {
    if (box.order() > k) throw DomainError("atiyah_split: operator exceeds the order bound");
    return DiffOp0(k, box, MatrixOp(box.nvars(), rank, rank));
}

CheckReport check_k_connection(const ConnectionTable& table, int k, std::size_t nvars) {
    CheckReport rep;
    for (unsigned d = 1; d <= static_cast<unsigned>(std::max(k, 0)); ++d)
        for (const auto& sigma : monomials_of_degree(nvars, d)) {
            auto it = table.find(sigma);
            std::ostringstream label;
            label << "d^(";
            for (std::size_t i = 0; i < sigma.size(); ++i) label << (i ? "," : "") << sigma[i];
            label << ")";
            if (it == table.end())
                throw DomainError("check_k_connection: missing generator " + label.str());
            const DiffOp0& b = it->second;
            if (b.k > k) {
                rep.fail("order:" + label.str(), std::to_string(b.k));
                continue;
            }
            ScalarOp gen = ScalarOp::derivative(sigma, Poly(nvars, 1));
            ScalarOp defect = b.boxA - gen;
            for (const auto& [s, c] : defect.coeffs()) {
                std::ostringstream name;
                name << "section:" << label.str() << ":coeff(";
                for (std::size_t i = 0; i < s.size(); ++i) name << (i ? "," : "") << s[i];
                name << ")";
                rep.fail(name.str(), format_poly(c));
            }
            Poly at_one = b.boxA.apply(Poly(nvars, 1));
            if (!at_one.is_zero()) rep.fail("unital:" + label.str(), format_poly(at_one));
        }
    return rep;
}

DiffOp1 beta_diff(const PolyVec& p, const DiffOp0& b) {
    require_same_nvars(p.nvars(), b.nvars(), "beta_diff");
    require_rank(p.rank(), b.rank(), "beta_diff");
    std::vector<ScalarOp> ops;
    for (std::size_t a = 0; a < p.rank(); ++a) ops.push_back(p[a] * b.boxA);
    return DiffOp1(b.k, std::move(ops));
}

}  // namespace diolic
