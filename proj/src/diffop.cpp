#include "diolic/diffop.hpp"

#include <algorithm>
#include <functional>

#include "diolic/error.hpp"

namespace diolic {

namespace {

// All rho <= sigma componentwise.
void sub_indices(const MultiIndex& sigma, std::size_t pos, MultiIndex& cur,
                 std::vector<MultiIndex>& out) {
    if (pos == sigma.size()) {
        out.push_back(cur);
        return;
    }
    for (unsigned v = 0; v <= sigma[pos]; ++v) {
        cur[pos] = v;
        sub_indices(sigma, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

Rational multi_binomial(const MultiIndex& sigma, const MultiIndex& rho) {
    Rational r = 1;
    for (std::size_t i = 0; i < sigma.size(); ++i) r *= binomial(sigma[i], rho[i]);
    return r;
}

void require_shape(const MatrixOp& a, const MatrixOp& b, const char* where) {
    require_same_nvars(a.nvars(), b.nvars(), where);
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError(std::string(where) + ": matrix operator shapes differ");
}

// Coordinate multisets of size d, each as a list of variables.
std::vector<std::vector<Poly>> coordinate_nests(std::size_t n, unsigned d) {
    std::vector<std::vector<Poly>> out;
    for (const auto& mi : monomials_of_degree(n, d)) {
        std::vector<Poly> nest;
        for (std::size_t i = 0; i < n; ++i)
            for (unsigned r = 0; r < mi[i]; ++r) nest.push_back(Poly::variable(n, i));
        out.push_back(std::move(nest));
    }
    return out;
}

// d_{a_j} ... d_{a_last}(op) applied to f, using only op's action.
template <class Value, class Apply>
Value nest_apply(const std::vector<Poly>& as, std::size_t j, const Value& f, const Apply& apply) {
    if (j == as.size()) return apply(f);
    Value left = as[j] * nest_apply(as, j + 1, f, apply);
    Value right = nest_apply(as, j + 1, as[j] * f, apply);
    return left - right;
}

}  // namespace

// ---------------------------------------------------------------- VectorField

VectorField::VectorField(std::vector<Poly> comps) : n_(comps.size()), c_(std::move(comps)) {
    for (const auto& p : c_) require_same_nvars(p.nvars(), n_, "VectorField");
}

bool VectorField::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Poly& p) { return p.is_zero(); });
}

Poly VectorField::apply(const Poly& p) const {
    require_same_nvars(p.nvars(), n_, "VectorField::apply");
    Poly r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        if (!c_[i].is_zero()) r += c_[i] * partial(p, i);
    return r;
}

VectorField& VectorField::operator+=(const VectorField& o) {
    require_same_nvars(n_, o.n_, "VectorField::+");
    for (std::size_t i = 0; i < n_; ++i) c_[i] += o.c_[i];
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    require_same_nvars(n_, o.n_, "VectorField::-");
    for (std::size_t i = 0; i < n_; ++i) c_[i] -= o.c_[i];
    return *this;
}

VectorField operator*(const Poly& a, VectorField v) {
    for (auto& c : v.c_) c *= a;
    return v;
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
    require_same_nvars(x.nvars(), y.nvars(), "lie_bracket");
    VectorField r(x.nvars());
    for (std::size_t i = 0; i < x.nvars(); ++i) r[i] = x.apply(y[i]) - y.apply(x[i]);
    return r;
}

// ------------------------------------------------------------------ ScalarOp

ScalarOp ScalarOp::multiplication(const Poly& a) {
    ScalarOp op(a.nvars());
    op.add_term(MultiIndex(a.nvars()), a);
    return op;
}

ScalarOp ScalarOp::derivative(const MultiIndex& sigma, const Poly& c) {
    require_same_nvars(sigma.size(), c.nvars(), "ScalarOp::derivative");
    ScalarOp op(c.nvars());
    op.add_term(sigma, c);
    return op;
}

ScalarOp ScalarOp::derivative(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw DimensionError("ScalarOp::derivative: variable index out of range");
    return derivative(MultiIndex::unit(nvars, i), Poly(nvars, 1));
}

ScalarOp ScalarOp::from_vector_field(const VectorField& x) {
    ScalarOp op(x.nvars());
    for (std::size_t i = 0; i < x.nvars(); ++i) op.add_term(MultiIndex::unit(x.nvars(), i), x[i]);
    return op;
}

int ScalarOp::order() const {
    // TermOrder lists the highest |sigma| first.
    return c_.empty() ? -1 : static_cast<int>(c_.begin()->first.total_degree());
}

Poly ScalarOp::coeff(const MultiIndex& sigma) const {
    auto it = c_.find(sigma);
    return it == c_.end() ? Poly(n_) : it->second;
}

void ScalarOp::add_term(const MultiIndex& sigma, const Poly& c) {
    require_same_nvars(sigma.size(), n_, "ScalarOp::add_term");
    require_same_nvars(c.nvars(), n_, "ScalarOp::add_term");
    if (c.is_zero()) return;
    auto [it, inserted] = c_.try_emplace(sigma, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) c_.erase(it);
    }
}

ScalarOp ScalarOp::homogeneous_part(unsigned d) const {
    ScalarOp r(n_);
    for (const auto& [s, c] : c_)
        if (s.total_degree() == d) r.c_.emplace(s, c);
    return r;
}

ScalarOp ScalarOp::truncated(unsigned d) const {
    ScalarOp r(n_);
    for (const auto& [s, c] : c_)
        if (s.total_degree() <= d) r.c_.emplace(s, c);
    return r;
}

VectorField ScalarOp::first_order_part() const {
    VectorField x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[i] = coeff(MultiIndex::unit(n_, i));
    return x;
}

Poly ScalarOp::apply(const Poly& p) const {
    require_same_nvars(p.nvars(), n_, "ScalarOp::apply");
    Poly r(n_);
    for (const auto& [s, c] : c_) {
        Poly d = partial(p, s);
        if (!d.is_zero()) r += c * d;
    }
    return r;
}

ScalarOp& ScalarOp::operator+=(const ScalarOp& o) {
    require_same_nvars(n_, o.n_, "ScalarOp::+");
    for (const auto& [s, c] : o.c_) add_term(s, c);
    return *this;
}

ScalarOp& ScalarOp::operator-=(const ScalarOp& o) {
    require_same_nvars(n_, o.n_, "ScalarOp::-");
    for (const auto& [s, c] : o.c_) add_term(s, -c);
    return *this;
}

ScalarOp ScalarOp::operator-() const {
    ScalarOp r(n_);
    for (const auto& [s, c] : c_) r.c_.emplace(s, -c);
    return r;
}

ScalarOp operator*(const Poly& a, const ScalarOp& op) {
    require_same_nvars(a.nvars(), op.n_, "ScalarOp::*");
    ScalarOp r(op.n_);
    if (a.is_zero()) return r;
    for (const auto& [s, c] : op.c_) r.add_term(s, a * c);
    return r;
}

ScalarOp operator*(const Rational& c, const ScalarOp& op) {
    ScalarOp r(op.n_);
    if (c == 0) return r;
    for (const auto& [s, p] : op.c_) r.c_.emplace(s, p * c);
    return r;
}

ScalarOp compose(const ScalarOp& a, const ScalarOp& b) {
    require_same_nvars(a.nvars(), b.nvars(), "compose");
    const std::size_t n = a.nvars();
    ScalarOp r(n);
    for (const auto& [sigma, as] : a.coeffs()) {
        std::vector<MultiIndex> rhos;
        MultiIndex cur(n);
        sub_indices(sigma, 0, cur, rhos);
        for (const auto& rho : rhos) {
            Rational bin = multi_binomial(sigma, rho);
            MultiIndex rest = sigma - rho;
            for (const auto& [tau, bt] : b.coeffs()) {
                Poly d = partial(bt, rho);
                if (d.is_zero()) continue;
                r.add_term(rest + tau, as * d * bin);
            }
        }
    }
    return r;
}

ScalarOp commutator(const ScalarOp& a, const ScalarOp& b) { return compose(a, b) - compose(b, a); }

ScalarOp delta(const Poly& a, const ScalarOp& op) {
    return commutator(ScalarOp::multiplication(a), op);
}

// ------------------------------------------------------------------ MatrixOp

MatrixOp MatrixOp::diagonal(const ScalarOp& op, std::size_t m) {
    MatrixOp r(op.nvars(), m, m);
    for (std::size_t i = 0; i < m; ++i) r(i, i) = op;
    return r;
}

MatrixOp MatrixOp::from_matrix(const PolyMat& g) {
    MatrixOp r(g.nvars(), g.rows(), g.cols());
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) r(i, j) = ScalarOp::multiplication(g(i, j));
    return r;
}

bool MatrixOp::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const ScalarOp& s) { return s.is_zero(); });
}

int MatrixOp::order() const {
    int o = -1;
    for (const auto& s : a_) o = std::max(o, s.order());
    return o;
}

MatrixOp MatrixOp::homogeneous_part(unsigned d) const {
    MatrixOp r = *this;
    for (auto& s : r.a_) s = s.homogeneous_part(d);
    return r;
}

MatrixOp MatrixOp::truncated(unsigned d) const {
    MatrixOp r = *this;
    for (auto& s : r.a_) s = s.truncated(d);
    return r;
}

PolyMat MatrixOp::zeroth_order_part() const {
    PolyMat g(n_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) g(i, j) = (*this)(i, j).coeff(MultiIndex(n_));
    return g;
}

PolyVec MatrixOp::apply(const PolyVec& v) const {
    require_same_nvars(v.nvars(), n_, "MatrixOp::apply");
    if (v.rank() != cols_) throw DimensionError("MatrixOp::apply: rank mismatch");
    PolyVec r(n_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const auto& op = (*this)(i, j);
            if (!op.is_zero()) r[i] += op.apply(v[j]);
        }
    return r;
}

MatrixOp& MatrixOp::operator+=(const MatrixOp& o) {
    require_shape(*this, o, "MatrixOp::+");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

MatrixOp& MatrixOp::operator-=(const MatrixOp& o) {
    require_shape(*this, o, "MatrixOp::-");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

MatrixOp MatrixOp::operator-() const {
    MatrixOp r = *this;
    for (auto& s : r.a_) s = -s;
    return r;
}

MatrixOp operator*(const Poly& a, const MatrixOp& op) {
    MatrixOp r = op;
    for (auto& s : r.a_) s = a * s;
    return r;
}

MatrixOp operator*(const Rational& c, const MatrixOp& op) {
    MatrixOp r = op;
    for (auto& s : r.a_) s = c * s;
    return r;
}

MatrixOp compose(const MatrixOp& a, const MatrixOp& b) {
    require_same_nvars(a.nvars(), b.nvars(), "compose");
    if (a.cols() != b.rows()) throw DimensionError("compose: inner matrix dimensions differ");
    MatrixOp r(a.nvars(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (!b(k, j).is_zero()) r(i, j) += compose(a(i, k), b(k, j));
        }
    return r;
}

MatrixOp commutator(const MatrixOp& a, const MatrixOp& b) { return compose(a, b) - compose(b, a); }

MatrixOp delta(const Poly& a, const MatrixOp& op) {
    MatrixOp r = op;
    for (std::size_t i = 0; i < op.rows(); ++i)
        for (std::size_t j = 0; j < op.cols(); ++j) r(i, j) = delta(a, op(i, j));
    return r;
}

// ------------------------------------------------------------- order checks

bool order_at_most_by_coeffs(const ScalarOp& op, int k) { return op.order() <= k; }
bool order_at_most_by_coeffs(const MatrixOp& op, int k) { return op.order() <= k; }

bool kills_monomials(const ScalarOp& op, unsigned d) {
    for (const auto& e : monomials_up_to(op.nvars(), d))
        if (!op.apply(Poly::monomial(e)).is_zero()) return false;
    return true;
}

bool kills_monomials(const MatrixOp& op, unsigned d) {
    for (const auto& e : monomials_up_to(op.nvars(), d))
        for (std::size_t b = 0; b < op.cols(); ++b)
            if (!op.apply(PolyVec::basis(op.nvars(), op.cols(), b, Poly::monomial(e))).is_zero())
                return false;
    return true;
}

bool order_at_most_by_deltas(const ScalarOp& op, int k) {
    const std::size_t n = op.nvars();
    const unsigned probe = static_cast<unsigned>(std::max({k + 1, op.order(), 0}));
    if (k < 0) return kills_monomials(op, probe);
    auto apply = [&](const Poly& f) { return op.apply(f); };
    auto probes = monomials_up_to(n, probe);
    for (const auto& nest : coordinate_nests(n, static_cast<unsigned>(k + 1)))
        for (const auto& e : probes)
            if (!nest_apply(nest, 0, Poly::monomial(e), apply).is_zero()) return false;
    return true;
}

bool order_at_most_by_deltas(const MatrixOp& op, int k) {
    const std::size_t n = op.nvars();
    const unsigned probe = static_cast<unsigned>(std::max({k + 1, op.order(), 0}));
    if (k < 0) return kills_monomials(op, probe);
    auto apply = [&](const PolyVec& f) { return op.apply(f); };
    auto probes = monomials_up_to(n, probe);
    for (const auto& nest : coordinate_nests(n, static_cast<unsigned>(k + 1)))
        for (const auto& e : probes)
            for (std::size_t b = 0; b < op.cols(); ++b) {
                PolyVec f = PolyVec::basis(n, op.cols(), b, Poly::monomial(e));
                if (!nest_apply(nest, 0, f, apply).is_zero()) return false;
            }
    return true;
}

bool verify_order(const ScalarOp& op, int k) {
    bool a = order_at_most_by_coeffs(op, k);
    bool b = order_at_most_by_deltas(op, k);
    if (a != b) throw InternalError("verify_order: coefficient and delta routes disagree");
    return a;
}

bool verify_order(const MatrixOp& op, int k) {
    bool a = order_at_most_by_coeffs(op, k);
    bool b = order_at_most_by_deltas(op, k);
    if (a != b) throw InternalError("verify_order: coefficient and delta routes disagree");
    return a;
}

}  // namespace diolic
