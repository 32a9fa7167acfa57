#include "diolic/poly.hpp"

#include <sstream>

#include "diolic/error.hpp"

namespace diolic {

// ---- rational --------------------------------------------------------------

Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw ParseError("empty rational", 0);
    Rational q;
    if (q.set_str(s, 10) != 0) throw ParseError("malformed rational '" + s + "'", 0);
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'", 0);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

// ---- multi-index -----------------------------------------------------------

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
    if (o.size() != size()) throw DimensionError("multi-index length mismatch");
    MultiIndex r(*this);
    for (std::size_t i = 0; i < size(); ++i) r.e_[i] += o.e_[i];
    return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
    if (o.size() != size()) throw DimensionError("multi-index length mismatch");
    MultiIndex r(*this);
    for (std::size_t i = 0; i < size(); ++i) {
        if (o.e_[i] > e_[i]) throw DomainError("multi-index subtraction underflow");
        r.e_[i] -= o.e_[i];
    }
    return r;
}

bool MultiIndex::divides(const MultiIndex& o) const {
    if (o.size() != size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
        if (o.e_[i] > e_[i]) return false;
    return true;
}

namespace {
void fill_degree(std::size_t n, unsigned d, std::size_t pos, MultiIndex& cur,
                 std::vector<MultiIndex>& out) {
    if (pos + 1 == n) {
        cur[pos] = d;
        out.push_back(cur);
        return;
    }
    for (unsigned v = d + 1; v-- > 0;) {
        cur[pos] = v;
        fill_degree(n, d - v, pos + 1, cur, out);
    }
    cur[pos] = 0;
}
}  // namespace

std::vector<MultiIndex> monomials_of_degree(std::size_t n, unsigned d) {
    std::vector<MultiIndex> out;
    if (n == 0) {
        if (d == 0) out.emplace_back();
        return out;
    }
    MultiIndex cur(n);
    fill_degree(n, d, 0, cur, out);
    return out;
}

std::vector<MultiIndex> monomials_up_to(std::size_t n, unsigned d) {
    std::vector<MultiIndex> out;
    for (unsigned k = 0; k <= d; ++k) {
        auto part = monomials_of_degree(n, k);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

// ---- Poly ------------------------------------------------------------------

void require_same_nvars(std::size_t a, std::size_t b, const char* where) {
    if (a != b) {
        std::ostringstream os;
        os << where << ": variable count mismatch (" << a << " vs " << b << ")";
        throw DimensionError(os.str());
    }
}

Poly::Poly(std::size_t nvars, const Rational& c) : n_(nvars) {
    if (c != 0) terms_.emplace(MultiIndex(nvars), c);
}

Poly Poly::variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw DomainError("variable index out of range");
    return monomial(MultiIndex::unit(nvars, i));
}

Poly Poly::monomial(const MultiIndex& e, const Rational& c) {
    Poly p(e.size());
    if (c != 0) p.terms_.emplace(e, c);
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
}

int Poly::degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(terms_.begin()->first.total_degree());
}

Rational Poly::coeff(const MultiIndex& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Poly::constant_term() const { return coeff(MultiIndex(n_)); }

void Poly::add_term(const MultiIndex& e, const Rational& c) {
    if (e.size() != n_) throw DimensionError("monomial length does not match variable count");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    require_same_nvars(n_, o.n_, "poly add");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    require_same_nvars(n_, o.n_, "poly sub");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    require_same_nvars(a.n_, b.n_, "poly mul");
    Poly r(a.n_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto& [e, v] : r.terms_) v = -v;
    return r;
}

Poly Poly::substitute(const std::vector<Poly>& values) const {
    if (values.size() != n_) throw DimensionError("substitute: wrong number of values");
    std::size_t target = values.empty() ? 0 : values.front().nvars();
    Poly r(target);
    for (const auto& [e, c] : terms_) {
        Poly t(target, c);
        for (std::size_t i = 0; i < n_; ++i) t *= pow(values[i], e[i]);
        r += t;
    }
    return r;
}

Poly partial(const Poly& p, std::size_t i) {
    if (i >= p.nvars()) throw DomainError("partial: variable index out of range");
    Poly r(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        if (e[i] == 0) continue;
        MultiIndex f = e;
        f[i] -= 1;
        r.add_term(f, c * e[i]);
    }
    return r;
}

Poly partial(const Poly& p, const MultiIndex& sigma) {
    require_same_nvars(p.nvars(), sigma.size(), "partial");
    Poly r(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        if (!e.divides(sigma)) continue;
        Rational f = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned k = 0; k < sigma[i]; ++k) f *= e[i] - k;
        r.add_term(e - sigma, f);
    }
    return r;
}

Poly pow(const Poly& p, unsigned e) {
    Poly r(p.nvars(), 1);
    for (unsigned k = 0; k < e; ++k) r *= p;
    return r;
}

// ---- PolyVec ---------------------------------------------------------------

PolyVec::PolyVec(std::vector<Poly> comps) : c_(std::move(comps)) {
    if (!c_.empty()) n_ = c_.front().nvars();
    for (const auto& p : c_) require_same_nvars(n_, p.nvars(), "PolyVec");
}

PolyVec PolyVec::basis(std::size_t nvars, std::size_t rank, std::size_t alpha,
                       const Poly& coeff) {
    if (alpha >= rank) throw DomainError("basis index out of range");
    PolyVec v(nvars, rank);
    v.c_[alpha] = coeff;
    return v;
}

bool PolyVec::is_zero() const {
    for (const auto& p : c_)
        if (!p.is_zero()) return false;
    return true;
}

PolyVec& PolyVec::operator+=(const PolyVec& o) {
    if (o.rank() != rank()) throw DimensionError("PolyVec rank mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

PolyVec& PolyVec::operator-=(const PolyVec& o) {
    if (o.rank() != rank()) throw DimensionError("PolyVec rank mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

PolyVec& PolyVec::operator*=(const Poly& a) {
    for (auto& p : c_) p *= a;
    return *this;
}

PolyVec PolyVec::operator-() const {
    PolyVec r(*this);
    for (auto& p : r.c_) p = -p;
    return r;
}

// ---- PolyMat ---------------------------------------------------------------

PolyMat PolyMat::identity(std::size_t nvars, std::size_t m) {
    PolyMat r(nvars, m, m);
    for (std::size_t i = 0; i < m; ++i) r(i, i) = Poly(nvars, 1);
    return r;
}

PolyMat PolyMat::unit(std::size_t nvars, std::size_t m, std::size_t i, std::size_t j) {
    PolyMat r(nvars, m, m);
    r(i, j) = Poly(nvars, 1);
    return r;
}

bool PolyMat::is_zero() const {
    for (const auto& p : a_)
        if (!p.is_zero()) return false;
    return true;
}

PolyMat& PolyMat::operator+=(const PolyMat& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionError("PolyMat shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

PolyMat& PolyMat::operator-=(const PolyMat& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionError("PolyMat shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

PolyMat operator*(const PolyMat& a, const PolyMat& b) {
    if (a.cols_ != b.rows_) throw DimensionError("PolyMat product shape mismatch");
    PolyMat r(a.n_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

PolyMat operator*(const Poly& s, PolyMat a) {
    for (auto& p : a.a_) p *= s;
    return a;
}

PolyVec operator*(const PolyMat& a, const PolyVec& v) {
    if (a.cols_ != v.rank()) throw DimensionError("PolyMat * PolyVec shape mismatch");
    PolyVec r(a.n_, a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j)
            if (!a(i, j).is_zero()) r[i] += a(i, j) * v[j];
    return r;
}

PolyMat commutator(const PolyMat& a, const PolyMat& b) { return a * b - b * a; }

}  // namespace diolic
