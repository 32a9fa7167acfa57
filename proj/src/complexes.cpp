#include "diolic/complexes.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "diolic/error.hpp"
#include "diolic/linalg.hpp"
#include "diolic/text.hpp"

namespace diolic {

namespace {

// Sorts in place and returns the sign of the permutation, or 0 on a repeat.
int sort_with_sign(std::vector<std::size_t>& t) {
    int sign = 1;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = 0; j + 1 < t.size() - i; ++j) {
            if (t[j] == t[j + 1]) return 0;
            if (t[j] > t[j + 1]) {
                std::swap(t[j], t[j + 1]);
                sign = -sign;
            }
        }
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (t[i] == t[i + 1]) return 0;
    return sign;
}

int parity_sign(std::size_t e) { return e % 2 == 0 ? 1 : -1; }

std::vector<std::size_t> without(const std::vector<std::size_t>& t, std::size_t i, std::size_t j) {
    std::vector<std::size_t> r;
    for (std::size_t q = 0; q < t.size(); ++q)
        if (q != i && q != j) r.push_back(t[q]);
    return r;
}

std::size_t binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    if (!r.fits_ulong_p()) return std::numeric_limits<std::size_t>::max();
    return r.get_ui();
}

std::map<std::vector<std::size_t>, std::size_t> index_tuples(
    const std::vector<std::vector<std::size_t>>& tuples) {
    std::map<std::vector<std::size_t>, std::size_t> idx;
    for (std::size_t i = 0; i < tuples.size(); ++i) idx.emplace(tuples[i], i);
    return idx;
}

CohomologyResult from_ranks(std::vector<std::size_t> dims, std::vector<std::size_t> ranks) {
    CohomologyResult res;
    res.dims = std::move(dims);
    res.ranks = std::move(ranks);
    for (std::size_t k = 0; k < res.dims.size(); ++k) {
        std::size_t out = k < res.ranks.size() ? res.ranks[k] : 0;
        std::size_t in = k > 0 ? res.ranks[k - 1] : 0;
        if (out + in > res.dims[k]) throw InternalError("cohomology: rank exceeds dimension");
        res.betti.push_back(res.dims[k] - out - in);
    }
    return res;
}

}  // namespace

// ---------------------------------------------------------------- DerBasis

DerBasis::DerBasis(std::size_t n, std::size_t m) : n_(n), m_(m), table_(size() * size()) {
    // [E^{ab}, E^{cd}] = delta_{bc} E^{ad} - delta_{da} E^{cb}; all others vanish.
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t c = 0; c < m; ++c)
                for (std::size_t d = 0; d < m; ++d) {
                    std::map<std::size_t, Rational> acc;
                    if (b == c) acc[unit_index(a, d)] += 1;
                    if (d == a) acc[unit_index(c, b)] -= 1;
                    auto& entry = table_[unit_index(a, b) * size() + unit_index(c, d)];
                    for (const auto& [i, v] : acc)
                        if (v != 0) entry.emplace_back(i, v);
                }
}

Der0 DerBasis::element(std::size_t i) const {
    VectorField x(n_);
    PolyMat g(n_, m_, m_);
    if (i < n_) x[i] = Poly(n_, 1);
    else g = PolyMat::unit(n_, m_, (i - n_) / m_, (i - n_) % m_);
    return Der0(x, g);
}

PolyVec DerBasis::apply(std::size_t i, const PolyVec& p) const {
    PolyVec r(n_, m_);
    if (i < n_) {
        for (std::size_t a = 0; a < m_; ++a) r[a] = partial(p[a], i);
    } else {
        std::size_t a = (i - n_) / m_, b = (i - n_) % m_;
        r[a] = p[b];
    }
    return r;
}

const std::vector<std::pair<std::size_t, Rational>>& DerBasis::bracket(std::size_t i,
                                                                       std::size_t j) const {
    return table_[i * size() + j];
}

// ----------------------------------------------------------------- FatForm

FatForm::FatForm(std::size_t n, std::size_t m, std::size_t k)
    : n_(n), m_(m), k_(k), tuples_(exterior_basis(n + m * m, k)),
      values_(tuples_.size(), PolyVec(n, m)) {}

FatForm FatForm::zero_form(const PolyVec& p) {
    FatForm w(p.nvars(), p.rank(), 0);
    w.values_[0] = p;
    return w;
}

std::size_t FatForm::index_of(const std::vector<std::size_t>& tuple) const {
    auto it = std::lower_bound(tuples_.begin(), tuples_.end(), tuple);
    if (it == tuples_.end() || *it != tuple) throw DimensionError("FatForm: not an increasing basis tuple");
    return static_cast<std::size_t>(it - tuples_.begin());
}

const PolyVec& FatForm::at(const std::vector<std::size_t>& tuple) const {
    return values_[index_of(tuple)];
}

void FatForm::set(const std::vector<std::size_t>& tuple, PolyVec v) {
    require_same_nvars(v.nvars(), n_, "FatForm::set");
    if (v.rank() != m_) throw DimensionError("FatForm::set: rank mismatch");
    values_[index_of(tuple)] = std::move(v);
}

PolyVec FatForm::eval(std::vector<std::size_t> tuple) const {
    int s = sort_with_sign(tuple);
    if (s == 0) return PolyVec(n_, m_);
    const PolyVec& v = at(tuple);
    return s > 0 ? v : -v;
}

bool FatForm::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](const PolyVec& v) { return v.is_zero(); });
}

FatForm der_differential(const FatForm& w) {
    const std::size_t n = w.nvars(), m = w.rank(), k = w.degree();
    const DerBasis basis(n, m);
    if (k + 1 > basis.size()) throw DomainError("der_differential: form degree overflow");
    FatForm out(n, m, k + 1);
    for (const auto& t : out.tuples()) {
        PolyVec v(n, m);
        for (std::size_t i = 0; i <= k; ++i) {
            PolyVec inner = w.eval(without(t, i, i));
            if (inner.is_zero()) continue;
            PolyVec term = basis.apply(t[i], inner);
            if (i % 2) v -= term;
            else v += term;
        }
        for (std::size_t i = 0; i <= k; ++i)
            for (std::size_t j = i + 1; j <= k; ++j) {
                std::vector<std::size_t> rest = without(t, i, j);
                for (const auto& [c, coef] : basis.bracket(t[i], t[j])) {
                    std::vector<std::size_t> args{c};
                    args.insert(args.end(), rest.begin(), rest.end());
                    PolyVec val = w.eval(args);
                    if (val.is_zero()) continue;
                    v += Poly(n, coef * parity_sign(i + j)) * val;
                }
            }
        out.set(t, std::move(v));
    }
    return out;
}

long CohomologyResult::euler_dims() const {
    long s = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) s += (k % 2 ? -1 : 1) * static_cast<long>(dims[k]);
    return s;
}

long CohomologyResult::euler_betti() const {
    long s = 0;
    for (std::size_t k = 0; k < betti.size(); ++k) s += (k % 2 ? -1 : 1) * static_cast<long>(betti[k]);
    return s;
}

namespace {

// Column-wise assembly of d^k on the truncated cochain space, touching only
// the tuples a basis cochain can reach.
class TruncatedDer {
public:
    TruncatedDer(std::size_t n, std::size_t m, unsigned D)
        : n_(n), m_(m), basis_(n, m), monos_(monomials_up_to(n, D)) {
        for (std::size_t i = 0; i < monos_.size(); ++i) mono_index_.emplace(monos_[i], i);
        // For each target c, the ordered pairs (u < v) whose bracket hits c.
        const std::size_t N = basis_.size();
        hits_.resize(N);
        for (std::size_t u = 0; u < N; ++u)
            for (std::size_t v = u + 1; v < N; ++v)
                for (const auto& [c, coef] : basis_.bracket(u, v)) hits_[c].push_back({u, v, coef});
    }

    std::size_t dim(std::size_t k) const { return binom(basis_.size(), k) * m_ * monos_.size(); }

    SparseMatrix matrix(std::size_t k) const {
        const std::size_t N = basis_.size();
        auto src = exterior_basis(N, k);
        auto dst = exterior_basis(N, k + 1);
        auto dst_index = index_tuples(dst);
        const std::size_t M = monos_.size();
        SparseMatrix mat(dst.size() * m_ * M, src.size() * m_ * M);
        for (std::size_t s = 0; s < src.size(); ++s) {
            const auto& S = src[s];
            for (std::size_t alpha = 0; alpha < m_; ++alpha)
                for (std::size_t mu = 0; mu < M; ++mu) {
                    const std::size_t col = (s * m_ + alpha) * M + mu;
                    PolyVec val = PolyVec::basis(n_, m_, alpha, Poly::monomial(monos_[mu]));
                    auto put = [&](const std::vector<std::size_t>& T, const PolyVec& v, const Rational& f) {
                        std::size_t t = dst_index.at(T);
                        for (std::size_t g = 0; g < m_; ++g)
                            for (const auto& [e, c] : v[g].terms())
                                mat.add((t * m_ + g) * M + mono_index_.at(e), col, f * c);
                    };
                    // First sum: T = S + {b}, b at position i of T.
                    for (std::size_t b = 0; b < N; ++b) {
                        if (std::find(S.begin(), S.end(), b) != S.end()) continue;
                        std::vector<std::size_t> T = S;
                        T.insert(std::upper_bound(T.begin(), T.end(), b), b);
                        std::size_t i = static_cast<std::size_t>(std::find(T.begin(), T.end(), b) - T.begin());
                        PolyVec v = basis_.apply(b, val);
                        if (!v.is_zero()) put(T, v, parity_sign(i));
                    }
                    // Second sum: w(c, rest) with {c} + rest = S, c at position q of S.
                    for (std::size_t q = 0; q < S.size(); ++q) {
                        std::vector<std::size_t> rest = without(S, q, q);
                        for (const auto& h : hits_[S[q]]) {
                            if (std::find(rest.begin(), rest.end(), h.u) != rest.end() ||
                                std::find(rest.begin(), rest.end(), h.v) != rest.end())
                                continue;
                            std::vector<std::size_t> T = rest;
                            T.insert(std::upper_bound(T.begin(), T.end(), h.u), h.u);
                            T.insert(std::upper_bound(T.begin(), T.end(), h.v), h.v);
                            std::size_t i = static_cast<std::size_t>(std::find(T.begin(), T.end(), h.u) - T.begin());
                            std::size_t j = static_cast<std::size_t>(std::find(T.begin(), T.end(), h.v) - T.begin());
                            put(T, val, h.coef * parity_sign(i + j + q));
                        }
                    }
                }
        }
        return mat;
    }

    std::size_t basis_size() const { return basis_.size(); }

private:
    struct Hit {
        std::size_t u, v;
        Rational coef;
    };
    std::size_t n_, m_;
    DerBasis basis_;
    std::vector<MultiIndex> monos_;
    std::map<MultiIndex, std::size_t> mono_index_;
    std::vector<std::vector<Hit>> hits_;
};

}  // namespace

std::vector<std::vector<Rational>> der_differential_matrix(std::size_t n, std::size_t m, unsigned D,
                                                           std::size_t k) {
    TruncatedDer td(n, m, D);
    if (k + 1 > td.basis_size()) throw DomainError("der_differential_matrix: degree overflow");
    SparseMatrix s = td.matrix(k);
    std::vector<std::vector<Rational>> dense(s.rows(), std::vector<Rational>(s.cols(), 0));
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (const auto& [j, v] : s.row(i)) dense[i][j] = v;
    return dense;
}

CohomologyResult der_cohomology_truncated(std::size_t n, std::size_t m, unsigned D,
                                          std::size_t max_dim) {
    if (n < 1 || m < 1) throw DomainError("der_cohomology_truncated: need n >= 1 and m >= 1");
    TruncatedDer td(n, m, D);
    const std::size_t N = td.basis_size();
    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k <= N; ++k) {
        std::size_t d = td.dim(k);
        if (d > max_dim) {
            std::ostringstream os;
            os << "cochain space of degree " << k << " has dimension " << d << " (cap " << max_dim << ")";
            throw ResourceError(os.str(), "cochain_dim", d, max_dim);
        }
        dims.push_back(d);
    }
    std::vector<std::size_t> ranks;
    for (std::size_t k = 0; k < N; ++k) ranks.push_back(rank(td.matrix(k)));
    return from_ranks(std::move(dims), std::move(ranks));
}

// ------------------------------------------------------------------ CEData

CEData::CEData(std::size_t r_, std::vector<std::vector<std::vector<Rational>>> c_, std::size_t d1_,
               std::vector<std::vector<std::vector<Rational>>> rho_)
    : r(r_), d1(d1_), c(std::move(c_)), rho(std::move(rho_)) {
    if (c.size() != r) throw DimensionError("CEData: structure constants must be r x r x r");
    for (const auto& s : c) {
        if (s.size() != r) throw DimensionError("CEData: structure constants must be r x r x r");
        for (const auto& t : s)
            if (t.size() != r) throw DimensionError("CEData: structure constants must be r x r x r");
    }
    if (rho.size() != r) throw DimensionError("CEData: need one representation matrix per basis element");
    for (const auto& mat : rho) {
        if (mat.size() != d1) throw DimensionError("CEData: representation matrices must be d1 x d1");
        for (const auto& row : mat)
            if (row.size() != d1) throw DimensionError("CEData: representation matrices must be d1 x d1");
    }
}

CheckReport diolic_lie_check(const CEData& l) {
    CheckReport rep;
    const std::size_t r = l.r, d1 = l.d1;
    auto name = [](const char* f, std::initializer_list<std::size_t> a, std::initializer_list<std::size_t> b) {
        std::ostringstream os;
        os << f << "[";
        bool first = true;
        for (auto i : a) { os << (first ? "" : ",") << i + 1; first = false; }
        os << "][";
        first = true;
        for (auto i : b) { os << (first ? "" : ",") << i + 1; first = false; }
        os << "]";
        return os.str();
    };
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a; b < r; ++b)
            for (std::size_t d = 0; d < r; ++d) {
                Rational s = l.c[a][b][d] + l.c[b][a][d];
                if (s != 0) rep.fail(name("skew", {a, b}, {d}), to_string(s));
            }
    // [[a,b],e] + [[b,e],a] + [[e,a],b]
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a + 1; b < r; ++b)
            for (std::size_t e = b + 1; e < r; ++e)
                for (std::size_t d = 0; d < r; ++d) {
                    Rational s = 0;
                    for (std::size_t f = 0; f < r; ++f)
                        s += l.c[a][b][f] * l.c[f][e][d] + l.c[b][e][f] * l.c[f][a][d] +
                             l.c[e][a][f] * l.c[f][b][d];
                    if (s != 0) rep.fail(name("jacobi", {a, b, e}, {d}), to_string(s));
                }
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a + 1; b < r; ++b)
            for (std::size_t i = 0; i < d1; ++i)
                for (std::size_t j = 0; j < d1; ++j) {
                    Rational s = 0;
                    for (std::size_t d = 0; d < r; ++d) s += l.c[a][b][d] * l.rho[d][i][j];
                    for (std::size_t q = 0; q < d1; ++q)
                        s -= l.rho[a][i][q] * l.rho[b][q][j] - l.rho[b][i][q] * l.rho[a][q][j];
                    if (s != 0) rep.fail(name("representation", {a, b}, {i, j}), to_string(s));
                }
    return rep;
}

std::vector<Rational> ce_differential(const CEData& l, std::size_t p, const std::vector<Rational>& t) {
    const std::size_t r = l.r, d1 = l.d1;
    if (p + 1 > r) throw DomainError("ce_differential: cochain degree overflow");
    auto src = exterior_basis(r, p);
    auto dst = exterior_basis(r, p + 1);
    if (t.size() != src.size() * d1) throw DimensionError("ce_differential: wrong cochain length");
    auto src_index = index_tuples(src);
    auto value = [&](std::vector<std::size_t> args, std::size_t comp) -> Rational {
        int s = sort_with_sign(args);
        if (s == 0) return 0;
        return s * t[src_index.at(args) * d1 + comp];
    };
    std::vector<Rational> out(dst.size() * d1, 0);
    for (std::size_t q = 0; q < dst.size(); ++q) {
        const auto& T = dst[q];
        for (std::size_t comp = 0; comp < d1; ++comp) {
            Rational v = 0;
            for (std::size_t i = 0; i <= p; ++i) {
                std::vector<std::size_t> rest = without(T, i, i);
                Rational s = 0;
                for (std::size_t b = 0; b < d1; ++b) {
                    if (l.rho[T[i]][comp][b] == 0) continue;
                    s += l.rho[T[i]][comp][b] * value(rest, b);
                }
                v += parity_sign(i) * s;
            }
            for (std::size_t i = 0; i <= p; ++i)
                for (std::size_t j = i + 1; j <= p; ++j) {
                    std::vector<std::size_t> rest = without(T, i, j);
                    for (std::size_t d = 0; d < r; ++d) {
                        if (l.c[T[i]][T[j]][d] == 0) continue;
                        std::vector<std::size_t> args{d};
                        args.insert(args.end(), rest.begin(), rest.end());
                        v += parity_sign(i + j) * l.c[T[i]][T[j]][d] * value(args, comp);
                    }
                }
            out[q * d1 + comp] = v;
        }
    }
    return out;
}

std::vector<std::vector<Rational>> ce_differential_matrix(const CEData& l, std::size_t p) {
    const std::size_t cols = binom(l.r, p) * l.d1;
    const std::size_t rows = binom(l.r, p + 1) * l.d1;
    std::vector<std::vector<Rational>> mat(rows, std::vector<Rational>(cols, 0));
    for (std::size_t j = 0; j < cols; ++j) {
        std::vector<Rational> e(cols, 0);
        e[j] = 1;
        auto col = ce_differential(l, p, e);
        for (std::size_t i = 0; i < rows; ++i) mat[i][j] = col[i];
    }
    return mat;
}

CohomologyResult ce_cohomology(const CEData& l) {
    std::vector<std::size_t> dims, ranks;
    for (std::size_t p = 0; p <= l.r; ++p) dims.push_back(binom(l.r, p) * l.d1);
    for (std::size_t p = 0; p < l.r; ++p) {
        auto mat = ce_differential_matrix(l, p);
        ranks.push_back(mat.empty() || mat.front().empty() ? 0 : rank(mat));
    }
    return from_ranks(std::move(dims), std::move(ranks));
}

}  // namespace diolic
