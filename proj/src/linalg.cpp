#include "diolic/linalg.hpp"

#include "diolic/error.hpp"

namespace diolic {

void SparseMatrix::add(std::size_t i, std::size_t j, const Rational& v) {
    if (i >= rows_.size() || j >= cols_) throw DimensionError("SparseMatrix::add: index out of range");
    if (v == 0) return;
    auto [it, inserted] = rows_[i].try_emplace(j, v);
    if (!inserted) {
        it->second += v;
        if (it->second == 0) rows_[i].erase(it);
    }
}

std::size_t SparseMatrix::nonzeros() const {
    std::size_t s = 0;
    for (const auto& r : rows_) s += r.size();
    return s;
}

namespace {

// row -= f * pivot, dropping cancelled entries.
void axpy(SparseMatrix::Row& row, const Rational& f, const SparseMatrix::Row& pivot) {
    for (const auto& [j, v] : pivot) {
        auto [it, inserted] = row.try_emplace(j, -f * v);
        if (!inserted) {
            it->second -= f * v;
            if (it->second == 0) row.erase(it);
        }
    }
}

}  // namespace

std::size_t rank(const SparseMatrix& m) {
    // Pivot rows keyed by their leading column, normalized to leading entry 1.
    std::map<std::size_t, SparseMatrix::Row> pivots;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        SparseMatrix::Row row = m.row(i);
        while (!row.empty()) {
            auto lead = row.begin();
            auto p = pivots.find(lead->first);
            if (p == pivots.end()) {
                Rational inv = 1 / lead->second;
                for (auto& [j, v] : row) v *= inv;
                std::size_t col = lead->first;
                pivots.emplace(col, std::move(row));
                break;
            }
            Rational f = lead->second;
            axpy(row, f, p->second);
        }
    }
    return pivots.size();
}

std::size_t rank(const std::vector<std::vector<Rational>>& dense) {
    std::size_t cols = dense.empty() ? 0 : dense.front().size();
    SparseMatrix m(dense.size(), cols);
    for (std::size_t i = 0; i < dense.size(); ++i) {
        if (dense[i].size() != cols) throw DimensionError("rank: ragged matrix");
        for (std::size_t j = 0; j < cols; ++j) m.add(i, j, dense[i][j]);
    }
    return rank(m);
}

std::vector<std::vector<Rational>> nullspace(const std::vector<std::vector<Rational>>& dense,
                                             std::size_t cols) {
    // Reduced row echelon form, then one basis vector per free column.
    std::vector<std::vector<Rational>> a = dense;
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        Rational inv = 1 / a[r][c];
        for (auto& v : a[r]) v *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace diolic
