#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "diolic/rational.hpp"

namespace diolic {

/// Row-sparse matrix over Q, used for exact rank computations.
class SparseMatrix {
public:
    using Row = std::map<std::size_t, Rational>;

    SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }
    void add(std::size_t i, std::size_t j, const Rational& v);
    const Row& row(std::size_t i) const { return rows_[i]; }
    std::size_t nonzeros() const;

private:
    std::size_t cols_;
    std::vector<Row> rows_;
};

/// Rank over Q by incremental sparse elimination.
std::size_t rank(const SparseMatrix& m);

std::size_t rank(const std::vector<std::vector<Rational>>& dense);

/// Basis of {v : M v = 0}, one vector per free column.
std::vector<std::vector<Rational>> nullspace(const std::vector<std::vector<Rational>>& dense,
                                             std::size_t cols);

}  // namespace diolic
