#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace diolic {

/// Exponent vector / derivative multi-index over n variables.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t n) : e_(n, 0) {}
    MultiIndex(std::initializer_list<unsigned> e) : e_(e) {}
    explicit MultiIndex(std::vector<unsigned> e) : e_(std::move(e)) {}

    static MultiIndex unit(std::size_t n, std::size_t i) {
        MultiIndex m(n);
        m.e_.at(i) = 1;
        return m;
    }

    std::size_t size() const noexcept { return e_.size(); }
    unsigned operator[](std::size_t i) const { return e_[i]; }
    unsigned& operator[](std::size_t i) { return e_[i]; }
    const std::vector<unsigned>& entries() const noexcept { return e_; }

    unsigned total_degree() const noexcept {
        unsigned s = 0;
        for (unsigned v : e_) s += v;
        return s;
    }
    bool is_zero() const noexcept { return total_degree() == 0; }

    /// Componentwise sum. Sizes must agree.
    MultiIndex operator+(const MultiIndex& o) const;
    /// Componentwise difference; requires o <= *this componentwise.
    MultiIndex operator-(const MultiIndex& o) const;
    /// o <= *this componentwise.
    bool divides(const MultiIndex& o) const;

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

private:
    std::vector<unsigned> e_;
};

/// Canonical term order: higher total degree first, ties broken by
/// lexicographically larger exponent first (x1 > x2 > ...).
struct TermOrder {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        unsigned da = a.total_degree(), db = b.total_degree();
        if (da != db) return da > db;
        return a.entries() > b.entries();
    }
};

/// All multi-indices with |sigma| <= d in graded-lex order (degree ascending,
/// within a degree x1 before x2). Count is C(n+d, d).
std::vector<MultiIndex> monomials_up_to(std::size_t n, unsigned d);

/// Multi-indices with |sigma| == d, x1-first within the degree.
std::vector<MultiIndex> monomials_of_degree(std::size_t n, unsigned d);

}  // namespace diolic
