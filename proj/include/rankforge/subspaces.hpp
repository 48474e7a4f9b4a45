#pragma once

/// Canonical enumeration of the r-dimensional subspaces of F^n by their RREF bases.
///
/// Order: pivot sets in lexicographic order; within a pivot set, the free entries (read
/// row by row, left to right) form a base-q counter whose last position varies fastest.
/// Every subspace has a unique index in [0, count_subspaces(q, n, r)).

#include <cstdint>
#include <limits>
#include <vector>

#include "rankforge/matrix.hpp"

namespace rankforge {

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        throw InvalidArgument(std::string(what) + ": count exceeds 64-bit range");
    return a * b;
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, const char* what) {
    if (b > std::numeric_limits<std::uint64_t>::max() - a)
        throw InvalidArgument(std::string(what) + ": count exceeds 64-bit range");
    return a + b;
}

inline std::uint64_t checked_pow(std::uint64_t b, std::uint64_t e, const char* what) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = checked_mul(r, b, what);
    return r;
}

} // namespace detail

/// Gaussian binomial [n choose r]_q.
inline std::uint64_t count_subspaces(std::uint64_t q, std::size_t n, std::size_t r) {
    detail::require(r <= n, "count_subspaces: r > n");
    // [n, k] = [n-1, k-1] + q^k [n-1, k]
    std::vector<std::uint64_t> row(r + 1, 0);
    row[0] = 1;
    for (std::size_t m = 1; m <= n; ++m) {
        for (std::size_t k = std::min(m, r); k >= 1; --k) {
            std::uint64_t qk = detail::checked_pow(q, k, "count_subspaces");
            row[k] = detail::checked_add(row[k - 1], detail::checked_mul(qk, row[k], "count_subspaces"),
                                         "count_subspaces");
        }
    }
    return row[r];
}

inline std::uint64_t count_subspaces(const Field& f, std::size_t n, std::size_t r) {
    return count_subspaces(f.order(), n, r);
}

class SubspaceIter {
public:
    SubspaceIter(FieldPtr f, std::size_t n, std::size_t r)
        : SubspaceIter(f, n, r, 0, count_subspaces(*f, n, r)) {}

    /// Iterates the index range [begin, end).
    SubspaceIter(FieldPtr f, std::size_t n, std::size_t r, std::uint64_t begin, std::uint64_t end)
        : field_(std::move(f)), n_(n), r_(r), q_(field_->order()), total_(count_subspaces(*field_, n, r)),
          begin_(begin), end_(end) {
        detail::require(begin <= end && end <= total_, "SubspaceIter: index range out of bounds");
        basis_.assign(r_ * n_, 0);
        pivots_.resize(r_);
    }

    static std::uint64_t total(const Field& f, std::size_t n, std::size_t r) { return count_subspaces(f, n, r); }

    /// Advances to the next subspace; false once the range is exhausted.
    bool next() {
        if (!started_) {
            started_ = true;
            index_ = begin_;
            if (index_ >= end_) return false;
            unrank(index_);
            return true;
        }
        if (++index_ >= end_) return false;
        for (std::size_t p = free_.size(); p-- > 0;) {
            if (++digits_[p] < q_) {
                basis_[free_[p]] = digits_[p];
                return true;
            }
            digits_[p] = 0;
            basis_[free_[p]] = 0;
        }
        next_pivots();
        layout();
        return true;
    }

    std::uint64_t index() const noexcept { return index_; }
    std::size_t dim() const noexcept { return r_; }
    std::size_t ambient() const noexcept { return n_; }

    /// r x n RREF basis, row-major.
    const Elem* basis() const noexcept { return basis_.data(); }
    FMatrix matrix() const { return FMatrix(field_, r_, n_, basis_); }

    /// Basis of the subspace with the given canonical index.
    static FMatrix at(FieldPtr f, std::size_t n, std::size_t r, std::uint64_t idx) {
        SubspaceIter it(f, n, r, idx, idx + 1);
        it.next();
        return it.matrix();
    }

private:
    std::uint64_t free_count() const {
        std::uint64_t c = 0;
        for (std::size_t i = 0; i < r_; ++i) c += (n_ - 1 - pivots_[i]) - (r_ - 1 - i);
        return c;
    }

    void first_pivots() {
        for (std::size_t i = 0; i < r_; ++i) pivots_[i] = i;
    }

    bool next_pivots() {
        for (std::size_t i = r_; i-- > 0;) {
            if (pivots_[i] < n_ - r_ + i) {
                ++pivots_[i];
                for (std::size_t j = i + 1; j < r_; ++j) pivots_[j] = pivots_[j - 1] + 1;
                return true;
            }
        }
        return false;
    }

    void layout() {
        std::fill(basis_.begin(), basis_.end(), 0);
        free_.clear();
        std::vector<bool> is_pivot(n_, false);
        for (auto p : pivots_) is_pivot[p] = true;
        for (std::size_t i = 0; i < r_; ++i) {
            basis_[i * n_ + pivots_[i]] = 1;
            for (std::size_t j = pivots_[i] + 1; j < n_; ++j)
                if (!is_pivot[j]) free_.push_back(i * n_ + j);
        }
        digits_.assign(free_.size(), 0);
    }

    void unrank(std::uint64_t idx) {
        first_pivots();
        while (true) {
            std::uint64_t block = detail::checked_pow(q_, free_count(), "SubspaceIter");
            if (idx < block) break;
            idx -= block;
            next_pivots();
        }
        layout();
        for (std::size_t p = free_.size(); p-- > 0;) {
            digits_[p] = static_cast<Elem>(idx % q_);
            basis_[free_[p]] = digits_[p];
            idx /= q_;
        }
    }

    FieldPtr field_;
    std::size_t n_, r_;
    std::uint64_t q_, total_, begin_, end_;
    std::uint64_t index_ = 0;
    bool started_ = false;
    std::vector<Elem> basis_;
    std::vector<std::size_t> pivots_;
    std::vector<std::size_t> free_;
    std::vector<Elem> digits_;
};

} // namespace rankforge
