#pragma once

/// Dense matrices over a Field, stored row-major as element codes.

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "rankforge/gf.hpp"

namespace rankforge {

class FMatrix {
public:
    FMatrix() = default;

    FMatrix(FieldPtr f, std::size_t rows, std::size_t cols)
        : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, 0) {
        detail::require(field_ != nullptr, "matrix: null field");
    }

    FMatrix(FieldPtr f, std::size_t rows, std::size_t cols, std::vector<Elem> data)
        : field_(std::move(f)), rows_(rows), cols_(cols), data_(std::move(data)) {
        detail::require(field_ != nullptr, "matrix: null field");
        detail::require(data_.size() == rows * cols, "matrix: entry count does not match shape");
        for (auto e : data_) detail::require(field_->contains(e), "matrix: entry outside the field");
    }

    static FMatrix identity(FieldPtr f, std::size_t n) {
        FMatrix m(std::move(f), n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static FMatrix from_rows(FieldPtr f, const std::vector<std::vector<Elem>>& rows) {
        std::size_t c = rows.empty() ? 0 : rows.front().size();
        std::vector<Elem> d;
        for (const auto& r : rows) {
            detail::require(r.size() == c, "matrix: ragged rows");
            d.insert(d.end(), r.begin(), r.end());
        }
        return FMatrix(std::move(f), rows.size(), c, std::move(d));
    }

    /// Column vector from a list of entries.
    static FMatrix column(FieldPtr f, const std::vector<Elem>& v) { return FMatrix(std::move(f), v.size(), 1, v); }

    const FieldPtr& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    FElem elem(std::size_t i, std::size_t j) const { return {field_, (*this)(i, j)}; }

    const std::vector<Elem>& data() const noexcept { return data_; }
    std::vector<Elem>& data() noexcept { return data_; }

    std::vector<Elem> row(std::size_t i) const {
        return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
    }

    std::vector<Elem> col(std::size_t j) const {
        std::vector<Elem> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == 0; });
    }

    FMatrix transpose() const {
        FMatrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    FMatrix rows_range(std::size_t begin, std::size_t end) const {
        detail::require(begin <= end && end <= rows_, "matrix: row range out of bounds");
        FMatrix s(field_, end - begin, cols_);
        std::copy(data_.begin() + static_cast<std::ptrdiff_t>(begin * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>(end * cols_), s.data_.begin());
        return s;
    }

    friend bool operator==(const FMatrix& a, const FMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ &&
               (a.field_ == b.field_ || (a.field_ && b.field_ && a.field_->same_as(*b.field_)));
    }

    friend FMatrix operator*(const FMatrix& a, const FMatrix& b) {
        check_same_field(a, b);
        detail::require(a.cols_ == b.rows_, "matrix: product shape mismatch");
        const Field& f = *a.field_;
        FMatrix c(a.field_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                Elem x = a(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = f.add(c(i, j), f.mul(x, b(k, j)));
            }
        return c;
    }

    friend FMatrix operator+(const FMatrix& a, const FMatrix& b) {
        check_same_field(a, b);
        detail::require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix: sum shape mismatch");
        FMatrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = a.field_->add(a.data_[i], b.data_[i]);
        return c;
    }

    friend FMatrix operator-(const FMatrix& a, const FMatrix& b) {
        check_same_field(a, b);
        detail::require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix: difference shape mismatch");
        FMatrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = a.field_->sub(a.data_[i], b.data_[i]);
        return c;
    }

    FMatrix scaled(Elem s) const {
        FMatrix c = *this;
        for (auto& e : c.data_) e = field_->mul(e, s);
        return c;
    }

    static void check_same_field(const FMatrix& a, const FMatrix& b) {
        detail::require(a.field_ && b.field_ && a.field_->same_as(*b.field_), "matrix: field mismatch");
    }

private:
    FieldPtr field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
};

namespace detail {

/// Gaussian elimination in place on a rows x cols block with row stride `stride`.
/// With `reduce` the result is the reduced row echelon form; otherwise only forward
/// elimination is done. Pivot columns are written to `pivots` (if non-null). Returns the rank.
inline std::size_t eliminate(const Field& f, Elem* a, std::size_t rows, std::size_t cols, std::size_t stride,
                             bool reduce, std::size_t* pivots = nullptr) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv * stride + c] == 0) ++piv;
        if (piv == rows) continue;
        Elem* pr = a + piv * stride;
        if (piv != rank) std::swap_ranges(pr, pr + cols, a + rank * stride);
        pr = a + rank * stride;
        if (pr[c] != 1) {
            Elem inv = f.inv(pr[c]);
            for (std::size_t j = c; j < cols; ++j) pr[j] = f.mul(pr[j], inv);
        }
        for (std::size_t i = reduce ? 0 : rank + 1; i < rows; ++i) {
            if (i == rank) continue;
            Elem* ri = a + i * stride;
            Elem x = ri[c];
            if (x == 0) continue;
            Elem nx = f.neg(x);
            for (std::size_t j = c; j < cols; ++j)
                if (pr[j] != 0) ri[j] = f.add(ri[j], f.mul(nx, pr[j]));
        }
        if (pivots) pivots[rank] = c;
        ++rank;
    }
    return rank;
}

} // namespace detail

inline std::size_t rank(const FMatrix& m) {
    if (m.empty()) return 0;
    std::vector<Elem> buf = m.data();
    return detail::eliminate(*m.field(), buf.data(), m.rows(), m.cols(), m.cols(), false);
}

struct Echelon {
    FMatrix reduced;                 // full RREF, same shape as the input
    std::vector<std::size_t> pivots; // pivot column of each nonzero row
    std::size_t rank() const noexcept { return pivots.size(); }
};

inline Echelon rref(const FMatrix& m) {
    Echelon e{m, std::vector<std::size_t>(std::min(m.rows(), m.cols()))};
    std::size_t r = 0;
    if (!m.empty())
        r = detail::eliminate(*m.field(), e.reduced.data().data(), m.rows(), m.cols(), m.cols(), true,
                              e.pivots.data());
    e.pivots.resize(r);
    return e;
}

/// Canonical basis of the row span: the nonzero rows of the RREF.
inline FMatrix row_span_basis(const FMatrix& m) {
    auto e = rref(m);
    return e.reduced.rows_range(0, e.rank());
}

inline bool same_row_span(const FMatrix& a, const FMatrix& b) {
    detail::require(a.cols() == b.cols(), "row span comparison: column count mismatch");
    return row_span_basis(a) == row_span_basis(b);
}

/// Basis of the right null space {v : Mv = 0}, one basis vector per column.
inline FMatrix kernel(const FMatrix& m) {
    auto e = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    const Field& f = *m.field();
    FMatrix k(m.field(), n, free_cols.size());
    for (std::size_t c = 0; c < free_cols.size(); ++c) {
        std::size_t fc = free_cols[c];
        k(fc, c) = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) k(e.pivots[i], c) = f.neg(e.reduced(i, fc));
    }
    return k;
}

/// Rows of the result form a basis (in RREF) of the orthogonal complement of the row span of B
/// under the standard bilinear dot product.
inline FMatrix orthogonal_complement(const FMatrix& basis) {
    detail::require(rank(basis) == basis.rows(), "orthogonal_complement: basis rows are linearly dependent");
    return row_span_basis(kernel(basis).transpose());
}

/// Kronecker product; row (i, j) -> i*m + j and column (k, l) -> k*s + l, 0-based.
inline FMatrix tensor(const FMatrix& a, const FMatrix& b) {
    FMatrix::check_same_field(a, b);
    const Field& f = *a.field();
    FMatrix t(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            Elem x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.rows(); ++j)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    t(i * b.rows() + j, k * b.cols() + l) = f.mul(x, b(j, l));
        }
    return t;
}

inline FMatrix vstack(const std::vector<FMatrix>& parts) {
    detail::require(!parts.empty(), "vstack: no blocks");
    std::size_t rows = 0, cols = parts.front().cols();
    for (const auto& p : parts) {
        detail::require(p.cols() == cols, "vstack: column count mismatch");
        FMatrix::check_same_field(p, parts.front());
        rows += p.rows();
    }
    std::vector<Elem> d;
    d.reserve(rows * cols);
    for (const auto& p : parts) d.insert(d.end(), p.data().begin(), p.data().end());
    return FMatrix(parts.front().field(), rows, cols, std::move(d));
}

inline FMatrix hstack(const std::vector<FMatrix>& parts) {
    detail::require(!parts.empty(), "hstack: no blocks");
    std::vector<FMatrix> ts;
    for (const auto& p : parts) ts.push_back(p.transpose());
    return vstack(ts).transpose();
}

/// Row vector v (1 x nm) reshaped to an n x m matrix, entry (a, b) = v[a*m + b].
inline FMatrix reshape(const FMatrix& m, std::size_t rows, std::size_t cols) {
    detail::require(m.rows() * m.cols() == rows * cols, "reshape: size mismatch");
    return FMatrix(m.field(), rows, cols, m.data());
}

} // namespace rankforge
