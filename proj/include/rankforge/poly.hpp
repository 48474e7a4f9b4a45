#pragma once

/// Univariate polynomials over a Field, coefficients low-to-high, always trimmed.

#include <vector>

#include "rankforge/matrix.hpp"

namespace rankforge {

struct Poly {
    std::vector<Elem> c;

    bool is_zero() const noexcept { return c.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c.size()) - 1; }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
};

inline Poly poly_add(const Field& f, const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        Elem x = i < a.c.size() ? a.c[i] : 0;
        Elem y = i < b.c.size() ? b.c[i] : 0;
        r.c[i] = f.add(x, y);
    }
    r.trim();
    return r;
}

inline Poly poly_neg(const Field& f, Poly a) {
    for (auto& x : a.c) x = f.neg(x);
    return a;
}

inline Poly poly_mul(const Field& f, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = f.add(r.c[i + j], f.mul(a.c[i], b.c[j]));
    }
    r.trim();
    return r;
}

inline Elem poly_eval(const Field& f, const Poly& a, Elem x) {
    Elem r = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) r = f.add(f.mul(r, x), a.c[i]);
    return r;
}

/// Divides out the largest power of x.
inline Poly strip_x_power(Poly a) {
    std::size_t k = 0;
    while (k < a.c.size() && a.c[k] == 0) ++k;
    a.c.erase(a.c.begin(), a.c.begin() + static_cast<std::ptrdiff_t>(k));
    return a;
}

/// Determinant of a square matrix of polynomials (row-major, size n x n) by cofactor expansion.
inline Poly poly_det(const Field& f, const std::vector<Poly>& m, std::size_t n) {
    detail::require(m.size() == n * n, "poly_det: not square");
    if (n == 0) return Poly{{1}};
    if (n == 1) return m[0];
    Poly det;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[c].is_zero()) continue;
        std::vector<Poly> minor;
        minor.reserve((n - 1) * (n - 1));
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) minor.push_back(m[i * n + j]);
        Poly term = poly_mul(f, m[c], poly_det(f, minor, n - 1));
        det = poly_add(f, det, c % 2 == 0 ? term : poly_neg(f, term));
    }
    return det;
}

} // namespace rankforge
