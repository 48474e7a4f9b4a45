#pragma once

/// Bilinear maps F^n x F^m -> F^t given by f(v, w) = E (v (x) w), E of shape t x nm.
/// Row i of E reshaped to n x m is the slice E_i, with f(v, w)_i = v^T E_i w.

#include <vector>

#include "rankforge/matrix.hpp"
#include "rankforge/rational.hpp"

namespace rankforge {

struct BilinearClaim {
    std::size_t r = 1;
    std::size_t s = 1;
    Rational eps{0};
    bool le_r = false; // also all ranks below r on the first source
    bool le_s = false; // also all ranks below s on the second source

    friend bool operator==(const BilinearClaim&, const BilinearClaim&) = default;
};

struct BilinearCondenser {
    FieldPtr field;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t t = 0;
    FMatrix E; // t x nm
    BilinearClaim claim;

    void validate() const {
        detail::require(field != nullptr, "bilinear: missing field");
        detail::require(E.rows() == t && E.cols() == n * m, "bilinear: E must be t x nm");
        detail::require(t == 0 || E.field()->same_as(*field), "bilinear: E over a different field");
        detail::require(claim.r <= n && claim.s <= m, "bilinear: claimed ranks exceed source dimensions");
        detail::require(claim.eps >= 0 && claim.eps < 1, "bilinear: eps must lie in [0, 1)");
    }

    FMatrix slice(std::size_t i) const { return reshape(E.rows_range(i, i + 1), n, m); }
};

inline std::vector<Elem> bilinear_eval(const BilinearCondenser& b, const std::vector<Elem>& v,
                                       const std::vector<Elem>& w) {
    detail::require(v.size() == b.n && w.size() == b.m, "bilinear_eval: shape mismatch");
    const Field& f = *b.field;
    std::vector<Elem> out(b.t, 0);
    for (std::size_t i = 0; i < b.t; ++i) {
        Elem acc = 0;
        for (std::size_t a = 0; a < b.n; ++a) {
            if (v[a] == 0) continue;
            Elem inner = 0;
            for (std::size_t c = 0; c < b.m; ++c) inner = f.add(inner, f.mul(b.E(i, a * b.m + c), w[c]));
            acc = f.add(acc, f.mul(v[a], inner));
        }
        out[i] = acc;
    }
    return out;
}

} // namespace rankforge
