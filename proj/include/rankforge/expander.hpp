#pragma once

/// Dimension expanders: tensor into F^{nd}, then condense back to F^n.

#include <vector>

#include "rankforge/bilinear.hpp"
#include "rankforge/seeded.hpp"

namespace rankforge {

struct DimExpander {
    FieldPtr field;
    std::size_t n = 0;
    std::vector<FMatrix> maps; // n x n each
    Rational eps{0};
    Rational alpha{1};

    std::size_t degree() const noexcept { return maps.size(); }

    void validate() const {
        detail::require(field != nullptr, "expander: missing field");
        for (const auto& a : maps) {
            detail::require(a.rows() == n && a.cols() == n, "expander: maps must be n x n");
            detail::require(a.field()->same_as(*field), "expander: map over a different field");
        }
        detail::require(eps > 0 && eps <= 1, "expander: eps must lie in (0, 1]");
        detail::require(alpha >= 0, "expander: alpha must be nonnegative");
    }
};

/// T_i (nd x n, i = 0..d-1) sends e_a to e_{i*n + a}.
inline std::vector<FMatrix> tensor_maps(const FieldPtr& f, std::size_t n, std::size_t d) {
    detail::require(d >= 1, "tensor_maps: d must be >= 1");
    std::vector<FMatrix> ts;
    for (std::size_t i = 0; i < d; ++i) {
        FMatrix t(f, n * d, n);
        for (std::size_t a = 0; a < n; ++a) t(i * n + a, a) = 1;
        ts.push_back(std::move(t));
    }
    return ts;
}

/// Maps E T_i over E in the condenser (outer) and i < d (inner). The expander rank r is the
/// largest r <= n with ceil((1 - gamma) r d) within the condenser's claimed rank.
inline DimExpander tensor_then_condense(const SeededCondenser& c, std::size_t d, const Rational& gamma) {
    c.validate();
    detail::require(d >= 1, "tensor_then_condense: d must be >= 1");
    detail::require(gamma >= 0 && gamma < 1, "tensor_then_condense: gamma must lie in [0, 1)");
    detail::require(c.claim.kind == Guarantee::Lossy, "tensor_then_condense: condenser must carry a lossy claim");
    detail::require(c.claim.mode == RankMode::Le, "tensor_then_condense: condenser must be a (<= r) condenser");
    const std::size_t n = c.t;
    detail::require(c.n == n * d, "tensor_then_condense: condenser input must be n*d with n its output size");
    std::size_t r = 0;
    for (std::size_t cand = 1; cand <= n; ++cand)
        if (ceil_of((1 - gamma) * Rational(static_cast<std::int64_t>(cand * d))) <=
            static_cast<std::int64_t>(c.claim.r))
            r = cand;
    detail::require(r >= 1, "tensor_then_condense: condenser rank too small for any expansion");
    auto ts = tensor_maps(c.field, n, d);
    DimExpander x;
    x.field = c.field;
    x.n = n;
    for (const auto& e : c.maps)
        for (const auto& t : ts) x.maps.push_back(e * t);
    x.eps = Rational(static_cast<std::int64_t>(r), static_cast<std::int64_t>(n));
    x.alpha = (1 - gamma) * (1 - c.claim.eps) * static_cast<std::int64_t>(d);
    return x;
}

/// The full recipe: r = floor(eps n), a (<= ceil((1-gamma) r d), delta)-lossy condenser
/// F^{nd} -> F^n, then tensor_then_condense.
inline DimExpander build_expander(const FieldPtr& f, std::size_t n, std::size_t d, const Rational& eps,
                                  const Rational& delta, const Rational& gamma) {
    auto r = floor_of(eps * static_cast<std::int64_t>(n));
    detail::require(r >= 1, "build_expander: eps * n must be at least 1");
    auto cr = ceil_of((1 - gamma) * Rational(r * static_cast<std::int64_t>(d)));
    detail::require(cr <= static_cast<std::int64_t>(n), "build_expander: need (1 - gamma) r d <= n");
    auto c = lossy_collection(f, n * d, n, static_cast<std::size_t>(cr), delta);
    return tensor_then_condense(c, d, gamma);
}

struct ExpanderParams {
    std::size_t d = 0;
    std::size_t k = 1; // extension degree (small-field variant)
    Rational gamma{0};
    Rational delta{0};
    std::size_t condenser_size = 0;
    std::size_t degree = 0;
    Rational eps{0};
    Rational alpha{0};
};

inline ExpanderParams expander_params_gamma0(std::size_t n, std::size_t d, const Rational& eps,
                                             const Rational& delta) {
    (void)n;
    detail::require(d >= 1, "expander_params_gamma0: d must be >= 1");
    detail::require(eps > 0, "expander_params_gamma0: eps must be positive");
    detail::require(eps * static_cast<std::int64_t>(d) < 1, "expander_params_gamma0: need eps * d < 1");
    detail::require(delta > 0 && delta <= 1, "expander_params_gamma0: delta must lie in (0, 1]");
    ExpanderParams p;
    p.d = d;
    p.delta = delta;
    const Rational dd(static_cast<std::int64_t>(d));
    p.condenser_size = static_cast<std::size_t>(ceil_of(dd / (delta * (1 - eps * dd))));
    p.degree = d * p.condenser_size;
    p.eps = eps;
    p.alpha = (1 - delta) * dd;
    return p;
}

inline ExpanderParams expander_params_general(const Rational& eps, const Rational& eta) {
    detail::require(eps > 0 && eps <= eta && eta < 1, "expander_params_general: need 0 < eps <= eta < 1");
    ExpanderParams p;
    auto d = ceil_of((1 + eta) / (2 * eps));
    const Rational dd(d);
    p.d = static_cast<std::size_t>(d);
    p.gamma = 1 - (1 + eta) / (2 * eps * dd);
    p.delta = (1 - eta) / (1 + eta);
    p.condenser_size = static_cast<std::size_t>(ceil_of(2 * (1 + eta) * dd / ((1 - eta) * (1 - eta))));
    p.degree = p.d * p.condenser_size;
    p.eps = eps;
    p.alpha = eta / eps;
    return p;
}

/// A_i = matrix of v -> f(v, e_i), zero-padded from t to n rows. Needs a claim (r, m, eps).
inline DimExpander expander_from_two_source(const BilinearCondenser& b) {
    b.validate();
    detail::require(b.t <= b.n, "expander_from_two_source: output size t exceeds n");
    detail::require(b.claim.s == b.m, "expander_from_two_source: claim must cover the full second source");
    detail::require(b.claim.r >= 1, "expander_from_two_source: claim rank must be >= 1");
    DimExpander x;
    x.field = b.field;
    x.n = b.n;
    for (std::size_t i = 0; i < b.m; ++i) {
        FMatrix a(b.field, b.n, b.n);
        for (std::size_t k = 0; k < b.t; ++k)
            for (std::size_t c = 0; c < b.n; ++c) a(k, c) = b.E(k, c * b.m + i);
        x.maps.push_back(std::move(a));
    }
    x.eps = Rational(static_cast<std::int64_t>(b.claim.r), static_cast<std::int64_t>(b.n));
    x.alpha = (1 - b.claim.eps) * static_cast<std::int64_t>(b.m);
    return x;
}

} // namespace rankforge
