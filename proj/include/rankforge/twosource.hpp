#pragma once

/// Bilinear two-source rank condensers and rank-metric codes.

#include <optional>
#include <vector>

#include "rankforge/bilinear.hpp"
#include "rankforge/rng.hpp"
#include "rankforge/seeded.hpp"
#include "rankforge/smallfield.hpp"
#include "rankforge/verify.hpp"

namespace rankforge {

struct RankMetricCode {
    FieldPtr field;
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<FMatrix> basis; // n x m each
    std::size_t dist = 0;       // claimed minimum rank distance

    std::size_t dim() const noexcept { return basis.size(); }

    /// Basis as rows of a dim x nm matrix (entry (a, b) at column a*m + b).
    FMatrix flat() const {
        FMatrix f(field, basis.size(), n * m);
        for (std::size_t i = 0; i < basis.size(); ++i)
            std::copy(basis[i].data().begin(), basis[i].data().end(), f.data().begin() + static_cast<std::ptrdiff_t>(i * n * m));
        return f;
    }

    void validate() const {
        detail::require(field != nullptr, "code: missing field");
        for (const auto& b : basis) {
            detail::require(b.rows() == n && b.cols() == m, "code: basis matrix has wrong shape");
            detail::require(b.field()->same_as(*field), "code: basis matrix over a different field");
        }
        detail::require(rank(flat()) == basis.size(), "code: basis is linearly dependent");
    }
};

namespace detail {

inline RankMetricCode code_from_flat_rows(const FieldPtr& f, std::size_t n, std::size_t m, const FMatrix& rows,
                                          std::size_t dist) {
    RankMetricCode c;
    c.field = f;
    c.n = n;
    c.m = m;
    c.dist = dist;
    FMatrix canon = row_span_basis(rows);
    for (std::size_t i = 0; i < canon.rows(); ++i) c.basis.push_back(reshape(canon.rows_range(i, i + 1), n, m));
    return c;
}

inline std::vector<Elem> powers(const Field& f, Elem x, std::size_t count) {
    std::vector<Elem> p(count);
    Elem v = 1;
    for (std::size_t i = 0; i < count; ++i) {
        p[i] = v;
        v = f.mul(v, x);
    }
    return p;
}

} // namespace detail

/// Same code iff same span.
inline bool same_span(const RankMetricCode& a, const RankMetricCode& b) {
    if (a.n != b.n || a.m != b.m) return false;
    if (a.dim() == 0 || b.dim() == 0) return a.dim() == b.dim();
    return same_row_span(a.flat(), b.flat());
}

/// Singleton-type bound max(n,m) (min(n,m) - r) for a code of distance r + 1.
inline std::size_t singleton_bound(std::size_t n, std::size_t m, std::size_t r) {
    std::size_t lo = std::min(n, m), hi = std::max(n, m);
    return r >= lo ? 0 : hi * (lo - r);
}

/// Output lower bound m - eps s for (1, s, eps)-condensers.
inline Rational output_lower_bound(std::size_t m, std::size_t s, const Rational& eps) {
    return Rational(static_cast<std::int64_t>(m)) - eps * static_cast<std::int64_t>(s);
}

/// Roth's bound r(2n - r) for algebraically closed fields; reported only.
inline std::size_t algebraically_closed_bound(std::size_t n, std::size_t r) { return r * (2 * n - r); }

inline BilinearCondenser condense_tensor_lossless(const FieldPtr& f, std::size_t n, std::size_t m, std::size_t r,
                                                  std::size_t s) {
    detail::require(n >= r && r >= 1 && m >= s && s >= 1, "condense_tensor_lossless: need n >= r >= 1, m >= s >= 1");
    const std::size_t count = r * (n - r) + s * (m - s) + 1;
    detail::require(count <= f->order() - 1, "condense_tensor_lossless: field has fewer than " + std::to_string(count) +
                                                 " nonzero elements");
    FElem omega = find_element_of_order(f, std::max(n, m));
    BilinearCondenser b;
    b.field = f;
    b.n = n;
    b.m = m;
    b.t = r * s * count;
    b.E = FMatrix(f, b.t, n * m);
    std::size_t row = 0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < s; ++j)
            for (Elem alpha = 1; alpha <= count; ++alpha, ++row) {
                auto px = detail::powers(*f, f->mul(f->pow(omega.code, static_cast<std::int64_t>(i)), alpha), n);
                auto py = detail::powers(*f, f->mul(f->pow(omega.code, static_cast<std::int64_t>(j)), alpha), m);
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t c = 0; c < m; ++c) b.E(row, a * m + c) = f->mul(px[a], py[c]);
            }
    b.claim = {r, s, Rational(0), false, false};
    return b;
}

inline BilinearCondenser pruned_lossless(const FieldPtr& f, std::size_t n, std::size_t m, std::size_t r,
                                         std::size_t s) {
    detail::require(n >= r && r >= 1 && m >= s && s >= 1, "pruned_lossless: need n >= r >= 1, m >= s >= 1");
    const std::size_t count = n + m - 1;
    detail::require(count <= f->order() - 1,
                    "pruned_lossless: field has fewer than " + std::to_string(count) + " nonzero elements");
    FElem omega = find_element_of_order(f, std::max(n, m));
    BilinearCondenser b;
    b.field = f;
    b.n = n;
    b.m = m;
    b.t = (r + s - 1) * count;
    b.E = FMatrix(f, b.t, n * m);
    std::size_t row = 0;
    for (long k = -static_cast<long>(r) + 1; k < static_cast<long>(s); ++k) {
        Elem wk = f->pow(omega.code, k);
        for (Elem beta = 1; beta <= count; ++beta, ++row) {
            auto pb = detail::powers(*f, beta, n + m - 1);
            auto pw = detail::powers(*f, wk, m);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t c = 0; c < m; ++c) b.E(row, a * m + c) = f->mul(pb[a + c], pw[c]);
        }
    }
    b.claim = {r, s, Rational(0), false, false};
    return b;
}

/// Gabidulin code in F_q^{n x m}, q prime: maps x -> sum_{i <= m-r-1} beta_i x^{q^i} written in
/// the polynomial basis of F_{q^m} (column j holds the image of z^j), restricted to the
/// subcode whose last m - n rows vanish.
inline RankMetricCode gabidulin_code(std::uint32_t q, std::size_t m, std::size_t n, std::size_t r) {
    detail::require(m >= n && n >= r, "gabidulin_code: need m >= n >= r >= 0");
    detail::require(n >= 1, "gabidulin_code: need n >= 1");
    auto base = make_field(q, 1);
    detail::require(base->is_prime_field(), "gabidulin_code: q must be prime");
    RankMetricCode out;
    out.field = base;
    out.n = n;
    out.m = m;
    out.dist = r + 1;
    if (r >= m) return out; // k = -1: only the zero polynomial
    const std::size_t k = m - r - 1;
    auto ext = make_field(q, static_cast<std::uint32_t>(m));
    const Elem z = m > 1 ? static_cast<Elem>(q) : 1; // code of z is p when m > 1; F_q itself when m = 1
    std::vector<FMatrix> full;
    for (std::size_t i = 0; i <= k; ++i) {
        std::uint64_t e = 1;
        for (std::size_t x = 0; x < i; ++x) e *= q;
        for (std::size_t c = 0; c < m; ++c) {
            Elem beta = ext->pow(z, static_cast<std::int64_t>(c));
            FMatrix g(base, m, m);
            for (std::size_t j = 0; j < m; ++j) {
                Elem zj = ext->pow(z, static_cast<std::int64_t>(j));
                Elem img = ext->mul(beta, ext->pow(zj, static_cast<std::int64_t>(e)));
                auto coeffs = ext->coefficients(img);
                for (std::size_t a = 0; a < m; ++a) g(a, j) = coeffs[a];
            }
            full.push_back(std::move(g));
        }
    }
    const std::size_t D = full.size();
    // combinations whose rows n..m-1 vanish
    FMatrix cons(base, (m - n) * m, D);
    for (std::size_t l = 0; l < D; ++l)
        for (std::size_t a = n; a < m; ++a)
            for (std::size_t j = 0; j < m; ++j) cons((a - n) * m + j, l) = full[l](a, j);
    FMatrix lambdas = m > n ? kernel(cons) : FMatrix::identity(base, D);
    FMatrix rows(base, lambdas.cols(), n * m);
    for (std::size_t v = 0; v < lambdas.cols(); ++v)
        for (std::size_t l = 0; l < D; ++l) {
            Elem x = lambdas(l, v);
            if (x == 0) continue;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t j = 0; j < m; ++j)
                    rows(v, a * m + j) = base->add(rows(v, a * m + j), base->mul(x, full[l](a, j)));
        }
    return detail::code_from_flat_rows(base, n, m, rows, r + 1);
}

/// Cells (i, j) with i + j = k, ascending i.
inline std::vector<std::pair<std::size_t, std::size_t>> diagonal_cells(std::size_t n, std::size_t m, std::size_t k) {
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < n; ++i)
        if (k >= i && k - i < m) cells.emplace_back(i, k - i);
    return cells;
}

/// Roth code: every k-diagonal lies in the kernel of the r x l Vandermonde matrix over the
/// field elements with codes 0..l-1 (the zero code when l <= r).
inline RankMetricCode roth_code(const FieldPtr& f, std::size_t n, std::size_t m, std::size_t r) {
    detail::require(m >= n && n >= r, "roth_code: need m >= n >= r >= 0");
    detail::require(f->order() >= n, "roth_code: field must have at least n elements");
    std::vector<std::vector<Elem>> rows;
    for (std::size_t k = 0; k + 1 < n + m; ++k) {
        auto cells = diagonal_cells(n, m, k);
        const std::size_t l = cells.size();
        if (l <= r) continue;
        FMatrix h(f, r, l);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < l; ++j) h(i, j) = f->pow(static_cast<Elem>(j), static_cast<std::int64_t>(i));
        FMatrix ker = r == 0 ? FMatrix::identity(f, l) : kernel(h);
        for (std::size_t v = 0; v < ker.cols(); ++v) {
            std::vector<Elem> flat(n * m, 0);
            for (std::size_t c = 0; c < l; ++c) flat[cells[c].first * m + cells[c].second] = ker(c, v);
            rows.push_back(std::move(flat));
        }
    }
    RankMetricCode c;
    c.field = f;
    c.n = n;
    c.m = m;
    c.dist = r + 1;
    for (auto& fr : rows) c.basis.emplace_back(f, n, m, std::move(fr));
    return c;
}

/// Exact minimum rank over nonzero codewords (one representative per projective point).
inline std::size_t min_rank_distance(const RankMetricCode& c, std::uint64_t budget = kDefaultBudget) {
    c.validate();
    if (c.dim() == 0) return std::min(c.n, c.m) + 1;
    const Field& f = *c.field;
    const std::uint64_t q = f.order();
    std::uint64_t total = detail::checked_pow(q, c.dim(), "min_rank_distance") - 1;
    if (total > budget) throw BudgetExceeded("min_rank_distance: codeword enumeration too large", total, budget);
    const std::size_t d = c.dim(), nm = c.n * c.m;
    FMatrix flat = c.flat();
    std::size_t best = std::min(c.n, c.m) + 1;
    std::vector<Elem> word(nm), coef(d);
    for (std::size_t lead = 0; lead < d; ++lead) {
        const std::size_t tail = d - lead - 1;
        const std::uint64_t combos = detail::checked_pow(q, tail, "min_rank_distance");
        for (std::uint64_t idx = 0; idx < combos; ++idx) {
            std::fill(coef.begin(), coef.end(), 0);
            coef[lead] = 1;
            std::uint64_t v = idx;
            for (std::size_t i = d; i-- > lead + 1;) {
                coef[i] = static_cast<Elem>(v % q);
                v /= q;
            }
            std::fill(word.begin(), word.end(), 0);
            for (std::size_t i = lead; i < d; ++i) {
                if (coef[i] == 0) continue;
                for (std::size_t x = 0; x < nm; ++x)
                    if (flat(i, x) != 0) word[x] = f.add(word[x], f.mul(coef[i], flat(i, x)));
            }
            std::size_t rk = detail::eliminate(f, word.data(), c.n, c.m, c.m, false);
            best = std::min(best, rk);
        }
    }
    return best;
}

/// Parity checks of the code: E spans the orthogonal complement of the code in F^{nm}.
/// Primary claim (d-1, d-1, 0); it implies (d-1, m, 0) and (n, d-1, 0).
inline BilinearCondenser code_to_condenser(const RankMetricCode& c) {
    c.validate();
    detail::require(c.dist >= 1, "code_to_condenser: code carries no distance claim");
    BilinearCondenser b;
    b.field = c.field;
    b.n = c.n;
    b.m = c.m;
    b.E = c.dim() == 0 ? FMatrix::identity(c.field, c.n * c.m) : orthogonal_complement(c.flat());
    b.t = b.E.rows();
    const std::size_t r = c.dist - 1;
    detail::require(b.t > 0, "code_to_condenser: full-space code gives an empty condenser");
    detail::require(r >= 1, "code_to_condenser: distance 1 gives a vacuous claim");
    b.claim = {r, r, Rational(0), false, false};
    return b;
}

/// ker E reshaped to n x m matrices; distance min(r, s) + 1.
inline RankMetricCode condenser_to_code(const BilinearCondenser& b) {
    b.validate();
    detail::require(b.claim.eps == Rational(0), "condenser_to_code: condenser must be lossless");
    FMatrix ker = b.t == 0 ? FMatrix::identity(b.field, b.n * b.m) : kernel(b.E);
    FMatrix rows = ker.transpose();
    std::size_t dist = std::min(b.claim.r, b.claim.s) + 1;
    if (rows.rows() == 0) {
        RankMetricCode c;
        c.field = b.field;
        c.n = b.n;
        c.m = b.m;
        c.dist = std::min(b.n, b.m) + 1;
        return c;
    }
    return detail::code_from_flat_rows(b.field, b.n, b.m, rows, dist);
}

inline std::size_t outer_point_count(std::size_t n, std::size_t t, std::size_t r, const Rational& eps) {
    detail::require(eps > 0 && eps < 1, "lossy_outer_inner: eps must lie in (0, 1)");
    detail::require(t >= r && r >= 1 && n >= r, "lossy_outer_inner: need n, t >= r >= 1");
    return static_cast<std::size_t>(
        ceil_of(Rational(static_cast<std::int64_t>(2 * n)) / (eps * static_cast<std::int64_t>(t - r + 1))));
}

/// E' stacks inner.E (Wr_t(alpha) (x) Wr_t(alpha)) over alpha = (omega^t)^j, j < |S|.
inline BilinearCondenser lossy_outer_inner(const FieldPtr& f, std::size_t n, std::size_t r, const Rational& eps,
                                           const BilinearCondenser& inner) {
    inner.validate();
    const std::size_t t = inner.n;
    detail::require(inner.m == t, "lossy_outer_inner: inner condenser must be balanced (t x t sources)");
    const std::size_t count = outer_point_count(n, t, r, eps);
    const auto need = ceil_of((1 - eps) * static_cast<std::int64_t>(r));
    detail::require(static_cast<std::int64_t>(inner.claim.r) >= need &&
                        static_cast<std::int64_t>(inner.claim.s) >= need && inner.claim.eps <= eps,
                    "lossy_outer_inner: inner claim must cover (ceil((1-eps) r), ceil((1-eps) r), eps)");
    const std::uint64_t order = std::max<std::uint64_t>(n, static_cast<std::uint64_t>(t) * count);
    detail::require(order <= f->order() - 1, "lossy_outer_inner: F_" + std::to_string(f->order()) +
                                                 " has no element of order >= " + std::to_string(order));
    FElem omega = find_element_of_order(f, order);
    FElem step = omega.pow(static_cast<std::int64_t>(t));
    std::vector<FMatrix> blocks;
    FElem alpha{f, 1};
    for (std::size_t j = 0; j < count; ++j) {
        FMatrix w = folded_wronskian(f, omega, t, n, alpha);
        blocks.push_back(inner.E * tensor(w, w));
        alpha = alpha * step;
    }
    BilinearCondenser b;
    b.field = f;
    b.n = n;
    b.m = n;
    b.E = inner.t == 0 ? FMatrix(f, 0, n * n) : vstack(blocks);
    b.t = b.E.rows();
    const Rational keep = 1 - eps;
    b.claim = {r, r, 1 - keep * keep * keep, false, false};
    return b;
}

/// Uniformly random E in F^{t' x t^2} until one passes exhaustive (r', s', eps) verification.
/// Candidate i is drawn from the sub-stream derive_seed(seed, i); gives up after `budget` candidates.
inline std::optional<BilinearCondenser> inner_condenser_search(const FieldPtr& f, std::size_t t, std::size_t t_out,
                                                               std::size_t r, std::size_t s, const Rational& eps,
                                                               std::uint64_t seed, std::uint64_t budget) {
    detail::require(r <= t && s <= t, "inner_condenser_search: ranks exceed t");
    detail::require(eps >= 0 && eps < 1, "inner_condenser_search: eps must lie in [0, 1)");
    const auto need = ceil_of((1 - eps) * static_cast<std::int64_t>(r * s));
    if (need > static_cast<std::int64_t>(t_out)) return std::nullopt; // rank can never reach the threshold
    for (std::uint64_t i = 0; i < budget; ++i) {
        Rng rng(derive_seed(seed, i));
        BilinearCondenser b;
        b.field = f;
        b.n = t;
        b.m = t;
        b.t = t_out;
        b.E = rng.matrix(f, t_out, t * t);
        b.claim = {r, s, eps, false, false};
        if (verify_two_source(b).pass) return b;
    }
    return std::nullopt;
}

/// <M, N> = sum_ij M_ij N_ij.
inline Elem matrix_inner_product(const FMatrix& a, const FMatrix& b) {
    detail::require(a.rows() == b.rows() && a.cols() == b.cols(), "inner product: shape mismatch");
    const Field& f = *a.field();
    Elem acc = 0;
    for (std::size_t i = 0; i < a.data().size(); ++i) acc = f.add(acc, f.mul(a.data()[i], b.data()[i]));
    return acc;
}

inline Elem trace(const FMatrix& a) {
    detail::require(a.rows() == a.cols(), "trace: matrix not square");
    Elem acc = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) acc = a.field()->add(acc, a(i, i));
    return acc;
}

} // namespace rankforge
