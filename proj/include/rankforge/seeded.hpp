#pragma once

/// Seeded rank condensers from the folded Wronskian, and the subspace-design duality.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rankforge/matrix.hpp"
#include "rankforge/poly.hpp"
#include "rankforge/rational.hpp"

namespace rankforge {

enum class Guarantee { Weak, Strong, Lossy };
enum class RankMode { Eq, Le };

inline std::string to_string(Guarantee g) {
    switch (g) {
    case Guarantee::Weak: return "weak";
    case Guarantee::Strong: return "strong";
    case Guarantee::Lossy: return "lossy";
    }
    return "?";
}

inline std::string to_string(RankMode m) { return m == RankMode::Eq ? "eq" : "le"; }

struct SeededClaim {
    Guarantee kind = Guarantee::Strong;
    std::size_t r = 1;
    Rational L{0};   // lossless list bound
    Rational eps{0}; // lossy loss fraction
    RankMode mode = RankMode::Le;

    static SeededClaim weak(std::size_t r, Rational L) { return {Guarantee::Weak, r, L, Rational(0), RankMode::Eq}; }
    static SeededClaim strong(std::size_t r, Rational L) {
        return {Guarantee::Strong, r, L, Rational(0), RankMode::Eq};
    }
    static SeededClaim lossy(std::size_t r, Rational eps, RankMode mode) {
        return {Guarantee::Lossy, r, Rational(0), eps, mode};
    }

    bool lossless() const noexcept { return kind != Guarantee::Lossy; }

    friend bool operator==(const SeededClaim&, const SeededClaim&) = default;
};

struct SeededCondenser {
    FieldPtr field;
    std::size_t n = 0;
    std::size_t t = 0;
    std::vector<FMatrix> maps;
    SeededClaim claim;
    /// Source extension (p, k) when the collection was produced by a lift.
    std::optional<std::pair<std::uint32_t, std::uint32_t>> lifted_from;

    void validate() const {
        detail::require(field != nullptr, "condenser: missing field");
        for (const auto& m : maps) {
            detail::require(m.rows() == t && m.cols() == n, "condenser: matrix is not t x n");
            detail::require(m.field()->same_as(*field), "condenser: matrix over a different field");
        }
        detail::require(claim.r >= 1 && claim.r <= n, "condenser: claim needs 1 <= r <= n");
        if (claim.lossless())
            detail::require(claim.L >= 0, "condenser: list bound must be nonnegative");
        else
            detail::require(claim.eps >= 0 && claim.eps < 1, "condenser: eps must lie in [0, 1)");
    }
};

struct SubspaceDesign {
    FieldPtr field;
    std::size_t n = 0;
    std::vector<FMatrix> subspaces; // RREF bases, rows in F^n
    Guarantee kind = Guarantee::Strong;
    std::size_t r = 1;
    Rational L{0};

    void validate() const {
        detail::require(field != nullptr, "design: missing field");
        detail::require(kind != Guarantee::Lossy, "design: claim must be weak or strong");
        for (const auto& h : subspaces) {
            detail::require(h.cols() == n, "design: subspace basis has wrong ambient dimension");
            detail::require(rank(h) == h.rows(), "design: subspace basis rows are dependent");
        }
    }
};

/// Entry (i, j) = (omega^i alpha)^j for i < t, j < n.
inline FMatrix folded_wronskian(const FieldPtr& f, const FElem& omega, std::size_t t, std::size_t n,
                                const FElem& alpha) {
    detail::require(omega.field->same_as(*f) && alpha.field->same_as(*f), "folded_wronskian: field mismatch");
    detail::require(alpha.code != 0, "folded_wronskian: alpha must be nonzero");
    detail::require(omega.code != 0 && element_order(*f, omega.code) >= n,
                    "folded_wronskian: omega has multiplicative order below n");
    FMatrix w(f, t, n);
    Elem x = alpha.code;
    for (std::size_t i = 0; i < t; ++i) {
        Elem p = 1;
        for (std::size_t j = 0; j < n; ++j) {
            w(i, j) = p;
            p = f->mul(p, x);
        }
        x = f->mul(x, omega.code);
    }
    return w;
}

/// det(Wr_{r,omega}(x) M) as a polynomial in x, for M of shape n x r.
inline Poly wronskian_determinant(const FieldPtr& f, const FElem& omega, const FMatrix& m) {
    const std::size_t n = m.rows(), r = m.cols();
    std::vector<Poly> entries(r * r);
    for (std::size_t i = 0; i < r; ++i) {
        Elem wi = f->pow(omega.code, static_cast<std::int64_t>(i));
        for (std::size_t c = 0; c < r; ++c) {
            Poly p;
            p.c.assign(n, 0);
            Elem wij = 1;
            for (std::size_t j = 0; j < n; ++j) {
                p.c[j] = f->mul(wij, m(j, c));
                wij = f->mul(wij, wi);
            }
            p.trim();
            entries[i * r + c] = std::move(p);
        }
    }
    return poly_det(*f, entries, r);
}

/// Strong lossless collection: Wronskians at 1, omega^t, (omega^t)^2, ... with omega primitive.
inline SeededCondenser lossless_collection(const FieldPtr& f, std::size_t n, std::size_t t, std::size_t r) {
    const std::uint64_t q = f->order();
    detail::require(q > n, "lossless_collection: field order must exceed n");
    detail::require(r >= 1 && t >= r, "lossless_collection: need t >= r >= 1");
    detail::require(r <= n, "lossless_collection: need r <= n");
    detail::require(t <= q - 1, "lossless_collection: t exceeds q - 1, collection would be empty");
    FElem omega = find_element_of_order(f, q - 1);
    FElem step = omega.pow(static_cast<std::int64_t>(t));
    SeededCondenser c;
    c.field = f;
    c.n = n;
    c.t = t;
    FElem alpha{f, 1};
    for (std::uint64_t j = 0; j < (q - 1) / t; ++j) {
        c.maps.push_back(folded_wronskian(f, omega, t, n, alpha));
        alpha = alpha * step;
    }
    c.claim = SeededClaim::strong(r, Rational(static_cast<std::int64_t>(r * (n - r)),
                                              static_cast<std::int64_t>(t - r + 1)));
    return c;
}

struct LossyPlan {
    FElem omega;
    std::uint64_t stride = 0; // evaluation points are (omega^stride)^j
    std::size_t count = 0;    // min{N, n^2}
};

/// Required number of evaluation points min{ceil(n / (eps (t - r + 1))), n^2}.
inline std::size_t lossy_point_count(std::size_t n, std::size_t t, std::size_t r, const Rational& eps) {
    detail::require(r >= 1 && t >= r && n >= r, "lossy_collection: need n, t >= r >= 1");
    detail::require(eps > 0 && eps < 1, "lossy_collection: eps must lie in (0, 1)");
    auto N = ceil_of(Rational(static_cast<std::int64_t>(n)) / (eps * static_cast<std::int64_t>(t - r + 1)));
    return std::min<std::size_t>(static_cast<std::size_t>(N), n * n);
}

/// Chooses omega and the stride. Prefers omega of order >= max(n, t * count) with stride t;
/// when no such element exists, takes the first omega of order >= n and the smallest stride
/// l >= t for which omega^l has order >= count, so the points stay distinct.
inline LossyPlan lossy_plan(const FieldPtr& f, std::size_t n, std::size_t t, std::size_t r, const Rational& eps) {
    LossyPlan plan;
    plan.count = lossy_point_count(n, t, r, eps);
    const std::uint64_t group = f->order() - 1;
    const std::uint64_t need = std::max<std::uint64_t>(n, static_cast<std::uint64_t>(t) * plan.count);
    if (need <= group) {
        plan.omega = find_element_of_order(f, need);
        plan.stride = t;
        return plan;
    }
    detail::require(n <= group, "lossy_collection: no element of order >= n=" + std::to_string(n) + " in F_" +
                                    std::to_string(f->order()));
    for (Elem a = 1; a < f->order(); ++a) {
        std::uint64_t ord = element_order(*f, a);
        if (ord < n) continue;
        for (std::uint64_t l = t; l < ord; ++l) {
            if (ord / std::gcd(ord, l) >= plan.count) {
                plan.omega = {f, a};
                plan.stride = l;
                return plan;
            }
        }
    }
    throw InvalidArgument("lossy_collection: F_" + std::to_string(f->order()) + " cannot host " +
                          std::to_string(plan.count) + " distinct evaluation points");
}

/// (<= r, eps)-lossy collection, padded with zero matrices to `size` when requested.
inline SeededCondenser lossy_collection(const FieldPtr& f, std::size_t n, std::size_t t, std::size_t r,
                                        const Rational& eps, std::optional<std::size_t> size = std::nullopt) {
    LossyPlan plan = lossy_plan(f, n, t, r, eps);
    std::size_t total = size.value_or(plan.count);
    detail::require(total >= plan.count, "lossy_collection: requested size " + std::to_string(total) +
                                             " is below the required " + std::to_string(plan.count));
    SeededCondenser c;
    c.field = f;
    c.n = n;
    c.t = t;
    FElem step = plan.omega.pow(static_cast<std::int64_t>(plan.stride));
    FElem alpha{f, 1};
    for (std::size_t j = 0; j < plan.count; ++j) {
        c.maps.push_back(folded_wronskian(f, plan.omega, t, n, alpha));
        alpha = alpha * step;
    }
    while (c.maps.size() < total) c.maps.emplace_back(f, t, n);
    c.claim = SeededClaim::lossy(r, eps, RankMode::Le);
    return c;
}

/// H_i = (row span of E_i)^perp.
inline SubspaceDesign design_from_condenser(const SeededCondenser& c) {
    detail::require(c.claim.lossless(), "design_from_condenser: duality holds only for lossless claims");
    SubspaceDesign d;
    d.field = c.field;
    d.n = c.n;
    d.kind = c.claim.kind;
    d.r = c.claim.r;
    d.L = c.claim.L;
    for (const auto& e : c.maps) d.subspaces.push_back(orthogonal_complement(row_span_basis(e)));
    return d;
}

/// E_i = basis of H_i^perp, padded with zero rows to t rows.
inline SeededCondenser condenser_from_design(const SubspaceDesign& d, std::size_t t) {
    d.validate();
    SeededCondenser c;
    c.field = d.field;
    c.n = d.n;
    c.t = t;
    c.claim = d.kind == Guarantee::Weak ? SeededClaim::weak(d.r, d.L) : SeededClaim::strong(d.r, d.L);
    for (const auto& h : d.subspaces) {
        detail::require(h.rows() + t >= d.n, "condenser_from_design: subspace of dim " + std::to_string(h.rows()) +
                                                 " needs more than t=" + std::to_string(t) + " rows");
        FMatrix comp = orthogonal_complement(h);
        FMatrix e(d.field, t, d.n);
        std::copy(comp.data().begin(), comp.data().end(), e.data().begin());
        c.maps.push_back(std::move(e));
    }
    return c;
}

} // namespace rankforge
