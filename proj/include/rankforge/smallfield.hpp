#pragma once

/// Simulating extension-field constructions over the prime field via coordinate expansion.

#include "rankforge/expander.hpp"
#include "rankforge/seeded.hpp"
#include "rankforge/subspaces.hpp"

namespace rankforge {

/// Each extension entry becomes k consecutive base entries in its column: row i of E
/// expands to rows i*k .. i*k + k - 1, holding the polynomial-basis coordinates.
inline FMatrix phi_lift_matrix(const FMatrix& e) {
    const Field& f = *e.field();
    detail::require(!f.is_prime_field(), "phi_lift_matrix: matrix is over a prime field, nothing to lift");
    const std::size_t k = f.degree();
    FMatrix out(f.prime_subfield(), e.rows() * k, e.cols());
    for (std::size_t i = 0; i < e.rows(); ++i)
        for (std::size_t j = 0; j < e.cols(); ++j) {
            Elem a = e(i, j);
            for (std::size_t c = 0; c < k; ++c) {
                out(i * k + c, j) = a % f.characteristic();
                a /= f.characteristic();
            }
        }
    return out;
}

/// Image of a base-field matrix inside the extension (codes agree on the prime subfield).
inline FMatrix embed_matrix(const FMatrix& m, const FieldPtr& ext) {
    detail::require(m.field()->is_prime_field() && m.field()->characteristic() == ext->characteristic(),
                    "embed_matrix: matrix is not over the prime subfield of the target");
    return FMatrix(ext, m.rows(), m.cols(), m.data());
}

/// Lifts every matrix; the claim is carried over unchanged.
inline SeededCondenser lift_condenser(const SeededCondenser& c) {
    c.validate();
    detail::require(!c.field->is_prime_field(), "lift_condenser: condenser is over a prime field");
    SeededCondenser out;
    out.field = c.field->prime_subfield();
    out.n = c.n;
    out.t = c.t * c.field->degree();
    for (const auto& e : c.maps) out.maps.push_back(phi_lift_matrix(e));
    out.claim = c.claim;
    out.lifted_from = std::make_pair(c.field->characteristic(), c.field->degree());
    return out;
}

/// Smallest k >= 1 with q^k >= target.
inline std::size_t min_extension_degree(std::uint64_t q, std::uint64_t target) {
    detail::require(q >= 2, "min_extension_degree: q must be >= 2");
    std::size_t k = 1;
    std::uint64_t qk = q;
    while (qk < target) {
        qk = detail::checked_mul(qk, q, "min_extension_degree");
        ++k;
    }
    return k;
}

/// k = ceil(log_q(t n^2 + 1)), the extension degree for lifted lossy condensers.
inline std::size_t lossy_small_field_degree(std::uint64_t q, std::size_t t, std::size_t n) {
    return min_extension_degree(q, static_cast<std::uint64_t>(t) * n * n + 1);
}

inline ExpanderParams small_field_expander_params(std::uint64_t q, std::size_t n, std::size_t d, const Rational& eps,
                                                  const Rational& delta) {
    detail::require(d >= 1, "small_field_expander_params: d must be >= 1");
    detail::require(eps > 0, "small_field_expander_params: eps must be positive");
    detail::require(delta > 0 && delta <= 1, "small_field_expander_params: delta must lie in (0, 1]");
    ExpanderParams p;
    p.d = d;
    p.k = min_extension_degree(q, static_cast<std::uint64_t>(d) * d * n * n * n + 1);
    const Rational dk(static_cast<std::int64_t>(d * p.k));
    detail::require(eps * dk < 1, "small_field_expander_params: need eps * d * k < 1 (k = " +
                                      std::to_string(p.k) + ")");
    p.delta = delta;
    p.condenser_size = static_cast<std::size_t>(ceil_of(dk / (delta * (1 - eps * dk))));
    p.degree = d * p.condenser_size;
    p.eps = eps;
    p.alpha = (1 - delta) * static_cast<std::int64_t>(d);
    return p;
}

} // namespace rankforge
