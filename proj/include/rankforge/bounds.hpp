#pragma once

/// Existential parameter thresholds from the probabilistic method.
///
/// The term tau = q / ((q-1)^2 ln q) is transcendental; thresholds containing it are enclosed
/// in an MPFR interval with outward rounding and the minimal integer is taken from the upper
/// end, so it is never under-reported. For q >= 4 the simplified forms (tau replaced by 1 in
/// the lossy/dim-expander bounds) are exact rationals.

#include <mpfr.h>

#include <cstdio>
#include <string>

#include "rankforge/rational.hpp"
#include "rankforge/seeded.hpp"

namespace rankforge {

struct ThresholdReport {
    std::string name;
    std::string inputs;
    bool applicable = true;
    std::string reason;           // why not applicable
    bool exact = true;            // threshold is the rational `value`
    Rational value{0};            // exact threshold when `exact`
    long double lower = 0, upper = 0; // enclosure otherwise
    std::int64_t minimal = 0;     // smallest integer meeting the threshold
    std::string symbol;           // "d", "k" or "t"

    std::string threshold_text() const {
        if (!applicable) return "inapplicable";
        if (exact) return to_string(value);
        char buf[96];
        std::snprintf(buf, sizeof buf, "[%.12Lf, %.12Lf]", lower, upper);
        return buf;
    }
};

namespace detail {

class Mpfr {
public:
    Mpfr() { mpfr_init2(v_, 256); }
    ~Mpfr() { mpfr_clear(v_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

/// Interval [lo, hi] containing the real number.
struct Interval {
    Mpfr lo, hi;
};

inline void set_rational(Interval& x, const Rational& r) {
    mpfr_set_si(x.lo.get(), static_cast<long>(r.numerator()), MPFR_RNDD);
    mpfr_div_si(x.lo.get(), x.lo.get(), static_cast<long>(r.denominator()), MPFR_RNDD);
    mpfr_set_si(x.hi.get(), static_cast<long>(r.numerator()), MPFR_RNDU);
    mpfr_div_si(x.hi.get(), x.hi.get(), static_cast<long>(r.denominator()), MPFR_RNDU);
}

/// tau = q / ((q-1)^2 ln q).
inline void set_tau(Interval& x, std::uint64_t q) {
    Mpfr lnq_lo, lnq_hi;
    mpfr_set_ui(lnq_lo.get(), q, MPFR_RNDN);
    mpfr_set_ui(lnq_hi.get(), q, MPFR_RNDN);
    mpfr_log(lnq_lo.get(), lnq_lo.get(), MPFR_RNDD);
    mpfr_log(lnq_hi.get(), lnq_hi.get(), MPFR_RNDU);
    const unsigned long sq = static_cast<unsigned long>((q - 1) * (q - 1)); // exact in 256 bits
    mpfr_mul_ui(lnq_lo.get(), lnq_lo.get(), sq, MPFR_RNDD);
    mpfr_mul_ui(lnq_hi.get(), lnq_hi.get(), sq, MPFR_RNDU);
    mpfr_ui_div(x.lo.get(), q, lnq_hi.get(), MPFR_RNDD);
    mpfr_ui_div(x.hi.get(), q, lnq_lo.get(), MPFR_RNDU);
}

/// (A + a tau) / (B - b tau) for a, b >= 0 over an exact-rational A, B.
inline ThresholdReport fraction_with_tau(std::uint64_t q, const Rational& A, const Rational& a, const Rational& B,
                                         const Rational& b, ThresholdReport rep) {
    Interval tau, num, den, ta, tb;
    set_tau(tau, q);
    set_rational(num, A);
    set_rational(den, B);
    set_rational(ta, a);
    set_rational(tb, b);
    // a, b >= 0 and tau > 0, so products keep endpoint order
    mpfr_mul(ta.lo.get(), ta.lo.get(), tau.lo.get(), MPFR_RNDD);
    mpfr_mul(ta.hi.get(), ta.hi.get(), tau.hi.get(), MPFR_RNDU);
    mpfr_mul(tb.lo.get(), tb.lo.get(), tau.lo.get(), MPFR_RNDD);
    mpfr_mul(tb.hi.get(), tb.hi.get(), tau.hi.get(), MPFR_RNDU);
    mpfr_add(num.lo.get(), num.lo.get(), ta.lo.get(), MPFR_RNDD);
    mpfr_add(num.hi.get(), num.hi.get(), ta.hi.get(), MPFR_RNDU);
    mpfr_sub(den.lo.get(), den.lo.get(), tb.hi.get(), MPFR_RNDD);
    mpfr_sub(den.hi.get(), den.hi.get(), tb.lo.get(), MPFR_RNDU);
    if (mpfr_sgn(den.lo.get()) <= 0) {
        rep.applicable = false;
        rep.reason = "denominator is not positive";
        return rep;
    }
    Mpfr lo, hi;
    // numerator may be negative only in degenerate inputs; pick endpoints accordingly
    if (mpfr_sgn(num.lo.get()) >= 0) {
        mpfr_div(lo.get(), num.lo.get(), den.hi.get(), MPFR_RNDD);
        mpfr_div(hi.get(), num.hi.get(), den.lo.get(), MPFR_RNDU);
    } else {
        mpfr_div(lo.get(), num.lo.get(), den.lo.get(), MPFR_RNDD);
        mpfr_div(hi.get(), num.hi.get(), den.hi.get(), MPFR_RNDU);
    }
    rep.exact = false;
    rep.lower = mpfr_get_ld(lo.get(), MPFR_RNDD);
    rep.upper = mpfr_get_ld(hi.get(), MPFR_RNDU);
    Mpfr c;
    mpfr_ceil(c.get(), hi.get());
    rep.minimal = static_cast<std::int64_t>(mpfr_get_si(c.get(), MPFR_RNDU));
    return rep;
}

inline ThresholdReport exact_threshold(const Rational& num, const Rational& den, ThresholdReport rep) {
    if (den <= 0) {
        rep.applicable = false;
        rep.reason = "denominator is not positive";
        return rep;
    }
    rep.value = num / den;
    rep.minimal = ceil_of(rep.value);
    return rep;
}

inline Rational rat(std::uint64_t x) { return Rational(static_cast<std::int64_t>(x)); }

} // namespace detail

/// d >= alpha + 1/(1 - alpha eps) + 1 (q >= 4), else + 2q/((q-1)^2 ln q).
inline ThresholdReport bound_dim_expander(std::uint64_t q, const Rational& alpha, const Rational& eps) {
    detail::require(q >= 2, "bound_dim_expander: q must be >= 2");
    detail::require(alpha >= 1 && eps > 0, "bound_dim_expander: need alpha >= 1 and eps > 0");
    detail::require(alpha * eps < 1, "bound_dim_expander: need alpha * eps < 1");
    ThresholdReport rep;
    rep.name = "dim-exp";
    rep.symbol = "d";
    rep.inputs = "q=" + std::to_string(q) + " alpha=" + to_string(alpha) + " eps=" + to_string(eps);
    const Rational base = alpha + 1 / (1 - alpha * eps);
    if (q >= 4) return detail::exact_threshold(base + 1, Rational(1), rep);
    return detail::fraction_with_tau(q, base, Rational(2), Rational(1), Rational(0), rep);
}

/// Number of seeds k for a random (r, eps)-lossy seeded condenser F^n -> F^t.
/// le: k >= (n + tau) / (eps (t - (1-eps) r) - tau); eq: k >= (rn + tau) / ((t - (1-eps) r)(floor(eps r) + 1) - tau).
inline ThresholdReport bound_lossy_seeded(std::uint64_t q, std::size_t n, std::size_t t, std::size_t r,
                                          const Rational& eps, RankMode mode) {
    detail::require(q >= 2, "bound_lossy_seeded: q must be >= 2");
    detail::require(eps > 0 && eps < 1, "bound_lossy_seeded: eps must lie in (0, 1)");
    detail::require(r >= 1, "bound_lossy_seeded: r must be >= 1");
    ThresholdReport rep;
    rep.name = std::string("lossy-") + to_string(mode);
    rep.symbol = "k";
    rep.inputs = "q=" + std::to_string(q) + " n=" + std::to_string(n) + " t=" + std::to_string(t) +
                 " r=" + std::to_string(r) + " eps=" + to_string(eps);
    const Rational gap = detail::rat(t) - (1 - eps) * detail::rat(r);
    Rational num, den;
    if (mode == RankMode::Le) {
        num = detail::rat(n);
        den = eps * gap;
    } else {
        num = detail::rat(r * n);
        den = gap * (floor_of(eps * detail::rat(r)) + 1);
    }
    if (gap <= 0) {
        rep.applicable = false;
        rep.reason = "t <= (1 - eps) r";
        return rep;
    }
    if (q >= 4) return detail::exact_threshold(num + 1, den - 1, rep);
    return detail::fraction_with_tau(q, num, Rational(1), den, Rational(1), rep);
}

enum class TwoSourceMode { Lossless, Eq, Le };

inline std::string to_string(TwoSourceMode m) {
    switch (m) {
    case TwoSourceMode::Lossless: return "lossless";
    case TwoSourceMode::Eq: return "eq";
    case TwoSourceMode::Le: return "le";
    }
    return "?";
}

/// Output size t for a random bilinear condenser F^n x F^m -> F^t.
/// lossless: rn + sm + rs + 2 tau - 1; eq: n/(eps s) + m/(eps r) + (1-eps) rs + 2 tau;
/// le (all ranks <= r on the first source): n/(eps s) + m/eps + (1-eps) rs + 2 tau.
inline ThresholdReport bound_two_source(std::uint64_t q, std::size_t n, std::size_t m, std::size_t r, std::size_t s,
                                        const Rational& eps, TwoSourceMode mode) {
    detail::require(q >= 2, "bound_two_source: q must be >= 2");
    detail::require(r >= 1 && s >= 1, "bound_two_source: r and s must be >= 1");
    detail::require(eps >= 0 && eps < 1, "bound_two_source: eps must lie in [0, 1)");
    ThresholdReport rep;
    rep.name = "two-source-" + to_string(mode);
    rep.symbol = "t";
    rep.inputs = "q=" + std::to_string(q) + " n=" + std::to_string(n) + " m=" + std::to_string(m) +
                 " r=" + std::to_string(r) + " s=" + std::to_string(s) + " eps=" + to_string(eps);
    Rational base;
    const Rational rs = detail::rat(r * s);
    if (mode == TwoSourceMode::Lossless) {
        base = detail::rat(r * n + s * m) + rs - 1;
    } else {
        detail::require(eps > 0, "bound_two_source: lossy modes need eps > 0");
        const Rational first = detail::rat(n) / (eps * detail::rat(s));
        const Rational second = mode == TwoSourceMode::Eq ? detail::rat(m) / (eps * detail::rat(r)) : detail::rat(m) / eps;
        base = first + second + (1 - eps) * rs;
    }
    return detail::fraction_with_tau(q, base, Rational(2), Rational(1), Rational(0), rep);
}

} // namespace rankforge
