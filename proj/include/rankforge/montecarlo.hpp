#pragma once

/// Seeded Monte-Carlo sampling of random objects. Trial i draws from the sub-stream
/// derive_seed(seed, i), so results do not depend on the number of worker threads.

#include <mpfr.h>

#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "rankforge/bounds.hpp"
#include "rankforge/verify.hpp"

namespace rankforge {

struct MonteCarloReport {
    std::string kind;
    std::string params;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::optional<long double> exact; // exact success probability when known

    long double frequency() const { return trials ? static_cast<long double>(successes) / trials : 0.0L; }

    /// Binomial standard error sqrt(p (1 - p) / trials), with p the exact value when known.
    long double stderr_() const {
        if (!trials) return 0;
        long double p = exact.value_or(frequency());
        return std::sqrt(p * (1 - p) / trials);
    }
};

namespace detail {

/// Counts successes of trial(i) over [0, trials), split across `jobs` threads.
template <class Trial>
std::uint64_t count_successes(std::uint64_t trials, unsigned jobs, Trial trial) {
    std::uint64_t j = std::max<std::uint64_t>(1, std::min<std::uint64_t>(jobs, trials));
    std::vector<std::uint64_t> parts(j, 0);
    std::vector<std::exception_ptr> errors(j);
    auto work = [&](std::uint64_t s) {
        std::uint64_t begin = trials / j * s + std::min(s, trials % j);
        std::uint64_t end = begin + trials / j + (s < trials % j ? 1 : 0);
        try {
            for (std::uint64_t i = begin; i < end; ++i) parts[s] += trial(i) ? 1 : 0;
        } catch (...) {
            errors[s] = std::current_exception();
        }
    };
    if (j == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (std::uint64_t s = 0; s < j; ++s) threads.emplace_back(work, s);
        for (auto& t : threads) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::uint64_t total = 0;
    for (auto p : parts) total += p;
    return total;
}

inline VerifyOptions inner_options(std::uint64_t budget) {
    VerifyOptions o;
    o.budget = budget;
    return o;
}

} // namespace detail

/// Number of rows x cols matrices over F_q of rank exactly j, as a probability.
inline long double rank_probability(std::uint64_t q, std::size_t rows, std::size_t cols, std::size_t j) {
    // prod_{i<j} (q^rows - q^i)(q^cols - q^i) / (q^j - q^i), divided by q^{rows cols}
    long double lq = std::log(static_cast<long double>(q));
    long double logp = -static_cast<long double>(rows * cols) * lq;
    for (std::size_t i = 0; i < j; ++i) {
        auto term = [&](std::size_t a) { return a * lq + std::log1p(-std::pow(static_cast<long double>(q), static_cast<long double>(i) - a)); };
        logp += term(rows) + term(cols) - term(j);
    }
    return std::exp(logp);
}

/// Event rank(M) <= k for a uniformly random rows x cols matrix.
inline MonteCarloReport montecarlo_rank(const FieldPtr& f, std::size_t rows, std::size_t cols, std::size_t k,
                                        std::uint64_t seed, std::uint64_t trials, unsigned jobs = 1) {
    MonteCarloReport rep;
    rep.kind = "rank";
    rep.params = "q=" + std::to_string(f->order()) + " rows=" + std::to_string(rows) + " cols=" +
                 std::to_string(cols) + " rank<=" + std::to_string(k);
    rep.seed = seed;
    rep.trials = trials;
    long double p = 0;
    for (std::size_t j = 0; j <= std::min({k, rows, cols}); ++j) p += rank_probability(f->order(), rows, cols, j);
    rep.exact = std::min<long double>(p, 1);
    rep.successes = detail::count_successes(trials, jobs, [&](std::uint64_t i) {
        Rng rng(derive_seed(seed, i));
        return rank(rng.matrix(f, rows, cols)) <= k;
    });
    return rep;
}

/// Random degree-`degree` collections of n x n maps; success = exhaustive (eps, alpha) expansion.
inline MonteCarloReport montecarlo_dim_expander(const FieldPtr& f, std::size_t n, std::size_t degree,
                                                const Rational& eps, const Rational& alpha, std::uint64_t seed,
                                                std::uint64_t trials, std::uint64_t budget = kDefaultBudget,
                                                unsigned jobs = 1) {
    MonteCarloReport rep;
    rep.kind = "dim-expander";
    rep.params = "q=" + std::to_string(f->order()) + " n=" + std::to_string(n) + " degree=" + std::to_string(degree) +
                 " eps=" + to_string(eps) + " alpha=" + to_string(alpha);
    rep.seed = seed;
    rep.trials = trials;
    rep.successes = detail::count_successes(trials, jobs, [&](std::uint64_t i) {
        Rng rng(derive_seed(seed, i));
        DimExpander x;
        x.field = f;
        x.n = n;
        x.eps = eps;
        x.alpha = alpha;
        for (std::size_t j = 0; j < degree; ++j) x.maps.push_back(rng.matrix(f, n, n));
        return verify_expander(x, detail::inner_options(budget)).pass;
    });
    return rep;
}

/// Random collections of k matrices t x n; success = exhaustive (r, eps) lossy condensing in `mode`.
inline MonteCarloReport montecarlo_lossy_seeded(const FieldPtr& f, std::size_t n, std::size_t t, std::size_t k,
                                                std::size_t r, const Rational& eps, RankMode mode, std::uint64_t seed,
                                                std::uint64_t trials, std::uint64_t budget = kDefaultBudget,
                                                unsigned jobs = 1) {
    MonteCarloReport rep;
    rep.kind = "lossy-seeded";
    rep.params = "q=" + std::to_string(f->order()) + " n=" + std::to_string(n) + " t=" + std::to_string(t) +
                 " k=" + std::to_string(k) + " r=" + std::to_string(r) + " eps=" + to_string(eps) +
                 " mode=" + to_string(mode);
    rep.seed = seed;
    rep.trials = trials;
    rep.successes = detail::count_successes(trials, jobs, [&](std::uint64_t i) {
        Rng rng(derive_seed(seed, i));
        SeededCondenser c;
        c.field = f;
        c.n = n;
        c.t = t;
        for (std::size_t j = 0; j < k; ++j) c.maps.push_back(rng.matrix(f, t, n));
        c.claim = SeededClaim::lossy(r, eps, mode);
        return verify_seeded(c, detail::inner_options(budget)).pass;
    });
    return rep;
}

/// Random E in F^{t x nm}; success = exhaustive (r, s, eps) two-source condensing.
inline MonteCarloReport montecarlo_two_source(const FieldPtr& f, std::size_t n, std::size_t m, std::size_t t,
                                              std::size_t r, std::size_t s, const Rational& eps, std::uint64_t seed,
                                              std::uint64_t trials, std::uint64_t budget = kDefaultBudget,
                                              unsigned jobs = 1) {
    MonteCarloReport rep;
    rep.kind = "two-source";
    rep.params = "q=" + std::to_string(f->order()) + " n=" + std::to_string(n) + " m=" + std::to_string(m) +
                 " t=" + std::to_string(t) + " r=" + std::to_string(r) + " s=" + std::to_string(s) +
                 " eps=" + to_string(eps);
    rep.seed = seed;
    rep.trials = trials;
    rep.successes = detail::count_successes(trials, jobs, [&](std::uint64_t i) {
        Rng rng(derive_seed(seed, i));
        BilinearCondenser b;
        b.field = f;
        b.n = n;
        b.m = m;
        b.t = t;
        b.E = rng.matrix(f, t, n * m);
        b.claim = {r, s, eps, false, false};
        return verify_two_source(b, detail::inner_options(budget)).pass;
    });
    return rep;
}

/// Upper end of an outward-rounded enclosure of e^{q/(q-1)^2} q^{r(n-r)}.
inline long double subspace_count_bound(std::uint64_t q, std::size_t n, std::size_t r) {
    detail::require(q >= 2 && r <= n, "subspace_count_bound: need q >= 2 and r <= n");
    detail::Mpfr x, y;
    mpfr_set_ui(x.get(), static_cast<unsigned long>(q), MPFR_RNDU);
    mpfr_div_ui(x.get(), x.get(), static_cast<unsigned long>((q - 1) * (q - 1)), MPFR_RNDU);
    mpfr_exp(x.get(), x.get(), MPFR_RNDU);
    mpfr_set_ui(y.get(), static_cast<unsigned long>(q), MPFR_RNDU);
    mpfr_pow_ui(y.get(), y.get(), static_cast<unsigned long>(r * (n - r)), MPFR_RNDU);
    mpfr_mul(x.get(), x.get(), y.get(), MPFR_RNDU);
    return mpfr_get_ld(x.get(), MPFR_RNDU);
}

struct SubspaceCountReport {
    MonteCarloReport sample; // successes = rank-r draws
    std::uint64_t distinct = 0;
    std::uint64_t exact = 0;
    long double bound = 0;
};

/// Draws random r x n matrices and counts the distinct r-dimensional row spans seen.
inline SubspaceCountReport montecarlo_subspace_count(const FieldPtr& f, std::size_t n, std::size_t r,
                                                     std::uint64_t seed, std::uint64_t trials) {
    SubspaceCountReport rep;
    rep.sample.kind = "subspace-count";
    rep.sample.params = "q=" + std::to_string(f->order()) + " n=" + std::to_string(n) + " r=" + std::to_string(r);
    rep.sample.seed = seed;
    rep.sample.trials = trials;
    std::set<std::vector<Elem>> seen;
    for (std::uint64_t i = 0; i < trials; ++i) {
        Rng rng(derive_seed(seed, i));
        FMatrix m = rng.matrix(f, r, n);
        auto e = rref(m);
        if (e.pivots.size() != r) continue;
        ++rep.sample.successes;
        seen.insert(e.reduced.data());
    }
    rep.distinct = seen.size();
    rep.exact = count_subspaces(*f, n, r);
    rep.bound = subspace_count_bound(f->order(), n, r);
    return rep;
}

} // namespace rankforge
