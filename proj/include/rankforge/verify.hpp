#pragma once

/// Brute-force verifiers for seeded condensers, subspace designs, dimension expanders and
/// bilinear two-source condensers.
///
/// Exhaustive mode walks the canonical RREF enumeration; sampled mode draws subspace indices
/// uniformly with a per-trial seed derived from the master seed, so results do not depend on
/// the number of worker threads. Shard results combine by (statistic, smallest index).

#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "rankforge/bilinear.hpp"
#include "rankforge/expander.hpp"
#include "rankforge/rng.hpp"
#include "rankforge/seeded.hpp"
#include "rankforge/subspaces.hpp"

namespace rankforge {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

struct VerifyOptions {
    std::uint64_t budget = kDefaultBudget;
    bool sampled = false;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0; // per checked dimension (or rank pair)
    unsigned jobs = 1;
};

struct VerifyReport {
    std::string object;
    std::string property;
    bool sampled = false;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::int64_t worst = 0;
    std::int64_t threshold = 0;
    std::string comparison; // "<=" : pass iff worst <= threshold; ">=" : pass iff worst >= threshold
    bool pass = true;
    std::size_t dim = 0;  // subspace dimension of the reported case
    std::size_t dim2 = 0; // second source rank (two-source only)
    std::vector<FMatrix> witness;
    std::uint64_t checked = 0;

    std::string mode() const { return sampled ? "sampled" : "exhaustive"; }
};

namespace detail {

struct Best {
    std::int64_t value = 0;
    std::uint64_t index = 0;
    bool any = false;
};

inline void offer(Best& b, std::int64_t v, std::uint64_t idx, bool maximize) {
    if (!b.any || (maximize ? v > b.value : v < b.value) || (v == b.value && idx < b.index)) b = {v, idx, true};
}

/// Splits [0, count) into `jobs` contiguous ranges and merges the per-range optima.
template <class Work>
Best run_shards(std::uint64_t count, unsigned jobs, bool maximize, Work work) {
    std::uint64_t j = std::max<std::uint64_t>(1, std::min<std::uint64_t>(jobs, count));
    if (j <= 1) return work(0, count);
    std::vector<Best> parts(j);
    std::vector<std::exception_ptr> errors(j);
    std::vector<std::thread> threads;
    for (std::uint64_t s = 0; s < j; ++s) {
        std::uint64_t begin = count / j * s + std::min(s, count % j);
        std::uint64_t end = begin + count / j + (s < count % j ? 1 : 0);
        threads.emplace_back([&, s, begin, end] {
            try {
                parts[s] = work(begin, end);
            } catch (...) {
                errors[s] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    Best out;
    for (const auto& p : parts)
        if (p.any) offer(out, p.value, p.index, maximize);
    return out;
}

/// Optimum of stat(basis) over the s-dimensional subspaces of F^n (or over sampled ones).
/// `make_stat` builds a per-shard callable taking a row-major s x n basis pointer.
template <class MakeStat>
Best scan_subspaces(const FieldPtr& f, std::size_t n, std::size_t s, bool maximize, const VerifyOptions& opt,
                    std::uint64_t salt, MakeStat make_stat) {
    const std::uint64_t total = count_subspaces(*f, n, s);
    if (opt.sampled) {
        const std::uint64_t stream = derive_seed(opt.seed, salt);
        return run_shards(opt.trials, opt.jobs, maximize, [&](std::uint64_t b, std::uint64_t e) {
            auto stat = make_stat();
            Best best;
            for (std::uint64_t i = b; i < e; ++i) {
                Rng rng(derive_seed(stream, i));
                std::uint64_t idx = rng.below(total);
                SubspaceIter it(f, n, s, idx, idx + 1);
                it.next();
                offer(best, stat(it.basis()), idx, maximize);
            }
            return best;
        });
    }
    return run_shards(total, opt.jobs, maximize, [&](std::uint64_t b, std::uint64_t e) {
        auto stat = make_stat();
        Best best;
        SubspaceIter it(f, n, s, b, e);
        while (it.next()) offer(best, stat(it.basis()), it.index(), maximize);
        return best;
    });
}

inline std::uint64_t checked_count(const Field& f, std::size_t n, std::size_t s, const VerifyOptions& opt) {
    return opt.sampled ? opt.trials : count_subspaces(f, n, s);
}

inline void check_budget(std::uint64_t work, const VerifyOptions& opt, const std::string& what) {
    if (!opt.sampled && work > opt.budget) throw BudgetExceeded(what + ": exhaustive enumeration too large", work, opt.budget);
}

inline std::string field_name(const Field& f) {
    return "F_" + std::to_string(f.order());
}

/// Per-subspace statistics of a seeded collection on an s x n basis B, via E B^T.
class SeededStat {
public:
    SeededStat(const SeededCondenser& c, std::size_t s) : c_(c), s_(s), buf_(c.t * s) {}

    /// rank(E_i B^T).
    std::size_t rank_of(std::size_t i, const Elem* b) {
        const Field& f = *c_.field;
        const FMatrix& e = c_.maps[i];
        const std::size_t t = c_.t, n = c_.n;
        const Elem* ed = e.data().data();
        for (std::size_t r = 0; r < t; ++r)
            for (std::size_t c = 0; c < s_; ++c) {
                Elem acc = 0;
                const Elem* er = ed + r * n;
                const Elem* bc = b + c * n;
                for (std::size_t j = 0; j < n; ++j)
                    if (bc[j] != 0 && er[j] != 0) acc = f.add(acc, f.mul(er[j], bc[j]));
                buf_[r * s_ + c] = acc;
            }
        return eliminate(f, buf_.data(), t, s_, s_, false);
    }

    /// Sum of deficiencies s - rank(E B^T).
    std::int64_t deficiency_sum(const Elem* b) {
        std::int64_t sum = 0;
        for (std::size_t i = 0; i < c_.maps.size(); ++i) sum += static_cast<std::int64_t>(s_ - rank_of(i, b));
        return sum;
    }

    /// Number of maps with rank(E B^T) < s.
    std::int64_t deficient_count(const Elem* b) {
        std::int64_t cnt = 0;
        for (std::size_t i = 0; i < c_.maps.size(); ++i) cnt += rank_of(i, b) < s_ ? 1 : 0;
        return cnt;
    }

    /// max_E rank(E B^T), stopping early at full rank.
    std::int64_t max_rank(const Elem* b) {
        std::size_t best = 0;
        for (std::size_t i = 0; i < c_.maps.size() && best < s_; ++i) best = std::max(best, rank_of(i, b));
        return static_cast<std::int64_t>(best);
    }

private:
    const SeededCondenser& c_;
    std::size_t s_;
    std::vector<Elem> buf_;
};

/// dim(H_i cap V) = dim H_i + dim V - rank [H_i; V].
class DesignStat {
public:
    DesignStat(const SubspaceDesign& d, std::size_t s) : d_(d), s_(s) {
        std::size_t mx = 0;
        for (const auto& h : d.subspaces) mx = std::max(mx, h.rows());
        buf_.resize((mx + s) * d.n);
    }

    std::size_t intersection_dim(std::size_t i, const Elem* b) {
        const FMatrix& h = d_.subspaces[i];
        const std::size_t n = d_.n;
        std::copy(h.data().begin(), h.data().end(), buf_.begin());
        std::copy(b, b + s_ * n, buf_.begin() + static_cast<std::ptrdiff_t>(h.rows() * n));
        std::size_t rk = eliminate(*d_.field, buf_.data(), h.rows() + s_, n, n, false);
        return h.rows() + s_ - rk;
    }

    std::int64_t sum(const Elem* b) {
        std::int64_t total = 0;
        for (std::size_t i = 0; i < d_.subspaces.size(); ++i) total += static_cast<std::int64_t>(intersection_dim(i, b));
        return total;
    }

    std::int64_t count(const Elem* b) {
        std::int64_t total = 0;
        for (std::size_t i = 0; i < d_.subspaces.size(); ++i) total += intersection_dim(i, b) > 0 ? 1 : 0;
        return total;
    }

private:
    const SubspaceDesign& d_;
    std::size_t s_;
    std::vector<Elem> buf_;
};

/// dim sum_i A_i(V) for an s x n basis of V.
class ExpansionStat {
public:
    ExpansionStat(const DimExpander& x, std::size_t s) : x_(x), s_(s), buf_(x.maps.size() * s * x.n) {}

    std::int64_t operator()(const Elem* b) {
        const Field& f = *x_.field;
        const std::size_t n = x_.n;
        std::size_t row = 0;
        for (const auto& a : x_.maps) {
            const Elem* ad = a.data().data();
            for (std::size_t c = 0; c < s_; ++c, ++row) {
                const Elem* bc = b + c * n;
                for (std::size_t i = 0; i < n; ++i) {
                    Elem acc = 0;
                    for (std::size_t j = 0; j < n; ++j)
                        if (bc[j] != 0) acc = f.add(acc, f.mul(ad[i * n + j], bc[j]));
                    buf_[row * n + i] = acc;
                }
            }
        }
        return static_cast<std::int64_t>(eliminate(f, buf_.data(), row, n, n, false));
    }

private:
    const DimExpander& x_;
    std::size_t s_;
    std::vector<Elem> buf_;
};

struct DimOutcome {
    std::size_t dim;
    Best best;
    std::int64_t threshold;
};

/// Picks the checked dimension with the least slack worst - threshold (ties: smallest dim).
inline const DimOutcome* least_slack(const std::vector<DimOutcome>& outs) {
    const DimOutcome* pick = nullptr;
    for (const auto& o : outs)
        if (!pick || o.best.value - o.threshold < pick->best.value - pick->threshold) pick = &o;
    return pick;
}

} // namespace detail

inline VerifyReport verify_seeded(const SeededCondenser& c, const VerifyOptions& opt = {}) {
    c.validate();
    VerifyReport rep;
    rep.object = "seeded condenser over " + detail::field_name(*c.field) + " n=" + std::to_string(c.n) +
                 " t=" + std::to_string(c.t) + " count=" + std::to_string(c.maps.size());
    rep.sampled = opt.sampled;
    rep.seed = opt.seed;
    rep.trials = opt.trials;
    const std::size_t r = c.claim.r;

    if (c.claim.lossless()) {
        const bool strong = c.claim.kind == Guarantee::Strong;
        rep.property = strong ? "strong-lossless" : "weak-lossless";
        detail::check_budget(count_subspaces(*c.field, c.n, r) * std::max<std::size_t>(1, c.maps.size()), opt,
                             "verify_seeded");
        auto best = detail::scan_subspaces(c.field, c.n, r, true, opt, r, [&] {
            return [st = detail::SeededStat(c, r), strong](const Elem* b) mutable {
                return strong ? st.deficiency_sum(b) : st.deficient_count(b);
            };
        });
        rep.dim = r;
        rep.worst = best.value;
        rep.threshold = floor_of(c.claim.L);
        rep.comparison = "<=";
        rep.pass = rep.worst <= rep.threshold;
        rep.checked = detail::checked_count(*c.field, c.n, r, opt);
        if (best.any) rep.witness.push_back(SubspaceIter::at(c.field, c.n, r, best.index));
        return rep;
    }

    rep.property = c.claim.mode == RankMode::Le ? "lossy-le" : "lossy-eq";
    std::vector<std::size_t> dims;
    if (c.claim.mode == RankMode::Le)
        for (std::size_t s = 1; s <= r; ++s) dims.push_back(s);
    else
        dims.push_back(r);
    std::uint64_t work = 0;
    for (auto s : dims) work += count_subspaces(*c.field, c.n, s);
    detail::check_budget(work, opt, "verify_seeded");

    std::vector<detail::DimOutcome> outs;
    for (auto s : dims) {
        auto best = detail::scan_subspaces(c.field, c.n, s, false, opt, s, [&] {
            return [st = detail::SeededStat(c, s)](const Elem* b) mutable { return st.max_rank(b); };
        });
        auto thr = ceil_of((1 - c.claim.eps) * static_cast<std::int64_t>(s));
        outs.push_back({s, best, thr});
        rep.checked += detail::checked_count(*c.field, c.n, s, opt);
    }
    const auto* pick = detail::least_slack(outs);
    rep.pass = true;
    for (const auto& o : outs) rep.pass = rep.pass && o.best.value >= o.threshold;
    rep.dim = pick->dim;
    rep.worst = pick->best.value;
    rep.threshold = pick->threshold;
    rep.comparison = ">=";
    if (pick->best.any) rep.witness.push_back(SubspaceIter::at(c.field, c.n, pick->dim, pick->best.index));
    return rep;
}

inline VerifyReport verify_design(const SubspaceDesign& d, const VerifyOptions& opt = {}) {
    d.validate();
    VerifyReport rep;
    rep.object = "subspace design over " + detail::field_name(*d.field) + " n=" + std::to_string(d.n) +
                 " count=" + std::to_string(d.subspaces.size());
    const bool strong = d.kind == Guarantee::Strong;
    rep.property = strong ? "strong-design" : "weak-design";
    rep.sampled = opt.sampled;
    rep.seed = opt.seed;
    rep.trials = opt.trials;
    detail::check_budget(count_subspaces(*d.field, d.n, d.r) * std::max<std::size_t>(1, d.subspaces.size()), opt,
                         "verify_design");
    auto best = detail::scan_subspaces(d.field, d.n, d.r, true, opt, d.r, [&] {
        return [st = detail::DesignStat(d, d.r), strong](const Elem* b) mutable {
            return strong ? st.sum(b) : st.count(b);
        };
    });
    rep.dim = d.r;
    rep.worst = best.value;
    rep.threshold = floor_of(d.L);
    rep.comparison = "<=";
    rep.pass = rep.worst <= rep.threshold;
    rep.checked = detail::checked_count(*d.field, d.n, d.r, opt);
    if (best.any) rep.witness.push_back(SubspaceIter::at(d.field, d.n, d.r, best.index));
    return rep;
}

/// Checks dims 1..floor(eps n) against ceil(alpha dim V).
inline VerifyReport verify_expander(const DimExpander& x, const VerifyOptions& opt = {}) {
    x.validate();
    VerifyReport rep;
    rep.object = "dimension expander over " + detail::field_name(*x.field) + " n=" + std::to_string(x.n) +
                 " degree=" + std::to_string(x.degree());
    rep.property = "expansion";
    rep.sampled = opt.sampled;
    rep.seed = opt.seed;
    rep.trials = opt.trials;
    rep.comparison = ">=";
    const auto top = static_cast<std::size_t>(floor_of(x.eps * static_cast<std::int64_t>(x.n)));
    std::uint64_t work = 0;
    for (std::size_t s = 1; s <= top; ++s) work += count_subspaces(*x.field, x.n, s);
    detail::check_budget(work, opt, "verify_expander");
    std::vector<detail::DimOutcome> outs;
    for (std::size_t s = 1; s <= top; ++s) {
        auto best = detail::scan_subspaces(x.field, x.n, s, false, opt, s, [&] { return detail::ExpansionStat(x, s); });
        outs.push_back({s, best, ceil_of(x.alpha * static_cast<std::int64_t>(s))});
        rep.checked += detail::checked_count(*x.field, x.n, s, opt);
    }
    rep.pass = true;
    for (const auto& o : outs) rep.pass = rep.pass && o.best.value >= o.threshold;
    if (const auto* pick = detail::least_slack(outs)) {
        rep.dim = pick->dim;
        rep.worst = pick->best.value;
        rep.threshold = pick->threshold;
        if (pick->best.any) rep.witness.push_back(SubspaceIter::at(x.field, x.n, pick->dim, pick->best.index));
    }
    return rep;
}

namespace detail {

/// rank E (A (x) B) for bases A (r x n rows) and B (s x m rows), with E (I_n (x) B^T) cached per B.
class PairRank {
public:
    PairRank(const BilinearCondenser& bc, std::size_t r, std::size_t s)
        : b_(bc), r_(r), s_(s), fb_(bc.t * bc.n * s), out_(bc.t * r * s) {}

    void set_b(const Elem* brow) {
        const Field& f = *b_.field;
        const std::size_t n = b_.n, m = b_.m;
        for (std::size_t k = 0; k < b_.t; ++k)
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t c = 0; c < s_; ++c) {
                    Elem acc = 0;
                    for (std::size_t j = 0; j < m; ++j) {
                        Elem w = brow[c * m + j];
                        if (w != 0) acc = f.add(acc, f.mul(b_.E(k, a * m + j), w));
                    }
                    fb_[(k * n + a) * s_ + c] = acc;
                }
    }

    std::int64_t rank_with(const Elem* arow) {
        const Field& f = *b_.field;
        const std::size_t n = b_.n, w = r_ * s_;
        for (std::size_t k = 0; k < b_.t; ++k)
            for (std::size_t c1 = 0; c1 < r_; ++c1)
                for (std::size_t c2 = 0; c2 < s_; ++c2) {
                    Elem acc = 0;
                    for (std::size_t a = 0; a < n; ++a) {
                        Elem v = arow[c1 * n + a];
                        if (v != 0) acc = f.add(acc, f.mul(v, fb_[(k * n + a) * s_ + c2]));
                    }
                    out_[k * w + c1 * s_ + c2] = acc;
                }
        return static_cast<std::int64_t>(eliminate(f, out_.data(), b_.t, w, w, false));
    }

private:
    const BilinearCondenser& b_;
    std::size_t r_, s_;
    std::vector<Elem> fb_, out_;
};

} // namespace detail

/// Two-source check: every pair of subspaces with the claimed ranks (and all smaller ranks on
/// sources marked <=) has rank E (A (x) B) >= ceil((1 - eps) r s).
inline VerifyReport verify_two_source(const BilinearCondenser& b, const VerifyOptions& opt = {}) {
    b.validate();
    VerifyReport rep;
    rep.object = "bilinear condenser over " + detail::field_name(*b.field) + " n=" + std::to_string(b.n) +
                 " m=" + std::to_string(b.m) + " t=" + std::to_string(b.t);
    rep.property = "two-source";
    rep.sampled = opt.sampled;
    rep.seed = opt.seed;
    rep.trials = opt.trials;
    rep.comparison = ">=";
    std::vector<std::pair<std::size_t, std::size_t>> ranks;
    if (b.claim.r >= 1 && b.claim.s >= 1)
        for (std::size_t r = b.claim.le_r ? 1 : b.claim.r; r <= b.claim.r; ++r)
            for (std::size_t s = b.claim.le_s ? 1 : b.claim.s; s <= b.claim.s; ++s) ranks.emplace_back(r, s);
    std::uint64_t work = 0;
    for (auto [r, s] : ranks)
        work = detail::checked_add(work,
                                   detail::checked_mul(count_subspaces(*b.field, b.n, r),
                                                       count_subspaces(*b.field, b.m, s), "verify_two_source"),
                                   "verify_two_source");
    detail::check_budget(work, opt, "verify_two_source");

    struct Outcome {
        std::size_t r, s;
        detail::Best best;
        std::int64_t threshold;
        std::uint64_t count_b;
    };
    std::vector<Outcome> outs;
    std::uint64_t salt = 0;
    for (const auto& rs : ranks) {
        const std::size_t r = rs.first, s = rs.second;
        ++salt;
        const std::uint64_t ca = count_subspaces(*b.field, b.n, r);
        const std::uint64_t cb = count_subspaces(*b.field, b.m, s);
        detail::Best best;
        if (opt.sampled) {
            const std::uint64_t stream = derive_seed(opt.seed, salt);
            best = detail::run_shards(opt.trials, opt.jobs, false, [&](std::uint64_t lo, std::uint64_t hi) {
                detail::PairRank pr(b, r, s);
                detail::Best bb;
                for (std::uint64_t i = lo; i < hi; ++i) {
                    Rng rng(derive_seed(stream, i));
                    std::uint64_t ia = rng.below(ca), ib = rng.below(cb);
                    auto am = SubspaceIter::at(b.field, b.n, r, ia);
                    auto bm = SubspaceIter::at(b.field, b.m, s, ib);
                    pr.set_b(bm.data().data());
                    detail::offer(bb, pr.rank_with(am.data().data()), ia * cb + ib, false);
                }
                return bb;
            });
            rep.checked += opt.trials;
        } else {
            std::vector<Elem> as;
            as.reserve(ca * r * b.n);
            SubspaceIter ita(b.field, b.n, r);
            while (ita.next()) as.insert(as.end(), ita.basis(), ita.basis() + r * b.n);
            best = detail::run_shards(cb, opt.jobs, false, [&](std::uint64_t lo, std::uint64_t hi) {
                detail::PairRank pr(b, r, s);
                detail::Best bb;
                SubspaceIter itb(b.field, b.m, s, lo, hi);
                while (itb.next()) {
                    pr.set_b(itb.basis());
                    for (std::uint64_t ia = 0; ia < ca; ++ia)
                        detail::offer(bb, pr.rank_with(as.data() + ia * r * b.n), ia * cb + itb.index(), false);
                }
                return bb;
            });
            rep.checked += ca * cb;
        }
        auto thr = ceil_of((1 - b.claim.eps) * static_cast<std::int64_t>(r * s));
        outs.push_back({r, s, best, thr, cb});
    }
    rep.pass = true;
    const Outcome* pick = nullptr;
    for (const auto& o : outs) {
        rep.pass = rep.pass && o.best.value >= o.threshold;
        if (!pick || o.best.value - o.threshold < pick->best.value - pick->threshold) pick = &o;
    }
    if (pick) {
        rep.dim = pick->r;
        rep.dim2 = pick->s;
        rep.worst = pick->best.value;
        rep.threshold = pick->threshold;
        if (pick->best.any) {
            rep.witness.push_back(SubspaceIter::at(b.field, b.n, pick->r, pick->best.index / pick->count_b));
            rep.witness.push_back(SubspaceIter::at(b.field, b.m, pick->s, pick->best.index % pick->count_b));
        }
    }
    return rep;
}

/// rank E (A (x) B) for row bases A, B (used to re-check witnesses).
inline std::size_t two_source_rank(const BilinearCondenser& b, const FMatrix& a_rows, const FMatrix& b_rows) {
    FMatrix prod = b.E * tensor(a_rows.transpose(), b_rows.transpose());
    return rank(prod);
}

} // namespace rankforge
