#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "rankforge/bounds.hpp"
#include "rankforge/montecarlo.hpp"
#include "rankforge/report.hpp"
#include "rankforge/twosource.hpp"
#include "separation.hpp"

using namespace rankforge;

namespace {

long double tau(std::uint64_t q) {
    return static_cast<long double>(q) / ((q - 1.0L) * (q - 1.0L) * std::log(static_cast<long double>(q)));
}

} // namespace

TEST(Separation, ProjectedFamily) {
    auto base = separation::base_condenser();
    EXPECT_EQ(base.maps.size(), 3u);
    EXPECT_EQ(kernel(vstack(base.maps)).cols(), 0u);
    EXPECT_TRUE(verify_seeded(base).pass);
    auto eq = base;
    eq.claim = SeededClaim::lossy(2, Rational(1, 2), RankMode::Eq);
    EXPECT_TRUE(verify_seeded(eq).pass);

    auto good = separation::projected(base, SeededClaim::lossy(3, Rational(2, 3), RankMode::Eq));
    EXPECT_TRUE(verify_seeded(good).pass);

    for (Rational d : {Rational(1, 100), Rational(1, 2), Rational(9, 10), Rational(99, 100)}) {
        auto bad = separation::projected(base, SeededClaim::lossy(1, 1 - d, RankMode::Eq));
        auto rep = verify_seeded(bad);
        EXPECT_FALSE(rep.pass) << to_string(d);
        ASSERT_EQ(rep.witness.size(), 1u);
        const FMatrix& w = rep.witness[0];
        // the witness line lies in the kernel of the projection
        EXPECT_EQ(w, FMatrix(w.field(), 1, 4, {0, 0, 0, 1}));
        for (const auto& e : bad.maps) EXPECT_TRUE((e * w.transpose()).is_zero());
    }
}

TEST(Determinism, ShardCountsGiveIdenticalReports) {
    auto b = pruned_lossless(make_field(7, 1), 3, 3, 1, 1);
    auto x = build_expander(make_field(29, 1), 4, 2, Rational(1, 4), Rational(1, 4), Rational(0));
    for (unsigned jobs : {2u, 3u, 5u}) {
        VerifyOptions one, many;
        many.jobs = jobs;
        auto a1 = verify_two_source(b, one), a2 = verify_two_source(b, many);
        EXPECT_EQ(to_json(a1), to_json(a2));
        auto e1 = verify_expander(x, one), e2 = verify_expander(x, many);
        EXPECT_EQ(to_json(e1), to_json(e2));
    }
    auto z = b;
    z.E = FMatrix(z.field, z.t, 9);
    VerifyOptions many;
    many.jobs = 4;
    EXPECT_EQ(to_json(verify_two_source(z)), to_json(verify_two_source(z, many)));
}

TEST(Determinism, RepeatedRunsAndSampledSeeds) {
    auto c = lossless_collection(make_field(7, 1), 5, 4, 2);
    EXPECT_EQ(to_json(verify_seeded(c)), to_json(verify_seeded(c)));
    VerifyOptions s;
    s.sampled = true;
    s.seed = 5;
    s.trials = 300;
    auto a = to_json(verify_seeded(c, s));
    EXPECT_EQ(a, to_json(verify_seeded(c, s)));
    EXPECT_EQ(a["mode"], "sampled");
    EXPECT_EQ(a["seed"], 5);
}

TEST(WitnessSoundness, FailingObjectsRecheckInIsolation) {
    // two-source: a rank-deficient E
    auto f3 = make_field(3, 1);
    BilinearCondenser b{f3, 2, 2, 2, FMatrix::from_rows(f3, {{1, 0, 0, 0}, {0, 0, 0, 1}}), {1, 1, Rational(0), false, false}};
    auto rep = verify_two_source(b);
    ASSERT_FALSE(rep.pass);
    ASSERT_EQ(rep.witness.size(), 2u);
    FMatrix img = b.E * tensor(rep.witness[0].transpose(), rep.witness[1].transpose());
    EXPECT_LT(static_cast<std::int64_t>(rank(img)), rep.threshold);
    EXPECT_EQ(static_cast<std::int64_t>(rank(img)), rep.worst);

    // expander: a single projection cannot expand lines by 2
    DimExpander x{f3, 3, {FMatrix::from_rows(f3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}})}, Rational(1, 3), Rational(1)};
    auto xr = verify_expander(x);
    ASSERT_FALSE(xr.pass);
    EXPECT_TRUE((x.maps[0] * xr.witness[0].transpose()).is_zero());

    // design: one hyperplane against lines inside it
    SubspaceDesign d{f3, 3, {FMatrix::from_rows(f3, {{1, 0, 0}, {0, 1, 0}})}, Guarantee::Strong, 1, Rational(0)};
    auto dr = verify_design(d);
    ASSERT_FALSE(dr.pass);
    EXPECT_EQ(rank(vstack({d.subspaces[0], dr.witness[0]})), 2u); // the line lies in H
}

TEST(Bounds, ReferenceExamples) {
    auto a = bound_dim_expander(4, Rational(2), Rational(1, 4));
    EXPECT_TRUE(a.exact);
    EXPECT_EQ(a.value, Rational(5));
    EXPECT_EQ(a.minimal, 5);
    auto b = bound_lossy_seeded(4, 8, 4, 2, Rational(1, 2), RankMode::Le);
    EXPECT_EQ(b.value, Rational(18));
    EXPECT_EQ(b.minimal, 18);
    auto c = bound_two_source(4, 3, 3, 1, 1, Rational(0), TwoSourceMode::Lossless);
    EXPECT_EQ(c.minimal, 7);
    EXPECT_NEAR(static_cast<double>(c.lower), 6 + 2 * static_cast<double>(tau(4)), 1e-9);
}

TEST(Bounds, DerivedExamples) {
    auto eq = bound_lossy_seeded(4, 8, 4, 2, Rational(1, 2), RankMode::Eq);
    EXPECT_EQ(eq.value, Rational(17, 5));
    EXPECT_EQ(eq.minimal, 4);
    auto q2 = bound_dim_expander(2, Rational(2), Rational(1, 4));
    EXPECT_FALSE(q2.exact);
    const long double expect = 4 + 2 * tau(2); // 4 + 4 / ln 2
    EXPECT_LE(q2.lower, expect + 1e-12L);
    EXPECT_GE(q2.upper, expect - 1e-12L);
    EXPECT_LT(q2.upper - q2.lower, 1e-9L);
    EXPECT_EQ(q2.minimal, 10);
    auto two = bound_two_source(4, 16, 16, 2, 2, Rational(1, 2), TwoSourceMode::Eq);
    EXPECT_EQ(two.minimal, 35);
    auto le = bound_two_source(4, 16, 16, 2, 2, Rational(1, 2), TwoSourceMode::Le);
    EXPECT_EQ(le.minimal, static_cast<std::int64_t>(std::ceil(16.0 + 32.0 + 2.0 + 2 * static_cast<double>(tau(4)))));
}

TEST(Bounds, ErrorsAndInapplicable) {
    EXPECT_THROW(bound_dim_expander(4, Rational(4), Rational(1, 4)), InvalidArgument);
    auto edge = bound_lossy_seeded(4, 8, 1, 2, Rational(1, 2), RankMode::Le); // t = (1 - eps) r
    EXPECT_FALSE(edge.applicable);
    EXPECT_EQ(edge.threshold_text(), "inapplicable");
    EXPECT_THROW(bound_two_source(4, 3, 3, 1, 1, Rational(0), TwoSourceMode::Eq), InvalidArgument);
    EXPECT_THROW(bound_two_source(4, 3, 3, 1, 1, Rational(1), TwoSourceMode::Eq), InvalidArgument);
}

TEST(Bounds, DimExpanderSmallEpsLimit) {
    auto a = bound_dim_expander(5, Rational(1), Rational(1, 1000000));
    EXPECT_GT(a.value, Rational(3));
    EXPECT_LT(a.value, Rational(3) + Rational(1, 100000));
}

TEST(Bounds, LossyMonotoneInTAndEps) {
    for (std::uint64_t q : {2u, 3u, 4u, 7u})
        for (RankMode mode : {RankMode::Le, RankMode::Eq})
            for (std::size_t r = 1; r <= 4; ++r)
                for (std::int64_t e = 1; e <= 9; ++e) {
                    Rational eps(e, 10);
                    for (std::size_t t = r; t < 12; ++t) {
                        auto a = bound_lossy_seeded(q, 10, t, r, eps, mode);
                        auto b = bound_lossy_seeded(q, 10, t + 1, r, eps, mode);
                        if (a.applicable && a.minimal > 0 && b.applicable && b.minimal > 0) {
                            EXPECT_LE(b.minimal, a.minimal);
                            if (a.exact) {
                                EXPECT_LE(b.value, a.value);
                            }
                        }
                        if (e < 9) {
                            auto c = bound_lossy_seeded(q, 10, t, r, Rational(e + 1, 10), mode);
                            if (a.applicable && a.minimal > 0 && c.applicable && c.minimal > 0) {
                                EXPECT_LE(c.minimal, a.minimal);
                            }
                        }
                    }
                }
}

TEST(MonteCarlo, RankFrequency) {
    auto f2 = make_field(2, 1);
    auto rep = montecarlo_rank(f2, 4, 4, 3, 42, 100000);
    const long double exact = 1 - 20160.0L / 65536.0L;
    ASSERT_TRUE(rep.exact.has_value());
    EXPECT_NEAR(static_cast<double>(*rep.exact), static_cast<double>(exact), 1e-15);
    EXPECT_LE(std::fabs(static_cast<double>(rep.frequency() - exact)), 5 * static_cast<double>(rep.stderr_()));
}

TEST(MonteCarlo, ExactProbabilityMatchesEnumeration) {
    auto f2 = make_field(2, 1);
    std::uint64_t low = 0;
    for (std::uint64_t code = 0; code < 512; ++code) {
        std::vector<std::vector<std::int64_t>> m(3, std::vector<std::int64_t>(3));
        for (int i = 0; i < 9; ++i) m[i / 3][i % 3] = (code >> i) & 1;
        low += oracle::rank_mod_p(m, 2) <= 1;
    }
    auto rep = montecarlo_rank(f2, 3, 3, 1, 1, 0);
    EXPECT_NEAR(static_cast<double>(*rep.exact), low / 512.0, 1e-15);
}

TEST(MonteCarlo, EmptyAndDeterministic) {
    auto f2 = make_field(2, 1);
    auto empty = montecarlo_rank(f2, 4, 4, 3, 1, 0);
    EXPECT_EQ(empty.trials, 0u);
    EXPECT_EQ(empty.successes, 0u);
    auto a = montecarlo_dim_expander(f2, 3, 5, Rational(1, 3), Rational(2), 9, 40, kDefaultBudget, 1);
    auto b = montecarlo_dim_expander(f2, 3, 5, Rational(1, 3), Rational(2), 9, 40, kDefaultBudget, 3);
    EXPECT_EQ(a.successes, b.successes);
    EXPECT_GT(a.successes, 0u);
    auto l1 = montecarlo_lossy_seeded(make_field(3, 1), 3, 2, 3, 2, Rational(1, 2), RankMode::Le, 4, 30);
    auto l2 = montecarlo_lossy_seeded(make_field(3, 1), 3, 2, 3, 2, Rational(1, 2), RankMode::Le, 4, 30, kDefaultBudget, 2);
    EXPECT_EQ(l1.successes, l2.successes);
    auto t1 = montecarlo_two_source(f2, 2, 2, 3, 1, 1, Rational(0), 8, 30);
    auto t2 = montecarlo_two_source(f2, 2, 2, 3, 1, 1, Rational(0), 8, 30, kDefaultBudget, 4);
    EXPECT_EQ(t1.successes, t2.successes);
}

TEST(MonteCarlo, SubspaceCountsNeverExceedBound) {
    for (auto [p, n, r] : std::vector<std::array<std::size_t, 3>>{{2, 4, 2}, {3, 3, 1}, {2, 5, 2}, {5, 3, 1}}) {
        auto f = make_field(static_cast<std::uint32_t>(p), 1);
        auto rep = montecarlo_subspace_count(f, n, r, 11, 3000);
        EXPECT_LE(rep.distinct, rep.exact);
        EXPECT_LE(static_cast<long double>(rep.exact), rep.bound);
        long double plain = std::exp((long double)p / ((p - 1.0L) * (p - 1.0L))) * std::pow((long double)p, (long double)(r * (n - r)));
        EXPECT_NEAR(static_cast<double>(rep.bound / plain), 1.0, 1e-12);
    }
}

TEST(Report, JsonKeys) {
    auto rep = verify_seeded(lossless_collection(make_field(7, 1), 5, 3, 2));
    auto j = to_json(rep);
    for (const char* k : {"property", "mode", "worst", "threshold", "pass", "witness"}) EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_EQ(j["property"], "strong-lossless");
    EXPECT_EQ(j["mode"], "exhaustive");
    EXPECT_EQ(j["threshold"], 3);
    auto t = to_json(bound_dim_expander(4, Rational(2), Rational(1, 4)));
    EXPECT_EQ(t["minimal"], 5);
    EXPECT_NE(to_text(bound_dim_expander(4, Rational(2), Rational(1, 4))).find("d >= 5"), std::string::npos);
}
