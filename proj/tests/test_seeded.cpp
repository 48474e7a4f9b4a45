#include <gtest/gtest.h>

#include <set>

#include "oracle.hpp"
#include "rankforge/rng.hpp"
#include "rankforge/seeded.hpp"
#include "rankforge/verify.hpp"

using namespace rankforge;

namespace {

/// rank(E B^T) over F_p by plain integer arithmetic and the oracle elimination.
std::size_t oracle_rank_product(const FMatrix& e, const FMatrix& b, std::int64_t p) {
    std::vector<std::vector<std::int64_t>> prod(e.rows(), std::vector<std::int64_t>(b.rows(), 0));
    for (std::size_t i = 0; i < e.rows(); ++i)
        for (std::size_t c = 0; c < b.rows(); ++c) {
            std::int64_t acc = 0;
            for (std::size_t j = 0; j < e.cols(); ++j) acc += std::int64_t(e(i, j)) * b(c, j);
            prod[i][c] = acc % p;
        }
    return oracle::rank_mod_p(prod, p);
}

std::int64_t oracle_deficiency_sum(const SeededCondenser& c, const FMatrix& b, std::int64_t p) {
    std::int64_t s = 0;
    for (const auto& e : c.maps) s += static_cast<std::int64_t>(b.rows() - oracle_rank_product(e, b, p));
    return s;
}

/// Random n x r matrix of rank r.
FMatrix random_full_rank(Rng& rng, const FieldPtr& f, std::size_t n, std::size_t r) {
    while (true) {
        FMatrix m = rng.matrix(f, n, r);
        if (rank(m) == r) return m;
    }
}

} // namespace

TEST(FoldedWronskian, Examples) {
    auto f7 = make_field(7, 1);
    FElem w{f7, 3};
    EXPECT_EQ(folded_wronskian(f7, w, 2, 3, {f7, 1}), FMatrix::from_rows(f7, {{1, 1, 1}, {1, 3, 2}}));
    EXPECT_EQ(folded_wronskian(f7, w, 2, 3, {f7, 2}), FMatrix::from_rows(f7, {{1, 2, 4}, {1, 6, 1}}));
    EXPECT_EQ(folded_wronskian(f7, w, 1, 4, {f7, 1}), FMatrix::from_rows(f7, {{1, 1, 1, 1}}));
}

TEST(FoldedWronskian, Errors) {
    auto f7 = make_field(7, 1);
    EXPECT_THROW(folded_wronskian(f7, {f7, 2}, 2, 4, {f7, 1}), InvalidArgument); // ord 2 = 3 < 4
    EXPECT_THROW(folded_wronskian(f7, {f7, 3}, 2, 4, {f7, 0}), InvalidArgument);
}

TEST(LosslessCollection, Examples) {
    auto c = lossless_collection(make_field(13, 1), 5, 3, 2);
    EXPECT_EQ(c.maps.size(), 4u);
    EXPECT_EQ(c.claim, SeededClaim::strong(2, Rational(3)));
    auto c2 = lossless_collection(make_field(7, 1), 5, 5, 1);
    EXPECT_EQ(c2.maps.size(), 1u);
    EXPECT_EQ(c2.claim.L, Rational(4, 5));
    EXPECT_THROW(lossless_collection(make_field(7, 1), 8, 3, 2), InvalidArgument);
    EXPECT_THROW(lossless_collection(make_field(7, 1), 5, 1, 2), InvalidArgument);
}

TEST(LosslessCollection, EvaluationPointsArePowersOfOmegaT) {
    auto f = make_field(13, 1);
    auto c = lossless_collection(f, 5, 3, 2);
    FElem w = find_element_of_order(f, 12);
    for (std::size_t j = 0; j < c.maps.size(); ++j) {
        Elem alpha = f->pow(w.code, static_cast<std::int64_t>(3 * j));
        EXPECT_EQ(c.maps[j], folded_wronskian(f, w, 3, 5, {f, alpha}));
    }
}

TEST(LossyCollection, Examples) {
    auto f17 = make_field(17, 1);
    auto c = lossy_collection(f17, 5, 3, 2, Rational(1, 2), 5);
    EXPECT_EQ(c.maps.size(), 5u);
    EXPECT_EQ(c.claim, SeededClaim::lossy(2, Rational(1, 2), RankMode::Le));
    auto padded = lossy_collection(f17, 5, 3, 2, Rational(1, 2), 7);
    ASSERT_EQ(padded.maps.size(), 7u);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(padded.maps[i], c.maps[i]);
    EXPECT_TRUE(padded.maps[5].is_zero());
    EXPECT_TRUE(padded.maps[6].is_zero());
    EXPECT_THROW(lossy_collection(make_field(5, 1), 5, 3, 2, Rational(1, 2)), InvalidArgument);
    EXPECT_THROW(lossy_collection(f17, 5, 3, 2, Rational(1, 2), 4), InvalidArgument);
    EXPECT_THROW(lossy_collection(f17, 5, 3, 2, Rational(0)), InvalidArgument);
}

TEST(LossyCollection, EvaluationPointsDistinct) {
    auto f17 = make_field(17, 1);
    auto c = lossy_collection(f17, 5, 3, 2, Rational(1, 2));
    std::set<Elem> alphas;
    for (const auto& m : c.maps) alphas.insert(m(0, 1)); // row 0 column 1 is alpha itself
    EXPECT_EQ(alphas.size(), c.maps.size());
    // the order rule: omega of order >= t * 5 = 15 is the first primitive root, 3
    EXPECT_EQ(c.maps[1](0, 1), f17->pow(3, 3));
}

TEST(Duality, DesignFromCondenserExamples) {
    auto f2 = make_field(2, 1);
    SeededCondenser id;
    id.field = f2;
    id.n = id.t = 3;
    id.maps = {FMatrix::identity(f2, 3)};
    id.claim = SeededClaim::strong(1, Rational(0));
    EXPECT_EQ(design_from_condenser(id).subspaces[0].rows(), 0u);
    SeededCondenser e1 = id;
    e1.t = 1;
    e1.maps = {FMatrix::from_rows(f2, {{1, 0, 0}})};
    EXPECT_EQ(design_from_condenser(e1).subspaces[0], FMatrix::from_rows(f2, {{0, 1, 0}, {0, 0, 1}}));

    auto c = lossless_collection(make_field(13, 1), 5, 3, 2);
    auto d = design_from_condenser(c);
    ASSERT_EQ(d.subspaces.size(), 4u);
    for (const auto& h : d.subspaces) EXPECT_EQ(h.rows(), 2u);
    EXPECT_EQ(d.kind, Guarantee::Strong);
    EXPECT_EQ(d.L, Rational(3));

    auto lossy = lossy_collection(make_field(17, 1), 5, 3, 2, Rational(1, 2));
    EXPECT_THROW(design_from_condenser(lossy), InvalidArgument);
}

TEST(Duality, CondenserFromDesignRoundTrip) {
    auto c = lossless_collection(make_field(13, 1), 5, 3, 2);
    auto d = design_from_condenser(c);
    auto back = condenser_from_design(d, 3);
    EXPECT_EQ(design_from_condenser(back).subspaces, d.subspaces);
    for (std::size_t i = 0; i < c.maps.size(); ++i) EXPECT_TRUE(same_row_span(back.maps[i], c.maps[i]));
    EXPECT_THROW(condenser_from_design(d, 2), InvalidArgument);

    auto f3 = make_field(3, 1);
    SubspaceDesign zero{f3, 3, {FMatrix(f3, 0, 3)}, Guarantee::Strong, 1, Rational(0)};
    EXPECT_EQ(rank(condenser_from_design(zero, 3).maps[0]), 3u);
    SubspaceDesign hyper{f3, 3, {FMatrix::from_rows(f3, {{1, 0, 2}, {0, 1, 1}})}, Guarantee::Weak, 1, Rational(0)};
    auto one = condenser_from_design(hyper, 1);
    ASSERT_EQ(one.maps[0].rows(), 1u);
    EXPECT_EQ(one.maps[0], FMatrix::from_rows(f3, {{1, 2, 1}}));
    EXPECT_TRUE((hyper.subspaces[0] * one.maps[0].transpose()).is_zero());
}

TEST(StrongBound, ExhaustiveF7N5R2AllT) {
    auto f7 = make_field(7, 1);
    for (std::size_t t : {2u, 3u, 4u, 5u}) {
        auto c = lossless_collection(f7, 5, t, 2);
        auto rep = verify_seeded(c);
        EXPECT_EQ(rep.threshold, floor_of(Rational(6, static_cast<std::int64_t>(t - 1)))) << t;
        EXPECT_TRUE(rep.pass) << "t=" << t << " worst=" << rep.worst;
        EXPECT_EQ(rep.checked, 140050u);
        // the reported worst case re-checks independently
        ASSERT_EQ(rep.witness.size(), 1u);
        EXPECT_EQ(oracle_deficiency_sum(c, rep.witness[0], 7), rep.worst);
        // strong implies weak with the same list bound
        auto weak = c;
        weak.claim = SeededClaim::weak(2, c.claim.L);
        EXPECT_TRUE(verify_seeded(weak).pass) << t;
    }
}

TEST(StrongBound, StatisticMatchesOracleOnSample) {
    auto f7 = make_field(7, 1);
    auto c = lossless_collection(f7, 5, 3, 2);
    detail::SeededStat st(c, 2);
    Rng rng(3);
    const auto total = count_subspaces(*f7, 5, 2);
    for (int i = 0; i < 500; ++i) {
        auto b = SubspaceIter::at(f7, 5, 2, rng.below(total));
        EXPECT_EQ(st.deficiency_sum(b.data().data()), oracle_deficiency_sum(c, b, 7));
    }
}

TEST(WronskianDeterminant, NonzeroWithBoundedReducedDegree) {
    auto f17 = make_field(17, 1);
    FElem w = find_element_of_order(f17, 16);
    Rng rng(2024);
    int checked = 0;
    for (std::size_t n = 2; n <= 5; ++n)
        for (std::size_t r = 1; r <= std::min<std::size_t>(3, n); ++r)
            for (int i = 0; i < 20; ++i, ++checked) {
                FMatrix m = random_full_rank(rng, f17, n, r);
                Poly det = wronskian_determinant(f17, w, m);
                ASSERT_FALSE(det.c.empty());
                Poly red = strip_x_power(det);
                EXPECT_LE(red.c.size() - 1, r * (n - r));
                // det(Wr_r(alpha) M) at every alpha agrees with the evaluated polynomial
                std::size_t bad = 0;
                for (Elem a = 1; a < 17; ++a) {
                    FMatrix wm = folded_wronskian(f17, w, r, n, {f17, a}) * m;
                    bool singular = oracle::rank_mod_p(
                                        [&] {
                                            std::vector<std::vector<std::int64_t>> v(r, std::vector<std::int64_t>(r));
                                            for (std::size_t x = 0; x < r; ++x)
                                                for (std::size_t y = 0; y < r; ++y) v[x][y] = wm(x, y);
                                            return v;
                                        }(),
                                        17) < r;
                    EXPECT_EQ(singular, poly_eval(*f17, det, a) == 0);
                    bad += singular;
                }
                EXPECT_LE(bad, r * (n - r));
            }
    EXPECT_GE(checked, 200);
}

TEST(VerifySeeded, IdentityAndEmpty) {
    auto f5 = make_field(5, 1);
    SeededCondenser id;
    id.field = f5;
    id.n = id.t = 3;
    id.maps = {FMatrix::identity(f5, 3)};
    id.claim = SeededClaim::strong(2, Rational(0));
    auto rep = verify_seeded(id);
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.worst, 0);

    SeededCondenser empty = id;
    empty.maps.clear();
    empty.claim = SeededClaim::lossy(1, Rational(1, 2), RankMode::Le);
    auto bad = verify_seeded(empty);
    EXPECT_FALSE(bad.pass);
    ASSERT_EQ(bad.witness.size(), 1u);
    EXPECT_EQ(bad.witness[0].rows(), 1u);
}

TEST(VerifySeeded, FailWitnessRechecks) {
    auto f7 = make_field(7, 1);
    auto c = lossless_collection(f7, 5, 3, 2);
    c.claim.L = Rational(0); // deliberately false
    auto rep = verify_seeded(c);
    EXPECT_FALSE(rep.pass);
    ASSERT_EQ(rep.witness.size(), 1u);
    EXPECT_GT(oracle_deficiency_sum(c, rep.witness[0], 7), 0);
}

TEST(VerifySeeded, DeterministicAcrossShardCounts) {
    auto f7 = make_field(7, 1);
    auto c = lossless_collection(f7, 5, 3, 2);
    VerifyOptions one, four;
    four.jobs = 4;
    auto a = verify_seeded(c, one), b = verify_seeded(c, four);
    EXPECT_EQ(a.worst, b.worst);
    EXPECT_EQ(a.witness, b.witness);
    EXPECT_EQ(a.checked, b.checked);

    VerifyOptions s1, s3;
    s1.sampled = s3.sampled = true;
    s1.seed = s3.seed = 99;
    s1.trials = s3.trials = 2000;
    s3.jobs = 3;
    auto x = verify_seeded(c, s1), y = verify_seeded(c, s3);
    EXPECT_EQ(x.worst, y.worst);
    EXPECT_EQ(x.witness, y.witness);
    EXPECT_EQ(x.checked, 2000u);
    EXPECT_LE(x.worst, a.worst);
}

TEST(VerifySeeded, BudgetExceeded) {
    auto c = lossless_collection(make_field(7, 1), 5, 3, 2);
    VerifyOptions opt;
    opt.budget = 1000;
    EXPECT_THROW(verify_seeded(c, opt), BudgetExceeded);
    opt.sampled = true;
    opt.trials = 10;
    EXPECT_NO_THROW(verify_seeded(c, opt));
}

TEST(VerifyDesign, DualityGivesIdenticalStatistics) {
    for (std::size_t t : {2u, 3u, 4u}) {
        auto c = lossless_collection(make_field(7, 1), 5, t, 2);
        auto a = verify_seeded(c);
        auto b = verify_design(design_from_condenser(c));
        EXPECT_EQ(a.worst, b.worst);
        EXPECT_EQ(a.witness, b.witness);
        EXPECT_EQ(a.threshold, b.threshold);
        EXPECT_EQ(a.pass, b.pass);
    }
    auto c = lossless_collection(make_field(7, 1), 5, 3, 2);
    c.claim = SeededClaim::weak(2, Rational(3));
    auto a = verify_seeded(c);
    auto b = verify_design(design_from_condenser(c));
    EXPECT_EQ(a.worst, b.worst);
}

TEST(VerifyDesign, TrivialDesigns) {
    auto f3 = make_field(3, 1);
    SubspaceDesign zero{f3, 3, {FMatrix(f3, 0, 3), FMatrix(f3, 0, 3)}, Guarantee::Strong, 2, Rational(0)};
    EXPECT_EQ(verify_design(zero).worst, 0);
    SubspaceDesign full{f3, 3, {FMatrix::identity(f3, 3)}, Guarantee::Strong, 2, Rational(1)};
    auto rep = verify_design(full);
    EXPECT_EQ(rep.worst, 2);
    EXPECT_FALSE(rep.pass);
}

TEST(LossyVerify, SmallExhaustive) {
    auto c = lossy_collection(make_field(17, 1), 4, 3, 2, Rational(1, 2));
    auto rep = verify_seeded(c);
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.property, "lossy-le");
    EXPECT_EQ(rep.checked, count_subspaces(17, 4, 1) + count_subspaces(17, 4, 2));
}
