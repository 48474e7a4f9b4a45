#include <gtest/gtest.h>

#include "rankforge/expander.hpp"
#include "rankforge/verify.hpp"

using namespace rankforge;

namespace {

/// dim of span{A_i V} by stacking images as columns.
std::size_t image_dim(const std::vector<FMatrix>& maps, const FMatrix& basis_rows) {
    std::vector<FMatrix> imgs;
    for (const auto& a : maps) imgs.push_back(a * basis_rows.transpose());
    return rank(hstack(imgs));
}

/// Multiplication in F_9 written as a bilinear map F_3^2 x F_3^2 -> F_3^2.
BilinearCondenser f9_multiplication() {
    auto f9 = make_field(3, 2);
    auto f3 = make_field(3, 1);
    BilinearCondenser b;
    b.field = f3;
    b.n = b.m = b.t = 2;
    b.E = FMatrix(f3, 2, 4);
    for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t i = 0; i < 2; ++i) {
            Elem prod = f9->mul(f9->pow(3, static_cast<std::int64_t>(c)), f9->pow(3, static_cast<std::int64_t>(i)));
            b.E(0, c * 2 + i) = prod % 3;
            b.E(1, c * 2 + i) = prod / 3;
        }
    b.claim = {1, 2, Rational(0), true, false};
    return b;
}

} // namespace

TEST(TensorMaps, Examples) {
    auto f2 = make_field(2, 1);
    auto ts = tensor_maps(f2, 2, 2);
    ASSERT_EQ(ts.size(), 2u);
    EXPECT_EQ(ts[0], FMatrix::from_rows(f2, {{1, 0}, {0, 1}, {0, 0}, {0, 0}}));
    EXPECT_EQ(ts[1], FMatrix::from_rows(f2, {{0, 0}, {0, 0}, {1, 0}, {0, 1}}));
    EXPECT_EQ(tensor_maps(f2, 3, 1)[0], FMatrix::identity(f2, 3));
    EXPECT_THROW(tensor_maps(f2, 3, 0), InvalidArgument);
}

TEST(TensorMaps, MultiplyDimensionExactlyExhaustive) {
    auto f3 = make_field(3, 1);
    for (std::size_t d = 1; d <= 3; ++d) {
        auto ts = tensor_maps(f3, 3, d);
        for (std::size_t s = 0; s <= 3; ++s) {
            SubspaceIter it(f3, 3, s);
            while (it.next()) {
                if (s > 0) {
                    ASSERT_EQ(image_dim(ts, it.matrix()), s * d);
                }
            }
        }
    }
}

TEST(ExpanderParams, GammaZero) {
    auto p = expander_params_gamma0(4, 2, Rational(1, 4), Rational(1, 4));
    EXPECT_EQ(p.condenser_size, 16u); // ceil(2 / (1/4 * 1/2))
    EXPECT_EQ(p.degree, 32u);
    EXPECT_EQ(p.alpha, Rational(3, 2));
    auto p2 = expander_params_gamma0(10, 3, Rational(1, 6), Rational(1, 2));
    EXPECT_EQ(p2.condenser_size, 12u); // ceil(3 / (1/2 * 1/2))
    EXPECT_EQ(p2.degree, 36u);
    EXPECT_EQ(p2.alpha, Rational(3, 2));
    EXPECT_THROW(expander_params_gamma0(4, 4, Rational(1, 4), Rational(1, 4)), InvalidArgument); // eps d = 1
}

TEST(ExpanderParams, General) {
    auto p = expander_params_general(Rational(1, 4), Rational(1, 2));
    EXPECT_EQ(p.d, 3u);
    EXPECT_EQ(p.gamma, Rational(0));
    EXPECT_EQ(p.delta, Rational(1, 3));
    EXPECT_EQ(p.condenser_size, 36u);
    EXPECT_EQ(p.degree, 108u);
    EXPECT_EQ(p.alpha, Rational(2));
    auto p2 = expander_params_general(Rational(1, 3), Rational(2, 3));
    EXPECT_EQ(p2.d, 3u);
    EXPECT_EQ(p2.gamma, Rational(1, 6));
    EXPECT_EQ(p2.delta, Rational(1, 5));
    EXPECT_EQ(p2.degree, 270u);
    EXPECT_THROW(expander_params_general(Rational(1, 2), Rational(1, 4)), InvalidArgument);
    EXPECT_THROW(expander_params_general(Rational(1, 2), Rational(1)), InvalidArgument);
}

TEST(ExpanderParams, GeneralDegreeIsDTimesSize) {
    for (std::int64_t a = 1; a <= 6; ++a)
        for (std::int64_t b = a; b <= 9; ++b) {
            Rational eps(a, 10), eta(b, 10);
            auto p = expander_params_general(eps, eta);
            EXPECT_EQ(p.degree, p.d * p.condenser_size);
            EXPECT_GE(p.gamma, 0);
            EXPECT_LT(p.gamma, 1);
            // (1 - gamma) d eps = (1 + eta) / 2
            EXPECT_EQ((1 - p.gamma) * static_cast<std::int64_t>(p.d) * eps * 2, 1 + eta);
        }
}

TEST(BuildExpander, F29Construction) {
    auto f29 = make_field(29, 1);
    auto x = build_expander(f29, 4, 2, Rational(1, 4), Rational(1, 4), Rational(0));
    EXPECT_EQ(x.degree(), 22u);
    EXPECT_EQ(x.eps, Rational(1, 4));
    EXPECT_EQ(x.alpha, Rational(3, 2));
    auto rep = verify_expander(x);
    EXPECT_TRUE(rep.pass) << rep.worst;
    EXPECT_EQ(rep.checked, 25260u);
    EXPECT_EQ(rep.threshold, 2);
    ASSERT_EQ(rep.witness.size(), 1u);
    EXPECT_EQ(static_cast<std::int64_t>(image_dim(x.maps, rep.witness[0])), rep.worst);
}

TEST(BuildExpander, Errors) {
    auto f29 = make_field(29, 1);
    EXPECT_THROW(build_expander(f29, 4, 2, Rational(1, 8), Rational(1, 4), Rational(0)), InvalidArgument);
    EXPECT_THROW(build_expander(f29, 4, 5, Rational(1, 4), Rational(1, 4), Rational(0)), InvalidArgument);
    auto c = lossless_collection(make_field(7, 1), 4, 2, 1);
    EXPECT_THROW(tensor_then_condense(c, 2, Rational(0)), InvalidArgument);
}

TEST(VerifyExpander, IdentityAndZero) {
    auto f3 = make_field(3, 1);
    DimExpander id{f3, 3, {FMatrix::identity(f3, 3)}, Rational(2, 3), Rational(1)};
    EXPECT_TRUE(verify_expander(id).pass);
    DimExpander zero{f3, 3, {FMatrix(f3, 3, 3), FMatrix(f3, 3, 3)}, Rational(1, 3), Rational(1, 2)};
    auto rep = verify_expander(zero);
    EXPECT_FALSE(rep.pass);
    ASSERT_EQ(rep.witness.size(), 1u);
    EXPECT_EQ(image_dim(zero.maps, rep.witness[0]), 0u);
}

TEST(ExpanderFromTwoSource, FieldMultiplication) {
    auto b = f9_multiplication();
    auto two = verify_two_source(b);
    EXPECT_TRUE(two.pass);
    auto x = expander_from_two_source(b);
    ASSERT_EQ(x.degree(), 2u);
    auto f3 = make_field(3, 1);
    EXPECT_EQ(x.maps[0], FMatrix::identity(f3, 2)); // multiplication by 1
    EXPECT_EQ(x.eps, Rational(1, 2));
    EXPECT_EQ(x.alpha, Rational(2));
    EXPECT_TRUE(verify_expander(x).pass);
}

TEST(ExpanderFromTwoSource, Errors) {
    auto b = f9_multiplication();
    b.claim.s = 1;
    EXPECT_THROW(expander_from_two_source(b), InvalidArgument);
    auto f3 = make_field(3, 1);
    BilinearCondenser wide{f3, 2, 2, 4, FMatrix::identity(f3, 4), {1, 2, Rational(0), false, false}};
    EXPECT_THROW(expander_from_two_source(wide), InvalidArgument);
}
