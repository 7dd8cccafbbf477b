#include <gtest/gtest.h>

#include "siegel/qexp/analysis.hpp"
#include "siegel/theta/chi68_reference.hpp"
#include "siegel/theta/theta.hpp"

using namespace siegel;
using arith::Integer;
using arith::LaurentPoly;
using arith::Rational;

TEST(Theta, CharacteristicCounts) {
    EXPECT_EQ(theta::all_characteristics().size(), 16u);
    EXPECT_EQ(theta::even_characteristics().size(), 10u);
    EXPECT_EQ(theta::odd_characteristics().size(), 6u);
    theta::ThetaCharacteristic odd{{1, 1}, {1, 0}};
    EXPECT_TRUE(odd.odd());
    EXPECT_EQ(odd.str(), "[1/2,1/2;1/2,0]");
}

TEST(Theta, ParityErrors) {
    theta::ThetaCharacteristic even{{0, 0}, {0, 0}}, odd{{1, 0}, {1, 0}};
    EXPECT_THROW(theta::even_theta_constant(odd, 2), OddCharacteristic);
    EXPECT_THROW(theta::odd_theta_gradient(even, 2), EvenCharacteristic);
    EXPECT_TRUE(theta::theta_constant_value(odd, 3).is_zero());
}

TEST(Theta, ThetaNullLeadingTerms) {
    // theta[0](tau) = sum q1^(n1^2/2) r^(n1 n2) q2^(n2^2/2); keys are 8 * q-exponents, 4 * r-exponent.
    auto t = theta::even_theta_constant({{0, 0}, {0, 0}}, 2);
    EXPECT_EQ(t.coefficient(0, 0, 0), Integer(1));
    EXPECT_EQ(t.coefficient(4, 0, 0), Integer(2));
    EXPECT_EQ(t.coefficient(4, 4, 4), Integer(2));
    EXPECT_EQ(t.coefficient(4, 4, -4), Integer(2));
    EXPECT_EQ(t.coefficient(16, 0, 0), Integer(2));
    EXPECT_FALSE(t.integral());
}

TEST(Theta, LatticeBoundCoversTruncation) {
    for (int n = 1; n <= 50; ++n) {
        const int b = theta::lattice_bound(n);
        // the first excluded lattice vector has (2b + 1)^2 / 8 > n
        EXPECT_GT((2 * b + 1) * (2 * b + 1), 8 * n) << n;
    }
}

TEST(Theta, Chi10Normalization) {
    auto chi10 = theta::chi10<Integer>(3);
    EXPECT_EQ(chi10.weight(), (qexp::WeightLabel{0, 10}));
    EXPECT_FALSE(chi10.character());
    EXPECT_EQ(chi10.coefficient(1, 1)[0], arith::laurent<Integer>({}, {{-1, 1}, {0, -2}, {1, 1}}));
    EXPECT_EQ(qexp::a11_order(chi10).overall, 2);
    EXPECT_TRUE(qexp::swap_symmetry_check(chi10));
    EXPECT_TRUE(qexp::r_inversion_check(chi10));
    EXPECT_TRUE(qexp::siegel_phi(chi10).is_zero());
}

TEST(Theta, Chi10IsProportionalToChi5Squared) {
    const int n = 3;
    auto sq = theta::chi5_series(n) * theta::chi5_series(n);
    ASSERT_TRUE(sq.integral());
    auto s = sq.to_series();
    auto chi10 = theta::chi10<Integer>(n);
    std::optional<Rational> ratio;
    for (int n1 = 0; n1 <= n; ++n1)
        for (int n2 = 0; n2 <= n; ++n2) {
            auto a = s.coefficient(n1, n2), b = chi10.coordinate(0).coefficient(n1, n2);
            ASSERT_EQ(a.is_zero(), b.is_zero()) << n1 << "," << n2;
            if (a.is_zero()) continue;
            ASSERT_EQ(a.size(), b.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                ASSERT_EQ(a.terms()[i].first, b.terms()[i].first);
                Rational q(a.terms()[i].second, b.terms()[i].second);
                if (!ratio) ratio = q;
                ASSERT_EQ(q, *ratio);
            }
        }
    ASSERT_TRUE(ratio.has_value());
}

TEST(Theta, NormalizationConstants) {
    auto [l10, l68] = theta::normalization_constants();
    EXPECT_EQ(l10, Rational(4096));
    EXPECT_EQ(l68, Rational(4096));
}

TEST(Theta, Chi6_3Shape) {
    auto v = theta::chi6_3_series(2);
    EXPECT_EQ(v.size(), 7u);
    EXPECT_TRUE(theta::chi5_series(2).character());
}

TEST(Theta, Chi68MatchesPublishedBlock) {
    auto chi68 = theta::chi6_8<Integer>(2);
    EXPECT_TRUE(theta::chi68_block_mismatches(chi68).empty());
    EXPECT_TRUE(qexp::swap_symmetry_check(chi68));
    EXPECT_TRUE(qexp::r_inversion_check(chi68));
}

TEST(Theta, BlockComparisonDetectsPerturbation) {
    auto chi68 = theta::chi6_8<Integer>(2);
    auto coords = chi68.coordinates();
    auto cell = coords[3].coefficient(2, 2);
    coords[3].set_coefficient(2, 2, cell + LaurentPoly<Integer>::monomial(Integer(1), 0));
    qexp::FourierExpansion<Integer> bad(chi68.weight(), chi68.character(), coords);
    auto m = theta::chi68_block_mismatches(bad);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_NE(m[0].find("(2,2)[3]"), std::string::npos);
}

TEST(Theta, EighthExpansionRejectsOutOfRange) {
    theta::EighthExpansion e(1);
    EXPECT_THROW(e.add_term({9, 0, 0}, Integer(1)), OutOfTruncation);
    EXPECT_THROW(theta::EighthExpansion(-1), InvalidArgument);
    EXPECT_THROW(theta::chi5_series(0), InvalidArgument);
}
