#include <gtest/gtest.h>

#include "siegel/covariants/parse.hpp"
#include "siegel/numap/nu.hpp"
#include "siegel/qexp/analysis.hpp"

using namespace siegel;
using arith::Integer;
using arith::Rational;

TEST(Nu, WeightOfCovariant) {
    EXPECT_EQ(nu::weight_of_covariant(2, 0), (qexp::WeightLabel{0, 2}));
    EXPECT_EQ(nu::weight_of_covariant(1, 6), (qexp::WeightLabel{6, -2}));
    EXPECT_EQ(nu::weight_of_covariant(2, 8), (qexp::WeightLabel{8, -2}));
    EXPECT_THROW(nu::weight_of_covariant(3, 1), OddOrder);
}

TEST(Nu, SexticMapsToChi68) {
    // chi10 nu(f) is chi6_8 itself.
    auto r = nu::nu_normalized<Integer>(cov::grace_young("f"), 1, 3);
    EXPECT_EQ(r.expansion, theta::chi6_8<Integer>(3));
    EXPECT_EQ(r.expansion.weight(), (qexp::WeightLabel{6, 8}));
}

TEST(Nu, DiscriminantIsAMultipleOfChi10) {
    const int n = 3;
    auto nud = nu::nu_normalized<Integer>(cov::invariant("D"), 0, n).expansion;
    EXPECT_EQ(nud.weight(), (qexp::WeightLabel{0, 10}));
    EXPECT_EQ(nud, theta::chi10<Integer>(n).scaled(Integer(4096)));
}

TEST(Nu, RawImageHasExpectedShape) {
    auto raw = nu::nu_raw<Integer>(cov::invariant("A"), 2);
    EXPECT_EQ(raw.weight(), (qexp::WeightLabel{0, 22}));
    EXPECT_EQ(raw.valuation(), 2);
    EXPECT_EQ(raw.truncation(), 3);
}

TEST(Nu, HolomorphyNeedsChi10ForA) {
    EXPECT_THROW(nu::nu_normalized<Integer>(cov::invariant("A"), 0, 2), NotDivisible);
    auto chi12 = nu::nu_normalized<Integer>(cov::invariant("A"), 1, 3).expansion;
    EXPECT_EQ(chi12.weight(), (qexp::WeightLabel{0, 12}));
    EXPECT_TRUE(qexp::siegel_phi(chi12).is_zero());
    EXPECT_FALSE(chi12.is_zero());
}

TEST(Nu, MinimalChi10Powers) {
    EXPECT_EQ(nu::minimal_chi10_power(cov::invariant("A")), 1);
    EXPECT_EQ(nu::minimal_chi10_power(cov::invariant("B")), 0);
    EXPECT_EQ(nu::minimal_chi10_power(cov::invariant("D")), 0);
    EXPECT_EQ(nu::minimal_chi10_power(cov::invariant("E")), 2);
    EXPECT_EQ(nu::minimal_chi10_power(cov::grace_young("H")), 1);
    EXPECT_EQ(nu::actual_minimal_chi10_power<Integer>(cov::invariant("A"), 2), 1);
    EXPECT_EQ(nu::actual_minimal_chi10_power<Integer>(cov::grace_young("f"), 2), 1);
}

TEST(Nu, Chi35VanishesOnceOnTheDiagonal) {
    auto chi35 = nu::nu_normalized<Integer>(cov::invariant("E"), 2, 3).expansion;
    EXPECT_EQ(chi35.weight(), (qexp::WeightLabel{0, 35}));
    EXPECT_EQ(qexp::a11_order(chi35).overall, 1);
    EXPECT_TRUE(qexp::r_inversion_check(chi35));
    EXPECT_TRUE(qexp::swap_symmetry_check(chi35));
}

TEST(Nu, ArgumentErrors) {
    EXPECT_THROW(nu::nu_raw<Integer>(cov::resolve_covariant("a0*x1"), 2), OddOrder);
    EXPECT_THROW(nu::nu_raw<Integer>(cov::invariant("A"), 0), InvalidArgument);
    EXPECT_THROW(nu::nu_normalized<Integer>(cov::invariant("A"), 3, 2), InvalidArgument);
    EXPECT_THROW(nu::nu_normalized<Integer>(cov::invariant("A"), 1, 0), InvalidArgument);
}

TEST(Nu, RationalAndIntegerAgree) {
    auto zz = nu::nu_normalized<Integer>(cov::invariant("B"), 0, 2).expansion;
    auto qq = nu::nu_normalized<Rational>(cov::invariant("B"), 0, 2).expansion;
    EXPECT_EQ(qexp::change_domain<Rational>(zz, {}), qq);
}
