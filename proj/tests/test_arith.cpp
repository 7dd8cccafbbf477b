#include <random>

#include <gtest/gtest.h>

#include "siegel/arith/laurent.hpp"

using namespace siegel;
using arith::Fp;
using arith::Integer;
using arith::LaurentPoly;
using arith::PrimeField;
using arith::Rational;

namespace {

constexpr int kCases = 200;

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-50, 50), den(1, 12);
    return Rational(num(rng), den(rng));
}

template <typename C, typename Gen>
LaurentPoly<C> random_laurent(std::mt19937_64& rng, Gen&& gen, const typename C::Domain& d = {}) {
    std::uniform_int_distribution<int> len(0, 5), lo(-4, 2);
    LaurentPoly<C> l(d);
    const int start = lo(rng), n = len(rng);
    for (int i = 0; i < n; ++i) l += LaurentPoly<C>::monomial(gen(), start + i);
    return l;
}

} // namespace

TEST(Integer, ArithmeticAndDivision) {
    Integer a(12), b(-5);
    EXPECT_EQ((a + b).str(), "7");
    EXPECT_EQ((a * b).str(), "-60");
    EXPECT_EQ(Integer::divide_exact(a, Integer(4)), Integer(3));
    EXPECT_FALSE(Integer::divide_exact(a, Integer(5)).has_value());
    EXPECT_FALSE(Integer::divide_exact(a, Integer(0)).has_value());
    EXPECT_EQ(arith::two_adic_valuation(Integer(96)), 5u);
    EXPECT_THROW(arith::two_adic_valuation(Integer(0)), InvalidArgument);
}

TEST(Rational, CanonicalForm) {
    EXPECT_EQ(Rational(6, -4).str(), "-3/2");
    EXPECT_EQ(Rational(8, 4).str(), "2");
    EXPECT_EQ(Rational("10/4"), Rational(5, 2));
    EXPECT_THROW(Rational(1, 0), InvalidArgument);
    EXPECT_THROW(Rational("1/0"), InvalidArgument);
    EXPECT_THROW(Rational(1) / Rational(0), NotDivisible);
}

TEST(Fp, FieldOperations) {
    PrimeField f(7);
    EXPECT_EQ(f.from_int(-1).value(), 6u);
    EXPECT_EQ((f.from_int(3) * f.from_int(5)).value(), 1u);
    EXPECT_EQ(f.from_int(3).inverse(), f.from_int(5));
    EXPECT_EQ(f.from_rational(Rational(1, 2)), f.from_int(4));
    EXPECT_THROW(f.from_rational(Rational(1, 7)), InvalidArgument);
    EXPECT_THROW(PrimeField(9), InvalidArgument);
    EXPECT_THROW(f.zero().inverse(), NotDivisible);
    EXPECT_THROW(f.one() + PrimeField(5).one(), DomainMismatch);
}

TEST(Rational, RingAxiomsProperty) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < kCases; ++i) {
        Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
        ASSERT_EQ(a + b, b + a);
        ASSERT_EQ((a + b) + c, a + (b + c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a - a, Rational(0));
        if (!b.is_zero()) {
            ASSERT_EQ((a / b) * b, a);
        }
    }
}

TEST(Fp, FieldAxiomsProperty) {
    std::mt19937_64 rng(12);
    PrimeField f(10007);
    std::uniform_int_distribution<long> u(-100000, 100000);
    for (int i = 0; i < kCases; ++i) {
        Fp a = f.from_int(u(rng)), b = f.from_int(u(rng)), c = f.from_int(u(rng));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ((a - b) + b, a);
        if (!a.is_zero()) {
            ASSERT_EQ(a * a.inverse(), f.one());
        }
        ASSERT_EQ(a.pow(10006), a.is_zero() ? f.zero() : f.one());
    }
}

TEST(Laurent, BasicsAndRendering) {
    auto l = arith::laurent<Integer>({}, {{-1, 1}, {0, -2}, {1, 1}});
    EXPECT_EQ(l.str(), "r^-1 - 2 + r");
    EXPECT_EQ(l.min_exponent(), -1);
    EXPECT_EQ(l.max_exponent(), 1);
    EXPECT_EQ(l.at_one(), Integer(0));
    EXPECT_EQ(l.vanishing_order_at_one(), 2);
    EXPECT_EQ(l.inverted(), l);
    EXPECT_TRUE(LaurentPoly<Integer>().is_zero());
    EXPECT_FALSE(LaurentPoly<Integer>().vanishing_order_at_one().has_value());
    auto odd = arith::laurent<Integer>({}, {{-1, -2}, {1, 2}});
    EXPECT_EQ(odd.inverted(), -odd);
    EXPECT_EQ(odd.vanishing_order_at_one(), 1);
}

TEST(Laurent, JsonRoundTrip) {
    auto l = arith::laurent<Rational>({}, {{-3, 5}, {2, -7}});
    auto j = l.to_json();
    EXPECT_EQ(LaurentPoly<Rational>::from_json(j, {}), l);
}

TEST(Laurent, RingAxiomsProperty) {
    std::mt19937_64 rng(13);
    auto gen = [&] { return random_rational(rng); };
    for (int i = 0; i < kCases; ++i) {
        auto a = random_laurent<Rational>(rng, gen), b = random_laurent<Rational>(rng, gen), c = random_laurent<Rational>(rng, gen);
        ASSERT_EQ(a * b, b * a);
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_TRUE((a - a).is_zero());
    }
}

TEST(Laurent, ExactDivisionInvertsMultiplicationProperty) {
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<long> small(-9, 9);
    auto gen = [&] { return Integer(small(rng)); };
    int nontrivial = 0;
    for (int i = 0; i < kCases; ++i) {
        auto a = random_laurent<Integer>(rng, gen), b = random_laurent<Integer>(rng, gen);
        if (b.is_zero()) continue;
        ++nontrivial;
        auto q = LaurentPoly<Integer>::divide_exact(a * b, b);
        ASSERT_TRUE(q.has_value());
        ASSERT_EQ(*q, a);
    }
    EXPECT_GT(nontrivial, kCases / 2);
}

TEST(Laurent, VanishingOrderProperty) {
    // (r - 1)^k * g has order k at r = 1 whenever g(1) != 0.
    std::mt19937_64 rng(15);
    std::uniform_int_distribution<long> small(-9, 9);
    auto gen = [&] { return Integer(small(rng)); };
    const auto factor = arith::laurent<Integer>({}, {{0, -1}, {1, 1}});
    for (int i = 0; i < kCases; ++i) {
        auto g = random_laurent<Integer>(rng, gen);
        if (g.is_zero() || g.at_one().is_zero()) continue;
        const int k = i % 5;
        auto p = g;
        for (int j = 0; j < k; ++j) p = p * factor;
        ASSERT_EQ(p.vanishing_order_at_one(), k);
    }
}

TEST(Laurent, DomainMismatchIsRejected) {
    auto a = LaurentPoly<Fp>::constant(PrimeField(5).one());
    auto b = LaurentPoly<Fp>::constant(PrimeField(7).one());
    EXPECT_THROW(a + b, DomainMismatch);
}
