#include <random>

#include <gtest/gtest.h>

#include "siegel/qexp/analysis.hpp"
#include "siegel/qexp/linalg.hpp"
#include "siegel/theta/theta.hpp"

using namespace siegel;
using arith::Integer;
using arith::LaurentPoly;
using arith::Rational;
using qexp::EllipticExpansion;
using qexp::FourierExpansion;
using qexp::QSeries;

namespace {

constexpr int kCases = 200;

/// Random series with every coefficient supported on e^2 <= 4 n1 n2.
QSeries<Rational> random_series(std::mt19937_64& rng, int v, int prec) {
    std::uniform_int_distribution<long> c(-6, 6);
    std::bernoulli_distribution keep(0.6);
    QSeries<Rational> s({}, v, prec);
    for (int m1 = 0; m1 <= prec; ++m1)
        for (int m2 = 0; m2 <= prec; ++m2) {
            const int n1 = v + m1, n2 = v + m2;
            LaurentPoly<Rational> l;
            for (int e = -2 * std::max(n1, n2); e <= 2 * std::max(n1, n2); ++e)
                if (static_cast<long>(e) * e <= 4L * n1 * n2 && keep(rng)) l += LaurentPoly<Rational>::monomial(Rational(c(rng)), e);
            s.cell(m1, m2) = l;
        }
    return s;
}

FourierExpansion<Rational> random_form(std::mt19937_64& rng, int j, int k, int v, int prec) {
    std::vector<QSeries<Rational>> coords;
    for (int i = 0; i <= j; ++i) coords.push_back(random_series(rng, v, prec));
    return FourierExpansion<Rational>({j, k}, false, std::move(coords));
}

/// sigma_{k}(n) by trial division, independent of the library helper.
mpz_class sigma(long n, unsigned k) {
    mpz_class s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), k);
            s += p;
        }
    return s;
}

} // namespace

TEST(QSeries, RingAxiomsProperty) {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> val(0, 1), prec(0, 2);
    for (int i = 0; i < kCases; ++i) {
        auto a = random_series(rng, val(rng), prec(rng));
        auto b = random_series(rng, val(rng), prec(rng));
        auto c = random_series(rng, val(rng), prec(rng));
        ASSERT_EQ(a + b, b + a);
        ASSERT_EQ(a * b, b * a);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_TRUE((a - a).is_zero());
    }
}

TEST(QSeries, DivisionInvertsMultiplicationProperty) {
    std::mt19937_64 rng(32);
    std::uniform_int_distribution<int> val(0, 1), prec(1, 2);
    int checked = 0;
    for (int i = 0; i < kCases; ++i) {
        auto a = random_series(rng, val(rng), prec(rng));
        auto b = random_series(rng, val(rng), prec(rng));
        if (b.cell(0, 0).is_zero()) continue;
        auto q = QSeries<Rational>::divide(a * b, b);
        ASSERT_EQ(q, a);
        ++checked;
    }
    EXPECT_GT(checked, kCases / 2);
}

TEST(QSeries, DivisionFailures) {
    QSeries<Rational> one = QSeries<Rational>::constant(Rational(1), 2);
    QSeries<Rational> x({}, 1, 1);
    x.cell(0, 0) = LaurentPoly<Rational>::monomial(Rational(1), 0);
    EXPECT_THROW(QSeries<Rational>::divide(one, x), NotDivisible);
    QSeries<Rational> zero({}, 0, 2);
    EXPECT_THROW(QSeries<Rational>::divide(one, zero), InvalidArgument);
    EXPECT_THROW(one.coefficient(3, 0), OutOfTruncation);
    EXPECT_THROW(one.coefficient(0, 3), OutOfTruncation);
}

TEST(Fourier, MultiplicationAndExactDivisionProperty) {
    std::mt19937_64 rng(33);
    std::uniform_int_distribution<int> jj(0, 2), val(0, 1), prec(1, 2);
    for (int i = 0; i < kCases; ++i) {
        auto a = random_form(rng, 2 * jj(rng), 4, val(rng), prec(rng));
        auto b = random_form(rng, 0, 6, val(rng), prec(rng));
        if (b.coordinate(0).cell(0, 0).is_zero()) continue;
        auto ab = qexp::mul(a, b);
        ASSERT_EQ(ab.weight(), (qexp::WeightLabel{a.weight().j, 10}));
        ASSERT_FALSE(qexp::support_violation(ab).has_value());
        auto q = qexp::exact_div(ab, b);
        ASSERT_EQ(q.weight(), a.weight());
        ASSERT_EQ(q.truncated(std::min(q.truncation(), a.truncation())), a.truncated(std::min(q.truncation(), a.truncation())));
    }
}

TEST(Fourier, ProductIsBilinearProperty) {
    std::mt19937_64 rng(34);
    for (int i = 0; i < kCases; ++i) {
        auto a = random_form(rng, 2, 4, 0, 1), b = random_form(rng, 2, 4, 0, 1), c = random_form(rng, 0, 6, 1, 1);
        ASSERT_EQ(qexp::mul(qexp::add(a, b), c), qexp::add(qexp::mul(a, c), qexp::mul(b, c)));
        ASSERT_EQ(qexp::mul(a, c), qexp::mul(c, a));
    }
}

TEST(Fourier, JsonRoundTrip) {
    auto chi68 = theta::chi6_8<Integer>(2);
    auto j = chi68.to_json();
    EXPECT_EQ(j.at("valuation"), 1);
    EXPECT_EQ(FourierExpansion<Integer>::from_json(j, {}), chi68);
    auto parsed = nlohmann::json::parse(j.dump());
    EXPECT_EQ(FourierExpansion<Integer>::from_json(parsed, {}), chi68);
}

TEST(Fourier, SupportViolationIsReported) {
    QSeries<Integer> s({}, 1, 1);
    s.cell(0, 0) = LaurentPoly<Integer>::monomial(Integer(1), 3);
    FourierExpansion<Integer> f({0, 4}, false, {s});
    auto v = qexp::support_violation(f);
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(*v, std::make_tuple(1, 1, 3));
    EXPECT_FALSE(qexp::support_violation(theta::chi10<Integer>(3)).has_value());
}

TEST(Fourier, WeightAndCharacterErrors) {
    auto chi10 = theta::chi10<Integer>(2);
    auto one = FourierExpansion<Integer>::constant(Integer(1), 2);
    EXPECT_THROW(qexp::add(chi10, one), WeightMismatch);
    EXPECT_THROW(qexp::exact_div(chi10, theta::chi6_8<Integer>(2)), InvalidArgument);
    FourierExpansion<Integer> with_char({0, 5}, true, {QSeries<Integer>({}, 1, 1)});
    EXPECT_THROW(qexp::siegel_phi(with_char), CharacterForm);
    EXPECT_THROW(qexp::restrict_to_a11(with_char), CharacterForm);
    EXPECT_THROW(qexp::exact_div_chi10(one, one), InvalidArgument);
}

TEST(Fourier, PowerMatchesRepeatedProduct) {
    auto chi10 = theta::chi10<Integer>(3);
    auto p3 = qexp::power(chi10, 3);
    EXPECT_EQ(p3, qexp::mul(chi10, qexp::mul(chi10, chi10)));
    EXPECT_EQ(p3.valuation(), 3);
    EXPECT_EQ(p3.weight(), (qexp::WeightLabel{0, 30}));
}

TEST(Analysis, SymmetryChecksDetectBrokenForms) {
    auto chi68 = theta::chi6_8<Integer>(2);
    EXPECT_TRUE(qexp::swap_symmetry_check(chi68));
    auto coords = chi68.coordinates();
    coords[0].set_coefficient(1, 2, coords[0].coefficient(1, 2) + LaurentPoly<Integer>::monomial(Integer(1), 0));
    FourierExpansion<Integer> bad(chi68.weight(), false, coords);
    EXPECT_FALSE(qexp::swap_symmetry_check(bad));
    coords = chi68.coordinates();
    coords[2].set_coefficient(2, 2, coords[2].coefficient(2, 2) + LaurentPoly<Integer>::monomial(Integer(1), 1));
    EXPECT_FALSE(qexp::r_inversion_check(FourierExpansion<Integer>(chi68.weight(), false, coords)));
}

TEST(Analysis, A11OrderOfSimpleForms) {
    auto o = qexp::a11_order(theta::chi6_8<Integer>(3));
    ASSERT_EQ(o.per_coordinate.size(), 7u);
    EXPECT_EQ(o.per_coordinate[0], 4);
    EXPECT_EQ(o.per_coordinate[3], 1);
    EXPECT_EQ(o.overall, 1);
    FourierExpansion<Integer> zero({0, 4}, false, {QSeries<Integer>({}, 0, 2)});
    EXPECT_FALSE(qexp::a11_order(zero).overall.has_value());
}

TEST(Analysis, RenderLaurentPullsContent) {
    EXPECT_EQ(qexp::render_laurent(arith::laurent<Integer>({}, {{-1, -2}, {1, 2}})), "-2*(r^-1 - r)");
    EXPECT_EQ(qexp::render_laurent(arith::laurent<Integer>({}, {{-1, 1}, {0, -2}, {1, 1}})), "r^-1 - 2 + r");
    auto half = LaurentPoly<Rational>::monomial(Rational(1, 2), 0) + LaurentPoly<Rational>::monomial(Rational(3, 2), 2);
    EXPECT_EQ(qexp::render_laurent(half), "1/2*(1 + 3*r^2)");
    EXPECT_EQ(qexp::q_monomial(0, 0), "1");
    EXPECT_EQ(qexp::q_monomial(2, 1), "q1^2*q2");
}

TEST(Analysis, RenderChi10) {
    auto text = qexp::render(theta::chi10<Integer>(2), "chi10");
    EXPECT_EQ(text.rfind("chi10 weight (0,10), truncation 2\nq1*q2: r^-1 - 2 + r\n", 0), 0u);
    EXPECT_NE(text.find("q1*q2^2: "), std::string::npos);
}

TEST(Elliptic, EisensteinAgainstDivisorSums) {
    const int n = 12;
    auto e4 = qexp::elliptic_form<Rational>("E4", n), e6 = qexp::elliptic_form<Rational>("E6", n);
    EXPECT_EQ(e4[0], Rational(1));
    EXPECT_EQ(e6[0], Rational(1));
    for (int i = 1; i <= n; ++i) {
        EXPECT_EQ(e4[i], Rational(mpq_class(240 * sigma(i, 3)))) << i;
        EXPECT_EQ(e6[i], Rational(mpq_class(-504 * sigma(i, 5)))) << i;
    }
}

TEST(Elliptic, DeltaRelation) {
    const int n = 20;
    auto e4 = qexp::elliptic_form<Rational>("E4", n), e6 = qexp::elliptic_form<Rational>("E6", n);
    auto delta = qexp::elliptic_form<Rational>("Delta", n);
    // Ramanujan tau(1..6)
    const long tau[] = {1, -24, 252, -1472, 4830, -6048};
    for (int i = 0; i < 6; ++i) EXPECT_EQ(delta[i + 1], Rational(tau[i]));
    EXPECT_EQ(e4 * e4 * e4 - e6 * e6, delta.scaled(Rational(1728)));
    EXPECT_THROW(qexp::elliptic_form<Rational>("E8", 3), UnknownName);
}

TEST(Linalg, MatrixRank) {
    using R = Rational;
    EXPECT_EQ(qexp::matrix_rank({{R(1), R(2)}, {R(2), R(4)}}), 1u);
    EXPECT_EQ(qexp::matrix_rank({{R(1), R(2)}, {R(0), R(4)}}), 2u);
    EXPECT_EQ(qexp::matrix_rank({}), 0u);
    auto chi10 = theta::chi10<Integer>(2);
    EXPECT_EQ(qexp::rank_of_span(std::vector<FourierExpansion<Integer>>{chi10, chi10.scaled(Integer(-3))}), 1u);
}

TEST(Domains, ReductionModP) {
    auto chi10 = theta::chi10<Integer>(2);
    arith::PrimeField f(5);
    auto red = qexp::change_domain<arith::Fp>(chi10, f);
    EXPECT_EQ(red.coefficient(1, 1)[0].coefficient(0), f.from_int(-2));
}
