#include <array>
#include <random>

#include <gtest/gtest.h>

#include "siegel/covariants/parse.hpp"

using namespace siegel;
using arith::Rational;
using cov::Covariant;

namespace {

constexpr int kCases = 200;

/// Coefficients of f(a x1 + b x2, c x1 + d x2) for f = sum a_i x1^(6-i) x2^i,
/// expanded by hand with binomials.
std::array<Rational, 7> act(const std::array<long, 7>& f, long a, long b, long c, long d) {
    std::array<Rational, 7> out{};
    auto binom = [](int n, int k) {
        long r = 1;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    auto ipow = [](long x, int e) {
        long r = 1;
        while (e-- > 0) r *= x;
        return r;
    };
    for (int i = 0; i <= 6; ++i) {
        // (a x1 + b x2)^(6-i) (c x1 + d x2)^i
        for (int s = 0; s <= 6 - i; ++s)
            for (int t = 0; t <= i; ++t) {
                // x2-degree s + t
                long coeff = binom(6 - i, s) * ipow(a, 6 - i - s) * ipow(b, s) * binom(i, t) * ipow(c, i - t) * ipow(d, t);
                out[static_cast<std::size_t>(s + t)] += Rational(f[static_cast<std::size_t>(i)] * coeff);
            }
    }
    return out;
}

Rational evaluate(const Covariant& inv, const std::array<Rational, 7>& a) {
    std::vector<Rational> vals(a.begin(), a.end());
    vals.emplace_back(1);
    vals.emplace_back(1);
    return cov::evaluate<Rational>(
        inv.poly(), std::span<const Rational>(vals), [](const Rational& r) { return r; },
        [](const Rational& x, const Rational& y) { return x * y; }, [](const Rational& x, const Rational& y) { return x + y; },
        Rational(0));
}

} // namespace

TEST(Covariants, InvariantAPrinted) {
    EXPECT_EQ(cov::invariant("A").poly().str(), "120*a0*a6 - 20*a1*a5 + 8*a2*a4 - 3*a3^2");
}

TEST(Covariants, Bidegrees) {
    struct Case {
        const char* name;
        int d, j;
    };
    for (auto c : std::vector<Case>{{"f", 1, 6}, {"C2,0", 2, 0}, {"C2,4", 2, 4}, {"C2,8", 2, 8}, {"C3,2", 3, 2},
                                    {"H", 2, 8}, {"V8,4", 2, 4}, {"A", 2, 0}, {"B", 4, 0}, {"C", 6, 0}, {"D", 10, 0}, {"E", 15, 0}}) {
        const auto& cv = cov::grace_young(c.name);
        EXPECT_EQ(cv.degree(), c.d) << c.name;
        EXPECT_EQ(cv.order(), c.j) << c.name;
    }
}

TEST(Covariants, TermCounts) {
    EXPECT_EQ(cov::invariant("C").poly().terms().size(), 56u);
    EXPECT_EQ(cov::invariant("D").poly().terms().size(), 246u);
    EXPECT_EQ(cov::invariant("E").poly().terms().size(), 1370u);
    EXPECT_EQ(cov::psi6_invariant().poly().terms().size(), 52u);
}

TEST(Covariants, PinnedLeadingTerms) {
    using cov::a_monomial;
    EXPECT_EQ(cov::invariant("B").coefficient(a_monomial({1, 0, 0, 2, 0, 0, 1})), Rational(81));
    EXPECT_EQ(cov::invariant("B").coefficient(a_monomial({0, 0, 0, 4, 0, 0, 0})), Rational(0));
    EXPECT_EQ(cov::invariant("C").coefficient(a_monomial({1, 0, 0, 4, 0, 0, 1})), Rational(162));
    EXPECT_EQ(cov::invariant("D").coefficient(a_monomial({2, 0, 0, 6, 0, 0, 2})), Rational(729));
    EXPECT_EQ(cov::invariant("E").coefficient(a_monomial({2, 0, 0, 10, 0, 3, 0})), Rational(-729));
}

TEST(Covariants, Psi6IsMinus8ABMinus3C) {
    const auto& A = cov::invariant("A");
    auto expected = (A * cov::invariant("B")).scaled(Rational(-8)) - cov::invariant("C").scaled(Rational(3));
    EXPECT_EQ(cov::psi6_invariant(), expected);
}

TEST(Covariants, A11OrderBounds) {
    EXPECT_EQ(cov::a11_order_bound(cov::grace_young("f")), -1);
    EXPECT_EQ(cov::a11_order_bound(cov::invariant("A")), -2);
    EXPECT_EQ(cov::a11_order_bound(cov::invariant("D")), 2);
    EXPECT_EQ(cov::a11_order_bound(cov::invariant("E")), -3);
    EXPECT_EQ(cov::a11_order_bound(cov::grace_young("H")), -2);
    EXPECT_EQ(cov::a11_order_bound(cov::grace_young("V8,4")), -2);
}

TEST(Covariants, TransvectantErrors) {
    const auto& f = cov::grace_young("f");
    EXPECT_THROW(cov::transvectant(f, cov::invariant("A"), 1), OrderTooSmall);
    EXPECT_THROW(cov::transvectant(f, f, -1), InvalidArgument);
    EXPECT_THROW(cov::grace_young("nosuch"), UnknownName);
    EXPECT_THROW(cov::invariant("H"), UnknownName);
}

TEST(Covariants, ActSl2RejectsNonUnimodular) {
    EXPECT_THROW(cov::act_sl2({{{2, 0}, {0, 1}}}, cov::invariant("A")), NotUnimodular);
}

TEST(Covariants, TransvectantGradingProperty) {
    std::mt19937_64 rng(21);
    const std::vector<std::string> pool{"f", "C2,0", "C2,4", "C2,8", "C3,2", "C3,6", "C4,4", "A"};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    int done = 0;
    for (int i = 0; i < kCases; ++i) {
        const auto& g = cov::grace_young(pool[pick(rng)]);
        const auto& h = cov::grace_young(pool[pick(rng)]);
        if (g.degree() + h.degree() > 5) continue;
        std::uniform_int_distribution<int> kk(0, std::min(g.order(), h.order()));
        const int k = kk(rng);
        auto t = cov::transvectant(g, h, k);
        ASSERT_EQ(t.degree(), g.degree() + h.degree());
        ASSERT_EQ(t.order(), g.order() + h.order() - 2 * k);
        ++done;
    }
    EXPECT_GT(done, kCases / 3);
}

TEST(Covariants, CovarianceCertificate) {
    std::vector<cov::Matrix2> samples{{{{1, 1}, {0, 1}}}, {{{1, 0}, {2, 1}}}, {{{0, -1}, {1, 0}}}, {{{2, 1}, {1, 1}}}};
    for (const char* name : {"f", "C2,4", "C2,8", "C3,2", "H"}) EXPECT_TRUE(cov::is_covariant(cov::grace_young(name), samples)) << name;
}

TEST(Covariants, InvariantsAreSl2InvariantProperty) {
    // Oracle: the transformed sextic is expanded by hand above.
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<long> coef(-3, 3), ent(-3, 3);
    for (int i = 0; i < kCases; ++i) {
        std::array<long, 7> f;
        for (auto& x : f) x = coef(rng);
        long a, b, c, d;
        do {
            a = ent(rng), b = ent(rng), c = ent(rng);
        } while (a == 0 || (1 + b * c) % a != 0);
        d = (1 + b * c) / a;
        auto g = act(f, a, b, c, d);
        std::array<Rational, 7> fr;
        for (std::size_t k = 0; k < 7; ++k) fr[k] = Rational(f[k]);
        for (const char* name : {"A", "B", "C", "D", "E"}) {
            const auto& inv = cov::invariant(name);
            ASSERT_EQ(evaluate(inv, fr), evaluate(inv, g)) << name << " case " << i;
        }
    }
}

TEST(Covariants, CanonicalRescale) {
    auto h = cov::grace_young("H");
    mpz_class g = 0;
    for (const auto& [m, x] : h.poly().terms()) {
        ASSERT_TRUE(x.is_integer());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.value().get_num_mpz_t());
    }
    EXPECT_EQ(g, 1);
    EXPECT_GT(h.poly().leading_term().second.sign(), 0);
}

TEST(Parser, InlinePolynomials) {
    auto a = cov::resolve_covariant("120*a0*a6 - 20*a1*a5 + 8*a2*a4 - 3*a3^2");
    EXPECT_EQ(a, cov::invariant("A"));
    auto p = cov::parse_polynomial("(a0*x1 + a1/2*x2)^2 - a0^2*x1^2");
    EXPECT_EQ(p.str(), "a0*a1*x1*x2 + 1/4*a1^2*x2^2");
    EXPECT_EQ(cov::resolve_covariant("C2,0").order(), 0);
    EXPECT_EQ(cov::parse_polynomial("-a0 + 2").str(), cov::parse_polynomial("2 - a0").str());
}

TEST(Parser, ErrorsCarryPositions) {
    auto pos = [](const std::string& s) -> std::size_t {
        try {
            cov::parse_polynomial(s);
        } catch (const ParseError& e) {
            return e.position();
        }
        return std::string::npos;
    };
    EXPECT_EQ(pos("a0 +* a1"), 4u);
    EXPECT_EQ(pos("a0 + a9"), 5u);
    EXPECT_EQ(pos("(a0"), 3u);
    EXPECT_EQ(pos("a0^"), 3u);
    EXPECT_EQ(pos("3/0"), 2u);
    EXPECT_EQ(pos(""), 0u);
    EXPECT_THROW(cov::resolve_covariant("a0 + x1"), InvalidArgument);
    EXPECT_THROW(cov::resolve_covariant("0"), InvalidArgument);
}
