#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "siegel/covariants/invariants.hpp"
#include "siegel/qexp/fourier.hpp"
#include "siegel/theta/theta.hpp"

namespace siegel::nu {

using arith::Coefficient;
using cov::Covariant;
using qexp::FourierExpansion;
using qexp::QSeries;
using qexp::WeightLabel;

/// Seeds chi6_8 and chi10 computed from theta series, memoized per truncation.
template <Coefficient C>
class Seeds {
public:
    static Seeds& instance() {
        static Seeds s;
        return s;
    }

    const FourierExpansion<C>& chi6_8(int n) {
        std::lock_guard lock(mu_);
        auto it = chi68_.find(n);
        if (it == chi68_.end()) it = chi68_.emplace(n, theta::chi6_8<C>(n, typename C::Domain{})).first;
        return it->second;
    }

    const FourierExpansion<C>& chi10(int n) {
        std::lock_guard lock(mu_);
        auto it = chi10_.find(n);
        if (it == chi10_.end()) it = chi10_.emplace(n, theta::chi10<C>(n, typename C::Domain{})).first;
        return it->second;
    }

private:
    std::mutex mu_;
    std::map<int, FourierExpansion<C>> chi68_;
    std::map<int, FourierExpansion<C>> chi10_;
};

/// (j, d - j/2): the weight of nu(c) for a covariant of degree d and order j. Throws OddOrder.
inline WeightLabel weight_of_covariant(int d, int j) {
    if (j % 2 != 0) throw OddOrder("order " + std::to_string(j) + " is odd");
    return {j, d - j / 2};
}

/// Substitute the coordinates of chi6_8 (computed from theta series known on
/// [0, N]^2) for a0..a6 and X1, X2 for x1, x2. The result is chi10^d nu(c), of
/// weight (j, 11d - j/2), valuation d and truncation d + N - 1.
template <Coefficient C = arith::Integer>
FourierExpansion<C> nu_raw(const Covariant& c, int n) {
    if (n < 1) throw InvalidArgument("seed truncation must be at least 1");
    if (c.order() % 2 != 0) throw OddOrder("order " + std::to_string(c.order()) + " is odd");
    const auto& beta = Seeds<C>::instance().chi6_8(n);
    typename C::Domain d{};
    const int prec = n - 1;
    std::vector<QSeries<C>> values;
    for (std::size_t i = 0; i < 7; ++i) values.push_back(beta.coordinate(i));
    // x1, x2 never occur in the coordinate polynomials.
    values.push_back(QSeries<C>::constant(d.one(), prec));
    values.push_back(QSeries<C>::constant(d.one(), prec));
    auto lift = [&](const arith::Rational& q) { return QSeries<C>::constant(d.from_rational(q), prec); };
    auto mul = [](const QSeries<C>& a, const QSeries<C>& b) { return a * b; };
    auto add = [](const QSeries<C>& a, const QSeries<C>& b) { return a + b; };
    const QSeries<C> zero(d, c.degree(), prec);
    std::vector<QSeries<C>> coords;
    for (const auto& p : cov::coordinates(c)) {
        QSeries<C> s = cov::evaluate<QSeries<C>>(p, std::span<const QSeries<C>>(values), lift, mul, add, zero);
        coords.push_back(s.valuation() > c.degree() ? s.with_valuation(c.degree()) : s);
    }
    return FourierExpansion<C>({c.order(), 11 * c.degree() - c.order() / 2}, false, std::move(coords));
}

template <Coefficient C>
struct NuResult {
    FourierExpansion<C> expansion;
    int degree = 0;
    int order = 0;
    int chi10_power = 0;
    bool holomorphic = false;
};

/// chi10^m nu(c) known on [0, N]^2: nu_raw divided d - m times by chi10.
/// NotDivisible (or SupportViolation) means chi10^m nu(c) is not holomorphic.
template <Coefficient C = arith::Integer>
NuResult<C> nu_normalized(const Covariant& c, int m, int n) {
    if (m < 0 || m > c.degree()) throw InvalidArgument("chi10 power must lie in [0, degree]");
    if (n < 1) throw InvalidArgument("truncation must be at least 1");
    const int seed = std::max(1, n + 1 - m);
    FourierExpansion<C> e = nu_raw<C>(c, seed);
    const auto& chi10 = Seeds<C>::instance().chi10(seed);
    for (int i = 0; i < c.degree() - m; ++i) e = qexp::exact_div(e, chi10);
    if (auto bad = qexp::support_violation(e)) throw SupportViolation("expansion violates the support condition");
    NuResult<C> r{e.truncated(n), c.degree(), c.order(), m, true};
    return r;
}

/// Least m with a11_order_bound(c) + 2m >= 0: a power of chi10 that certainly suffices.
inline int minimal_chi10_power(const Covariant& c) {
    const int b = cov::a11_order_bound(c);
    if (b >= 0) return 0;
    return (-b + 1) / 2;
}

/// The smallest m for which nu_normalized(c, m, N) succeeds, found by lowering
/// the certified power until division fails.
template <Coefficient C = arith::Integer>
int actual_minimal_chi10_power(const Covariant& c, int n) {
    int m = minimal_chi10_power(c);
    while (m > 0) {
        try {
            nu_normalized<C>(c, m - 1, n);
        } catch (const NotDivisible&) {
            break;
        } catch (const SupportViolation&) {
            break;
        }
        --m;
    }
    return m;
}

} // namespace siegel::nu
