#pragma once

#include <array>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "siegel/covariants/multipoly.hpp"

namespace siegel::cov {

using arith::Rational;
using Poly = MultiPoly<Rational>;

inline constexpr std::size_t kX1 = 7;
inline constexpr std::size_t kX2 = 8;

/// Weight of a vector-valued form: Sym^j tensor det^k.
struct WeightLabel {
    int j = 0;
    int k = 0;
    friend bool operator==(const WeightLabel&, const WeightLabel&) = default;
    std::string str() const { return "(" + std::to_string(j) + "," + std::to_string(k) + ")"; }
};

/// A polynomial in a0..a6, x1, x2 together with its bidegree. Construction
/// asserts that the polynomial is bihomogeneous of the stated bidegree.
class Covariant {
public:
    Covariant(Poly poly, int degree, int order) : poly_(std::move(poly)), degree_(degree), order_(order) {
        if (!(*poly_.variables() == *sextic_variables())) throw InvalidArgument("covariant must live in a0..a6, x1, x2");
        if (degree < 0 || order < 0) throw InvalidArgument("negative bidegree");
        if (!poly_.is_zero()) {
            auto d = poly_.partial_degree(0, 7);
            auto j = poly_.partial_degree(kX1, kX2 + 1);
            if (!d || !j || static_cast<int>(*d) != degree || static_cast<int>(*j) != order)
                throw InvalidArgument("polynomial is not bihomogeneous of bidegree (" + std::to_string(degree) + ", " +
                                      std::to_string(order) + ")");
        }
    }

    /// Infer the bidegree from a nonzero bihomogeneous polynomial.
    static Covariant from_poly(Poly poly) {
        if (poly.is_zero()) throw InvalidArgument("cannot infer the bidegree of zero");
        auto d = poly.partial_degree(0, 7);
        auto j = poly.partial_degree(kX1, kX2 + 1);
        if (!d || !j) throw InvalidArgument("polynomial is not bihomogeneous in (a0..a6) and (x1, x2)");
        return Covariant(std::move(poly), static_cast<int>(*d), static_cast<int>(*j));
    }

    const Poly& poly() const noexcept { return poly_; }
    int degree() const noexcept { return degree_; }
    int order() const noexcept { return order_; }

    friend Covariant operator*(const Covariant& a, const Covariant& b) {
        return Covariant(a.poly_ * b.poly_, a.degree_ + b.degree_, a.order_ + b.order_);
    }
    friend Covariant operator+(const Covariant& a, const Covariant& b) {
        if (a.degree_ != b.degree_ || a.order_ != b.order_) throw InvalidArgument("adding covariants of different bidegree");
        return Covariant(a.poly_ + b.poly_, a.degree_, a.order_);
    }
    friend Covariant operator-(const Covariant& a, const Covariant& b) {
        if (a.degree_ != b.degree_ || a.order_ != b.order_) throw InvalidArgument("subtracting covariants of different bidegree");
        return Covariant(a.poly_ - b.poly_, a.degree_, a.order_);
    }
    Covariant scaled(const Rational& c) const { return Covariant(poly_.scaled(c), degree_, order_); }
    Covariant pow(unsigned n) const { return Covariant(poly_.pow(n), degree_ * static_cast<int>(n), order_ * static_cast<int>(n)); }
    friend bool operator==(const Covariant& a, const Covariant& b) {
        return a.degree_ == b.degree_ && a.order_ == b.order_ && a.poly_ == b.poly_;
    }

    /// Coefficient of a monomial in the a's (x-exponents taken from `m` as well).
    Rational coefficient(const Monomial& m) const { return poly_.coefficient(m); }

private:
    Poly poly_;
    int degree_;
    int order_;
};

/// Monomial in a0..a6 given as an exponent list.
inline Monomial a_monomial(std::array<unsigned, 7> e) {
    Monomial m;
    for (std::size_t i = 0; i < 7; ++i) m.e[i] = static_cast<std::uint8_t>(e[i]);
    return m;
}

/// f = sum a_i x1^(6-i) x2^i.
inline Covariant universal_sextic() {
    std::vector<Poly::Term> terms;
    for (unsigned i = 0; i <= 6; ++i) terms.emplace_back(monomial({{i, 1}, {kX1, 6 - i}, {kX2, i}}), Rational(1));
    return Covariant(Poly(sextic_variables(), {}, std::move(terms)), 1, 6);
}

inline Rational factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(mpq_class(f));
}

inline long binomial(unsigned n, unsigned k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b.get_si();
}

/// k-th transvectant (g, h)_k with the factorial normalization
/// (m-k)!(n-k)!/(m! n!) where m, n are the orders of g and h.
inline Covariant transvectant(const Covariant& g, const Covariant& h, int k) {
    if (k < 0) throw InvalidArgument("negative transvectant index");
    const int m = g.order(), n = h.order();
    if (k > m || k > n)
        throw OrderTooSmall("transvectant index " + std::to_string(k) + " exceeds order " + std::to_string(std::min(m, n)));
    const auto ku = static_cast<unsigned>(k);
    Poly sum(sextic_variables());
    for (unsigned j = 0; j <= ku; ++j) {
        Poly dg = g.poly().derivative(kX1, ku - j).derivative(kX2, j);
        Poly dh = h.poly().derivative(kX1, j).derivative(kX2, ku - j);
        Poly term = dg * dh;
        long b = binomial(ku, j);
        sum += term.scaled(Rational((j % 2) ? -b : b));
    }
    Rational norm = factorial(static_cast<unsigned>(m - k)) * factorial(static_cast<unsigned>(n - k)) /
                    (factorial(static_cast<unsigned>(m)) * factorial(static_cast<unsigned>(n)));
    return Covariant(sum.scaled(norm), g.degree() + h.degree(), m + n - 2 * k);
}

/// Rescale to content 1 with positive leading coefficient.
inline Covariant canonical_rescale(const Covariant& c) {
    if (c.poly().is_zero()) return c;
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [m, x] : c.poly().terms()) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.value().get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.value().get_den_mpz_t());
    }
    mpq_class s(den_lcm, num_gcd);
    if (c.poly().leading_term().second.sign() < 0) s = -s;
    return c.scaled(Rational(s));
}

// ---------------------------------------------------------------------------
// SL2 action.

using Matrix2 = std::array<std::array<long, 2>, 2>;

inline long det(const Matrix2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

/// Coefficients a'_i (as linear forms in a0..a6) of f(m00 x1 + m01 x2, m10 x1 + m11 x2).
inline std::vector<Poly> induced_coefficients(const Matrix2& m) {
    auto vars = sextic_variables();
    Poly y1 = Poly::variable(vars, {}, kX1).scaled(Rational(m[0][0])) + Poly::variable(vars, {}, kX2).scaled(Rational(m[0][1]));
    Poly y2 = Poly::variable(vars, {}, kX1).scaled(Rational(m[1][0])) + Poly::variable(vars, {}, kX2).scaled(Rational(m[1][1]));
    std::vector<Poly> sub;
    for (std::size_t i = 0; i < 7; ++i) sub.push_back(Poly::variable(vars, {}, i));
    sub.push_back(y1);
    sub.push_back(y2);
    Poly g = substitute<Rational>(universal_sextic().poly(), sub, vars);
    std::vector<Poly> out(7, Poly(vars));
    for (const auto& [mono, c] : g.terms()) {
        unsigned i = mono.e[kX2];
        Monomial am = mono;
        am.e[kX1] = am.e[kX2] = 0;
        out[i] += Poly(vars, {}, {{am, c}});
    }
    return out;
}

/// Substitute the coefficients of f(m x) for a0..a6 in c, leaving x1, x2 alone.
/// For a covariant this agrees with substitute_x(m, c); for an invariant it is the identity.
inline Covariant act_sl2(const Matrix2& m, const Covariant& c) {
    if (det(m) != 1) throw NotUnimodular("matrix has determinant " + std::to_string(det(m)));
    auto vars = sextic_variables();
    std::vector<Poly> sub = induced_coefficients(m);
    sub.push_back(Poly::variable(vars, {}, kX1));
    sub.push_back(Poly::variable(vars, {}, kX2));
    return Covariant(substitute<Rational>(c.poly(), sub, vars), c.degree(), c.order());
}

/// c(a, m x): the linear substitution on x1, x2 only.
inline Covariant substitute_x(const Matrix2& m, const Covariant& c) {
    auto vars = sextic_variables();
    std::vector<Poly> sub;
    for (std::size_t i = 0; i < 7; ++i) sub.push_back(Poly::variable(vars, {}, i));
    sub.push_back(Poly::variable(vars, {}, kX1).scaled(Rational(m[0][0])) + Poly::variable(vars, {}, kX2).scaled(Rational(m[0][1])));
    sub.push_back(Poly::variable(vars, {}, kX1).scaled(Rational(m[1][0])) + Poly::variable(vars, {}, kX2).scaled(Rational(m[1][1])));
    return Covariant(substitute<Rational>(c.poly(), sub, vars), c.degree(), c.order());
}

/// Covariance certificate on the given matrices: acting on the coefficients
/// equals substituting the variables.
inline bool is_covariant(const Covariant& c, std::span<const Matrix2> samples) {
    for (const auto& m : samples)
        if (!(act_sl2(m, c) == substitute_x(m, c))) return false;
    return true;
}

/// Split an order-j covariant into the coefficients of x1^(j-i) x2^i (polynomials in the a's only).
inline std::vector<Poly> coordinates(const Covariant& c) {
    auto vars = sextic_variables();
    std::vector<Poly> out(static_cast<std::size_t>(c.order() + 1), Poly(vars));
    std::vector<std::vector<Poly::Term>> buckets(out.size());
    for (const auto& [mono, x] : c.poly().terms()) {
        Monomial am = mono;
        am.e[kX1] = am.e[kX2] = 0;
        buckets[mono.e[kX2]].emplace_back(am, x);
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = Poly(vars, {}, std::move(buckets[i]));
    return out;
}

} // namespace siegel::cov
