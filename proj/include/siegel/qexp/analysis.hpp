#pragma once

#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "siegel/qexp/elliptic.hpp"
#include "siegel/qexp/fourier.hpp"

namespace siegel::qexp {

/// Siegel operator: n -> r^0 part of coordinate 0 at (n, 0). The other
/// coordinates of the n2 = 0 slice must vanish.
template <Coefficient C>
EllipticExpansion<C> siegel_phi(const FourierExpansion<C>& a) {
    if (a.character()) throw CharacterForm("the Siegel operator is not defined here for forms with character");
    const int n = a.truncation();
    EllipticExpansion<C> out(a.domain(), a.weight().k, n);
    for (int n1 = 0; n1 <= n; ++n1) {
        auto vec = a.coefficient(n1, 0);
        for (std::size_t i = 0; i < vec.size(); ++i) {
            if (vec[i].is_zero()) continue;
            if (i != 0 || vec[i].min_exponent() != 0 || vec[i].max_exponent() != 0)
                throw SupportViolation("nonzero boundary coefficient outside the r^0 part of coordinate 0 at (" +
                                       std::to_string(n1) + ",0)");
        }
        out[n1] = vec[0].coefficient(0);
    }
    return out;
}

/// Restriction to the product locus (r = 1): entry [i][n1][n2] is coordinate i at (n1, n2).
template <Coefficient C>
using A11Restriction = std::vector<std::vector<std::vector<C>>>;

template <Coefficient C>
A11Restriction<C> restrict_to_a11(const FourierExpansion<C>& a) {
    if (a.character()) throw CharacterForm("restriction is only supported for forms without character");
    const int n = a.truncation();
    A11Restriction<C> out(a.dimension(), std::vector<std::vector<C>>(static_cast<std::size_t>(n + 1),
                                                                      std::vector<C>(static_cast<std::size_t>(n + 1), a.domain().zero())));
    for (int n1 = 0; n1 <= n; ++n1)
        for (int n2 = 0; n2 <= n; ++n2) {
            auto vec = a.coefficient(n1, n2);
            for (std::size_t i = 0; i < vec.size(); ++i) out[i][static_cast<std::size_t>(n1)][static_cast<std::size_t>(n2)] = vec[i].at_one();
        }
    return out;
}

/// Orders of vanishing along r = 1; nullopt means no nonzero coefficient in
/// the known box. Truncation makes these upper bounds for the true orders.
struct A11Order {
    std::vector<std::optional<int>> per_coordinate;
    std::optional<int> overall;
};

template <Coefficient C>
A11Order a11_order(const FourierExpansion<C>& a) {
    A11Order out;
    const int v = a.valuation(), n = a.truncation();
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        std::optional<int> best;
        for (int n1 = v; n1 <= n; ++n1)
            for (int n2 = v; n2 <= n; ++n2) {
                auto o = a.coordinate(i).coefficient(n1, n2).vanishing_order_at_one();
                if (o && (!best || *o < *best)) best = o;
            }
        out.per_coordinate.push_back(best);
        if (best && (!out.overall || *best < *out.overall)) out.overall = best;
    }
    return out;
}

/// coefficient(n2, n1)[j - i] == (-1)^k coefficient(n1, n2)[i] on the known box.
template <Coefficient C>
bool swap_symmetry_check(const FourierExpansion<C>& a) {
    const int v = a.valuation(), n = a.truncation();
    const std::size_t j = a.dimension() - 1;
    const bool odd = a.weight().k % 2 != 0;
    for (int n1 = v; n1 <= n; ++n1)
        for (int n2 = v; n2 <= n; ++n2) {
            auto x = a.coefficient(n1, n2), y = a.coefficient(n2, n1);
            for (std::size_t i = 0; i <= j; ++i)
                if (!(y[j - i] == (odd ? -x[i] : x[i]))) return false;
        }
    return true;
}

/// coordinate i with r -> 1/r equals (-1)^(i + k) coordinate i.
template <Coefficient C>
bool r_inversion_check(const FourierExpansion<C>& a) {
    const int v = a.valuation(), n = a.truncation();
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        const bool flip = (static_cast<int>(i) + a.weight().k) % 2 != 0;
        for (int n1 = v; n1 <= n; ++n1)
            for (int n2 = v; n2 <= n; ++n2) {
                const auto& x = a.coordinate(i).coefficient(n1, n2);
                if (!(x.inverted() == (flip ? -x : x))) return false;
            }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Text rendering.

/// Laurent polynomial with its content pulled out, e.g. "-2*(r^-1 - r)". The
/// sign of the content follows the lowest-exponent coefficient.
template <Coefficient C>
std::string render_laurent(const LaurentPoly<C>& l) {
    if constexpr (std::is_same_v<C, arith::Integer> || std::is_same_v<C, arith::Rational>) {
        if (l.size() < 2) return l.str();
        mpz_class g = 0, den = 1;
        for (const auto& [e, c] : l.terms()) {
            if constexpr (std::is_same_v<C, arith::Integer>) {
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.value().get_mpz_t());
            } else {
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.value().get_num_mpz_t());
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.value().get_den_mpz_t());
            }
        }
        mpq_class content(g, den);
        content.canonicalize();
        if (l.terms().front().second.sign() < 0) content = -content;
        if (content == 1) return l.str();
        auto inner = l.template map_coefficients<arith::Rational>({}, [&](const C& c) {
            return arith::Rational(mpq_class(mpq_class(c.value()) / content));
        });
        std::string cs = content == -1 ? "-" : arith::Rational(content).str() + "*";
        return cs + "(" + inner.str() + ")";
    } else {
        return l.str();
    }
}

inline std::string q_monomial(int n1, int n2) {
    auto part = [](const std::string& v, int e) { return e == 0 ? std::string() : e == 1 ? v : v + "^" + std::to_string(e); };
    std::string a = part("q1", n1), b = part("q2", n2);
    if (a.empty() && b.empty()) return "1";
    if (a.empty()) return b;
    if (b.empty()) return a;
    return a + "*" + b;
}

/// Display in graded order of n1 + n2: one block per nonzero q-monomial, one
/// line per coordinate (coordinate i multiplies X1^(j-i) X2^i).
template <Coefficient C>
std::string render(const FourierExpansion<C>& a, const std::string& name = "") {
    std::ostringstream os;
    if (!name.empty()) os << name << " ";
    os << "weight " << a.weight().str() << (a.character() ? " with character" : "") << ", truncation " << a.truncation()
       << "\n";
    const int v = a.valuation(), n = a.truncation();
    bool any = false;
    for (int g = 2 * v; g <= 2 * n; ++g)
        for (int n1 = std::max(v, g - n); n1 <= std::min(g - v, n); ++n1) {
            auto vec = a.coefficient(n1, g - n1);
            bool nz = false;
            for (const auto& l : vec) nz = nz || !l.is_zero();
            if (!nz) continue;
            any = true;
            if (vec.size() == 1) {
                os << q_monomial(n1, g - n1) << ": " << render_laurent(vec[0]) << "\n";
            } else {
                os << q_monomial(n1, g - n1) << ":\n";
                for (const auto& l : vec) os << "  " << render_laurent(l) << "\n";
            }
        }
    if (!any) os << "0\n";
    return os.str();
}

} // namespace siegel::qexp
