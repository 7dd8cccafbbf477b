#pragma once

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "siegel/arith/coefficients.hpp"
#include "siegel/qexp/fourier.hpp"

namespace siegel::theta {

using arith::Integer;
using arith::Rational;
using qexp::FourierExpansion;
using qexp::QSeries;
using qexp::WeightLabel;

/// Characteristic [mu'; mu''] with entries in {0, 1/2}, stored as bits (units of 1/2).
struct ThetaCharacteristic {
    std::array<int, 2> mu1{};
    std::array<int, 2> mu2{};

    /// 4 mu1 . mu2 mod 2.
    bool odd() const { return (mu1[0] * mu2[0] + mu1[1] * mu2[1]) % 2 == 1; }
    std::string str() const {
        auto h = [](int b) { return b ? std::string("1/2") : std::string("0"); };
        return "[" + h(mu1[0]) + "," + h(mu1[1]) + ";" + h(mu2[0]) + "," + h(mu2[1]) + "]";
    }
    friend bool operator==(const ThetaCharacteristic&, const ThetaCharacteristic&) = default;
};

/// All 16 characteristics, lexicographic on (mu', mu'').
inline std::vector<ThetaCharacteristic> all_characteristics() {
    std::vector<ThetaCharacteristic> out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) out.push_back({{a, b}, {c, d}});
    return out;
}

inline std::vector<ThetaCharacteristic> even_characteristics() {
    std::vector<ThetaCharacteristic> out;
    for (const auto& c : all_characteristics())
        if (!c.odd()) out.push_back(c);
    return out;
}

inline std::vector<ThetaCharacteristic> odd_characteristics() {
    std::vector<ThetaCharacteristic> out;
    for (const auto& c : all_characteristics())
        if (c.odd()) out.push_back(c);
    return out;
}

/// Series in q1^(1/8), q2^(1/8), r^(1/4) with integer coefficients, known for
/// q-exponents up to the truncation bound. Keys are (8 e1, 8 e2, 4 er).
class EighthExpansion {
public:
    using Key = std::array<int, 3>;

    EighthExpansion() = default;
    explicit EighthExpansion(int truncation, WeightLabel weight = {}, bool character = false)
        : n_(truncation), weight_(weight), character_(character) {
        if (truncation < 0) throw InvalidArgument("negative truncation");
    }

    static EighthExpansion one(int truncation) {
        EighthExpansion e(truncation);
        e.terms_[{0, 0, 0}] = Integer(1);
        return e;
    }

    int truncation() const noexcept { return n_; }
    const WeightLabel& weight() const noexcept { return weight_; }
    bool character() const noexcept { return character_; }
    void set_weight(WeightLabel w, bool character) {
        weight_ = w;
        character_ = character;
    }
    const std::map<Key, Integer>& terms() const noexcept { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Coefficient of q1^(a/8) q2^(b/8) r^(c/4).
    Integer coefficient(int a, int b, int c) const {
        auto it = terms_.find({a, b, c});
        return it == terms_.end() ? Integer(0) : it->second;
    }

    void add_term(const Key& k, const Integer& c) {
        if (k[0] < 0 || k[1] < 0 || k[0] > 8 * n_ || k[1] > 8 * n_) throw OutOfTruncation("exponent beyond truncation");
        auto [it, fresh] = terms_.try_emplace(k, Integer(0));
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    friend EighthExpansion operator+(const EighthExpansion& a, const EighthExpansion& b) {
        EighthExpansion out(std::min(a.n_, b.n_), a.weight_, a.character_);
        for (const auto* s : {&a, &b})
            for (const auto& [k, c] : s->terms_)
                if (k[0] <= 8 * out.n_ && k[1] <= 8 * out.n_) out.add_term(k, c);
        return out;
    }

    friend EighthExpansion operator*(const EighthExpansion& a, const EighthExpansion& b) {
        const int n = std::min(a.n_, b.n_);
        EighthExpansion out(n, {a.weight_.j + b.weight_.j, a.weight_.k + b.weight_.k}, a.character_ != b.character_);
        for (const auto& [ka, ca] : a.terms_) {
            if (ka[0] > 8 * n || ka[1] > 8 * n) continue;
            for (const auto& [kb, cb] : b.terms_) {
                Key k{ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]};
                if (k[0] > 8 * n || k[1] > 8 * n) continue;
                auto [it, fresh] = out.terms_.try_emplace(k, Integer(0));
                it->second.add_product(ca, cb);
            }
        }
        std::erase_if(out.terms_, [](const auto& kv) { return kv.second.is_zero(); });
        return out;
    }

    /// True when every exponent is integral.
    bool integral() const {
        for (const auto& [k, c] : terms_)
            if (k[0] % 8 || k[1] % 8 || k[2] % 4) return false;
        return true;
    }

    /// The same series as an integral q-expansion (valuation 0). Throws
    /// InvalidArgument on fractional exponents.
    QSeries<Integer> to_series() const {
        if (!integral()) throw InvalidArgument("series has fractional exponents");
        QSeries<Integer> s(arith::IntegerRing{}, 0, n_);
        for (const auto& [k, c] : terms_) {
            auto& cell = s.cell(k[0] / 8, k[1] / 8);
            cell += arith::LaurentPoly<Integer>::monomial(c, k[2] / 4);
        }
        return s;
    }

private:
    int n_ = 0;
    WeightLabel weight_{};
    bool character_ = false;
    std::map<Key, Integer> terms_;
};

/// Lattice range: |n_i| <= isqrt(2N) + 2 covers every exponent up to N.
inline int lattice_bound(int n) { return static_cast<int>(std::sqrt(2.0 * n)) + 2; }

namespace detail {

/// sum over n of w(n) (-1)^(n . 2mu'') q1^(v1^2/2) r^(v1 v2) q2^(v2^2/2) with v = n + mu'.
/// grad = -1 gives the constant, 0 / 1 the z1 / z2 derivative (up to the factor 2 pi i).
inline EighthExpansion lattice_sum(const ThetaCharacteristic& ch, int n, int grad) {
    EighthExpansion s(n, {0, 0}, false);
    const int m = lattice_bound(n);
    for (int n1 = -m; n1 <= m; ++n1)
        for (int n2 = -m; n2 <= m; ++n2) {
            const int v1 = 2 * n1 + ch.mu1[0], v2 = 2 * n2 + ch.mu1[1]; // 2v
            const int e1 = v1 * v1, e2 = v2 * v2;                         // 8 * v^2/2
            if (e1 > 8 * n || e2 > 8 * n) continue;
            const int sign = ((n1 * ch.mu2[0] + n2 * ch.mu2[1]) % 2 == 0) ? 1 : -1;
            const int w = grad < 0 ? 1 : (grad == 0 ? v1 : v2);
            if (w != 0) s.add_term({e1, e2, v1 * v2}, Integer(sign * w));
        }
    return s;
}

} // namespace detail

/// Theta constant theta[ch](tau, 0) as a series in q1, q2, r.
inline EighthExpansion even_theta_constant(const ThetaCharacteristic& ch, int n) {
    if (ch.odd()) throw OddCharacteristic("characteristic " + ch.str() + " is odd");
    auto s = detail::lattice_sum(ch, n, -1);
    s.set_weight({0, 0}, true);
    return s;
}

/// The gradient (d/dz1, d/dz2) of theta[ch] at z = 0, up to the common factor pi i.
inline std::array<EighthExpansion, 2> odd_theta_gradient(const ThetaCharacteristic& ch, int n) {
    if (!ch.odd()) throw EvenCharacteristic("characteristic " + ch.str() + " is even");
    return {detail::lattice_sum(ch, n, 0), detail::lattice_sum(ch, n, 1)};
}

/// Value of theta[ch](tau, 0); zero for odd ch.
inline EighthExpansion theta_constant_value(const ThetaCharacteristic& ch, int n) { return detail::lattice_sum(ch, n, -1); }

/// Product of the ten even theta constants (weight 5, with character).
inline EighthExpansion chi5_series(int n) {
    if (n < 1) throw InvalidArgument("truncation must be at least 1");
    EighthExpansion acc = EighthExpansion::one(n);
    for (const auto& ch : even_characteristics()) acc = acc * even_theta_constant(ch, n);
    acc.set_weight({0, 5}, true);
    return acc;
}

/// Product of the six gradient covectors G1 X1 + G2 X2 over the odd
/// characteristics; entry i is the coefficient of X1^(6-i) X2^i.
inline std::vector<EighthExpansion> chi6_3_series(int n) {
    if (n < 1) throw InvalidArgument("truncation must be at least 1");
    std::vector<EighthExpansion> poly{EighthExpansion::one(n)};
    for (const auto& ch : odd_characteristics()) {
        auto g = odd_theta_gradient(ch, n);
        std::vector<EighthExpansion> next(poly.size() + 1, EighthExpansion(n));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] = next[i] + poly[i] * g[0];
            next[i + 1] = next[i + 1] + poly[i] * g[1];
        }
        poly = std::move(next);
    }
    for (auto& p : poly) p.set_weight({6, 3}, true);
    return poly;
}

namespace detail {

/// Ratio lambda with actual = lambda * target; throws NormalizationFailure if
/// the two are not proportional or target is zero.
inline Rational proportionality(const std::vector<arith::LaurentPoly<Integer>>& actual,
                                const std::vector<arith::LaurentPoly<Integer>>& target) {
    std::optional<Rational> lambda;
    for (std::size_t i = 0; i < target.size(); ++i) {
        for (const auto& [e, t] : target[i].terms()) {
            Rational l = Rational(actual[i].coefficient(e)) / Rational(t);
            if (lambda && !(*lambda == l)) throw NormalizationFailure("normalizing coefficient is not proportional to the target");
            lambda = l;
        }
    }
    if (!lambda || lambda->is_zero()) throw NormalizationFailure("normalizing coefficient vanishes");
    for (std::size_t i = 0; i < target.size(); ++i) {
        auto lift = [](const Integer& x) { return Rational(x); };
        auto expect = target[i].template map_coefficients<Rational>({}, lift);
        auto got = actual[i].template map_coefficients<Rational>({}, lift);
        if (!(got == expect.scaled(*lambda))) throw NormalizationFailure("normalizing coefficient is not proportional to the target");
    }
    return *lambda;
}

/// Divide every cell by lambda and move into the domain of C.
template <arith::Coefficient C>
QSeries<C> rescale(const QSeries<Integer>& s, const Rational& lambda, const typename C::Domain& d) {
    QSeries<C> out(d, s.valuation(), s.precision());
    for (int m1 = 0; m1 <= s.precision(); ++m1)
        for (int m2 = 0; m2 <= s.precision(); ++m2) {
            out.cell(m1, m2) = s.cell(m1, m2).template map_coefficients<C>(d, [&](const Integer& c) { return d.from_rational(Rational(c) / lambda); });
        }
    return out;
}

/// Move a box series of known valuation >= 1 to valuation 1.
template <arith::Coefficient C>
QSeries<C> drop_axes(const QSeries<C>& s) {
    for (int m = 0; m <= s.precision(); ++m)
        if (!s.cell(0, m).is_zero() || !s.cell(m, 0).is_zero()) throw NormalizationFailure("cusp form has a nonzero axis coefficient");
    QSeries<C> out(s.domain(), 1, s.precision() - 1);
    for (int m1 = 0; m1 <= out.precision(); ++m1)
        for (int m2 = 0; m2 <= out.precision(); ++m2) out.cell(m1, m2) = s.cell(m1 + 1, m2 + 1);
    return out;
}

} // namespace detail

/// chi10 = chi5^2 scaled so its (1,1) coefficient is r^-1 - 2 + r. Known on [0, N]^2.
template <arith::Coefficient C = Rational>
FourierExpansion<C> chi10(int n, const typename C::Domain& d = {}) {
    auto c5 = chi5_series(n);
    auto sq = (c5 * c5).to_series();
    if (n < 1) throw InvalidArgument("truncation must be at least 1");
    auto target = arith::laurent<Integer>({}, {{-1, 1}, {0, -2}, {1, 1}});
    Rational lambda = detail::proportionality({sq.cell(1, 1)}, {target});
    auto s = detail::drop_axes(detail::rescale<C>(sq, lambda, d));
    return FourierExpansion<C>({0, 10}, false, {s});
}

/// The (1,1) coefficient pinned for chi6_8.
inline std::vector<arith::LaurentPoly<Integer>> chi6_8_pin() {
    using arith::laurent;
    arith::IntegerRing z;
    auto zero = arith::LaurentPoly<Integer>(z);
    auto t = laurent<Integer>(z, {{-1, 1}, {0, -2}, {1, 1}});
    return {zero, zero, t, laurent<Integer>(z, {{-1, -2}, {1, 2}}), t, zero, zero};
}

/// chi6_8 = chi5 * chi6_3 scaled to the pinned (1,1) coefficient. Known on [0, N]^2.
template <arith::Coefficient C = Rational>
FourierExpansion<C> chi6_8(int n, const typename C::Domain& d = {}) {
    auto c5 = chi5_series(n);
    auto c63 = chi6_3_series(n);
    std::vector<QSeries<Integer>> raw;
    for (const auto& p : c63) raw.push_back((c5 * p).to_series());
    std::vector<arith::LaurentPoly<Integer>> at11;
    for (const auto& s : raw) at11.push_back(s.cell(1, 1));
    Rational lambda = detail::proportionality(at11, chi6_8_pin());
    std::vector<QSeries<C>> coords;
    for (const auto& s : raw) coords.push_back(detail::drop_axes(detail::rescale<C>(s, lambda, d)));
    return FourierExpansion<C>({6, 8}, false, std::move(coords));
}

/// Normalizing scalars: chi5^2 = lambda10 * chi10 and chi5 * chi6_3 = lambda68 * chi6_8.
inline std::pair<Rational, Rational> normalization_constants(int n = 2) {
    auto c5 = chi5_series(n);
    auto sq = (c5 * c5).to_series();
    auto target = arith::laurent<Integer>({}, {{-1, 1}, {0, -2}, {1, 1}});
    Rational l10 = detail::proportionality({sq.cell(1, 1)}, {target});
    std::vector<arith::LaurentPoly<Integer>> at11;
    for (const auto& p : chi6_3_series(n)) at11.push_back((c5 * p).to_series().cell(1, 1));
    return {l10, detail::proportionality(at11, chi6_8_pin())};
}

} // namespace siegel::theta
