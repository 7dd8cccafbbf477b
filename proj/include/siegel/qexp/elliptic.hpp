#pragma once

#include <string>
#include <vector>

#include "siegel/arith/coefficients.hpp"

namespace siegel::qexp {

/// Truncated q-expansion of an elliptic modular form: coefficients 0..N.
template <arith::Coefficient C>
class EllipticExpansion {
public:
    EllipticExpansion() = default;
    EllipticExpansion(typename C::Domain d, int weight, int truncation)
        : dom_(std::move(d)), weight_(weight), c_(static_cast<std::size_t>(truncation + 1), dom_.zero()) {
        if (truncation < 0) throw InvalidArgument("negative truncation");
    }
    EllipticExpansion(typename C::Domain d, int weight, std::vector<C> coeffs)
        : dom_(std::move(d)), weight_(weight), c_(std::move(coeffs)) {
        if (c_.empty()) throw InvalidArgument("empty expansion");
    }

    int weight() const noexcept { return weight_; }
    int truncation() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const typename C::Domain& domain() const noexcept { return dom_; }
    const std::vector<C>& coefficients() const noexcept { return c_; }
    const C& operator[](int n) const {
        if (n < 0 || n > truncation()) throw OutOfTruncation("elliptic coefficient " + std::to_string(n) + " beyond truncation");
        return c_[static_cast<std::size_t>(n)];
    }
    C& operator[](int n) {
        if (n < 0 || n > truncation()) throw OutOfTruncation("elliptic coefficient " + std::to_string(n) + " beyond truncation");
        return c_[static_cast<std::size_t>(n)];
    }
    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    EllipticExpansion truncated(int n) const {
        if (n >= truncation()) return *this;
        return EllipticExpansion(dom_, weight_, std::vector<C>(c_.begin(), c_.begin() + n + 1));
    }

    friend EllipticExpansion operator+(const EllipticExpansion& a, const EllipticExpansion& b) { return combine(a, b, false); }
    friend EllipticExpansion operator-(const EllipticExpansion& a, const EllipticExpansion& b) { return combine(a, b, true); }

    friend EllipticExpansion operator*(const EllipticExpansion& a, const EllipticExpansion& b) {
        const int n = std::min(a.truncation(), b.truncation());
        EllipticExpansion out(a.dom_, a.weight_ + b.weight_, n);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j) out.c_[static_cast<std::size_t>(i + j)].add_product(a[i], b[j]);
        return out;
    }

    EllipticExpansion scaled(const C& s) const {
        EllipticExpansion r = *this;
        for (auto& x : r.c_) x = x * s;
        return r;
    }

    /// Equality of coefficients on the common range (weights must agree).
    friend bool operator==(const EllipticExpansion& a, const EllipticExpansion& b) {
        if (a.weight_ != b.weight_) return false;
        const int n = std::min(a.truncation(), b.truncation());
        for (int i = 0; i <= n; ++i)
            if (!(a[i] == b[i])) return false;
        return true;
    }

private:
    static EllipticExpansion combine(const EllipticExpansion& a, const EllipticExpansion& b, bool subtract) {
        if (a.weight_ != b.weight_) throw WeightMismatch("elliptic weights " + std::to_string(a.weight_) + " and " + std::to_string(b.weight_));
        const int n = std::min(a.truncation(), b.truncation());
        EllipticExpansion out(a.dom_, a.weight_, n);
        for (int i = 0; i <= n; ++i) out.c_[static_cast<std::size_t>(i)] = subtract ? a[i] - b[i] : a[i] + b[i];
        return out;
    }

    typename C::Domain dom_{};
    int weight_ = 0;
    std::vector<C> c_ = std::vector<C>(1);
};

namespace detail {

inline long divisor_power_sum(long n, int k) {
    long s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) {
            long p = 1;
            for (int i = 0; i < k; ++i) p *= d;
            s += p;
        }
    return s;
}

} // namespace detail

/// E4, E6 (divisor sums) or Delta (the product q prod (1 - q^n)^24). Throws UnknownName.
template <arith::Coefficient C = arith::Rational>
EllipticExpansion<C> elliptic_form(const std::string& name, int n, const typename C::Domain& d = {}) {
    if (n < 0) throw InvalidArgument("negative truncation");
    if (name == "E4" || name == "E6") {
        const int k = name == "E4" ? 4 : 6;
        const long scale = k == 4 ? 240 : -504;
        EllipticExpansion<C> e(d, k, n);
        e[0] = d.one();
        for (int i = 1; i <= n; ++i) e[i] = d.from_rational(arith::Rational(mpq_class(mpz_class(scale) * detail::divisor_power_sum(i, k - 1))));
        return e;
    }
    if (name == "Delta") {
        // prod_{m>=1} (1 - q^m)^24 truncated at q^(n-1), then shifted by one.
        std::vector<mpz_class> p(static_cast<std::size_t>(n + 1), 0);
        p[0] = 1;
        for (int m = 1; m <= n; ++m)
            for (int rep = 0; rep < 24; ++rep)
                for (int i = n; i >= m; --i) p[static_cast<std::size_t>(i)] -= p[static_cast<std::size_t>(i - m)];
        EllipticExpansion<C> e(d, 12, n);
        for (int i = 1; i <= n; ++i) e[i] = d.from_rational(arith::Rational(mpq_class(p[static_cast<std::size_t>(i - 1)])));
        return e;
    }
    throw UnknownName("unknown elliptic form '" + name + "'");
}

} // namespace siegel::qexp
