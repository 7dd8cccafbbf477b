#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "siegel/errors.hpp"

namespace siegel::arith {

class Integer;
class Rational;
class Fp;

// ---------------------------------------------------------------------------
// Domains. A domain object creates constants; elements remember their domain
// so that two elements from different domains never combine silently.

struct IntegerRing {
    Integer zero() const;
    Integer one() const;
    Integer from_int(long v) const;
    /// Throws InvalidArgument when q is not integral.
    Integer from_rational(const Rational& q) const;
    std::string name() const { return "ZZ"; }
    bool operator==(const IntegerRing&) const = default;
};

struct RationalField {
    Rational zero() const;
    Rational one() const;
    Rational from_int(long v) const;
    Rational from_rational(const Rational& q) const;
    std::string name() const { return "QQ"; }
    bool operator==(const RationalField&) const = default;
};

bool is_prime(std::uint64_t n);

struct PrimeField {
    PrimeField() = default;
    explicit PrimeField(std::uint64_t p) : p(p) {
        if (!is_prime(p)) throw InvalidArgument("modulus " + std::to_string(p) + " is not prime");
        if (p >= (std::uint64_t{1} << 31)) throw InvalidArgument("modulus too large");
    }
    Fp zero() const;
    Fp one() const;
    Fp from_int(long v) const;
    /// Throws InvalidArgument when p divides the denominator of q.
    Fp from_rational(const Rational& q) const;
    std::string name() const { return "GF(" + std::to_string(p) + ")"; }
    bool operator==(const PrimeField&) const = default;

    std::uint64_t p = 0;
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// ---------------------------------------------------------------------------

class Integer {
public:
    using Domain = IntegerRing;
    static constexpr bool is_field = false;

    Integer() = default;
    Integer(long v) : v_(v) {} // NOLINT: integer literals are a natural spelling
    explicit Integer(mpz_class v) : v_(std::move(v)) {}
    explicit Integer(const std::string& s) {
        if (v_.set_str(s, 10) != 0) throw InvalidArgument("not an integer: " + s);
    }

    const mpz_class& value() const noexcept { return v_; }
    Domain domain() const noexcept { return {}; }
    bool is_zero() const noexcept { return sgn(v_) == 0; }
    int sign() const noexcept { return sgn(v_); }

    Integer operator-() const { return Integer(mpz_class(-v_)); }
    Integer& operator+=(const Integer& o) { v_ += o.v_; return *this; }
    Integer& operator-=(const Integer& o) { v_ -= o.v_; return *this; }
    Integer& operator*=(const Integer& o) { v_ *= o.v_; return *this; }
    /// *this += a * b without a temporary.
    void add_product(const Integer& a, const Integer& b) { mpz_addmul(v_.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t()); }
    void sub_product(const Integer& a, const Integer& b) { mpz_submul(v_.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t()); }

    friend Integer operator+(Integer a, const Integer& b) { return a += b; }
    friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
    friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
    friend bool operator==(const Integer& a, const Integer& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    /// Exact quotient a / b in ZZ, or nullopt.
    static std::optional<Integer> divide_exact(const Integer& a, const Integer& b) {
        if (b.is_zero()) return std::nullopt;
        if (!mpz_divisible_p(a.v_.get_mpz_t(), b.v_.get_mpz_t())) return std::nullopt;
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
        return Integer(std::move(q));
    }

    std::string str() const { return v_.get_str(); }

private:
    mpz_class v_;
};

/// Largest v with 2^v | n; n must be nonzero.
inline unsigned two_adic_valuation(const Integer& n) {
    if (n.is_zero()) throw InvalidArgument("2-adic valuation of zero");
    return static_cast<unsigned>(mpz_scan1(n.value().get_mpz_t(), 0));
}

inline Integer gcd(const Integer& a, const Integer& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.value().get_mpz_t(), b.value().get_mpz_t());
    return Integer(std::move(g));
}

// ---------------------------------------------------------------------------

/// Reduced fraction with positive denominator.
class Rational {
public:
    using Domain = RationalField;
    static constexpr bool is_field = true;

    Rational() = default;
    Rational(long v) : v_(v) {} // NOLINT
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw InvalidArgument("zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const Integer& n) : v_(n.value()) {}
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
    Rational(const Integer& num, const Integer& den) {
        if (den.is_zero()) throw InvalidArgument("zero denominator");
        v_ = mpq_class(num.value(), den.value());
        v_.canonicalize();
    }
    /// Parses "n" or "n/d".
    explicit Rational(const std::string& s) {
        if (v_.set_str(s, 10) != 0) throw InvalidArgument("not a rational: " + s);
        if (v_.get_den() == 0) throw InvalidArgument("zero denominator: " + s);
        v_.canonicalize();
    }

    const mpq_class& value() const noexcept { return v_; }
    Domain domain() const noexcept { return {}; }
    bool is_zero() const noexcept { return sgn(v_) == 0; }
    int sign() const noexcept { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }
    Integer numerator() const { return Integer(mpz_class(v_.get_num())); }
    Integer denominator() const { return Integer(mpz_class(v_.get_den())); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw NotDivisible("division by zero rational");
        v_ /= o.v_;
        return *this;
    }
    void add_product(const Rational& a, const Rational& b) { v_ += a.v_ * b.v_; }
    void sub_product(const Rational& a, const Rational& b) { v_ -= a.v_ * b.v_; }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    static std::optional<Rational> divide_exact(const Rational& a, const Rational& b) {
        if (b.is_zero()) return std::nullopt;
        return a / b;
    }

    /// "num/den", den omitted when 1.
    std::string str() const { return v_.get_str(); }

private:
    mpq_class v_;
};

// ---------------------------------------------------------------------------

/// Element of GF(p) for a runtime prime p.
class Fp {
public:
    using Domain = PrimeField;
    static constexpr bool is_field = true;

    Fp() = default;
    Fp(std::int64_t v, const PrimeField& f) : p_(f.p) {
        auto m = static_cast<std::int64_t>(p_);
        v_ = static_cast<std::uint64_t>(((v % m) + m) % m);
    }

    std::uint64_t value() const noexcept { return v_; }
    std::uint64_t modulus() const noexcept { return p_; }
    Domain domain() const { PrimeField f; f.p = p_; return f; }
    bool is_zero() const noexcept { return v_ == 0; }

    Fp operator-() const { Fp r = *this; r.v_ = v_ == 0 ? 0 : p_ - v_; return r; }
    Fp& operator+=(const Fp& o) { check(o); v_ = (v_ + o.v_) % p_; return *this; }
    Fp& operator-=(const Fp& o) { check(o); v_ = (v_ + p_ - o.v_) % p_; return *this; }
    Fp& operator*=(const Fp& o) { check(o); v_ = (v_ * o.v_) % p_; return *this; }
    Fp& operator/=(const Fp& o) {
        check(o);
        if (o.is_zero()) throw NotDivisible("division by zero in " + domain().name());
        return *this *= o.inverse();
    }
    void add_product(const Fp& a, const Fp& b) { *this += a * b; }
    void sub_product(const Fp& a, const Fp& b) { *this -= a * b; }

    Fp inverse() const {
        if (is_zero()) throw NotDivisible("zero has no inverse");
        return pow(p_ - 2);
    }
    Fp pow(std::uint64_t e) const {
        Fp base = *this, acc(1, domain());
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    friend Fp operator+(Fp a, const Fp& b) { return a += b; }
    friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
    friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
    friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
    friend bool operator==(const Fp& a, const Fp& b) {
        a.check(b);
        return a.v_ == b.v_;
    }

    static std::optional<Fp> divide_exact(const Fp& a, const Fp& b) {
        if (b.is_zero()) return std::nullopt;
        return a / b;
    }

    std::string str() const { return std::to_string(v_); }

private:
    void check(const Fp& o) const {
        if (p_ != o.p_)
            throw DomainMismatch("GF(" + std::to_string(p_) + ") combined with GF(" + std::to_string(o.p_) + ")");
    }

    std::uint64_t v_ = 0;
    std::uint64_t p_ = 0;
};

// ---------------------------------------------------------------------------

inline Integer IntegerRing::zero() const { return Integer(0); }
inline Integer IntegerRing::one() const { return Integer(1); }
inline Integer IntegerRing::from_int(long v) const { return Integer(v); }
inline Integer IntegerRing::from_rational(const Rational& q) const {
    if (!q.is_integer()) throw InvalidArgument("rational " + q.str() + " is not an integer");
    return q.numerator();
}

inline Rational RationalField::zero() const { return Rational(0); }
inline Rational RationalField::one() const { return Rational(1); }
inline Rational RationalField::from_int(long v) const { return Rational(v); }
inline Rational RationalField::from_rational(const Rational& q) const { return q; }

inline Fp PrimeField::zero() const { return Fp(0, *this); }
inline Fp PrimeField::one() const { return Fp(1, *this); }
inline Fp PrimeField::from_int(long v) const { return Fp(v, *this); }
inline Fp PrimeField::from_rational(const Rational& q) const {
    mpz_class num = q.value().get_num() % mpz_class(static_cast<unsigned long>(p));
    mpz_class den = q.value().get_den() % mpz_class(static_cast<unsigned long>(p));
    if (den == 0) throw InvalidArgument("denominator of " + q.str() + " vanishes in " + name());
    return Fp(num.get_si(), *this) / Fp(den.get_si(), *this);
}

/// Requirements on a coefficient type: ring operations, zero test, exact
/// division and a domain object that builds constants.
template <typename C>
concept Coefficient = requires(C a, const C& b, typename C::Domain d, long n, const Rational& q) {
    { a + b } -> std::same_as<C>;
    { a - b } -> std::same_as<C>;
    { a * b } -> std::same_as<C>;
    { -a } -> std::same_as<C>;
    { a += b };
    { a -= b };
    { a.add_product(b, b) };
    { a.sub_product(b, b) };
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.domain() } -> std::same_as<typename C::Domain>;
    { C::divide_exact(b, b) } -> std::same_as<std::optional<C>>;
    { a.str() } -> std::convertible_to<std::string>;
    { d.zero() } -> std::same_as<C>;
    { d.one() } -> std::same_as<C>;
    { d.from_int(n) } -> std::same_as<C>;
    { d.from_rational(q) } -> std::same_as<C>;
    { C::is_field } -> std::convertible_to<bool>;
};

static_assert(Coefficient<Integer>);
static_assert(Coefficient<Rational>);
static_assert(Coefficient<Fp>);

/// Coefficient-wise change of domain (ZZ -> QQ, QQ -> GF(p), ...).
template <Coefficient To, Coefficient From>
To convert(const From& x, const typename To::Domain& target) {
    if constexpr (std::is_same_v<From, Integer>) {
        return target.from_rational(Rational(x));
    } else if constexpr (std::is_same_v<From, Rational>) {
        return target.from_rational(x);
    } else if constexpr (std::is_same_v<From, To>) {
        if (!(x.domain() == target)) throw DomainMismatch("cannot move " + x.str() + " into " + target.name());
        return x;
    } else {
        static_assert(sizeof(From) == 0, "unsupported coefficient conversion");
    }
}

} // namespace siegel::arith
