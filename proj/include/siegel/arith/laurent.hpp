#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "siegel/arith/coefficients.hpp"

namespace siegel::arith {

/// Exact Laurent polynomial in one variable r. Storage is sparse: a list of
/// (exponent, coefficient) pairs sorted by exponent, no zero coefficients.
template <Coefficient C>
class LaurentPoly {
public:
    using Term = std::pair<int, C>;

    LaurentPoly() = default;
    explicit LaurentPoly(typename C::Domain d) : dom_(std::move(d)) {}
    LaurentPoly(typename C::Domain d, std::vector<Term> terms) : dom_(std::move(d)), terms_(std::move(terms)) {
        normalize();
    }
    static LaurentPoly constant(const C& c) { return monomial(c, 0); }
    static LaurentPoly monomial(const C& c, int e) {
        LaurentPoly p(c.domain());
        if (!c.is_zero()) p.terms_.emplace_back(e, c);
        return p;
    }

    const typename C::Domain& domain() const noexcept { return dom_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    int min_exponent() const { return terms_.front().first; }
    int max_exponent() const { return terms_.back().first; }

    C coefficient(int e) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e, [](const Term& t, int x) { return t.first < x; });
        if (it != terms_.end() && it->first == e) return it->second;
        return dom_.zero();
    }

    /// Value at r = 1.
    C at_one() const {
        C s = dom_.zero();
        for (const auto& [e, c] : terms_) s += c;
        return s;
    }

    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = combine(*this, o, false); }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this = combine(*this, o, true); }
    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return combine(a, b, false); }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return combine(a, b, true); }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        check_domains(a, b);
        LaurentPoly out(a.dom_);
        if (a.is_zero() || b.is_zero()) return out;
        std::vector<C> acc;
        a.accumulate_product(b, acc, 0);
        out.assign_dense(acc, a.min_exponent() + b.min_exponent());
        return out;
    }

    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly scaled(const C& c) const {
        LaurentPoly r(dom_);
        if (c.is_zero()) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& [e, x] : terms_) r.terms_.emplace_back(e, x * c);
        r.normalize();
        return r;
    }

    /// Multiply by r^k.
    LaurentPoly shifted(int k) const {
        LaurentPoly r = *this;
        for (auto& t : r.terms_) t.first += k;
        return r;
    }

    /// Apply f to every coefficient, landing in the domain d.
    template <Coefficient D, typename F>
    LaurentPoly<D> map_coefficients(const typename D::Domain& d, F&& f) const {
        std::vector<typename LaurentPoly<D>::Term> t;
        t.reserve(terms_.size());
        for (const auto& [e, c] : terms_) t.emplace_back(e, f(c));
        return LaurentPoly<D>(d, std::move(t));
    }

    /// Substitution r -> 1/r.
    LaurentPoly inverted() const {
        LaurentPoly r(dom_);
        r.terms_.reserve(terms_.size());
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) r.terms_.emplace_back(-it->first, it->second);
        return r;
    }

    /// Exact quotient a / b, or nullopt when b does not divide a in C[r, 1/r].
    static std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
        check_domains(a, b);
        if (b.is_zero()) return std::nullopt;
        if (a.is_zero()) return LaurentPoly(a.dom_);
        const int qmax = a.max_exponent() - b.max_exponent();
        const int qmin = a.min_exponent() - b.min_exponent();
        if (qmax < qmin) return std::nullopt;

        // Long division from the top; rem is kept dense over a's exponent range.
        const int base = a.min_exponent();
        std::vector<C> rem(static_cast<std::size_t>(a.max_exponent() - base + 1), a.dom_.zero());
        for (const auto& [e, c] : a.terms_) rem[static_cast<std::size_t>(e - base)] = c;
        const C& lead = b.terms_.back().second;
        const int bmax = b.max_exponent();
        std::vector<Term> q;
        for (int e = qmax; e >= qmin; --e) {
            C& top = rem[static_cast<std::size_t>(e + bmax - base)];
            if (top.is_zero()) continue;
            auto t = C::divide_exact(top, lead);
            if (!t) return std::nullopt;
            for (const auto& [be, bc] : b.terms_) rem[static_cast<std::size_t>(e + be - base)].sub_product(*t, bc);
            q.emplace_back(e, std::move(*t));
        }
        for (const auto& c : rem)
            if (!c.is_zero()) return std::nullopt;
        std::reverse(q.begin(), q.end());
        LaurentPoly out(a.dom_);
        out.terms_ = std::move(q);
        return out;
    }

    /// Largest m with (r - 1)^m dividing the polynomial; nullopt encodes infinity (the zero polynomial).
    std::optional<int> vanishing_order_at_one() const {
        if (is_zero()) return std::nullopt;
        const int base = min_exponent();
        std::vector<C> dense(static_cast<std::size_t>(max_exponent() - base + 1), dom_.zero());
        for (const auto& [e, c] : terms_) dense[static_cast<std::size_t>(e - base)] = c;
        int order = 0;
        // Synthetic division by (r - 1) while the value at 1 vanishes.
        while (dense.size() > 1) {
            C s = dom_.zero();
            for (const auto& c : dense) s += c;
            if (!s.is_zero()) break;
            std::vector<C> q(dense.size() - 1, dom_.zero());
            C carry = dom_.zero();
            for (std::size_t i = dense.size() - 1; i >= 1; --i) {
                carry += dense[i];
                q[i - 1] = carry;
            }
            dense = std::move(q);
            ++order;
        }
        return order;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.dom_ == b.dom_ && a.terms_ == b.terms_;
    }

    /// Human readable form in increasing exponent, e.g. "r^-1 - 2 + r".
    std::string str(const std::string& var = "r") const {
        if (is_zero()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            std::string cs = c.str();
            bool neg = !cs.empty() && cs[0] == '-';
            if (neg) cs.erase(0, 1);
            if (first) s += neg ? "-" : "";
            else s += neg ? " - " : " + ";
            first = false;
            if (e == 0) {
                s += cs;
                continue;
            }
            if (cs != "1") s += cs + "*";
            s += var;
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s;
    }

    nlohmann::json to_json() const {
        nlohmann::json j = nlohmann::json::object();
        for (const auto& [e, c] : terms_) j[std::to_string(e)] = c.str();
        return j;
    }

    static LaurentPoly from_json(const nlohmann::json& j, const typename C::Domain& d) {
        std::vector<Term> terms;
        for (auto it = j.begin(); it != j.end(); ++it)
            terms.emplace_back(std::stoi(it.key()), d.from_rational(Rational(it.value().template get<std::string>())));
        return LaurentPoly(d, std::move(terms));
    }

    /// acc[offset + i] += coefficient of r^(min_a + min_b + i) in (*this) * b.
    void accumulate_product(const LaurentPoly& b, std::vector<C>& acc, std::size_t offset) const {
        if (is_zero() || b.is_zero()) return;
        const std::size_t need = offset + static_cast<std::size_t>(max_exponent() - min_exponent() + b.max_exponent() - b.min_exponent() + 1);
        if (acc.size() < need) acc.resize(need, dom_.zero());
        const int amin = min_exponent(), bmin = b.min_exponent();
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : b.terms_)
                acc[offset + static_cast<std::size_t>(ea - amin + eb - bmin)].add_product(ca, cb);
    }

    /// Replace contents by the dense coefficient list starting at exponent `start`.
    void assign_dense(const std::vector<C>& dense, int start) {
        terms_.clear();
        for (std::size_t i = 0; i < dense.size(); ++i)
            if (!dense[i].is_zero()) terms_.emplace_back(start + static_cast<int>(i), dense[i]);
    }

private:
    static void check_domains(const LaurentPoly& a, const LaurentPoly& b) {
        if (!(a.dom_ == b.dom_)) throw DomainMismatch("Laurent polynomials over " + a.dom_.name() + " and " + b.dom_.name());
    }

    static LaurentPoly combine(const LaurentPoly& a, const LaurentPoly& b, bool subtract) {
        check_domains(a, b);
        LaurentPoly out(a.dom_);
        out.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto i = a.terms_.begin(), j = b.terms_.begin();
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
                out.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || j->first < i->first) {
                out.terms_.emplace_back(j->first, subtract ? -j->second : j->second);
                ++j;
            } else {
                C c = subtract ? i->second - j->second : i->second + j->second;
                if (!c.is_zero()) out.terms_.emplace_back(i->first, std::move(c));
                ++i;
                ++j;
            }
        }
        return out;
    }

    void normalize() {
        std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
        std::vector<Term> merged;
        merged.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!merged.empty() && merged.back().first == t.first) merged.back().second += t.second;
            else merged.push_back(std::move(t));
        }
        terms_.clear();
        for (auto& t : merged)
            if (!t.second.is_zero()) terms_.push_back(std::move(t));
    }

    typename C::Domain dom_{};
    std::vector<Term> terms_;
};

/// Convenience constructor from an exponent -> coefficient list.
template <Coefficient C>
LaurentPoly<C> laurent(const typename C::Domain& d, std::initializer_list<std::pair<int, long>> terms) {
    std::vector<typename LaurentPoly<C>::Term> t;
    for (auto [e, c] : terms) t.emplace_back(e, d.from_int(c));
    return LaurentPoly<C>(d, std::move(t));
}

template <Coefficient C>
LaurentPoly<C> laurent_mul(const LaurentPoly<C>& a, const LaurentPoly<C>& b) { return a * b; }

/// Throws NotDivisible when b does not divide a.
template <Coefficient C>
LaurentPoly<C> laurent_exact_div(const LaurentPoly<C>& a, const LaurentPoly<C>& b) {
    if (b.is_zero()) throw InvalidArgument("division by the zero Laurent polynomial");
    auto q = LaurentPoly<C>::divide_exact(a, b);
    if (!q) throw NotDivisible("(" + a.str() + ") is not divisible by (" + b.str() + ")");
    return std::move(*q);
}

template <Coefficient C>
std::optional<int> vanishing_order_at_one(const LaurentPoly<C>& a) { return a.vanishing_order_at_one(); }

template <Coefficient C>
LaurentPoly<C> invert_exponent(const LaurentPoly<C>& a) { return a.inverted(); }

} // namespace siegel::arith
