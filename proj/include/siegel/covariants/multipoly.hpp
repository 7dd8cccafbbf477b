#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "siegel/arith/coefficients.hpp"

namespace siegel::cov {

using arith::Coefficient;

inline constexpr std::size_t kMaxVars = 16;

/// Exponent vector; unused slots stay zero.
struct Monomial {
    std::array<std::uint8_t, kMaxVars> e{};

    unsigned total_degree() const {
        unsigned s = 0;
        for (auto x : e) s += x;
        return s;
    }
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : m.e) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

/// Graded lexicographic order, variable 0 largest. Returns true if a comes first.
inline bool grlex_before(const Monomial& a, const Monomial& b) {
    unsigned da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db;
    return a.e > b.e;
}

/// Ordered list of variable names shared by polynomials of one ring.
class Variables {
public:
    explicit Variables(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.size() > kMaxVars) throw InvalidArgument("too many variables");
    }
    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::optional<std::size_t> index(const std::string& n) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == n) return i;
        return std::nullopt;
    }
    friend bool operator==(const Variables&, const Variables&) = default;

private:
    std::vector<std::string> names_;
};

using VariablesPtr = std::shared_ptr<const Variables>;

/// a0..a6, x1, x2: coefficients of the universal sextic and its two variables.
inline VariablesPtr sextic_variables() {
    static const VariablesPtr v = std::make_shared<const Variables>(
        std::vector<std::string>{"a0", "a1", "a2", "a3", "a4", "a5", "a6", "x1", "x2"});
    return v;
}

/// Sparse multivariate polynomial, terms kept in graded-lex order.
template <Coefficient C>
class MultiPoly {
public:
    using Term = std::pair<Monomial, C>;

    MultiPoly() : vars_(sextic_variables()) {}
    explicit MultiPoly(VariablesPtr vars, typename C::Domain d = {}) : vars_(std::move(vars)), dom_(std::move(d)) {}
    MultiPoly(VariablesPtr vars, typename C::Domain d, std::vector<Term> terms)
        : vars_(std::move(vars)), dom_(std::move(d)), terms_(std::move(terms)) {
        normalize();
    }

    static MultiPoly constant(VariablesPtr vars, const C& c) {
        MultiPoly p(std::move(vars), c.domain());
        if (!c.is_zero()) p.terms_.emplace_back(Monomial{}, c);
        return p;
    }
    static MultiPoly variable(VariablesPtr vars, typename C::Domain d, std::size_t i, unsigned power = 1) {
        if (i >= vars->size()) throw InvalidArgument("variable index out of range");
        Monomial m;
        m.e[i] = static_cast<std::uint8_t>(power);
        MultiPoly p(std::move(vars), d);
        p.terms_.emplace_back(m, d.one());
        return p;
    }

    const VariablesPtr& variables() const noexcept { return vars_; }
    const typename C::Domain& domain() const noexcept { return dom_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    C coefficient(const Monomial& m) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term& t, const Monomial& x) { return grlex_before(t.first, x); });
        if (it != terms_.end() && it->first == m) return it->second;
        return dom_.zero();
    }

    /// Sum of exponents over the variable index range [lo, hi) for every term, or nullopt if not homogeneous there.
    std::optional<unsigned> partial_degree(std::size_t lo, std::size_t hi) const {
        std::optional<unsigned> d;
        for (const auto& [m, c] : terms_) {
            unsigned s = 0;
            for (std::size_t i = lo; i < hi; ++i) s += m.e[i];
            if (d && *d != s) return std::nullopt;
            d = s;
        }
        return d;
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }
    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return combine(a, b, false); }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return combine(a, b, true); }
    MultiPoly& operator+=(const MultiPoly& o) { return *this = combine(*this, o, false); }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = combine(*this, o, true); }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        check(a, b);
        MultiPoly out(a.vars_, a.dom_);
        if (a.is_zero() || b.is_zero()) return out;
        std::unordered_map<Monomial, C, MonomialHash> acc;
        acc.reserve(a.size() * b.size());
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m;
                for (std::size_t i = 0; i < kMaxVars; ++i) m.e[i] = static_cast<std::uint8_t>(ma.e[i] + mb.e[i]);
                auto [it, fresh] = acc.try_emplace(m, a.dom_.zero());
                it->second.add_product(ca, cb);
            }
        }
        out.terms_.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (!c.is_zero()) out.terms_.emplace_back(m, std::move(c));
        out.sort_terms();
        return out;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    MultiPoly scaled(const C& c) const {
        MultiPoly r(vars_, dom_);
        if (c.is_zero()) return r;
        for (const auto& [m, x] : terms_) r.terms_.emplace_back(m, x * c);
        r.normalize();
        return r;
    }

    MultiPoly pow(unsigned n) const {
        MultiPoly acc = constant(vars_, dom_.one());
        for (unsigned i = 0; i < n; ++i) acc *= *this;
        return acc;
    }

    /// k-th partial derivative in variable i.
    MultiPoly derivative(std::size_t i, unsigned k = 1) const {
        MultiPoly r(vars_, dom_);
        for (const auto& [m, c] : terms_) {
            if (m.e[i] < k) continue;
            long f = 1;
            for (unsigned t = 0; t < k; ++t) f *= static_cast<long>(m.e[i] - t);
            Monomial m2 = m;
            m2.e[i] = static_cast<std::uint8_t>(m.e[i] - k);
            r.terms_.emplace_back(m2, c * dom_.from_int(f));
        }
        r.normalize();
        return r;
    }

    /// Apply f to every coefficient, landing in another domain.
    template <Coefficient D, typename F>
    MultiPoly<D> map_coefficients(const typename D::Domain& target, F&& f) const {
        std::vector<typename MultiPoly<D>::Term> t;
        t.reserve(terms_.size());
        for (const auto& [m, c] : terms_) t.emplace_back(m, f(c));
        return MultiPoly<D>(vars_, target, std::move(t));
    }

    /// Same polynomial in a different (larger) variable list; variable i goes to slot map[i].
    MultiPoly relabel(VariablesPtr target, std::span<const std::size_t> map) const {
        std::vector<Term> t;
        for (const auto& [m, c] : terms_) {
            Monomial m2;
            for (std::size_t i = 0; i < vars_->size(); ++i)
                if (m.e[i]) m2.e[map[i]] = static_cast<std::uint8_t>(m2.e[map[i]] + m.e[i]);
            t.emplace_back(m2, c);
        }
        return MultiPoly(std::move(target), dom_, std::move(t));
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return *a.vars_ == *b.vars_ && a.dom_ == b.dom_ && a.terms_ == b.terms_;
    }

    /// Canonical text, e.g. "120*a0*a6 - 20*a1*a5 + 8*a2*a4 - 3*a3^2".
    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            std::string cs = c.str();
            bool neg = cs[0] == '-';
            if (neg) cs.erase(0, 1);
            if (first) s += neg ? "-" : "";
            else s += neg ? " - " : " + ";
            first = false;
            std::string mono;
            for (std::size_t i = 0; i < vars_->size(); ++i) {
                if (!m.e[i]) continue;
                if (!mono.empty()) mono += "*";
                mono += vars_->name(i);
                if (m.e[i] > 1) mono += "^" + std::to_string(m.e[i]);
            }
            if (mono.empty()) s += cs;
            else if (cs == "1") s += mono;
            else s += cs + "*" + mono;
        }
        return s;
    }

    nlohmann::json to_json() const {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [m, c] : terms_) {
            std::vector<int> e(m.e.begin(), m.e.begin() + static_cast<long>(vars_->size()));
            terms.push_back({{"exp", e}, {"coeff", c.str()}});
        }
        return {{"domain", dom_.name()}, {"variables", vars_->names()}, {"terms", terms}};
    }

    static MultiPoly from_json(const nlohmann::json& j, VariablesPtr vars, const typename C::Domain& d) {
        if (j.at("variables").template get<std::vector<std::string>>() != vars->names())
            throw DomainMismatch("polynomial variables do not match");
        std::vector<Term> t;
        for (const auto& term : j.at("terms")) {
            Monomial m;
            auto e = term.at("exp").template get<std::vector<int>>();
            for (std::size_t i = 0; i < e.size(); ++i) m.e[i] = static_cast<std::uint8_t>(e[i]);
            t.emplace_back(m, d.from_rational(arith::Rational(term.at("coeff").template get<std::string>())));
        }
        return MultiPoly(std::move(vars), d, std::move(t));
    }

    /// Leading term in graded-lex order.
    const Term& leading_term() const {
        if (is_zero()) throw InvalidArgument("zero polynomial has no leading term");
        return terms_.front();
    }

private:
    static void check(const MultiPoly& a, const MultiPoly& b) {
        if (!(a.dom_ == b.dom_)) throw DomainMismatch("polynomials over " + a.dom_.name() + " and " + b.dom_.name());
        if (a.vars_ != b.vars_ && !(*a.vars_ == *b.vars_)) throw DomainMismatch("polynomials in different variables");
    }

    static MultiPoly combine(const MultiPoly& a, const MultiPoly& b, bool subtract) {
        check(a, b);
        MultiPoly out(a.vars_, a.dom_);
        out.terms_.reserve(a.size() + b.size());
        auto i = a.terms_.begin(), j = b.terms_.begin();
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && grlex_before(i->first, j->first))) {
                out.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || grlex_before(j->first, i->first)) {
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

    void sort_terms() {
        std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return grlex_before(x.first, y.first); });
    }

    void normalize() {
        sort_terms();
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

    VariablesPtr vars_;
    typename C::Domain dom_{};
    std::vector<Term> terms_;
};

/// Build a monomial from (variable index, exponent) pairs.
inline Monomial monomial(std::initializer_list<std::pair<std::size_t, unsigned>> powers) {
    Monomial m;
    for (auto [i, e] : powers) m.e[i] = static_cast<std::uint8_t>(m.e[i] + e);
    return m;
}

/// Horner-style evaluation of p at values[i] for variable i. `lift` maps a
/// coefficient of p into T. Shares partial products between monomials with a
/// common prefix, which is what keeps large substitutions affordable.
template <typename T, Coefficient C, typename Lift, typename Mul, typename Add>
T evaluate(const MultiPoly<C>& p, std::span<const T> values, Lift&& lift, Mul&& mul, Add&& add, const T& zero) {
    const std::size_t nv = p.variables()->size();
    if (values.size() < nv) throw InvalidArgument("not enough substitution values");
    std::vector<const typename MultiPoly<C>::Term*> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) terms.push_back(&t);
    // Lexicographic order so that terms sharing exponents of leading variables are adjacent.
    std::sort(terms.begin(), terms.end(), [](auto* a, auto* b) { return a->first.e > b->first.e; });

    std::vector<std::map<unsigned, T>> power_cache(nv);
    std::function<const T&(std::size_t, unsigned)> power = [&](std::size_t v, unsigned k) -> const T& {
        auto& cache = power_cache[v];
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
        if (k == 1) return cache.emplace(1, values[v]).first->second;
        unsigned h = k / 2;
        T r = mul(power(v, h), power(v, k - h));
        return cache.emplace(k, std::move(r)).first->second;
    };

    std::function<T(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t lo, std::size_t hi, std::size_t var) -> T {
        if (var == nv) return lift(terms[lo]->second);
        // Horner in variable `var` over groups of equal exponent (descending).
        std::optional<T> acc;
        unsigned acc_exp = 0;
        std::size_t i = lo;
        while (i < hi) {
            unsigned e = terms[i]->first.e[var];
            std::size_t j = i;
            while (j < hi && terms[j]->first.e[var] == e) ++j;
            T inner = rec(i, j, var + 1);
            if (acc) {
                if (acc_exp > e) *acc = mul(*acc, power(var, acc_exp - e));
                *acc = add(*acc, inner);
            } else {
                acc = std::move(inner);
            }
            acc_exp = e;
            i = j;
        }
        if (acc_exp > 0) *acc = mul(*acc, power(var, acc_exp));
        return std::move(*acc);
    };
    if (terms.empty()) return zero;
    return rec(0, terms.size(), 0);
}

/// Substitute polynomials for variables.
template <Coefficient C>
MultiPoly<C> substitute(const MultiPoly<C>& p, std::span<const MultiPoly<C>> values, const VariablesPtr& target) {
    MultiPoly<C> zero(target, p.domain());
    return evaluate<MultiPoly<C>>(
        p, values, [&](const C& c) { return MultiPoly<C>::constant(target, c); },
        [](const MultiPoly<C>& a, const MultiPoly<C>& b) { return a * b; },
        [](const MultiPoly<C>& a, const MultiPoly<C>& b) { return a + b; }, zero);
}

} // namespace siegel::cov
