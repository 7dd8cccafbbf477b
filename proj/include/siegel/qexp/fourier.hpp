#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "siegel/covariants/covariant.hpp"
#include "siegel/qexp/series.hpp"

namespace siegel::qexp {

using cov::WeightLabel;

/// Truncated Fourier expansion of a degree-2 form of weight Sym^j (x) det^k.
/// Coordinate i multiplies X1^(j-i) X2^i. Coefficient (n1, n2) with r-exponent e
/// stands for the half-integral matrix [n1, e/2; e/2, n2]. All coordinates share
/// one valuation and one truncation.
template <Coefficient C>
class FourierExpansion {
public:
    using Laurent = LaurentPoly<C>;
    using Series = QSeries<C>;

    FourierExpansion() = default;
    FourierExpansion(WeightLabel weight, bool character, std::vector<Series> coords)
        : weight_(weight), character_(character), coords_(std::move(coords)) {
        if (weight_.j < 0) throw InvalidArgument("negative j");
        if (coords_.size() != static_cast<std::size_t>(weight_.j + 1))
            throw InvalidArgument("expected " + std::to_string(weight_.j + 1) + " coordinates, got " + std::to_string(coords_.size()));
        int v = coords_[0].valuation(), n = coords_[0].truncation();
        for (const auto& c : coords_) {
            v = std::min(v, c.valuation());
            n = std::min(n, c.truncation());
        }
        for (auto& c : coords_) c = c.with_valuation(std::min(v, n)).truncated(n);
    }

    /// The scalar constant c of weight (0, 0).
    static FourierExpansion constant(const C& c, int truncation) {
        return FourierExpansion({0, 0}, false, {Series::constant(c, truncation)});
    }

    const WeightLabel& weight() const noexcept { return weight_; }
    bool character() const noexcept { return character_; }
    int truncation() const { return coords_[0].truncation(); }
    int valuation() const { return coords_[0].valuation(); }
    std::size_t dimension() const noexcept { return coords_.size(); }
    const Series& coordinate(std::size_t i) const { return coords_.at(i); }
    const std::vector<Series>& coordinates() const noexcept { return coords_; }
    const typename C::Domain& domain() const { return coords_[0].domain(); }

    /// Coefficient vector at (n1, n2); throws OutOfTruncation beyond the box.
    std::vector<Laurent> coefficient(int n1, int n2) const {
        std::vector<Laurent> out;
        out.reserve(coords_.size());
        for (const auto& c : coords_) out.push_back(c.coefficient(n1, n2));
        return out;
    }

    bool is_zero() const {
        return std::all_of(coords_.begin(), coords_.end(), [](const Series& s) { return s.is_zero(); });
    }

    FourierExpansion truncated(int n) const {
        std::vector<Series> c;
        for (const auto& s : coords_) c.push_back(s.truncated(n));
        return FourierExpansion(weight_, character_, std::move(c));
    }

    FourierExpansion scaled(const C& c) const {
        std::vector<Series> out;
        for (const auto& s : coords_) out.push_back(s.scaled(c));
        return FourierExpansion(weight_, character_, std::move(out));
    }

    friend bool operator==(const FourierExpansion& a, const FourierExpansion& b) {
        return a.weight_ == b.weight_ && a.character_ == b.character_ && a.coords_ == b.coords_;
    }

    // -- serialization --------------------------------------------------------

    nlohmann::json to_json() const {
        nlohmann::json coeffs = nlohmann::json::array();
        const int v = valuation(), n = truncation();
        for (int g = 2 * v; g <= 2 * n; ++g)
            for (int n1 = std::max(v, g - n); n1 <= std::min(g - v, n); ++n1) {
                auto vec = coefficient(n1, g - n1);
                bool nz = std::any_of(vec.begin(), vec.end(), [](const Laurent& l) { return !l.is_zero(); });
                if (!nz) continue;
                nlohmann::json jv = nlohmann::json::array();
                for (const auto& l : vec) jv.push_back(l.to_json());
                coeffs.push_back({{"n", {n1, g - n1}}, {"vec", jv}});
            }
        return {{"weight", {weight_.j, weight_.k}},
                {"character", character_},
                {"truncation", n},
                {"valuation", v},
                {"domain", domain().name()},
                {"coeffs", coeffs}};
    }

    static FourierExpansion from_json(const nlohmann::json& j, const typename C::Domain& d) {
        WeightLabel w{j.at("weight")[0].template get<int>(), j.at("weight")[1].template get<int>()};
        const int n = j.at("truncation").template get<int>();
        const int v = j.value("valuation", 0);
        std::vector<Series> coords(static_cast<std::size_t>(w.j + 1), Series(d, v, n - v));
        for (const auto& cell : j.at("coeffs")) {
            int n1 = cell.at("n")[0].template get<int>(), n2 = cell.at("n")[1].template get<int>();
            const auto& vec = cell.at("vec");
            if (vec.size() != coords.size()) throw InvalidArgument("coefficient vector has the wrong length");
            for (std::size_t i = 0; i < coords.size(); ++i) coords[i].set_coefficient(n1, n2, Laurent::from_json(vec[i], d));
        }
        return FourierExpansion(w, j.at("character").template get<bool>(), std::move(coords));
    }

private:
    WeightLabel weight_{};
    bool character_ = false;
    std::vector<Series> coords_ = std::vector<Series>(1);
};

// ---------------------------------------------------------------------------
// Ring operations.

template <Coefficient C>
void require_same_weight(const FourierExpansion<C>& a, const FourierExpansion<C>& b) {
    if (!(a.weight() == b.weight()) || a.character() != b.character())
        throw WeightMismatch("weights " + a.weight().str() + " and " + b.weight().str() + " differ");
}

template <Coefficient C>
FourierExpansion<C> add(const FourierExpansion<C>& a, const FourierExpansion<C>& b) {
    require_same_weight(a, b);
    std::vector<QSeries<C>> out;
    for (std::size_t i = 0; i < a.dimension(); ++i) out.push_back(a.coordinate(i) + b.coordinate(i));
    return FourierExpansion<C>(a.weight(), a.character(), std::move(out));
}

template <Coefficient C>
FourierExpansion<C> sub(const FourierExpansion<C>& a, const FourierExpansion<C>& b) {
    require_same_weight(a, b);
    std::vector<QSeries<C>> out;
    for (std::size_t i = 0; i < a.dimension(); ++i) out.push_back(a.coordinate(i) - b.coordinate(i));
    return FourierExpansion<C>(a.weight(), a.character(), std::move(out));
}

template <Coefficient C>
FourierExpansion<C> scale(const C& c, const FourierExpansion<C>& a) { return a.scaled(c); }

/// Product realized as multiplication of polynomials in X1, X2: Sym^m x Sym^n -> Sym^(m+n).
template <Coefficient C>
FourierExpansion<C> mul(const FourierExpansion<C>& a, const FourierExpansion<C>& b) {
    const std::size_t da = a.dimension(), db = b.dimension();
    std::vector<std::optional<QSeries<C>>> acc(da + db - 1);
    for (std::size_t i = 0; i < da; ++i) {
        if (a.coordinate(i).is_zero()) continue;
        for (std::size_t k = 0; k < db; ++k) {
            if (b.coordinate(k).is_zero()) continue;
            QSeries<C> t = a.coordinate(i) * b.coordinate(k);
            acc[i + k] = acc[i + k] ? *acc[i + k] + t : std::move(t);
        }
    }
    // Zero coordinates still carry the right valuation and truncation.
    const int v = a.valuation() + b.valuation();
    const int p = std::min(a.truncation() - a.valuation(), b.truncation() - b.valuation());
    std::vector<QSeries<C>> out;
    for (auto& s : acc) out.push_back(s ? std::move(*s) : QSeries<C>(a.domain(), v, p));
    return FourierExpansion<C>({a.weight().j + b.weight().j, a.weight().k + b.weight().k}, a.character() != b.character(),
                               std::move(out));
}

template <Coefficient C>
FourierExpansion<C> power(const FourierExpansion<C>& a, unsigned n) {
    FourierExpansion<C> acc = FourierExpansion<C>::constant(a.domain().one(), a.truncation() - a.valuation());
    FourierExpansion<C> base = a;
    while (n) {
        if (n & 1) acc = mul(acc, base);
        n >>= 1;
        if (n) base = mul(base, base);
    }
    return acc;
}

/// Checks e^2 <= 4 n1 n2 on every stored coefficient; returns the first violation.
template <Coefficient C>
std::optional<std::tuple<int, int, int>> support_violation(const FourierExpansion<C>& a) {
    const int v = a.valuation(), n = a.truncation();
    for (int n1 = v; n1 <= n; ++n1)
        for (int n2 = v; n2 <= n; ++n2)
            for (const auto& l : a.coefficient(n1, n2))
                for (const auto& [e, c] : l.terms())
                    if (static_cast<long>(e) * e > 4L * n1 * n2) return std::make_tuple(n1, n2, e);
    return std::nullopt;
}

/// Exact division by a scalar (weight (0, k)) expansion.
template <Coefficient C>
FourierExpansion<C> exact_div(const FourierExpansion<C>& a, const FourierExpansion<C>& b) {
    if (b.dimension() != 1) throw InvalidArgument("divisor must be scalar valued");
    std::vector<QSeries<C>> out;
    for (const auto& s : a.coordinates()) out.push_back(QSeries<C>::divide(s, b.coordinate(0)));
    FourierExpansion<C> q({a.weight().j, a.weight().k - b.weight().k}, a.character() != b.character(), std::move(out));
    if (!q.character())
        if (auto bad = support_violation(q))
            throw SupportViolation("quotient has r-exponent " + std::to_string(std::get<2>(*bad)) + " at (" +
                                   std::to_string(std::get<0>(*bad)) + "," + std::to_string(std::get<1>(*bad)) + ")");
    return q;
}

/// The same expansion with coefficients moved into another domain (ZZ -> QQ, QQ -> GF(p), ...).
template <Coefficient To, Coefficient From>
FourierExpansion<To> change_domain(const FourierExpansion<From>& a, const typename To::Domain& target) {
    std::vector<QSeries<To>> coords;
    for (const auto& s : a.coordinates()) {
        QSeries<To> t(target, s.valuation(), s.precision());
        for (int m1 = 0; m1 <= s.precision(); ++m1)
            for (int m2 = 0; m2 <= s.precision(); ++m2)
                t.cell(m1, m2) = s.cell(m1, m2).template map_coefficients<To>(
                    target, [&](const From& c) { return arith::convert<To>(c, target); });
        coords.push_back(std::move(t));
    }
    return FourierExpansion<To>(a.weight(), a.character(), std::move(coords));
}

/// Division by chi10 (which must be passed in). The absolute truncation drops by one.
template <Coefficient C>
FourierExpansion<C> exact_div_chi10(const FourierExpansion<C>& a, const FourierExpansion<C>& chi10) {
    if (!(chi10.weight() == WeightLabel{0, 10})) throw InvalidArgument("divisor is not of weight (0,10)");
    if (a.truncation() < 2) throw OutOfTruncation("need truncation at least 2 to divide by chi10");
    return exact_div(a, chi10);
}

} // namespace siegel::qexp
