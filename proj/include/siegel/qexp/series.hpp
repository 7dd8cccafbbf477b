#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "siegel/arith/laurent.hpp"

namespace siegel::qexp {

using arith::Coefficient;
using arith::LaurentPoly;

/// Truncated scalar series  sum_{n1,n2} c(n1,n2)(r) q1^n1 q2^n2  with Laurent
/// polynomial coefficients in r.
///
/// Stored as (q1 q2)^v * sum_{0 <= m1,m2 <= P} c~(m1,m2) q1^m1 q2^m2: every
/// coefficient with min(n1,n2) < v is zero, the block [v, v+P]^2 is explicit,
/// and the series is known on the box [0, v+P]^2. Keeping the valuation v apart
/// is what lets products of cusp forms keep their precision.
template <Coefficient C>
class QSeries {
public:
    using Laurent = LaurentPoly<C>;

    QSeries() = default;
    /// Zero series with the given valuation and relative precision.
    QSeries(typename C::Domain d, int valuation, int precision)
        : dom_(std::move(d)), val_(valuation), prec_(precision) {
        if (precision < 0) throw InvalidArgument("negative relative precision");
        cells_.assign(side() * side(), Laurent(dom_));
    }

    /// Series known on [0, N]^2 from absolute coefficients (valuation 0).
    static QSeries from_box(typename C::Domain d, int truncation) { return QSeries(std::move(d), 0, truncation); }

    static QSeries constant(const C& c, int truncation) {
        QSeries s(c.domain(), 0, truncation);
        s.cells_[0] = Laurent::constant(c);
        return s;
    }

    const typename C::Domain& domain() const noexcept { return dom_; }
    int valuation() const noexcept { return val_; }
    int precision() const noexcept { return prec_; }
    /// Largest N such that every coefficient in [0, N]^2 is known.
    int truncation() const noexcept { return val_ + prec_; }

    /// Relative cell (m1, m2), 0 <= m <= precision.
    const Laurent& cell(int m1, int m2) const { return cells_[index(m1, m2)]; }
    Laurent& cell(int m1, int m2) { return cells_[index(m1, m2)]; }

    /// Absolute coefficient; throws OutOfTruncation beyond the known box.
    Laurent coefficient(int n1, int n2) const {
        if (n1 < 0 || n2 < 0) return Laurent(dom_);
        if (n1 < val_ || n2 < val_) {
            if (n1 > truncation() || n2 > truncation()) throw OutOfTruncation("coefficient beyond truncation");
            return Laurent(dom_);
        }
        if (n1 - val_ > prec_ || n2 - val_ > prec_)
            throw OutOfTruncation("coefficient (" + std::to_string(n1) + "," + std::to_string(n2) + ") beyond truncation " +
                                  std::to_string(truncation()));
        return cell(n1 - val_, n2 - val_);
    }

    void set_coefficient(int n1, int n2, Laurent value) {
        if (n1 < val_ || n2 < val_ || n1 - val_ > prec_ || n2 - val_ > prec_)
            throw OutOfTruncation("coefficient outside the explicit block");
        cell(n1 - val_, n2 - val_) = std::move(value);
    }

    bool is_zero() const {
        return std::all_of(cells_.begin(), cells_.end(), [](const Laurent& l) { return l.is_zero(); });
    }

    /// Same series written with a smaller valuation (pads with known zeros).
    QSeries with_valuation(int v) const {
        if (v > val_) throw InvalidArgument("cannot raise the valuation of a series without knowing its coefficients");
        if (v == val_) return *this;
        QSeries out(dom_, v, truncation() - v);
        const int shift = val_ - v;
        for (int m1 = 0; m1 <= prec_; ++m1)
            for (int m2 = 0; m2 <= prec_; ++m2) out.cell(m1 + shift, m2 + shift) = cell(m1, m2);
        return out;
    }

    /// Forget everything beyond the box [0, N]^2.
    QSeries truncated(int n) const {
        if (n >= truncation()) return *this;
        if (n < 0) throw InvalidArgument("negative truncation");
        if (n < val_) return QSeries(dom_, n, 0);
        QSeries out(dom_, val_, n - val_);
        for (int m1 = 0; m1 <= out.prec_; ++m1)
            for (int m2 = 0; m2 <= out.prec_; ++m2) out.cell(m1, m2) = cell(m1, m2);
        return out;
    }

    /// Write both series over a common valuation and truncation.
    static std::pair<QSeries, QSeries> align(const QSeries& a, const QSeries& b) {
        check(a, b);
        const int v = std::min(a.val_, b.val_);
        const int n = std::min(a.truncation(), b.truncation());
        return {a.with_valuation(v).truncated(n), b.with_valuation(v).truncated(n)};
    }

    QSeries operator-() const {
        QSeries r = *this;
        for (auto& c : r.cells_) c = -c;
        return r;
    }

    friend QSeries operator+(const QSeries& a, const QSeries& b) { return combine(a, b, false); }
    friend QSeries operator-(const QSeries& a, const QSeries& b) { return combine(a, b, true); }

    QSeries scaled(const C& c) const {
        QSeries r = *this;
        for (auto& x : r.cells_) x = x.scaled(c);
        return r;
    }

    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        check(a, b);
        const int p = std::min(a.prec_, b.prec_);
        QSeries out(a.dom_, a.val_ + b.val_, p);
        std::vector<C> acc;
        for (int m1 = 0; m1 <= p; ++m1)
            for (int m2 = 0; m2 <= p; ++m2) out.cell(m1, m2) = convolve(a, b, m1, m2, -1, -1, acc);
        return out;
    }

    /// Exact quotient a / b. b's leading cell (its coefficient at (v_b, v_b))
    /// must be nonzero. A quotient with negative valuation is accepted only
    /// if its negative-exponent rows vanish, so the result is a genuine power
    /// series; every failed cell division raises NotDivisible.
    static QSeries divide(const QSeries& a, const QSeries& b) {
        check(a, b);
        if (b.cell(0, 0).is_zero()) throw InvalidArgument("divisor has a vanishing leading coefficient");
        const int p = std::min(a.prec_, b.prec_);
        QSeries q(a.dom_, a.val_ - b.val_, p);
        std::vector<C> acc;
        const Laurent& lead = b.cell(0, 0);
        // Graded order of m1 + m2, lexicographic tie-break.
        for (int g = 0; g <= 2 * p; ++g) {
            for (int m1 = std::max(0, g - p); m1 <= std::min(g, p); ++m1) {
                const int m2 = g - m1;
                Laurent rest = a.cell(m1, m2) - convolve(q, b, m1, m2, m1, m2, acc);
                auto t = Laurent::divide_exact(rest, lead);
                if (!t)
                    throw NotDivisible("series division fails at relative cell (" + std::to_string(m1) + "," +
                                       std::to_string(m2) + ")");
                q.cell(m1, m2) = std::move(*t);
            }
        }
        while (q.val_ < 0) {
            for (int m = 0; m <= q.prec_; ++m)
                if (!q.cell(0, m).is_zero() || !q.cell(m, 0).is_zero())
                    throw NotDivisible("quotient has negative q-exponents");
            if (q.prec_ == 0) throw OutOfTruncation("not enough precision to divide");
            QSeries r(q.dom_, q.val_ + 1, q.prec_ - 1);
            for (int m1 = 0; m1 <= r.prec_; ++m1)
                for (int m2 = 0; m2 <= r.prec_; ++m2) r.cell(m1, m2) = q.cell(m1 + 1, m2 + 1);
            q = std::move(r);
        }
        return q;
    }

    /// Equality on the common known box.
    friend bool operator==(const QSeries& a, const QSeries& b) {
        if (!(a.dom_ == b.dom_)) return false;
        auto [x, y] = align(a, b);
        return x.cells_ == y.cells_;
    }

    /// Apply f to every explicit cell.
    template <typename F>
    QSeries map_cells(F&& f) const {
        QSeries r = *this;
        for (auto& c : r.cells_) c = f(c);
        return r;
    }

private:
    std::size_t side() const { return static_cast<std::size_t>(prec_ + 1); }
    std::size_t index(int m1, int m2) const {
        if (m1 < 0 || m2 < 0 || m1 > prec_ || m2 > prec_) throw OutOfTruncation("relative cell out of range");
        return static_cast<std::size_t>(m1) * side() + static_cast<std::size_t>(m2);
    }

    static void check(const QSeries& a, const QSeries& b) {
        if (!(a.dom_ == b.dom_)) throw DomainMismatch("series over " + a.dom_.name() + " and " + b.dom_.name());
    }

    static QSeries combine(const QSeries& a, const QSeries& b, bool subtract) {
        auto [x, y] = align(a, b);
        for (std::size_t i = 0; i < x.cells_.size(); ++i) {
            if (subtract) x.cells_[i] -= y.cells_[i];
            else x.cells_[i] += y.cells_[i];
        }
        return x;
    }

    /// sum over k <= m (componentwise) of a(k) * b(m - k), skipping k == skip.
    static Laurent convolve(const QSeries& a, const QSeries& b, int m1, int m2, int skip1, int skip2, std::vector<C>& acc) {
        int lo = 0, hi = -1;
        bool any = false;
        for (int k1 = 0; k1 <= m1; ++k1)
            for (int k2 = 0; k2 <= m2; ++k2) {
                if (k1 == skip1 && k2 == skip2) continue;
                const auto& x = a.cell(k1, k2);
                const auto& y = b.cell(m1 - k1, m2 - k2);
                if (x.is_zero() || y.is_zero()) continue;
                int l = x.min_exponent() + y.min_exponent(), h = x.max_exponent() + y.max_exponent();
                if (!any) {
                    lo = l;
                    hi = h;
                    any = true;
                } else {
                    lo = std::min(lo, l);
                    hi = std::max(hi, h);
                }
            }
        Laurent out(a.dom_);
        if (!any) return out;
        acc.assign(static_cast<std::size_t>(hi - lo + 1), a.dom_.zero());
        for (int k1 = 0; k1 <= m1; ++k1)
            for (int k2 = 0; k2 <= m2; ++k2) {
                if (k1 == skip1 && k2 == skip2) continue;
                const auto& x = a.cell(k1, k2);
                const auto& y = b.cell(m1 - k1, m2 - k2);
                if (x.is_zero() || y.is_zero()) continue;
                x.accumulate_product(y, acc, static_cast<std::size_t>(x.min_exponent() + y.min_exponent() - lo));
            }
        out.assign_dense(acc, lo);
        return out;
    }

    typename C::Domain dom_{};
    int val_ = 0;
    int prec_ = 0;
    std::vector<Laurent> cells_ = std::vector<Laurent>(1);
};

} // namespace siegel::qexp
