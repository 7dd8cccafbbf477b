#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "siegel/qexp/fourier.hpp"

namespace siegel::qexp {

/// Rank over QQ of a dense matrix, by Gaussian elimination.
inline std::size_t matrix_rank(std::vector<std::vector<arith::Rational>> m) {
    std::size_t rank = 0;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (m[r][c].is_zero()) continue;
            arith::Rational f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k)
                if (!m[rank][k].is_zero()) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

/// Rank of the span of expansions of a common weight, read off from every
/// coefficient on the common known box [0, N]^2.
template <Coefficient C>
std::size_t rank_of_span(const std::vector<FourierExpansion<C>>& forms) {
    if (forms.empty()) return 0;
    int n = forms[0].truncation();
    for (const auto& f : forms) {
        require_same_weight(forms[0], f);
        n = std::min(n, f.truncation());
    }
    using Column = std::tuple<std::size_t, int, int, int>;
    std::map<Column, std::size_t> columns;
    std::vector<std::map<std::size_t, arith::Rational>> sparse(forms.size());
    for (std::size_t row = 0; row < forms.size(); ++row) {
        const auto& f = forms[row];
        for (std::size_t i = 0; i < f.dimension(); ++i)
            for (int n1 = f.valuation(); n1 <= n; ++n1)
                for (int n2 = f.valuation(); n2 <= n; ++n2) {
                    const auto cell = f.coordinate(i).coefficient(n1, n2);
                    for (const auto& [e, c] : cell.terms()) {
                        auto [it, fresh] = columns.try_emplace({i, n1, n2, e}, columns.size());
                        if constexpr (std::is_same_v<C, arith::Rational>) sparse[row][it->second] = c;
                        else if constexpr (std::is_same_v<C, arith::Integer>) sparse[row][it->second] = arith::Rational(c);
                        else static_assert(sizeof(C) == 0, "rank_of_span works over ZZ or QQ");
                    }
                }
    }
    std::vector<std::vector<arith::Rational>> dense(forms.size(), std::vector<arith::Rational>(columns.size()));
    for (std::size_t r = 0; r < forms.size(); ++r)
        for (const auto& [c, x] : sparse[r]) dense[r][c] = x;
    return matrix_rank(std::move(dense));
}

} // namespace siegel::qexp
