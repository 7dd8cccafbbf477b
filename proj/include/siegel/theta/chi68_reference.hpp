#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "siegel/qexp/fourier.hpp"

namespace siegel::theta {

using arith::Integer;

/// One displayed entry: content * (sum of coeffs[i] r^(low + i)).
struct DisplayedLaurent {
    long content = 0;
    int low = 0;
    std::vector<long> coeffs;

    arith::LaurentPoly<Integer> value() const {
        arith::LaurentPoly<Integer> l;
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (coeffs[i]) l += arith::LaurentPoly<Integer>::monomial(Integer(content * coeffs[i]), low + static_cast<int>(i));
        return l;
    }
};

/// The published expansion of chi6_8 on [1, 2]^2, coordinate by coordinate.
inline const std::map<std::pair<int, int>, std::array<DisplayedLaurent, 7>>& chi68_reference_block() {
    static const std::map<std::pair<int, int>, std::array<DisplayedLaurent, 7>> block{
        {{1, 1},
         {{{0, 0, {}},
           {0, 0, {}},
           {1, -1, {1, -2, 1}},
           {2, -1, {-1, 0, 1}},
           {1, -1, {1, -2, 1}},
           {0, 0, {}},
           {0, 0, {}}}}},
        {{1, 2},
         {{{0, 0, {}},
           {0, 0, {}},
           {-2, -2, {1, 8, -18, 8, 1}},
           {8, -2, {1, 4, 0, -4, -1}},
           {-2, -2, {7, -4, -6, -4, 7}},
           {12, -2, {1, -2, 0, 2, -1}},
           {-4, -2, {1, -4, 6, -4, 1}}}}},
        {{2, 1},
         {{{-4, -2, {1, -4, 6, -4, 1}},
           {12, -2, {1, -2, 0, 2, -1}},
           {-2, -2, {7, -4, -6, -4, 7}},
           {8, -2, {1, 4, 0, -4, -1}},
           {-2, -2, {1, 8, -18, 8, 1}},
           {0, 0, {}},
           {0, 0, {}}}}},
        {{2, 2},
         {{{16, -3, {1, 0, -9, 16, -9, 0, 1}},
           {-72, -3, {1, 0, -3, 0, 3, 0, -1}},
           {128, -3, {1, 0, 0, -2, 0, 0, 1}},
           {-144, -3, {1, 0, 5, 0, -5, 0, -1}},
           {128, -3, {1, 0, 0, -2, 0, 0, 1}},
           {-72, -3, {1, 0, -3, 0, 3, 0, -1}},
           {16, -3, {1, 0, -9, 16, -9, 0, 1}}}}},
    };
    return block;
}

/// Differences between an expansion of weight (6, 8) and the published block
/// on [0, 2]^2 (cells outside [1, 2]^2 must vanish). Empty means exact agreement.
inline std::vector<std::string> chi68_block_mismatches(const qexp::FourierExpansion<Integer>& e) {
    std::vector<std::string> out;
    if (!(e.weight() == qexp::WeightLabel{6, 8})) out.push_back("weight is " + e.weight().str());
    if (e.truncation() < 2) {
        out.push_back("truncation below 2");
        return out;
    }
    const auto& ref = chi68_reference_block();
    for (int n1 = 0; n1 <= 2; ++n1)
        for (int n2 = 0; n2 <= 2; ++n2) {
            if (n1 < e.valuation() || n2 < e.valuation()) {
                if (ref.count({n1, n2})) out.push_back("cell (" + std::to_string(n1) + "," + std::to_string(n2) + ") missing");
                continue;
            }
            auto got = e.coefficient(n1, n2);
            auto it = ref.find({n1, n2});
            for (std::size_t i = 0; i < got.size(); ++i) {
                auto want = it == ref.end() ? arith::LaurentPoly<Integer>() : it->second[i].value();
                if (!(got[i] == want))
                    out.push_back("(" + std::to_string(n1) + "," + std::to_string(n2) + ")[" + std::to_string(i) + "]: got " +
                                  got[i].str() + ", expected " + want.str());
            }
        }
    return out;
}

} // namespace siegel::theta
