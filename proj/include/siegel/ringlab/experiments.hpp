#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "siegel/qexp/analysis.hpp"
#include "siegel/qexp/linalg.hpp"
#include "siegel/ringlab/registry.hpp"

namespace siegel::ringlab {

/// Coefficient of t^k in 1/((1-t^4)(1-t^6)(1-t^10)(1-t^12)). Throws OddWeight.
inline long even_dimension(int k) {
    if (k < 0) throw InvalidArgument("negative weight");
    if (k % 2 != 0) throw OddWeight("weight " + std::to_string(k) + " is odd");
    std::vector<long> c(static_cast<std::size_t>(k + 1), 0);
    c[0] = 1;
    for (int g : {4, 6, 10, 12})
        for (int i = g; i <= k; ++i) c[static_cast<std::size_t>(i)] += c[static_cast<std::size_t>(i - g)];
    return c[static_cast<std::size_t>(k)];
}

/// Exponents (a, b, c, d) of psi4^a psi6^b chi10^c chi12^d of weight k.
inline std::vector<std::array<int, 4>> even_monomials(int k) {
    std::vector<std::array<int, 4>> out;
    for (int d = 0; 12 * d <= k; ++d)
        for (int c = 0; 12 * d + 10 * c <= k; ++c)
            for (int b = 0; 12 * d + 10 * c + 6 * b <= k; ++b) {
                int rest = k - 12 * d - 10 * c - 6 * b;
                if (rest % 4 == 0) out.push_back({rest / 4, b, c, d});
            }
    return out;
}

inline std::string monomial_name(const std::array<int, 4>& e) {
    static const std::array<const char*, 4> names{"psi4", "psi6", "chi10", "chi12"};
    std::string s;
    for (std::size_t i = 0; i < 4; ++i) {
        if (!e[i]) continue;
        if (!s.empty()) s += "*";
        s += names[i];
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

/// Products of the four generators at one truncation, with powers memoized.
class MonomialBuilder {
public:
    MonomialBuilder(Registry& reg, int n) : n_(n) {
        auto forms = reg.named_forms({"psi4", "psi6", "chi10", "chi12"}, n);
        for (std::size_t i = 0; i < 4; ++i) gens_[i] = std::move(forms[i].expansion);
    }

    const Expansion& power(std::size_t i, int e) {
        auto key = std::make_pair(i, e);
        if (auto it = powers_.find(key); it != powers_.end()) return it->second;
        Expansion p = e == 0 ? Expansion::constant(Integer(1), n_) : qexp::mul(power(i, e - 1), gens_[i]);
        return powers_.emplace(key, std::move(p)).first->second;
    }

    Expansion monomial(const std::array<int, 4>& e) {
        Expansion acc = power(0, e[0]);
        for (std::size_t i = 1; i < 4; ++i)
            if (e[i]) acc = qexp::mul(acc, power(i, e[i]));
        return acc.truncated(n_);
    }

    int truncation() const noexcept { return n_; }

private:
    int n_;
    std::array<Expansion, 4> gens_;
    std::map<std::pair<std::size_t, int>, Expansion> powers_;
};

struct GenerationEntry {
    int k = 0;
    long expected = 0;
    std::size_t rank = 0;
    int truncation = 0;
    bool pass = false;
};

inline nlohmann::json to_json(const GenerationEntry& e) {
    return {{"weight", e.k}, {"expected_dim", e.expected}, {"rank", e.rank}, {"truncation", e.truncation},
            {"status", e.pass ? "PASS" : "FAIL"}};
}

/// For every even k <= k_max compare the rank of the weight-k monomials in
/// psi4, psi6, chi10, chi12 with the generating-function dimension. A rank
/// deficit is retried once at N + 1; ranks can only grow with N.
inline std::vector<GenerationEntry> verify_even_generation(int k_max, int n, Registry& reg) {
    std::vector<GenerationEntry> out;
    std::map<int, MonomialBuilder> builders;
    auto builder = [&](int t) -> MonomialBuilder& {
        auto it = builders.find(t);
        if (it == builders.end()) it = builders.emplace(t, MonomialBuilder(reg, t)).first;
        return it->second;
    };
    for (int k = 0; k <= k_max; k += 2) {
        GenerationEntry e{k, even_dimension(k), 0, n, false};
        for (int t : {n, n + 1}) {
            std::vector<Expansion> forms;
            for (const auto& m : even_monomials(k)) forms.push_back(builder(t).monomial(m));
            e.rank = qexp::rank_of_span(forms);
            e.truncation = t;
            e.pass = static_cast<long>(e.rank) == e.expected;
            if (e.pass) break;
        }
        out.push_back(e);
    }
    return out;
}

inline std::vector<GenerationEntry> verify_even_generation(int k_max, int n) {
    Registry reg;
    return verify_even_generation(k_max, n, reg);
}

struct OddWeightReport {
    int truncation = 0;
    std::optional<int> chi35_a11_order;
    bool chi35_phi_zero = false;
    std::size_t rank_monomials = 0;
    std::size_t rank_with_square = 0;
    bool square_nonzero_in_box = false; ///< false means the span test is vacuous at this N
    bool pass = false;
};

inline nlohmann::json to_json(const OddWeightReport& r) {
    return {{"truncation", r.truncation},
            {"chi35_a11_order", r.chi35_a11_order ? nlohmann::json(*r.chi35_a11_order) : nlohmann::json(nullptr)},
            {"chi35_phi_zero", r.chi35_phi_zero},
            {"rank_weight70", r.rank_monomials},
            {"rank_weight70_with_chi35_squared", r.rank_with_square},
            {"chi35_squared_visible", r.square_nonzero_in_box},
            {"status", r.pass ? "PASS" : "FAIL"}};
}

/// chi35 vanishes to order 1 along the product locus, is a cusp form, and its
/// square adds nothing to the span of the weight-70 monomials at truncation N.
inline OddWeightReport odd_weight_divisibility_check(int n, Registry& reg) {
    OddWeightReport r;
    r.truncation = n;
    Expansion chi35 = reg.named_form("chi35", n).expansion;
    r.chi35_a11_order = qexp::a11_order(chi35).overall;
    r.chi35_phi_zero = qexp::siegel_phi(chi35).is_zero();
    Expansion sq = qexp::mul(chi35, chi35).truncated(n);
    r.square_nonzero_in_box = !sq.is_zero();
    MonomialBuilder b(reg, n);
    std::vector<Expansion> forms;
    for (const auto& m : even_monomials(70)) forms.push_back(b.monomial(m));
    r.rank_monomials = qexp::rank_of_span(forms);
    forms.push_back(sq);
    r.rank_with_square = qexp::rank_of_span(forms);
    r.pass = r.chi35_a11_order == 1 && r.chi35_phi_zero && r.rank_with_square == r.rank_monomials;
    return r;
}

inline OddWeightReport odd_weight_divisibility_check(int n) {
    Registry reg;
    return odd_weight_divisibility_check(n, reg);
}

/// Weight-(6,8) cusp forms built along routes other than chi5 * chi6_3.
struct S68Probe {
    using QQExpansion = qexp::FourierExpansion<arith::Rational>;
    std::vector<std::string> labels;
    std::vector<QQExpansion> forms;
    std::vector<bool> proportional; ///< entry i: forms[i] is a nonzero multiple of chi6_8
};

inline S68Probe dim_s68_probe(int n, Registry& reg) {
    using QQ = arith::Rational;
    S68Probe p;
    const auto chi68 = qexp::change_domain<QQ>(reg.named_form("chi6_8", n).expansion, {});
    // nu(D f): degree 11, order 6, holomorphic without any chi10 factor.
    p.labels.push_back("nu(D*f)");
    p.forms.push_back(qexp::change_domain<QQ>(
        nu::nu_normalized<Integer>(cov::invariant("D") * cov::grace_young("f"), 0, n).expansion, {}));
    // chi10^2 nu(A f) divided by chi12 = chi10 nu(A).
    p.labels.push_back("chi10^2*nu(A*f)/chi12");
    {
        const auto& a = cov::invariant("A");
        auto af = qexp::change_domain<QQ>(nu::nu_normalized<Integer>(a * cov::grace_young("f"), 2, n + 1).expansion, {});
        auto chi12 = qexp::change_domain<QQ>(nu::nu_normalized<Integer>(a, 1, n + 1).expansion, {});
        p.forms.push_back(qexp::exact_div(af, chi12).truncated(n));
    }
    for (const auto& f : p.forms)
        p.proportional.push_back(!f.is_zero() && qexp::rank_of_span(std::vector<S68Probe::QQExpansion>{chi68, f}) == 1);
    return p;
}

} // namespace siegel::ringlab
