#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "siegel/covariants/parse.hpp"
#include "siegel/modp/modp.hpp"
#include "siegel/ringlab/experiments.hpp"
#include "siegel/theta/chi68_reference.hpp"

namespace siegel::ringlab {

/// One verified statement of a suite.
struct Check {
    std::string label;
    bool pass = false;
    std::string detail;
    nlohmann::json data = nlohmann::json::object();
};

struct SuiteReport {
    std::string suite;
    int truncation = 0;
    std::vector<Check> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }
};

struct SuiteOptions {
    std::optional<int> order; ///< unset: the suite's own default
    int kmax = 30;
    std::uint64_t seed = 1;
};

inline const char* status(bool ok) { return ok ? "PASS" : "FAIL"; }

inline std::string show(const std::optional<int>& o) { return o ? std::to_string(*o) : "none"; }

// ---------------------------------------------------------------------------

/// chi6_8 from theta series against the published block on [0, 2]^2.
inline SuiteReport suite_chi68_block(int n, Registry& reg) {
    SuiteReport r{"chi68-block", n, {}};
    auto e = reg.named_form("chi6_8", n).expansion;
    auto bad = theta::chi68_block_mismatches(e);
    Check c{"chi6_8 block on [0,2]^2", bad.empty(), bad.empty() ? "all 28 coordinates agree" : bad.front(), {}};
    c.data["mismatches"] = bad;
    r.checks.push_back(std::move(c));
    r.checks.push_back({"swap symmetry", qexp::swap_symmetry_check(e), "", {}});
    r.checks.push_back({"r-inversion symmetry", qexp::r_inversion_check(e), "", {}});
    return r;
}

/// Orders of vanishing along the product locus.
inline SuiteReport suite_a11_orders(int n, Registry& reg) {
    SuiteReport r{"a11-orders", n, {}};
    const auto chi68 = qexp::a11_order(reg.named_form("chi6_8", n).expansion);
    // Lower bounds for the outer coordinates, exact values in the middle.
    const std::array<int, 7> bound{4, 3, 2, 1, 2, 3, 4};
    const std::array<bool, 7> exact{false, false, true, true, true, false, false};
    bool ok = true;
    std::string shown;
    for (std::size_t i = 0; i < 7; ++i) {
        const auto& o = chi68.per_coordinate[i];
        ok = ok && (exact[i] ? o == bound[i] : (!o || *o >= bound[i]));
        shown += (i ? "," : "") + show(o);
    }
    r.checks.push_back({"chi6_8 per coordinate", ok, "(" + shown + "), needed (>=4,>=3,2,1,2,>=3,>=4)", {}});
    const auto chi10 = qexp::a11_order(reg.named_form("chi10", n).expansion).overall;
    r.checks.push_back({"chi10", chi10 == 2, "order " + show(chi10), {{"order", chi10 ? nlohmann::json(*chi10) : nlohmann::json()}}});
    const auto chi35 = qexp::a11_order(reg.named_form("chi35", n).expansion).overall;
    r.checks.push_back({"chi35", chi35 == 1, "order " + show(chi35), {{"order", chi35 ? nlohmann::json(*chi35) : nlohmann::json()}}});
    return r;
}

/// nu(D) against chi10, and the pole of nu(A).
inline SuiteReport suite_nu_consistency(int n) {
    using QQ = arith::Rational;
    SuiteReport r{"nu-consistency", n, {}};
    {
        const auto raw = nu::nu_raw<QQ>(cov::invariant("D"), n);
        const auto chi10_11 = qexp::power(theta::chi10<QQ>(n, {}), 11);
        // The constant is read off at the first cell of chi10^11, then checked everywhere.
        const int v = chi10_11.valuation();
        const auto lead = chi10_11.coordinate(0).coefficient(v, v);
        const auto got = raw.coordinate(0).coefficient(v, v);
        std::optional<QQ> c;
        if (!lead.is_zero() && !got.is_zero()) c = got.terms().front().second / lead.terms().front().second;
        bool ok = c && !c->is_zero() && qexp::sub(raw, chi10_11.scaled(*c)).truncated(std::min(raw.truncation(), chi10_11.truncation())).is_zero();
        r.checks.push_back({"nu_raw(D) = c * chi10^11", ok, c ? "c = " + c->str() : "no constant", {{"constant", c ? c->str() : ""}}});
    }
    {
        bool threw = false;
        try {
            nu::nu_normalized<Integer>(cov::invariant("A"), 0, n);
        } catch (const NotDivisible&) {
            threw = true;
        }
        r.checks.push_back({"nu(A) is not holomorphic", threw, threw ? "NotDivisible" : "division succeeded", {}});
    }
    {
        auto chi12 = nu::nu_normalized<Integer>(cov::invariant("A"), 1, n).expansion;
        bool ok = chi12.weight() == qexp::WeightLabel{0, 12} && !chi12.is_zero() && qexp::siegel_phi(chi12).is_zero();
        r.checks.push_back({"chi10 nu(A) is a weight-12 cusp form", ok, "weight " + chi12.weight().str(), {}});
    }
    return r;
}

inline SuiteReport suite_even_ring(int kmax, int n, Registry& reg) {
    SuiteReport r{"even-ring", n, {}};
    for (const auto& e : verify_even_generation(kmax, n, reg)) {
        std::ostringstream d;
        d << "dim " << e.expected << ", rank " << e.rank << ", N " << e.truncation;
        r.checks.push_back({"k=" + std::to_string(e.k), e.pass, d.str(), to_json(e)});
    }
    return r;
}

inline SuiteReport suite_odd_weight(int n, Registry& reg) {
    SuiteReport r{"odd-weight", n, {}};
    auto o = odd_weight_divisibility_check(n, reg);
    r.checks.push_back({"chi35 a11 order 1", o.chi35_a11_order == 1, "order " + show(o.chi35_a11_order), {}});
    r.checks.push_back({"chi35 is a cusp form", o.chi35_phi_zero, "", {}});
    std::string d = "rank " + std::to_string(o.rank_monomials) + " -> " + std::to_string(o.rank_with_square);
    if (!o.square_nonzero_in_box) d += " (chi35^2 vanishes on the box; raise --order)";
    r.checks.push_back({"chi35^2 in the even span", o.rank_with_square == o.rank_monomials, d, to_json(o)});
    return r;
}

inline SuiteReport suite_s68_probe(int n, Registry& reg) {
    SuiteReport r{"s68-probe", n, {}};
    auto p = dim_s68_probe(n, reg);
    for (std::size_t i = 0; i < p.labels.size(); ++i)
        r.checks.push_back({p.labels[i] + " proportional to chi6_8", p.proportional[i], "consistent with dim S_{6,8} = 1", {}});
    return r;
}

/// E4^3 - E6^2 = 1728 Delta at n_elliptic; Phi(psi4) and psi4 on the product locus.
inline SuiteReport suite_elliptic(int n_elliptic, int n, Registry& reg) {
    using QQ = arith::Rational;
    SuiteReport r{"elliptic", n, {}};
    auto e4 = qexp::elliptic_form<QQ>("E4", n_elliptic), e6 = qexp::elliptic_form<QQ>("E6", n_elliptic);
    auto delta = qexp::elliptic_form<QQ>("Delta", n_elliptic);
    r.checks.push_back(
        {"E4^3 - E6^2 = 1728 Delta", (e4 * e4 * e4 - e6 * e6) == delta.scaled(QQ(1728)), "N = " + std::to_string(n_elliptic), {}});
    auto psi4 = qexp::change_domain<QQ>(reg.named_form("psi4", n).expansion, {});
    auto phi = qexp::siegel_phi(psi4);
    const QQ c = phi[0];
    auto e4n = e4.truncated(n);
    r.checks.push_back({"Phi(psi4) proportional to E4", !c.is_zero() && phi == e4n.scaled(c), "constant " + c.str(), {}});
    auto res = qexp::restrict_to_a11(psi4);
    const QQ c2 = res[0][0][0];
    bool ok = !c2.is_zero();
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) ok = ok && res[0][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == c2 * e4n[i] * e4n[j];
    r.checks.push_back({"psi4 on the product locus proportional to E4 x E4", ok, "constant " + c2.str(), {}});
    return r;
}

/// K1 ... K4 in characteristic 2 and the lift of the discriminant.
inline SuiteReport suite_char2(std::uint64_t seed) {
    SuiteReport r{"char2-K", 0, {}};
    std::mt19937_64 rng(seed);
    const auto K1 = modp::k1(), K2 = modp::k2(), K4 = modp::k4();
    r.checks.push_back({"K2 = K1^2", K2.poly == K1.poly * K1.poly, "2-adic shift " + std::to_string(K2.two_adic_shift), {}});
    auto q = modp::divide_exact(K4.poly, K1.poly);
    r.checks.push_back({"K1 divides K4", q.has_value(), "2-adic shift " + std::to_string(K4.two_adic_shift), {}});
    std::vector<modp::Char2Invariant> ks{K1, K2, K4};
    if (q) ks.insert(ks.begin() + 2, modp::Char2Invariant{"K3", *q, 3, 0});
    for (const auto& k : ks) {
        r.checks.push_back({k.name + " symbolic unipotent invariance", modp::unipotent_invariant(k), "", {}});
        r.checks.push_back({k.name + " sampled SL2 and cubic action", modp::char2_action_check(k, 20, rng), "GF(2), GF(4), GF(8)", {}});
    }
    {
        auto broken = K1;
        broken.name = "K1 + a0";
        broken.poly += modp::F2Poly::variable(modp::char2_variables(), modp::gf2(), modp::kA0);
        r.checks.push_back({"negative control K1 + a0 rejected", !modp::char2_action_check(broken, 20, rng), "", {}});
    }
    {
        // Over GF(2) every singular point lies over a root of the cubic a, hence in GF(64).
        const auto lift = modp::char2_lift_invariant("D");
        const auto f1 = modp::GF2k::field(1), f6 = modp::GF2k::field(6);
        int agree = 0, singular = 0;
        for (unsigned m = 0; m < (1u << 11); ++m) {
            std::vector<modp::GF2kElem> pt, a6, b6;
            for (unsigned i = 0; i < 11; ++i) {
                const std::uint32_t bit = (m >> i) & 1u;
                pt.emplace_back(bit, f1);
                (i < 4 ? a6 : b6).emplace_back(bit, f6);
            }
            for (int i = 0; i < 4; ++i) pt.emplace_back(0, f1);
            const bool vanishes = modp::detail::eval_gf2k(lift.poly, pt, f1).is_zero();
            const bool smooth = modp::char2_curve_smooth(a6, b6, f6);
            agree += vanishes != smooth;
            singular += !smooth;
        }
        r.checks.push_back({"lift(D) vanishes exactly on singular curves over GF(2)", agree == 2048,
                            std::to_string(agree) + "/2048 agree, " + std::to_string(singular) + " singular",
                            {{"shift", lift.two_adic_shift}}});
    }
    return r;
}

/// A modulo 3 and small primes.
inline SuiteReport suite_char3(std::uint64_t seed) {
    SuiteReport r{"char3-A", 0, {}};
    std::mt19937_64 rng(seed);
    auto a3 = modp::reduce_mod_p(cov::invariant("A"), 3);
    auto target = cov::parse_polynomial("a1*a5 - a2*a4").map_coefficients<arith::Fp>(
        a3.field, [&](const arith::Rational& q) { return a3.field.from_rational(q); });
    const bool plus = a3.poly == target, minus = a3.poly == -target;
    r.checks.push_back({"A mod 3 = +-(a1a5 - a2a4)", plus || minus, a3.poly.str() + (minus ? " (sign -)" : " (sign +)"), {}});
    const auto dim = modp::invariant_space_dimension(3, 2);
    r.checks.push_back({"degree-2 invariants mod 3 form a line", dim == 1, "dimension " + std::to_string(dim), {}});
    r.checks.push_back({"A mod 3 is SL2(F_3) invariant", modp::sl2_invariant_mod_p(a3, 50, rng), "", {}});
    for (std::uint64_t p : {5, 7})
        for (const char* name : {"A", "B", "C", "D"}) {
            auto red = modp::reduce_mod_p(cov::invariant(name), p);
            bool ok = !red.poly.is_zero() && modp::sl2_invariant_mod_p(red, 20, rng);
            r.checks.push_back({std::string(name) + " mod " + std::to_string(p) + " nonzero and invariant", ok, "", {}});
        }
    return r;
}

// ---------------------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"chi68-block", "a11-orders", "nu-consistency", "even-ring", "odd-weight",
                                                "s68-probe",   "elliptic",   "char2-K",        "char3-A"};
    return names;
}

/// Default truncation of each suite.
inline int suite_default_order(const std::string& name) {
    if (name == "chi68-block" || name == "nu-consistency" || name == "s68-probe") return 2;
    if (name == "a11-orders" || name == "even-ring" || name == "elliptic") return 3;
    if (name == "odd-weight") return 5; // chi35^2 is zero on [0, N]^2 for N < 5
    return 0;
}

/// Throws UnknownName.
inline SuiteReport run_suite(const std::string& name, const SuiteOptions& opt, Registry& reg) {
    const int n = opt.order.value_or(suite_default_order(name));
    if (name == "chi68-block") return suite_chi68_block(std::max(n, 2), reg);
    if (name == "a11-orders") return suite_a11_orders(n, reg);
    if (name == "nu-consistency") return suite_nu_consistency(n);
    if (name == "even-ring") return suite_even_ring(opt.kmax, n, reg);
    if (name == "odd-weight") return suite_odd_weight(n, reg);
    if (name == "s68-probe") return suite_s68_probe(n, reg);
    if (name == "elliptic") return suite_elliptic(20, n, reg);
    if (name == "char2-K") return suite_char2(opt.seed);
    if (name == "char3-A") return suite_char3(opt.seed);
    throw UnknownName("unknown suite '" + name + "'");
}

inline nlohmann::json to_json(const Check& c) {
    nlohmann::json j = {{"check", c.label}, {"status", status(c.pass)}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    if (!c.data.empty()) j["data"] = c.data;
    return j;
}

/// Human-readable table.
inline std::string render(const SuiteReport& r) {
    std::size_t w = 0;
    for (const auto& c : r.checks) w = std::max(w, c.label.size());
    std::ostringstream os;
    os << r.suite;
    if (r.truncation) os << " (N = " << r.truncation << ")";
    os << "\n";
    for (const auto& c : r.checks) {
        os << "  " << c.label << std::string(w - c.label.size() + 2, ' ') << status(c.pass);
        if (!c.detail.empty()) os << "  " << c.detail;
        os << "\n";
    }
    os << r.suite << ": " << status(r.pass()) << "\n";
    return os.str();
}

/// JSON lines: one per check, then a summary line.
inline std::string render_json_lines(const SuiteReport& r) {
    std::ostringstream os;
    for (const auto& c : r.checks) {
        auto j = to_json(c);
        j["suite"] = r.suite;
        os << j.dump() << "\n";
    }
    os << nlohmann::json{{"suite", r.suite}, {"truncation", r.truncation}, {"status", status(r.pass())}}.dump() << "\n";
    return os.str();
}

} // namespace siegel::ringlab
