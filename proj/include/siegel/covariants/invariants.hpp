#pragma once

#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "siegel/covariants/covariant.hpp"

namespace siegel::cov {

/// Solve for the unique combination sum_i t_i * basis_i whose coefficients at
/// the given monomials equal the given values. Throws NormalizationFailure if
/// the constraints are inconsistent or leave freedom.
inline Covariant pin_combination(const std::vector<Covariant>& basis,
                                 const std::vector<std::pair<Monomial, Rational>>& constraints) {
    const std::size_t n = basis.size(), m = constraints.size();
    if (n == 0) throw NormalizationFailure("empty basis");
    // Augmented matrix rows = constraints, columns = basis elements + rhs.
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n + 1));
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < n; ++c) a[r][c] = basis[c].coefficient(constraints[r].first);
        a[r][n] = constraints[r].second;
    }
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t c = 0; c < n && rank < m; ++c) {
        std::size_t p = rank;
        while (p < m && a[p][c].is_zero()) ++p;
        if (p == m) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == rank || a[r][c].is_zero()) continue;
            Rational f = a[r][c] / a[rank][c];
            for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[rank][k];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    for (std::size_t r = rank; r < m; ++r)
        if (!a[r][n].is_zero()) throw NormalizationFailure("normalization constraints are inconsistent");
    if (rank < n) throw NormalizationFailure("normalization constraints do not determine a unique combination");
    Covariant out = basis[0].scaled(Rational(0));
    for (std::size_t r = 0; r < rank; ++r) out = out + basis[pivot_col[r]].scaled(a[r][n] / a[r][pivot_col[r]]);
    return out;
}

/// Determinant of a square matrix of polynomials by expansion over column subsets.
inline Poly polynomial_determinant(const std::vector<std::vector<Poly>>& mat) {
    const std::size_t n = mat.size();
    if (n == 0 || n > 20) throw InvalidArgument("unsupported determinant size");
    auto vars = mat[0][0].variables();
    std::map<std::uint32_t, Poly> prev;
    prev.emplace(0u, Poly::constant(vars, Rational(1)));
    for (std::size_t k = 1; k <= n; ++k) {
        std::map<std::uint32_t, Poly> cur;
        const auto& row = mat[k - 1];
        for (const auto& [s, minor] : prev) {
            if (minor.is_zero()) continue;
            for (std::size_t c = 0; c < n; ++c) {
                if (s & (1u << c) || row[c].is_zero()) continue;
                // Sign of moving column c past the larger columns already chosen.
                int above = __builtin_popcount(s >> (c + 1));
                Poly t = row[c] * minor;
                if (above % 2) t = -t;
                auto [it, fresh] = cur.try_emplace(s | (1u << c), Poly(vars));
                it->second += t;
            }
        }
        prev = std::move(cur);
    }
    auto it = prev.find((1u << n) - 1);
    return it == prev.end() ? Poly(vars) : it->second;
}

/// Resultant of the partial derivatives of f (Sylvester determinant), a
/// degree-10 invariant proportional to the discriminant.
inline Covariant derivative_resultant() {
    auto f = universal_sextic();
    std::vector<Poly> p = coordinates(Covariant(f.poly().derivative(kX1), 1, 5));
    std::vector<Poly> q = coordinates(Covariant(f.poly().derivative(kX2), 1, 5));
    auto vars = sextic_variables();
    std::vector<std::vector<Poly>> mat(10, std::vector<Poly>(10, Poly(vars)));
    for (std::size_t r = 0; r < 5; ++r)
        for (std::size_t i = 0; i <= 5; ++i) {
            mat[r][r + i] = p[i];
            mat[r + 5][r + i] = q[i];
        }
    return Covariant(polynomial_determinant(mat), 10, 0);
}

// ---------------------------------------------------------------------------
// Catalog of named covariants, built lazily once and shared.

class Catalog {
public:
    static Catalog& instance() {
        static Catalog c;
        return c;
    }

    /// Throws UnknownName.
    const Covariant& get(const std::string& name) {
        std::lock_guard lock(mu_);
        return get_locked(name);
    }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& [n, r] : recipes_) out.push_back(n);
        return out;
    }

    bool contains(const std::string& name) const { return recipes_.count(name) > 0; }

private:
    Catalog() {
        auto& R = recipes_;
        R["C1,6"] = [] { return universal_sextic(); };
        R["f"] = [this] { return get_locked("C1,6"); };
        R["C2,0"] = [this] { return transvectant(get_locked("f"), get_locked("f"), 6); };
        R["C2,4"] = [this] { return transvectant(get_locked("f"), get_locked("f"), 4); };
        R["C2,8"] = [this] { return transvectant(get_locked("f"), get_locked("f"), 2); };
        R["C3,2"] = [this] { return transvectant(get_locked("f"), get_locked("C2,4"), 4); };
        R["C3,6"] = [this] { return transvectant(get_locked("f"), get_locked("C2,4"), 2); };
        R["C3,8"] = [this] { return transvectant(get_locked("f"), get_locked("C2,4"), 1); };
        R["C4,0"] = [this] { return transvectant(get_locked("C2,4"), get_locked("C2,4"), 4); };
        R["C4,4"] = [this] { return transvectant(get_locked("C2,4"), get_locked("C2,4"), 2); };
        R["C5,2"] = [this] { return transvectant(get_locked("C2,4"), get_locked("C3,2"), 2); };
        R["C6,0"] = [this] { return transvectant(get_locked("C2,4"), get_locked("C4,4"), 4); };
        R["C7,2"] = [this] { return transvectant(get_locked("C2,4"), get_locked("C5,2"), 2); };
        R["C8,2"] = [this] { return transvectant(get_locked("C3,2"), get_locked("C5,2"), 1); };
        R["C15,0"] = [this] { return transvectant(get_locked("C8,2"), get_locked("C7,2"), 2); };
        // Pieces of Sym^2(Sym^6): V[10,2] (Hessian), V[8,4], V[6,6] (the invariant A).
        R["H"] = [this] { return canonical_rescale(get_locked("C2,8")); };
        R["V8,4"] = [this] { return canonical_rescale(get_locked("C2,4")); };
        R["V6,6"] = [this] { return canonical_rescale(get_locked("C2,0")); };
        R["A"] = [this] { return build_A(); };
        R["B"] = [this] { return build_B(); };
        R["C"] = [this] { return build_C(); };
        R["D"] = [this] { return build_D(); };
        R["E"] = [this] { return build_E(); };
        R["psi6"] = [this] { return build_psi6(); };
    }

    const Covariant& get_locked(const std::string& name) {
        auto it = built_.find(name);
        if (it != built_.end()) return it->second;
        auto r = recipes_.find(name);
        if (r == recipes_.end()) throw UnknownName("unknown covariant '" + name + "'");
        Covariant c = r->second();
        return built_.emplace(name, std::move(c)).first->second;
    }

    Covariant build_A() {
        return pin_combination({get_locked("C2,0")}, {{a_monomial({1, 0, 0, 0, 0, 0, 1}), Rational(120)}});
    }
    Covariant build_B() {
        const auto& A = get_locked("A");
        return pin_combination({A * A, get_locked("C4,0")},
                               {{a_monomial({0, 0, 0, 4, 0, 0, 0}), Rational(0)},
                                {a_monomial({1, 0, 0, 2, 0, 0, 1}), Rational(81)}});
    }
    Covariant build_C() {
        const auto& A = get_locked("A");
        const auto& B = get_locked("B");
        return pin_combination({A.pow(3), A * B, get_locked("C6,0")},
                               {{a_monomial({0, 0, 0, 6, 0, 0, 0}), Rational(0)},
                                {a_monomial({0, 0, 1, 4, 1, 0, 0}), Rational(0)},
                                {a_monomial({1, 0, 0, 4, 0, 0, 1}), Rational(162)},
                                {a_monomial({0, 1, 0, 4, 0, 1, 0}), Rational(72)}});
    }
    Covariant build_D() {
        return pin_combination({derivative_resultant()}, {{a_monomial({2, 0, 0, 6, 0, 0, 2}), Rational(729)}});
    }
    Covariant build_E() {
        return pin_combination({get_locked("C15,0")}, {{a_monomial({2, 0, 0, 10, 0, 3, 0}), Rational(-729)}});
    }
    Covariant build_psi6() {
        const auto& A = get_locked("A");
        return pin_combination({A * get_locked("B"), get_locked("C")},
                               {{a_monomial({1, 0, 0, 4, 0, 0, 1}), Rational(1458)},
                                {a_monomial({1, 0, 0, 3, 1, 1, 0}), Rational(-486)}});
    }

    std::mutex mu_;
    std::map<std::string, std::function<Covariant()>> recipes_;
    std::map<std::string, Covariant> built_;
};

/// Named Grace-Young style covariant ("C1,6", "C2,0", "C2,4", "C3,2", "H", ...).
inline const Covariant& grace_young(const std::string& name) { return Catalog::instance().get(name); }

/// One of the invariants A, B, C, D, E, normalized to the leading terms
/// 120 a0a6 (A), 81 a0a6a3^2 (B), 162 a0a6a3^4 (C), 729 a0^2a6^2a3^6 (D),
/// -729 a0^2a5^3a3^10 (E).
inline const Covariant& invariant(const std::string& name) {
    if (name != "A" && name != "B" && name != "C" && name != "D" && name != "E")
        throw UnknownName("unknown invariant '" + name + "'");
    return Catalog::instance().get(name);
}

/// The literal product A*B - 3*C.
inline Covariant combination_AB_minus_3C() {
    const auto& A = invariant("A");
    return A * invariant("B") - invariant("C").scaled(Rational(3));
}

/// The weight-6 invariant with leading terms 1458 a0a6a3^4 - 486 (a0a4a5 + a1a2a6) a3^3,
/// which works out to -8AB - 3C.
inline const Covariant& psi6_invariant() { return Catalog::instance().get("psi6"); }

/// Lower bound for the order along the product locus of nu(c): the minimum over
/// the monomials of c of sum e_i w_i with w = (2, 1, 0, -1, 0, 1, 2).
inline int a11_order_bound(const Covariant& c) {
    static constexpr std::array<int, 7> w{2, 1, 0, -1, 0, 1, 2};
    if (c.poly().is_zero()) return std::numeric_limits<int>::max();
    int best = std::numeric_limits<int>::max();
    for (const auto& [m, x] : c.poly().terms()) {
        int s = 0;
        for (std::size_t i = 0; i < 7; ++i) s += w[i] * m.e[i];
        best = std::min(best, s);
    }
    return best;
}

/// Evaluate an invariant (order 0) at integer sextic coefficients.
inline Rational evaluate_at(const Covariant& c, const std::array<long, 7>& a) {
    std::vector<Rational> vals;
    for (long x : a) vals.emplace_back(x);
    vals.emplace_back(1);
    vals.emplace_back(1);
    return evaluate<Rational>(
        c.poly(), std::span<const Rational>(vals), [](const Rational& r) { return r; },
        [](const Rational& x, const Rational& y) { return x * y; }, [](const Rational& x, const Rational& y) { return x + y; },
        Rational(0));
}

} // namespace siegel::cov
