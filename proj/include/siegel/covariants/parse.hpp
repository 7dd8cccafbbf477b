#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "siegel/covariants/invariants.hpp"

namespace siegel::cov {

namespace detail {

/// Recursive descent over
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := power (('*' power) | ('/' integer))*
///   power  := atom ['^' integer]
///   atom   := integer | variable | '(' expr ')'
class PolyParser {
public:
    PolyParser(std::string_view text, VariablesPtr vars) : s_(text), vars_(std::move(vars)) {}

    Poly parse() {
        Poly p = expr();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(i_, msg); }

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    Poly expr() {
        skip();
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        Poly acc = term();
        if (neg) acc = -acc;
        for (;;) {
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else return acc;
        }
    }

    Poly term() {
        Poly acc = power();
        for (;;) {
            if (eat('*')) {
                acc *= power();
            } else if (eat('/')) {
                skip();
                const std::size_t at = i_;
                mpz_class d = integer();
                if (d == 0) {
                    i_ = at;
                    fail("division by zero");
                }
                acc = acc.scaled(Rational(mpq_class(1, d)));
            } else {
                return acc;
            }
        }
    }

    Poly power() {
        Poly base = atom();
        if (eat('^')) {
            skip();
            mpz_class e = integer();
            if (e > 64) fail("exponent too large");
            base = base.pow(static_cast<unsigned>(e.get_ui()));
        }
        return base;
    }

    Poly atom() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[i_];
        if (c == '(') {
            ++i_;
            Poly p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Poly::constant(vars_, Rational(mpq_class(integer())));
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = i_;
            while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
            const std::string name(s_.substr(start, i_ - start));
            auto idx = vars_->index(name);
            if (!idx) {
                i_ = start;
                fail("unknown variable '" + name + "'");
            }
            return Poly::variable(vars_, arith::RationalField{}, *idx);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    mpz_class integer() {
        const std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ == start) fail("expected an integer");
        return mpz_class(std::string(s_.substr(start, i_ - start)));
    }

    std::string_view s_;
    VariablesPtr vars_;
    std::size_t i_ = 0;
};

} // namespace detail

/// Parse a polynomial with rational coefficients in the given variables
/// (a0..a6, x1, x2 by default). Throws ParseError with the offending position.
inline Poly parse_polynomial(std::string_view text, VariablesPtr vars = sextic_variables()) {
    return detail::PolyParser(text, std::move(vars)).parse();
}

/// A catalog name ("A", "C2,4", "H", ...) or an inline bihomogeneous polynomial.
inline Covariant resolve_covariant(const std::string& text) {
    try {
        return grace_young(text);
    } catch (const UnknownName&) {
    }
    Poly p = parse_polynomial(text);
    if (p.is_zero()) throw InvalidArgument("the zero polynomial has no bidegree");
    return Covariant::from_poly(std::move(p));
}

} // namespace siegel::cov
