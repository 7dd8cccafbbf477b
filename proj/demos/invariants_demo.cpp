// The invariants A..E of the binary sextic, their reductions modulo 3, and
// the characteristic-2 invariants K1..K4.

#include <iostream>

#include "siegel/covariants/invariants.hpp"
#include "siegel/modp/modp.hpp"

int main() {
    using namespace siegel;
    for (const char* name : {"A", "B", "C", "D", "E"}) {
        const auto& inv = cov::invariant(name);
        std::cout << name << ": degree " << inv.degree() << ", " << inv.poly().terms().size() << " terms\n";
    }
    std::cout << "A = " << cov::invariant("A").poly().str() << "\n";
    std::cout << "A mod 3 = " << modp::reduce_mod_p(cov::invariant("A"), 3).poly.str() << "\n";
    std::cout << "degree-2 invariants mod 3: dimension " << modp::invariant_space_dimension(3, 2) << "\n";

    const auto k1 = modp::k1(), k2 = modp::k2(), k3 = modp::k3(), k4 = modp::k4();
    std::cout << "K1 = " << k1.poly.str() << "\n";
    std::cout << "K2 == K1^2: " << std::boolalpha << (k2.poly == k1.poly * k1.poly) << "\n";
    std::cout << "K3 = K4 / K1 = " << k3.poly.str() << "\n";
    std::cout << "K4 has " << k4.poly.terms().size() << " terms; lift divided by 2^" << k4.two_adic_shift << "\n";
    return 0;
}
