#pragma once

#include <random>

#include "kleinian/poly.hpp"

namespace kln::test {

// Random polynomial in the given variables, small integer coefficients, total degree <= max_deg.
inline Poly random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, int max_deg, int terms = 4) {
    std::uniform_int_distribution<int> deg(0, max_deg), coef(-5, 5);
    Poly f(vars);
    int nv = (int)vars.size();
    for (int k = 0; k < terms; ++k) {
        Exp e{0, 0, 0};
        int d = deg(rng);
        for (int j = 0; j < d; ++j) e[std::uniform_int_distribution<int>(0, nv - 1)(rng)]++;
        f += Poly::monomial(vars, e, Cyclo(coef(rng)));
    }
    return f;
}

inline Poly random_homogeneous(std::mt19937_64& rng, int d) {
    std::uniform_int_distribution<int> coef(-4, 4);
    Poly f(uv_vars());
    for (int a = 0; a <= d; ++a) f += Poly::monomial(uv_vars(), {a, d - a, 0}, Cyclo(coef(rng)));
    return f;
}

}  // namespace kln::test
