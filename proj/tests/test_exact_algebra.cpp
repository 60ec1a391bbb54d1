#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "kleinian/cyclo.hpp"
#include "kleinian/linalg.hpp"
#include "kleinian/poly.hpp"

using namespace kln;

TEST_CASE("cyclotomic field arithmetic") {
    Cyclo z5 = Cyclo::zeta(5);
    CHECK(z5.pow(5) == Cyclo(1));
    CHECK(z5 + z5.pow(2) + z5.pow(3) + z5.pow(4) == Cyclo(-1));
    CHECK((z5 * z5.inverse()).is_one());
    Cyclo i = Cyclo::zeta(4);
    CHECK(i * i == Cyclo(-1));
    CHECK(Cyclo::zeta(8).pow(2) == i.embed(8));
    CHECK(Cyclo::rational(6, 4) == Cyclo(mpq_class(3, 2)));
    CHECK(Cyclo::rational(6, 4).str() == "3/2");
    // sqrt(5) = zeta5 - zeta5^2 - zeta5^3 + zeta5^4
    Cyclo r5 = z5 - z5.pow(2) - z5.pow(3) + z5.pow(4);
    CHECK(r5 * r5 == Cyclo(5));
    CHECK(r5.conj(2) == -r5);
    auto c = r5.to_complex();
    CHECK(c.real() == doctest::Approx(std::sqrt(5.0)));
    CHECK(std::abs(c.imag()) < 1e-12);
}

TEST_CASE("cyclotomic division and mixed orders") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-6, 6);
    for (int k = 0; k < 50; ++k) {
        Cyclo a = Cyclo(d(rng)) + Cyclo(d(rng)) * Cyclo::zeta(12) + Cyclo(d(rng)) * Cyclo::zeta(12, 3);
        Cyclo b = Cyclo(d(rng)) * Cyclo::zeta(3) + Cyclo(d(rng) | 1);
        if (b.is_zero()) continue;
        CHECK((a / b) * b == a);
        CHECK(a * b == b * a);
        CHECK(a - a == Cyclo(0));
    }
}

TEST_CASE("polynomial parsing and canonical rendering") {
    Poly f = parse_poly("x*y - z^4 + 3/2*x^2", xyz_vars());
    Poly g = parse_poly(f.str(), xyz_vars());
    CHECK(f == g);
    CHECK(parse_poly("(x+y)^2", xyz_vars()) == parse_poly("x^2 + 2*x*y + y^2", xyz_vars()));
    CHECK(parse_poly("z^3", xyz_vars()).str() == "z^3");
    CHECK_THROWS(parse_poly("x +", xyz_vars()));
    CHECK_THROWS(parse_poly("w", xyz_vars()));
}

TEST_CASE("polynomial ring axioms on random inputs") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 40; ++k) {
        Poly a = test::random_poly(rng, xyz_vars(), 3), b = test::random_poly(rng, xyz_vars(), 3),
             c = test::random_poly(rng, xyz_vars(), 3);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
        CHECK((a * b).diff("x") == a.diff("x") * b + a * b.diff("x"));
        std::map<std::string, Poly> sub{{"x", b}};
        CHECK((a * c).substitute(sub) == a.substitute(sub) * c.substitute(sub));
    }
}

TEST_CASE("Poisson bracket on C[u,v]: antisymmetry, Leibniz, Jacobi on 100 random triples") {
    std::mt19937_64 rng(2024);
    for (int k = 0; k < 100; ++k) {
        Poly f = test::random_poly(rng, uv_vars(), 4), g = test::random_poly(rng, uv_vars(), 4),
             h = test::random_poly(rng, uv_vars(), 4);
        CHECK(poisson_bracket_uv(f, g) == -poisson_bracket_uv(g, f));
        CHECK(poisson_bracket_uv(f, g * h) == poisson_bracket_uv(f, g) * h + g * poisson_bracket_uv(f, h));
        Poly jac = poisson_bracket_uv(f, poisson_bracket_uv(g, h)) + poisson_bracket_uv(g, poisson_bracket_uv(h, f)) +
                   poisson_bracket_uv(h, poisson_bracket_uv(f, g));
        CHECK(jac.is_zero());
    }
    CHECK(poisson_bracket_uv(Poly::var(uv_vars(), "u"), Poly::var(uv_vars(), "v")) == Poly::constant(uv_vars(), Cyclo(1)));
}

TEST_CASE("weighted degree") {
    Poly f = parse_poly("x^3*y + y^3 + z^2", xyz_vars());
    CHECK(weighted_degree(f, {8, 12, 18}) == 36);
    CHECK_THROWS_AS(weighted_degree(parse_poly("x + y^2", xyz_vars()), {1, 1, 1}), std::domain_error);
}

TEST_CASE("exact linear algebra") {
    CMatrix m = cmat_zero(3, 3);
    int vals[3][3] = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = Cyclo(vals[i][j]);
    CMatrix inv = cmat_inverse(m);
    CHECK(cmat_mul(m, inv) == cmat_identity(3));
    CHECK(inv[0][0] == Cyclo::rational(3, 4));
    CHECK(rank(m) == 3);
    CMatrix s = cmat_zero(2, 2);
    s[0][0] = Cyclo(1);
    s[0][1] = Cyclo(2);
    s[1][0] = Cyclo(2);
    s[1][1] = Cyclo(4);
    CHECK(rank(s) == 1);
    CHECK(nullspace(s, 2).size() == 1);
    CHECK_THROWS(cmat_inverse(s));
}
