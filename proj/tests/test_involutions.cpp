#include <doctest.h>

#include "kleinian/involutions.hpp"
#include "kleinian/report.hpp"

using namespace kln;

namespace {
Poly xyz(const char* s) { return parse_poly(s, xyz_vars()); }
Poly tp(const char* s) { return parse_poly(s, t_vars()); }

size_t expected_cases(const GammaType& g) {
    if (g.is_A()) return g.n % 2 ? 3 : 2;
    if (g.is_D() || g.family == Family::E6) return 2;
    return 1;
}
}  // namespace

TEST_CASE("catalog sizes per family") {
    int families = 0;
    for (auto& g : test_range()) {
        CAPTURE(g.name());
        CHECK(involution_catalog(g).size() == expected_cases(g));
    }
    // A odd, A even, D even, D odd: per-case families; E6 two, E7 and E8 one each.
    for (auto& g : {GammaType(Family::A, 5), GammaType(Family::A, 4), GammaType(Family::D, 6), GammaType(Family::D, 5),
                    GammaType(Family::E6, 6), GammaType(Family::E7, 7), GammaType(Family::E8, 8)})
        families += (int)involution_catalog(g).size();
    CHECK(families == 13);
    CHECK_THROWS_AS(find_involution(GammaType(Family::A, 4), "III"), std::invalid_argument);
}

TEST_CASE("every catalog entry passes the four exact checks and its matrix realizes it") {
    for (auto& g : test_range()) {
        for (auto& inv : involution_catalog(g)) {
            INFO(g.name(), " ", inv.case_label);
            auto r = verify_involution(inv);
            CHECK(r.relation_preserved);
            CHECK(r.involutive);
            CHECK(r.graded);
            CHECK(r.anti_poisson);
            REQUIRE(inv.realizing_matrix.has_value());
            auto m = realize_by_matrix(inv);
            CHECK(m.det_minus_one);
            CHECK(m.normalizes);
            CHECK(m.square_in_group);
            CHECK(m.induces_images);
        }
    }
}

TEST_CASE("transcribed images") {
    CHECK(find_involution(GammaType(Family::E7, 7), "I").images[2] == xyz("-z"));
    CHECK(find_involution(GammaType(Family::D, 5), "II").images[2] == xyz("x^2 - z"));
    CHECK(find_involution(GammaType(Family::D, 6), "II").images[1] == xyz("x^2 - y"));
    CHECK(find_involution(GammaType(Family::E6, 6), "II").images[2] == xyz("-z - x^2"));
    auto a5 = find_involution(GammaType(Family::A, 5), "I");
    CHECK(a5.images[0] == xyz("y"));
    CHECK(a5.images[1] == xyz("x"));
    CHECK(a5.images[2] == xyz("z"));
}

TEST_CASE("negative control: E7 with theta(z) = +z is not anti-Poisson") {
    auto inv = find_involution(GammaType(Family::E7, 7), "I");
    inv.images[2] = xyz("z");
    auto r = verify_involution(inv);
    CHECK_FALSE(r.anti_poisson);
    CHECK_FALSE(r.ok());
}

TEST_CASE("realizing matrices") {
    auto e8 = find_involution(GammaType(Family::E8, 8), "I");
    Cyclo i = Cyclo::zeta(4);
    CHECK(e8.realizing_matrix->a == i);
    CHECK(e8.realizing_matrix->d == i);
    CHECK(e8.realizing_matrix->b.is_zero());
    auto a3 = find_involution(GammaType(Family::A, 3), "I");
    CHECK(a3.realizing_matrix->a.is_zero());
    CHECK(a3.realizing_matrix->b == Cyclo(1));
    CHECK(a3.realizing_matrix->c == Cyclo(1));
}

TEST_CASE("diagram involutions") {
    for (int n = 1; n <= 12; ++n) {
        auto p = diagram_involution(find_involution(GammaType(Family::A, n), "I"));
        for (int i = 1; i <= n; ++i) CHECK(p[i] == n + 1 - i);
    }
    auto e7 = diagram_involution(find_involution(GammaType(Family::E7, 7), "I"));
    for (int i = 1; i <= 7; ++i) CHECK(e7[i] == i);
    for (int n = 5; n <= 9; n += 2) {
        auto p = diagram_involution(find_involution(GammaType(Family::D, n), "II"));
        CHECK(p[n - 1] == n);
        CHECK(p[n] == n - 1);
        for (int i = 1; i <= n - 2; ++i) CHECK(p[i] == i);
    }
    auto e6 = diagram_involution(find_involution(GammaType(Family::E6, 6), "II"));
    CHECK(e6 == std::vector<int>{0, 1, 2, 5, 6, 3, 4});
    for (auto& g : test_range())
        for (auto& inv : involution_catalog(g)) {
            auto p = diagram_involution(inv);
            for (int i = 1; i <= g.n; ++i) CHECK(p[p[i]] == i);
        }
}

TEST_CASE("fixed loci: certificates over the whole range") {
    for (auto& g : test_range()) {
        for (auto& inv : involution_catalog(g)) {
            INFO(g.name(), " ", inv.case_label);
            auto f = fixed_locus(inv);
            CHECK(f.parametrizations_vanish);
            CHECK(f.factorization_holds);
            CHECK(f.reduced);
        }
    }
}

TEST_CASE("fixed loci: component kinds") {
    auto kinds = [](const GammaType& g, const char* c) {
        std::vector<std::string> out;
        for (auto& comp : fixed_locus(find_involution(g, c)).components) out.push_back(kind_name(comp.kind));
        return out;
    };
    using V = std::vector<std::string>;
    GammaType a5(Family::A, 5), a4(Family::A, 4);
    CHECK(kinds(a5, "I") == V{"line", "line"});
    CHECK(kinds(a5, "II") == V{"line", "line"});
    CHECK(kinds(a5, "III") == V{"point"});
    CHECK(kinds(a4, "I") == V{"cusp"});
    CHECK(kinds(a4, "II") == V{"line"});
    CHECK(kinds(GammaType(Family::D, 6), "I") == V{"line", "line", "line"});
    CHECK(kinds(GammaType(Family::D, 6), "II") == V{"cusp"});
    CHECK(kinds(GammaType(Family::D, 7), "I") == V{"line", "line"});
    CHECK(kinds(GammaType(Family::D, 7), "II") == V{"line", "cusp"});
    CHECK(kinds(GammaType(Family::E6, 6), "I") == V{"cusp"});
    CHECK(kinds(GammaType(Family::E6, 6), "II") == V{"cusp"});
    CHECK(kinds(GammaType(Family::E7, 7), "I") == V{"line", "cusp"});
    CHECK(kinds(GammaType(Family::E8, 8), "I") == V{"cusp"});

    auto a5ii = fixed_locus(find_involution(a5, "II"));
    REQUIRE(a5ii.ideal_generators.size() == 1);
    CHECK(a5ii.ideal_generators[0] == xyz("z"));
    auto a5iii = fixed_locus(find_involution(a5, "III"));
    CHECK(a5iii.ideal_generators.size() == 3);
}

TEST_CASE("E8 fixed cusp x^5 + y^3 = 0 admits the parametrization (-t^6, t^10, 0)") {
    auto f = fixed_locus(find_involution(GammaType(Family::E8, 8), "I"));
    CHECK(f.curve == xyz("x^5 + y^3"));
    CHECK(f.curve.substitute(std::vector<Poly>{tp("-t^6"), tp("t^10"), tp("0")}).is_zero());
    // Not injective (t and -t agree), so it is rejected as a component parametrization.
    CHECK_THROWS(classify_parametrization({tp("-t^6"), tp("t^10"), tp("0")}));
    CHECK(classify_parametrization({tp("-t^3"), tp("t^5"), tp("0")}) == ComponentKind::Cusp);
    CHECK(classify_parametrization({tp("t"), tp("0"), tp("0")}) == ComponentKind::Line);
}

TEST_CASE("squarefreeness test") {
    CHECK(squarefree_binary(xyz("x^5 + y^3"), 0, 1));
    CHECK_FALSE(squarefree_binary(xyz("x^2*y"), 0, 1));
    CHECK(squarefree_binary(xyz("x*y"), 0, 1));
}
