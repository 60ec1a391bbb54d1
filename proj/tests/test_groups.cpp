#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "kleinian/groups.hpp"
#include "kleinian/involutions.hpp"
#include "kleinian/presentation.hpp"
#include "kleinian/report.hpp"

using namespace kln;

namespace {
Poly uvp(const char* s) { return parse_poly(s, uv_vars()); }
Poly xyz(const char* s) { return parse_poly(s, xyz_vars()); }
}  // namespace

TEST_CASE("group orders over the whole test range") {
    for (auto& g : test_range()) {
        int expected = g.is_A() ? g.n + 1 : g.is_D() ? 4 * (g.n - 2) : g.family == Family::E6 ? 24 : g.family == Family::E7 ? 48 : 120;
        CAPTURE(g.name());
        CHECK(g.order() == expected);
        CHECK((int)group_elements(g).size() == expected);
    }
}

TEST_CASE("group closure, inverses and determinant") {
    for (auto& g : {GammaType(Family::A, 5), GammaType(Family::D, 7), GammaType(Family::E6, 6), GammaType(Family::E8, 8)}) {
        auto el = group_elements(g);
        CAPTURE(g.name());
        for (auto& a : el) {
            CHECK(a.det() == Cyclo(1));
            CHECK(contains(el, a.inverse(), g.order()));
        }
        for (size_t i = 0; i < el.size(); i += 7)
            for (size_t j = 0; j < el.size(); j += 5) CHECK(contains(el, el[i] * el[j], g.order()));
    }
    auto a3 = group_elements(GammaType(Family::A, 3));
    for (auto& a : a3) CHECK((a.b.is_zero() && a.c.is_zero()));
}

TEST_CASE("listed E8 generators do not close up to the binary icosahedral group") {
    auto gens = printed_generators(GammaType(Family::E8, 8));
    CHECK_THROWS(closure(gens, 120, 1200));
}

TEST_CASE("group_act is an action and an algebra automorphism") {
    std::mt19937_64 rng(5);
    GammaType g(Family::E7, 7);
    auto el = group_elements(g);
    for (int k = 0; k < 10; ++k) {
        const SL2& a = el[(size_t)k * 3 % el.size()];
        const SL2& b = el[(size_t)k * 7 % el.size()];
        Poly f = test::random_poly(rng, uv_vars(), 4), h = test::random_poly(rng, uv_vars(), 3);
        CHECK(group_act(a * b, f) == group_act(a, group_act(b, f)));
        CHECK(group_act(a, f * h) == group_act(a, f) * group_act(a, h));
    }
    CHECK(group_act(SL2{}, uvp("u^2*v + 3*v")) == uvp("u^2*v + 3*v"));
}

TEST_CASE("working invariants: invariance, degrees, relation; verbatim table reported") {
    for (auto& g : test_range()) {
        CAPTURE(g.name());
        const auto& p = presentation(g);
        for (int k = 0; k < 3; ++k) {
            for (auto& gen : group_generators(g)) CHECK(group_act(gen, p.work.f[k]) == p.work.f[k]);
            auto d = p.work.f[k].weighted_degrees({1, 1, 1});
            REQUIRE(d.size() == 1);
            CHECK(d[0] == p.work.degrees[k]);
        }
        CHECK(pullback(p, p.work_relation).is_zero());
        auto r = verify_presentation(g);
        if (g.is_A() || g.is_D()) CHECK(r.ok());
    }
}

TEST_CASE("listed relations for A, D and the E7 relation text") {
    CHECK(presentation(GammaType(Family::A, 2)).relation == xyz("x*y - z^3"));
    auto d5 = presentation(GammaType(Family::D, 5)).relation;
    CHECK((d5 == xyz("x*y^2 - z^2 + x^2*z") || d5 == xyz("-x*y^2 + z^2 - x^2*z")));
    CHECK(presentation(GammaType(Family::E7, 7)).relation == xyz("x^3*y + y^3 + z^2"));
}

TEST_CASE("Reynolds operator is a projection onto invariants") {
    std::mt19937_64 rng(99);
    for (auto& g : {GammaType(Family::A, 1), GammaType(Family::A, 4), GammaType(Family::D, 4), GammaType(Family::D, 5),
                    GammaType(Family::E6, 6), GammaType(Family::E7, 7), GammaType(Family::E8, 8)}) {
        CAPTURE(g.name());
        const auto& p = presentation(g);
        auto gens = group_generators(g);
        for (int k = 0; k < 50; ++k) {
            Poly f = test::random_poly(rng, uv_vars(), 6, 3);
            Poly r = reynolds(p, f);
            CHECK(reynolds(p, r) == r);
            for (auto& s : gens) CHECK(group_act(s, r) == r);
        }
    }
    const auto& a1 = presentation(GammaType(Family::A, 1));
    CHECK(reynolds(a1, uvp("u^2")) == uvp("u^2"));
    CHECK(reynolds(a1, uvp("u^3")).is_zero());
    CHECK(reynolds(presentation(GammaType(Family::A, 6)), uvp("u*v")) == uvp("u*v"));
}

TEST_CASE("invariant bases") {
    CHECK(invariant_basis(presentation(GammaType(Family::D, 6)), 4).size() == 1);
    CHECK(invariant_basis(presentation(GammaType(Family::E6, 6)), 6).size() == 1);
    for (auto& g : test_range()) {
        if (g.is_A() && g.n == 1) continue;
        CHECK(invariant_basis(presentation(g), 1).empty());
    }
    for (auto& g : {GammaType(Family::D, 5), GammaType(Family::E6, 6), GammaType(Family::E7, 7)})
        for (int d = 2; d <= 12; d += 2)
            CHECK(invariant_basis(presentation(g), d).size() == invariant_basis_reynolds(presentation(g), d).size());
}

TEST_CASE("working bracket tables reproduce the computed brackets") {
    for (auto& g : test_range()) {
        CAPTURE(g.name());
        const auto& p = presentation(g);
        auto br = [&](int i, int j) { return poisson_bracket_uv(p.work.f[i], p.work.f[j]); };
        CHECK(pullback(p, p.work_brackets.xy) == br(0, 1));
        CHECK(pullback(p, p.work_brackets.xz) == br(0, 2));
        CHECK(pullback(p, p.work_brackets.yz) == br(1, 2));
    }
    CHECK(presentation(GammaType(Family::A, 1)).work_brackets.xz == xyz("2*x"));
    CHECK(presentation(GammaType(Family::A, 4)).work_brackets.xy == xyz("25*z^4"));
    CHECK(presentation(GammaType(Family::D, 6)).work_brackets.xy == xyz("16*z"));
}

TEST_CASE("printed bracket table: A and D even verbatim; known discrepancies elsewhere") {
    for (auto& g : test_range()) {
        CAPTURE(g.name());
        auto r = bracket_table(g);
        if (g.is_A() || (g.is_D() && g.n % 2 == 0)) CHECK(r.ok());
    }
    // The E6 coefficient 431 is inconsistent with the listed invariants; the exact value is 433.
    auto e6 = bracket_table(GammaType(Family::E6, 6));
    CHECK(e6.entries[2].printed == xyz("4*x*(431*x^2 - 2*z)"));
    CHECK_FALSE(e6.entries[2].match);
    CHECK(e6.entries[2].working == xyz("4*x*(433*x^2 + 2*z)"));
}

TEST_CASE("det -1 normalizer elements twist the bracket by det") {
    std::mt19937_64 rng(3);
    for (auto& g : test_range()) {
        for (auto& inv : involution_catalog(g)) {
            if (!inv.realizing_matrix) continue;
            const SL2& m = *inv.realizing_matrix;
            INFO(g.name(), " ", inv.case_label);
            CHECK(m.det() == Cyclo(-1));
            Poly f1 = test::random_poly(rng, uv_vars(), 4), f2 = test::random_poly(rng, uv_vars(), 4);
            CHECK(poisson_bracket_uv(group_act(m, f1), group_act(m, f2)) == m.det() * group_act(m, poisson_bracket_uv(f1, f2)));
        }
    }
}

TEST_CASE("coordinate changes to the classical relations") {
    for (auto& g : {GammaType(Family::D, 4), GammaType(Family::D, 5), GammaType(Family::D, 6), GammaType(Family::E6, 6)}) {
        CAPTURE(g.name());
        CHECK(coordinate_change(g).verified);
    }
}
