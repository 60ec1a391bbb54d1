#include <doctest.h>

#include "kleinian/involutions.hpp"
#include "kleinian/quiver.hpp"
#include "kleinian/report.hpp"
#include "kleinian/resolution.hpp"

using namespace kln;

namespace {

using V = std::vector<long>;

V tail(const std::vector<long>& a) { return V(a.begin() + 1, a.end()); }

// Closed forms for the multiplicity vectors, written out independently of the solver.
std::optional<V> closed_form(const GammaType& g, const std::string& c) {
    int n = g.n;
    V a;
    switch (g.family) {
        case Family::A:
            if (c == "I") {
                for (int i = 1; i <= n; ++i) a.push_back(std::min(i, n + 1 - i));
                return a;
            }
            if (c == "II" && n % 2 == 0) return std::nullopt;  // non-principal
            return V(n, 1);
        case Family::D:
            if (n % 2 == 0) {
                if (c == "I") {
                    for (int i = 1; i <= n - 2; ++i) a.push_back(i + 1);
                    a.push_back(n / 2);
                    a.push_back(n / 2);
                } else {
                    for (int i = 1; i <= n - 2; ++i) a.push_back(i);
                    a.push_back((n - 2) / 2);
                    a.push_back((n - 2) / 2);
                }
            } else {
                if (c == "I") {
                    for (int i = 1; i <= n - 2; ++i) a.push_back(i);
                } else {
                    for (int i = 1; i <= n - 2; ++i) a.push_back(i + 1);
                }
                a.push_back((n - 1) / 2);
                a.push_back((n - 1) / 2);
            }
            return a;
        case Family::E6: return c == "I" ? V{2, 3, 2, 1, 2, 1} : V{3, 6, 4, 2, 4, 2};
        case Family::E7: return V{3, 6, 9, 7, 5, 3, 5};
        case Family::E8: return V{3, 6, 9, 12, 15, 10, 5, 8};
    }
    return std::nullopt;
}

int one_dimensional_components(const AntiPoissonInvolution& inv) {
    int k = 0;
    for (auto& c : fixed_locus(inv).components) k += c.kind != ComponentKind::Point;
    return k;
}

}  // namespace

TEST_CASE("Cartan data: symmetric, inverse exact, positive inverse, maximal roots") {
    for (auto& g : test_range()) {
        CAPTURE(g.name());
        DynkinData d = cartan(g);
        REQUIRE(d.n == g.n);
        for (int i = 0; i < d.n; ++i)
            for (int j = 0; j < d.n; ++j) {
                CHECK(d.cartan(i, j) == d.cartan(j, i));
                if (i == j) CHECK(d.cartan(i, j) == Cyclo(2));
                else CHECK((d.cartan(i, j).is_zero() || d.cartan(i, j) == Cyclo(-1)));
                CHECK(d.cartan_inverse(i, j).to_rational() > 0);
            }
        CHECK(d.cartan * d.cartan_inverse == Mat<Cyclo>::identity(d.n));
    }
    using I = std::vector<int>;
    auto d4 = cartan(GammaType(Family::D, 4)).max_root;
    CHECK(I(d4.begin() + 1, d4.end()) == I{1, 2, 1, 1});
    auto e8 = cartan(GammaType(Family::E8, 8)).max_root;
    CHECK(I(e8.begin() + 1, e8.end()) == I{2, 3, 4, 5, 6, 4, 2, 3});
    auto a7 = cartan(GammaType(Family::A, 7)).max_root;
    CHECK(I(a7.begin() + 1, a7.end()) == I(7, 1));
}

TEST_CASE("multiplicity solve") {
    auto e8 = cartan(GammaType(Family::E8, 8));
    std::vector<int> b(9, 0);
    b[8] = 1;
    auto m = solve_multiplicities(e8, b);
    CHECK(m.integral);
    std::vector<long> a;
    for (int i = 1; i <= 8; ++i) a.push_back(m.a[i].get_num().get_si());
    CHECK(a == V{3, 6, 9, 12, 15, 10, 5, 8});
    for (int n = 1; n <= 11; n += 2) {
        auto d = cartan(GammaType(Family::A, n));
        std::vector<int> bb(n + 1, 0);
        bb[(n + 1) / 2] = 2;
        auto s = solve_multiplicities(d, bb);
        for (int i = 1; i <= n; ++i) CHECK(s.a[i] == std::min(i, n + 1 - i));
    }
    auto zero = solve_multiplicities(e8, std::vector<int>(9, 0));
    for (int i = 1; i <= 8; ++i) CHECK(zero.a[i] == 0);
    std::vector<int> odd(9, 0);
    odd[1] = 1;
    CHECK(solve_multiplicities(cartan(GammaType(Family::A, 8)), odd).integral == false);
}

TEST_CASE("propagate_fixed examples") {
    auto e7 = cartan(GammaType(Family::E7, 7));
    std::vector<int> id(8);
    for (int i = 0; i < 8; ++i) id[i] = i;
    auto c = propagate_fixed(e7, id, 2);
    for (int i : {1, 3, 5}) CHECK(c.status[i] == ComponentStatus::PointwiseFixed);
    for (int i : {2, 4, 6, 7}) CHECK(c.status[i] == ComponentStatus::TwoFixedPoints);
    CHECK(c.isolated_on[6] == 1);
    CHECK(c.isolated_on[7] == 1);

    for (int n = 6; n <= 10; n += 2) {
        auto d = cartan(GammaType(Family::D, n));
        std::vector<int> p(n + 1);
        for (int i = 0; i <= n; ++i) p[i] = i;
        std::swap(p[n - 1], p[n]);
        auto cfg = propagate_fixed(d, p, 1);
        CHECK(cfg.isolated_on[n - 2] == 1);
        CHECK(cfg.status[n - 1] == ComponentStatus::Swapped);
    }
    for (int n = 1; n <= 11; n += 2) {
        auto d = cartan(GammaType(Family::A, n));
        std::vector<int> p(n + 1);
        for (int i = 1; i <= n; ++i) p[i] = n + 1 - i;
        auto cfg = propagate_fixed(d, p, 2);
        CHECK(cfg.isolated_on[(n + 1) / 2] == 2);
    }
    // No consistent assignment: identity on A_2 with a single isolated point off any swap.
    std::vector<int> a2id{0, 1, 2};
    CHECK_THROWS_AS(propagate_fixed(cartan(GammaType(Family::A, 2)), a2id, 5), ConfigurationError);
}

TEST_CASE("divisor descriptions match the closed forms over the whole range") {
    for (auto& g : test_range()) {
        DynkinData d = cartan(g);
        for (auto& inv : involution_catalog(g)) {
            INFO(g.name(), " ", inv.case_label);
            PreimageDivisor div = divisor_description(g, inv.case_label);
            auto want = closed_form(g, inv.case_label);
            if (want) CHECK(tail(div.a) == *want);
            if (div.principal) {
                // C a = b exactly, all a_i >= 1, reduced iff all ones.
                for (int i = 1; i <= d.n; ++i) {
                    Cyclo row(0);
                    for (int k = 1; k <= d.n; ++k) row += d.cartan(i - 1, k - 1) * Cyclo(div.a[k]);
                    CHECK(row == Cyclo(div.b[i]));
                    CHECK(div.a[i] >= 1);
                }
                bool ones = std::all_of(div.a.begin() + 1, div.a.end(), [](long x) { return x == 1; });
                REQUIRE(div.reduced.has_value());
                CHECK(*div.reduced == ones);
            }
            // Isolated points equal the number of one-dimensional components of the fixed locus.
            CHECK(div.config.isolated_total() == one_dimensional_components(inv));
            // A component meeting at least three others in the configuration has multiplicity > 1.
            for (int i = 1; i <= d.n; ++i) {
                int meets = (int)d.adj[i].size();
                for (auto& at : div.config.attachments)
                    meets += (int)std::count(at.begin(), at.end(), i);
                if (meets >= 3 && div.principal) CHECK(div.a[i] > 1);
            }
        }
    }
}

TEST_CASE("divisor special cases") {
    auto a5iii = divisor_description(GammaType(Family::A, 5), "III");
    CHECK_FALSE(a5iii.principal);
    CHECK(a5iii.config.attachments.empty());
    CHECK(a5iii.reduced == std::optional<bool>(true));
    CHECK(tail(a5iii.a) == V(5, 1));

    auto a6ii = divisor_description(GammaType(Family::A, 6), "II");
    CHECK_FALSE(a6ii.principal);
    CHECK_FALSE(a6ii.reduced.has_value());
    CHECK(a6ii.generically_reduced);

    auto d6ii = divisor_description(GammaType(Family::D, 6), "II");
    REQUIRE(d6ii.config.attachments.size() == 1);
    CHECK(d6ii.config.attachments[0] == std::vector<int>{4});

    auto e6ii = divisor_description(GammaType(Family::E6, 6), "II");
    REQUIRE(e6ii.config.attachments.size() == 1);
    CHECK(e6ii.config.attachments[0] == std::vector<int>{2});

    auto d7i = divisor_description(GammaType(Family::D, 7), "I");
    REQUIRE(d7i.config.attachments.size() == 2);
    CHECK(d7i.config.attachments[0] == std::vector<int>{6});
    CHECK(d7i.config.attachments[1] == std::vector<int>{7});

    CHECK_THROWS_AS(divisor_description(GammaType(Family::A, 4), "III"), std::invalid_argument);
}

TEST_CASE("type A component statuses from the quiver lift agree with propagate_fixed") {
    for (int n = 1; n <= 9; ++n) {
        GammaType g(Family::A, n);
        auto s = build_setting(g);
        DynkinData d = cartan(g);
        for (auto& inv : involution_catalog(g)) {
            INFO(n, " ", inv.case_label);
            auto spec = lift_catalog(g, inv.case_label);
            auto from_lift = typeA_component_statuses(s, spec);
            PreimageDivisor div = divisor_description(g, inv.case_label);
            for (int i = 1; i <= n; ++i) CHECK(from_lift[i] == div.config.status[i]);
            if (n % 2 == 0 && inv.case_label == "II") continue;  // resolved by the lift itself
            std::vector<int> perm = diagram_involution(inv);
            try {
                auto cfg = propagate_fixed(d, perm, div.config.isolated_total());
                for (int i = 1; i <= n; ++i) CHECK(cfg.status[i] == from_lift[i]);
            } catch (const ConfigurationError& e) {
                // A odd III: the whole fiber is fixed, no strict transform.
                CHECK(inv.case_label == "III");
            }
        }
    }
}

TEST_CASE("chart oracle agrees with the Cartan solve for n <= 12") {
    Poly z = Poly::var(xyz_vars(), "z");
    Poly xmy = parse_poly("x - y", xyz_vars());
    for (int n = 1; n <= 12; ++n) {
        CAPTURE(n);
        auto cz = typeA_chart_pullback(n, z);
        for (int i = 1; i <= n; ++i) CHECK(cz.orders[i] == 1);
        auto cx = typeA_chart_pullback(n, Poly::var(xyz_vars(), "x"));
        for (int i = 1; i <= n; ++i) CHECK(cx.orders[i] == n + 1 - i);
        for (auto& inv : involution_catalog(GammaType(Family::A, n))) {
            PreimageDivisor div = divisor_description(GammaType(Family::A, n), inv.case_label);
            if (!div.principal) continue;
            auto c = typeA_chart_pullback(n, div.equation);
            CHECK(c.from_u == c.from_v);
            for (int i = 1; i <= n; ++i) CHECK(c.orders[i] == div.a[i]);
        }
        if (n % 2) {
            auto c = typeA_chart_pullback(n, xmy);
            for (int i = 1; i <= n; ++i) CHECK(c.orders[i] == std::min(i, n + 1 - i));
        }
    }
    auto five = typeA_chart_pullback(5, xmy);
    CHECK(std::vector<int>(five.orders.begin() + 1, five.orders.end()) == std::vector<int>{1, 2, 3, 2, 1});
    CHECK_THROWS(typeA_chart_pullback(3, parse_poly("x*y - z^4", xyz_vars())));
}

TEST_CASE("divisor JSON is stable and round-trips") {
    for (auto& g : test_range())
        for (auto& inv : involution_catalog(g)) {
            auto j = divisor_to_json(divisor_description(g, inv.case_label));
            auto text = j.dump();
            auto back = nlohmann::json::parse(text);
            CHECK(back == j);
            CHECK(back.dump() == text);
            CHECK(divisor_to_json(divisor_description(g, inv.case_label)).dump() == text);
        }
}

TEST_CASE("DOT output for E7") {
    auto dot = divisor_to_dot(divisor_description(GammaType(Family::E7, 7), "I"));
    int c_nodes = 0, l_nodes = 0;
    for (int i = 1; i <= 7; ++i) c_nodes += dot.find("  C" + std::to_string(i) + " [label") != std::string::npos;
    for (int j = 1; j <= 3; ++j) l_nodes += dot.find("  L" + std::to_string(j) + " [label") != std::string::npos;
    CHECK(c_nodes == 7);
    CHECK(l_nodes == 2);
    CHECK(dot.find("C1 [label=\"C1 (3)\", penwidth=2, color=red]") != std::string::npos);
}
