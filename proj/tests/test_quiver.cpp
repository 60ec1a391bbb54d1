#include <doctest.h>

#include <random>

#include "kleinian/quiver.hpp"
#include "kleinian/report.hpp"
#include "kleinian/resolution.hpp"

using namespace kln;

namespace {

bool mu_zero(const QuiverSetting& s, const ExactPoint& p) {
    for (auto& m : moment_map(s, p))
        if (!m.is_zero()) return false;
    return true;
}

const std::vector<GammaType>& sample_types() {
    static const std::vector<GammaType> v = {GammaType(Family::A, 1), GammaType(Family::A, 4), GammaType(Family::A, 5),
                                             GammaType(Family::D, 4), GammaType(Family::D, 5), GammaType(Family::D, 6),
                                             GammaType(Family::E6, 6), GammaType(Family::E7, 7), GammaType(Family::E8, 8)};
    return v;
}

}  // namespace

TEST_CASE("dimension vectors and the affine null vector") {
    using V = std::vector<int>;
    CHECK(build_setting(GammaType(Family::D, 4)).delta == V{1, 1, 2, 1, 1});
    CHECK(build_setting(GammaType(Family::D, 7)).delta == V{1, 1, 2, 2, 2, 2, 1, 1});
    CHECK(build_setting(GammaType(Family::E6, 6)).delta == V{1, 2, 3, 2, 1, 2, 1});
    CHECK(build_setting(GammaType(Family::E7, 7)).delta == V{1, 2, 3, 4, 3, 2, 1, 2});
    CHECK(build_setting(GammaType(Family::E8, 8)).delta == V{1, 2, 3, 4, 5, 6, 4, 2, 3});
    auto a1 = build_setting(GammaType(Family::A, 1));
    CHECK(a1.delta == V{1, 1});
    CHECK(a1.arrows.size() == 2);
    for (auto& g : test_range()) {
        auto s = build_setting(g);
        CAPTURE(g.name());
        CHECK(s.arrows.size() == (size_t)s.vertices() - (g.is_A() ? 0 : 1));
        // 2 delta_i = sum of delta over neighbours in the extended diagram.
        std::vector<int> nb(s.vertices(), 0);
        for (auto& a : s.arrows) {
            nb[a.head] += s.delta[a.tail];
            nb[a.tail] += s.delta[a.head];
        }
        for (int i = 0; i < s.vertices(); ++i) CHECK(nb[i] == 2 * s.delta[i]);
        DynkinData d = cartan(g);
        for (int i = 1; i <= g.n; ++i) CHECK(d.max_root[i] == s.delta[i]);
    }
}

TEST_CASE("moment map: zero point and GL(delta)-equivariance") {
    std::mt19937_64 rng(17);
    for (auto& g : sample_types()) {
        auto s = build_setting(g);
        CHECK(mu_zero(s, zero_point<Cyclo>(s)));
        for (int k = 0; k < 3; ++k) {
            ExactPoint p = random_exact_point(s, rng, 4);
            auto gg = random_gauge(s, rng);
            auto lhs = moment_map(s, gauge_act(s, gg, p));
            auto mu = moment_map(s, p);
            for (int i = 0; i < s.vertices(); ++i) CHECK(lhs[i] == gg[i] * mu[i] * mat_inverse(gg[i]));
        }
    }
}

TEST_CASE("symplectic form: antisymmetry and t^-2 scaling") {
    std::mt19937_64 rng(23);
    for (auto& g : sample_types()) {
        auto s = build_setting(g);
        for (int k = 0; k < 3; ++k) {
            ExactPoint p = random_exact_point(s, rng), q = random_exact_point(s, rng);
            CHECK(symplectic_pairing(s, p, p).is_zero());
            CHECK(symplectic_pairing(s, p, q) == -symplectic_pairing(s, q, p));
            Cyclo t = Cyclo::rational(k + 2, 3);
            CHECK(symplectic_pairing(s, scale_point(p, t), scale_point(q, t)) ==
                  t.pow(-2) * symplectic_pairing(s, p, q));
        }
    }
}

TEST_CASE("tabulated E7/E8 points: zero fibre, semistable, traces, gauge invariance under 20 gauges") {
    struct Want {
        GammaType g;
        int which;
        long x, y, z;
    };
    std::vector<Want> wants = {{GammaType(Family::E7, 7), 1, -8, 16, 64},
                               {GammaType(Family::E7, 7), 2, 4, -8, -32},
                               {GammaType(Family::E8, 8), 1, -32, 256, -4096},
                               {GammaType(Family::E8, 8), 2, -8, -32, -256}};
    std::mt19937_64 rng(31);
    for (auto& w : wants) {
        auto s = build_setting(w.g);
        ExactPoint p = tabulated_point(s, w.which);
        INFO(w.g.name(), " ", w.which);
        CHECK(mu_zero(s, p));
        CHECK(is_semistable(s, p));
        CHECK(exceptional_membership(s, p).empty());
        auto t = trace_generators(s, p);
        CHECK(t.x == Cyclo(w.x));
        CHECK(t.y == Cyclo(w.y));
        CHECK(t.z == Cyclo(w.z));
        for (auto& id : trace_identities(s, p)) CHECK(id.residual.is_zero());
        for (int k = 0; k < 20; ++k) {
            auto q = gauge_act(s, random_gauge(s, rng), p);
            auto tq = trace_generators(s, q);
            CHECK(tq.x == t.x);
            CHECK(tq.y == t.y);
            CHECK(tq.z == t.z);
            CHECK(mu_zero(s, q));
        }
    }
}

TEST_CASE("E7 lift sends the first tabulated point to traces (-8, 16, -64)") {
    auto s = build_setting(GammaType(Family::E7, 7));
    auto q = apply_lift(s, lift_catalog(s.gamma, "I"), tabulated_point(s, 1));
    auto t = trace_generators(s, q);
    CHECK(t.x == Cyclo(-8));
    CHECK(t.y == Cyclo(16));
    CHECK(t.z == Cyclo(-64));
}

TEST_CASE("type A family at 24 values of t") {
    for (int n : {1, 2, 3, 6, 11}) {
        auto s = build_setting(GammaType(Family::A, n));
        for (int k = 1; k <= 24; ++k) {
            Cyclo t = Cyclo::rational(k % 2 ? k : -k, 7);
            ExactPoint p = typeA_family_point(s, t);
            CHECK(mu_zero(s, p));
            CHECK(is_semistable(s, p));
            CHECK(exceptional_membership(s, p).empty());
            auto tr = trace_generators(s, p);
            CHECK(tr.x == Cyclo(1));
            CHECK(tr.y == t.pow(n + 1));
            CHECK(tr.z == t);
            CHECK(tr.x * tr.y == tr.z.pow(n + 1));
            for (auto& id : trace_identities(s, p)) CHECK(id.residual.is_zero());
        }
    }
}

TEST_CASE("type A component points lie on C_i") {
    for (int n = 1; n <= 6; ++n) {
        auto s = build_setting(GammaType(Family::A, n));
        for (int i = 1; i <= n; ++i) {
            ExactPoint p = typeA_component_point(s, i, Cyclo(3));
            CHECK(mu_zero(s, p));
            CHECK(is_semistable(s, p));
            CHECK(exceptional_membership(s, p) == std::vector<int>{i});
        }
    }
}

TEST_CASE("semistability oracle") {
    auto s = build_setting(GammaType(Family::D, 5));
    ExactPoint p = zero_point<Cyclo>(s);
    p.l0(0, 0) = Cyclo(1);
    CHECK_FALSE(is_semistable(s, p));
    CHECK_THROWS_AS(exceptional_membership(s, p), std::invalid_argument);
}

TEST_CASE("lifts: involutive, anti-symplectic, mu anti-equivariant on random points") {
    std::mt19937_64 rng(41);
    for (auto& g : test_range()) {
        auto s = build_setting(g);
        std::vector<ExactPoint> pts;
        for (int k = 0; k < 3; ++k) pts.push_back(random_exact_point(s, rng, 3));
        for (auto& spec : lift_catalog(g)) {
            INFO(g.name(), " ", spec.case_label);
            CHECK(spec.symplectic_sign() == -1);
            auto r = verify_lift(spec, s, pts);
            CHECK(r.moment_relation);
            CHECK(r.symplectic_relation);
            CHECK(r.involutive);
            CHECK(r.parity);
            if (spec.square_gauge.empty())
                for (auto& p : pts) CHECK(points_equal(apply_lift(s, spec, apply_lift(s, spec, p)), p));
        }
    }
}

TEST_CASE("type A lifts transform traces by theta on zero-fibre points") {
    for (int n = 1; n <= 8; ++n) {
        auto s = build_setting(GammaType(Family::A, n));
        std::vector<ExactPoint> pts;
        for (int k = 1; k <= 4; ++k) pts.push_back(typeA_family_point(s, Cyclo::rational(k + 1, k)));
        for (int i = 1; i <= n; ++i) pts.push_back(typeA_component_point(s, i, Cyclo(i + 2)));
        for (auto& spec : lift_catalog(s.gamma)) {
            auto r = verify_lift(spec, s, pts);
            INFO(n, " ", spec.case_label);
            CHECK(r.ok());
            CHECK(r.trace_samples == (int)pts.size());
        }
    }
}

TEST_CASE("identity lift is symplectic and trivially consistent") {
    std::mt19937_64 rng(3);
    auto s = build_setting(GammaType(Family::D, 6));
    std::vector<ExactPoint> pts{random_exact_point(s, rng), random_exact_point(s, rng)};
    auto id = identity_lift(s.gamma);
    CHECK(id.symplectic_sign() == 1);
    CHECK(verify_lift(id, s, pts).ok());
}

TEST_CASE("lift catalog structure") {
    auto e6 = lift_catalog(GammaType(Family::E6, 6), "II");
    CHECK(e6.tau[3] == 5);
    CHECK(e6.tau[4] == 6);
    CHECK(e6.twist_B == Cyclo(-1));
    CHECK(e6.framing_sign == -1);
    auto a3 = lift_catalog(GammaType(Family::A, 3), "III");
    CHECK(a3.twist_B.pow(8) == Cyclo(1));
    CHECK(a3.twist_B * a3.twist_Bs == Cyclo(-1));
    CHECK_THROWS_AS(lift_catalog(GammaType(Family::E7, 7), "II"), std::invalid_argument);
}

TEST_CASE("point JSON round trip") {
    std::mt19937_64 rng(8);
    for (auto& g : sample_types()) {
        auto s = build_setting(g);
        ExactPoint p = random_exact_point(s, rng);
        p.B[0](0, 0) = Cyclo::rational(-7, 3);
        CHECK(points_equal(exact_point_from_json(s, point_to_json(s, p)), p));
        FloatPoint f = to_float(p);
        CHECK(points_equal(float_point_from_json(s, point_to_json(s, f)), f, 1e-15));
    }
    auto e7 = build_setting(GammaType(Family::E7, 7));
    auto j = point_to_json(e7, tabulated_point(e7, 2));
    CHECK(points_equal(exact_point_from_json(e7, nlohmann::json::parse(j.dump())), tabulated_point(e7, 2)));
    CHECK_THROWS(exact_point_from_json(build_setting(GammaType(Family::E8, 8)), j));
}
