#include <doctest.h>

#include <random>

#include "kleinian/adhm.hpp"
#include "kleinian/involutions.hpp"

using namespace kln;

namespace {

const std::vector<GammaType>& numeric_types() {
    static const std::vector<GammaType> v = {GammaType(Family::D, 4), GammaType(Family::D, 5), GammaType(Family::D, 6),
                                             GammaType(Family::D, 7), GammaType(Family::D, 8), GammaType(Family::E6, 6),
                                             GammaType(Family::E7, 7), GammaType(Family::E8, 8)};
    return v;
}

double mu_norm(const QuiverSetting& s, const FloatPoint& p) {
    double n2 = 0;
    for (auto& m : moment_map(s, p))
        for (auto& e : m.a) n2 += std::norm(e);
    return std::sqrt(n2);
}

}  // namespace

TEST_CASE("analytic Jacobian matches central differences at 10 points per type") {
    std::mt19937_64 rng(123);
    std::normal_distribution<double> g(0, 1);
    std::vector<GammaType> types = numeric_types();
    types.insert(types.begin(), {GammaType(Family::A, 1), GammaType(Family::A, 4)});
    for (auto& t : types) {
        auto s = build_setting(t);
        int n = adhm_parameter_count(s);
        for (int k = 0; k < 10; ++k) {
            Eigen::VectorXd x(n);
            for (int i = 0; i < n; ++i) x[i] = g(rng);
            Eigen::VectorXd r, rp, rm;
            Eigen::MatrixXd J;
            adhm_residual(s, x, r, &J);
            REQUIRE(r.size() == adhm_residual_count(s));
            Eigen::MatrixXd fd(r.size(), n);
            const double h = 1e-6;
            for (int i = 0; i < n; ++i) {
                Eigen::VectorXd xp = x, xm = x;
                xp[i] += h;
                xm[i] -= h;
                adhm_residual(s, xp, rp, nullptr);
                adhm_residual(s, xm, rm, nullptr);
                fd.col(i) = (rp - rm) / (2 * h);
            }
            double rel = (J - fd).norm() / std::max(1.0, J.norm());
            CAPTURE(t.name());
            CHECK(rel <= 1e-6);
        }
    }
}

TEST_CASE("pack and unpack are inverse and pin l0, k0") {
    auto s = build_setting(GammaType(Family::E6, 6));
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g(0, 1);
    Eigen::VectorXd x(adhm_parameter_count(s));
    for (int i = 0; i < x.size(); ++i) x[i] = g(rng);
    FloatPoint p = unpack_point(s, x);
    CHECK(p.l0(0, 0) == Complex(1, 0));
    CHECK(p.k0(0, 0) == Complex(0, 0));
    CHECK((pack_point(s, p) - x).norm() == 0);
    CHECK_THROWS(unpack_point(s, Eigen::VectorXd::Zero(3)));
}

TEST_CASE("type A solve lands on xy = z^(n+1)") {
    for (int n : {1, 2, 3, 5}) {
        auto s = build_setting(GammaType(Family::A, n));
        SolveOptions o;
        o.seed = 5;
        SolveResult r = solve_adhm(s, o);
        CAPTURE(n);
        REQUIRE(r.success());
        CHECK(r.residual <= o.residual_tolerance);
        CHECK(r.identities.ok());
        auto t = trace_generators(s, r.point);
        double scale = std::max({1.0, std::abs(t.x * t.y), std::pow(std::abs(t.z), n + 1)});
        CHECK(std::abs(t.x * t.y - std::pow(t.z, n + 1)) <= 1e-8 * scale);
    }
}

TEST_CASE("deterministic given the seed") {
    auto s = build_setting(GammaType(Family::D, 6));
    SolveOptions o;
    o.seed = 77;
    SolveResult a = solve_adhm(s, o), b = solve_adhm(s, o);
    CHECK(a.residual == b.residual);
    CHECK(a.iterations == b.iterations);
    CHECK((pack_point(s, a.point) - pack_point(s, b.point)).norm() == 0);
    o.seed = 78;
    SolveResult c = solve_adhm(s, o);
    CHECK((pack_point(s, a.point) - pack_point(s, c.point)).norm() > 0);
}

TEST_CASE("all-zero start is not accepted") {
    auto s = build_setting(GammaType(Family::D, 4));
    SolveOptions o;
    SolveResult r = solve_adhm_from(s, Eigen::VectorXd::Zero(adhm_parameter_count(s)), o);
    CHECK_FALSE(r.success());
}

TEST_CASE("converged points: identities, semistability and numeric lifts") {
    for (auto& t : numeric_types()) {
        auto s = build_setting(t);
        int good = 0;
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            SolveOptions o;
            o.seed = seed;
            SolveResult r = solve_adhm(s, o);
            if (!r.success()) continue;
            ++good;
            INFO(t.name(), " ", seed);
            CHECK(r.residual <= o.residual_tolerance);
            CHECK(is_semistable_float(s, r.point));
            CHECK(std::abs(mu_norm(s, r.point) - r.residual) <= 1e-12);
            for (auto& c : r.identities.checks) {
                CAPTURE(c.name);
                CHECK(c.residual <= o.identity_tolerance * c.scale);
            }
            for (auto& spec : lift_catalog(t)) {
                FloatPoint q = apply_lift(s, spec, r.point);
                auto mq = moment_map(s, q), mp = moment_map(s, r.point);
                double d2 = 0;
                for (int i = 0; i < s.vertices(); ++i) d2 += std::pow(((mq[i] + mp[spec.tau[i]]).max_abs()), 2);
                CHECK(std::sqrt(d2) <= 10 * o.residual_tolerance);
                auto rep = verify_lift(spec, s, std::vector<FloatPoint>{r.point}, 1e-7);
                CHECK(rep.trace_samples == 1);
                CHECK(rep.traces_match);
            }
        }
        CHECK(good >= 1);
    }
}

TEST_CASE("identity report JSON") {
    IdentityReport r;
    r.checks.push_back({"F(x,y,z)=0", 1e-12, 3.0, true});
    auto j = identity_report_json(r);
    CHECK(j.size() == 1);
    CHECK(j[0]["pass"] == true);
    CHECK(r.ok());
}
