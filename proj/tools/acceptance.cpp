#include <chrono>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kleinian/adhm.hpp"
#include "kleinian/involutions.hpp"
#include "kleinian/presentation.hpp"
#include "kleinian/quiver.hpp"
#include "kleinian/report.hpp"
#include "kleinian/resolution.hpp"

using namespace kln;

namespace {

// Pinned tolerances and budgets.
constexpr double kGroupSeconds = 5.0;
constexpr double kResidualTol = 1e-10;
constexpr double kIdentityTol = 1e-8;
constexpr int kSeeds = 20;
constexpr int kQuota = 10;
constexpr double kNumericSeconds = 600.0;
constexpr double kJacobianTol = 1e-6;
constexpr int kBracketTriples = 100;
constexpr int kGauges = 20;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;
    void fail(const std::string& why) {
        pass = false;
        notes.push_back(why);
    }
    void note(const std::string& s) { notes.push_back(s); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class T>
std::string join(const std::vector<T>& v, const char* sep = ",") {
    std::ostringstream o;
    for (size_t i = 0; i < v.size(); ++i) o << (i ? sep : "") << v[i];
    return o.str();
}

Poly xyz(const std::string& s) { return parse_poly(s, xyz_vars()); }

Outcome c1_group_orders() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    for (auto& g : test_range()) {
        int want = g.is_A() ? g.n + 1 : g.is_D() ? 4 * (g.n - 2) : g.family == Family::E6 ? 24 : g.family == Family::E7 ? 48 : 120;
        int got = (int)group_elements(g).size();
        if (got != want) o.fail(g.name() + " has " + std::to_string(got) + " elements, expected " + std::to_string(want));
    }
    double s = seconds_since(t0);
    if (s >= kGroupSeconds) o.fail("took " + std::to_string(s) + " s");
    o.note("22 types in " + std::to_string(s).substr(0, 5) + " s");
    return o;
}

Outcome c2_presentation() {
    Outcome o;
    std::vector<std::string> working_bad;
    for (auto& g : test_range()) {
        auto r = verify_presentation(g);
        if (!r.ok()) {
            std::string why;
            if (!(r.invariant[0] && r.invariant[1] && r.invariant[2])) why += " non-invariant";
            if (!(r.homogeneous[0] && r.homogeneous[1] && r.homogeneous[2])) why += " inhomogeneous";
            if (!r.relation_holds) why += " relation fails";
            if (!r.spans) why += " does not span";
            o.fail(g.name() + " listed data:" + why);
        }
        const auto& p = presentation(g);
        if (!pullback(p, p.work_relation).is_zero()) working_bad.push_back(g.name());
    }
    if (working_bad.empty()) o.note("corrected presentations verify for all 22 types");
    else o.fail("corrected presentation fails for " + join(working_bad));
    return o;
}

Outcome c3_brackets() {
    Outcome o;
    for (auto& g : test_range()) {
        auto r = bracket_table(g);
        for (auto& e : r.entries)
            if (!e.match)
                o.fail(g.name() + " " + e.pair + ": listed " + e.printed.str() + ", computed " +
                       (e.representable ? e.computed.str() : std::string("n/a (listed invariants not invariant)")));
    }
    auto e6 = bracket_table(GammaType(Family::E6, 6));
    bool listed = e6.entries[0].printed == xyz("-4*(2*z + x^2)") && e6.entries[1].printed == xyz("-12*y^2") &&
                  e6.entries[2].printed == xyz("4*x*(431*x^2 - 2*z)");
    if (!listed) o.fail("E6 listed coefficients not transcribed");
    return o;
}

Outcome c4_involutions() {
    Outcome o;
    int cases = 0;
    for (auto& g : test_range())
        for (auto& inv : involution_catalog(g)) {
            ++cases;
            auto r = verify_involution(inv);
            std::string tag = g.name() + " " + inv.case_label;
            if (!r.graded) o.fail(tag + " not graded");
            if (!r.involutive) o.fail(tag + " not involutive");
            if (!r.relation_preserved) o.fail(tag + " relation not preserved");
            if (!r.anti_poisson) o.fail(tag + " not anti-Poisson");
            if (!inv.realizing_matrix) o.fail(tag + " has no matrix");
            else if (!realize_by_matrix(inv).ok()) o.fail(tag + " matrix does not realize it");
        }
    o.note(std::to_string(cases) + " catalog entries");
    return o;
}

std::vector<std::string> expected_kinds(const GammaType& g, const std::string& c) {
    using V = std::vector<std::string>;
    if (g.is_A()) {
        if (g.n % 2) return c == "III" ? V{"point"} : V{"line", "line"};
        return c == "I" ? (g.n == 0 ? V{} : V{"cusp"}) : V{"line"};
    }
    if (g.is_D()) {
        if (g.n % 2 == 0) return c == "I" ? V{"line", "line", "line"} : V{"cusp"};
        return c == "I" ? V{"line", "line"} : V{"line", "cusp"};
    }
    if (g.family == Family::E7) return {"line", "cusp"};
    return {"cusp"};
}

Outcome c5_fixed_loci() {
    Outcome o;
    for (auto& g : test_range())
        for (auto& inv : involution_catalog(g)) {
            std::string tag = g.name() + " " + inv.case_label;
            auto f = fixed_locus(inv);
            std::vector<std::string> kinds;
            for (auto& c : f.components) kinds.push_back(kind_name(c.kind));
            auto want = expected_kinds(g, inv.case_label);
            // A_2 case I: x^2 - z^3 is a cusp; A_n even case I in general is the curve x^2 = z^(n+1).
            if (kinds != want) o.fail(tag + " kinds " + join(kinds) + ", expected " + join(want));
            if (!f.reduced) o.fail(tag + " not reduced");
            if (!f.parametrizations_vanish) o.fail(tag + " parametrization certificate");
            if (!f.factorization_holds) o.fail(tag + " factorization certificate");
        }
    // Spot ideals.
    auto ideal = [](const GammaType& g, const char* c) { return fixed_locus(find_involution(g, c)).ideal_generators; };
    auto a5i = ideal(GammaType(Family::A, 5), "I"), a5ii = ideal(GammaType(Family::A, 5), "II"),
         a5iii = ideal(GammaType(Family::A, 5), "III");
    if (!(a5i.size() == 1 && (a5i[0] == xyz("x - y") || a5i[0] == xyz("y - x")))) o.fail("A5 I ideal");
    if (!(a5ii.size() == 1 && a5ii[0] == xyz("z"))) o.fail("A5 II ideal");
    if (a5iii.size() != 3) o.fail("A5 III ideal");
    auto e8 = fixed_locus(find_involution(GammaType(Family::E8, 8), "I"));
    if (!(e8.curve == xyz("x^5 + y^3"))) o.fail("E8 locus curve");
    return o;
}

Outcome c6_tabulated() {
    Outcome o;
    struct W {
        GammaType g;
        int which;
        long x, y, z;
    };
    for (auto& w : std::vector<W>{{GammaType(Family::E7, 7), 1, -8, 16, 64},
                                  {GammaType(Family::E7, 7), 2, 4, -8, -32},
                                  {GammaType(Family::E8, 8), 1, -32, 256, -4096},
                                  {GammaType(Family::E8, 8), 2, -8, -32, -256}}) {
        auto s = build_setting(w.g);
        auto p = tabulated_point(s, w.which);
        std::string tag = w.g.name() + " point " + std::to_string(w.which);
        for (auto& m : moment_map(s, p))
            if (!m.is_zero()) o.fail(tag + " mu != 0");
        auto t = trace_generators(s, p);
        if (!(t.x == Cyclo(w.x) && t.y == Cyclo(w.y) && t.z == Cyclo(w.z)))
            o.fail(tag + " traces " + t.x.str() + "," + t.y.str() + "," + t.z.str());
        Poly F = presentation(w.g).relation;
        if (!F.eval({t.x, t.y, t.z}).is_zero()) o.fail(tag + " F != 0");
        if (!is_semistable(s, p)) o.fail(tag + " not semistable");
    }
    return o;
}

Outcome c7_lifts() {
    Outcome o;
    int trace_checked = 0;
    for (auto& g : test_range()) {
        auto s = build_setting(g);
        std::mt19937_64 rng(1000 + g.n + 17 * (int)g.family);
        std::vector<ExactPoint> pts;
        for (int k = 0; k < 3; ++k) pts.push_back(random_exact_point(s, rng, 3));
        if (g.is_A()) {
            for (int k = 1; k <= 3; ++k) pts.push_back(typeA_family_point(s, Cyclo::rational(k + 1, k)));
            for (int i = 1; i <= g.n; ++i) pts.push_back(typeA_component_point(s, i, Cyclo(i + 1)));
        }
        if (g.family == Family::E7 || g.family == Family::E8)
            for (int w = 1; w <= 2; ++w) pts.push_back(tabulated_point(s, w));
        for (auto& spec : lift_catalog(g)) {
            std::string tag = g.name() + " " + spec.case_label;
            auto r = verify_lift(spec, s, pts);
            if (spec.symplectic_sign() != -1) o.fail(tag + " not anti-symplectic");
            if (!r.ok()) o.fail(tag + ": " + (r.failures.empty() ? "failed" : r.failures[0]));
            if (r.trace_samples > 0) ++trace_checked;
        }
    }
    o.note("trace transformation checked exactly for " + std::to_string(trace_checked) +
           " lifts (types A, E7, E8); D and E6 have no exact zero-fibre points and are covered numerically in 10");
    return o;
}

Outcome c8_multiplicities() {
    Outcome o;
    auto tail = [](const std::vector<long>& a) { return std::vector<long>(a.begin() + 1, a.end()); };
    for (auto& g : test_range()) {
        DynkinData d = cartan(g);
        for (auto& inv : involution_catalog(g)) {
            std::string tag = g.name() + " " + inv.case_label;
            PreimageDivisor div;
            try {
                div = divisor_description(g, inv.case_label);
            } catch (const std::exception& e) {
                o.fail(tag + ": " + e.what());
                continue;
            }
            int n = g.n;
            std::vector<long> want;
            const std::string& c = inv.case_label;
            if (g.is_A()) {
                for (int i = 1; i <= n; ++i) want.push_back(c == "I" ? std::min(i, n + 1 - i) : 1);
            } else if (g.is_D()) {
                bool even = n % 2 == 0;
                int shift = (even == (c == "I")) ? 1 : 0;
                for (int i = 1; i <= n - 2; ++i) want.push_back(i + shift);
                long tailv = even ? (c == "I" ? n / 2 : (n - 2) / 2) : (n - 1) / 2;
                want.push_back(tailv);
                want.push_back(tailv);
            } else if (g.family == Family::E6) {
                want = c == "I" ? std::vector<long>{2, 3, 2, 1, 2, 1} : std::vector<long>{3, 6, 4, 2, 4, 2};
            } else if (g.family == Family::E7) {
                want = {3, 6, 9, 7, 5, 3, 5};
            } else {
                want = {3, 6, 9, 12, 15, 10, 5, 8};
            }
            if (tail(div.a) != want) o.fail(tag + " a=" + join(tail(div.a)) + " expected " + join(want));
            if (div.principal) {
                auto m = solve_multiplicities(d, div.b);
                if (!m.integral) o.fail(tag + " C^-1 b not integral");
            }
        }
    }
    return o;
}

Outcome c9_charts() {
    Outcome o;
    for (int n = 1; n <= 12; ++n) {
        GammaType g(Family::A, n);
        auto cz = typeA_chart_pullback(n, xyz("z"));
        auto cxy = typeA_chart_pullback(n, xyz("x - y"));
        for (auto& inv : involution_catalog(g)) {
            PreimageDivisor div = divisor_description(g, inv.case_label);
            if (!div.principal) continue;
            const ChartOrders* c = nullptr;
            if (div.equation == xyz("z") || div.equation == xyz("-z")) c = &cz;
            if (div.equation == xyz("x - y") || div.equation == xyz("y - x")) c = &cxy;
            if (!c) continue;
            for (int i = 1; i <= n; ++i)
                if (c->orders[i] != div.a[i])
                    o.fail("A" + std::to_string(n) + " " + inv.case_label + " C" + std::to_string(i));
        }
        for (int i = 1; i <= n; ++i) {
            if (cz.orders[i] != 1) o.fail("div(z) on A" + std::to_string(n));
            if (cxy.orders[i] != std::min(i, n + 1 - i) && n % 2) o.fail("div(x-y) on A" + std::to_string(n));
        }
    }
    return o;
}

Outcome c10_numeric() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    for (auto& g : {GammaType(Family::D, 4), GammaType(Family::D, 5), GammaType(Family::D, 6), GammaType(Family::D, 7),
                    GammaType(Family::D, 8), GammaType(Family::E6, 6), GammaType(Family::E7, 7), GammaType(Family::E8, 8)}) {
        auto s = build_setting(g);
        int ok = 0;
        double worst = 0;
        for (int seed = 1; seed <= kSeeds; ++seed) {
            SolveOptions opts;
            opts.seed = (std::uint64_t)seed;
            opts.residual_tolerance = kResidualTol;
            opts.identity_tolerance = kIdentityTol;
            SolveResult r = solve_adhm(s, opts);
            if (!r.success() || r.residual > kResidualTol) continue;
            ++ok;
            for (auto& c : r.identities.checks) {
                worst = std::max(worst, c.residual / c.scale);
                if (c.residual > kIdentityTol * c.scale)
                    o.fail(g.name() + " seed " + std::to_string(seed) + " identity " + c.name);
            }
        }
        if (ok < kQuota) o.fail(g.name() + " converged " + std::to_string(ok) + "/" + std::to_string(kSeeds));
        std::ostringstream line;
        line << g.name() << " " << ok << "/" << kSeeds << " worst rel " << worst;
        o.note(line.str());
    }
    double secs = seconds_since(t0);
    if (secs > kNumericSeconds) o.fail("took " + std::to_string(secs) + " s");
    o.note("runtime " + std::to_string((int)secs) + " s");
    return o;
}

// {f,g} on C[x,y,z] from the corrected bracket table, compared after pullback to C[u,v].
Poly table_bracket(const KleinianPresentation& p, const Poly& f, const Poly& g) {
    const char* v[3] = {"x", "y", "z"};
    const Poly* tab[3][3] = {{nullptr, &p.work_brackets.xy, &p.work_brackets.xz},
                             {nullptr, nullptr, &p.work_brackets.yz},
                             {nullptr, nullptr, nullptr}};
    Poly out(xyz_vars());
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            out += (f.diff(v[a]) * g.diff(v[b]) - f.diff(v[b]) * g.diff(v[a])) * *tab[a][b];
    return out;
}

Poly random_xyz(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> e(0, 2), c(-3, 3);
    Poly f(xyz_vars());
    for (int k = 0; k < 3; ++k) f += Poly::monomial(xyz_vars(), {e(rng), e(rng), e(rng) % 2}, Cyclo(c(rng)));
    return f;
}

Outcome c11_properties() {
    Outcome o;
    std::mt19937_64 rng(4242);
    // Poisson structure of each type through its corrected table.
    int triples = 0;
    for (auto& g : {GammaType(Family::A, 3), GammaType(Family::D, 5), GammaType(Family::D, 6), GammaType(Family::E6, 6),
                    GammaType(Family::E7, 7)}) {
        const auto& p = presentation(g);
        for (int k = 0; k < kBracketTriples / 5; ++k, ++triples) {
            Poly f = random_xyz(rng), h = random_xyz(rng), q = random_xyz(rng);
            if (!(table_bracket(p, f, h) + table_bracket(p, h, f)).is_zero()) o.fail(g.name() + " antisymmetry");
            Poly leib = table_bracket(p, f, h * q) - table_bracket(p, f, h) * q - h * table_bracket(p, f, q);
            if (!leib.is_zero()) o.fail(g.name() + " Leibniz");
            Poly jac = table_bracket(p, f, table_bracket(p, h, q)) + table_bracket(p, h, table_bracket(p, q, f)) +
                       table_bracket(p, q, table_bracket(p, f, h));
            if (!pullback(p, jac).is_zero()) o.fail(g.name() + " Jacobi");
            if (!(pullback(p, table_bracket(p, f, h)) == poisson_bracket_uv(pullback(p, f), pullback(p, h))))
                o.fail(g.name() + " table disagrees with the bracket on C[u,v]");
        }
    }
    o.note(std::to_string(triples) + " exact triples");
    // Gauge invariance at the tabulated points.
    for (auto& g : {GammaType(Family::E7, 7), GammaType(Family::E8, 8)}) {
        auto s = build_setting(g);
        for (int w = 1; w <= 2; ++w) {
            auto p = tabulated_point(s, w);
            auto t = trace_generators(s, p);
            for (int k = 0; k < kGauges; ++k) {
                auto tq = trace_generators(s, gauge_act(s, random_gauge(s, rng), p));
                if (!(tq.x == t.x && tq.y == t.y && tq.z == t.z && tq.aux == t.aux))
                    o.fail(g.name() + " traces not gauge invariant");
            }
        }
    }
    // Jacobian against central differences.
    double worst = 0;
    std::normal_distribution<double> nd(0, 1);
    for (auto& g : {GammaType(Family::D, 4), GammaType(Family::D, 6), GammaType(Family::E6, 6), GammaType(Family::E7, 7),
                    GammaType(Family::E8, 8)}) {
        auto s = build_setting(g);
        int n = adhm_parameter_count(s);
        for (int k = 0; k < 10; ++k) {
            Eigen::VectorXd x(n), r, rp, rm;
            for (int i = 0; i < n; ++i) x[i] = nd(rng);
            Eigen::MatrixXd J, fd;
            adhm_residual(s, x, r, &J);
            fd.resize(r.size(), n);
            for (int i = 0; i < n; ++i) {
                Eigen::VectorXd xp = x, xm = x;
                xp[i] += 1e-6;
                xm[i] -= 1e-6;
                adhm_residual(s, xp, rp, nullptr);
                adhm_residual(s, xm, rm, nullptr);
                fd.col(i) = (rp - rm) / 2e-6;
            }
            worst = std::max(worst, (J - fd).norm() / std::max(1.0, J.norm()));
        }
    }
    if (worst > kJacobianTol) o.fail("Jacobian relative error " + std::to_string(worst));
    std::ostringstream line;
    line << "Jacobian worst relative error " << worst;
    o.note(line.str());
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria 1-11"};
    std::string expect;
    bool skip_numeric = false;
    app.add_option("--expect-fail", expect, "Comma-separated criteria expected to fail");
    app.add_flag("--skip-numeric", skip_numeric, "Skip criterion 10");
    CLI11_PARSE(app, argc, argv);

    std::set<int> expected;
    std::stringstream ss(expect);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) expected.insert(std::stoi(item));

    struct C {
        int id;
        const char* title;
        Outcome (*run)();
    };
    std::vector<C> criteria = {
        {1, "group orders", c1_group_orders},
        {2, "listed invariants and relations, verbatim", c2_presentation},
        {3, "listed bracket table, verbatim", c3_brackets},
        {4, "involution catalog and normalizer matrices", c4_involutions},
        {5, "fixed loci", c5_fixed_loci},
        {6, "tabulated E7/E8 points", c6_tabulated},
        {7, "lifts", c7_lifts},
        {8, "multiplicity vectors", c8_multiplicities},
        {9, "chart oracle vs Cartan solve", c9_charts},
        {10, "numeric ADHM suite", c10_numeric},
        {11, "property suites", c11_properties},
    };
    std::set<int> failed;
    for (auto& c : criteria) {
        if (c.id == 10 && skip_numeric) {
            std::cout << "criterion 10: SKIP  " << c.title << "\n";
            continue;
        }
        Outcome r = c.run();
        if (!r.pass) failed.insert(c.id);
        std::cout << "criterion " << c.id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << c.title << "\n";
        for (auto& n : r.notes) std::cout << "    " << n << "\n";
    }
    std::cout << "failed: " << (failed.empty() ? "none" : join(std::vector<int>(failed.begin(), failed.end()))) << "\n";
    if (skip_numeric) expected.erase(10);
    return failed == expected ? 0 : 1;
}
