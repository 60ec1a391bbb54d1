#include "kleinian/involutions.hpp"

#include <numeric>
#include <stdexcept>

namespace kln {

namespace {

Poly X(const std::string& s) { return parse_poly(s, xyz_vars()); }
Poly T(const std::string& s) { return parse_poly(s, t_vars()); }
std::string I(long v) { return std::to_string(v); }

SL2 diag(const Cyclo& a, const Cyclo& d) { return {a, Cyclo(0), Cyclo(0), d}; }

AntiPoissonInvolution make(const GammaType& g, const std::string& label, const std::string& x, const std::string& y,
                           const std::string& z, std::optional<SL2> m) {
    AntiPoissonInvolution inv;
    inv.gamma = g;
    inv.case_label = label;
    inv.images = {X(x), X(y), X(z)};
    inv.realizing_matrix = m;
    return inv;
}

bool proportional(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    auto it = a.terms().rbegin();
    Cyclo s = b.coeff(it->first) / it->second;
    return !s.is_zero() && a * s == b;
}

int key_order(const GammaType& g) { return std::lcm(g.big_conductor(), 8); }

}  // namespace

std::vector<AntiPoissonInvolution> involution_catalog(const GammaType& g) {
    int n = g.n;
    SL2 swap{Cyclo(0), Cyclo(1), Cyclo(1), Cyclo(0)};
    SL2 sign = diag(Cyclo(-1), Cyclo(1));
    std::vector<AntiPoissonInvolution> out;
    switch (g.family) {
        case Family::A:
            out.push_back(make(g, "I", "y", "x", "z", swap));
            if (n % 2 == 1) {
                out.push_back(make(g, "II", "x", "y", "-z", sign));
                Cyclo e = Cyclo::zeta(2 * n + 2);
                out.push_back(make(g, "III", "-x", "-y", "-z", diag(e, -e.inverse())));
            } else {
                out.push_back(make(g, "II", "-x", "y", "-z", sign));
            }
            break;
        case Family::D: {
            Cyclo e = Cyclo::zeta(4 * n - 8);
            SL2 twist = diag(e, -e.inverse());
            if (n % 2 == 0) {
                out.push_back(make(g, "I", "x", "y", "-z", sign));
                out.push_back(make(g, "II", "x", "x^" + I((n - 2) / 2) + " - y", "z", twist));
            } else {
                out.push_back(make(g, "I", "x", "-y", "z", twist));
                out.push_back(make(g, "II", "x", "y", "x^" + I((n - 1) / 2) + " - z", sign));
            }
            break;
        }
        case Family::E6: {
            Cyclo e8 = Cyclo::zeta(8);
            out.push_back(make(g, "I", "-x", "y", "z", sign));
            out.push_back(make(g, "II", "x", "y", "-z - x^2", diag(e8, -e8.inverse())));
            break;
        }
        case Family::E7: out.push_back(make(g, "I", "x", "y", "-z", sign)); break;
        case Family::E8: {
            Cyclo i = Cyclo::zeta(4);
            out.push_back(make(g, "I", "x", "y", "-z", diag(i, i)));
            break;
        }
    }
    return out;
}

AntiPoissonInvolution find_involution(const GammaType& g, const std::string& label) {
    for (auto& inv : involution_catalog(g))
        if (inv.case_label == label) return inv;
    throw std::invalid_argument("unknown case " + label + " for type " + g.name());
}

Poly apply_theta(const AntiPoissonInvolution& inv, const Poly& f) {
    return f.substitute(std::vector<Poly>{inv.images[0], inv.images[1], inv.images[2]});
}

InvolutionReport verify_involution(const AntiPoissonInvolution& inv) {
    const auto& p = presentation(inv.gamma);
    InvolutionReport r;
    Poly vars[3] = {X("x"), X("y"), X("z")};

    r.relation_preserved = pullback(p, apply_theta(inv, p.work_relation)).is_zero();
    if (!r.relation_preserved) r.failures.push_back("relation not preserved");
    r.listed_relation_fixed = proportional(apply_theta(inv, p.relation), p.relation);

    r.involutive = true;
    for (int i = 0; i < 3; ++i)
        if (apply_theta(inv, inv.images[i]) != vars[i]) r.involutive = false;
    if (!r.involutive) r.failures.push_back("theta^2 != id");

    r.graded = true;
    for (int i = 0; i < 3; ++i) {
        auto ds = inv.images[i].weighted_degrees(p.work.degrees);
        if (ds.size() != 1 || ds[0] != p.work.degrees[i]) r.graded = false;
    }
    if (!r.graded) r.failures.push_back("grading not preserved");

    std::array<Poly, 3> img;
    for (int i = 0; i < 3; ++i) img[i] = pullback(p, inv.images[i]);
    const Poly* table[3] = {&p.work_brackets.xy, &p.work_brackets.xz, &p.work_brackets.yz};
    std::pair<int, int> pairs[3] = {{0, 1}, {0, 2}, {1, 2}};
    r.anti_poisson = true;
    for (int k = 0; k < 3; ++k) {
        Poly lhs = pullback(p, apply_theta(inv, *table[k]));
        Poly rhs = -poisson_bracket_uv(img[pairs[k].first], img[pairs[k].second]);
        if (lhs != rhs) {
            r.anti_poisson = false;
            r.failures.push_back("anti-Poisson fails on pair " + I(k));
        }
    }
    return r;
}

MatrixReport realize_by_matrix(const AntiPoissonInvolution& inv) {
    if (!inv.realizing_matrix) throw std::invalid_argument("no listed matrix for this case");
    const auto& p = presentation(inv.gamma);
    MatrixReport r;
    r.matrix = *inv.realizing_matrix;
    int ord = key_order(inv.gamma);
    r.det_minus_one = r.matrix.det() == Cyclo(-1);
    r.normalizes = normalizes(r.matrix, p.group, ord);
    r.square_in_group = contains(p.group, r.matrix * r.matrix, ord);
    r.induces_images = true;
    for (int i = 0; i < 3; ++i)
        if (group_act(r.matrix, p.work.f[i]) != pullback(p, inv.images[i])) r.induces_images = false;
    return r;
}

std::vector<int> diagram_involution(const AntiPoissonInvolution& inv) {
    int n = inv.gamma.n;
    std::vector<int> perm(n + 1);
    std::iota(perm.begin(), perm.end(), 0);
    const std::string& c = inv.case_label;
    switch (inv.gamma.family) {
        case Family::A:
            if (c == "I")
                for (int i = 1; i <= n; ++i) perm[i] = n + 1 - i;
            break;
        case Family::D:
            if ((n % 2 == 0 && c == "II") || (n % 2 == 1 && c == "II")) std::swap(perm[n - 1], perm[n]);
            break;
        case Family::E6:
            if (c == "II") {
                std::swap(perm[3], perm[5]);
                std::swap(perm[4], perm[6]);
            }
            break;
        default: break;
    }
    return perm;
}

std::string kind_name(ComponentKind k) {
    switch (k) {
        case ComponentKind::Point: return "point";
        case ComponentKind::Line: return "line";
        case ComponentKind::Cusp: return "cusp";
    }
    return "?";
}

ComponentKind classify_parametrization(const std::array<Poly, 3>& p) {
    std::vector<int> exps;
    for (auto& c : p) {
        if (c.is_zero()) continue;
        if (c.terms().size() != 1) throw std::invalid_argument("classify: parametrization is not monomial");
        exps.push_back(c.terms().begin()->first[0]);
    }
    bool moving = false;
    for (int e : exps)
        if (e > 0) moving = true;
    if (!moving) return ComponentKind::Point;
    int g = 0, mn = 1 << 30;
    for (int e : exps) {
        if (e == 0) continue;
        if (e == 1) return ComponentKind::Line;
        g = std::gcd(g, e);
        mn = std::min(mn, e);
    }
    if (g == 1 && mn > 1) return ComponentKind::Cusp;
    throw std::invalid_argument("classify: parametrization is not injective");
}

namespace {

using UPoly = std::vector<Cyclo>;

void trim(UPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

UPoly umod(UPoly a, const UPoly& b) {
    trim(a);
    Cyclo lead = b.back().inverse();
    while (a.size() >= b.size()) {
        Cyclo f = a.back() * lead;
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        trim(a);
    }
    return a;
}

UPoly ugcd(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly r = umod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace

bool squarefree_binary(const Poly& f, int a, int b) {
    if (f.is_zero()) return false;
    int beta = 1 << 30;
    UPoly g;
    for (auto& [e, c] : f.terms()) {
        for (int i = 0; i < 3; ++i)
            if (i != a && i != b && e[i]) throw std::invalid_argument("squarefree_binary: extra variable");
        beta = std::min(beta, e[b]);
        if ((int)g.size() <= e[a]) g.resize(e[a] + 1, Cyclo(0));
        g[e[a]] += c;
    }
    if (beta > 1) return false;
    trim(g);
    UPoly dg;
    for (size_t i = 1; i < g.size(); ++i) dg.push_back(g[i] * Cyclo((long)i));
    trim(dg);
    if (dg.empty()) return true;
    return ugcd(g, dg).size() <= 1;
}

namespace {

void normalize_generator(Poly& g) {
    // Leading printed coefficient becomes positive; rational content is cleared.
    mpz_class den = 1, num = 0;
    for (auto& [e, c] : g.terms()) {
        if (!c.is_rational()) return;
        mpq_class q = c.to_rational();
        den = lcm(den, mpz_class(q.get_den()));
    }
    for (auto& [e, c] : g.terms()) {
        mpq_class q = c.to_rational() * den;
        num = gcd(num, mpz_class(q.get_num()));
    }
    mpq_class s(den, num);
    s.canonicalize();
    // Sign: the lexicographically largest monomial gets a positive coefficient.
    auto lead = g.terms().begin();
    for (auto it = g.terms().begin(); it != g.terms().end(); ++it)
        if (it->first > lead->first) lead = it;
    if (lead->second.to_rational() < 0) s = -s;
    g *= Cyclo(s);
}

struct CaseComponent {
    std::string equation;
    std::array<std::string, 3> param;
};

std::vector<CaseComponent> case_components(const GammaType& g, const std::string& c) {
    int n = g.n;
    switch (g.family) {
        case Family::A:
            if (n % 2 == 1) {
                std::string m = I((n + 1) / 2);
                if (c == "I")
                    return {{"x - z^" + m, {"t^" + m, "t^" + m, "t"}}, {"x + z^" + m, {"-t^" + m, "-t^" + m, "t"}}};
                if (c == "II") return {{"y", {"t", "0", "0"}}, {"x", {"0", "t", "0"}}};
                return {{"0", {"0", "0", "0"}}};
            }
            if (c == "I") return {{"x^2 - z^" + I(n + 1), {"t^" + I(n + 1), "t^" + I(n + 1), "t^2"}}};
            return {{"0", {"0", "t", "0"}}};
        case Family::D:
            if (n % 2 == 0) {
                int k = (n - 2) / 2;
                if (c == "I")
                    return {{"y", {"t", "0", "0"}}, {"x", {"0", "t", "0"}}, {"y - x^" + I(k), {"t", "t^" + I(k), "0"}}};
                std::string sy = (k % 2 ? "-" : "") + std::string("1/2*t^") + I(2 * k);
                return {{"x^" + I(n - 1) + " + 4*z^2", {"-t^2", sy, "1/2*t^" + I(n - 1)}}};
            } else {
                int m = (n - 1) / 2;
                if (c == "I") return {{"z", {"t", "0", "0"}}, {"z - x^" + I(m), {"t", "0", "t^" + I(m)}}};
                std::string sz = (m % 2 ? "-" : "") + std::string("1/2*t^") + I(2 * m);
                return {{"x", {"0", "t", "0"}}, {"4*y^2 + x^" + I(n - 2), {"-t^2", "1/2*t^" + I(n - 2), sz}}};
            }
        case Family::E6:
            if (c == "I") return {{"z^2 + y^3", {"0", "-t^2", "t^3"}}};
            return {{"x^4 - 4*y^3", {"4*t^3", "4*t^4", "-8*t^6"}}};
        case Family::E7: return {{"y", {"t", "0", "0"}}, {"x^3 + y^2", {"-t^2", "t^3", "0"}}};
        case Family::E8: return {{"x^5 + y^3", {"-t^3", "t^5", "0"}}};
    }
    return {};
}

}  // namespace

FixedLocusDescription fixed_locus(const AntiPoissonInvolution& inv) {
    const auto& p = presentation(inv.gamma);
    FixedLocusDescription d;
    Poly vars[3] = {X("x"), X("y"), X("z")};
    for (int i = 0; i < 3; ++i) {
        Poly gi = inv.images[i] - vars[i];
        if (gi.is_zero()) continue;
        normalize_generator(gi);
        bool dup = false;
        for (auto& h : d.ideal_generators)
            if (h == gi) dup = true;
        if (!dup) d.ideal_generators.push_back(gi);
    }
    // Solve each generator for a variable it contains only linearly.
    std::vector<Poly> images{vars[0], vars[1], vars[2]};
    std::vector<bool> eliminated(3, false);
    for (auto& gi : d.ideal_generators) {
        for (int w = 2; w >= 0; --w) {
            if (eliminated[w]) continue;
            Exp lin{0, 0, 0};
            lin[w] = 1;
            Cyclo c = gi.coeff(lin);
            if (c.is_zero() || gi.degree_in(w) != 1) continue;
            bool only = true;
            for (auto& [e, v] : gi.terms())
                if (e[w] && e != lin) only = false;
            if (!only) continue;
            Poly rest = gi - Poly::monomial(xyz_vars(), lin, c);
            images[w] = -rest * c.inverse();
            eliminated[w] = true;
            break;
        }
    }
    for (int w = 0; w < 3; ++w)
        if (eliminated[w])
            for (int v = 0; v < 3; ++v)
                if (v != w) images[v] = images[v].substitute(images);
    for (int v = 0; v < 3; ++v)
        if (!eliminated[v]) d.surviving.push_back(xyz_vars()[v]);

    Poly restricted = p.relation.substitute(images);
    int left = (int)d.surviving.size();
    if (left == 2) {
        d.curve = restricted;
        int a = d.surviving[0] == "x" ? 0 : 1;
        int b = d.surviving[1] == "y" ? 1 : 2;
        d.reduced = squarefree_binary(d.curve, a, b);
    } else if (left == 1) {
        d.reduced = restricted.is_zero();
    } else {
        d.reduced = true;
    }

    Poly prod = Poly::constant(xyz_vars(), Cyclo(1));
    d.parametrizations_vanish = true;
    for (auto& cc : case_components(inv.gamma, inv.case_label)) {
        LocusComponent comp;
        comp.equation = X(cc.equation);
        comp.parametrization = {T(cc.param[0]), T(cc.param[1]), T(cc.param[2])};
        comp.kind = classify_parametrization(comp.parametrization);
        std::vector<Poly> at(comp.parametrization.begin(), comp.parametrization.end());
        if (!p.relation.substitute(at).is_zero()) d.parametrizations_vanish = false;
        for (auto& gi : d.ideal_generators)
            if (!gi.substitute(at).is_zero()) d.parametrizations_vanish = false;
        if (!comp.equation.substitute(at).is_zero()) d.parametrizations_vanish = false;
        prod = prod * comp.equation;
        d.components.push_back(comp);
    }
    d.factorization_holds = left == 2 ? proportional(prod, d.curve) : true;
    return d;
}

}  // namespace kln
