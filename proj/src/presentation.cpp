#include "kleinian/presentation.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "kleinian/linalg.hpp"

namespace kln {

namespace {

Poly P(const std::string& s) { return parse_poly(s, uv_vars()); }
Poly X(const std::string& s) { return parse_poly(s, xyz_vars()); }

std::string I(long v) { return std::to_string(v); }

void fill_printed(KleinianPresentation& p) {
    const GammaType& g = p.gamma;
    int n = g.n;
    switch (g.family) {
        case Family::A: {
            std::string e = I(n + 1);
            p.printed.f = {P("u^" + e), P("v^" + e), P("u*v")};
            p.printed.degrees = {n + 1, n + 1, 2};
            p.relation = X("x*y - z^" + e);
            p.printed_brackets = {X(I((n + 1) * (n + 1)) + "*z^" + I(n)), X(e + "*x"), X("-" + e + "*y")};
            break;
        }
        case Family::D: {
            std::string a = I(2 * n - 4), b = I(n - 2);
            if (n % 2 == 0) {
                std::string k = I((n - 2) / 2);
                p.printed.f = {P("u^2*v^2"), P("-1/4*(u^" + a + " - 2*u^" + b + "*v^" + b + " + v^" + a + ")"),
                               P("1/4*u*v*(u^" + a + " - v^" + a + ")")};
                p.relation = X("x*y*(y - x^" + k + ") - z^2");
                p.printed_brackets = {X(I(4 * n - 8) + "*z"), X(I(2 * n - 4) + "*x*(2*y - x^" + k + ")"),
                                      X(I(n - 2) + "*y*(" + I(n) + "*x^" + k + " - 2*y)")};
            } else {
                std::string m = I((n - 1) / 2), m3 = I((n - 3) / 2);
                p.printed.f = {P("u^2*v^2"), P("1/4*(u^" + a + " - v^" + a + ")"),
                               P("-1/4*u*v*(u^" + a + " - 2*u^" + b + "*v^" + b + " + v^" + a + ")")};
                p.relation = X("x*y^2 - z*(z - x^" + m + ")");
                p.printed_brackets = {X(I(2 * n - 4) + "*(2*z - x^" + m + ")"), X(I(4 * n - 8) + "*x*y"),
                                      X(I(n - 2) + "*(" + I(n - 1) + "*x^" + m3 + "*z - 2*y^2)")};
            }
            p.printed.degrees = {4, 2 * n - 4, 2 * n - 2};
            break;
        }
        case Family::E6:
            p.printed.f = {P("u*v*(u^4 - v^4)"), P("-(u^8 + 14*u^4*v^4 + v^8)"),
                           P("u^12 - 33*u^8*v^4 - 33*u^4*v^8 + v^12 - 1/2*u^2*v^2*(u^4 - v^4)^2")};
            p.printed.degrees = {6, 8, 12};
            p.relation = X("z^2 + z*x^2 + y^3");
            p.printed_brackets = {X("-4*(2*z + x^2)"), X("-12*y^2"), X("4*x*(431*x^2 - 2*z)")};
            break;
        case Family::E7:
            p.printed.f = {P("-108*(u^8 + 14*u^4*v^4 + v^8)"), P("108*(u^5*v - u*v^5)^2"),
                           P("108^2*u*v*(u^8 - v^8)*(u^8 - 34*u^4*v^4 - v^8)")};
            p.printed.degrees = {8, 12, 18};
            p.relation = X("x^3*y + y^3 + z^2");
            p.printed_brackets = {X("-16*z"), X("x^3 + 34992*y^2"), X("-24*x^2*y")};
            break;
        case Family::E8:
            p.printed.f = {P("-1728*u*v*(u^10 + 11*u^5*v^5 - v^10)"),
                           P("-1728^2*(u^20 + v^20 - 228*(u^15*v^5 - u^5*v^15) + 494*u^10*v^10)"),
                           P("1728^3*(u^30 + v^30 + 522*(u^25*v^5 - u^5*v^25) - 10005*(u^20*v^10 + u^10*v^20))")};
            p.printed.degrees = {12, 20, 30};
            p.relation = X("x^5 + y^3 + z^2");
            p.printed_brackets = {X("-20*z"), X("30*y^2"), X("-4320000*x^4")};
            break;
    }
    for (auto* b : {&p.printed_brackets.xy, &p.printed_brackets.xz, &p.printed_brackets.yz})
        b->set_weights(p.printed.degrees);
    p.relation.set_weights(p.printed.degrees);
}

bool invariant_under(const std::vector<SL2>& gens, const Poly& f) {
    for (auto& g : gens)
        if (group_act(g, f) != f) return false;
    return true;
}

Exp anchor(const GammaType& g) { return g.is_A() ? Exp{1, 1, 0} : Exp{0, 0, 2}; }

std::unique_ptr<KleinianPresentation> build(const GammaType& g) {
    auto p = std::make_unique<KleinianPresentation>();
    p->gamma = g;
    p->group = group_elements(g);
    fill_printed(*p);
    p->work = p->printed;
    auto gens = group_generators(g);
    if (g.is_D() && g.n % 2 == 1) p->notes.push_back("listed invariants are invariant under the conjugate group with [[0,i],[i,0]]");
    if (g.family == Family::E8) p->notes.push_back("listed E8 generators do not generate a finite group; Klein's generators used");
    if (g.family == Family::E7 && !invariant_under(gens, p->printed.f[2])) {
        p->work.f[2] = P("108^2*u*v*(u^8 - v^8)*(u^8 - 34*u^4*v^4 + v^8)");
        p->notes.push_back("listed z is not invariant; working z uses u^8 - 34*u^4*v^4 + v^8");
    }
    p->work_relation = derive_relation(g, p->work);
    if (p->work_relation != p->relation) p->notes.push_back("working relation: " + p->work_relation.str());
    const auto& w = p->work.f;
    Poly* out[3] = {&p->work_brackets.xy, &p->work_brackets.xz, &p->work_brackets.yz};
    std::pair<int, int> pairs[3] = {{0, 1}, {0, 2}, {1, 2}};
    for (int k = 0; k < 3; ++k) {
        Poly h = poisson_bracket_uv(w[pairs[k].first], w[pairs[k].second]);
        if (!express_in(g, p->work, h, *out[k])) throw std::logic_error("working bracket not representable");
    }
    return p;
}

}  // namespace

const KleinianPresentation& presentation(const GammaType& g) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<KleinianPresentation>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(g.name());
    if (it == cache.end()) it = cache.emplace(g.name(), build(g)).first;
    return *it->second;
}

Poly pullback(const InvariantTriple& t, const Poly& f) {
    if (f.vars() != xyz_vars()) throw std::invalid_argument("pullback: expects a polynomial in x,y,z");
    Poly r = f.substitute(std::vector<Poly>{t.f[0], t.f[1], t.f[2]});
    r.set_weights({1, 1, 1});
    return r;
}

Poly pullback(const KleinianPresentation& p, const Poly& f) { return pullback(p.work, f); }

std::vector<Exp> normal_monomials(const GammaType& g, const Exp& deg, int d, int max_z_power) {
    std::vector<Exp> out;
    if (d < 0) return out;
    int zcap = d / deg[2];
    if (!g.is_A()) zcap = std::min(zcap, 1);
    if (max_z_power >= 0) zcap = std::min(zcap, max_z_power);
    for (int c = 0; c <= zcap; ++c)
        for (int b = 0; b * deg[1] + c * deg[2] <= d; ++b) {
            int rest = d - b * deg[1] - c * deg[2];
            if (rest % deg[0]) continue;
            int a = rest / deg[0];
            if (g.is_A() && a > 0 && b > 0) continue;
            out.push_back({a, b, c});
        }
    return out;
}

namespace {

struct Pullbacks {
    const InvariantTriple& t;
    std::array<std::vector<Poly>, 3> pw;
    Poly get(const Exp& e) {
        for (int i = 0; i < 3; ++i) {
            if (pw[i].empty()) pw[i].push_back(Poly::constant(uv_vars(), Cyclo(1)));
            while ((int)pw[i].size() <= e[i]) pw[i].push_back(pw[i].back() * t.f[i]);
        }
        return pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]];
    }
};

// Columns are the pulled-back monomials, rows the u,v exponents that occur.
CMatrix coefficient_matrix(const std::vector<Poly>& cols, std::vector<Exp>& rows_out) {
    std::map<Exp, int, GrLex> rows;
    for (auto& c : cols)
        for (auto& [e, v] : c.terms()) rows.emplace(e, 0);
    int k = 0;
    for (auto& [e, idx] : rows) idx = k++;
    CMatrix m = cmat_zero(k, (int)cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (auto& [e, v] : cols[j].terms()) m[rows[e]][j] = v;
    rows_out.clear();
    for (auto& [e, idx] : rows) rows_out.push_back(e);
    return m;
}

}  // namespace

bool express_in(const GammaType& g, const InvariantTriple& t, const Poly& h, Poly& out, int max_z_power) {
    out = Poly(xyz_vars());
    out.set_weights(t.degrees);
    if (h.is_zero()) return true;
    auto ds = h.weighted_degrees({1, 1, 1});
    if (ds.size() != 1) return false;
    auto mons = normal_monomials(g, t.degrees, ds[0], max_z_power);
    if (mons.empty()) return false;
    Pullbacks pb{t, {}};
    std::vector<Poly> cols;
    for (auto& e : mons) cols.push_back(pb.get(e));
    cols.push_back(h);
    std::vector<Exp> rows;
    CMatrix m = coefficient_matrix(cols, rows);
    std::vector<Cyclo> rhs;
    for (auto& r : m) {
        rhs.push_back(r.back());
        r.pop_back();
    }
    std::vector<Cyclo> sol;
    if (!solve_linear(m, rhs, sol)) return false;
    for (size_t j = 0; j < mons.size(); ++j) out.add_term(mons[j], sol[j]);
    return true;
}

Poly express_in_generators(const KleinianPresentation& p, const Poly& h, int max_z_power) {
    Poly out;
    if (!express_in(p.gamma, p.work, h, out, max_z_power))
        throw std::domain_error("express_in_generators: no representation in degree-matching monomials");
    return out;
}

Poly derive_relation(const GammaType& g, const InvariantTriple& t) {
    Exp an = anchor(g);
    int d = an[0] * t.degrees[0] + an[1] * t.degrees[1] + an[2] * t.degrees[2];
    std::vector<Exp> mons;
    for (int c = 0; c * t.degrees[2] <= d; ++c)
        for (int b = 0; b * t.degrees[1] + c * t.degrees[2] <= d; ++b) {
            int rest = d - b * t.degrees[1] - c * t.degrees[2];
            if (rest % t.degrees[0] == 0) mons.push_back({rest / t.degrees[0], b, c});
        }
    Pullbacks pb{t, {}};
    std::vector<Poly> cols;
    for (auto& e : mons) cols.push_back(pb.get(e));
    std::vector<Exp> rows;
    CMatrix m = coefficient_matrix(cols, rows);
    auto ker = nullspace(m, (int)mons.size());
    Poly r(xyz_vars());
    r.set_weights(t.degrees);
    if (ker.size() != 1) return r;
    for (size_t j = 0; j < mons.size(); ++j) r.add_term(mons[j], ker[0][j]);
    Cyclo lead = r.coeff(an);
    if (lead.is_zero()) return r;
    // Scale to the orientation of the listed relation.
    Cyclo target = g.is_A() ? Cyclo(1) : (g.is_D() ? Cyclo(-1) : Cyclo(1));
    r *= target / lead;
    return r;
}

Poly reynolds(const KleinianPresentation& p, const Poly& f) {
    Poly r(uv_vars());
    for (auto& g : p.group) r += group_act(g, f);
    r *= Cyclo(mpq_class(1, (long)p.group.size()));
    return r;
}

namespace {

std::vector<Poly> rows_to_polys(CMatrix m, int d) {
    rref(m);
    std::vector<Poly> out;
    for (auto& row : m) {
        Poly f(uv_vars());
        for (int i = 0; i <= d; ++i) f.add_term({i, d - i, 0}, row[i]);
        if (!f.is_zero()) out.push_back(f);
    }
    return out;
}

}  // namespace

std::vector<Poly> invariant_basis(const KleinianPresentation& p, int d) {
    if (d < 0) return {};
    auto gens = group_generators(p.gamma);
    CMatrix m;
    for (auto& g : gens) {
        CMatrix block = cmat_zero(d + 1, d + 1);
        for (int i = 0; i <= d; ++i) {
            Poly img = group_act(g, Poly::monomial(uv_vars(), {i, d - i, 0}, Cyclo(1)));
            for (auto& [e, c] : img.terms()) block[e[0]][i] += c;
            block[i][i] -= Cyclo(1);
        }
        for (auto& r : block) m.push_back(r);
    }
    auto ker = nullspace(m, d + 1);
    return rows_to_polys(ker, d);
}

std::vector<Poly> invariant_basis_reynolds(const KleinianPresentation& p, int d) {
    if (d < 0) return {};
    CMatrix m;
    for (int i = 0; i <= d; ++i) {
        Poly avg = reynolds(p, Poly::monomial(uv_vars(), {i, d - i, 0}, Cyclo(1)));
        std::vector<Cyclo> row(d + 1, Cyclo(0));
        for (auto& [e, c] : avg.terms()) row[e[0]] = c;
        m.push_back(row);
    }
    return rows_to_polys(m, d);
}

PresentationReport verify_presentation(const GammaType& g) {
    const auto& p = presentation(g);
    PresentationReport r;
    r.type = g.name();
    r.group_order = (int)p.group.size();
    auto gens = group_generators(g);
    for (int i = 0; i < 3; ++i) {
        const Poly& f = p.printed.f[i];
        r.invariant[i] = invariant_under(gens, f);
        auto ds = f.weighted_degrees({1, 1, 1});
        r.homogeneous[i] = ds.size() == 1 && ds[0] == p.printed.degrees[i];
        r.degrees_found[i] = ds.empty() ? -1 : ds[0];
    }
    r.relation_residual = pullback(p.printed, p.relation);
    r.relation_holds = r.relation_residual.is_zero();
    r.spans = true;
    Pullbacks pb{p.printed, {}};
    for (int i = 0; i < 3; ++i) {
        int d = p.printed.degrees[i];
        std::vector<Poly> cols;
        for (int c = 0; c * p.printed.degrees[2] <= d; ++c)
            for (int b = 0; b * p.printed.degrees[1] + c * p.printed.degrees[2] <= d; ++b) {
                int rest = d - b * p.printed.degrees[1] - c * p.printed.degrees[2];
                if (rest % p.printed.degrees[0] == 0) cols.push_back(pb.get({rest / p.printed.degrees[0], b, c}));
            }
        std::vector<Exp> rows;
        int have = rank(coefficient_matrix(cols, rows));
        int dim = (int)invariant_basis(p, d).size();
        // The monomials must lie in the invariant space and fill it.
        if (have != dim || !(r.invariant[0] && r.invariant[1] && r.invariant[2])) r.spans = false;
    }
    r.derived_relation = derive_relation(g, p.printed);
    return r;
}

BracketReport bracket_table(const GammaType& g) {
    const auto& p = presentation(g);
    BracketReport r;
    r.type = g.name();
    const char* names[3] = {"{x,y}", "{x,z}", "{y,z}"};
    std::pair<int, int> pairs[3] = {{0, 1}, {0, 2}, {1, 2}};
    const Poly* printed[3] = {&p.printed_brackets.xy, &p.printed_brackets.xz, &p.printed_brackets.yz};
    const Poly* working[3] = {&p.work_brackets.xy, &p.work_brackets.xz, &p.work_brackets.yz};
    for (int k = 0; k < 3; ++k) {
        auto& e = r.entries[k];
        e.pair = names[k];
        e.printed = *printed[k];
        e.working = *working[k];
        Poly h = poisson_bracket_uv(p.printed.f[pairs[k].first], p.printed.f[pairs[k].second]);
        e.representable = express_in(g, p.printed, h, e.computed);
        e.match = e.representable && e.computed == e.printed;
    }
    return r;
}

Poly classical_relation(const GammaType& g) {
    switch (g.family) {
        case Family::A: return X("x*y + z^" + I(g.n + 1));
        case Family::D: return X("x^" + I(g.n - 1) + " + x*y^2 + z^2");
        case Family::E6: return X("x^4 + y^3 + z^2");
        case Family::E7: return X("x^3*y + y^3 + z^2");
        case Family::E8: return X("x^5 + y^3 + z^2");
    }
    return Poly(xyz_vars());
}

CoordinateChange coordinate_change(const GammaType& g) {
    CoordinateChange c;
    Poly x = X("x"), y = X("y"), z = X("z");
    Cyclo i = Cyclo::zeta(4);
    c.images = {x, y, z};
    if (g.is_A()) {
        c.images[1] = -y;
    } else if (g.is_D() && g.n % 2 == 0) {
        c.images[1] = y * (Cyclo(-2) * i) + X("x^" + I((g.n - 2) / 2)) * i;
        c.images[2] = z * Cyclo(2);
    } else if (g.is_D()) {
        c.images[1] = y * Cyclo(2);
        c.images[2] = z * (Cyclo(-2) * i) + X("x^" + I((g.n - 1) / 2)) * i;
    } else if (g.family == Family::E6) {
        Cyclo e8 = Cyclo::zeta(8);
        Cyclo sqrt2 = e8 - e8.pow(3);
        c.images[0] = x * (e8 / sqrt2);
        c.images[2] = z + X("1/2*x^2");
    }
    c.classical = classical_relation(g);
    Poly img = c.classical.substitute(std::vector<Poly>{c.images[0], c.images[1], c.images[2]});
    const Poly& F = presentation(g).relation;
    const auto& lead = F.terms().rbegin();
    c.scalar = img.coeff(lead->first) / lead->second;
    Poly scaled = F * c.scalar;
    scaled.set_weights({1, 1, 1});
    img.set_weights({1, 1, 1});
    c.verified = !c.scalar.is_zero() && img == scaled;
    return c;
}

}  // namespace kln
