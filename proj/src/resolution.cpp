#include "kleinian/resolution.hpp"

#include <sstream>

#include "kleinian/involutions.hpp"

namespace kln {

DynkinData cartan(const GammaType& g) {
    QuiverSetting s = build_setting(g);
    DynkinData d;
    d.gamma = g;
    d.n = g.n;
    d.adj.assign(d.n + 1, {});
    for (auto& a : s.arrows) {
        if (a.tail == 0 || a.head == 0) continue;
        d.adj[a.tail].push_back(a.head);
        d.adj[a.head].push_back(a.tail);
    }
    d.cartan = Mat<Cyclo>(d.n, d.n);
    for (int i = 1; i <= d.n; ++i) {
        d.cartan(i - 1, i - 1) = Cyclo(2);
        for (int j : d.adj[i]) d.cartan(i - 1, j - 1) = Cyclo(-1);
    }
    d.cartan_inverse = mat_inverse(d.cartan);
    d.max_root.assign(s.delta.begin(), s.delta.end());
    d.max_root[0] = 0;
    return d;
}

std::string status_name(ComponentStatus s) {
    switch (s) {
        case ComponentStatus::Swapped: return "swapped";
        case ComponentStatus::PointwiseFixed: return "pointwise-fixed";
        case ComponentStatus::TwoFixedPoints: return "two-fixed-points";
    }
    return "";
}

namespace {

std::string vertex_list(const std::vector<int>& v) {
    std::string s;
    for (int i : v) s += (s.empty() ? "" : ",") + std::to_string(i);
    return s;
}

}  // namespace

FixedPointConfiguration propagate_fixed(const DynkinData& d, const std::vector<int>& perm, int isolated_count,
                                        const std::vector<std::pair<int, ComponentStatus>>& known) {
    int n = d.n;
    if ((int)perm.size() != n + 1) throw std::invalid_argument("permutation has the wrong size");
    for (int i = 1; i <= n; ++i) {
        int j = perm[i];
        if (j < 1 || j > n || perm[j] != i) throw std::invalid_argument("perm is not an involution");
        for (int k : d.adj[i]) {
            auto& aj = d.adj[j];
            if (std::find(aj.begin(), aj.end(), perm[k]) == aj.end())
                throw std::invalid_argument("perm is not a diagram automorphism");
        }
    }
    std::vector<int> preserved;
    for (int i = 1; i <= n; ++i)
        if (perm[i] == i) preserved.push_back(i);

    std::vector<FixedPointConfiguration> found;
    for (unsigned long mask = 0; mask < (1ul << preserved.size()); ++mask) {
        FixedPointConfiguration c;
        c.status.assign(n + 1, ComponentStatus::Swapped);
        c.isolated_on.assign(n + 1, 0);
        for (size_t k = 0; k < preserved.size(); ++k)
            c.status[preserved[k]] = (mask >> k) & 1 ? ComponentStatus::PointwiseFixed : ComponentStatus::TwoFixedPoints;
        bool ok = true;
        for (auto& [v, st] : known)
            if (c.status.at(v) != st) ok = false;
        for (int i = 1; i <= n && ok; ++i) {
            if (c.status[i] == ComponentStatus::Swapped) continue;
            int stable = 0;
            for (int j : d.adj[i]) {
                if (c.status[j] == ComponentStatus::Swapped) {
                    // A moved neighbour moves the crossing point, so C_i cannot be fixed pointwise.
                    if (c.status[i] == ComponentStatus::PointwiseFixed) ok = false;
                    continue;
                }
                ++stable;
                if (c.status[j] == c.status[i]) ok = false;
            }
            if (c.status[i] == ComponentStatus::TwoFixedPoints) {
                if (stable > 2) ok = false;
                c.isolated_on[i] = 2 - stable;
            }
        }
        if (!ok) continue;
        for (int i = 1; i <= n; ++i) {
            for (int k = 0; k < c.isolated_on[i]; ++k) c.attachments.push_back({i});
            if (perm[i] != i && perm[i] > i) {
                auto& a = d.adj[i];
                if (std::find(a.begin(), a.end(), perm[i]) != a.end()) {
                    c.swapped_crossings.push_back({i, perm[i]});
                    c.attachments.push_back({i, perm[i]});
                }
            }
        }
        if (c.isolated_total() == isolated_count) found.push_back(c);
    }
    if (found.empty())
        throw ConfigurationError("no fixed-point configuration with " + std::to_string(isolated_count) +
                                     " isolated points for " + d.gamma.name(),
                                 false);
    if (found.size() > 1) {
        std::string msg = "ambiguous fixed-point configuration for " + d.gamma.name() + ": pointwise-fixed sets";
        for (auto& c : found) {
            std::vector<int> fx;
            for (int i = 1; i <= n; ++i)
                if (c.status[i] == ComponentStatus::PointwiseFixed) fx.push_back(i);
            msg += " {" + vertex_list(fx) + "}";
        }
        throw ConfigurationError(msg, true);
    }
    return found[0];
}

std::vector<int> b_vector(const DynkinData& d, const FixedPointConfiguration& c) {
    std::vector<int> b(d.n + 1, 0);
    for (auto& att : c.attachments)
        for (int i : att) ++b.at(i);
    return b;
}

MultiplicitySolution solve_multiplicities(const DynkinData& d, const std::vector<int>& b) {
    if ((int)b.size() != d.n + 1) throw std::invalid_argument("b has the wrong size");
    MultiplicitySolution out;
    out.a.assign(d.n + 1, 0);
    for (int i = 1; i <= d.n; ++i) {
        if (b[i] < 0) throw std::invalid_argument("b must be nonnegative");
        mpq_class s = 0;
        for (int j = 1; j <= d.n; ++j) s += d.cartan_inverse(i - 1, j - 1).to_rational() * b[j];
        out.a[i] = s;
        if (s.get_den() != 1) out.integral = false;
    }
    return out;
}

Cyclo typeA_component_coordinate(const QuiverSetting& s, const ExactPoint& p, int i) {
    int n = s.gamma.n;
    auto arrow = [&](int j) { return s.find_arrow(j, (j + 1) % (n + 1)); };
    Cyclo up = p.l0(0, 0), down = p.l0(0, 0);
    for (int j = 0; j < i; ++j) up *= p.B[arrow(j)](0, 0);
    for (int j = n; j >= i; --j) down *= p.Bs[arrow(j)](0, 0);
    if (up.is_zero()) throw std::invalid_argument("point is not in the chart of C_" + std::to_string(i));
    return down / up;
}

std::vector<ComponentStatus> typeA_component_statuses(const QuiverSetting& s, const LiftSpec& spec) {
    if (!s.gamma.is_A()) throw std::invalid_argument("typeA_component_statuses needs type A");
    int n = s.gamma.n;
    std::vector<ComponentStatus> out(n + 1, ComponentStatus::Swapped);
    const Cyclo samples[2] = {Cyclo(2), Cyclo::rational(-5, 3)};
    for (int i = 1; i <= n; ++i) {
        bool moved = false, all_fixed = true;
        for (auto& c : samples) {
            ExactPoint q = apply_lift(s, spec, typeA_component_point(s, i, c));
            auto where = exceptional_membership(s, q);
            if (where.size() != 1) throw std::runtime_error("lifted component point left the smooth part of the fiber");
            if (where[0] != i) {
                moved = true;
                break;
            }
            if (typeA_component_coordinate(s, q, i) != c) all_fixed = false;
        }
        if (!moved) out[i] = all_fixed ? ComponentStatus::PointwiseFixed : ComponentStatus::TwoFixedPoints;
    }
    return out;
}

std::array<Poly, 3> typeA_chart(int n, int i) {
    if (i < 0 || i > n) throw std::invalid_argument("chart index out of range");
    const auto& uv = uv_vars();
    return {Poly::monomial(uv, {n - i, n - i + 1, 0}, Cyclo(1)), Poly::monomial(uv, {i + 1, i, 0}, Cyclo(1)),
            Poly::monomial(uv, {1, 1, 0}, Cyclo(1))};
}

ChartOrders typeA_chart_pullback(int n, const Poly& f) {
    std::vector<Poly> pulled;
    for (int i = 0; i <= n; ++i) {
        auto ch = typeA_chart(n, i);
        Poly g = f.substitute(std::vector<Poly>{ch[0], ch[1], ch[2]});
        if (g.is_zero()) throw std::runtime_error("pullback vanishes identically in chart " + std::to_string(i));
        pulled.push_back(g);
    }
    auto order = [](const Poly& g, int var) {
        int m = -1;
        for (auto& [e, c] : g.terms())
            if (m < 0 || e[var] < m) m = e[var];
        return m;
    };
    ChartOrders out;
    out.from_v.assign(n + 1, 0);
    out.from_u.assign(n + 1, 0);
    out.orders.assign(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        out.from_v[i] = order(pulled[i], 1);
        out.from_u[i] = order(pulled[i - 1], 0);
        if (out.from_v[i] != out.from_u[i])
            throw std::runtime_error("charts " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                     " disagree on the order along C_" + std::to_string(i));
        out.orders[i] = out.from_v[i];
    }
    return out;
}

PreimageDivisor divisor_description(const GammaType& g, const std::string& case_label) {
    AntiPoissonInvolution inv = find_involution(g, case_label);
    FixedLocusDescription locus = fixed_locus(inv);
    DynkinData d = cartan(g);
    PreimageDivisor out;
    out.gamma = g;
    out.case_label = case_label;
    out.principal = locus.ideal_generators.size() == 1;
    if (out.principal) out.equation = locus.ideal_generators[0];

    int curves = 0;
    for (auto& c : locus.components)
        if (c.kind != ComponentKind::Point) ++curves;
    std::vector<int> perm = diagram_involution(inv);
    try {
        out.config = propagate_fixed(d, perm, curves);
    } catch (const ConfigurationError& e) {
        if (!e.ambiguous || !g.is_A()) throw;
        QuiverSetting s = build_setting(g);
        auto st = typeA_component_statuses(s, lift_catalog(g, case_label));
        std::vector<std::pair<int, ComponentStatus>> known;
        for (int i = 1; i <= d.n; ++i) known.push_back({i, st[i]});
        out.config = propagate_fixed(d, perm, curves, known);
        out.note = "component statuses read off the quiver lift";
    }
    out.b = b_vector(d, out.config);
    out.a.assign(d.n + 1, 0);

    if (out.principal) {
        MultiplicitySolution m = solve_multiplicities(d, out.b);
        if (!m.integral) throw std::runtime_error("non-integral multiplicities for " + g.name() + " " + case_label);
        bool all_one = true;
        for (int i = 1; i <= d.n; ++i) {
            out.a[i] = m.a[i].get_num().get_si();
            if (out.a[i] != 1) all_one = false;
        }
        out.reduced = all_one;
        out.generically_reduced = all_one;
    } else if (curves == 0) {
        // The preimage is the exceptional fiber itself.
        bool all_one = true;
        for (int i = 1; i <= d.n; ++i) {
            out.a[i] = d.max_root[i];
            if (out.a[i] != 1) all_one = false;
        }
        out.reduced = all_one;
        out.generically_reduced = all_one;
    } else {
        // Bounded above by div(z), which contains the fixed curve; the fiber itself is reduced in type A.
        if (!g.is_A()) throw std::runtime_error("unexpected non-principal fixed locus for " + g.name());
        ChartOrders bound = typeA_chart_pullback(d.n, Poly::var(xyz_vars(), "z"));
        bool all_one = true;
        for (int i = 1; i <= d.n; ++i) {
            out.a[i] = bound.orders[i];
            if (bound.orders[i] != 1) all_one = false;
        }
        out.generically_reduced = all_one;
        out.reduced.reset();
        if (!out.note.empty()) out.note += "; ";
        out.note += "multiplicities bounded by div(z)";
    }
    return out;
}

nlohmann::json divisor_to_json(const PreimageDivisor& d) {
    using nlohmann::json;
    json comps = json::array();
    for (int i = 1; i < (int)d.a.size(); ++i)
        comps.push_back({{"name", "C" + std::to_string(i)},
                         {"multiplicity", d.a[i]},
                         {"kind", "exceptional"},
                         {"status", status_name(d.config.status[i])}});
    json att = json::array();
    for (size_t j = 0; j < d.config.attachments.size(); ++j) {
        std::string name = "L" + std::to_string(j + 1);
        comps.push_back({{"name", name}, {"multiplicity", 1}, {"kind", "strict-transform"}});
        json meets = json::array();
        for (int i : d.config.attachments[j]) meets.push_back("C" + std::to_string(i));
        att.push_back({{"curve", name}, {"meets", meets}});
    }
    json j;
    j["type"] = d.gamma.name();
    j["case"] = d.case_label;
    j["principal"] = d.principal;
    if (d.principal) j["equation"] = d.equation.str();
    j["components"] = comps;
    j["attachments"] = att;
    j["b"] = std::vector<int>(d.b.begin() + 1, d.b.end());
    j["a"] = std::vector<long>(d.a.begin() + 1, d.a.end());
    j["reduced"] = d.reduced ? json(*d.reduced) : json("unknown");
    j["generically_reduced"] = d.generically_reduced;
    if (!d.note.empty()) j["note"] = d.note;
    return j;
}

std::string divisor_to_dot(const PreimageDivisor& d) {
    DynkinData dd = cartan(d.gamma);
    std::ostringstream o;
    o << "graph \"" << d.gamma.name() << "_" << d.case_label << "\" {\n";
    for (int i = 1; i <= dd.n; ++i) {
        o << "  C" << i << " [label=\"C" << i << " (" << d.a[i] << ")\"";
        if (d.a[i] > 1) o << ", penwidth=2";
        if (d.config.status[i] == ComponentStatus::PointwiseFixed) o << ", color=red";
        o << "];\n";
    }
    for (size_t j = 0; j < d.config.attachments.size(); ++j)
        o << "  L" << j + 1 << " [label=\"L" << j + 1 << " (1)\", shape=box, color=red];\n";
    for (int i = 1; i <= dd.n; ++i)
        for (int k : dd.adj[i])
            if (k > i) o << "  C" << i << " -- C" << k << ";\n";
    for (size_t j = 0; j < d.config.attachments.size(); ++j)
        for (int i : d.config.attachments[j]) o << "  L" << j + 1 << " -- C" << i << ";\n";
    o << "}\n";
    return o.str();
}

}  // namespace kln
