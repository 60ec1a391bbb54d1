#include "kleinian/report.hpp"

#include <random>
#include <sstream>

#include "kleinian/presentation.hpp"
#include "kleinian/quiver.hpp"

namespace kln {

using nlohmann::json;

namespace {

std::vector<int> tail(const std::vector<long>& v) { return std::vector<int>(v.begin() + 1, v.end()); }

json bool_array(const std::array<bool, 3>& a) { return json::array({a[0], a[1], a[2]}); }

Section group_section(const GammaType& g) {
    Section s{"group", false, json::object()};
    auto elems = group_elements(g);
    s.detail["order"] = (int)elems.size();
    s.detail["expected"] = g.order();
    s.pass = (int)elems.size() == g.order();
    return s;
}

Section presentation_section(const GammaType& g) {
    Section s{"presentation", true, json::object()};
    const auto& p = presentation(g);
    std::array<bool, 3> invariant{}, homogeneous{};
    for (int k = 0; k < 3; ++k) {
        invariant[k] = true;
        for (auto& gen : group_generators(g))
            if (group_act(gen, p.work.f[k]) != p.work.f[k]) invariant[k] = false;
        auto degs = p.work.f[k].weighted_degrees({1, 1, 1});
        homogeneous[k] = degs.size() == 1 && degs[0] == p.work.degrees[k];
    }
    bool relation = pullback(p, p.work_relation).is_zero();
    s.pass = invariant[0] && invariant[1] && invariant[2] && homogeneous[0] && homogeneous[1] && homogeneous[2] &&
             relation;
    s.detail["degrees"] = json::array({p.work.degrees[0], p.work.degrees[1], p.work.degrees[2]});
    s.detail["invariants"] = polys_json(p.work.f);
    s.detail["relation"] = p.work_relation.str();
    s.detail["invariant"] = bool_array(invariant);
    s.detail["homogeneous"] = bool_array(homogeneous);
    s.detail["relation_holds"] = relation;

    PresentationReport printed = verify_presentation(g);
    json pj = json::object();
    pj["invariants"] = polys_json(p.printed.f);
    pj["relation"] = p.relation.str();
    pj["invariant"] = bool_array(printed.invariant);
    pj["homogeneous"] = bool_array(printed.homogeneous);
    pj["relation_holds"] = printed.relation_holds;
    pj["spans"] = printed.spans;
    pj["derived_relation"] = printed.derived_relation.str();
    pj["verbatim_ok"] = printed.ok();
    s.detail["printed"] = pj;
    s.detail["notes"] = p.notes;
    return s;
}

Section bracket_section(const GammaType& g) {
    Section s{"brackets", true, json::object()};
    const auto& p = presentation(g);
    BracketReport r = bracket_table(g);
    const Poly* work[3] = {&p.work_brackets.xy, &p.work_brackets.xz, &p.work_brackets.yz};
    json entries = json::array();
    bool verbatim = true;
    for (int k = 0; k < 3; ++k) {
        const auto& e = r.entries[k];
        bool ok = e.working == *work[k];
        s.pass = s.pass && ok;
        verbatim = verbatim && e.match;
        json ej = {{"pair", e.pair},          {"working", e.working.str()}, {"working_matches", ok},
                   {"printed", e.printed.str()}, {"printed_matches", e.match}};
        if (e.representable) ej["from_printed_invariants"] = e.computed.str();
        entries.push_back(ej);
    }
    s.detail["entries"] = entries;
    s.detail["printed_verbatim_ok"] = verbatim;
    return s;
}

std::vector<AntiPoissonInvolution> cases_in_scope(const GammaType& g, const std::string& c) {
    if (c.empty()) return involution_catalog(g);
    return {find_involution(g, c)};
}

Section involution_section(const std::vector<AntiPoissonInvolution>& cases) {
    Section s{"involutions", true, json::array()};
    for (auto& inv : cases) {
        InvolutionReport r = verify_involution(inv);
        json j = {{"case", inv.case_label},
                  {"images", polys_json(inv.images)},
                  {"relation_preserved", r.relation_preserved},
                  {"involutive", r.involutive},
                  {"graded", r.graded},
                  {"anti_poisson", r.anti_poisson},
                  {"failures", r.failures}};
        bool ok = r.ok();
        if (inv.realizing_matrix) {
            MatrixReport m = realize_by_matrix(inv);
            j["matrix"] = {{"entries", m.matrix.str()},
                           {"det_minus_one", m.det_minus_one},
                           {"normalizes", m.normalizes},
                           {"square_in_group", m.square_in_group},
                           {"induces_images", m.induces_images}};
            ok = ok && m.ok();
        }
        j["pass"] = ok;
        s.pass = s.pass && ok;
        s.detail.push_back(j);
    }
    return s;
}

json fixed_locus_json(const FixedLocusDescription& f) {
    json ideal = json::array();
    for (auto& g : f.ideal_generators) ideal.push_back(g.str());
    json comps = json::array();
    for (auto& c : f.components) {
        json cj = {{"kind", kind_name(c.kind)}, {"parametrization", polys_json(c.parametrization)}};
        if (!c.equation.is_zero()) cj["equation"] = c.equation.str();
        comps.push_back(cj);
    }
    json j = {{"ideal", ideal}, {"components", comps}, {"reduced", f.reduced}};
    if (!f.curve.is_zero()) j["curve"] = f.curve.str();
    return j;
}

Section fixed_locus_section(const std::vector<AntiPoissonInvolution>& cases) {
    Section s{"fixed_loci", true, json::array()};
    for (auto& inv : cases) {
        FixedLocusDescription f = fixed_locus(inv);
        bool ok = f.parametrizations_vanish && f.factorization_holds;
        json j = fixed_locus_json(f);
        j["case"] = inv.case_label;
        j["parametrizations_vanish"] = f.parametrizations_vanish;
        j["factorization_holds"] = f.factorization_holds;
        j["pass"] = ok;
        s.pass = s.pass && ok;
        s.detail.push_back(j);
    }
    return s;
}

std::vector<ExactPoint> lift_samples(const GammaType& g, const QuiverSetting& qs) {
    std::mt19937_64 rng(20240601 + 31 * (int)g.family + g.n);
    std::vector<ExactPoint> pts;
    for (int k = 0; k < 3; ++k) pts.push_back(random_exact_point(qs, rng, 3));
    if (g.is_A()) {
        pts.push_back(typeA_family_point(qs, Cyclo(2)));
        pts.push_back(typeA_family_point(qs, Cyclo::rational(-3, 5)));
        for (int i = 1; i <= g.n; ++i) pts.push_back(typeA_component_point(qs, i, Cyclo(i + 1)));
    }
    if (g.family == Family::E7 || g.family == Family::E8)
        for (int w = 1; w <= 2; ++w) pts.push_back(tabulated_point(qs, w));
    return pts;
}

Section lift_section(const GammaType& g, const std::vector<AntiPoissonInvolution>& cases) {
    Section s{"lifts", true, json::array()};
    QuiverSetting qs = build_setting(g);
    auto pts = lift_samples(g, qs);
    for (auto& inv : cases) {
        LiftSpec spec = lift_catalog(g, inv.case_label);
        LiftReport r = verify_lift(spec, qs, pts);
        json j = {{"case", inv.case_label},
                  {"samples", (int)pts.size()},
                  {"trace_samples", r.trace_samples},
                  {"moment_relation", r.moment_relation},
                  {"anti_symplectic", r.symplectic_relation && spec.symplectic_sign() == -1},
                  {"traces_match", r.traces_match},
                  {"involutive", r.involutive},
                  {"failures", r.failures}};
        if (r.parity_checked) j["parity"] = r.parity;
        bool ok = r.ok() && spec.symplectic_sign() == -1;
        j["pass"] = ok;
        s.pass = s.pass && ok;
        s.detail.push_back(j);
    }
    return s;
}

Section tabulated_section(const GammaType& g) {
    Section s{"tabulated_points", true, json::array()};
    QuiverSetting qs = build_setting(g);
    for (int w = 1; w <= 2; ++w) {
        ExactPoint p = tabulated_point(qs, w);
        bool mu_zero = true;
        for (auto& m : moment_map(qs, p)) mu_zero = mu_zero && m.is_zero();
        bool stable = is_semistable(qs, p);
        auto t = trace_generators(qs, p);
        bool ids = true;
        for (auto& id : trace_identities(qs, p)) ids = ids && id.residual.is_zero();
        bool ok = mu_zero && stable && ids;
        s.pass = s.pass && ok;
        s.detail.push_back({{"point", w},
                            {"xyz", json::array({t.x.str(), t.y.str(), t.z.str()})},
                            {"mu_zero", mu_zero},
                            {"semistable", stable},
                            {"identities_hold", ids},
                            {"pass", ok}});
    }
    return s;
}

// C a = b for a principal fixed locus, a = maximal root for the fiber itself.
bool divisor_consistent(const DynkinData& d, const PreimageDivisor& div) {
    for (int i = 1; i <= d.n; ++i)
        if (div.a[i] < 1) return false;
    if (div.principal) {
        for (int i = 1; i <= d.n; ++i) {
            Cyclo row(0);
            for (int k = 1; k <= d.n; ++k) row += d.cartan(i - 1, k - 1) * Cyclo(div.a[k]);
            if (row != Cyclo(div.b[i])) return false;
        }
        return true;
    }
    if (div.config.attachments.empty()) {
        for (int i = 1; i <= d.n; ++i)
            if (div.a[i] != d.max_root[i]) return false;
    }
    return true;
}

Section divisor_section(const GammaType& g, const std::vector<AntiPoissonInvolution>& cases) {
    Section s{"divisors", true, json::array()};
    DynkinData d = cartan(g);
    for (auto& inv : cases) {
        json j;
        bool ok = false;
        try {
            PreimageDivisor div = divisor_description(g, inv.case_label);
            ok = divisor_consistent(d, div);
            j = divisor_to_json(div);
        } catch (const std::exception& e) {
            j = {{"case", inv.case_label}, {"error", e.what()}};
        }
        j["pass"] = ok;
        s.pass = s.pass && ok;
        s.detail.push_back(j);
    }
    return s;
}

Section chart_section(const GammaType& g, const std::vector<AntiPoissonInvolution>& cases) {
    Section s{"charts", true, json::array()};
    for (auto& inv : cases) {
        PreimageDivisor div = divisor_description(g, inv.case_label);
        Poly f = div.principal ? div.equation : Poly::var(xyz_vars(), "z");
        json j = {{"case", inv.case_label}, {"function", f.str()}};
        bool ok = false;
        try {
            ChartOrders c = typeA_chart_pullback(g.n, f);
            std::vector<int> orders(c.orders.begin() + 1, c.orders.end());
            j["orders"] = orders;
            if (div.principal) {
                j["cartan"] = tail(div.a);
                ok = orders == tail(div.a);
            } else {
                // Upper bound for a non-principal locus.
                ok = true;
                for (int i = 1; i <= g.n; ++i) ok = ok && div.a[i] <= c.orders[i];
            }
        } catch (const std::exception& e) {
            j["error"] = e.what();
        }
        j["pass"] = ok;
        s.pass = s.pass && ok;
        s.detail.push_back(j);
    }
    return s;
}

}  // namespace

json polys_json(const std::array<Poly, 3>& p) { return json::array({p[0].str(), p[1].str(), p[2].str()}); }

bool TypeVerification::ok() const { return first_failure().empty(); }

std::string TypeVerification::first_failure() const {
    for (auto& s : sections)
        if (!s.pass) return s.name;
    return "";
}

json TypeVerification::to_json() const {
    const auto& p = presentation(gamma);
    json j;
    j["type"] = gamma.name();
    if (!case_label.empty()) j["case"] = case_label;
    j["group_order"] = gamma.order();
    j["degrees"] = json::array({p.work.degrees[0], p.work.degrees[1], p.work.degrees[2]});
    j["relation"] = p.work_relation.str();
    j["bracket_table"] = {{"xy", p.work_brackets.xy.str()}, {"xz", p.work_brackets.xz.str()}, {"yz", p.work_brackets.yz.str()}};
    json sec = json::object();
    for (auto& s : sections) sec[s.name] = {{"pass", s.pass}, {"detail", s.detail}};
    j["sections"] = sec;
    j["status"] = ok() ? "pass" : "fail";
    return j;
}

TypeVerification verify_type(const GammaType& g, const std::string& case_label) {
    TypeVerification v;
    v.gamma = g;
    v.case_label = case_label;
    auto cases = cases_in_scope(g, case_label);
    v.sections.push_back(group_section(g));
    v.sections.push_back(presentation_section(g));
    v.sections.push_back(bracket_section(g));
    v.sections.push_back(involution_section(cases));
    v.sections.push_back(fixed_locus_section(cases));
    v.sections.push_back(lift_section(g, cases));
    if (g.family == Family::E7 || g.family == Family::E8) v.sections.push_back(tabulated_section(g));
    v.sections.push_back(divisor_section(g, cases));
    if (g.is_A()) v.sections.push_back(chart_section(g, cases));
    return v;
}

std::vector<GammaType> test_range() {
    std::vector<GammaType> out;
    for (int n = 1; n <= 12; ++n) out.emplace_back(Family::A, n);
    for (int n = 4; n <= 10; ++n) out.emplace_back(Family::D, n);
    out.emplace_back(Family::E6, 6);
    out.emplace_back(Family::E7, 7);
    out.emplace_back(Family::E8, 8);
    return out;
}

json involution_to_json(const AntiPoissonInvolution& inv) {
    json j = {{"case", inv.case_label}, {"images", polys_json(inv.images)}};
    j["matrix"] = inv.realizing_matrix ? json(inv.realizing_matrix->str()) : json(nullptr);
    auto perm = diagram_involution(inv);
    j["diagram_permutation"] = std::vector<int>(perm.begin() + 1, perm.end());
    j["fixed_locus"] = fixed_locus_json(fixed_locus(inv));
    return j;
}

json involutions_json(const GammaType& g) {
    json arr = json::array();
    for (auto& inv : involution_catalog(g)) arr.push_back(involution_to_json(inv));
    return {{"type", g.name()}, {"involutions", arr}};
}

std::string divisor_to_text(const PreimageDivisor& d) {
    std::ostringstream o;
    o << d.gamma.name() << " case " << d.case_label << "\n";
    bool fiber = !d.principal && d.config.attachments.empty();
    if (fiber) {
        bool ones = true;
        for (int i = 1; i < (int)d.a.size(); ++i) ones = ones && d.a[i] == 1;
        if (ones && d.reduced.value_or(false))
            o << "reduced exceptional fiber, all multiplicities 1\n";
        else
            o << "exceptional fiber\n";
    } else if (d.principal) {
        o << "div(" << d.equation.str() << ")\n";
    } else {
        o << "non-principal fixed locus\n";
    }
    for (int i = 1; i < (int)d.a.size(); ++i)
        o << "  " << d.a[i] << " C" << i << "  [" << status_name(d.config.status[i]) << "]\n";
    for (size_t j = 0; j < d.config.attachments.size(); ++j) {
        o << "  1 L" << j + 1 << "  meets";
        for (int i : d.config.attachments[j]) o << " C" << i;
        o << "\n";
    }
    o << "reduced: " << (d.reduced ? (*d.reduced ? "yes" : "no") : "unknown")
      << ", generically reduced: " << (d.generically_reduced ? "yes" : "no") << "\n";
    if (!d.note.empty()) o << "note: " << d.note << "\n";
    return o.str();
}

}  // namespace kln
