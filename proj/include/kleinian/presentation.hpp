#pragma once

#include <array>
#include <string>
#include <vector>

#include "kleinian/groups.hpp"
#include "kleinian/poly.hpp"

namespace kln {

struct BracketTable {
    Poly xy{xyz_vars()}, xz{xyz_vars()}, yz{xyz_vars()};
};

// Three invariants in u,v together with their weights.
struct InvariantTriple {
    std::array<Poly, 3> f;
    Exp degrees{1, 1, 1};
};

struct KleinianPresentation {
    GammaType gamma;
    std::vector<SL2> group;
    InvariantTriple printed;       // as listed in the standard table
    Poly relation{xyz_vars()};     // listed hypersurface relation
    BracketTable printed_brackets; // listed bracket table
    InvariantTriple work;          // invariants used for pullback checks
    Poly work_relation{xyz_vars()};
    BracketTable work_brackets;
    std::vector<std::string> notes;
};

// Cached per type.
const KleinianPresentation& presentation(const GammaType& g);

// Pull a polynomial in x,y,z back to u,v along the triple.
Poly pullback(const InvariantTriple& t, const Poly& f);
Poly pullback(const KleinianPresentation& p, const Poly& f);  // working triple

// Monomials x^a y^b z^c of weighted degree d in the normal form for the family.
std::vector<Exp> normal_monomials(const GammaType& g, const Exp& degrees, int d, int max_z_power = -1);

// Linear solve for h over the normal-form monomials; false if none exists.
bool express_in(const GammaType& g, const InvariantTriple& t, const Poly& h, Poly& out, int max_z_power = -1);
Poly express_in_generators(const KleinianPresentation& p, const Poly& h, int max_z_power = -1);

// One-dimensional kernel of the pullback in degree d, normalized; zero poly if none.
Poly derive_relation(const GammaType& g, const InvariantTriple& t);

Poly reynolds(const KleinianPresentation& p, const Poly& f);
// Basis of degree-d invariants via the common kernel of g - 1 over the generators.
std::vector<Poly> invariant_basis(const KleinianPresentation& p, int d);
// Same space, by averaging every degree-d monomial over the whole group.
std::vector<Poly> invariant_basis_reynolds(const KleinianPresentation& p, int d);

struct PresentationReport {
    std::string type;
    int group_order = 0;
    std::array<bool, 3> invariant{};
    std::array<bool, 3> homogeneous{};
    std::array<int, 3> degrees_found{};
    bool relation_holds = false;
    Poly relation_residual{uv_vars()};
    bool spans = false;
    Poly derived_relation{xyz_vars()};
    bool ok() const {
        return invariant[0] && invariant[1] && invariant[2] && homogeneous[0] && homogeneous[1] &&
               homogeneous[2] && relation_holds && spans;
    }
};

// Checks the listed invariants and relation verbatim.
PresentationReport verify_presentation(const GammaType& g);

struct BracketEntry {
    std::string pair;
    bool representable = false;
    Poly computed{xyz_vars()};  // from the listed invariants
    Poly printed{xyz_vars()};
    Poly working{xyz_vars()};   // from the working invariants
    bool match = false;
};

struct BracketReport {
    std::string type;
    std::array<BracketEntry, 3> entries;
    bool ok() const { return entries[0].match && entries[1].match && entries[2].match; }
};

BracketReport bracket_table(const GammaType& g);

struct CoordinateChange {
    std::array<Poly, 3> images;  // x1,y1,z1 in x,y,z
    Poly classical{xyz_vars()};
    Cyclo scalar;                // classical(images) = scalar * relation
    bool verified = false;
};

Poly classical_relation(const GammaType& g);
CoordinateChange coordinate_change(const GammaType& g);

}  // namespace kln
