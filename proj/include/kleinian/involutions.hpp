#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "kleinian/groups.hpp"
#include "kleinian/poly.hpp"
#include "kleinian/presentation.hpp"

namespace kln {

struct AntiPoissonInvolution {
    GammaType gamma;
    std::string case_label;     // "I", "II", "III"
    std::array<Poly, 3> images; // theta(x), theta(y), theta(z)
    std::optional<SL2> realizing_matrix;
};

std::vector<AntiPoissonInvolution> involution_catalog(const GammaType& g);
// Throws std::invalid_argument for a case the type does not have.
AntiPoissonInvolution find_involution(const GammaType& g, const std::string& case_label);

// Formal composition f(theta(x), theta(y), theta(z)).
Poly apply_theta(const AntiPoissonInvolution& inv, const Poly& f);

struct InvolutionReport {
    bool relation_preserved = false;  // pulled back through the working invariants
    bool listed_relation_fixed = false;  // F(theta) is a nonzero multiple of F
    bool involutive = false;
    bool graded = false;
    bool anti_poisson = false;
    std::vector<std::string> failures;
    bool ok() const { return relation_preserved && involutive && graded && anti_poisson; }
};

InvolutionReport verify_involution(const AntiPoissonInvolution& inv);

struct MatrixReport {
    SL2 matrix;
    bool det_minus_one = false;
    bool normalizes = false;
    bool square_in_group = false;
    bool induces_images = false;
    bool ok() const { return det_minus_one && normalizes && square_in_group && induces_images; }
};

// Throws if the case has no listed matrix.
MatrixReport realize_by_matrix(const AntiPoissonInvolution& inv);

// Vertex permutation of the finite Dynkin diagram, 1-based; perm[0] unused.
std::vector<int> diagram_involution(const AntiPoissonInvolution& inv);

enum class ComponentKind { Point, Line, Cusp };
std::string kind_name(ComponentKind k);

struct LocusComponent {
    ComponentKind kind = ComponentKind::Point;
    Poly equation{xyz_vars()};           // component equation inside the locus; zero for point or full line
    std::array<Poly, 3> parametrization; // in t
};

struct FixedLocusDescription {
    std::vector<Poly> ideal_generators;
    Poly curve{xyz_vars()};              // listed relation restricted to the locus; zero if not a plane curve
    std::vector<std::string> surviving;  // coordinates left after solving the linear generator
    std::vector<LocusComponent> components;
    bool reduced = false;
    bool parametrizations_vanish = false;
    bool factorization_holds = false;
};

FixedLocusDescription fixed_locus(const AntiPoissonInvolution& inv);

// Exponent-based classification of a monomial parametrization.
ComponentKind classify_parametrization(const std::array<Poly, 3>& p);

// Squarefreeness of a weighted-homogeneous polynomial in two of x,y,z.
bool squarefree_binary(const Poly& f, int a, int b);

}  // namespace kln
