#pragma once

#include <string>
#include <vector>

#include "kleinian/cyclo.hpp"
#include "kleinian/poly.hpp"

namespace kln {

enum class Family { A, D, E6, E7, E8 };

struct GammaType {
    Family family = Family::A;
    int n = 1;  // rank; fixed for E types

    GammaType() = default;
    GammaType(Family f, int rank);  // validates the rank range
    static GammaType parse(const std::string& family, int n = 0);

    std::string name() const;  // "A4", "D6", "E7"
    int rank() const { return n; }
    int order() const;         // |Gamma|
    int conductor() const;     // field for the group entries
    int big_conductor() const; // field for normalizer elements
    bool is_A() const { return family == Family::A; }
    bool is_D() const { return family == Family::D; }
    bool is_E() const { return family != Family::A && family != Family::D; }
    bool operator==(const GammaType& o) const { return family == o.family && n == o.n; }
};

struct SL2 {
    Cyclo a{1}, b{0}, c{0}, d{1};

    Cyclo det() const { return a * d - b * c; }
    SL2 operator*(const SL2& o) const;
    SL2 inverse() const;
    bool operator==(const SL2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
    std::string key(int order) const;
    std::string str() const;
};

// Generators of the group used throughout. For D_n with n odd the listed
// invariants need the conjugate generated by diag(e, 1/e) and [[0,i],[i,0]].
// For E8 the listed matrices do not close up, so the second and third
// generators are replaced by Klein's.
std::vector<SL2> group_generators(const GammaType& g);
// Generators exactly as listed in the classical table.
std::vector<SL2> printed_generators(const GammaType& g);
// Closure of the generators; throws if it exceeds ten times the expected order.
std::vector<SL2> group_elements(const GammaType& g);
std::vector<SL2> closure(const std::vector<SL2>& gens, int order_hint, size_t bound);

// g.f = f(g^{-1}(u,v)).
Poly group_act(const SL2& g, const Poly& f);

// Conjugation by g maps the group onto itself.
bool normalizes(const SL2& g, const std::vector<SL2>& group, int order);
bool contains(const std::vector<SL2>& group, const SL2& h, int order);

}  // namespace kln
