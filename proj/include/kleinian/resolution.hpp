#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kleinian/groups.hpp"
#include "kleinian/matrix.hpp"
#include "kleinian/poly.hpp"
#include "kleinian/quiver.hpp"

namespace kln {

// Finite Dynkin diagram on vertices 1..n, numbered as in the extended quiver with vertex 0 removed.
// Vectors indexed by vertex have an unused slot 0.
struct DynkinData {
    GammaType gamma;
    int n = 0;
    std::vector<std::vector<int>> adj;
    Mat<Cyclo> cartan, cartan_inverse;  // row/column k is vertex k+1
    std::vector<int> max_root;
};

DynkinData cartan(const GammaType& g);

enum class ComponentStatus { Swapped, PointwiseFixed, TwoFixedPoints };
std::string status_name(ComponentStatus s);

struct FixedPointConfiguration {
    std::vector<ComponentStatus> status;  // by vertex
    std::vector<int> isolated_on;         // isolated fixed points in C_i off its neighbours
    std::vector<std::pair<int, int>> swapped_crossings;  // C_i cap C_j with C_i, C_j exchanged
    // One entry per strict-transform curve: the components it meets.
    std::vector<std::vector<int>> attachments;
    int isolated_total() const { return (int)attachments.size(); }
};

struct ConfigurationError : std::runtime_error {
    bool ambiguous;
    ConfigurationError(const std::string& what, bool amb) : std::runtime_error(what), ambiguous(amb) {}
};

// perm is a diagram involution on 1..n (slot 0 unused). known pins statuses of chosen vertices.
// Throws ConfigurationError when no assignment, or more than one, is consistent.
FixedPointConfiguration propagate_fixed(const DynkinData& d, const std::vector<int>& perm, int isolated_count,
                                        const std::vector<std::pair<int, ComponentStatus>>& known = {});

// b_i = number of strict-transform curves meeting C_i.
std::vector<int> b_vector(const DynkinData& d, const FixedPointConfiguration& c);

struct MultiplicitySolution {
    std::vector<mpq_class> a;  // by vertex
    bool integral = true;
};
MultiplicitySolution solve_multiplicities(const DynkinData& d, const std::vector<int>& b);

// Status of each C_i under a type A lift, read off from a gauge-invariant coordinate on C_i.
std::vector<ComponentStatus> typeA_component_statuses(const QuiverSetting& s, const LiftSpec& spec);
// Coordinate on C_i of a point lying on C_i (away from C_{i+1}).
Cyclo typeA_component_coordinate(const QuiverSetting& s, const ExactPoint& p, int i);

struct PreimageDivisor {
    GammaType gamma;
    std::string case_label;
    Poly equation{xyz_vars()};          // defining function when the fixed locus is principal
    bool principal = true;
    FixedPointConfiguration config;
    std::vector<int> b;
    std::vector<long> a;                 // by vertex
    std::optional<bool> reduced;         // empty when undetermined
    bool generically_reduced = false;
    std::string note;
};

// Throws std::invalid_argument for an unknown case.
PreimageDivisor divisor_description(const GammaType& g, const std::string& case_label);

nlohmann::json divisor_to_json(const PreimageDivisor& d);
std::string divisor_to_dot(const PreimageDivisor& d);

// Chart U_i of the type A resolution: (x,y,z) = (u^{n-i} v^{n-i+1}, u^{i+1} v^i, u v), i = 0..n.
std::array<Poly, 3> typeA_chart(int n, int i);

struct ChartOrders {
    std::vector<int> from_v;  // v_i-order in chart i, by vertex
    std::vector<int> from_u;  // u_{i-1}-order in chart i-1, by vertex
    std::vector<int> orders;  // agreed order along C_i, by vertex
};
// Throws std::runtime_error when adjacent charts disagree or f pulls back to zero.
ChartOrders typeA_chart_pullback(int n, const Poly& f);

}  // namespace kln
