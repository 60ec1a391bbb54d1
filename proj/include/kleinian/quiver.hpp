#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "kleinian/groups.hpp"
#include "kleinian/matrix.hpp"

namespace kln {

struct Arrow {
    int tail = 0, head = 0;
    std::string name() const;  // "h<-t"
};

// Extended Dynkin quiver with framing w = (1,0,...,0) at vertex 0.
struct QuiverSetting {
    GammaType gamma;
    std::vector<int> delta;     // dimension vector, delta[0] = 1
    std::vector<Arrow> arrows;  // the orientation Omega

    int vertices() const { return (int)delta.size(); }
    int find_arrow(int tail, int head) const;  // throws if absent
    int find_arrow(const std::string& name) const;
};

QuiverSetting build_setting(const GammaType& g);

// Letter of a path in the doubled quiver. B_a maps V_t -> V_h, its star V_h -> V_t.
struct Letter {
    int arrow = 0;
    bool star = false;
};
// Product of letters read left to right as matrices, as in B*_{0<-1} B_{1<-0}.
using Word = std::vector<Letter>;

template <class T>
struct PointT {
    std::vector<Mat<T>> B, Bs;  // indexed by arrow
    Mat<T> l0, k0;              // delta_0 x 1 and 1 x delta_0
};
using ExactPoint = PointT<Cyclo>;
using FloatPoint = PointT<Complex>;

template <class T>
PointT<T> zero_point(const QuiverSetting& s);
// Throws std::invalid_argument on a shape mismatch.
template <class T>
void check_shapes(const QuiverSetting& s, const PointT<T>& p);
template <class T>
bool points_equal(const PointT<T>& p, const PointT<T>& q, double tol = 0);

// mu_i = sum_{h(a)=i} B_a B_a* - sum_{t(a)=i} B_a* B_a + delta_{i0} l0 k0.
template <class T>
std::vector<Mat<T>> moment_map(const QuiverSetting& s, const PointT<T>& p);

template <class T>
T symplectic_pairing(const QuiverSetting& s, const PointT<T>& p, const PointT<T>& q);

// g.B_a = g_h B_a g_t^{-1}, g.B_a* = g_t B_a* g_h^{-1}, g.l0 = g_0 l0, g.k0 = k0 g_0^{-1}.
template <class T>
PointT<T> gauge_act(const QuiverSetting& s, const std::vector<Mat<T>>& g, const PointT<T>& p);

// t.(B, B*, l0, k0) = t^{-1}(B, B*, l0, k0).
template <class T>
PointT<T> scale_point(const PointT<T>& p, const T& t);

template <class T>
Mat<T> word_matrix(const QuiverSetting& s, const PointT<T>& p, const Word& w);
template <class T>
T trace_word(const QuiverSetting& s, const PointT<T>& p, const Word& w);
int omega_letters(const Word& w);

// Smallest (B,B*)-stable family containing im(l0) is all of V.
bool is_semistable(const QuiverSetting& s, const ExactPoint& p);
// Vertices i >= 1 where the outgoing doubled map V_i -> sum V_h(a) drops rank.
// Throws std::invalid_argument for an unstable point or k0 != 0.
std::vector<int> exceptional_membership(const QuiverSetting& s, const ExactPoint& p);
std::vector<int> exceptional_membership(const QuiverSetting& s, const FloatPoint& p, double tol);

struct TraceWords {
    Word x, y, z;
    std::vector<std::pair<std::string, Word>> aux;
};
TraceWords trace_words(const QuiverSetting& s);

template <class T>
struct Traces {
    T x{0}, y{0}, z{0};
    std::map<std::string, T> aux;
};
template <class T>
Traces<T> trace_generators(const QuiverSetting& s, const PointT<T>& p);

// Residual lhs - rhs of one identity that holds on the zero fibre; scale is max(1, largest term).
template <class T>
struct Identity {
    std::string name;
    T residual{0};
    double scale = 1;
};
// Surface relation and the auxiliary identities of the type.
template <class T>
std::vector<Identity<T>> trace_identities(const QuiverSetting& s, const PointT<T>& p);

struct LiftSpec {
    GammaType gamma;
    std::string case_label;     // "I", "II", "III", or "id"
    Cyclo twist_B{1}, twist_Bs{1};
    bool swap_dual = false;     // B_a <- B*_{sigma(a)} with the arrow reversed by tau
    std::vector<int> tau;       // vertex permutation of the extended diagram
    int framing_sign = 1;       // k0 -> framing_sign * k0
    std::vector<Cyclo> square_gauge;  // scalar gauge g with lift^2 = g, empty for identity

    // +1 when symplectic, -1 when anti-symplectic.
    int symplectic_sign() const;
};

LiftSpec identity_lift(const GammaType& g);
// Throws std::invalid_argument for a case the type does not have.
LiftSpec lift_catalog(const GammaType& g, const std::string& case_label);
std::vector<LiftSpec> lift_catalog(const GammaType& g);

template <class T>
PointT<T> apply_lift(const QuiverSetting& s, const LiftSpec& spec, const PointT<T>& p);

struct LiftReport {
    bool moment_relation = true;   // mu(Theta u) = sign * mu(u) permuted by tau
    bool symplectic_relation = true;
    bool traces_match = true;      // x,y,z of Theta u equal theta(x,y,z), on samples with mu = 0
    int trace_samples = 0;
    bool parity_checked = false;
    bool parity = true;            // half-degree sign prediction
    bool involutive = true;        // exactly, or up to the listed scalar gauge
    double max_residual = 0;
    std::vector<std::string> failures;
    bool ok() const { return moment_relation && symplectic_relation && traces_match && parity && involutive; }
};

template <class T>
LiftReport verify_lift(const LiftSpec& spec, const QuiverSetting& s, const std::vector<PointT<T>>& samples,
                       double tol = 0);

// Points of the zero fibre that are known in closed form.
ExactPoint tabulated_point(const QuiverSetting& s, int which);        // E7, E8; which = 1, 2
ExactPoint typeA_family_point(const QuiverSetting& s, const Cyclo& t);  // B = 1, B* = t
// Type A point on C_i: B_{j+1<-j} = 1 for j < i, B*_{j<-j+1} = 1 for j > i, B*_{i<-i+1} = c.
ExactPoint typeA_component_point(const QuiverSetting& s, int i, const Cyclo& c);

ExactPoint random_exact_point(const QuiverSetting& s, std::mt19937_64& rng, int bound = 5);
std::vector<Mat<Cyclo>> random_gauge(const QuiverSetting& s, std::mt19937_64& rng, int bound = 3);

FloatPoint to_float(const ExactPoint& p);

// Entries as "p/q" strings (or {"order", "coeffs"} objects), doubles for float points.
nlohmann::json point_to_json(const QuiverSetting& s, const ExactPoint& p);
nlohmann::json point_to_json(const QuiverSetting& s, const FloatPoint& p);
ExactPoint exact_point_from_json(const QuiverSetting& s, const nlohmann::json& j);
FloatPoint float_point_from_json(const QuiverSetting& s, const nlohmann::json& j);

}  // namespace kln
