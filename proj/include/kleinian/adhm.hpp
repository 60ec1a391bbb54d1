#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kleinian/quiver.hpp"

namespace kln {

struct SolveOptions {
    std::uint64_t seed = 1;
    int max_iterations = 200;
    double residual_tolerance = 1e-10;  // on the 2-norm of all mu entries
    double identity_tolerance = 1e-8;   // relative to max(1, largest term)
    double initial_trust_radius = 1e4;
    int restarts = 4;
    double rank_threshold = 1e-7;       // relative singular-value cutoff
};

struct IdentityCheck {
    std::string name;
    double residual = 0, scale = 1;
    bool pass = false;
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;
    bool ok() const;
};

struct SolveResult {
    FloatPoint point;
    double residual = 0;
    bool converged = false;
    bool semistable = false;
    int iterations = 0;
    int attempts = 0;
    IdentityReport identities;
    bool success() const { return converged && semistable; }
};

// Real unknowns: real and imaginary parts of every entry of every B_a, then every B_a*.
int adhm_parameter_count(const QuiverSetting& s);
int adhm_residual_count(const QuiverSetting& s);
Eigen::VectorXd pack_point(const QuiverSetting& s, const FloatPoint& p);
// l0 = e_1 and k0 = 0.
FloatPoint unpack_point(const QuiverSetting& s, const Eigen::VectorXd& x);

// Real and imaginary parts of all mu_i entries, and optionally the analytic Jacobian.
void adhm_residual(const QuiverSetting& s, const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* jac);

// Closure of im(l0) with numerical rank at threshold rel_threshold * (largest singular value).
bool is_semistable_float(const QuiverSetting& s, const FloatPoint& p, double rel_threshold = 1e-7);

IdentityReport check_identities(const QuiverSetting& s, const FloatPoint& p, double tol);

// Levenberg-Marquardt from a random complex Gaussian start; retries up to opts.restarts times.
SolveResult solve_adhm(const QuiverSetting& s, const SolveOptions& opts);
// Same, from a given start vector (no restarts).
SolveResult solve_adhm_from(const QuiverSetting& s, const Eigen::VectorXd& start, const SolveOptions& opts);

nlohmann::json identity_report_json(const IdentityReport& r);

}  // namespace kln
