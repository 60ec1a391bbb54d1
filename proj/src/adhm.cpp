#include "kleinian/adhm.hpp"

#include <random>

#include <ceres/tiny_solver.h>

namespace kln {

bool IdentityReport::ok() const {
    for (auto& c : checks)
        if (!c.pass) return false;
    return true;
}

int adhm_parameter_count(const QuiverSetting& s) {
    int c = 0;
    for (auto& a : s.arrows) c += 2 * s.delta[a.head] * s.delta[a.tail];
    return 2 * c;
}

int adhm_residual_count(const QuiverSetting& s) {
    int c = 0;
    for (int d : s.delta) c += d * d;
    return 2 * c;
}

Eigen::VectorXd pack_point(const QuiverSetting& s, const FloatPoint& p) {
    check_shapes(s, p);
    Eigen::VectorXd x(adhm_parameter_count(s));
    int k = 0;
    for (auto* list : {&p.B, &p.Bs})
        for (auto& m : *list)
            for (auto& e : m.a) {
                x[k++] = e.real();
                x[k++] = e.imag();
            }
    return x;
}

FloatPoint unpack_point(const QuiverSetting& s, const Eigen::VectorXd& x) {
    if (x.size() != adhm_parameter_count(s)) throw std::invalid_argument("parameter vector has the wrong length");
    FloatPoint p = zero_point<Complex>(s);
    int k = 0;
    for (auto* list : {&p.B, &p.Bs})
        for (auto& m : *list)
            for (auto& e : m.a) {
                e = Complex(x[k], x[k + 1]);
                k += 2;
            }
    p.l0(0, 0) = 1.0;
    return p;
}

void adhm_residual(const QuiverSetting& s, const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
    FloatPoint p = unpack_point(s, x);
    auto mu = moment_map(s, p);
    std::vector<int> offset(s.vertices() + 1, 0);
    for (int i = 0; i < s.vertices(); ++i) offset[i + 1] = offset[i] + 2 * s.delta[i] * s.delta[i];
    r.resize(offset.back());
    for (int i = 0; i < s.vertices(); ++i)
        for (size_t e = 0; e < mu[i].a.size(); ++e) {
            r[offset[i] + 2 * e] = mu[i].a[e].real();
            r[offset[i] + 2 * e + 1] = mu[i].a[e].imag();
        }
    if (!jac) return;
    jac->setZero(r.size(), x.size());
    // Complex derivative D of mu_v(row, col) with respect to the unknown at real column k.
    auto put = [&](int v, int row, int col, int k, Complex D) {
        int res = offset[v] + 2 * (row * s.delta[v] + col);
        (*jac)(res, k) += D.real();
        (*jac)(res + 1, k) += D.imag();
        (*jac)(res, k + 1) -= D.imag();
        (*jac)(res + 1, k + 1) += D.real();
    };
    int k = 0;
    for (size_t a = 0; a < s.arrows.size(); ++a) {
        int t = s.arrows[a].tail, h = s.arrows[a].head;
        const auto& Bs = p.Bs[a];
        for (int rr = 0; rr < s.delta[h]; ++rr)
            for (int cc = 0; cc < s.delta[t]; ++cc, k += 2) {
                // mu_h += B B*: row rr gains Bs(cc, .); mu_t -= B* B: column cc loses Bs(., rr).
                for (int j = 0; j < s.delta[h]; ++j) put(h, rr, j, k, Bs(cc, j));
                for (int j = 0; j < s.delta[t]; ++j) put(t, j, cc, k, -Bs(j, rr));
            }
    }
    for (size_t a = 0; a < s.arrows.size(); ++a) {
        int t = s.arrows[a].tail, h = s.arrows[a].head;
        const auto& B = p.B[a];
        for (int rr = 0; rr < s.delta[t]; ++rr)
            for (int cc = 0; cc < s.delta[h]; ++cc, k += 2) {
                // mu_h += B B*: column cc gains B(., rr); mu_t -= B* B: row rr loses B(cc, .).
                for (int j = 0; j < s.delta[h]; ++j) put(h, j, cc, k, B(j, rr));
                for (int j = 0; j < s.delta[t]; ++j) put(t, rr, j, k, -B(cc, j));
            }
    }
}

namespace {

using CMat = Eigen::MatrixXcd;

CMat to_eigen(const Mat<Complex>& m) {
    CMat e(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) e(i, j) = m(i, j);
    return e;
}

// Orthonormal basis of the column space at a relative singular-value cutoff.
CMat column_basis(const CMat& m, double rel) {
    if (m.cols() == 0) return CMat(m.rows(), 0);
    Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinU);
    auto sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] == 0) return CMat(m.rows(), 0);
    int r = 0;
    while (r < sv.size() && sv[r] > rel * sv[0]) ++r;
    return svd.matrixU().leftCols(r);
}

struct Residual {
    typedef double Scalar;
    enum { NUM_RESIDUALS = Eigen::Dynamic, NUM_PARAMETERS = Eigen::Dynamic };
    const QuiverSetting* s;
    int NumResiduals() const { return adhm_residual_count(*s); }
    int NumParameters() const { return adhm_parameter_count(*s); }
    bool operator()(const double* params, double* residuals, double* jacobian) const {
        Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(params, NumParameters()), r;
        Eigen::MatrixXd J;
        adhm_residual(*s, x, r, jacobian ? &J : nullptr);
        Eigen::Map<Eigen::VectorXd>(residuals, r.size()) = r;
        if (jacobian) Eigen::Map<Eigen::MatrixXd>(jacobian, J.rows(), J.cols()) = J;
        return true;
    }
};

}  // namespace

bool is_semistable_float(const QuiverSetting& s, const FloatPoint& p, double rel_threshold) {
    check_shapes(s, p);
    std::vector<CMat> span(s.vertices());
    for (int i = 0; i < s.vertices(); ++i) span[i] = CMat(s.delta[i], 0);
    span[0] = column_basis(to_eigen(p.l0), rel_threshold);
    std::vector<CMat> B, Bs;
    for (size_t a = 0; a < s.arrows.size(); ++a) {
        B.push_back(to_eigen(p.B[a]));
        Bs.push_back(to_eigen(p.Bs[a]));
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t a = 0; a < s.arrows.size(); ++a)
            for (int dir = 0; dir < 2; ++dir) {
                int from = dir ? s.arrows[a].head : s.arrows[a].tail, to = dir ? s.arrows[a].tail : s.arrows[a].head;
                if (span[from].cols() == 0 || span[to].cols() == s.delta[to]) continue;
                CMat img = (dir ? Bs[a] : B[a]) * span[from];
                CMat both(s.delta[to], span[to].cols() + img.cols());
                both << span[to], img;
                CMat grown = column_basis(both, rel_threshold);
                if (grown.cols() > span[to].cols()) {
                    span[to] = grown;
                    changed = true;
                }
            }
    }
    for (int i = 0; i < s.vertices(); ++i)
        if (span[i].cols() != s.delta[i]) return false;
    return true;
}

IdentityReport check_identities(const QuiverSetting& s, const FloatPoint& p, double tol) {
    IdentityReport rep;
    for (auto& id : trace_identities(s, p)) {
        IdentityCheck c{id.name, std::abs(id.residual), id.scale, false};
        c.pass = c.residual <= tol * c.scale;
        rep.checks.push_back(c);
    }
    return rep;
}

namespace {

int run_lm(const QuiverSetting& s, Eigen::VectorXd& x, const SolveOptions& opts) {
    ceres::TinySolver<Residual> solver;
    solver.options.max_num_iterations = opts.max_iterations;
    solver.options.gradient_tolerance = 0;
    solver.options.parameter_tolerance = 1e-16;
    solver.options.cost_threshold = 0.5 * opts.residual_tolerance * opts.residual_tolerance * 1e-4;
    solver.options.initial_trust_region_radius = opts.initial_trust_radius;
    Residual f{&s};
    solver.Solve(f, &x);
    return solver.summary.iterations;
}

// Scale factor of the C* action taking the largest weighted trace |w|^(1/len w) to 1.
double normalizing_scale(const QuiverSetting& s, const Eigen::VectorXd& x) {
    FloatPoint p = unpack_point(s, x);
    TraceWords tw = trace_words(s);
    double m = 0;
    for (auto* w : {&tw.x, &tw.y, &tw.z})
        m = std::max(m, std::pow(std::abs(trace_word(s, p, *w)), 1.0 / (double)w->size()));
    return m > 0 ? 1.0 / m : 1.0;
}

// Gradient flow of sum |B_a|^2 + |B_a*|^2 along Hermitian gauge directions at vertices i >= 1.
// The orbit stays inside mu = 0 and traces are unchanged; small entries keep long words well conditioned.
void balance_gauge(const QuiverSetting& s, Eigen::VectorXd& x, int steps) {
    FloatPoint p = unpack_point(s, x);
    std::vector<CMat> B, Bs;
    for (size_t a = 0; a < s.arrows.size(); ++a) {
        B.push_back(to_eigen(p.B[a]));
        Bs.push_back(to_eigen(p.Bs[a]));
    }
    for (int it = 0; it < steps; ++it) {
        std::vector<CMat> M(s.vertices());
        std::vector<double> weight(s.vertices(), 0);
        for (int i = 0; i < s.vertices(); ++i) M[i] = CMat::Zero(s.delta[i], s.delta[i]);
        for (size_t a = 0; a < s.arrows.size(); ++a) {
            int t = s.arrows[a].tail, h = s.arrows[a].head;
            M[h] += B[a] * B[a].adjoint() - Bs[a].adjoint() * Bs[a];
            M[t] += Bs[a] * Bs[a].adjoint() - B[a].adjoint() * B[a];
            double w = B[a].squaredNorm() + Bs[a].squaredNorm();
            weight[h] += w;
            weight[t] += w;
        }
        double gap = 0, total = 0;
        for (int i = 1; i < s.vertices(); ++i) gap += M[i].squaredNorm();
        for (double w : weight) total += w;
        if (gap <= 1e-20 * total * total) break;
        std::vector<CMat> g(s.vertices()), ginv(s.vertices());
        for (int i = 0; i < s.vertices(); ++i) {
            if (i == 0 || weight[i] == 0) {
                g[i] = ginv[i] = CMat::Identity(s.delta[i], s.delta[i]);
                continue;
            }
            Eigen::SelfAdjointEigenSolver<CMat> es(M[i]);
            Eigen::VectorXd ev = (-0.25 / weight[i]) * es.eigenvalues();
            g[i] = es.eigenvectors() * ev.array().exp().matrix().asDiagonal() * es.eigenvectors().adjoint();
            ginv[i] = es.eigenvectors() * (-ev).array().exp().matrix().asDiagonal() * es.eigenvectors().adjoint();
        }
        for (size_t a = 0; a < s.arrows.size(); ++a) {
            int t = s.arrows[a].tail, h = s.arrows[a].head;
            B[a] = g[h] * B[a] * ginv[t];
            Bs[a] = g[t] * Bs[a] * ginv[h];
        }
    }
    for (size_t a = 0; a < s.arrows.size(); ++a)
        for (int i = 0; i < B[a].rows(); ++i)
            for (int j = 0; j < B[a].cols(); ++j) {
                p.B[a](i, j) = B[a](i, j);
                p.Bs[a](j, i) = Bs[a](j, i);
            }
    x = pack_point(s, p);
}

}  // namespace

SolveResult solve_adhm_from(const QuiverSetting& s, const Eigen::VectorXd& start, const SolveOptions& opts) {
    Eigen::VectorXd x = start, r;
    SolveResult out;
    out.iterations = run_lm(s, x, opts);
    // Zero is a solution, so LM drifts towards small points; rescale along the C* orbit and polish.
    adhm_residual(s, x, r, nullptr);
    if (r.norm() <= opts.residual_tolerance * 1e3) {
        x *= normalizing_scale(s, x);
        balance_gauge(s, x, 2000);
        out.iterations += run_lm(s, x, opts);
    }
    out.point = unpack_point(s, x);
    adhm_residual(s, x, r, nullptr);
    out.residual = r.norm();
    out.attempts = 1;
    out.converged = out.residual <= opts.residual_tolerance;
    out.semistable = is_semistable_float(s, out.point, opts.rank_threshold);
    if (out.converged) out.identities = check_identities(s, out.point, opts.identity_tolerance);
    return out;
}

SolveResult solve_adhm(const QuiverSetting& s, const SolveOptions& opts) {
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(2.0));
    SolveResult best;
    for (int attempt = 1; attempt <= std::max(1, opts.restarts); ++attempt) {
        Eigen::VectorXd x0(adhm_parameter_count(s));
        for (int k = 0; k < x0.size(); ++k) x0[k] = gauss(rng);
        SolveResult r = solve_adhm_from(s, x0, opts);
        r.attempts = attempt;
        if (attempt == 1 || r.residual < best.residual) best = r;
        if (r.success()) return r;
    }
    return best;
}

nlohmann::json identity_report_json(const IdentityReport& r) {
    nlohmann::json j = nlohmann::json::array();
    for (auto& c : r.checks)
        j.push_back({{"name", c.name}, {"residual", c.residual}, {"scale", c.scale}, {"pass", c.pass}});
    return j;
}

}  // namespace kln
