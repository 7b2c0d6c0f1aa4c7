#include "omsim/linearized.hpp"

#include <cmath>

namespace omsim {

DriftMatrix build_drift_matrix(const SystemParams& params, const SteadyStateBranch& branch) {
    DriftMatrix dm;
    const double sqrt2 = std::sqrt(2.0);
    dm.x_quad = sqrt2 * branch.a_s.real();
    dm.y_quad = sqrt2 * branch.a_s.imag();

    const double G = branch.g_eff;
    const double dt = branch.delta_eff;
    dm.a << 0.0, params.omega_m, 0.0, 0.0,
        -branch.omega_m_eff, -params.gamma_m, -G * dm.x_quad, -G * dm.y_quad,
        G * dm.y_quad, 0.0, -params.kappa, dt,
        -G * dm.x_quad, 0.0, -dt, -params.kappa;
    return dm;
}

StabilityReport routh_hurwitz(const SystemParams& params, const SteadyStateBranch& branch) {
    const DriftMatrix dm = build_drift_matrix(params, branch);

    const double k = params.kappa;
    const double gm = params.gamma_m;
    const double wm = params.omega_m;
    const double wme = branch.omega_m_eff;
    const double dt = branch.delta_eff;
    const double G = branch.g_eff;
    const double k2d2 = k * k + dt * dt;
    const double quad2 = dm.x_quad * dm.x_quad + dm.y_quad * dm.y_quad;  // = 2 I
    const double c3 = 2.0 * k + gm;

    StabilityReport r;
    r.s1 = k2d2 + 2.0 * k * gm + wme * wm;
    r.s2 = k2d2 * gm + 2.0 * k * wme * wm;
    r.s3 = k2d2 * wme * wm - dt * wm * G * G * quad2;
    r.cond4 = c3 * r.s1 > r.s2;
    r.cond5 = r.s1 * r.s2 * c3 > r.s2 * r.s2 + c3 * c3 * r.s3;
    r.rh_stable = r.s1 > 0.0 && r.s2 > 0.0 && r.s3 > 0.0 && r.cond4 && r.cond5;

    const Eigen::EigenSolver<Eigen::Matrix4d> solver(dm.a, /*computeEigenvectors=*/false);
    r.max_re_eigenvalue = solver.eigenvalues().real().maxCoeff();
    r.eig_stable = r.max_re_eigenvalue < 0.0;
    r.marginal = std::abs(r.max_re_eigenvalue) <= 1e-6 * params.omega_m;
    return r;
}

void annotate_stability(const SystemParams& params, std::span<SteadyStateBranch> branches) {
    for (auto& b : branches) b.stable = routh_hurwitz(params, b).eig_stable;
}

}  // namespace omsim
