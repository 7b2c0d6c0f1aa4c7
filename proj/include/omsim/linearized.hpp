#pragma once

#include <Eigen/Dense>
#include <span>

#include "omsim/params.hpp"
#include "omsim/steady_state.hpp"

namespace omsim {

/// Drift matrix of the linearized fluctuation dynamics in the basis
/// (dx, dp, dX, dY), with the steady-state field quadratures it was built
/// from. du/dt = a * u + noise.
struct DriftMatrix {
    Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
    double x_quad = 0.0;  // X_s = (a_s + a_s*) / sqrt(2)
    double y_quad = 0.0;  // Y_s = (a_s - a_s*) / (i sqrt(2))
};

DriftMatrix build_drift_matrix(const SystemParams& params, const SteadyStateBranch& branch);

/// Routh-Hurwitz scalars and verdicts for one branch, cross-checked against
/// the eigenvalues of the drift matrix. The eigenvalue verdict is the ground
/// truth; the algebraic conditions are kept alongside it.
struct StabilityReport {
    double s1 = 0.0;  // (k^2+Dt^2) + 2 k gm + wme wm
    double s2 = 0.0;  // (k^2+Dt^2) gm + 2 k wme wm
    double s3 = 0.0;  // (k^2+Dt^2) wme wm - Dt wm G^2 (Xs^2 + Ys^2)
    bool cond4 = false;  // (2k+gm) s1 > s2
    bool cond5 = false;  // s1 s2 (2k+gm) > s2^2 + (2k+gm)^2 s3
    bool rh_stable = false;
    double max_re_eigenvalue = 0.0;  // rad/s
    bool eig_stable = false;
    bool marginal = false;  // |max_re_eigenvalue| <= 1e-6 * omega_m
};

StabilityReport routh_hurwitz(const SystemParams& params, const SteadyStateBranch& branch);

/// Fill `stable` on each branch with the eigenvalue verdict.
void annotate_stability(const SystemParams& params, std::span<SteadyStateBranch> branches);

}  // namespace omsim
