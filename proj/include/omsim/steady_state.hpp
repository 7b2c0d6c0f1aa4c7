#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "omsim/params.hpp"

namespace omsim {

/// One self-consistent mean-field solution and the effective quantities
/// derived from it. `stable` is filled by the stability analysis, not here.
struct SteadyStateBranch {
    double x_s = 0.0;                      // dimensionless position mean
    double p_s = 0.0;                      // dimensionless momentum mean (always 0)
    std::complex<double> a_s{0.0, 0.0};    // field amplitude
    double intensity = 0.0;                // I = |a_s|^2
    double delta_eff = 0.0;                // Delta + g_l x_s + g_q x_s^2, rad/s
    double omega_m_eff = 0.0;              // omega_m + 2 g_q I, rad/s
    double g_eff = 0.0;                    // g_l + 2 g_q x_s, rad/s
    double spring_ratio = 1.0;             // omega_m_eff / omega_m
    bool stable = false;
};

/// Real polynomial with ascending coefficients c[0] + c[1] I + ...
struct RealPolynomial {
    std::vector<double> coeffs;
    double eval(double x) const {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    /// Degree after trimming near-zero leading coefficients.
    int degree() const;
};

/// Why a candidate polynomial root was not turned into a branch.
struct RejectedRoot {
    std::complex<double> root;  // in intensity units
    std::string reason;         // "complex", "negative", "singular-denominator", ...
};

struct SteadyStateDiagnostics {
    std::vector<std::complex<double>> raw_roots;  // all companion-matrix roots
    std::vector<RejectedRoot> rejected;
};

class NoSteadyStateError : public std::runtime_error {
  public:
    explicit NoSteadyStateError(SteadyStateDiagnostics diag);
    const SteadyStateDiagnostics& diagnostics() const { return diag_; }

  private:
    SteadyStateDiagnostics diag_;
};

/// Polynomial P(I) whose nonnegative real roots (with nonvanishing
/// denominator omega_m + 2 g_q I) are the steady-state intensities:
/// the rationalization of I (kappa^2 + delta_eff(I)^2) = eps^2 with
/// x_s(I) = -g_l I / (omega_m + 2 g_q I). Degree 5 in general, the familiar
/// bistability cubic when g_q = 0.
RealPolynomial steady_state_polynomial(const SystemParams& params, const DriveConfig& drive);

/// All physical steady-state branches, sorted by intensity ascending.
/// Branches with complex or negative intensity, or with a (near-)singular
/// denominator, are filtered; pass `diag` to inspect what was dropped.
/// Throws NoSteadyStateError when nothing physical remains.
std::vector<SteadyStateBranch> solve_steady_states(const SystemParams& params,
                                                   const DriveConfig& drive,
                                                   SteadyStateDiagnostics* diag = nullptr);

/// Many-photon coupling rate G_eff * |a_s| in rad/s.
double effective_coupling(const SteadyStateBranch& branch);

/// Residual of the radiation-pressure balance I (kappa^2 + delta_eff^2) = eps^2,
/// relative to eps^2 (0 for eps = 0). Used by tests and by the solver itself.
double steady_state_residual(const SystemParams& params, const DriveConfig& drive,
                             const SteadyStateBranch& branch);

}  // namespace omsim
