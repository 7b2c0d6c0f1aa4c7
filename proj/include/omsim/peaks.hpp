#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "omsim/params.hpp"
#include "omsim/steady_state.hpp"

namespace omsim {

/// Zeros of the quartic D(w) arranged into the two mode pairs. Positions are
/// the magnitudes of the root real parts; gamma_plus/gamma_minus are the full
/// widths of the associated Lorentzians, i.e. the summed |Im| over each pair,
/// so that gamma_plus + gamma_minus = 2 kappa + gamma_m exactly (Vieta).
struct NmsPeaks {
    double omega_plus = 0.0;   // rad/s, omega_plus >= omega_minus
    double omega_minus = 0.0;  // rad/s
    double gamma_plus = 0.0;   // rad/s
    double gamma_minus = 0.0;  // rad/s
    bool resolved = false;     // omega_plus - omega_minus > (gamma_plus + gamma_minus)/2
    std::array<std::complex<double>, 4> raw_roots{};  // sorted by (Re, Im)
};

class DegenerateQuarticError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class RootClassificationError : public std::runtime_error {
  public:
    RootClassificationError(std::string what, std::array<std::complex<double>, 4> roots)
        : std::runtime_error(std::move(what)), raw_roots(roots) {}
    std::array<std::complex<double>, 4> raw_roots;
};

class ImaginaryFrequencyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Roots of c[0] + c[1] w + ... + c[4] w^4, sorted by (Re, Im). Throws
/// DegenerateQuarticError when the leading coefficient (relative to the
/// largest one) vanishes.
std::array<std::complex<double>, 4> quartic_roots(
    const std::array<std::complex<double>, 5>& coeffs);

/// Ascending coefficients of D(w) for a branch:
/// D(w) = -w^4 - i(2k+gm) w^3 + s1 w^2 + i s2 w - s3.
std::array<std::complex<double>, 5> d_polynomial_coefficients(const SystemParams& params,
                                                              const SteadyStateBranch& branch);

/// Peak positions/widths from the exact zeros of D(w). Throws
/// RootClassificationError if the four roots cannot be grouped into two
/// mirrored pairs (w, -conj(w)).
NmsPeaks exact_peaks(const SystemParams& params, const SteadyStateBranch& branch);

/// Closed-form peak positions from the undamped avoided-crossing formula,
/// w_pm^2 = (w_a^2 + w_b^2)/2 +- sqrt((w_a^2 - w_b^2)^2 + 8 wm I G^2 Dt)/2
/// with w_a^2 = k^2 + Dt^2 and w_b^2 = wm * wme. Throws
/// ImaginaryFrequencyError when the radicand or a squared position is
/// negative (a sign of instability). The validity preconditions
/// k >> gm and Dt >> gm are reported as warnings, not failures.
struct ApproxPeaks {
    double omega_plus = 0.0;
    double omega_minus = 0.0;
    std::vector<std::string> warnings;
};

ApproxPeaks approx_peaks(const SystemParams& params, const SteadyStateBranch& branch);

/// Strong-coupling criterion G_eff |a_s| > kappa + gamma_m / 2.
bool nms_threshold(const SystemParams& params, const SteadyStateBranch& branch);

}  // namespace omsim
