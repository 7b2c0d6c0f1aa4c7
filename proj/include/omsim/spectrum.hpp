#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "omsim/params.hpp"
#include "omsim/steady_state.hpp"

namespace omsim {

/// Frequency-domain transfer coefficients of the position fluctuation:
/// dx(w) = [x_a a_in(w) + x_a_dag a_in^dag(w) - x_xi xi(w)] / d_omega.
struct TransferCoefficients {
    std::complex<double> d_omega;  // quartic characteristic denominator D(w)
    std::complex<double> x_a;      // radiation-pressure channel
    std::complex<double> x_a_dag;  // = conj(x_a(-w))
    std::complex<double> x_xi;     // thermal (Brownian) channel
};

TransferCoefficients transfer_coefficients(const SystemParams& params,
                                           const SteadyStateBranch& branch, double omega);

enum class SpectrumMethod {
    AnalyticEq10Corrected,  // closed form, |D|^2 denominator, coth(hw/2kT), squared detuning term
    AnalyticEq10AsPrinted,  // the published variant, kept verbatim for comparison plots
    TransferAssembly,       // assembled from the transfer coefficients + noise correlations
    MatrixOracle,           // 4x4 frequency-domain solve of the linearized system
};

const char* to_string(SpectrumMethod method);

class SingularSystemError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Radiation-pressure and thermal contributions to the symmetrized S_xx.
struct SpectrumChannels {
    double radiation = 0.0;
    double thermal = 0.0;
    double total() const { return radiation + thermal; }
};

/// Channel breakdown assembled from transfer coefficients (Eq-level algebra).
SpectrumChannels s_xx_channels_assembly(const SystemParams& params,
                                        const SteadyStateBranch& branch, double omega);

/// Channel breakdown from the brute-force frequency-domain solve
/// (-i w Id - A) u(w) = noise, one channel at a time. Fully independent of
/// the transfer-coefficient formulas. Throws SingularSystemError at
/// marginally stable points.
SpectrumChannels s_xx_channels_oracle(const SystemParams& params,
                                      const SteadyStateBranch& branch, double omega);

/// Symmetrized position-fluctuation spectral density at a single frequency.
double s_xx(const SystemParams& params, const SteadyStateBranch& branch, double omega,
            SpectrumMethod method = SpectrumMethod::AnalyticEq10Corrected);

struct SpectrumResult {
    std::vector<double> frequencies;  // rad/s, as passed in
    std::vector<double> s_xx;
    SpectrumMethod method = SpectrumMethod::AnalyticEq10Corrected;
};

/// Evaluate over a frequency grid (order preserved).
SpectrumResult sample_spectrum(const SystemParams& params, const SteadyStateBranch& branch,
                               const std::vector<double>& omegas,
                               SpectrumMethod method = SpectrumMethod::AnalyticEq10Corrected);

/// Default plotting grid: 4001 uniform points over [0.9, 1.1] omega_m.
std::vector<double> default_nms_grid(const SystemParams& params);

/// Uniform grid over [lo, hi] * omega_m.
std::vector<double> frequency_grid(const SystemParams& params, double lo, double hi, int points);

}  // namespace omsim
