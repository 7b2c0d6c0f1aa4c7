#pragma once

#include <stdexcept>
#include <string>

namespace omsim {

/// Fixed physical parameters of the cavity + mechanical oscillator.
/// All frequencies are angular (rad/s); the factory converts from the
/// Hz values usually quoted for such setups. The quadratic coupling is
/// stored only as the ratio g_q/g_l, which is the natural sweep axis.
struct SystemParams {
    double kappa = 0.0;        // cavity amplitude decay rate, rad/s
    double omega_m = 0.0;      // mechanical frequency, rad/s
    double gamma_m = 0.0;      // mechanical damping rate, rad/s
    double mass = 0.0;         // effective oscillator mass, kg
    double g_l = 0.0;          // linear dispersive coupling, rad/s
    double g_q_ratio = 0.0;    // g_q / g_l, dimensionless
    double omega_p = 0.0;      // pump laser frequency, rad/s
    double temperature = 0.0;  // bath temperature, K

    double g_q() const { return g_q_ratio * g_l; }

    /// True in the resolved-sideband regime omega_m > kappa. Violation is
    /// reportable, not an error.
    bool resolved_sideband() const { return omega_m > kappa; }

    /// Build from the conventional tabulated values (frequencies as nu = omega/2pi,
    /// pump given by vacuum wavelength). Throws std::invalid_argument on
    /// nonpositive rates/mass or negative temperature.
    static SystemParams from_hz(double kappa_hz, double omega_m_hz, double gamma_m_hz,
                                double mass_kg, double g_l_hz, double g_q_ratio,
                                double wavelength_nm, double temperature_k);

    // Read-back in Hz (lossless to 1 ulp against from_hz inputs).
    double kappa_hz() const;
    double omega_m_hz() const;
    double gamma_m_hz() const;
    double g_l_hz() const;
    double wavelength_nm() const;

    void validate() const;  // throws std::invalid_argument
};

/// Operating point of the pump drive.
struct DriveConfig {
    double power = 0.0;     // input pump power, W (>= 0)
    double detuning = 0.0;  // Delta = omega_c - omega_p, rad/s
};

/// Argument convention for the thermal coth factor.
enum class CothConvention {
    Half,  // coth(hbar w / 2 kB T)  -- the physical Brownian correlation
    Full,  // coth(hbar w / kB T)    -- kept only to reproduce a published variant
};

/// Thermal occupation bookkeeping for the two noise channels.
struct NoiseModel {
    double n_a = 0.0;        // mean thermal photon number at the optical frequency
    double n_m_proxy = 0.0;  // kB T / (hbar omega_m), diagnostics only
    CothConvention coth_argument_convention = CothConvention::Half;
};

/// Pump amplitude epsilon = sqrt(2 kappa P / (hbar omega_p)), in 1/s.
/// Throws std::domain_error for negative power.
double drive_amplitude(const SystemParams& params, const DriveConfig& drive);

/// Bose-Einstein occupation at the pump/cavity frequency. Underflows to 0
/// for optical frequencies at cryogenic temperatures; returns 0 at T = 0.
double thermal_photon_number(const SystemParams& params);

NoiseModel make_noise_model(const SystemParams& params);

/// omega * coth(hbar omega / (2 kB T)) with the exact limits
/// omega -> 0:  2 kB T / hbar,   T -> 0:  |omega|.
double omega_coth(double omega, double temperature,
                  CothConvention convention = CothConvention::Half);

}  // namespace omsim
