#include "omsim/params.hpp"

#include <cmath>

#include "omsim/constants.hpp"

namespace omsim {

namespace {
constexpr double kTwoPi = constants::two_pi;
}

SystemParams SystemParams::from_hz(double kappa_hz, double omega_m_hz, double gamma_m_hz,
                                   double mass_kg, double g_l_hz, double g_q_ratio,
                                   double wavelength_nm, double temperature_k) {
    SystemParams p;
    p.kappa = kTwoPi * kappa_hz;
    p.omega_m = kTwoPi * omega_m_hz;
    p.gamma_m = kTwoPi * gamma_m_hz;
    p.mass = mass_kg;
    p.g_l = kTwoPi * g_l_hz;
    p.g_q_ratio = g_q_ratio;
    p.omega_p = kTwoPi * constants::c_light / (wavelength_nm * 1e-9);
    p.temperature = temperature_k;
    p.validate();
    return p;
}

double SystemParams::kappa_hz() const { return kappa / kTwoPi; }
double SystemParams::omega_m_hz() const { return omega_m / kTwoPi; }
double SystemParams::gamma_m_hz() const { return gamma_m / kTwoPi; }
double SystemParams::g_l_hz() const { return g_l / kTwoPi; }
double SystemParams::wavelength_nm() const {
    return kTwoPi * constants::c_light / omega_p * 1e9;
}

void SystemParams::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("SystemParams: ") + what);
    };
    require(kappa > 0.0, "kappa must be > 0");
    require(omega_m > 0.0, "omega_m must be > 0");
    require(gamma_m > 0.0, "gamma_m must be > 0");
    require(mass > 0.0, "mass must be > 0");
    require(omega_p > 0.0, "pump frequency must be > 0");
    require(temperature >= 0.0, "temperature must be >= 0");
    require(std::isfinite(g_l) && std::isfinite(g_q_ratio), "couplings must be finite");
}

double drive_amplitude(const SystemParams& params, const DriveConfig& drive) {
    if (drive.power < 0.0) throw std::domain_error("drive_amplitude: negative pump power");
    return std::sqrt(2.0 * params.kappa * drive.power /
                     (constants::hbar * params.omega_p));
}

double thermal_photon_number(const SystemParams& params) {
    if (params.temperature <= 0.0) return 0.0;
    const double x = constants::hbar * params.omega_p /
                     (constants::k_B * params.temperature);
    // exp(x) overflows long before the occupation matters; 1/expm1 underflows
    // smoothly to zero otherwise.
    if (x > 700.0) return 0.0;
    return 1.0 / std::expm1(x);
}

NoiseModel make_noise_model(const SystemParams& params) {
    NoiseModel nm;
    nm.n_a = thermal_photon_number(params);
    nm.n_m_proxy = params.temperature > 0.0
                       ? constants::k_B * params.temperature /
                             (constants::hbar * params.omega_m)
                       : 0.0;
    nm.coth_argument_convention = CothConvention::Half;
    return nm;
}

double omega_coth(double omega, double temperature, CothConvention convention) {
    if (temperature <= 0.0) return std::abs(omega);
    const double denom = convention == CothConvention::Half ? 2.0 : 1.0;
    const double scale = constants::hbar / (denom * constants::k_B * temperature);
    if (omega == 0.0) return 1.0 / scale;  // limit of w/tanh(s w)
    return omega / std::tanh(scale * omega);
}

}  // namespace omsim
