#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "omsim/params.hpp"

namespace omsim {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raw configuration values, matching the parameter-file schema one to one.
/// Figure runners override individual fields (power, coupling ratio) before
/// resolving to SystemParams/DriveConfig.
struct ConfigValues {
    double kappa_hz = 0.0;
    double omega_m_hz = 0.0;
    double gamma_m_hz = 0.0;
    double mass_kg = 0.0;
    double g_l_hz = 0.0;
    double g_q_ratio = 0.0;
    double wavelength_nm = 0.0;
    double temperature_k = 0.0;
    double power_mw = 0.0;
    double detuning_over_omega_m = 0.0;

    SystemParams params() const;
    DriveConfig drive() const;  // needs params() for the omega_m scale
};

/// Valid keys of the JSON parameter file, in canonical order.
const std::vector<std::string>& config_keys();

/// Load and validate a JSON parameter file. All keys are required, all
/// values must be numbers, unknown keys are rejected. Errors name the
/// offending key and list the valid ones.
ConfigValues load_config(const std::filesystem::path& file);

/// Apply "key=value" overrides (the CLI --set flag). Unknown keys or
/// malformed values raise ConfigError listing the valid keys.
ConfigValues apply_overrides(ConfigValues base, const std::vector<std::string>& overrides);

/// Canonical serialization (fixed key order, %.17g values).
std::string canonical_string(const ConfigValues& values);

/// FNV-1a hash of the canonical serialization, as fixed-width hex.
std::string config_hash(const ConfigValues& values);

}  // namespace omsim
