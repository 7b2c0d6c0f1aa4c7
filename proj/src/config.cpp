#include "omsim/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>

#include <json.hpp>

namespace omsim {

namespace {

using FieldMap = std::map<std::string, double ConfigValues::*>;

const FieldMap& field_map() {
    static const FieldMap m = {
        {"kappa_hz", &ConfigValues::kappa_hz},
        {"omega_m_hz", &ConfigValues::omega_m_hz},
        {"gamma_m_hz", &ConfigValues::gamma_m_hz},
        {"mass_kg", &ConfigValues::mass_kg},
        {"g_l_hz", &ConfigValues::g_l_hz},
        {"g_q_ratio", &ConfigValues::g_q_ratio},
        {"wavelength_nm", &ConfigValues::wavelength_nm},
        {"temperature_k", &ConfigValues::temperature_k},
        {"power_mw", &ConfigValues::power_mw},
        {"detuning_over_omega_m", &ConfigValues::detuning_over_omega_m},
    };
    return m;
}

std::string valid_keys_hint() {
    std::string out = "valid keys are:";
    for (const auto& k : config_keys()) out += " " + k;
    return out;
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, ptr] : field_map()) k.push_back(name);
        return k;
    }();
    return keys;
}

SystemParams ConfigValues::params() const {
    try {
        return SystemParams::from_hz(kappa_hz, omega_m_hz, gamma_m_hz, mass_kg, g_l_hz,
                                     g_q_ratio, wavelength_nm, temperature_k);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

DriveConfig ConfigValues::drive() const {
    if (power_mw < 0.0) throw ConfigError("config: power_mw must be >= 0");
    DriveConfig d;
    d.power = power_mw * 1e-3;
    d.detuning = detuning_over_omega_m * params().omega_m;
    return d;
}

ConfigValues load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("config: cannot open '" + file.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config: parse error in '" + file.string() + "': " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");

    ConfigValues values;
    for (const auto& [key, val] : j.items()) {
        auto it = field_map().find(key);
        if (it == field_map().end())
            throw ConfigError("config: unknown key '" + key + "'; " + valid_keys_hint());
        if (!val.is_number())
            throw ConfigError("config: key '" + key + "' must be a number");
        values.*(it->second) = val.get<double>();
    }
    for (const auto& [key, ptr] : field_map()) {
        if (!j.contains(key))
            throw ConfigError("config: missing key '" + key + "'");
    }
    return values;
}

ConfigValues apply_overrides(ConfigValues base, const std::vector<std::string>& overrides) {
    for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("override '" + kv + "' is not of the form key=value");
        const std::string key = kv.substr(0, eq);
        const std::string value = kv.substr(eq + 1);
        auto it = field_map().find(key);
        if (it == field_map().end())
            throw ConfigError("override: unknown key '" + key + "'; " + valid_keys_hint());
        std::size_t consumed = 0;
        double parsed = 0.0;
        try {
            parsed = std::stod(value, &consumed);
        } catch (const std::exception&) {
            throw ConfigError("override: value for '" + key + "' is not a number: '" + value + "'");
        }
        if (consumed != value.size())
            throw ConfigError("override: value for '" + key + "' is not a number: '" + value + "'");
        base.*(it->second) = parsed;
    }
    return base;
}

std::string canonical_string(const ConfigValues& values) {
    std::string out;
    char buf[64];
    for (const auto& [key, ptr] : field_map()) {
        std::snprintf(buf, sizeof(buf), "%.17g", values.*ptr);
        out += key;
        out += '=';
        out += buf;
        out += ';';
    }
    return out;
}

std::string config_hash(const ConfigValues& values) {
    const std::string s = canonical_string(values);
    std::uint64_t hash = 1469598103934665603ull;  // FNV-1a 64-bit
    for (unsigned char c : s) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace omsim
