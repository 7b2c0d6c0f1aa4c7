#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "omsim/config.hpp"
#include "omsim/linearized.hpp"
#include "omsim/spectrum.hpp"
#include "omsim/steady_state.hpp"

namespace omsim {

/// One uniform sweep axis. Valid names: power_mw, gq_ratio,
/// detuning_over_omega_m, omega_over_omega_m.
struct SweepAxis {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    int points = 0;
    double value(int i) const {
        return points < 2 ? min : min + (max - min) * i / static_cast<double>(points - 1);
    }
};

/// Declarative 1D/2D sweep: axes plus the set of requested outputs
/// (subset of steady_state, stability, spectrum, peaks, photon_number,
/// effective_coupling). `spectrum` requires an omega_over_omega_m axis and
/// cannot be combined with other outputs.
struct SweepSpec {
    SweepAxis axis1;
    std::optional<SweepAxis> axis2;
    std::vector<std::string> outputs;
    void validate() const;  // throws ConfigError
};

struct RunOptions {
    SpectrumMethod method = SpectrumMethod::AnalyticEq10Corrected;
    bool oracle_columns = false;
};

/// A named CSV payload plus its sidecar metadata.
struct Dataset {
    std::string name;
    std::string csv;
    nlohmann::json meta;
};

/// One operating point with all branches solved and stability-annotated.
struct EvaluatedPoint {
    ConfigValues values;
    SystemParams params;
    DriveConfig drive;
    std::vector<SteadyStateBranch> branches;  // ascending intensity
    std::vector<StabilityReport> reports;
    bool no_steady_state = false;

    /// The branch an adiabatic power ramp from vacuum lands on: lowest
    /// intensity. Null when no steady state exists.
    const SteadyStateBranch* selected() const;
    const StabilityReport* selected_report() const;
    bool selected_stable() const;
};

EvaluatedPoint evaluate_operating_point(const ConfigValues& values);

/// Generic sweep runner used by the stability-map subcommand and tests.
Dataset run_sweep(const ConfigValues& base, const SweepSpec& spec, const RunOptions& opt);

/// Fixed datasets reproducing the published figures.
Dataset build_fig2(const ConfigValues& base, double power_mw, const RunOptions& opt,
                   double omega_lo = 0.9, double omega_hi = 1.1, int omega_points = 4001);
Dataset build_fig3(const ConfigValues& base);
Dataset build_fig4(const ConfigValues& base);
Dataset build_fig5(const ConfigValues& base);

/// Peak sweep over the coupling ratio at the configured power.
Dataset build_peaks_sweep(const ConfigValues& base, double gq_min, double gq_max, int points);

/// Spectrum of the selected branch at the configured operating point.
/// Throws NoSteadyStateError / ConfigError; the caller is expected to check
/// stability beforehand (see point_report).
Dataset build_spectrum_dataset(const ConfigValues& base, const RunOptions& opt,
                               double omega_lo, double omega_hi, int omega_points);

/// Full single-point JSON report (branches, stability, peaks, threshold).
nlohmann::json point_report(const ConfigValues& values);

/// JSON array of branches only (the steady-state subcommand payload).
nlohmann::json branches_json(const ConfigValues& values);

void write_dataset(const Dataset& dataset, const std::filesystem::path& outdir);

}  // namespace omsim
