// Command-line front end: single-point reports and figure-ready sweeps for
// the driven cavity + oscillator model with linear and quadratic coupling.
//
// Exit codes: 0 success, 2 configuration error, 3 no steady state,
// 4 unstable operating point (point-style commands).

#include <CLI11.hpp>
#include <iostream>

#include "omsim/config.hpp"
#include "omsim/peaks.hpp"
#include "omsim/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNoSteadyState = 3;
constexpr int kExitUnstable = 4;

struct CommonArgs {
    std::string params_file;
    std::string out_dir = ".";
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--params", args.params_file, "JSON parameter file")->required();
    cmd->add_option("--out", args.out_dir, "output directory for CSV datasets");
    cmd->add_option("--set", args.overrides, "override a parameter, key=value (repeatable)");
}

omsim::ConfigValues resolve(const CommonArgs& args) {
    return omsim::apply_overrides(omsim::load_config(args.params_file), args.overrides);
}

omsim::SpectrumMethod parse_method(const std::string& name) {
    if (name == "corrected") return omsim::SpectrumMethod::AnalyticEq10Corrected;
    if (name == "as-printed") return omsim::SpectrumMethod::AnalyticEq10AsPrinted;
    if (name == "assembly") return omsim::SpectrumMethod::TransferAssembly;
    if (name == "oracle") return omsim::SpectrumMethod::MatrixOracle;
    throw omsim::ConfigError(
        "unknown spectrum method '" + name +
        "'; valid: corrected, as-printed, assembly, oracle");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cavity optomechanics with linear and quadratic dispersive coupling"};
    app.require_subcommand(1);

    CommonArgs steady_args;
    auto* steady = app.add_subcommand("steady-state", "print all steady-state branches as JSON");
    add_common(steady, steady_args);

    CommonArgs point_args;
    auto* point = app.add_subcommand("point", "full single-point report as JSON");
    add_common(point, point_args);

    CommonArgs map_args;
    double map_pmin = 0.25, map_pmax = 12.0, map_gmin = -2e-5, map_gmax = 2e-5;
    int map_ppoints = 24, map_gpoints = 21;
    auto* map = app.add_subcommand("stability-map",
                                   "sweep (power, coupling ratio) and emit stability CSV");
    add_common(map, map_args);
    map->add_option("--power-min", map_pmin, "mW");
    map->add_option("--power-max", map_pmax, "mW");
    map->add_option("--power-points", map_ppoints);
    map->add_option("--gq-min", map_gmin);
    map->add_option("--gq-max", map_gmax);
    map->add_option("--gq-points", map_gpoints);

    CommonArgs spec_args;
    std::string spec_method = "corrected";
    bool spec_oracle = false;
    double spec_lo = 0.9, spec_hi = 1.1;
    int spec_points = 4001;
    auto* spectrum = app.add_subcommand("spectrum", "position noise spectrum of the selected branch");
    add_common(spectrum, spec_args);
    spectrum->add_option("--method", spec_method, "corrected | as-printed | assembly | oracle");
    spectrum->add_flag("--oracle", spec_oracle, "add an independent oracle column");
    spectrum->add_option("--omega-min", spec_lo, "grid start, units of omega_m");
    spectrum->add_option("--omega-max", spec_hi, "grid end, units of omega_m");
    spectrum->add_option("--omega-points", spec_points);

    CommonArgs peaks_args;
    double peaks_gmin = -12e-6, peaks_gmax = 20e-6;
    int peaks_points = 33;
    auto* peaks = app.add_subcommand("peaks", "NMS peak positions/widths vs coupling ratio");
    add_common(peaks, peaks_args);
    peaks->add_option("--gq-min", peaks_gmin);
    peaks->add_option("--gq-max", peaks_gmax);
    peaks->add_option("--gq-points", peaks_points);

    CommonArgs fig2a_args, fig2b_args, fig2_args, fig3_args, fig4_args, fig5_args;
    std::string fig2_method = "corrected";
    auto* fig2a = app.add_subcommand("fig2a", "spectrum surface at 6.9 mW");
    add_common(fig2a, fig2a_args);
    fig2a->add_option("--method", fig2_method);
    auto* fig2b = app.add_subcommand("fig2b", "spectrum surface at 10.7 mW");
    add_common(fig2b, fig2b_args);
    auto* fig2 = app.add_subcommand("fig2", "both spectrum surfaces");
    add_common(fig2, fig2_args);
    auto* fig3 = app.add_subcommand("fig3", "peak positions and widths vs coupling ratio");
    add_common(fig3, fig3_args);
    auto* fig4 = app.add_subcommand("fig4", "effective coupling vs power");
    add_common(fig4, fig4_args);
    auto* fig5 = app.add_subcommand("fig5", "intracavity photon number vs coupling ratio");
    add_common(fig5, fig5_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (steady->parsed()) {
            std::cout << omsim::branches_json(resolve(steady_args)).dump(2) << '\n';
            return kExitOk;
        }
        if (point->parsed()) {
            const auto report = omsim::point_report(resolve(point_args));
            std::cout << report.dump(2) << '\n';
            if (report.value("no_steady_state", false)) return kExitNoSteadyState;
            const auto& branches = report.at("branches");
            const std::size_t selected = report.at("selected_branch").get<std::size_t>();
            if (!branches.at(selected).at("stable").get<bool>()) return kExitUnstable;
            return kExitOk;
        }
        if (map->parsed()) {
            omsim::SweepSpec spec;
            spec.axis1 = {"power_mw", map_pmin, map_pmax, map_ppoints};
            spec.axis2 = omsim::SweepAxis{"gq_ratio", map_gmin, map_gmax, map_gpoints};
            spec.outputs = {"stability"};
            auto ds = omsim::run_sweep(resolve(map_args), spec, {});
            omsim::write_dataset(ds, map_args.out_dir);
            return kExitOk;
        }
        if (spectrum->parsed()) {
            omsim::RunOptions opt;
            opt.method = parse_method(spec_method);
            opt.oracle_columns = spec_oracle;
            try {
                auto ds = omsim::build_spectrum_dataset(resolve(spec_args), opt, spec_lo,
                                                        spec_hi, spec_points);
                omsim::write_dataset(ds, spec_args.out_dir);
            } catch (const omsim::ConfigError& e) {
                // Distinguish "unstable point" from genuine config problems.
                const std::string what = e.what();
                if (what.find("unstable") != std::string::npos) {
                    std::cerr << what << '\n';
                    return kExitUnstable;
                }
                throw;
            }
            return kExitOk;
        }
        if (peaks->parsed()) {
            auto ds = omsim::build_peaks_sweep(resolve(peaks_args), peaks_gmin, peaks_gmax,
                                               peaks_points);
            omsim::write_dataset(ds, peaks_args.out_dir);
            return kExitOk;
        }
        if (fig2a->parsed()) {
            omsim::RunOptions opt;
            opt.method = parse_method(fig2_method);
            omsim::write_dataset(omsim::build_fig2(resolve(fig2a_args), 6.9, opt),
                                 fig2a_args.out_dir);
            return kExitOk;
        }
        if (fig2b->parsed()) {
            omsim::write_dataset(omsim::build_fig2(resolve(fig2b_args), 10.7, {}),
                                 fig2b_args.out_dir);
            return kExitOk;
        }
        if (fig2->parsed()) {
            const auto values = resolve(fig2_args);
            omsim::write_dataset(omsim::build_fig2(values, 6.9, {}), fig2_args.out_dir);
            omsim::write_dataset(omsim::build_fig2(values, 10.7, {}), fig2_args.out_dir);
            return kExitOk;
        }
        if (fig3->parsed()) {
            omsim::write_dataset(omsim::build_fig3(resolve(fig3_args)), fig3_args.out_dir);
            return kExitOk;
        }
        if (fig4->parsed()) {
            omsim::write_dataset(omsim::build_fig4(resolve(fig4_args)), fig4_args.out_dir);
            return kExitOk;
        }
        if (fig5->parsed()) {
            omsim::write_dataset(omsim::build_fig5(resolve(fig5_args)), fig5_args.out_dir);
            return kExitOk;
        }
    } catch (const omsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const omsim::NoSteadyStateError& e) {
        std::cerr << e.what() << '\n';
        return kExitNoSteadyState;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}
