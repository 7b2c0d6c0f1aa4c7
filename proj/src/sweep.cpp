#include "omsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <set>
#include <thread>

#include "omsim/peaks.hpp"

#ifndef OMSIM_GIT_REV
#define OMSIM_GIT_REV "unknown"
#endif

namespace omsim {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

class CsvBuilder {
  public:
    explicit CsvBuilder(std::vector<std::string> columns, bool with_header = true)
        : columns_(std::move(columns)) {
        if (with_header) {
            for (std::size_t i = 0; i < columns_.size(); ++i) {
                if (i) out_ += ',';
                out_ += columns_[i];
            }
            out_ += '\n';
        }
    }

    CsvBuilder& value(double v) { return cell(fmt(v)); }
    CsvBuilder& value(bool v) { return cell(v ? "true" : "false"); }
    CsvBuilder& text(const std::string& s) { return cell(s); }
    CsvBuilder& blank() { return cell(""); }
    void end_row() {
        if (in_row_ != columns_.size())
            throw std::logic_error("CsvBuilder: row width mismatch");
        out_ += '\n';
        in_row_ = 0;
    }
    void append_raw(const std::string& rows) { out_ += rows; }
    const std::vector<std::string>& columns() const { return columns_; }
    std::string take() { return std::move(out_); }

  private:
    CsvBuilder& cell(const std::string& s) {
        if (in_row_) out_ += ',';
        out_ += s;
        ++in_row_;
        return *this;
    }
    std::vector<std::string> columns_;
    std::string out_;
    std::size_t in_row_ = 0;
};

// Deterministic parallel map: results land in slot order, the first worker
// exception is rethrown after join.
void parallel_for_indexed(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(hw, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

nlohmann::json config_json(const ConfigValues& v) {
    return {
        {"kappa_hz", v.kappa_hz},
        {"omega_m_hz", v.omega_m_hz},
        {"gamma_m_hz", v.gamma_m_hz},
        {"mass_kg", v.mass_kg},
        {"g_l_hz", v.g_l_hz},
        {"g_q_ratio", v.g_q_ratio},
        {"wavelength_nm", v.wavelength_nm},
        {"temperature_k", v.temperature_k},
        {"power_mw", v.power_mw},
        {"detuning_over_omega_m", v.detuning_over_omega_m},
    };
}

nlohmann::json base_meta(const std::string& name, const ConfigValues& base,
                         const std::vector<std::string>& columns) {
    nlohmann::json meta;
    meta["tool"] = "omsim";
    meta["revision"] = OMSIM_GIT_REV;
    meta["dataset"] = name;
    meta["params"] = config_json(base);
    meta["params_hash"] = config_hash(base);
    meta["columns"] = columns;
    return meta;
}

ConfigValues with_axis(ConfigValues values, const std::string& axis, double v) {
    if (axis == "power_mw")
        values.power_mw = v;
    else if (axis == "gq_ratio")
        values.g_q_ratio = v;
    else if (axis == "detuning_over_omega_m")
        values.detuning_over_omega_m = v;
    else
        throw ConfigError("sweep: axis '" + axis + "' cannot override the configuration");
    return values;
}

const std::set<std::string>& valid_outputs() {
    static const std::set<std::string> s = {"steady_state", "stability", "spectrum",
                                            "peaks", "photon_number", "effective_coupling"};
    return s;
}

}  // namespace

void SweepSpec::validate() const {
    auto check_axis = [](const SweepAxis& axis) {
        static const std::set<std::string> names = {"power_mw", "gq_ratio",
                                                    "detuning_over_omega_m",
                                                    "omega_over_omega_m"};
        if (!names.count(axis.name))
            throw ConfigError("sweep: unknown axis '" + axis.name + "'");
        if (axis.points < 2) throw ConfigError("sweep: axis needs at least 2 points");
        if (!(axis.max > axis.min)) throw ConfigError("sweep: axis max must exceed min");
    };
    check_axis(axis1);
    if (axis2) {
        check_axis(*axis2);
        if (axis2->name == axis1.name) throw ConfigError("sweep: axes must be distinct");
    }
    if (outputs.empty()) throw ConfigError("sweep: no outputs requested");
    for (const auto& o : outputs)
        if (!valid_outputs().count(o))
            throw ConfigError("sweep: unknown output '" + o + "'");
    const bool wants_spectrum =
        std::find(outputs.begin(), outputs.end(), "spectrum") != outputs.end();
    const bool has_omega = axis1.name == "omega_over_omega_m" ||
                           (axis2 && axis2->name == "omega_over_omega_m");
    if (wants_spectrum && !has_omega)
        throw ConfigError("sweep: spectrum output requires an omega_over_omega_m axis");
    if (wants_spectrum && outputs.size() > 1)
        throw ConfigError("sweep: spectrum output cannot be combined with other outputs");
    if (!wants_spectrum && has_omega)
        throw ConfigError("sweep: omega_over_omega_m axis requires the spectrum output");
}

const SteadyStateBranch* EvaluatedPoint::selected() const {
    return branches.empty() ? nullptr : &branches.front();
}

const StabilityReport* EvaluatedPoint::selected_report() const {
    return reports.empty() ? nullptr : &reports.front();
}

bool EvaluatedPoint::selected_stable() const {
    const auto* b = selected();
    return b && b->stable;
}

EvaluatedPoint evaluate_operating_point(const ConfigValues& values) {
    EvaluatedPoint pt;
    pt.values = values;
    pt.params = values.params();
    pt.drive = values.drive();
    try {
        pt.branches = solve_steady_states(pt.params, pt.drive);
    } catch (const NoSteadyStateError&) {
        pt.no_steady_state = true;
        return pt;
    }
    annotate_stability(pt.params, pt.branches);
    pt.reports.reserve(pt.branches.size());
    for (const auto& b : pt.branches) pt.reports.push_back(routh_hurwitz(pt.params, b));
    return pt;
}

namespace {

// Physics columns contributed by each output kind, in emission order.
std::vector<std::string> output_columns(const std::vector<std::string>& outputs,
                                        const RunOptions& opt) {
    std::vector<std::string> cols;
    for (const auto& o : outputs) {
        if (o == "steady_state") {
            cols.insert(cols.end(), {"x_s", "intensity", "delta_eff", "omega_m_eff",
                                     "g_eff", "spring_ratio"});
        } else if (o == "stability") {
            cols.insert(cols.end(), {"rh_stable", "eig_stable", "max_re_eigenvalue"});
        } else if (o == "photon_number") {
            cols.push_back("intensity");
        } else if (o == "effective_coupling") {
            cols.push_back("effective_coupling");
        } else if (o == "peaks") {
            cols.insert(cols.end(), {"omega_plus", "omega_minus", "gamma_plus",
                                     "gamma_minus", "resolved", "threshold"});
        } else if (o == "spectrum") {
            cols.push_back("s_xx");
            if (opt.oracle_columns) cols.push_back("s_xx_oracle");
        }
    }
    return cols;
}

void emit_outputs(CsvBuilder& csv, const std::vector<std::string>& outputs,
                  const EvaluatedPoint& pt, const RunOptions& opt,
                  const double* omega /* rad/s, spectrum only */) {
    const bool stable = pt.selected_stable();
    const SteadyStateBranch* b = pt.selected();
    for (const auto& o : outputs) {
        if (o == "stability") {
            if (const auto* rep = pt.selected_report()) {
                csv.value(rep->rh_stable).value(rep->eig_stable).value(rep->max_re_eigenvalue);
            } else {
                csv.blank().blank().blank();
            }
            continue;
        }
        if (!stable || b == nullptr) {
            // Physics outputs presuppose a stable operating point.
            int width = 0;
            if (o == "steady_state") width = 6;
            else if (o == "photon_number") width = 1;
            else if (o == "effective_coupling") width = 1;
            else if (o == "peaks") width = 6;
            else if (o == "spectrum") width = opt.oracle_columns ? 2 : 1;
            for (int i = 0; i < width; ++i) csv.blank();
            continue;
        }
        if (o == "steady_state") {
            csv.value(b->x_s).value(b->intensity).value(b->delta_eff)
                .value(b->omega_m_eff).value(b->g_eff).value(b->spring_ratio);
        } else if (o == "photon_number") {
            csv.value(b->intensity);
        } else if (o == "effective_coupling") {
            csv.value(effective_coupling(*b));
        } else if (o == "peaks") {
            const NmsPeaks pk = exact_peaks(pt.params, *b);
            csv.value(pk.omega_plus).value(pk.omega_minus).value(pk.gamma_plus)
                .value(pk.gamma_minus).value(pk.resolved)
                .value(nms_threshold(pt.params, *b));
        } else if (o == "spectrum") {
            csv.value(s_xx(pt.params, *b, *omega, opt.method));
            if (opt.oracle_columns)
                csv.value(s_xx_channels_oracle(pt.params, *b, *omega).total());
        }
    }
}

}  // namespace

Dataset run_sweep(const ConfigValues& base, const SweepSpec& spec, const RunOptions& opt) {
    spec.validate();

    const bool axis1_is_omega = spec.axis1.name == "omega_over_omega_m";
    const bool axis2_is_omega = spec.axis2 && spec.axis2->name == "omega_over_omega_m";

    std::vector<std::string> columns{spec.axis1.name};
    if (spec.axis2) columns.push_back(spec.axis2->name);
    const bool only_stability = spec.outputs == std::vector<std::string>{"stability"};
    if (!only_stability) columns.push_back("stable");
    const auto out_cols = output_columns(spec.outputs, opt);
    columns.insert(columns.end(), out_cols.begin(), out_cols.end());

    CsvBuilder csv(columns);

    // Operating points come from the non-omega axes; an omega axis only
    // resamples the same branch. Points are solved in parallel, rows are
    // then emitted serially in declared axis-major order.
    const SweepAxis* omega_axis =
        axis1_is_omega ? &spec.axis1 : (axis2_is_omega ? &*spec.axis2 : nullptr);
    const SweepAxis* point_axis = axis1_is_omega ? (spec.axis2 ? &*spec.axis2 : nullptr)
                                                 : &spec.axis1;
    const SweepAxis* inner_point_axis =
        (!axis1_is_omega && spec.axis2 && !axis2_is_omega) ? &*spec.axis2 : nullptr;

    std::vector<ConfigValues> points;
    if (!point_axis) {
        points.push_back(base);
    } else {
        for (int i = 0; i < point_axis->points; ++i) {
            const ConfigValues outer = with_axis(base, point_axis->name, point_axis->value(i));
            if (inner_point_axis) {
                for (int j = 0; j < inner_point_axis->points; ++j)
                    points.push_back(
                        with_axis(outer, inner_point_axis->name, inner_point_axis->value(j)));
            } else {
                points.push_back(outer);
            }
        }
    }

    std::vector<EvaluatedPoint> evaluated(points.size());
    parallel_for_indexed(points.size(), [&](std::size_t idx) {
        evaluated[idx] = evaluate_operating_point(points[idx]);
    });

    auto emit_row = [&](const EvaluatedPoint& pt, double axis1_value, double axis2_value,
                        const double* omega) {
        csv.value(axis1_value);
        if (spec.axis2) csv.value(axis2_value);
        if (!only_stability) csv.value(pt.selected_stable() && !pt.no_steady_state);
        emit_outputs(csv, spec.outputs, pt, opt, omega);
        csv.end_row();
    };

    if (!omega_axis) {
        std::size_t idx = 0;
        for (int i = 0; i < spec.axis1.points; ++i) {
            if (inner_point_axis) {
                for (int j = 0; j < inner_point_axis->points; ++j, ++idx)
                    emit_row(evaluated[idx], spec.axis1.value(i), inner_point_axis->value(j),
                             nullptr);
            } else {
                emit_row(evaluated[idx++], spec.axis1.value(i), 0.0, nullptr);
            }
        }
    } else if (axis1_is_omega) {
        // omega-major: axis2 (if any) indexes the operating points.
        for (int i = 0; i < omega_axis->points; ++i) {
            const double norm = omega_axis->value(i);
            for (std::size_t idx = 0; idx < evaluated.size(); ++idx) {
                const double omega = norm * evaluated[idx].params.omega_m;
                emit_row(evaluated[idx], norm,
                         point_axis ? point_axis->value(static_cast<int>(idx)) : 0.0, &omega);
            }
        }
    } else {
        // operating-point-major with an inner omega axis.
        for (std::size_t idx = 0; idx < evaluated.size(); ++idx) {
            for (int j = 0; j < omega_axis->points; ++j) {
                const double norm = omega_axis->value(j);
                const double omega = norm * evaluated[idx].params.omega_m;
                emit_row(evaluated[idx], spec.axis1.value(static_cast<int>(idx)), norm, &omega);
            }
        }
    }

    Dataset ds;
    ds.name = only_stability ? "stability_map" : "sweep";
    ds.csv = csv.take();
    ds.meta = base_meta(ds.name, base, columns);
    ds.meta["axes"] = nlohmann::json::array();
    ds.meta["axes"].push_back({{"name", spec.axis1.name},
                               {"min", spec.axis1.min},
                               {"max", spec.axis1.max},
                               {"points", spec.axis1.points}});
    if (spec.axis2)
        ds.meta["axes"].push_back({{"name", spec.axis2->name},
                                   {"min", spec.axis2->min},
                                   {"max", spec.axis2->max},
                                   {"points", spec.axis2->points}});
    ds.meta["outputs"] = spec.outputs;
    ds.meta["method"] = to_string(opt.method);
    return ds;
}

Dataset build_fig2(const ConfigValues& base, double power_mw, const RunOptions& opt,
                   double omega_lo, double omega_hi, int omega_points) {
    const std::vector<std::string> columns{"gq_ratio", "omega_over_omega_m", "stable", "s_xx"};
    CsvBuilder csv(columns);

    const int gq_points = 37;
    const double gq_lo = -9e-6, gq_hi = 9e-6;

    std::vector<std::string> blocks(gq_points);
    parallel_for_indexed(gq_points, [&](std::size_t i) {
        const double gq = gq_lo + (gq_hi - gq_lo) * i / double(gq_points - 1);
        ConfigValues values = with_axis(base, "gq_ratio", gq);
        values.power_mw = power_mw;
        const EvaluatedPoint pt = evaluate_operating_point(values);
        const bool stable = pt.selected_stable();

        CsvBuilder rows(columns, /*with_header=*/false);
        for (int j = 0; j < omega_points; ++j) {
            const double norm =
                omega_lo + (omega_hi - omega_lo) * j / double(omega_points - 1);
            rows.value(gq).value(norm).value(stable);
            if (stable)
                rows.value(s_xx(pt.params, *pt.selected(), norm * pt.params.omega_m,
                               opt.method));
            else
                rows.blank();
            rows.end_row();
        }
        blocks[i] = rows.take();
    });
    for (auto& b : blocks) csv.append_raw(b);

    Dataset ds;
    ds.name = power_mw < 8.0 ? "fig2a" : "fig2b";
    ds.csv = csv.take();
    ds.meta = base_meta(ds.name, base, columns);
    ds.meta["power_mw"] = power_mw;
    ds.meta["method"] = to_string(opt.method);
    ds.meta["omega_grid"] = {{"lo", omega_lo}, {"hi", omega_hi}, {"points", omega_points}};
    ds.meta["gq_grid"] = {{"lo", gq_lo}, {"hi", gq_hi}, {"points", gq_points}};
    return ds;
}

Dataset build_fig3(const ConfigValues& base) {
    const std::vector<std::string> columns{
        "power_mw", "gq_ratio", "stable",
        "omega_plus_over_omega_m", "omega_minus_over_omega_m",
        "gamma_plus_over_omega_m", "gamma_minus_over_omega_m", "resolved"};
    CsvBuilder csv(columns);

    const int gq_points = 33;
    for (double power : {6.9, 10.7}) {
        for (int i = 0; i < gq_points; ++i) {
            const double gq = -12e-6 + (20e-6 - -12e-6) * i / double(gq_points - 1);
            ConfigValues values = with_axis(base, "gq_ratio", gq);
            values.power_mw = power;
            const EvaluatedPoint pt = evaluate_operating_point(values);
            csv.value(power).value(gq).value(pt.selected_stable());
            if (pt.selected_stable()) {
                const NmsPeaks pk = exact_peaks(pt.params, *pt.selected());
                const double wm = pt.params.omega_m;
                csv.value(pk.omega_plus / wm).value(pk.omega_minus / wm)
                    .value(pk.gamma_plus / wm).value(pk.gamma_minus / wm)
                    .value(pk.resolved);
            } else {
                csv.blank().blank().blank().blank().blank();
            }
            csv.end_row();
        }
    }

    Dataset ds;
    ds.name = "fig3";
    ds.csv = csv.take();
    ds.meta = base_meta(ds.name, base, columns);
    ds.meta["powers_mw"] = {6.9, 10.7};
    ds.meta["gq_grid"] = {{"lo", -12e-6}, {"hi", 20e-6}, {"points", gq_points}};
    return ds;
}

Dataset build_fig4(const ConfigValues& base) {
    const std::vector<std::string> columns{"gq_ratio", "power_mw", "stable",
                                           "effective_coupling", "threshold_rate",
                                           "above_threshold", "resolved"};
    CsvBuilder csv(columns);

    const int power_points = 48;
    for (double gq : {-12e-6, 0.0, 20e-6}) {
        for (int i = 0; i < power_points; ++i) {
            const double power = 0.25 * (i + 1);
            ConfigValues values = with_axis(base, "gq_ratio", gq);
            values.power_mw = power;
            const EvaluatedPoint pt = evaluate_operating_point(values);
            const double threshold_rate = pt.params.kappa + 0.5 * pt.params.gamma_m;
            csv.value(gq).value(power).value(pt.selected_stable());
            if (pt.selected_stable()) {
                const SteadyStateBranch& b = *pt.selected();
                csv.value(effective_coupling(b)).value(threshold_rate)
                    .value(nms_threshold(pt.params, b))
                    .value(exact_peaks(pt.params, b).resolved);
            } else {
                csv.blank().blank().blank().blank();
            }
            csv.end_row();
        }
    }

    Dataset ds;
    ds.name = "fig4";
    ds.csv = csv.take();
    ds.meta = base_meta(ds.name, base, columns);
    ds.meta["gq_values"] = {-12e-6, 0.0, 20e-6};
    ds.meta["power_grid"] = {{"lo", 0.25}, {"hi", 12.0}, {"points", power_points}};
    return ds;
}

Dataset build_fig5(const ConfigValues& base) {
    const std::vector<std::string> columns{"power_mw", "gq_ratio", "stable", "intensity"};
    CsvBuilder csv(columns);

    const int gq_points = 37;
    for (double power : {6.9, 10.7}) {
        for (int i = 0; i < gq_points; ++i) {
            const double gq = -9e-6 + (9e-6 - -9e-6) * i / double(gq_points - 1);
            ConfigValues values = with_axis(base, "gq_ratio", gq);
            values.power_mw = power;
            const EvaluatedPoint pt = evaluate_operating_point(values);
            csv.value(power).value(gq).value(pt.selected_stable());
            if (pt.selected_stable())
                csv.value(pt.selected()->intensity);
            else
                csv.blank();
            csv.end_row();
        }
    }

    Dataset ds;
    ds.name = "fig5";
    ds.csv = csv.take();
    ds.meta = base_meta(ds.name, base, columns);
    ds.meta["powers_mw"] = {6.9, 10.7};
    ds.meta["gq_grid"] = {{"lo", -9e-6}, {"hi", 9e-6}, {"points", gq_points}};
    return ds;
}

Dataset build_peaks_sweep(const ConfigValues& base, double gq_min, double gq_max, int points) {
    if (points < 2) throw ConfigError("peaks: need at least 2 sweep points");
    const std::vector<std::string> columns{"gq_ratio", "power_mw", "omega_plus",
                                           "omega_minus", "gamma_plus", "gamma_minus",
                                           "resolved", "g_eff", "threshold"};
    CsvBuilder csv(columns);
    for (int i = 0; i < points; ++i) {
        const double gq = gq_min + (gq_max - gq_min) * i / double(points - 1);
        const ConfigValues values = with_axis(base, "gq_ratio", gq);
        const EvaluatedPoint pt = evaluate_operating_point(values);
        csv.value(gq).value(values.power_mw);
        if (pt.selected_stable()) {
            const SteadyStateBranch& b = *pt.selected();
            const NmsPeaks pk = exact_peaks(pt.params, b);
            csv.value(pk.omega_plus).value(pk.omega_minus).value(pk.gamma_plus)
                .value(pk.gamma_minus).value(pk.resolved)
                .value(effective_coupling(b)).value(nms_threshold(pt.params, b));
        } else if (pt.selected()) {
            const SteadyStateBranch& b = *pt.selected();
            csv.blank().blank().blank().blank().blank();
            csv.value(effective_coupling(b)).value(nms_threshold(pt.params, b));
        } else {
            csv.blank().blank().blank().blank().blank().blank().blank();
        }
        csv.end_row();
    }

    Dataset ds;
    ds.name = "peaks";
    ds.csv = csv.take();
    ds.meta = base_meta(ds.name, base, columns);
    ds.meta["gq_grid"] = {{"lo", gq_min}, {"hi", gq_max}, {"points", points}};
    return ds;
}

Dataset build_spectrum_dataset(const ConfigValues& base, const RunOptions& opt,
                               double omega_lo, double omega_hi, int omega_points) {
    const EvaluatedPoint pt = evaluate_operating_point(base);
    if (pt.no_steady_state) throw NoSteadyStateError({});
    if (!pt.selected_stable())
        throw ConfigError("spectrum: selected branch is unstable at this operating point");

    std::vector<std::string> columns{"omega_over_omega_m", "s_xx", "method"};
    if (opt.oracle_columns) columns.insert(columns.begin() + 2, "s_xx_oracle");
    CsvBuilder csv(columns);
    const SteadyStateBranch& b = *pt.selected();
    for (int j = 0; j < omega_points; ++j) {
        const double norm = omega_lo + (omega_hi - omega_lo) * j / double(omega_points - 1);
        const double omega = norm * pt.params.omega_m;
        csv.value(norm).value(s_xx(pt.params, b, omega, opt.method));
        if (opt.oracle_columns) csv.value(s_xx_channels_oracle(pt.params, b, omega).total());
        csv.text(to_string(opt.method));
        csv.end_row();
    }

    Dataset ds;
    ds.name = "spectrum";
    ds.csv = csv.take();
    ds.meta = base_meta(ds.name, base, columns);
    ds.meta["method"] = to_string(opt.method);
    ds.meta["omega_grid"] = {{"lo", omega_lo}, {"hi", omega_hi}, {"points", omega_points}};
    return ds;
}

namespace {

nlohmann::json branch_json(const SteadyStateBranch& b, const StabilityReport& rep) {
    return {
        {"x_s", b.x_s},
        {"p_s", b.p_s},
        {"a_s", {b.a_s.real(), b.a_s.imag()}},
        {"intensity", b.intensity},
        {"delta_eff", b.delta_eff},
        {"omega_m_eff", b.omega_m_eff},
        {"g_eff", b.g_eff},
        {"spring_ratio", b.spring_ratio},
        {"stable", b.stable},
        {"stability",
         {{"s1", rep.s1},
          {"s2", rep.s2},
          {"s3", rep.s3},
          {"cond4", rep.cond4},
          {"cond5", rep.cond5},
          {"rh_stable", rep.rh_stable},
          {"max_re_eigenvalue", rep.max_re_eigenvalue},
          {"eig_stable", rep.eig_stable}}},
    };
}

}  // namespace

nlohmann::json branches_json(const ConfigValues& values) {
    const EvaluatedPoint pt = evaluate_operating_point(values);
    if (pt.no_steady_state) throw NoSteadyStateError({});
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < pt.branches.size(); ++i)
        arr.push_back(branch_json(pt.branches[i], pt.reports[i]));
    return arr;
}

nlohmann::json point_report(const ConfigValues& values) {
    const EvaluatedPoint pt = evaluate_operating_point(values);
    nlohmann::json report;
    report["config"] = config_json(values);
    report["config_hash"] = config_hash(values);

    const NoiseModel nm = make_noise_model(pt.params);
    report["derived"] = {
        {"epsilon", drive_amplitude(pt.params, pt.drive)},
        {"kappa", pt.params.kappa},
        {"omega_m", pt.params.omega_m},
        {"gamma_m", pt.params.gamma_m},
        {"g_l", pt.params.g_l},
        {"g_q", pt.params.g_q()},
        {"omega_p", pt.params.omega_p},
        {"n_a", nm.n_a},
        {"n_m_proxy", nm.n_m_proxy},
        {"resolved_sideband", pt.params.resolved_sideband()},
    };

    if (pt.no_steady_state) {
        report["branches"] = nlohmann::json::array();
        report["no_steady_state"] = true;
        return report;
    }

    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < pt.branches.size(); ++i)
        arr.push_back(branch_json(pt.branches[i], pt.reports[i]));
    report["branches"] = arr;
    report["selected_branch"] = 0;

    const SteadyStateBranch& b = *pt.selected();
    report["effective_coupling"] = effective_coupling(b);
    report["nms_threshold"] = nms_threshold(pt.params, b);
    if (b.stable && b.intensity > 0.0) {
        const NmsPeaks pk = exact_peaks(pt.params, b);
        report["peaks"] = {{"omega_plus", pk.omega_plus},
                           {"omega_minus", pk.omega_minus},
                           {"gamma_plus", pk.gamma_plus},
                           {"gamma_minus", pk.gamma_minus},
                           {"resolved", pk.resolved}};
    } else {
        report["peaks"] = nullptr;
    }
    return report;
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& outdir) {
    std::filesystem::create_directories(outdir);
    {
        std::ofstream out(outdir / (dataset.name + ".csv"), std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + dataset.name + ".csv");
        out << dataset.csv;
    }
    {
        std::ofstream out(outdir / (dataset.name + ".meta.json"), std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + dataset.name + ".meta.json");
        out << dataset.meta.dump(2) << '\n';
    }
}

}  // namespace omsim
