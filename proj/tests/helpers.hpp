#pragma once

#include <cmath>
#include <random>

#include "omsim/linearized.hpp"
#include "omsim/params.hpp"
#include "omsim/steady_state.hpp"

namespace omsim::testing {

// Reference operating parameters used throughout the tests: a sideband-
// resolved cavity driven at 1064 nm, sub-kelvin bath.
inline SystemParams reference_params(double g_q_ratio = 0.0) {
    return SystemParams::from_hz(215e3, 947e3, 141.34, 145e-12, 3.95, g_q_ratio, 1064.0, 0.3);
}

inline DriveConfig reference_drive(const SystemParams& p, double power_mw,
                                   double detuning_over_omega_m = 1.0) {
    return DriveConfig{power_mw * 1e-3, detuning_over_omega_m * p.omega_m};
}

inline bool near_rel(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

// Random parameter draws around the reference point, wide enough to cover
// both stable and unstable operating regions.
struct RandomDraw {
    SystemParams params;
    DriveConfig drive;
};

inline RandomDraw random_draw(std::mt19937_64& rng, bool vary_system = true,
                              bool allow_negative_detuning = false) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto in = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

    double kappa_scale = 1.0, omega_scale = 1.0, gamma_scale = 1.0;
    if (vary_system) {
        kappa_scale = in(0.4, 2.5);
        omega_scale = in(0.5, 2.0);
        gamma_scale = in(0.4, 2.5);
    }
    SystemParams p = SystemParams::from_hz(215e3 * kappa_scale, 947e3 * omega_scale,
                                           141.34 * gamma_scale, 145e-12, 3.95,
                                           in(-2e-5, 2e-5), 1064.0, 0.3);
    const double detuning_lo = allow_negative_detuning ? -2.0 : 0.3;
    DriveConfig d{in(0.0, 12.0) * 1e-3, in(detuning_lo, 2.0) * p.omega_m};
    return {p, d};
}

// Stable branches only, stability-annotated, across repeated random draws.
template <typename Fn>
inline void for_each_stable_branch(std::mt19937_64& rng, int count, Fn&& fn,
                                   bool vary_system = false) {
    int found = 0;
    while (found < count) {
        RandomDraw draw = random_draw(rng, vary_system);
        if (draw.drive.power <= 0.0) continue;
        std::vector<SteadyStateBranch> branches;
        try {
            branches = solve_steady_states(draw.params, draw.drive);
        } catch (const NoSteadyStateError&) {
            continue;
        }
        annotate_stability(draw.params, branches);
        for (const auto& b : branches) {
            if (!b.stable || b.intensity <= 0.0) continue;
            fn(draw.params, draw.drive, b);
            if (++found >= count) return;
        }
    }
}

}  // namespace omsim::testing
