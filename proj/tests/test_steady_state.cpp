#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "omsim/linearized.hpp"
#include "omsim/steady_state.hpp"

using namespace omsim;
using omsim::testing::near_rel;
using omsim::testing::random_draw;
using omsim::testing::reference_drive;
using omsim::testing::reference_params;

namespace {

// Independent oracle: the self-consistency function
//   f(I) = I (kappa^2 + delta_eff(I)^2) - eps^2
// written out from the mean-field relations directly (no library calls),
// scanned densely over the physical interval and refined by bisection.
struct BalanceOracle {
    double kappa, omega_m, g_l, g_q, detuning, eps2;

    double f(double intensity) const {
        const double s = omega_m + 2.0 * g_q * intensity;
        const double xs = -g_l * intensity / s;
        const double dt = detuning + g_l * xs + g_q * xs * xs;
        return intensity * (kappa * kappa + dt * dt) - eps2;
    }

    std::vector<double> roots(int points = 1'000'000) const {
        std::vector<double> out;
        if (eps2 == 0.0) return out;
        const double hi = 1.000001 * eps2 / (kappa * kappa);
        double prev_x = 0.0;
        double prev_f = f(0.0);
        for (int i = 1; i <= points; ++i) {
            const double x = hi * i / points;
            const double fx = f(x);
            if (std::isfinite(prev_f) && std::isfinite(fx) && prev_f * fx <= 0.0 &&
                (prev_f != 0.0 || fx != 0.0)) {
                double a = prev_x, b = x, fa = prev_f;
                for (int it = 0; it < 200; ++it) {
                    const double m = 0.5 * (a + b);
                    const double fm = f(m);
                    if (fa * fm <= 0.0)
                        b = m;
                    else {
                        a = m;
                        fa = fm;
                    }
                }
                out.push_back(0.5 * (a + b));
            }
            prev_x = x;
            prev_f = fx;
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

BalanceOracle oracle_for(const SystemParams& p, const DriveConfig& d) {
    const double eps = drive_amplitude(p, d);
    return {p.kappa, p.omega_m, p.g_l, p.g_q(), d.detuning, eps * eps};
}

}  // namespace

TEST_CASE("zero drive gives the unique all-zero branch") {
    const SystemParams p = reference_params(-5e-6);
    const auto branches = solve_steady_states(p, {0.0, p.omega_m});
    REQUIRE(branches.size() == 1);
    const auto& b = branches[0];
    CHECK(b.x_s == 0.0);
    CHECK(b.p_s == 0.0);
    CHECK(b.a_s == std::complex<double>(0.0, 0.0));
    CHECK(b.intensity == 0.0);
    CHECK(b.delta_eff == p.omega_m);
    CHECK(b.omega_m_eff == p.omega_m);
    CHECK(b.g_eff == p.g_l);
    CHECK(b.spring_ratio == 1.0);
}

TEST_CASE("empty cavity: no couplings give the bare Lorentzian intensity") {
    SystemParams p = reference_params(0.0);
    p.g_l = 0.0;
    const DriveConfig d = reference_drive(p, 6.9);
    const auto branches = solve_steady_states(p, d);
    REQUIRE(branches.size() == 1);
    const double eps = drive_amplitude(p, d);
    const double expected = eps * eps / (p.kappa * p.kappa + d.detuning * d.detuning);
    CHECK(near_rel(branches[0].intensity, expected, 1e-12));
    CHECK(branches[0].x_s == 0.0);
}

TEST_CASE("fixed-point oracle at the reference drive without quadratic coupling") {
    const SystemParams p = reference_params(0.0);
    const DriveConfig d = reference_drive(p, 6.9);
    const double eps2 = std::pow(drive_amplitude(p, d), 2);

    double intensity = 0.0;
    for (int it = 0; it < 100000; ++it) {
        const double xs = -p.g_l * intensity / p.omega_m;
        const double dt = d.detuning + p.g_l * xs;
        const double next = eps2 / (p.kappa * p.kappa + dt * dt);
        if (std::abs(next - intensity) <= 1e-12 * next) {
            intensity = next;
            break;
        }
        intensity = next;
    }

    const auto branches = solve_steady_states(p, d);
    REQUIRE(branches.size() == 1);
    CHECK(near_rel(branches[0].intensity, intensity, 1e-10));
    CHECK(near_rel(branches[0].x_s, -p.g_l * branches[0].intensity / p.omega_m, 1e-12));
}

TEST_CASE("dense-scan oracle agrees at the reference point with softening coupling") {
    const SystemParams p = reference_params(-9e-6);
    const DriveConfig d = reference_drive(p, 6.9);
    auto branches = solve_steady_states(p, d);
    const auto oracle_roots = oracle_for(p, d).roots();
    REQUIRE(branches.size() == oracle_roots.size());
    for (std::size_t i = 0; i < branches.size(); ++i)
        CHECK(near_rel(branches[i].intensity, oracle_roots[i], 1e-8));

    // Exactly one of the coexisting branches is dynamically stable here.
    annotate_stability(p, branches);
    int stable = 0;
    for (const auto& b : branches) stable += b.stable;
    CHECK(stable == 1);
    CHECK(branches.front().stable);
}

TEST_CASE("polynomial roots match the dense scan over random parameter draws") {
    std::mt19937_64 rng(101);
    int done = 0;
    while (done < 200) {
        auto [p, d] = random_draw(rng, /*vary_system=*/true);
        if (d.power <= 1e-6) continue;
        // Exercise both coupling signs on the same footing.
        if (done % 3 == 0) p.g_l = -p.g_l;
        std::vector<SteadyStateBranch> branches;
        try {
            branches = solve_steady_states(p, d);
        } catch (const NoSteadyStateError&) {
            branches.clear();
        }
        const auto oracle_roots = oracle_for(p, d).roots();
        REQUIRE(branches.size() == oracle_roots.size());
        for (std::size_t i = 0; i < branches.size(); ++i)
            CHECK(near_rel(branches[i].intensity, oracle_roots[i], 1e-8));
        ++done;
    }
}

TEST_CASE("branch invariants on random draws") {
    std::mt19937_64 rng(202);
    int done = 0;
    while (done < 300) {
        auto [p, d] = random_draw(rng, /*vary_system=*/true);
        if (d.power <= 1e-6) continue;
        if (done % 2 == 0) p.g_l = -p.g_l;
        std::vector<SteadyStateBranch> branches;
        try {
            branches = solve_steady_states(p, d);
        } catch (const NoSteadyStateError&) {
            continue;
        }
        const double eps = drive_amplitude(p, d);
        for (std::size_t i = 0; i < branches.size(); ++i) {
            const auto& b = branches[i];
            CHECK(b.p_s == 0.0);
            CHECK(b.intensity >= 0.0);
            // Radiation-pressure balance.
            CHECK(steady_state_residual(p, d, b) < 1e-10);
            // Field equation residual.
            const std::complex<double> denom(p.kappa, b.delta_eff);
            CHECK(std::abs(b.a_s * denom - eps) <= 1e-10 * eps);
            // Intensity consistency with the field amplitude.
            CHECK(near_rel(std::norm(b.a_s), b.intensity, 1e-9));
            // Position sign is opposite the linear coupling sign.
            if (b.omega_m_eff > 0.0 && b.intensity > 0.0)
                CHECK(b.x_s * p.g_l <= 0.0);
            // Effective quantities are consistent.
            CHECK(near_rel(b.omega_m_eff, p.omega_m + 2.0 * p.g_q() * b.intensity, 1e-12));
            CHECK(near_rel(b.g_eff, p.g_l + 2.0 * p.g_q() * b.x_s, 1e-12));
            CHECK(near_rel(b.spring_ratio, b.omega_m_eff / p.omega_m, 1e-15));
            if (i > 0) CHECK(branches[i - 1].intensity < b.intensity);
        }
        ++done;
    }
}

TEST_CASE("vanishing quadratic coupling is continuous") {
    const SystemParams p0 = reference_params(0.0);
    const DriveConfig d = reference_drive(p0, 6.9);
    const double base = solve_steady_states(p0, d)[0].intensity;
    for (double ratio : {1e-12, -1e-12}) {
        const SystemParams p = reference_params(ratio);
        const auto branches = solve_steady_states(p, d);
        CHECK(near_rel(branches[0].intensity, base, 1e-6));
    }
}

TEST_CASE("quadratic parity softens or stiffens the spring") {
    const SystemParams soft = reference_params(-5e-6);
    const SystemParams stiff = reference_params(5e-6);
    const DriveConfig d = reference_drive(soft, 6.9);
    CHECK(solve_steady_states(soft, d)[0].spring_ratio < 1.0);
    CHECK(solve_steady_states(stiff, d)[0].spring_ratio > 1.0);
}

TEST_CASE("effective coupling scales with the field amplitude") {
    const SystemParams p = reference_params(0.0);
    const auto zero = solve_steady_states(p, {0.0, p.omega_m})[0];
    CHECK(effective_coupling(zero) == 0.0);
    CHECK(zero.g_eff == p.g_l);

    const auto b = solve_steady_states(p, reference_drive(p, 6.9))[0];
    CHECK(near_rel(effective_coupling(b), p.g_l * std::sqrt(b.intensity), 1e-12));
}

TEST_CASE("polynomial degree collapses without quadratic coupling") {
    const SystemParams p5 = reference_params(-9e-6);
    const SystemParams p3 = reference_params(0.0);
    const DriveConfig d = reference_drive(p5, 6.9);
    CHECK(steady_state_polynomial(p5, d).degree() == 5);
    CHECK(steady_state_polynomial(p3, d).degree() == 3);

    SystemParams p1 = p3;
    p1.g_l = 0.0;
    CHECK(steady_state_polynomial(p1, d).degree() == 1);
}

TEST_CASE("polynomial evaluates to zero at solved intensities") {
    const SystemParams p = reference_params(-9e-6);
    const DriveConfig d = reference_drive(p, 6.9);
    const RealPolynomial poly = steady_state_polynomial(p, d);
    double scale = 0.0;
    const double eps2 = std::pow(drive_amplitude(p, d), 2);
    const double iscale = eps2 / (p.kappa * p.kappa);
    double pw = 1.0;
    for (double c : poly.coeffs) {
        scale = std::max(scale, std::abs(c) * pw);
        pw *= iscale;
    }
    for (const auto& b : solve_steady_states(p, d))
        CHECK(std::abs(poly.eval(b.intensity)) <= 1e-8 * scale);
}

TEST_CASE("diagnostics record every filtered root") {
    const SystemParams p = reference_params(-9e-6);
    const DriveConfig d = reference_drive(p, 6.9);
    SteadyStateDiagnostics diag;
    const auto branches = solve_steady_states(p, d, &diag);
    CHECK(diag.raw_roots.size() == 5);
    CHECK(branches.size() + diag.rejected.size() == diag.raw_roots.size());
}

TEST_CASE("no-steady-state error carries its diagnostics") {
    SteadyStateDiagnostics diag;
    diag.raw_roots = {{1.0, 2.0}};
    diag.rejected.push_back({{1.0, 2.0}, "complex"});
    const NoSteadyStateError err(diag);
    CHECK(err.diagnostics().rejected.size() == 1);
    CHECK(err.diagnostics().rejected[0].reason == "complex");
    CHECK(std::string(err.what()).find("no physical steady state") != std::string::npos);
}
