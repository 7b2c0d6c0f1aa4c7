#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "omsim/linearized.hpp"
#include "omsim/spectrum.hpp"
#include "omsim/steady_state.hpp"

using namespace omsim;
using omsim::testing::near_rel;
using omsim::testing::random_draw;
using omsim::testing::reference_drive;
using omsim::testing::reference_params;

namespace {

// Independent characteristic polynomial via Faddeev-LeVerrier:
// returns ascending coefficients {c0, c1, c2, c3, 1} of det(lambda I - A).
std::array<double, 5> char_poly(const Eigen::Matrix4d& a) {
    std::array<double, 5> c{};
    c[4] = 1.0;
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    for (int k = 1; k <= 4; ++k) {
        m = a * m + c[5 - k] * Eigen::Matrix4d::Identity();
        c[4 - k] = -(a * m).trace() / k;
    }
    return c;
}

}  // namespace

TEST_CASE("undriven system decouples into mechanical and optical blocks") {
    const SystemParams p = reference_params(3e-6);
    const DriveConfig d{0.0, 0.7 * p.omega_m};
    const auto b = solve_steady_states(p, d)[0];
    const DriftMatrix dm = build_drift_matrix(p, b);

    CHECK(dm.x_quad == 0.0);
    CHECK(dm.y_quad == 0.0);
    Eigen::Matrix4d expected;
    expected << 0.0, p.omega_m, 0.0, 0.0,
        -p.omega_m, -p.gamma_m, 0.0, 0.0,
        0.0, 0.0, -p.kappa, d.detuning,
        0.0, 0.0, -d.detuning, -p.kappa;
    CHECK((dm.a - expected).cwiseAbs().maxCoeff() == 0.0);

    // Closed-form eigenvalues of the two 2x2 blocks.
    const Eigen::EigenSolver<Eigen::Matrix4d> solver(dm.a);
    std::vector<std::complex<double>> eigs(4);
    for (int i = 0; i < 4; ++i) eigs[i] = solver.eigenvalues()(i);
    std::sort(eigs.begin(), eigs.end(), [](auto x, auto y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    const double nu = std::sqrt(p.omega_m * p.omega_m - 0.25 * p.gamma_m * p.gamma_m);
    std::vector<std::complex<double>> expected_eigs = {
        {-p.kappa, -d.detuning}, {-p.kappa, d.detuning},
        {-0.5 * p.gamma_m, -nu}, {-0.5 * p.gamma_m, nu}};
    std::sort(expected_eigs.begin(), expected_eigs.end(), [](auto x, auto y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(eigs[i] - expected_eigs[i]) <= 1e-10 * std::abs(expected_eigs[i]));
}

TEST_CASE("matrix structure invariants on random branches") {
    std::mt19937_64 rng(31);
    int done = 0;
    while (done < 200) {
        auto [p, d] = random_draw(rng, true, true);
        std::vector<SteadyStateBranch> branches;
        try {
            branches = solve_steady_states(p, d);
        } catch (const NoSteadyStateError&) {
            continue;
        }
        for (const auto& b : branches) {
            const DriftMatrix dm = build_drift_matrix(p, b);
            CHECK(dm.a(0, 0) == 0.0);
            CHECK(dm.a(0, 1) == p.omega_m);
            CHECK(dm.a(0, 2) == 0.0);
            CHECK(dm.a(0, 3) == 0.0);
            CHECK(near_rel(dm.a.trace(), -(p.gamma_m + 2.0 * p.kappa), 1e-12));
            CHECK(near_rel(dm.x_quad * dm.x_quad + dm.y_quad * dm.y_quad,
                           2.0 * b.intensity, 1e-12));
        }
        ++done;
    }
}

TEST_CASE("strong softening drive destabilizes every branch") {
    const SystemParams p = reference_params(-9e-6);
    const DriveConfig d = reference_drive(p, 10.7);
    auto branches = solve_steady_states(p, d);
    for (const auto& b : branches) {
        const StabilityReport r = routh_hurwitz(p, b);
        CHECK_FALSE(r.rh_stable);
        CHECK_FALSE(r.eig_stable);
    }
}

TEST_CASE("moderate drive is stable across the coupling-ratio sweep") {
    for (int i = 0; i < 50; ++i) {
        const double ratio = -9e-6 + 18e-6 * i / 49.0;
        const SystemParams p = reference_params(ratio);
        const DriveConfig d = reference_drive(p, 6.9);
        const auto branches = solve_steady_states(p, d);
        const StabilityReport r = routh_hurwitz(p, branches[0]);
        CHECK(r.eig_stable);
        CHECK(r.rh_stable);
    }
}

TEST_CASE("undriven blue-detuned point is trivially stable") {
    const SystemParams p = reference_params(0.0);
    const auto b = solve_steady_states(p, {0.0, 0.5 * p.omega_m})[0];
    const StabilityReport r = routh_hurwitz(p, b);
    CHECK(r.rh_stable);
    CHECK(r.eig_stable);
    CHECK(r.s1 > 0.0);
    CHECK(r.s2 > 0.0);
    CHECK(r.s3 > 0.0);
    CHECK(r.cond4);
    CHECK(r.cond5);
}

TEST_CASE("algebraic and eigenvalue verdicts agree away from marginality") {
    std::mt19937_64 rng(47);
    int done = 0;
    int unstable_seen = 0;
    while (done < 1000) {
        auto [p, d] = random_draw(rng, true, true);
        std::vector<SteadyStateBranch> branches;
        try {
            branches = solve_steady_states(p, d);
        } catch (const NoSteadyStateError&) {
            continue;
        }
        for (const auto& b : branches) {
            const StabilityReport r = routh_hurwitz(p, b);
            if (r.marginal) continue;
            CHECK(r.rh_stable == r.eig_stable);
            unstable_seen += !r.eig_stable;
            if (++done >= 1000) break;
        }
    }
    // The draw ranges genuinely exercise both verdict directions.
    CHECK(unstable_seen > 50);
    CHECK(unstable_seen < 950);
}

TEST_CASE("characteristic polynomial matches the transfer denominator") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> wfrac(0.05, 3.0);
    int done = 0;
    while (done < 100) {
        auto [p, d] = random_draw(rng, true, true);
        std::vector<SteadyStateBranch> branches;
        try {
            branches = solve_steady_states(p, d);
        } catch (const NoSteadyStateError&) {
            continue;
        }
        const auto& b = branches[0];
        const auto coeffs = char_poly(build_drift_matrix(p, b).a);
        for (int k = 0; k < 5; ++k) {
            const double omega = wfrac(rng) * p.omega_m;
            // Evaluate det(lambda I - A) at lambda = -i omega.
            const std::complex<double> lambda(0.0, -omega);
            std::complex<double> det(0.0, 0.0);
            for (int j = 4; j >= 0; --j) det = det * lambda + coeffs[j];
            const std::complex<double> d_omega =
                transfer_coefficients(p, b, omega).d_omega;
            CHECK(std::abs(d_omega + det) <= 1e-10 * std::abs(d_omega));
        }
        ++done;
    }
}

TEST_CASE("annotate_stability fills the branch flags") {
    const SystemParams p = reference_params(0.0);
    const DriveConfig d = reference_drive(p, 10.7);
    auto branches = solve_steady_states(p, d);
    REQUIRE(branches.size() == 3);
    annotate_stability(p, branches);
    CHECK(branches[0].stable);
    CHECK_FALSE(branches[1].stable);
    CHECK_FALSE(branches[2].stable);
}
