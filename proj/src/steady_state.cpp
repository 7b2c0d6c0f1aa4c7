#include "omsim/steady_state.hpp"

#include <algorithm>
#include <cmath>

#include "omsim/polyroots.hpp"

namespace omsim {

namespace {

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

void poly_axpy(std::vector<double>& acc, double scale, const std::vector<double>& p) {
    if (acc.size() < p.size()) acc.resize(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) acc[i] += scale * p[i];
}

struct BranchGeometry {
    double s;          // omega_m + 2 g_q I
    double x_s;
    double delta_eff;
};

BranchGeometry geometry_at(const SystemParams& p, const DriveConfig& d, double intensity) {
    BranchGeometry g;
    g.s = p.omega_m + 2.0 * p.g_q() * intensity;
    g.x_s = -p.g_l * intensity / g.s;
    g.delta_eff = d.detuning + p.g_l * g.x_s + p.g_q() * g.x_s * g.x_s;
    return g;
}

SteadyStateBranch make_branch(const SystemParams& p, const DriveConfig& d, double intensity,
                              double eps) {
    SteadyStateBranch b;
    if (intensity == 0.0 && eps == 0.0) {
        b.delta_eff = d.detuning;
        b.omega_m_eff = p.omega_m;
        b.g_eff = p.g_l;
        b.spring_ratio = 1.0;
        return b;
    }
    const BranchGeometry g = geometry_at(p, d, intensity);
    b.x_s = g.x_s;
    b.p_s = 0.0;
    b.delta_eff = g.delta_eff;
    b.a_s = eps / std::complex<double>(p.kappa, g.delta_eff);
    b.intensity = intensity;
    b.omega_m_eff = p.omega_m + 2.0 * p.g_q() * intensity;
    b.g_eff = p.g_l + 2.0 * p.g_q() * g.x_s;
    b.spring_ratio = b.omega_m_eff / p.omega_m;
    return b;
}

// Newton refinement of f(I) = I (kappa^2 + delta_eff(I)^2) - eps^2.
// d(delta_eff)/dI = -(g_l + 2 g_q x_s) g_l omega_m / s^2.
bool refine_intensity(const SystemParams& p, const DriveConfig& d, double eps2, double& intensity) {
    for (int it = 0; it < 60; ++it) {
        const BranchGeometry g = geometry_at(p, d, intensity);
        const double f = intensity * (p.kappa * p.kappa + g.delta_eff * g.delta_eff) - eps2;
        const double dxs = -p.g_l * p.omega_m / (g.s * g.s);
        const double ddelta = (p.g_l + 2.0 * p.g_q() * g.x_s) * dxs;
        const double df = p.kappa * p.kappa + g.delta_eff * g.delta_eff +
                          2.0 * intensity * g.delta_eff * ddelta;
        if (df == 0.0 || !std::isfinite(df)) return false;
        double next = intensity - f / df;
        if (next < 0.0) next = 0.5 * intensity;
        const bool done = std::abs(next - intensity) <= 1e-15 * std::max(1.0, std::abs(next));
        intensity = next;
        if (done) return true;
    }
    return true;  // converged enough in practice; residual is checked afterwards
}

}  // namespace

int RealPolynomial::degree() const {
    // Coefficients carry different units per power of I, so only exact zeros
    // can be trimmed; vanishing couplings produce exact zeros by construction.
    int d = static_cast<int>(coeffs.size()) - 1;
    while (d >= 0 && coeffs[d] == 0.0) --d;
    return d;
}

NoSteadyStateError::NoSteadyStateError(SteadyStateDiagnostics diag)
    : std::runtime_error("no physical steady state found (" +
                         std::to_string(diag.rejected.size()) + " roots filtered)"),
      diag_(std::move(diag)) {}

RealPolynomial steady_state_polynomial(const SystemParams& params, const DriveConfig& drive) {
    params.validate();
    const double eps = drive_amplitude(params, drive);
    const double eps2 = eps * eps;
    const double gq = params.g_q();
    const double gl2 = params.g_l * params.g_l;

    // s = omega_m + 2 g_q I
    const std::vector<double> s{params.omega_m, 2.0 * gq};
    const std::vector<double> s2 = poly_mul(s, s);
    const std::vector<double> s4 = poly_mul(s2, s2);

    // N = Delta s^2 - g_l^2 I s + g_q g_l^2 I^2, so delta_eff = N / s^2.
    std::vector<double> N(3, 0.0);
    poly_axpy(N, drive.detuning, s2);
    poly_axpy(N, -gl2, std::vector<double>{0.0, s[0], s[1]});
    N[2] += gq * gl2;

    // P = I (kappa^2 s^4 + N^2) - eps^2 s^4
    std::vector<double> inner = poly_mul(N, N);
    poly_axpy(inner, params.kappa * params.kappa, s4);
    std::vector<double> poly(inner.size() + 1, 0.0);
    for (std::size_t i = 0; i < inner.size(); ++i) poly[i + 1] = inner[i];
    poly_axpy(poly, -eps2, s4);

    return RealPolynomial{std::move(poly)};
}

std::vector<SteadyStateBranch> solve_steady_states(const SystemParams& params,
                                                   const DriveConfig& drive,
                                                   SteadyStateDiagnostics* diag) {
    params.validate();
    const double eps = drive_amplitude(params, drive);
    SteadyStateDiagnostics local;
    SteadyStateDiagnostics& dg = diag ? *diag : local;
    dg = SteadyStateDiagnostics{};

    if (eps == 0.0) {
        return {make_branch(params, drive, 0.0, 0.0)};
    }

    const double eps2 = eps * eps;
    const double intensity_scale = eps2 / (params.kappa * params.kappa);

    const RealPolynomial poly = steady_state_polynomial(params, drive);

    // Root-find on the rescaled variable y = I / intensity_scale so the
    // physical roots sit in [0, 1]. In the scaled variable a relative trim
    // of the leading coefficients is legitimate (this is what reduces the
    // quintic to the bistability cubic at g_q = 0).
    std::vector<std::complex<double>> scaled(poly.coeffs.size());
    double pw = 1.0;
    double max_abs = 0.0;
    for (std::size_t k = 0; k < poly.coeffs.size(); ++k) {
        scaled[k] = poly.coeffs[k] * pw;
        pw *= intensity_scale;
        max_abs = std::max(max_abs, std::abs(scaled[k]));
    }
    while (scaled.size() > 1 && std::abs(scaled.back()) <= 1e-14 * max_abs)
        scaled.pop_back();
    const std::vector<std::complex<double>> roots = polynomial_roots(scaled);

    std::vector<SteadyStateBranch> branches;
    for (const auto& y : roots) {
        const std::complex<double> root_intensity = y * intensity_scale;
        dg.raw_roots.push_back(root_intensity);
        if (std::abs(y.imag()) > 1e-8 * (1.0 + std::abs(y))) {
            dg.rejected.push_back({root_intensity, "complex"});
            continue;
        }
        double intensity = root_intensity.real();
        if (intensity < -1e-9 * intensity_scale) {
            dg.rejected.push_back({root_intensity, "negative"});
            continue;
        }
        intensity = std::max(intensity, 0.0);
        if (std::abs(params.omega_m + 2.0 * params.g_q() * intensity) < 1e-9 * params.omega_m) {
            dg.rejected.push_back({root_intensity, "singular-denominator"});
            continue;
        }
        if (!refine_intensity(params, drive, eps2, intensity)) {
            dg.rejected.push_back({root_intensity, "refinement-failed"});
            continue;
        }
        if (std::abs(params.omega_m + 2.0 * params.g_q() * intensity) < 1e-9 * params.omega_m) {
            dg.rejected.push_back({root_intensity, "singular-denominator"});
            continue;
        }
        SteadyStateBranch b = make_branch(params, drive, intensity, eps);
        if (steady_state_residual(params, drive, b) > 1e-10) {
            dg.rejected.push_back({root_intensity, "residual"});
            continue;
        }
        const bool dup = std::any_of(branches.begin(), branches.end(), [&](const auto& other) {
            return std::abs(other.intensity - intensity) <=
                   1e-9 * std::max(intensity_scale, intensity);
        });
        if (dup) {
            dg.rejected.push_back({root_intensity, "duplicate"});
            continue;
        }
        branches.push_back(std::move(b));
    }

    std::sort(branches.begin(), branches.end(),
              [](const auto& a, const auto& b) { return a.intensity < b.intensity; });
    if (branches.empty()) throw NoSteadyStateError(dg);
    return branches;
}

double effective_coupling(const SteadyStateBranch& branch) {
    return branch.g_eff * std::sqrt(branch.intensity);
}

double steady_state_residual(const SystemParams& params, const DriveConfig& drive,
                             const SteadyStateBranch& branch) {
    const double eps = drive_amplitude(params, drive);
    const double eps2 = eps * eps;
    const double lhs = branch.intensity *
                       (params.kappa * params.kappa + branch.delta_eff * branch.delta_eff);
    if (eps2 == 0.0) return std::abs(lhs);
    return std::abs(lhs - eps2) / eps2;
}

}  // namespace omsim
