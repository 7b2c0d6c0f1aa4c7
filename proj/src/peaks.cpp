#include "omsim/peaks.hpp"

#include <algorithm>
#include <cmath>

#include "omsim/polyroots.hpp"

namespace omsim {

namespace {
using Complex = std::complex<double>;
}

std::array<Complex, 4> quartic_roots(const std::array<Complex, 5>& coeffs) {
    double max_abs = 0.0;
    for (const auto& c : coeffs) max_abs = std::max(max_abs, std::abs(c));
    if (max_abs == 0.0 || std::abs(coeffs[4]) == 0.0)
        throw DegenerateQuarticError("quartic_roots: leading coefficient vanishes");

    // Degree degeneracy must be judged at the root scale of the cubic part,
    // since the coefficients carry different powers of frequency.
    double scale = 0.0;
    for (int k = 3; k >= 0 && scale == 0.0; --k) {
        if (std::abs(coeffs[k]) == 0.0) continue;
        for (int j = 0; j < k; ++j) {
            const double a = std::abs(coeffs[j] / coeffs[k]);
            if (a > 0.0) scale = std::max(scale, std::pow(a, 1.0 / (k - j)));
        }
        break;
    }
    if (scale > 0.0) {
        double contribution = std::abs(coeffs[4]);
        for (int i = 0; i < 4; ++i) contribution *= scale;
        double max_term = 0.0;
        double pw = 1.0;
        for (int k = 0; k <= 3; ++k) {
            max_term = std::max(max_term, std::abs(coeffs[k]) * pw);
            pw *= scale;
        }
        if (contribution <= 1e-12 * max_term)
            throw DegenerateQuarticError("quartic_roots: leading coefficient vanishes");
    }

    const std::vector<Complex> as_vec(coeffs.begin(), coeffs.end());
    const std::vector<Complex> roots = polynomial_roots(as_vec);
    if (roots.size() != 4)
        throw DegenerateQuarticError("quartic_roots: degree collapsed during solve");
    std::array<Complex, 4> out;
    std::copy(roots.begin(), roots.end(), out.begin());
    return out;
}

std::array<Complex, 5> d_polynomial_coefficients(const SystemParams& p,
                                                 const SteadyStateBranch& b) {
    const double k = p.kappa;
    const double gm = p.gamma_m;
    const double wm = p.omega_m;
    const double wme = b.omega_m_eff;
    const double dt = b.delta_eff;
    const double k2d2 = k * k + dt * dt;

    const double s1 = k2d2 + 2.0 * k * gm + wme * wm;
    const double s2 = k2d2 * gm + 2.0 * k * wme * wm;
    const double s3 = k2d2 * wme * wm - 2.0 * dt * wm * b.g_eff * b.g_eff * b.intensity;

    return {Complex(-s3, 0.0), Complex(0.0, s2), Complex(s1, 0.0),
            Complex(0.0, -(2.0 * k + gm)), Complex(-1.0, 0.0)};
}

NmsPeaks exact_peaks(const SystemParams& p, const SteadyStateBranch& b) {
    std::array<Complex, 4> roots = quartic_roots(d_polynomial_coefficients(p, b));

    NmsPeaks peaks;
    peaks.raw_roots = roots;

    // The real-coefficient structure of the underlying dynamics makes the
    // root set closed under w -> -conj(w): pairs share |Im| and mirror Re.
    // Pair by nearest |Re|; a pair of near-imaginary roots (critically
    // damped) is also accepted, with position 0 and both widths in one pair.
    std::array<Complex, 4> sorted = roots;
    std::sort(sorted.begin(), sorted.end(), [](const Complex& a, const Complex& c) {
        const double ra = std::abs(a.real()), rc = std::abs(c.real());
        if (ra != rc) return ra < rc;
        if (a.real() != c.real()) return a.real() < c.real();
        return a.imag() < c.imag();
    });

    double scale = 0.0;
    for (const auto& r : sorted) scale = std::max(scale, std::abs(r));
    const double tol = 1e-6 * std::max(scale, 1.0);

    struct Pair {
        double position;
        double width;
    };
    std::array<Pair, 2> pairs;
    for (int i = 0; i < 2; ++i) {
        const Complex& a = sorted[2 * i];
        const Complex& c = sorted[2 * i + 1];
        if (std::abs(a.real() + c.real()) > tol)
            throw RootClassificationError(
                "exact_peaks: roots do not form mirrored pairs", roots);
        pairs[i] = {0.5 * (std::abs(a.real()) + std::abs(c.real())),
                    std::abs(a.imag()) + std::abs(c.imag())};
    }
    if (pairs[0].position > pairs[1].position) std::swap(pairs[0], pairs[1]);

    peaks.omega_minus = pairs[0].position;
    peaks.gamma_minus = pairs[0].width;
    peaks.omega_plus = pairs[1].position;
    peaks.gamma_plus = pairs[1].width;
    // Degenerate positions: keep the narrower pair as "+" for determinism.
    if (std::abs(peaks.omega_plus - peaks.omega_minus) <= tol &&
        peaks.gamma_plus > peaks.gamma_minus) {
        std::swap(peaks.gamma_plus, peaks.gamma_minus);
    }
    peaks.resolved =
        peaks.omega_plus - peaks.omega_minus > 0.5 * (peaks.gamma_plus + peaks.gamma_minus);
    return peaks;
}

ApproxPeaks approx_peaks(const SystemParams& p, const SteadyStateBranch& b) {
    ApproxPeaks out;
    if (!(p.kappa > 100.0 * p.gamma_m))
        out.warnings.push_back("kappa >> gamma_m not satisfied");
    if (!(std::abs(b.delta_eff) > 100.0 * p.gamma_m))
        out.warnings.push_back("delta_eff >> gamma_m not satisfied");

    const double wa2 = p.kappa * p.kappa + b.delta_eff * b.delta_eff;
    const double wb2 = p.omega_m * b.omega_m_eff;
    const double radicand = (wa2 - wb2) * (wa2 - wb2) +
                            8.0 * p.omega_m * b.intensity * b.g_eff * b.g_eff * b.delta_eff;
    if (radicand < 0.0)
        throw ImaginaryFrequencyError("approx_peaks: negative discriminant");
    const double half_sum = 0.5 * (wa2 + wb2);
    const double half_root = 0.5 * std::sqrt(radicand);
    const double wp2 = half_sum + half_root;
    const double wm2 = half_sum - half_root;
    if (wm2 < 0.0 || wp2 < 0.0)
        throw ImaginaryFrequencyError("approx_peaks: negative squared peak position");
    out.omega_plus = std::sqrt(wp2);
    out.omega_minus = std::sqrt(wm2);
    return out;
}

bool nms_threshold(const SystemParams& p, const SteadyStateBranch& b) {
    return effective_coupling(b) > p.kappa + 0.5 * p.gamma_m;
}

}  // namespace omsim
