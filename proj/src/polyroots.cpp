#include "omsim/polyroots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace omsim {

using Complex = std::complex<double>;

Complex polynomial_eval(const std::vector<Complex>& coeffs, Complex z) {
    Complex acc(0.0, 0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

namespace {

Complex polynomial_derivative_eval(const std::vector<Complex>& coeffs, Complex z) {
    Complex acc(0.0, 0.0);
    for (std::size_t k = coeffs.size(); k-- > 1;)
        acc = acc * z + static_cast<double>(k) * coeffs[k];
    return acc;
}

// Parlett-Reinsch balancing (diagonal similarity). Companion matrices of
// polynomials whose roots span many decades are badly scaled; balancing
// restores the eigenvalue accuracy of the small roots.
void balance(Eigen::MatrixXcd& a) {
    const int n = static_cast<int>(a.rows());
    const double radix = 2.0;
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 0; i < n; ++i) {
            double row = 0.0, col = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                col += std::abs(a(j, i));
                row += std::abs(a(i, j));
            }
            if (col == 0.0 || row == 0.0) continue;
            const double sum = col + row;
            double f = 1.0;
            double g = row / radix;
            while (col < g) {
                f *= radix;
                col *= radix * radix;
            }
            g = row * radix;
            while (col > g) {
                f /= radix;
                col /= radix * radix;
            }
            if ((col + row) / f < 0.95 * sum) {
                done = false;
                a.row(i) *= 1.0 / f;
                a.col(i) *= f;
            }
        }
    }
}

// A couple of Newton steps against the original coefficients removes the
// O(eps * cond) error of the companion eigenvalues.
Complex polish(const std::vector<Complex>& coeffs, Complex z) {
    for (int it = 0; it < 8; ++it) {
        const Complex p = polynomial_eval(coeffs, z);
        const Complex dp = polynomial_derivative_eval(coeffs, z);
        if (std::abs(dp) == 0.0) break;
        const Complex step = p / dp;
        z -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) break;
    }
    return z;
}

}  // namespace

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs_in) {
    std::vector<Complex> coeffs = coeffs_in;

    double max_abs = 0.0;
    for (const auto& c : coeffs) max_abs = std::max(max_abs, std::abs(c));
    if (max_abs == 0.0) throw std::invalid_argument("polynomial_roots: zero polynomial");

    // Only exact zeros are trimmed here. Coefficients of a physical
    // polynomial carry different units per power, so a relative threshold
    // against max|c| is meaningless; callers rescale their variable first
    // when they want near-zero leading terms dropped.
    while (coeffs.size() > 1 && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (n < 1) throw std::invalid_argument("polynomial_roots: constant polynomial");

    // Monic form, then substitute z = s*w with the classical root-radius
    // scale so the companion entries are O(1).
    std::vector<Complex> monic(n + 1);
    for (int k = 0; k <= n; ++k) monic[k] = coeffs[k] / coeffs[n];
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
        const double a = std::abs(monic[k]);
        if (a > 0.0) s = std::max(s, std::pow(a, 1.0 / (n - k)));
    }
    if (s == 0.0) s = 1.0;
    // w-polynomial coefficients monic[k] * s^(k-n); leading term stays 1.
    std::vector<Complex> scaled(n + 1);
    double sk = 1.0;
    for (int k = n; k >= 0; --k) {
        scaled[k] = monic[k] / sk;
        sk *= s;
    }

    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -scaled[i];
    balance(companion);

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("polynomial_roots: eigenvalue iteration failed");

    std::vector<Complex> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = polish(coeffs, s * solver.eigenvalues()(i));

    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

}  // namespace omsim
