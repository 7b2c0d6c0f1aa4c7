#pragma once

#include <complex>
#include <vector>

namespace omsim {

/// All roots of a polynomial with complex coefficients, computed as the
/// eigenvalues of the balanced companion matrix and refined by Newton steps
/// on the original coefficients. Coefficients are ascending: c[0] + c[1] z + ...
/// Leading coefficients with |c| <= 1e-14 * max|c| are trimmed, so the
/// effective degree may be lower than coeffs.size() - 1. Roots are returned
/// sorted by (Re, Im). Throws std::invalid_argument if the polynomial is
/// identically zero or constant.
std::vector<std::complex<double>> polynomial_roots(
    const std::vector<std::complex<double>>& coeffs);

/// Horner evaluation, ascending coefficients.
std::complex<double> polynomial_eval(const std::vector<std::complex<double>>& coeffs,
                                     std::complex<double> z);

}  // namespace omsim
