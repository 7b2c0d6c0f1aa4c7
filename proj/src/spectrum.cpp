#include "omsim/spectrum.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "omsim/constants.hpp"
#include "omsim/linearized.hpp"

namespace omsim {

namespace {

using Complex = std::complex<double>;
const Complex kI(0.0, 1.0);

Complex x_a_at(const SystemParams& p, const SteadyStateBranch& b, double omega) {
    return std::sqrt(2.0 * p.kappa) * p.omega_m * b.g_eff * std::conj(b.a_s) *
           (p.kappa - kI * omega - kI * b.delta_eff);
}

}  // namespace

const char* to_string(SpectrumMethod method) {
    switch (method) {
        case SpectrumMethod::AnalyticEq10Corrected: return "analytic_corrected";
        case SpectrumMethod::AnalyticEq10AsPrinted: return "analytic_as_printed";
        case SpectrumMethod::TransferAssembly: return "transfer_assembly";
        case SpectrumMethod::MatrixOracle: return "matrix_oracle";
    }
    return "unknown";
}

TransferCoefficients transfer_coefficients(const SystemParams& p, const SteadyStateBranch& b,
                                           double omega) {
    const double dt = b.delta_eff;
    const Complex km = p.kappa - kI * omega;
    const Complex optical = km * km + dt * dt;
    const Complex mechanical =
        omega * omega + kI * p.gamma_m * omega - p.omega_m * b.omega_m_eff;

    TransferCoefficients tc;
    tc.d_omega = optical * mechanical +
                 2.0 * b.g_eff * b.g_eff * b.intensity * dt * p.omega_m;
    tc.x_a = x_a_at(p, b, omega);
    tc.x_a_dag = std::conj(x_a_at(p, b, -omega));
    tc.x_xi = p.omega_m * optical;
    return tc;
}

SpectrumChannels s_xx_channels_assembly(const SystemParams& p, const SteadyStateBranch& b,
                                        double omega) {
    const TransferCoefficients tc = transfer_coefficients(p, b, omega);
    const double d2 = std::norm(tc.d_omega);
    // Symmetrized input-noise weight: 1/2(|X_a(w)|^2 + |X_a(-w)|^2) from the
    // vacuum correlation, |X_xi|^2 (w gm/wm) coth(hw/2kT) from the Brownian one.
    const double xa2 = 0.5 * (std::norm(tc.x_a) + std::norm(x_a_at(p, b, -omega)));
    const double thermal_weight =
        omega_coth(omega, p.temperature, CothConvention::Half) * p.gamma_m / p.omega_m;

    SpectrumChannels ch;
    ch.radiation = xa2 / d2;
    ch.thermal = std::norm(tc.x_xi) * thermal_weight / d2;
    return ch;
}

SpectrumChannels s_xx_channels_oracle(const SystemParams& p, const SteadyStateBranch& b,
                                      double omega) {
    const DriftMatrix dm = build_drift_matrix(p, b);

    // Row 0 of (-i w Id - A)^{-1}: solve the transposed system for e_0.
    auto response_row = [&](double w) -> Eigen::Vector4cd {
        Eigen::Matrix4cd m = -kI * w * Eigen::Matrix4cd::Identity() -
                             dm.a.cast<Complex>();
        Eigen::FullPivLU<Eigen::Matrix4cd> lu(m.transpose());
        if (!lu.isInvertible() || lu.rcond() < 1e-12)
            throw SingularSystemError("spectrum oracle: singular response at omega=" +
                                      std::to_string(w));
        Eigen::Vector4cd e0 = Eigen::Vector4cd::Zero();
        e0(0) = 1.0;
        return lu.solve(e0);
    };

    // dx(w) = R1 xi + sqrt(2k)(R2 dX_in + R3 dY_in)
    //       = R1 xi + sqrt(k) [(R2 - i R3) da_in + (R2 + i R3) da_in^dag]
    auto channels_at = [&](double w) {
        const Eigen::Vector4cd r = response_row(w);
        struct {
            Complex t_xi, t_a;
        } out;
        out.t_xi = r(1);
        out.t_a = std::sqrt(p.kappa) * (r(2) - kI * r(3));
        return out;
    };

    const auto fw = channels_at(omega);
    const auto bw = channels_at(-omega);

    SpectrumChannels ch;
    ch.radiation = 0.5 * (std::norm(fw.t_a) + std::norm(bw.t_a));
    ch.thermal = std::norm(fw.t_xi) *
                 omega_coth(omega, p.temperature, CothConvention::Half) * p.gamma_m /
                 p.omega_m;
    return ch;
}

double s_xx(const SystemParams& p, const SteadyStateBranch& b, double omega,
            SpectrumMethod method) {
    switch (method) {
        case SpectrumMethod::TransferAssembly:
            return s_xx_channels_assembly(p, b, omega).total();
        case SpectrumMethod::MatrixOracle:
            return s_xx_channels_oracle(p, b, omega).total();
        case SpectrumMethod::AnalyticEq10Corrected: {
            const double dt = b.delta_eff;
            const double u = p.kappa * p.kappa + omega * omega + dt * dt;
            const double d2 = std::norm(transfer_coefficients(p, b, omega).d_omega);
            const double radiation =
                2.0 * b.g_eff * b.g_eff * b.intensity * p.kappa * p.omega_m * u;
            const double thermal =
                omega_coth(omega, p.temperature, CothConvention::Half) * p.gamma_m *
                (u * u - 4.0 * omega * omega * dt * dt);
            return p.omega_m / d2 * (radiation + thermal);
        }
        case SpectrumMethod::AnalyticEq10AsPrinted: {
            // Published form: |D| to the first power, coth(hw/kT), and an
            // unsquared detuning in the last term.
            const double dt = b.delta_eff;
            const double u = p.kappa * p.kappa + omega * omega + dt * dt;
            const double dmag = std::abs(transfer_coefficients(p, b, omega).d_omega);
            const double radiation =
                2.0 * b.g_eff * b.g_eff * b.intensity * p.kappa * p.omega_m * u;
            const double thermal =
                omega_coth(omega, p.temperature, CothConvention::Full) * p.gamma_m *
                (u * u - 4.0 * omega * omega * dt);
            return p.omega_m / dmag * (radiation + thermal);
        }
    }
    throw std::logic_error("s_xx: unknown method");
}

SpectrumResult sample_spectrum(const SystemParams& p, const SteadyStateBranch& b,
                               const std::vector<double>& omegas, SpectrumMethod method) {
    SpectrumResult out;
    out.frequencies = omegas;
    out.method = method;
    out.s_xx.resize(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) out.s_xx[i] = s_xx(p, b, omegas[i], method);
    return out;
}

std::vector<double> frequency_grid(const SystemParams& p, double lo, double hi, int points) {
    std::vector<double> w(points);
    for (int i = 0; i < points; ++i)
        w[i] = p.omega_m * (lo + (hi - lo) * i / static_cast<double>(points - 1));
    return w;
}

std::vector<double> default_nms_grid(const SystemParams& p) {
    return frequency_grid(p, 0.9, 1.1, 4001);
}

}  // namespace omsim
