#include "omniso/full.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "omniso/optimize.hpp"

namespace omniso {

namespace {
constexpr cplx I1(0.0, 1.0);
}

FullMatrices build_full_matrices(const FullNetworkParams& p) {
    const SixModeMatrices m6 = build_matrices6(p.net);
    Eigen::Matrix<cplx, 6, 6> A = m6.M;
    A += I1 * p.omega_m * Eigen::Matrix<cplx, 6, 6>::Identity();

    Eigen::Matrix<cplx, 6, 6> B = Eigen::Matrix<cplx, 6, 6>::Zero();
    const cplx ph = std::exp(-I1 * p.net.theta);
    B(0, 2) = B(2, 0) = I1 * p.net.G1;
    B(1, 3) = B(3, 1) = I1 * p.net.G2 * ph;
    B(2, 4) = B(4, 2) = I1 * p.net.Gd1;
    B(3, 5) = B(5, 3) = I1 * p.net.Gd2;

    FullMatrices r;
    r.M.topLeftCorner<6, 6>() = A;
    r.M.topRightCorner<6, 6>() = B;
    r.M.bottomLeftCorner<6, 6>() = B.conjugate();
    r.M.bottomRightCorner<6, 6>() = A.conjugate();
    r.L.head<6>() = m6.L;
    r.L.tail<6>() = m6.L;
    return r;
}

Eigen::Matrix<cplx, 12, 12> full_scattering_matrix(const FullNetworkParams& p, double omega) {
    const FullMatrices m = build_full_matrices(p);
    Eigen::Matrix<cplx, 12, 12> A =
        m.M - I1 * omega * Eigen::Matrix<cplx, 12, 12>::Identity();
    Eigen::JacobiSVD<Eigen::Matrix<cplx, 12, 12>> svd(A);
    const double smin = svd.singularValues()(11);
    const double smax = svd.singularValues()(0);
    if (!(smin > 0.0) || !(smax / smin < 1e12))
        throw SingularResponse("doubled response matrix ill-conditioned at omega = " +
                               std::to_string(omega));
    const Eigen::Matrix<cplx, 12, 12> Ainv =
        A.partialPivLu().solve(Eigen::Matrix<cplx, 12, 12>::Identity());
    const Eigen::Matrix<cplx, 12, 1> L = m.L.cast<cplx>();
    Eigen::Matrix<cplx, 12, 12> U = L.asDiagonal() * Ainv * L.asDiagonal();
    U -= Eigen::Matrix<cplx, 12, 12>::Identity();
    return U;
}

NoiseSpectrumPoint full_scattering(const FullNetworkParams& p, double omega) {
    const Eigen::Matrix<cplx, 12, 12> U = full_scattering_matrix(p, omega);
    NoiseSpectrumPoint out;
    out.omega = omega;
    out.T_forward = std::norm(U(1, 0)) + std::norm(U(1, 6));
    out.T_backward = std::norm(U(0, 1)) + std::norm(U(0, 7));
    for (int k = 6; k < 12; ++k) {
        out.S_c1_vac += std::norm(U(0, k));
        out.S_c2_vac += std::norm(U(1, k));
    }
    return out;
}

double power_ratio(double omega_m, double kappa) {
    const double r = omega_m / kappa;
    return 1.0 + 4.0 * r * r;
}

std::vector<SidebandRow> sideband_sweep(const std::vector<double>& ratios,
                                        double Gamma_over_kappa, double kappad_over_kappa) {
    const double kappa = 1.0;
    const double Gamma = Gamma_over_kappa * kappa;
    std::vector<SidebandRow> rows;
    rows.reserve(ratios.size());
    for (double ratio : ratios) {
        const double Jm = optimal_Jm(Gamma, kappa);
        const Design d = optimal_design(Gamma, kappa, Jm);
        FullNetworkParams p;
        p.net = from_Gamma_pumped(Gamma, Gamma, kappa, kappad_over_kappa * kappa);
        p.net.Jm = Jm;
        p.net.J0 = d.J0;
        p.net.G1 = p.net.G2 = d.G;
        p.omega_m = ratio * kappa;

        const NoiseSpectrumPoint pt = full_scattering(p, p.omega_m + d.omega_opt);
        SidebandRow row;
        row.ratio = ratio;
        row.isolation_dB = std::min(
            10.0 * std::log10(pt.T_forward / std::max(pt.T_backward, pt.T_forward * 1e-20)),
            200.0);
        row.S_vac = pt.S_c2_vac;
        row.P2_over_P3 = power_ratio(p.omega_m, kappa);
        rows.push_back(row);
    }
    return rows;
}

std::vector<double> full_spectrum_grid(const FullNetworkParams& p) {
    const double span = std::max(p.net.kappa1, p.net.kappa2);
    const double Gamma = std::max(p.net.Gamma1(), p.net.Gamma2());
    const double w0 =
        std::sqrt(p.net.Jm * p.net.Jm + p.net.Gamma1() * p.net.Gamma2() / 4.0);

    std::vector<double> pts = linspace(p.omega_m - 2.0 * span, p.omega_m + 2.0 * span, 4096);
    if (Gamma > 0.0 && w0 > 0.0) {
        const double lo10 = std::log10(1e-9 * Gamma);
        const double hi10 = std::log10(5.0 * Gamma);
        for (double c : {p.omega_m - w0, p.omega_m + w0}) {
            for (double s : logspace(lo10, hi10, 600)) {
                pts.push_back(c + s);
                pts.push_back(c - s);
            }
            pts.push_back(c);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace omniso
