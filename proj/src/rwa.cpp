#include "omniso/rwa.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "omniso/optimize.hpp"

namespace omniso {

namespace {

constexpr cplx I1(0.0, 1.0);

template <int N>
Eigen::Matrix<cplx, N, N> invert_response(const Eigen::Matrix<cplx, N, N>& M, double omega) {
    Eigen::Matrix<cplx, N, N> A = M - I1 * omega * Eigen::Matrix<cplx, N, N>::Identity();
    Eigen::JacobiSVD<Eigen::Matrix<cplx, N, N>> svd(A);
    const double smin = svd.singularValues()(N - 1);
    const double smax = svd.singularValues()(0);
    if (!(smin > 0.0) || !(smax / smin < 1e12))
        throw SingularResponse("response matrix ill-conditioned at omega = " +
                               std::to_string(omega));
    return A.partialPivLu().solve(Eigen::Matrix<cplx, N, N>::Identity());
}

}  // namespace

NetworkParams from_Gamma_intrinsic(double Gamma1, double Gamma2, double kappa) {
    NetworkParams p;
    p.kappa1 = p.kappa2 = kappa;
    p.gamma1 = Gamma1;
    p.gamma2 = Gamma2;
    p.Gd1 = p.Gd2 = 0.0;
    p.kappad1 = p.kappad2 = 10.0 * kappa;
    p.theta = M_PI / 2.0;
    return p;
}

NetworkParams from_Gamma_pumped(double Gamma1, double Gamma2, double kappa, double kappad) {
    NetworkParams p;
    p.kappa1 = p.kappa2 = kappa;
    p.gamma1 = Gamma1 / 100.0;
    p.gamma2 = Gamma2 / 100.0;
    p.kappad1 = p.kappad2 = kappad;
    p.Gd1 = 0.5 * std::sqrt((Gamma1 - p.gamma1) * kappad);
    p.Gd2 = 0.5 * std::sqrt((Gamma2 - p.gamma2) * kappad);
    p.theta = M_PI / 2.0;
    return p;
}

EliminatedMatrices build_matrices(const NetworkParams& p) {
    EliminatedMatrices r;
    const cplx ep = std::exp(I1 * p.theta), em = std::exp(-I1 * p.theta);
    r.M << p.kappa1 / 2.0, I1 * p.J0, I1 * p.G1, 0.0,
           I1 * p.J0, p.kappa2 / 2.0, 0.0, I1 * p.G2 * em,
           I1 * p.G1, 0.0, p.Gamma1() / 2.0, I1 * p.Jm,
           0.0, I1 * p.G2 * ep, I1 * p.Jm, p.Gamma2() / 2.0;
    r.L << std::sqrt(p.kappa1), std::sqrt(p.kappa2), std::sqrt(p.gamma1), std::sqrt(p.gamma2);
    r.N.setZero();
    r.N(2, 0) = -2.0 * I1 * p.Gd1 / std::sqrt(p.kappad1);
    r.N(3, 1) = -2.0 * I1 * p.Gd2 / std::sqrt(p.kappad2);
    return r;
}

SixModeMatrices build_matrices6(const NetworkParams& p) {
    SixModeMatrices r;
    const cplx ep = std::exp(I1 * p.theta), em = std::exp(-I1 * p.theta);
    r.M.setZero();
    r.M(0, 0) = p.kappa1 / 2.0;
    r.M(1, 1) = p.kappa2 / 2.0;
    r.M(2, 2) = p.gamma1 / 2.0;
    r.M(3, 3) = p.gamma2 / 2.0;
    r.M(4, 4) = p.kappad1 / 2.0;
    r.M(5, 5) = p.kappad2 / 2.0;
    r.M(0, 1) = r.M(1, 0) = I1 * p.J0;
    r.M(0, 2) = r.M(2, 0) = I1 * p.G1;
    r.M(1, 3) = I1 * p.G2 * em;
    r.M(3, 1) = I1 * p.G2 * ep;
    r.M(2, 3) = r.M(3, 2) = I1 * p.Jm;
    r.M(2, 4) = r.M(4, 2) = I1 * p.Gd1;
    r.M(3, 5) = r.M(5, 3) = I1 * p.Gd2;
    r.L << std::sqrt(p.kappa1), std::sqrt(p.kappa2), std::sqrt(p.gamma1), std::sqrt(p.gamma2),
           std::sqrt(p.kappad1), std::sqrt(p.kappad2);
    return r;
}

ScatterResult scattering_matrix(const NetworkParams& p, double omega) {
    const EliminatedMatrices m = build_matrices(p);
    const Eigen::Matrix4cd Ainv = invert_response<4>(m.M, omega);
    const Eigen::Vector4cd L = m.L.cast<cplx>();

    ScatterResult r;
    r.omega = omega;
    r.U = L.asDiagonal() * Ainv * L.asDiagonal();
    r.U -= Eigen::Matrix4cd::Identity();
    r.R = L.asDiagonal() * Ainv * m.N;
    r.Tplus = std::norm(r.U(1, 0));
    r.Tminus = std::norm(r.U(0, 1));
    return r;
}

Eigen::Matrix<cplx, 6, 6> scattering_matrix6(const NetworkParams& p, double omega) {
    const SixModeMatrices m = build_matrices6(p);
    const Eigen::Matrix<cplx, 6, 6> Ainv = invert_response<6>(m.M, omega);
    const Eigen::Matrix<cplx, 6, 1> L = m.L.cast<cplx>();
    Eigen::Matrix<cplx, 6, 6> U = L.asDiagonal() * Ainv * L.asDiagonal();
    U -= Eigen::Matrix<cplx, 6, 6>::Identity();
    return U;
}

std::pair<double, double> Tpm6(const NetworkParams& p, double omega) {
    const Eigen::Matrix<cplx, 6, 6> U = scattering_matrix6(p, omega);
    return {std::norm(U(1, 0)), std::norm(U(0, 1))};
}

std::pair<double, double> analytic_Tpm(const NetworkParams& p, double omega) {
    const double Gam1 = p.Gamma1(), Gam2 = p.Gamma2();
    const cplx z1(p.kappa1 / 2.0, -omega), z2(p.kappa2 / 2.0, -omega);
    const cplx x1(Gam1 / 2.0, -omega), x2(Gam2 / 2.0, -omega);
    const cplx mech = p.Jm * p.Jm + x1 * x2;
    const cplx D = p.J0 * p.J0 * p.Jm * p.Jm + p.G1 * p.G1 * p.G2 * p.G2 -
                   2.0 * p.J0 * p.Jm * p.G1 * p.G2 * std::cos(p.theta) +
                   p.G2 * p.G2 * z1 * x1 + p.G1 * p.G1 * z2 * x2 + p.J0 * p.J0 * x1 * x2 +
                   p.Jm * p.Jm * z1 * z2 + z1 * z2 * x1 * x2;
    const double GGJ = p.G1 * p.G2 * p.Jm;
    const cplx nplus = GGJ * std::exp(-I1 * p.theta) - p.J0 * mech;
    const cplx nminus = GGJ * std::exp(I1 * p.theta) - p.J0 * mech;
    const double pref = p.kappa1 * p.kappa2 / std::norm(D);
    return {pref * std::norm(nplus), pref * std::norm(nminus)};
}

Design optimal_design(double Gamma, double kappa, double Jm) {
    Design d;
    const double q = 4.0 * Jm * Jm + Gamma * Gamma;
    d.omega_opt = -0.5 * std::sqrt(q);
    d.G = std::sqrt(Gamma) *
          std::pow(q * (q + kappa * kappa) / (16.0 * Jm * Jm + 8.0 * Gamma * Gamma), 0.25);
    d.J0 = 2.0 * d.G * d.G * Jm / (Gamma * std::sqrt(q));
    return d;
}

double optimal_Jm(double Gamma, double kappa) {
    const NetworkParams base = from_Gamma_intrinsic(Gamma, Gamma, kappa);
    auto objective = [&](double Jm) {
        const Design d = optimal_design(Gamma, kappa, Jm);
        NetworkParams p = base;
        p.Jm = Jm;
        p.J0 = d.J0;
        p.G1 = p.G2 = d.G;
        return analytic_Tpm(p, d.omega_opt).first;
    };
    const std::vector<double> js = linspace(1e-6, 5.0 * kappa, 64);
    size_t best = 0;
    double fbest = -1.0;
    for (size_t i = 0; i < js.size(); ++i) {
        const double f = objective(js[i]);
        if (f > fbest) {
            fbest = f;
            best = i;
        }
    }
    if (best == 0 || best + 1 == js.size())
        throw NoInteriorMaximum("phonon-hopping optimum at search boundary for Gamma = " +
                                std::to_string(Gamma));
    return golden_max(objective, js[best - 1], js[best + 1], 1e-6);
}

std::vector<double> spectrum_grid(double center, double kappa, double Gamma) {
    std::vector<double> pts = linspace(center - 10.0 * kappa, center + 10.0 * kappa, 2048);
    if (Gamma > 0.0) {
        const double lo10 = std::log10(1e-9 * Gamma);
        const double hi10 = std::log10(5.0 * Gamma);
        for (double c : {center, -center}) {
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

Metrics metrics(const NetworkParams& p) {
    const double w0 = -std::sqrt(p.Jm * p.Jm + p.Gamma1() * p.Gamma2() / 4.0);
    const double span = std::max(p.kappa1, p.kappa2);
    return metrics_on_grid(p, spectrum_grid(w0, span, std::max(p.Gamma1(), p.Gamma2())));
}

Metrics metrics_on_grid(const NetworkParams& p, const std::vector<double>& grid) {
    const size_t n = grid.size();
    std::vector<double> Tp(n), Tm(n), absI(n);
    for (size_t i = 0; i < n; ++i) {
        std::tie(Tp[i], Tm[i]) = analytic_Tpm(p, grid[i]);
        absI[i] = std::abs(Tp[i] - Tm[i]);
    }
    size_t k = 0;
    for (size_t i = 1; i < n; ++i)
        if (absI[i] > absI[k]) k = i;
    if (absI[k] < 1e-6)
        throw NoContrastPeak("max transmission contrast below 1e-6 over the grid");

    Metrics m;
    m.omega_star = grid[k];
    m.insertion_loss_dB = -10.0 * std::log10(Tp[k]);
    m.isolation_dB =
        std::min(10.0 * std::log10(Tp[k] / std::max(Tm[k], Tp[k] * 1e-20)), 200.0);

    // FWHM of |I| around the peak, linearly interpolated.
    const double half = absI[k] / 2.0;
    size_t l = k, r = k;
    while (l > 0 && absI[l] > half) --l;
    while (r + 1 < n && absI[r] > half) ++r;
    double wl = grid[l];
    if (absI[l] <= half && l + 1 <= k)
        wl = grid[l] + (grid[l + 1] - grid[l]) * (half - absI[l]) / (absI[l + 1] - absI[l]);
    double wr = grid[r];
    if (absI[r] <= half && r >= 1)
        wr = grid[r - 1] + (grid[r] - grid[r - 1]) * (absI[r - 1] - half) / (absI[r - 1] - absI[r]);
    m.bandwidth = wr - wl;
    return m;
}

double elimination_error(const NetworkParams& p, const std::vector<double>& grid) {
    double dev = 0.0;
    for (double w : grid) {
        const ScatterResult r4 = scattering_matrix(p, w);
        const auto [tp6, tm6] = Tpm6(p, w);
        dev = std::max({dev, std::abs(r4.Tplus - tp6), std::abs(r4.Tminus - tm6)});
    }
    return dev;
}

std::pair<double, double> contrast_peak(const NetworkParams& p) {
    if (std::min({p.G1, p.G2, p.J0, p.Jm}) <= 0.0) return {-1.0, 0.0};
    const double Gam1 = p.Gamma1(), Gam2 = p.Gamma2();
    const double w0 = std::sqrt(std::abs(p.Jm * p.Jm + Gam1 * Gam2 / 4.0));
    const double span = std::max(p.kappa1, p.kappa2);
    const double s = std::max({Gam1, Gam2, 0.02});

    std::vector<double> grid = linspace(-2.0 * span, 2.0 * span, 801);
    for (double u : linspace(-5.0, 5.0, 801)) grid.push_back(-w0 + u * s);
    for (double u : linspace(-5.0, 5.0, 801)) grid.push_back(w0 + u * s);
    std::sort(grid.begin(), grid.end());

    auto I = [&](double w) {
        const auto [tp, tm] = analytic_Tpm(p, w);
        return tp - tm;
    };
    size_t k = 0;
    double best = I(grid[0]);
    for (size_t i = 1; i < grid.size(); ++i) {
        const double v = I(grid[i]);
        if (v > best) {
            best = v;
            k = i;
        }
    }
    const double lo = grid[k > 0 ? k - 1 : 0];
    const double hi = grid[std::min(k + 1, grid.size() - 1)];
    const double ws = golden_max(I, lo, hi, 1e-12);
    return {I(ws), ws};
}

Couplings reoptimize_couplings(double Gamma1, double Gamma2, double kappa, int max_cycles) {
    const double Gm = 0.5 * (Gamma1 + Gamma2);
    const double Jm0 = optimal_Jm(Gm, kappa);
    const Design d = optimal_design(Gm, kappa, Jm0);
    std::array<double, 4> x{d.G, d.G, d.J0, Jm0};

    const NetworkParams base = from_Gamma_intrinsic(Gamma1, Gamma2, kappa);
    auto eval = [&](const std::array<double, 4>& v) {
        NetworkParams p = base;
        p.G1 = v[0];
        p.G2 = v[1];
        p.J0 = v[2];
        p.Jm = v[3];
        return contrast_peak(p).first;
    };

    double f0 = eval(x);
    for (int cycle = 0; cycle < max_cycles; ++cycle) {
        double gain = 0.0;
        for (int i = 0; i < 4; ++i) {
            auto with = [&](double v) {
                std::array<double, 4> y = x;
                y[i] = v;
                return eval(y);
            };
            const std::vector<double> vs = linspace(0.6 * x[i], 1.7 * x[i], 21);
            size_t k = 0;
            double fk = with(vs[0]);
            for (size_t j = 1; j < vs.size(); ++j) {
                const double f = with(vs[j]);
                if (f > fk) {
                    fk = f;
                    k = j;
                }
            }
            const double lo = vs[k > 0 ? k - 1 : 0];
            const double hi = vs[std::min(k + 1, vs.size() - 1)];
            const double xi = golden_max(with, lo, hi, 1e-10);
            const double fi = with(xi);
            if (fi > f0) {
                gain = std::max(gain, fi - f0);
                f0 = fi;
                x[i] = xi;
            }
        }
        if (gain < 1e-11) break;
    }
    return {x[0], x[1], x[2], x[3]};
}

}  // namespace omniso
