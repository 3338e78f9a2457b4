#include "omniso/sweep.hpp"

#include <cmath>

#include "omniso/optimize.hpp"

namespace omniso {

std::vector<RegionCell> region_map(const RegionMapSpec& spec) {
    const std::vector<double> Deltas = linspace(spec.Delta_min, spec.Delta_max, spec.Delta_points);
    const std::vector<double> Ps =
        spec.P_log ? logspace(std::log10(spec.P_min), std::log10(spec.P_max), spec.P_points)
                   : linspace(spec.P_min, spec.P_max, spec.P_points);

    const size_t n = Deltas.size() * Ps.size();
    return parallel_table<RegionCell>(n, [&](size_t idx) {
        RegionCell cell;
        cell.Delta = Deltas[idx / Ps.size()];
        cell.P = Ps[idx % Ps.size()];
        try {
            ClassicalParams p;
            p.P = cell.P;
            p.Delta = cell.Delta;
            p.kappa = spec.kappa;
            p.gamma = spec.gamma;
            p.direction = spec.direction;
            const std::vector<FixedPoint> fps = fixed_points(p);
            cell.region = fps.size() == 1 ? Region::I : (fps.size() == 3 ? Region::II : Region::III);
            for (const FixedPoint& fp : fps)
                if (fp.branch == Branch::XPlus && !fp.degenerate)
                    cell.hopf_crossed = fp.stability == Stability::UnstableSpiral;
        } catch (const Error& e) {
            cell.status = e.what();
        }
        return cell;
    });
}

double hopf_trace(double Delta, double kappa, double gamma, Direction direction, double P_lo,
                  double P_hi) {
    ClassicalParams base;
    base.Delta = Delta;
    base.kappa = kappa;
    base.gamma = gamma;
    base.direction = direction;

    auto max_re = [&](double P) {
        ClassicalParams p = base;
        p.P = P;
        for (const FixedPoint& fp : fixed_points(p))
            if (fp.branch == Branch::XPlus && !fp.degenerate) {
                double m = fp.eigenvalues[0].real();
                for (const cplx& ev : fp.eigenvalues) m = std::max(m, ev.real());
                return m;
            }
        throw NoSignChange("upper branch absent at P = " + std::to_string(P) +
                           "; bracket does not straddle the boundary");
    };

    double flo = max_re(P_lo), fhi = max_re(P_hi);
    if ((flo > 0.0) == (fhi > 0.0))
        throw NoSignChange("eigenvalue real part does not change sign over [" +
                           std::to_string(P_lo) + ", " + std::to_string(P_hi) + "]");
    while (P_hi - P_lo > 1e-9) {
        const double mid = 0.5 * (P_lo + P_hi);
        if ((max_re(mid) > 0.0) == (flo > 0.0)) {
            P_lo = mid;
        } else {
            P_hi = mid;
        }
    }
    return 0.5 * (P_lo + P_hi);
}

std::vector<GammaSweepRow> gamma_sweep(const std::vector<double>& Gammas, double kappa) {
    return parallel_table<GammaSweepRow>(Gammas.size(), [&](size_t i) {
        GammaSweepRow row;
        row.Gamma = Gammas[i];
        try {
            row.Jm_opt = optimal_Jm(row.Gamma, kappa);
            const Design d = optimal_design(row.Gamma, kappa, row.Jm_opt);
            NetworkParams p = from_Gamma_intrinsic(row.Gamma, row.Gamma, kappa);
            p.Jm = row.Jm_opt;
            p.J0 = d.J0;
            p.G1 = p.G2 = d.G;
            const Metrics m = metrics(p);
            row.bandwidth = m.bandwidth;
            row.insertion_loss_dB = m.insertion_loss_dB;
        } catch (const Error& e) {
            row.status = e.what();
        }
        return row;
    });
}

std::vector<AsymCell> asym_map(const std::vector<double>& Gamma1s,
                               const std::vector<double>& Gamma2s, double kappa) {
    const size_t n = Gamma1s.size() * Gamma2s.size();
    return parallel_table<AsymCell>(n, [&](size_t idx) {
        AsymCell cell;
        cell.Gamma1 = Gamma1s[idx / Gamma2s.size()];
        cell.Gamma2 = Gamma2s[idx % Gamma2s.size()];
        try {
            const Couplings c = reoptimize_couplings(cell.Gamma1, cell.Gamma2, kappa);
            NetworkParams p = from_Gamma_intrinsic(cell.Gamma1, cell.Gamma2, kappa);
            p.G1 = c.G1;
            p.G2 = c.G2;
            p.J0 = c.J0;
            p.Jm = c.Jm;
            const Metrics m = metrics(p);
            cell.bandwidth = m.bandwidth;
            cell.insertion_loss_dB = m.insertion_loss_dB;
        } catch (const Error& e) {
            cell.status = e.what();
        }
        return cell;
    });
}

}  // namespace omniso
