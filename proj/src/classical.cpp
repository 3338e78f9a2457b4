#include "omniso/classical.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "omniso/ode.hpp"

namespace omniso {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

// Radicand coefficients of the steady-state displacement equation
// X^2 = A +- sqrt(fac P / 2 - B^2).
double coefA(double Delta, double kappa) {
    return Delta * Delta + Delta - kappa * kappa / 4.0;
}

double coefB(double Delta, double kappa) { return kappa * (Delta + 0.5); }

double facing(double Delta, Direction d) {
    return d == Direction::Forward ? Delta + 1.0 : Delta;
}

// Common denominator of the steady-state amplitudes at displacement X.
cplx steady_den(double X, const ClassicalParams& p) {
    return 2.0 * cplx(X * X + p.kappa * p.kappa / 4.0 - p.Delta * p.Delta - p.Delta,
                      p.kappa * p.Delta + p.kappa / 2.0);
}

std::pair<cplx, cplx> steady_amplitudes(double X, const ClassicalParams& p) {
    const cplx den = steady_den(X, p);
    const cplx cross = cplx(0.0, -X) / den;
    if (p.direction == Direction::Forward)
        return {cplx(p.kappa / 2.0, p.Delta + 1.0) / den, cross};
    return {cross, cplx(p.kappa / 2.0, p.Delta) / den};
}

// Forward-branch upper displacement, used as the default kick amplitude.
double default_forcing_amplitude(const ClassicalParams& p) {
    const double A = coefA(p.Delta, p.kappa);
    const double B = coefB(p.Delta, p.kappa);
    const double rad = (p.Delta + 1.0) * p.P / 2.0 - B * B;
    const double x2 = A + std::sqrt(std::max(rad, 0.0));
    return x2 > 0.0 ? std::sqrt(x2) : 1.0;
}

}  // namespace

void rhs(const ClassicalState& s, const ClassicalParams& p, double force, ClassicalState& ds) {
    const cplx iX(0.0, s.X);
    ds.a1 = -cplx(p.kappa / 2.0, p.Delta) * s.a1 - iX * s.a2;
    ds.a2 = -cplx(p.kappa / 2.0, p.Delta + 1.0) * s.a2 - iX * s.a1;
    if (p.direction == Direction::Forward)
        ds.a1 += 0.5;
    else
        ds.a2 += 0.5;
    ds.X = s.V;
    ds.V = -s.X - p.gamma * s.V -
           2.0 * p.P * (s.a1.real() * s.a2.real() + s.a1.imag() * s.a2.imag()) + force;
}

std::array<std::array<double, 6>, 6> jacobian(const ClassicalState& s, const ClassicalParams& p) {
    const double x1 = s.a1.real(), y1 = s.a1.imag();
    const double x2 = s.a2.real(), y2 = s.a2.imag();
    const double k2 = p.kappa / 2.0, D = p.Delta, X = s.X, P = p.P;
    return {{{-k2, D, 0.0, X, y2, 0.0},
             {-D, -k2, -X, 0.0, -x2, 0.0},
             {0.0, X, -k2, D + 1.0, y1, 0.0},
             {-X, 0.0, -(D + 1.0), -k2, -x1, 0.0},
             {0.0, 0.0, 0.0, 0.0, 0.0, 1.0},
             {-2.0 * P * x2, -2.0 * P * y2, -2.0 * P * x1, -2.0 * P * y1, -1.0, -p.gamma}}};
}

ThresholdPowers threshold_powers(double Delta, double kappa) {
    const double A = coefA(Delta, kappa);
    const double B = coefB(Delta, kappa);
    const double num = 2.0 * B * B - (sgn(A) - 1.0) * A * A;
    ThresholdPowers th;
    th.forward = num / (Delta + 1.0);
    if (Delta > 0.0) th.backward = num / Delta;
    return th;
}

double region_III_boundary(double Delta, double kappa, Direction direction) {
    const double A = coefA(Delta, kappa);
    if (A <= 0.0)
        throw NotApplicable("lower displacement branch never real at Delta = " +
                            std::to_string(Delta));
    const double B = coefB(Delta, kappa);
    return 2.0 * (A * A + B * B) / facing(Delta, direction);
}

std::pair<Stability, std::array<cplx, 6>> classify_stability(const ClassicalState& at,
                                                             const ClassicalParams& p) {
    const auto J = jacobian(at, p);
    Eigen::Matrix<double, 6, 6> M;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) M(i, j) = J[i][j];
    Eigen::EigenSolver<Eigen::Matrix<double, 6, 6>> solver(M, false);

    std::array<cplx, 6> ev;
    for (int i = 0; i < 6; ++i) ev[i] = solver.eigenvalues()(i);
    std::sort(ev.begin(), ev.end(), [](const cplx& a, const cplx& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });

    double max_re = ev[0].real();
    Stability st;
    if (max_re < -1e-9) {
        st = Stability::StableSpiral;
    } else if (max_re <= 1e-9) {
        st = Stability::Marginal;
    } else {
        bool real_positive = false;
        for (const auto& lam : ev)
            if (lam.real() > 1e-9 && std::abs(lam.imag()) <= 1e-10 * std::max(1.0, lam.real()))
                real_positive = true;
        st = real_positive ? Stability::Saddle : Stability::UnstableSpiral;
    }
    return {st, ev};
}

std::vector<FixedPoint> fixed_points(const ClassicalParams& p) {
    std::vector<FixedPoint> out;

    auto push = [&](Branch branch, double X, bool degenerate) {
        FixedPoint fp;
        fp.branch = branch;
        fp.X = X;
        fp.degenerate = degenerate;
        std::tie(fp.a1, fp.a2) = steady_amplitudes(X, p);
        ClassicalState s{fp.a1, fp.a2, fp.X, 0.0};
        std::tie(fp.stability, fp.eigenvalues) = classify_stability(s, p);
        out.push_back(fp);
    };

    push(Branch::X0, 0.0, false);

    const double A = coefA(p.Delta, p.kappa);
    const double rad = facing(p.Delta, p.direction) * p.P / 2.0 -
                       coefB(p.Delta, p.kappa) * coefB(p.Delta, p.kappa);
    if (rad >= 0.0) {
        const double s = std::sqrt(rad);
        for (auto [branch, x2] : {std::pair{Branch::XPlus, A + s}, std::pair{Branch::XMinus, A - s}}) {
            if (std::abs(x2) < 1e-12)
                push(branch, std::sqrt(std::max(x2, 0.0)), true);
            else if (x2 > 0.0)
                push(branch, std::sqrt(x2), false);
        }
    }
    return out;
}

std::vector<Sample> integrate(const ClassicalParams& p, const ForcingProtocol& forcing,
                              double t_end, const IntegrateOptions& opt) {
    const double f0 = forcing.f ? *forcing.f : default_forcing_amplitude(p);
    const double T = forcing.T;

    Dopri5<6> stepper;
    stepper.rtol = opt.rtol;
    stepper.atol = opt.atol;
    stepper.bound = opt.bound;

    auto deriv = [&](double t, const std::array<double, 6>& y, std::array<double, 6>& dy) {
        ClassicalState s{{y[0], y[1]}, {y[2], y[3]}, y[4], y[5]};
        ClassicalState ds;
        const double F = t < T ? (1.0 - t / T) * f0 : 0.0;
        rhs(s, p, F, ds);
        dy = {ds.a1.real(), ds.a1.imag(), ds.a2.real(), ds.a2.imag(), ds.X, ds.V};
    };

    std::vector<Sample> series;
    series.reserve(static_cast<size_t>(t_end / opt.dt_out) + 2);
    stepper.integrate(deriv, {0.0, 0.0, 0.0, 0.0, 0.0, 0.0}, 0.0, t_end, opt.dt_out,
                      [&](double t, const std::array<double, 6>& y) {
                          series.push_back({t, {{y[0], y[1]}, {y[2], y[3]}, y[4], y[5]}});
                      });
    return series;
}

double transmission(const ClassicalState& s, const ClassicalParams& p) {
    const cplx a = p.direction == Direction::Forward ? s.a2 : s.a1;
    return 4.0 * p.kappa * p.kappa * std::norm(a);
}

SteadyState classify_steady_state(const std::vector<Sample>& series, double discard_fraction) {
    if (series.size() < 3) throw InsufficientData("trajectory too short to classify");
    const double t_end = series.back().t;
    const double t_cut = discard_fraction * t_end;

    size_t first = 0;
    while (first < series.size() && series[first].t < t_cut) ++first;
    if (first + 3 > series.size() || t_end - series[first].t < 50.0 * kTwoPi)
        throw InsufficientData("tail shorter than 50 mechanical periods");

    double lo = series[first].y.X, hi = lo;
    for (size_t i = first; i < series.size(); ++i) {
        lo = std::min(lo, series[i].y.X);
        hi = std::max(hi, series[i].y.X);
    }
    if (hi - lo < 1e-6) return {Attractor::FixedPoint, 0.0};

    // Local maxima of X(t), parabola-refined in both time and level.
    std::vector<double> pt, pl;
    for (size_t i = std::max(first, size_t(1)); i + 1 < series.size(); ++i) {
        const double a = series[i - 1].y.X, b = series[i].y.X, c = series[i + 1].y.X;
        if (b >= a && b > c) {
            const double curv = a - 2.0 * b + c;
            double off = 0.0;
            if (curv < 0.0) off = 0.5 * (a - c) / curv;
            const double dt = series[i + 1].t - series[i].t;
            pt.push_back(series[i].t + off * dt);
            pl.push_back(b - 0.25 * (a - c) * off);
        }
    }
    if (pt.size() < 4) throw InsufficientData("fewer than four oscillation maxima in tail");

    auto spread = [](const std::vector<double>& v) {
        double mn = v[0], mx = v[0], mean = 0.0;
        for (double x : v) {
            mn = std::min(mn, x);
            mx = std::max(mx, x);
            mean += x;
        }
        mean /= static_cast<double>(v.size());
        return std::pair{(mx - mn) / std::max(std::abs(mean), 1e-12), mean};
    };

    const double mean_gap = (pt.back() - pt.front()) / static_cast<double>(pt.size() - 1);
    if (spread(pl).first <= 0.01) return {Attractor::LimitCycle, mean_gap};

    std::vector<double> even, odd;
    for (size_t k = 0; k < pl.size(); ++k) (k % 2 ? odd : even).push_back(pl[k]);
    if (even.size() >= 2 && odd.size() >= 2 && spread(even).first <= 0.01 &&
        spread(odd).first <= 0.01)
        return {Attractor::PeriodDoubled, 2.0 * mean_gap};

    return {Attractor::Irregular, mean_gap};
}

ClassicalParams renormalize(const PhysicalParams& phys) {
    if (phys.omega_m <= 0.0 || phys.omega_l <= 0.0)
        throw UnitError("mechanical and laser frequencies must be positive");
    if (phys.kappa <= 0.0 || phys.gamma < 0.0)
        throw UnitError("decay rates must be nonnegative (kappa strictly positive)");
    if (phys.drive_power < 0.0) throw UnitError("drive power must be nonnegative");

    constexpr double hbar = 1.054571817e-34;
    const double alpha_in2 = phys.drive_power / (hbar * phys.omega_l);
    ClassicalParams p;
    p.P = 4.0 * phys.g * phys.g * phys.kappa * alpha_in2 / std::pow(phys.omega_m, 4);
    p.Delta = phys.Delta / phys.omega_m;
    p.kappa = phys.kappa / phys.omega_m;
    p.gamma = phys.gamma / phys.omega_m;
    p.direction = phys.direction;
    return p;
}

}  // namespace omniso
