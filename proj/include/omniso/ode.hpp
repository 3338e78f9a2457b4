#pragma once

// Dormand-Prince 5(4) embedded Runge-Kutta pair with the classical
// fourth-order dense-output interpolant (Hairer, Norsett, Wanner II.6).
// FSAL: the seventh stage of an accepted step seeds the next step.

#include <algorithm>
#include <array>
#include <cmath>

#include "omniso/errors.hpp"

namespace omniso {

template <int N>
struct Dopri5 {
    using Vec = std::array<double, N>;

    double rtol = 1e-9;
    double atol = 1e-12;
    double bound = 1e6;   // abort when any |y_i| exceeds this
    double h_init = 1e-3;

    // Integrates y' = f(t, y) from t0 to t1, invoking out(t, y) at
    // t0, t0 + dt_out, t0 + 2 dt_out, ... via dense interpolation.
    template <class F, class Out>
    void integrate(F&& f, Vec y, double t0, double t1, double dt_out, Out&& out) const {
        static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                                a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                                a64 = 49.0 / 176, a65 = -5103.0 / 18656;
        static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                                a75 = -2187.0 / 6784, a76 = 11.0 / 84;
        static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                                e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
        static constexpr double d1 = -12715105075.0 / 11282082432.0,
                                d3 = 87487479700.0 / 32700410799.0,
                                d4 = -10690763975.0 / 1880347072.0,
                                d5 = 701980252875.0 / 199316789632.0,
                                d6 = -1453857185.0 / 822651844.0,
                                d7 = 69997945.0 / 29380423.0;

        Vec k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
        double t = t0;
        double h = std::min(h_init, t1 - t0);
        f(t, y, k1);

        double t_sample = t0;
        out(t0, y);
        t_sample += dt_out;

        while (t < t1) {
            if (h < 1e-14 * std::max(1.0, std::abs(t)))
                throw StepSizeUnderflow("step size underflow at t = " + std::to_string(t));
            if (t + h > t1) h = t1 - t;

            for (int i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
            f(t + c2 * h, ytmp, k2);
            for (int i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
            f(t + c3 * h, ytmp, k3);
            for (int i = 0; i < N; ++i)
                ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            f(t + c4 * h, ytmp, k4);
            for (int i = 0; i < N; ++i)
                ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            f(t + c5 * h, ytmp, k5);
            for (int i = 0; i < N; ++i)
                ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                      a65 * k5[i]);
            f(t + h, ytmp, k6);
            for (int i = 0; i < N; ++i)
                ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] +
                                      a76 * k6[i]);
            f(t + h, ynew, k7);

            double err = 0;
            for (int i = 0; i < N; ++i) {
                double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                e7 * k7[i]);
                err += (e / sc) * (e / sc);
            }
            err = std::sqrt(err / N);

            if (!std::isfinite(err)) {
                // a NaN/inf estimate (e.g. the derivative blew up mid-step)
                // must shrink the step, not poison the controller
                h *= 0.2;
            } else if (err <= 1.0) {
                // dense samples inside the accepted step
                while (t_sample <= t + h + 1e-9 * dt_out && t_sample <= t1 + 1e-9 * dt_out) {
                    double th = (t_sample - t) / h;
                    double th1 = 1.0 - th;
                    Vec ys;
                    for (int i = 0; i < N; ++i) {
                        double dy = ynew[i] - y[i];
                        double r1 = y[i];
                        double r2 = dy;
                        double r3 = h * k1[i] - dy;
                        double r4 = dy - h * k7[i] - r3;
                        double r5 = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                         d6 * k6[i] + d7 * k7[i]);
                        ys[i] = r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
                    }
                    out(t_sample, ys);
                    t_sample += dt_out;
                }
                t += h;
                y = ynew;
                k1 = k7;
                for (int i = 0; i < N; ++i)
                    if (!std::isfinite(y[i]) || std::abs(y[i]) > bound)
                        throw DivergenceError("state exceeded bound at t = " + std::to_string(t));
                double fac = 0.9 * std::pow(err > 0 ? err : 1e-16, -0.2);
                h *= std::clamp(fac, 0.2, 10.0);
            } else {
                double fac = 0.9 * std::pow(err, -0.2);
                h *= std::clamp(fac, 0.2, 1.0);
            }
        }
    }
};

}  // namespace omniso
