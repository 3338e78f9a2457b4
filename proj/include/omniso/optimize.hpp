#pragma once

#include <cmath>
#include <vector>

namespace omniso {

inline std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    const double step = (b - a) / (n - 1);
    for (int i = 0; i < n; ++i) v[i] = a + step * i;
    v[n - 1] = b;
    return v;
}

inline std::vector<double> logspace(double lo10, double hi10, int n) {
    std::vector<double> v = linspace(lo10, hi10, n);
    for (double& x : v) x = std::pow(10.0, x);
    return v;
}

// Golden-section maximization of a unimodal f on [a, b]; returns the midpoint
// of the final bracket.
template <class F>
double golden_max(F&& f, double a, double b, double rtol = 1e-6) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > rtol * std::max({std::abs(a), std::abs(b), 1e-30})) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace omniso
