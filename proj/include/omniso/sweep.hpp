#pragma once

// Parameter-space sweeps with deterministic parallel execution: region maps
// over (P, Delta), Hopf boundary traces, damping sweeps, and asymmetric
// damping maps. Results are ordered by grid index regardless of worker
// count; failed cells carry a status string instead of being dropped.

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "omniso/classical.hpp"
#include "omniso/rwa.hpp"

namespace omniso {

// Worker count: OMNISO_WORKERS if set, else hardware concurrency.
inline int worker_count() {
    if (const char* env = std::getenv("OMNISO_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Evaluates fn(i) for i in [0, n) on a work-stealing pool; results land at
// their own index, so output is independent of scheduling.
template <class T, class Fn>
std::vector<T> parallel_table(size_t n, Fn&& fn) {
    std::vector<T> out(n);
    const int workers = std::min<size_t>(worker_count(), n > 0 ? n : 1);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) out[i] = fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

enum class Region { I, II, III };

struct RegionCell {
    double Delta = 0.0;
    double P = 0.0;
    Region region = Region::I;
    bool hopf_crossed = false;
    std::string status = "ok";
};

struct RegionMapSpec {
    double Delta_min = 0.05, Delta_max = 1.1;
    int Delta_points = 200;
    double P_min = 1e-3, P_max = 10.0;
    int P_points = 200;
    bool P_log = true;
    double kappa = 0.05;
    double gamma = 1e-3;
    Direction direction = Direction::Forward;
};

// Row-major over Delta (outer) then P (inner).
std::vector<RegionCell> region_map(const RegionMapSpec& spec);

// Bisection on the largest eigenvalue real part of the upper displacement
// branch along a P ray; |Delta P| resolved to 1e-9.
double hopf_trace(double Delta, double kappa, double gamma, Direction direction,
                  double P_lo, double P_hi);

struct GammaSweepRow {
    double Gamma = 0.0;
    double Jm_opt = 0.0;
    double bandwidth = 0.0;
    double insertion_loss_dB = 0.0;
    std::string status = "ok";
};

std::vector<GammaSweepRow> gamma_sweep(const std::vector<double>& Gammas, double kappa);

struct AsymCell {
    double Gamma1 = 0.0, Gamma2 = 0.0;
    double bandwidth = 0.0;
    double insertion_loss_dB = 0.0;
    std::string status = "ok";
};

// Row-major over Gamma1 (outer) then Gamma2 (inner); couplings re-optimized
// per cell by coordinate descent.
std::vector<AsymCell> asym_map(const std::vector<double>& Gamma1s,
                               const std::vector<double>& Gamma2s, double kappa);

}  // namespace omniso
