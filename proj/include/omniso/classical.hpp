#pragma once

// Mean-field dynamics of a single three-mode block under intense drive:
// renormalized equations of motion, analytic fixed points, saddle-node and
// Hopf analysis, forced trajectories, transmission coefficients.
//
// All quantities are dimensionless; time is measured in units of 1/omega_m.

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "omniso/errors.hpp"

namespace omniso {

using cplx = std::complex<double>;

enum class Direction { Forward, Backward };

struct ClassicalParams {
    double P = 0.0;        // drive strength, 4 g^2 kappa alpha_in^2 / omega_m^4
    double Delta = 0.5;    // detuning / omega_m
    double kappa = 0.05;   // optical decay / omega_m
    double gamma = 1e-3;   // mechanical decay / omega_m
    Direction direction = Direction::Forward;
};

struct ClassicalState {
    cplx a1{0.0, 0.0};
    cplx a2{0.0, 0.0};
    double X = 0.0;
    double V = 0.0;
};

enum class Branch { X0, XPlus, XMinus };
enum class Stability { StableSpiral, Saddle, UnstableSpiral, Marginal };

struct FixedPoint {
    Branch branch = Branch::X0;
    double X = 0.0;
    cplx a1{0.0, 0.0};
    cplx a2{0.0, 0.0};
    std::array<cplx, 6> eigenvalues{};
    Stability stability = Stability::StableSpiral;
    bool degenerate = false;  // |X|^2 below 1e-12, branch coincides with X0
};

// Linear switch-off ramp: F(t) = (1 - t/T) f for t < T, 0 afterwards.
struct ForcingProtocol {
    double T = 1e3;
    std::optional<double> f;  // default: X+ of the forward branch at the same (P, Delta, kappa)
};

struct ThresholdPowers {
    double forward = 0.0;
    std::optional<double> backward;  // undefined when the formula yields a nonpositive value
};

struct Sample {
    double t;
    ClassicalState y;
};

struct IntegrateOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    double bound = 1e6;
    double dt_out = 5.0;
};

enum class Attractor { FixedPoint, LimitCycle, PeriodDoubled, Irregular };

struct SteadyState {
    Attractor kind = Attractor::FixedPoint;
    double period = 0.0;  // dominant period from maxima spacing, 0 for FixedPoint
};

struct PhysicalParams {
    double g;            // single-photon optomechanical coupling, rad/s
    double kappa;        // optical decay, rad/s
    double gamma;        // mechanical decay, rad/s
    double omega_m;      // mechanical frequency, rad/s
    double Delta;        // drive detuning, rad/s
    double drive_power;  // watts
    double omega_l;      // laser frequency, rad/s
    Direction direction = Direction::Forward;
};

// Time derivatives of the renormalized mean-field equations; the external
// force enters the dV/dt component.
void rhs(const ClassicalState& s, const ClassicalParams& p, double force, ClassicalState& ds);

// 6x6 real Jacobian of rhs over (Re a1, Im a1, Re a2, Im a2, X, V).
std::array<std::array<double, 6>, 6> jacobian(const ClassicalState& s, const ClassicalParams& p);

ThresholdPowers threshold_powers(double Delta, double kappa);

// Power at which the X- branch vanishes (saddle point disappearance).
double region_III_boundary(double Delta, double kappa, Direction direction);

std::pair<Stability, std::array<cplx, 6>> classify_stability(const ClassicalState& at,
                                                             const ClassicalParams& p);

std::vector<FixedPoint> fixed_points(const ClassicalParams& p);

std::vector<Sample> integrate(const ClassicalParams& p, const ForcingProtocol& forcing,
                              double t_end, const IntegrateOptions& opt = {});

// T_ji = 4 kappa^2 |a_j|^2 with j the non-driven mode.
double transmission(const ClassicalState& s, const ClassicalParams& p);

// Classifies the trajectory tail (first discard_fraction of t_end dropped)
// by the level structure of the X(t) local maxima.
SteadyState classify_steady_state(const std::vector<Sample>& series,
                                  double discard_fraction = 0.8);

ClassicalParams renormalize(const PhysicalParams& phys);

}  // namespace omniso
