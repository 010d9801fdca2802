#pragma once

#include <vector>

#include "mcnd/errors.hpp"

namespace mcnd {

// Closed-form radial problem: D_in is the unit ball, phi is the constant
// phi0 on it, the evolving set is a concentric ball of radius L > 1.  For
// n = 3 the classical power-law capacity potential applies; for n = 2 the
// logarithmic capacity potential is used instead.
struct RadialConfig {
    int n = 3;       // 2 or 3
    double phi0 = 1.0;
};

struct RadialTrajectory {
    std::vector<std::pair<double, double>> samples;  // (t, L)
    int n = 3;
    double L0 = 0.0;
};

// Stationary radius: for n = 3 the root of R (R-1)^2 = phi0^2 / 2, for n = 2
// the root of R log^2 R = phi0^2.  Bisection on (1, 100) to 1e-12.
double r_opt(const RadialConfig& cfg);

// Dirichlet energy + perimeter of the ball of radius R.
double radial_energy(double R, const RadialConfig& cfg);

// dL/dt of the radius evolution; positive below r_opt, negative above.
double ode_rhs(double L, const RadialConfig& cfg);

// Classical RK4 with step halving near the L = 1 singularity
// (|rhs| * dt must stay below 0.1 * (L - 1)).
RadialTrajectory integrate(double L0, double t_end, double dt, const RadialConfig& cfg);

// Capacity potential of the ball of radius R evaluated at |x| = r.
double radial_potential(double r, double R, const RadialConfig& cfg);

// Linear interpolation of L(t) along a trajectory (clamped at the ends).
double trajectory_radius(const RadialTrajectory& traj, double t);

} // namespace mcnd
