#pragma once

#include <vector>

#include "mcnd/capacity.hpp"

namespace mcnd {

// The three terms of the per-step energy: Dirichlet integral of the
// capacity potential, perimeter of E, and the (1/dt)-weighted distance
// integral over the symmetric difference with the previous set.
struct EnergyBreakdown {
    double dirichlet = 0.0;
    double perimeter = 0.0;
    double penalty = 0.0;
    double total() const { return dirichlet + perimeter + penalty; }
};

bool is_admissible(const DomainConfig& domain, const LevelSetField& e);
void require_admissible(const DomainConfig& domain, const LevelSetField& e);

// Full energy of (u(e), e) against the reference set e0; solves the
// capacity problem internally.  e0 must be redistanced (|e0| is the
// distance to its interface).
EnergyBreakdown energy(const DomainConfig& domain, const LevelSetField& e,
                       const LevelSetField& e0, double dt);
// Same, reusing an already-computed potential for e.
EnergyBreakdown energy_with(const DomainConfig& domain, const PotentialSolution& u,
                            const LevelSetField& e, const LevelSetField& e0, double dt);

struct InnerOpts {
    double tol_rel = 1e-5;   // stop when the energy decrease over `window`
    int window = 10;         // iterations falls below tol_rel * |total|
    int max_inner = 500;
    double cfl_curvature = 0.4;
    double cfl_advect = 0.5;
    int reinit_every = 5;
    double solve_tol = 1e-8;
    int solve_max_iter = 500;
};

struct FlatStep {
    LevelSetField e;
    PotentialSolution u;
    EnergyBreakdown energy;
    int inner_iterations = 0;
    bool stationary = true;  // energy-decrease certificate obtained
    double min_dist_din = 0.0;
};

// One minimizing-movement step: gradient flow on the level set with
// velocity u_nu^2 - H - d0/dt (d0 the signed distance to e0), clamped to
// keep D_in inside and D_out outside, capacity re-solved every inner
// iteration.  Candidate states are ranked at clean points (redistanced,
// clamped, re-solved), so the returned energy is evaluated on exactly the
// returned state and never exceeds the energy of e0 as its own competitor.
FlatStep minimize_step(const DomainConfig& domain, const LevelSetField& e0, double dt,
                       const InnerOpts& opts = {});

struct ApproximateFlow {
    double dt = 0.0;
    int n = 0;
    std::vector<FlatStep> steps;  // steps[0] is the initial configuration
};

// Iterated minimize_step; step k is penalized against step k-1's set.
ApproximateFlow approximate_flow(const DomainConfig& domain, const LevelSetField& e0,
                                 double dt, int k_steps, const InnerOpts& opts = {});

// Measures m(k,N) = |E(k+N) delta E(k)| over all pairs, fits C on the (0,1)
// pair against C*(N dt)^{1/(n+1)} and counts violations of the doubled
// envelope.
struct HoelderFit {
    double fitted_c = 0.0;
    int violations = 0;
    int pairs = 0;
};
HoelderFit hoelder_check(const ApproximateFlow& flow);

} // namespace mcnd
