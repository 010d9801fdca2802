#pragma once

#include <functional>
#include <vector>

#include "mcnd/flatflow.hpp"

namespace mcnd {

// Diagnostic flag bits carried by FlowState and the CSV `flags` column.
enum : unsigned {
    kFlagClamped = 1u,       // containment clamp changed the zero set
    kFlagExtinct = 2u,       // interface vanished; run ends gracefully
    kFlagNonStationary = 4u, // inner loop hit its budget (flat flow)
    kFlagMaxPrinciple = 8u,  // potential left [0 - eps, sup phi + eps]
};

struct FlowDiagnostics {
    EnergyBreakdown energy;   // penalty is 0 for the smooth flow
    double volume = 0.0;
    double perimeter = 0.0;
    double min_dist_din = 0.0;
    double sym_diff_prev = 0.0;  // vs the previous sample
    RadiusStats radius;
    unsigned flags = 0;
};

struct FlowState {
    double t = 0.0;
    long steps_taken = 0;
    LevelSetField e;
    PotentialSolution u;
    FlowDiagnostics diag;
};

struct StepControl {
    double cfl_curvature = 0.4;  // dt <= c1 h^2 / (2n)
    double cfl_advect = 0.5;     // dt <= c2 h / max|V|
    int reinit_every = 5;
    double t_end = 1.0;
    double solve_tol = 1e-8;
    int solve_max_iter = 500;
};

// Assembled nodal velocity u_nu^2 - H in the 3h interface band.
ScalarField flow_velocity(const PotentialSolution& u, const LevelSetField& e);

FlowDiagnostics compute_diagnostics(const DomainConfig& domain, const LevelSetField& e,
                                    const PotentialSolution& u, unsigned flags = 0);

// Redistance + clamp e0 into the admissible class and solve its potential.
FlowState init_state(const DomainConfig& domain, const LevelSetField& e0,
                     const StepControl& ctl = {});

// One explicit step of d_t = laplacian(d) - u_nu^2 in the interface band,
// clamped so D_in stays inside and D_out outside, redistanced on schedule,
// capacity re-solved.  dt_cap limits the step (used to land on t_end).
FlowState step(const FlowState& state, const DomainConfig& domain, const StepControl& ctl,
               double dt_cap = 0.0);

// Repeated step until t_end or extinction; returns sampled states including
// the first and the last.  on_step (when set) sees every intermediate state.
std::vector<FlowState> run(const FlowState& state0, const DomainConfig& domain,
                           const StepControl& ctl, int sample_every,
                           const std::function<void(const FlowState&)>& on_step = {});

} // namespace mcnd
