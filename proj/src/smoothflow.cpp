#include "mcnd/smoothflow.hpp"

#include <algorithm>
#include <cmath>

namespace mcnd {

namespace {

// Clamp {e <= 0} to (E union D_in) intersect D_out via pointwise min/max.
// Returns true when the clamp changed the zero set somewhere.
bool clamp_to_domain(LevelSetField& e, const DomainConfig& domain) {
    bool active = false;
    for (std::size_t i = 0; i < e.values.size(); ++i) {
        const double before = e.values[i];
        double v = std::min(before, domain.d_in.values[i]);
        v = std::max(v, domain.d_out.values[i]);
        if ((before <= 0.0) != (v <= 0.0)) active = true;
        e.values[i] = v;
    }
    return active;
}

} // namespace

ScalarField flow_velocity(const PotentialSolution& u, const LevelSetField& e) {
    const GridSpec& spec = e.spec;
    ScalarField unu2 = normal_derivative_sq(u, e);
    ScalarField v(spec, 0.0);
    const int nx = spec.shape[0], ny = spec.shape[1], nz = spec.shape[2];
    const double cap = 1.0 / spec.h;
    const double band = 3.0 * spec.h;
    const int kmax = (nz > 1) ? nz - 1 : 1;
    for (int i = 1; i < nx - 1; ++i)
        for (int j = 1; j < ny - 1; ++j)
            for (int k = (nz > 1 ? 1 : 0); k < kmax; ++k) {
                if (std::abs(e.at(i, j, k)) > band) continue;
                const double H = std::clamp(laplacian_at(e, i, j, k), -cap, cap);
                v.at(i, j, k) = unu2.at(i, j, k) - H;
            }
    return v;
}

FlowDiagnostics compute_diagnostics(const DomainConfig& domain, const LevelSetField& e,
                                    const PotentialSolution& u, unsigned flags) {
    FlowDiagnostics d;
    d.volume = volume(e);
    d.perimeter = perimeter(e);
    d.energy.dirichlet = dirichlet_energy(u, domain, e);
    d.energy.perimeter = d.perimeter;
    d.energy.penalty = 0.0;
    d.min_dist_din = min_abs_on_interface(e, domain.d_in);
    d.radius = interface_radius_stats(e);
    d.flags = flags;
    return d;
}

FlowState init_state(const DomainConfig& domain, const LevelSetField& e0,
                     const StepControl& ctl) {
    domain.validate();
    FlowState s;
    s.t = 0.0;
    s.steps_taken = 0;
    s.e = redistance(e0);
    clamp_to_domain(s.e, domain);
    s.u = solve_capacity(domain, s.e, ctl.solve_tol, ctl.solve_max_iter);
    s.diag = compute_diagnostics(domain, s.e, s.u);
    return s;
}

FlowState step(const FlowState& state, const DomainConfig& domain, const StepControl& ctl,
               double dt_cap) {
    const GridSpec& spec = state.e.spec;
    const double h = spec.h;
    const double band = 3.0 * h;
    const double cap = 1.0 / h;
    const int nx = spec.shape[0], ny = spec.shape[1], nz = spec.shape[2];

    const ScalarField unu2 = normal_derivative_sq(state.u, state.e);

    // Nodal velocity bound for the advective CFL.
    double vmax = 0.0;
    const int kmax = (nz > 1) ? nz - 1 : 1;
    for (int i = 1; i < nx - 1; ++i)
        for (int j = 1; j < ny - 1; ++j)
            for (int k = (nz > 1 ? 1 : 0); k < kmax; ++k) {
                if (std::abs(state.e.at(i, j, k)) > band) continue;
                const double H = std::clamp(laplacian_at(state.e, i, j, k), -cap, cap);
                vmax = std::max(vmax, std::abs(unu2.at(i, j, k) - H));
            }

    double dt = ctl.cfl_curvature * h * h / (2.0 * spec.n);
    if (vmax > 0.0) dt = std::min(dt, ctl.cfl_advect * h / vmax);
    if (dt_cap > 0.0) dt = std::min(dt, dt_cap);

    FlowState next;
    next.t = state.t + dt;
    next.steps_taken = state.steps_taken + 1;
    next.e = state.e;

    for (int i = 1; i < nx - 1; ++i)
        for (int j = 1; j < ny - 1; ++j)
            for (int k = (nz > 1 ? 1 : 0); k < kmax; ++k) {
                const double ev = state.e.at(i, j, k);
                if (std::abs(ev) > band) continue;
                const double H = std::clamp(laplacian_at(state.e, i, j, k), -cap, cap);
                const double q = unu2.at(i, j, k);
                const double gn = upwind_gradient_norm(state.e, i, j, k, q);
                next.e.at(i, j, k) = ev + dt * (H - q * gn);
            }

    unsigned flags = 0;
    if (clamp_to_domain(next.e, domain)) flags |= kFlagClamped;

    if (!has_interface(next.e)) {
        next.diag.flags = flags | kFlagExtinct;
        next.u = PotentialSolution{};
        next.u.u = ScalarField(spec, 0.0);
        return next;
    }

    if (next.steps_taken % ctl.reinit_every == 0) {
        next.e = redistance(next.e);
        if (clamp_to_domain(next.e, domain)) flags |= kFlagClamped;
    }

    next.u = solve_capacity(domain, next.e, ctl.solve_tol, ctl.solve_max_iter, &state.u.u);
    const double sup = domain.sup_phi();
    if (next.u.min_u < -1e-10 || next.u.max_u > sup + 1e-10) flags |= kFlagMaxPrinciple;
    next.diag.flags = flags;
    return next;
}

std::vector<FlowState> run(const FlowState& state0, const DomainConfig& domain,
                           const StepControl& ctl, int sample_every,
                           const std::function<void(const FlowState&)>& on_step) {
    if (sample_every < 1) sample_every = 1;
    std::vector<FlowState> samples;
    FlowState cur = state0;
    samples.push_back(cur);
    std::size_t prev_sample = 0;

    while (ctl.t_end - cur.t > 1e-12) {
        FlowState next = step(cur, domain, ctl, ctl.t_end - cur.t);
        if (on_step) on_step(next);
        const bool extinct = (next.diag.flags & kFlagExtinct) != 0;
        const bool last = extinct || ctl.t_end - next.t <= 1e-12;
        if (last || next.steps_taken % sample_every == 0) {
            const unsigned flags = next.diag.flags;
            if (!extinct) {
                next.diag = compute_diagnostics(domain, next.e, next.u, flags);
                next.diag.sym_diff_prev = sym_diff_measure(next.e, samples[prev_sample].e);
            }
            samples.push_back(next);
            prev_sample = samples.size() - 1;
            if (extinct) return samples;
        }
        cur = std::move(next);
    }
    return samples;
}

} // namespace mcnd
