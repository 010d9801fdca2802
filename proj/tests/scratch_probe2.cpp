// Throwaway probe: isolate velocity bias in the smooth flow.
#include <cmath>
#include <cstdio>
#include <numbers>

#include "mcnd/radial.hpp"
#include "mcnd/smoothflow.hpp"

using namespace mcnd;

int main() {
    // Pure MCF in 2D: circle r0=0.5, v = -1/r.
    {
        GridSpec g = make_grid(2, 0.66, 0.01);
        DomainConfig dom = DomainConfig::make(g, make_ball(g, {0, 0, 0}, 0.05), std::nullopt,
                                              BoundaryValue{0.0, {}});
        StepControl ctl;
        ctl.t_end = 0.04;
        FlowState s = init_state(dom, make_ball(g, {0, 0, 0}, 0.5), ctl);
        auto samples = run(s, dom, ctl, 400);
        std::printf("== MCF circle r0=0.5 (2D)\n");
        for (const auto& st : samples)
            std::printf("  t=%.4f  r=%.5f  exact=%.5f  err=%+.5f sd=%.4f\n", st.t,
                        st.diag.radius.mean, std::sqrt(0.25 - 2 * st.t),
                        st.diag.radius.mean - std::sqrt(0.25 - 2 * st.t), st.diag.radius.sd);
    }

    // Slice-mode flow: velocity field at t=0 on interface nodes.
    {
        GridSpec g = make_slice_grid(2.4, 0.05);
        DomainConfig dom = DomainConfig::make(g, make_ball(g, {0, 0, 0}, 1.0), std::nullopt,
                                              BoundaryValue{1.0, {}});
        StepControl ctl;
        FlowState s = init_state(dom, make_ball(g, {0, 0, 0}, 2.0), ctl);
        ScalarField v = flow_velocity(s.u, s.e);
        const RadialConfig rc{3, 1.0};
        std::printf("== slice velocity at interface nodes (analytic %.4f)\n",
                    ode_rhs(2.0, rc));
        double vmin = 1e9, vmax = -1e9, vsum = 0;
        int count = 0;
        for (int i = 1; i < g.shape[0] - 1; ++i)
            for (int j = 1; j < g.shape[1] - 1; ++j) {
                if (std::abs(s.e.at(i, j)) > 0.5 * g.h) continue;
                const double val = v.at(i, j);
                vmin = std::min(vmin, val);
                vmax = std::max(vmax, val);
                vsum += val;
                ++count;
            }
        std::printf("  interface nodes: %d  v in [%.4f, %.4f]  mean %.4f\n", count, vmin,
                    vmax, vsum / count);
    }

    // Slice-mode flow trajectory vs oracle.
    {
        GridSpec g = make_slice_grid(2.4, 0.05);
        DomainConfig dom = DomainConfig::make(g, make_ball(g, {0, 0, 0}, 1.0), std::nullopt,
                                              BoundaryValue{1.0, {}});
        StepControl ctl;
        ctl.t_end = 0.2;
        FlowState s = init_state(dom, make_ball(g, {0, 0, 0}, 2.0), ctl);
        auto samples = run(s, dom, ctl, 150);
        RadialTrajectory tr = integrate(2.0, 0.2, 1e-4, RadialConfig{3, 1.0});
        std::printf("== slice flow trajectory\n");
        for (const auto& st : samples)
            std::printf("  t=%.4f  r=%.5f  oracle=%.5f  err=%+.5f\n", st.t,
                        st.diag.radius.mean, trajectory_radius(tr, st.t),
                        st.diag.radius.mean - trajectory_radius(tr, st.t));
    }
    return 0;
}
