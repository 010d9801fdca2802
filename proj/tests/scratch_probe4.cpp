// Throwaway probe: find the degenerate-normal node in the MCF run.
#include <cmath>
#include <cstdio>

#include "mcnd/radial.hpp"
#include "mcnd/smoothflow.hpp"

using namespace mcnd;

int main() {
    GridSpec g = make_grid(2, 0.66, 0.01);
    DomainConfig dom = DomainConfig::make(g, make_ball(g, {0, 0, 0}, 0.05), std::nullopt,
                                          BoundaryValue{0.0, {}});
    StepControl ctl;
    ctl.t_end = 0.04;
    FlowState s = init_state(dom, make_ball(g, {0, 0, 0}, 0.5), ctl);
    int step_no = 0;
    try {
        while (ctl.t_end - s.t > 1e-12) {
            s = step(s, dom, ctl, ctl.t_end - s.t);
            ++step_no;
            if (step_no % 400 == 0)
                std::printf("step %d t=%.4f r=%.5f exact=%.5f\n", step_no, s.t,
                            interface_radius_stats(s.e).mean, std::sqrt(0.25 - 2 * s.t));
        }
    } catch (const error& e) {
        std::printf("threw at step %d t=%.5f: %s\n", step_no, s.t, e.what());
        // dump gradient norms at interface nodes
        for (int i = 1; i < g.shape[0] - 1; ++i)
            for (int j = 1; j < g.shape[1] - 1; ++j) {
                if (std::abs(s.e.at(i, j)) > 1.0001 * g.h) continue;
                const double gx = (s.e.at(i + 1, j) - s.e.at(i - 1, j)) / (2 * g.h);
                const double gy = (s.e.at(i, j + 1) - s.e.at(i, j - 1)) / (2 * g.h);
                const double gn = std::hypot(gx, gy);
                if (gn < 0.6)
                    std::printf("  node (%d,%d) x=(%.3f,%.3f) e=%.4f |grad|=%.3f\n", i, j,
                                g.coord(0, i), g.coord(1, j), s.e.at(i, j), gn);
            }
    }
    return 0;
}
