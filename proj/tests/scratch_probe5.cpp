// Throwaway probe: re-implement the MCF step loop with instrumentation.
#include <cmath>
#include <cstdio>

#include "mcnd/capacity.hpp"
#include "mcnd/grid.hpp"

using namespace mcnd;

int main() {
    GridSpec g = make_grid(2, 0.66, 0.01);
    const double h = g.h;
    LevelSetField e = redistance(make_ball(g, {0, 0, 0}, 0.5));
    const double band = 3 * h, cap = 1 / h;
    const double dt = 0.4 * h * h / 4.0;

    for (int step = 1; step <= 60; ++step) {
        LevelSetField enew = e;
        double max_upd = 0, max_H = 0, min_g = 10, max_g = 0;
        int argi = 0, argj = 0;
        for (int i = 1; i < g.shape[0] - 1; ++i)
            for (int j = 1; j < g.shape[1] - 1; ++j) {
                if (std::abs(e.at(i, j)) > band) continue;
                const double H = std::clamp(mean_curvature_at(e, i, j), -cap, cap);
                const double gc = gradient_norm_at(e, i, j);
                const double upd = dt * H * gc;
                enew.at(i, j) = e.at(i, j) + upd;
                if (std::abs(upd) > max_upd) {
                    max_upd = std::abs(upd);
                    argi = i;
                    argj = j;
                }
                max_H = std::max(max_H, std::abs(H));
                min_g = std::min(min_g, gc);
                max_g = std::max(max_g, gc);
            }
        e = std::move(enew);
        if (step % 5 == 0) e = redistance(e);
        if (step % 5 == 0 || max_upd > 0.05 * h)
            std::printf(
                "step %2d: max upd/h=%.4f at (%d,%d) x=(%.2f,%.2f) |e|=%.4f  maxH=%.1f  "
                "gc in [%.2f, %.2f]\n",
                step, max_upd / h, argi, argj, g.coord(0, argi), g.coord(1, argj),
                e.at(argi, argj), max_H, min_g, max_g);
    }
    return 0;
}
