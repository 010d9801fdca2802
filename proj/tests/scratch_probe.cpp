// Throwaway numerics probe (not part of the test suite).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "mcnd/capacity.hpp"
#include "mcnd/radial.hpp"
#include "mcnd/smoothflow.hpp"

using namespace mcnd;
constexpr double PI = std::numbers::pi;

int main() {
    // Perimeter convergence, unit circle.
    std::printf("== perimeter of unit circle (target %.6f)\n", 2 * PI);
    for (double h : {0.04, 0.02, 0.01}) {
        GridSpec g = make_grid(2, 1.28, h);
        LevelSetField f = make_ball(g, {0, 0, 0}, 1.0);
        const double p = perimeter(f);
        std::printf("  h=%.3f  per=%.6f  err=%+.3e\n", h, p, p - 2 * PI);
    }
    std::printf("== volume of unit disk (target %.6f)\n", PI);
    for (double h : {0.04, 0.02}) {
        GridSpec g = make_grid(2, 1.28, h);
        LevelSetField f = make_ball(g, {0, 0, 0}, 1.0);
        std::printf("  h=%.3f  vol=%.6f err=%+.3e\n", h, volume(f), volume(f) - PI);
    }
    {
        GridSpec g = make_grid(3, 1.25, 0.05);
        LevelSetField f = make_ball(g, {0, 0, 0}, 1.0);
        std::printf("== 3D ball vol=%.5f (%.5f), sphere r=1 area=%.5f (%.5f)\n", volume(f),
                    4 * PI / 3, perimeter(f), 4 * PI);
    }
    {
        GridSpec g = make_slice_grid(1.25, 0.05);
        LevelSetField f = make_ball(g, {0, 0, 0}, 1.0);
        std::printf("== slice ball vol=%.5f (%.5f), area=%.5f (%.5f)\n", volume(f),
                    4 * PI / 3, perimeter(f), 4 * PI);
    }

    // Curvature checks.
    {
        GridSpec g = make_grid(2, 1.28, 0.02);
        LevelSetField f = make_ball(g, {0, 0, 0}, 0.5);
        ScalarField H = curvature(f);
        // sample at node nearest (0.5, 0)
        int i = static_cast<int>(std::lround((0.5 - g.origin[0]) / g.h));
        int j = static_cast<int>(std::lround((0.0 - g.origin[1]) / g.h));
        std::printf("== curvature circle r=0.5 at interface: %.4f (target 2)\n", H.at(i, j));
        GridSpec gs = make_slice_grid(1.6, 0.05);
        LevelSetField fs = make_ball(gs, {0, 0, 0}, 1.0);
        ScalarField Hs = curvature(fs);
        int is = static_cast<int>(std::lround((1.0 - gs.origin[0]) / gs.h));
        int js = static_cast<int>(std::lround((0.0 - gs.origin[1]) / gs.h));
        std::printf("== slice curvature sphere r=1 at axis interface: %.4f (target 2)\n",
                    Hs.at(is, js));
    }

    auto capacity_probe = [](const char* name, const GridSpec& g) {
        auto t0 = std::chrono::steady_clock::now();
        DomainConfig dom = DomainConfig::make(g, make_ball(g, {0, 0, 0}, 1.0), std::nullopt,
                                              BoundaryValue{1.0, {}});
        LevelSetField e = make_ball(g, {0, 0, 0}, 2.0);
        PotentialSolution sol = solve_capacity(dom, e, 1e-8, 500);
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const RadialConfig rc{g.n, 1.0};
        // u at r = 1.5 along +x
        int i = static_cast<int>(std::lround((1.5 - g.origin[0]) / g.h));
        int j = static_cast<int>(std::lround((0.0 - g.origin[1]) / g.h));
        int k = g.shape[2] > 1 ? (g.shape[2] - 1) / 2 : 0;
        double u15 = sol.u.at(i, j, k);
        double exact = radial_potential(1.5, 2.0, rc);
        ScalarField q = normal_derivative_sq(sol, e);
        int ii = static_cast<int>(std::lround((2.0 - g.origin[0]) / g.h));
        double qv = q.at(ii, j, k);
        double uprime = (g.n == 3) ? 1.0 / (2.0 * (2.0 - 1.0)) : 1.0 / (2.0 * std::log(2.0));
        DomainConfig domb = dom;
        double dir = dirichlet_energy(sol, dom, e);
        double dir_exact = (g.n == 3) ? 8 * PI : 2 * PI / std::log(2.0);
        std::printf(
            "== capacity %s: iters=%d res=%.1e  u(1.5)=%.4f (%.4f)  unu2=%.4f (%.4f)  "
            "dirichlet=%.3f (%.3f)  minu=%.1e maxu-1=%.1e  [%.2fs]\n",
            name, sol.iterations, sol.residual, u15, exact, qv, uprime * uprime, dir,
            dir_exact, sol.min_u, sol.max_u - 1.0, dt);
        (void)domb;
    };
    capacity_probe("n2 h=0.02", make_grid(2, 2.16, 0.02));
    capacity_probe("slice h=0.02", make_slice_grid(2.16, 0.02));
    capacity_probe("slice h=0.05", make_slice_grid(2.4, 0.05));
    capacity_probe("full3d h=0.05", make_grid(3, 2.2, 0.05));

    // Smooth-flow velocity check + a few steps, slice mode.
    {
        GridSpec g = make_slice_grid(2.4, 0.05);
        DomainConfig dom = DomainConfig::make(g, make_ball(g, {0, 0, 0}, 1.0), std::nullopt,
                                              BoundaryValue{1.0, {}});
        StepControl ctl;
        ctl.t_end = 0.05;
        FlowState s = init_state(dom, make_ball(g, {0, 0, 0}, 2.0), ctl);
        auto t0 = std::chrono::steady_clock::now();
        auto samples = run(s, dom, ctl, 50);
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const auto& last = samples.back();
        std::printf("== slice flow to t=0.05: steps=%ld radius=%.4f (oracle %.4f) sd=%.4f  [%.2fs]\n",
                    last.steps_taken, last.diag.radius.mean,
                    trajectory_radius(integrate(2.0, 0.05, 1e-4, RadialConfig{3, 1.0}), last.t),
                    last.diag.radius.sd, dt);
    }
    return 0;
}
