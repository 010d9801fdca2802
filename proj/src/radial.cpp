#include "mcnd/radial.hpp"

#include <cmath>
#include <numbers>

namespace mcnd {

namespace {

constexpr double kPi = std::numbers::pi;

void check_cfg(const RadialConfig& cfg) {
    if (cfg.n != 2 && cfg.n != 3) throw error("radial config: n must be 2 or 3");
    if (!(cfg.phi0 > 0.0)) throw error("radial config: phi0 must be positive");
}

// Stationarity / optimality residual, increasing in R on (1, inf).
double opt_residual(double R, const RadialConfig& cfg) {
    if (cfg.n == 3) return R * (R - 1.0) * (R - 1.0) - 0.5 * cfg.phi0 * cfg.phi0;
    const double lr = std::log(R);
    return R * lr * lr - cfg.phi0 * cfg.phi0;
}

} // namespace

double r_opt(const RadialConfig& cfg) {
    check_cfg(cfg);
    double lo = 1.0, hi = 100.0;
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (opt_residual(mid, cfg) < 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double radial_energy(double R, const RadialConfig& cfg) {
    check_cfg(cfg);
    if (!(R > 1.0)) throw error("radial energy needs R > 1");
    const double p2 = cfg.phi0 * cfg.phi0;
    if (cfg.n == 3) {
        // (n-2) R^{n-2}/(R^{n-2}-1) n omega_n + n omega_n R^{n-1}, n omega_3 = 4 pi
        return p2 * 4.0 * kPi * R / (R - 1.0) + 4.0 * kPi * R * R;
    }
    return p2 * 2.0 * kPi / std::log(R) + 2.0 * kPi * R;
}

double ode_rhs(double L, const RadialConfig& cfg) {
    check_cfg(cfg);
    if (!(L > 1.0)) throw error("radial ode needs L > 1");
    const double p2 = cfg.phi0 * cfg.phi0;
    if (cfg.n == 3) {
        const double a = 1.0 / (L * (L - 1.0));
        return p2 * a * a - 2.0 / L;
    }
    const double a = 1.0 / (L * std::log(L));
    return p2 * a * a - 1.0 / L;
}

RadialTrajectory integrate(double L0, double t_end, double dt, const RadialConfig& cfg) {
    check_cfg(cfg);
    if (!(L0 > 1.0)) throw error("radial integrate needs L0 > 1");
    if (!(dt > 0.0)) throw error("radial integrate needs dt > 0");

    RadialTrajectory traj;
    traj.n = cfg.n;
    traj.L0 = L0;
    traj.samples.emplace_back(0.0, L0);

    double t = 0.0, L = L0;
    while (t < t_end - 1e-15) {
        double step = std::min(dt, t_end - t);
        // Respect the L = 1 singularity: halve until the step is safely small.
        while (std::abs(ode_rhs(L, cfg)) * step > 0.1 * (L - 1.0)) step *= 0.5;
        const double k1 = ode_rhs(L, cfg);
        const double k2 = ode_rhs(L + 0.5 * step * k1, cfg);
        const double k3 = ode_rhs(L + 0.5 * step * k2, cfg);
        const double k4 = ode_rhs(L + step * k3, cfg);
        L += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += step;
        traj.samples.emplace_back(t, L);
    }
    return traj;
}

double radial_potential(double r, double R, const RadialConfig& cfg) {
    check_cfg(cfg);
    if (!(R > 1.0)) throw error("radial potential needs R > 1");
    if (r <= 1.0) return cfg.phi0;
    if (r >= R) return 0.0;
    if (cfg.n == 3) return cfg.phi0 * (R / (R - 1.0)) * (1.0 / r - 1.0 / R);
    return cfg.phi0 * std::log(R / r) / std::log(R);
}

double trajectory_radius(const RadialTrajectory& traj, double t) {
    const auto& s = traj.samples;
    if (s.empty()) throw error("empty trajectory");
    if (t <= s.front().first) return s.front().second;
    if (t >= s.back().first) return s.back().second;
    std::size_t lo = 0, hi = s.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (s[mid].first <= t) lo = mid;
        else hi = mid;
    }
    const double t0 = s[lo].first, t1 = s[hi].first;
    const double w = (t1 > t0) ? (t - t0) / (t1 - t0) : 0.0;
    return s[lo].second + w * (s[hi].second - s[lo].second);
}

} // namespace mcnd
