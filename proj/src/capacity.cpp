#include "mcnd/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

namespace mcnd {

namespace {

constexpr double kSnapTheta = 0.1;  // crossings closer than this snap the node

double phi_at(const BoundaryValue& phi, const GridSpec& spec, double x, double y, double z) {
    (void)spec;
    return phi(x, y, z);
}

// One discretized capacity problem (one multigrid level).
//
// Equation at unknown node i:  diag*u_i - sum_d link_d*u_{nb(d)} = rhs_i.
// Ghost-node Dirichlet contributions are folded into diag and rhs
// (first-order cut cells, Gibou style), which keeps the off-diagonal
// pattern regular.
struct Level {
    GridSpec spec;
    LevelSetField e;
    LevelSetField d_in;
    int nx = 0, ny = 0, nz = 0, rd = 2;
    std::ptrdiff_t off[6]{};
    std::vector<std::uint8_t> fixed;
    std::vector<double> fixed_value;
    std::vector<double> diag, rhs;
    std::vector<double> link[6];
    std::vector<double> u;

    void assemble(const BoundaryValue& phi, bool homogeneous);
    void smooth(int sweeps, double omega);
    double scaled_residual_norm() const;
    void residual(std::vector<double>& r) const;
};

void Level::assemble(const BoundaryValue& phi, bool homogeneous) {
    nx = spec.shape[0];
    ny = spec.shape[1];
    nz = spec.shape[2];
    rd = spec.rep_dims();
    const std::ptrdiff_t sx = static_cast<std::ptrdiff_t>(ny) * nz, sy = nz, sz = 1;
    off[0] = sx; off[1] = -sx;
    off[2] = sy; off[3] = -sy;
    off[4] = sz; off[5] = -sz;

    const std::size_t total = spec.node_count();
    const double h = spec.h;
    const double inv_h2 = 1.0 / (h * h);
    fixed.assign(total, 0);
    fixed_value.assign(total, 0.0);
    diag.assign(total, 1.0);
    rhs.assign(total, 0.0);
    for (int d = 0; d < 2 * rd; ++d) link[d].assign(total, 0.0);
    u.assign(total, 0.0);

    // Base classification.
    std::size_t id = 0;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            for (int k = 0; k < nz; ++k, ++id) {
                if (e.values[id] >= 0.0) {
                    fixed[id] = 1;
                    fixed_value[id] = 0.0;
                } else if (d_in.values[id] <= 0.0) {
                    fixed[id] = 1;
                    fixed_value[id] = phi_at(phi, spec, spec.coord(0, i), spec.coord(1, j),
                                             nz > 1 ? spec.coord(2, k) : 0.0);
                }
            }

    // Crossing fraction toward a fixed neighbour, and its boundary value.
    auto crossing = [&](std::size_t i0, int i, int j, int k, int d, double& theta,
                        double& value) -> bool {
        const int pos[3] = {i, j, k};
        const int axis = d / 2;
        const int dir = (d % 2 == 0) ? 1 : -1;
        const int q = pos[axis] + dir;
        if (q < 0 || q >= spec.shape[axis]) {  // grid edge: Dirichlet-0 ghost
            theta = 1.0;
            value = 0.0;
            return true;
        }
        const std::size_t jd = i0 + off[d];
        if (e.values[jd] >= 0.0) {
            theta = e.values[i0] / (e.values[i0] - e.values[jd]);
            value = 0.0;
            return true;
        }
        if (d_in.values[jd] <= 0.0) {
            theta = d_in.values[i0] / (d_in.values[i0] - d_in.values[jd]);
            double x[3] = {spec.coord(0, i), spec.coord(1, j), nz > 1 ? spec.coord(2, k) : 0.0};
            x[axis] += dir * theta * h;
            value = phi_at(phi, spec, x[0], x[1], x[2]);
            return true;
        }
        return false;  // neighbour is another non-fixed node
    };

    // Snap pass: a crossing closer than kSnapTheta*h turns the node into a
    // boundary node carrying that crossing's value.
    id = 0;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            for (int k = 0; k < nz; ++k, ++id) {
                if (fixed[id]) continue;
                double best_theta = 2.0, best_value = 0.0;
                for (int d = 0; d < 2 * rd; ++d) {
                    double theta, value;
                    if (!crossing(id, i, j, k, d, theta, value)) continue;
                    if (theta < best_theta) {
                        best_theta = theta;
                        best_value = value;
                    }
                }
                if (best_theta < kSnapTheta) {
                    fixed[id] = 2;  // snapped; still Dirichlet for neighbours
                    fixed_value[id] = best_value;
                }
            }

    // Stencil assembly.
    id = 0;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            for (int k = 0; k < nz; ++k, ++id) {
                if (fixed[id]) {
                    u[id] = homogeneous ? 0.0 : fixed_value[id];
                    continue;
                }
                const double y = spec.coord(1, j);
                const bool axi = spec.slice();
                const bool on_axis = axi && std::abs(y) < 0.25 * h;
                double dg = 0.0, b = 0.0;
                for (int d = 0; d < 2 * rd; ++d) {
                    double w = 1.0;  // face weight (axisymmetric metric)
                    if (axi && d >= 2) {
                        if (on_axis) w = 2.0;
                        else w = std::abs(y + (d == 2 ? 0.5 : -0.5) * h) / std::abs(y);
                    }
                    const int pos[3] = {i, j, k};
                    const int axis = d / 2;
                    const int dir = (d % 2 == 0) ? 1 : -1;
                    const int q = pos[axis] + dir;
                    const bool in_bounds = (q >= 0 && q < spec.shape[axis]);
                    const std::size_t jd = in_bounds ? id + off[d] : id;
                    if (in_bounds && !fixed[jd]) {
                        const double a = w * inv_h2;
                        link[d][id] = a;
                        dg += a;
                    } else if (in_bounds && fixed[jd] == 2) {
                        const double a = w * inv_h2;  // snapped: full-spacing Dirichlet
                        dg += a;
                        if (!homogeneous) b += a * fixed_value[jd];
                    } else {
                        double theta = 1.0, value = 0.0;
                        crossing(id, i, j, k, d, theta, value);
                        theta = std::max(theta, kSnapTheta);
                        const double a = w * inv_h2 / theta;
                        dg += a;
                        if (!homogeneous) b += a * value;
                    }
                }
                diag[id] = dg;
                rhs[id] = b;
            }
}

void Level::smooth(int sweeps, double omega) {
    for (int s = 0; s < sweeps; ++s)
        for (int color = 0; color < 2; ++color) {
            std::size_t id = 0;
            for (int i = 0; i < nx; ++i)
                for (int j = 0; j < ny; ++j)
                    for (int k = 0; k < nz; ++k, ++id) {
                        if (fixed[id] || ((i + j + k) & 1) != color) continue;
                        double acc = rhs[id];
                        for (int d = 0; d < 2 * rd; ++d) {
                            const double a = link[d][id];
                            if (a != 0.0) acc += a * u[id + off[d]];
                        }
                        const double gs = acc / diag[id];
                        u[id] += omega * (gs - u[id]);
                    }
        }
}

void Level::residual(std::vector<double>& r) const {
    r.assign(u.size(), 0.0);
    for (std::size_t id = 0; id < u.size(); ++id) {
        if (fixed[id]) continue;
        double acc = rhs[id] - diag[id] * u[id];
        for (int d = 0; d < 2 * rd; ++d) {
            const double a = link[d][id];
            if (a != 0.0) acc += a * u[id + off[d]];
        }
        r[id] = acc;
    }
}

double Level::scaled_residual_norm() const {
    double worst = 0.0;
    for (std::size_t id = 0; id < u.size(); ++id) {
        if (fixed[id]) continue;
        double acc = rhs[id] - diag[id] * u[id];
        for (int d = 0; d < 2 * rd; ++d) {
            const double a = link[d][id];
            if (a != 0.0) acc += a * u[id + off[d]];
        }
        worst = std::max(worst, std::abs(acc) / diag[id]);
    }
    return worst;
}

bool coarsenable(const GridSpec& spec) {
    for (int a = 0; a < spec.rep_dims(); ++a) {
        if ((spec.shape[a] - 1) % 2 != 0) return false;
        if ((spec.shape[a] - 1) / 2 + 1 < 9) return false;
    }
    return true;
}

GridSpec coarsen_spec(const GridSpec& fine) {
    GridSpec c = fine;
    c.h = 2.0 * fine.h;
    for (int a = 0; a < fine.rep_dims(); ++a) c.shape[a] = (fine.shape[a] - 1) / 2 + 1;
    return c;
}

LevelSetField inject(const LevelSetField& f, const GridSpec& coarse) {
    LevelSetField out(coarse);
    const int nz = coarse.shape[2];
    for (int i = 0; i < coarse.shape[0]; ++i)
        for (int j = 0; j < coarse.shape[1]; ++j)
            for (int k = 0; k < nz; ++k)
                out.at(i, j, k) = f.at(2 * i, 2 * j, nz > 1 ? 2 * k : 0);
    return out;
}

// Full-weighting restriction of the fine residual into the coarse rhs.
void restrict_residual(const Level& fine, const std::vector<double>& r, Level& coarse) {
    const int cnx = coarse.nx, cny = coarse.ny, cnz = coarse.nz;
    const bool three = fine.nz > 1;
    std::fill(coarse.rhs.begin(), coarse.rhs.end(), 0.0);
    auto rf = [&](int i, int j, int k) -> double {
        if (i < 0 || i >= fine.nx || j < 0 || j >= fine.ny || k < 0 || k >= fine.nz) return 0.0;
        return r[(static_cast<std::size_t>(i) * fine.ny + j) * fine.nz + k];
    };
    const double w1[3] = {0.25, 0.5, 0.25};
    std::size_t id = 0;
    for (int I = 0; I < cnx; ++I)
        for (int J = 0; J < cny; ++J)
            for (int K = 0; K < cnz; ++K, ++id) {
                if (coarse.fixed[id]) continue;
                double acc = 0.0;
                for (int di = -1; di <= 1; ++di)
                    for (int dj = -1; dj <= 1; ++dj) {
                        if (!three) {
                            acc += w1[di + 1] * w1[dj + 1] * rf(2 * I + di, 2 * J + dj, 0);
                        } else {
                            for (int dk = -1; dk <= 1; ++dk)
                                acc += w1[di + 1] * w1[dj + 1] * w1[dk + 1] *
                                       rf(2 * I + di, 2 * J + dj, 2 * K + dk);
                        }
                    }
                coarse.rhs[id] = acc;
            }
}

// Bilinear/trilinear prolongation of the coarse correction, added into the
// fine unknowns.
void prolong_correct(const Level& coarse, Level& fine) {
    auto cu = [&](int I, int J, int K) -> double {
        I = std::clamp(I, 0, coarse.nx - 1);
        J = std::clamp(J, 0, coarse.ny - 1);
        K = std::clamp(K, 0, coarse.nz - 1);
        return coarse.u[(static_cast<std::size_t>(I) * coarse.ny + J) * coarse.nz + K];
    };
    const bool three = fine.nz > 1;
    std::size_t id = 0;
    for (int i = 0; i < fine.nx; ++i)
        for (int j = 0; j < fine.ny; ++j)
            for (int k = 0; k < fine.nz; ++k, ++id) {
                if (fine.fixed[id]) continue;
                const int I = i / 2, J = j / 2, K = three ? k / 2 : 0;
                const bool oi = i & 1, oj = j & 1, ok = three && (k & 1);
                double corr = 0.0;
                for (int a = 0; a <= (oi ? 1 : 0); ++a)
                    for (int b = 0; b <= (oj ? 1 : 0); ++b)
                        for (int c = 0; c <= (ok ? 1 : 0); ++c) corr += cu(I + a, J + b, K + c);
                corr /= (oi ? 2.0 : 1.0) * (oj ? 2.0 : 1.0) * (ok ? 2.0 : 1.0);
                fine.u[id] += corr;
            }
}

struct Hierarchy {
    std::vector<Level> levels;

    Hierarchy(const GridSpec& spec, const LevelSetField& e, const LevelSetField& d_in,
              const BoundaryValue& phi) {
        levels.emplace_back();
        levels.back().spec = spec;
        levels.back().e = e;
        levels.back().d_in = d_in;
        levels.back().assemble(phi, false);
        while (coarsenable(levels.back().spec) && levels.size() < 12) {
            const GridSpec cs = coarsen_spec(levels.back().spec);
            Level lv;
            lv.spec = cs;
            lv.e = inject(levels.back().e, cs);
            lv.d_in = inject(levels.back().d_in, cs);
            levels.push_back(std::move(lv));
            levels.back().assemble(phi, true);
        }
    }

    void vcycle(std::size_t depth, std::vector<std::vector<double>>& scratch) {
        Level& lv = levels[depth];
        if (depth + 1 == levels.size()) {
            lv.smooth(60, 1.5);
            return;
        }
        lv.smooth(2, 1.0);
        lv.residual(scratch[depth]);
        Level& next = levels[depth + 1];
        restrict_residual(lv, scratch[depth], next);
        std::fill(next.u.begin(), next.u.end(), 0.0);
        vcycle(depth + 1, scratch);
        prolong_correct(next, lv);
        lv.smooth(2, 1.0);
    }
};

} // namespace

double DomainConfig::sup_phi() const {
    if (phi.is_constant()) return phi.constant;
    // Sample the radial profile over the grid's radius range.
    double r_max = 0.0;
    const GridSpec& s = d_in.spec;
    for (int a = 0; a < s.rep_dims(); ++a)
        r_max += std::max(std::abs(s.origin[a]), std::abs(s.origin[a] + s.extent(a))) *
                 std::max(std::abs(s.origin[a]), std::abs(s.origin[a] + s.extent(a)));
    r_max = std::sqrt(r_max);
    double sup = 0.0;
    for (int i = 0; i <= 4096; ++i) sup = std::max(sup, phi.radial(r_max * i / 4096.0));
    return sup;
}

void DomainConfig::validate() const {
    if (n != d_in.spec.n) throw geometry_error("domain dimension mismatch");
    if (!(d_in.spec == d_out.spec)) throw shape_error("d_in and d_out grids differ");
    const double h = d_in.spec.h;
    double band_min = std::numeric_limits<double>::infinity();
    bool nonempty = false;
    for (std::size_t i = 0; i < d_in.values.size(); ++i) {
        if (d_in.values[i] <= 0.0) nonempty = true;
        if (std::abs(d_in.values[i]) <= 2.0 * h)
            band_min = std::min(band_min, d_in.values[i] - d_out.values[i]);
    }
    if (!nonempty) throw geometry_error("D_in is empty on the grid");
    if (!(band_min > 2.0 * h))
        throw geometry_error("D_in is not compactly contained in D_out (separation <= 2h)");
}

LevelSetField box_interior_sdf(const GridSpec& spec, double inset) {
    LevelSetField f(spec);
    const int rd = spec.rep_dims();
    std::size_t id = 0;
    for (int i = 0; i < spec.shape[0]; ++i)
        for (int j = 0; j < spec.shape[1]; ++j)
            for (int k = 0; k < spec.shape[2]; ++k, ++id) {
                const int pos[3] = {i, j, k};
                double v = -std::numeric_limits<double>::infinity();
                for (int a = 0; a < rd; ++a) {
                    const double lo = spec.origin[a] + inset;
                    const double hi = spec.origin[a] + spec.extent(a) - inset;
                    const double c = spec.coord(a, pos[a]);
                    v = std::max(v, std::max(lo - c, c - hi));
                }
                f.values[id] = v;
            }
    return f;
}

DomainConfig DomainConfig::make(const GridSpec& spec, LevelSetField din,
                                std::optional<LevelSetField> dout, BoundaryValue phi_in) {
    spec.validate();
    DomainConfig cfg;
    cfg.n = spec.n;
    cfg.d_in = std::move(din);
    cfg.bounded = dout.has_value();
    cfg.d_out = cfg.bounded ? std::move(*dout) : box_interior_sdf(spec, 2.0 * spec.h);
    cfg.phi = std::move(phi_in);

    // D = sup |z| over D_out (3D radius on slice grids equals the in-plane one).
    double sup = 0.0;
    const GridSpec& s = spec;
    std::size_t id = 0;
    for (int i = 0; i < s.shape[0]; ++i)
        for (int j = 0; j < s.shape[1]; ++j)
            for (int k = 0; k < s.shape[2]; ++k, ++id)
                if (cfg.d_out.values[id] <= 0.0) {
                    const double x = s.coord(0, i), y = s.coord(1, j),
                                 z = s.shape[2] > 1 ? s.coord(2, k) : 0.0;
                    sup = std::max(sup, std::sqrt(x * x + y * y + z * z));
                }
    cfg.d_sup = sup;
    cfg.validate();
    return cfg;
}

PotentialSolution solve_capacity(const DomainConfig& domain, const LevelSetField& e,
                                 double tol, int max_iter, const ScalarField* warm) {
    if (!(e.spec == domain.d_in.spec)) throw shape_error("potential grid mismatch");
    for (std::size_t i = 0; i < e.values.size(); ++i)
        if (domain.d_in.values[i] <= 0.0 && e.values[i] > 0.0)
            throw geometry_error("D_in is not contained in the evolving set");

    PotentialSolution sol;
    sol.u = ScalarField(e.spec, 0.0);

    // phi == 0 collapses the whole problem.
    if (domain.sup_phi() == 0.0) {
        sol.residual = 0.0;
        sol.iterations = 0;
        sol.min_u = sol.max_u = 0.0;
        return sol;
    }

    Hierarchy mg(e.spec, e, domain.d_in, domain.phi);
    Level& top = mg.levels.front();
    if (warm && warm->values.size() == top.u.size()) {
        for (std::size_t i = 0; i < top.u.size(); ++i)
            if (!top.fixed[i]) top.u[i] = warm->values[i];
    }

    std::vector<std::vector<double>> scratch(mg.levels.size());
    double res = top.scaled_residual_norm();
    int iter = 0;
    const int cycle_budget = std::min(max_iter, 40);
    while (res > tol && iter < cycle_budget) {
        mg.vcycle(0, scratch);
        ++iter;
        res = top.scaled_residual_norm();
    }
    // Rarely-needed fallback: plain red-black SOR until tol or max_iter.
    while (res > tol && iter < max_iter) {
        top.smooth(10, 1.8);
        iter += 10;
        res = top.scaled_residual_norm();
    }
    if (res > tol)
        throw convergence_error("capacity solve did not reach tolerance", res);

    sol.u.values = top.u;
    sol.residual = res;
    sol.iterations = iter;
    const auto [mn, mx] = std::minmax_element(sol.u.values.begin(), sol.u.values.end());
    sol.min_u = *mn;
    sol.max_u = *mx;
    return sol;
}

namespace {

double interp(const ScalarField& f, double x, double y, double z) {
    const GridSpec& s = f.spec;
    const double fx = std::clamp((x - s.origin[0]) / s.h, 0.0, s.shape[0] - 1.000001);
    const double fy = std::clamp((y - s.origin[1]) / s.h, 0.0, s.shape[1] - 1.000001);
    const int i = static_cast<int>(fx), j = static_cast<int>(fy);
    const double ax = fx - i, ay = fy - j;
    if (s.shape[2] == 1) {
        return (1 - ax) * ((1 - ay) * f.at(i, j) + ay * f.at(i, j + 1)) +
               ax * ((1 - ay) * f.at(i + 1, j) + ay * f.at(i + 1, j + 1));
    }
    const double fz = std::clamp((z - s.origin[2]) / s.h, 0.0, s.shape[2] - 1.000001);
    const int k = static_cast<int>(fz);
    const double az = fz - k;
    double c00 = (1 - az) * f.at(i, j, k) + az * f.at(i, j, k + 1);
    double c01 = (1 - az) * f.at(i, j + 1, k) + az * f.at(i, j + 1, k + 1);
    double c10 = (1 - az) * f.at(i + 1, j, k) + az * f.at(i + 1, j, k + 1);
    double c11 = (1 - az) * f.at(i + 1, j + 1, k) + az * f.at(i + 1, j + 1, k + 1);
    return (1 - ax) * ((1 - ay) * c00 + ay * c01) + ax * ((1 - ay) * c10 + ay * c11);
}

} // namespace

ScalarField normal_derivative_sq(const PotentialSolution& sol, const LevelSetField& e) {
    if (!(sol.u.spec == e.spec)) throw shape_error("potential/level-set grid mismatch");
    const GridSpec& spec = e.spec;
    const int nx = spec.shape[0], ny = spec.shape[1], nz = spec.shape[2];
    const double h = spec.h;
    const double band = 3.0 * h;
    const std::ptrdiff_t sx = static_cast<std::ptrdiff_t>(ny) * nz, sy = nz;
    const auto& v = e.values;
    ScalarField out(spec, 0.0);

    const int kmax = (nz > 1) ? nz - 1 : 1;
    for (int i = 1; i < nx - 1; ++i)
        for (int j = 1; j < ny - 1; ++j)
            for (int k = (nz > 1 ? 1 : 0); k < kmax; ++k) {
                const std::size_t id = (static_cast<std::size_t>(i) * ny + j) * nz + k;
                if (std::abs(v[id]) > band) continue;
                double gx = (v[id + sx] - v[id - sx]) * 0.5 / h;
                double gy = (v[id + sy] - v[id - sy]) * 0.5 / h;
                double gz = (nz > 1) ? (v[id + 1] - v[id - 1]) * 0.5 / h : 0.0;
                const double gn = std::sqrt(gx * gx + gy * gy + gz * gz);
                if (gn < 0.5) {
                    if (std::abs(v[id]) <= 1.0001 * h)
                        throw geometry_error("degenerate normal at an interface node");
                    continue;  // band fringe near a medial axis; leave 0
                }
                gx /= gn; gy /= gn; gz /= gn;
                const double x = spec.coord(0, i), y = spec.coord(1, j),
                             z = nz > 1 ? spec.coord(2, k) : 0.0;
                // Foot point on the interface, then sample inward (u = 0 there).
                const double qx = x - v[id] * gx, qy = y - v[id] * gy, qz = z - v[id] * gz;
                const double s1 = interp(sol.u, qx - h * gx, qy - h * gy, qz - h * gz);
                const double s2 =
                    interp(sol.u, qx - 2 * h * gx, qy - 2 * h * gy, qz - 2 * h * gz);
                const double unu = (4.0 * s1 - s2) / (2.0 * h);
                out.values[id] = unu * unu;
            }
    return out;
}

double dirichlet_energy(const PotentialSolution& sol, const DomainConfig& domain,
                        const LevelSetField& e) {
    const GridSpec& spec = e.spec;
    if (!(sol.u.spec == spec)) throw shape_error("potential grid mismatch");
    const int nx = spec.shape[0], ny = spec.shape[1], nz = spec.shape[2];
    const int rd = spec.rep_dims();
    const double h = spec.h;
    const std::ptrdiff_t stride[3] = {static_cast<std::ptrdiff_t>(ny) * nz, nz, 1};
    const int dim[3] = {nx, ny, nz};
    const auto& uu = sol.u.values;
    const auto& ee = e.values;
    const auto& dd = domain.d_in.values;
    const bool axi = spec.slice();
    const double cell = axi ? h * h : std::pow(h, rd);

    double sum = 0.0;
    std::size_t id = 0;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            for (int k = 0; k < nz; ++k, ++id) {
                const int pos[3] = {i, j, k};
                for (int a = 0; a < rd; ++a) {
                    if (pos[a] + 1 >= dim[a]) continue;
                    const std::size_t jd = id + stride[a];
                    const double ui = uu[id], uj = uu[jd];
                    if (ui == 0.0 && uj == 0.0) continue;

                    double w = cell;
                    if (axi) {
                        const double yf = (a == 1)
                                              ? std::abs(spec.coord(1, j) + 0.5 * h)
                                              : std::abs(spec.coord(1, j));
                        w *= std::numbers::pi * yf;
                    }

                    const bool in_i = ee[id] < 0.0, in_j = ee[jd] < 0.0;
                    if (in_i != in_j) {
                        // One-sided difference on the inside segment only.
                        const double theta =
                            std::max(std::abs(ee[in_i ? id : jd]) /
                                         (std::abs(ee[id]) + std::abs(ee[jd])),
                                     kSnapTheta);
                        const double uin = in_i ? ui : uj;
                        const double g = uin / (theta * h);
                        sum += g * g * theta * w;
                        continue;
                    }
                    const bool din_i = dd[id] <= 0.0, din_j = dd[jd] <= 0.0;
                    if (in_i && in_j && din_i != din_j) {
                        const double theta =
                            std::max(std::abs(dd[din_i ? jd : id]) /
                                         (std::abs(dd[id]) + std::abs(dd[jd])),
                                     kSnapTheta);
                        // Value at the crossing of partial D_in.
                        double x[3] = {spec.coord(0, i), spec.coord(1, j),
                                       nz > 1 ? spec.coord(2, k) : 0.0};
                        const double from = din_i ? 1.0 : 0.0;  // unknown side start
                        (void)from;
                        double xc[3] = {x[0], x[1], x[2]};
                        xc[a] += (din_i ? (1.0 - theta) : theta) * h;
                        const double phic =
                            domain.phi(xc[0], xc[1], nz > 1 ? xc[2] : 0.0);
                        const double u_unk = din_i ? uj : ui;
                        const double u_fix = din_i ? ui : uj;
                        const double g1 = (phic - u_unk) / (theta * h);
                        sum += g1 * g1 * theta * w;
                        if (1.0 - theta > 1e-12) {
                            const double g2 = (u_fix - phic) / ((1.0 - theta) * h);
                            sum += g2 * g2 * (1.0 - theta) * w;
                        }
                        continue;
                    }
                    const double g = (uj - ui) / h;
                    sum += g * g * w;
                }
            }
    return sum;
}

} // namespace mcnd
