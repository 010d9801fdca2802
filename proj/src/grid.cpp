#include "mcnd/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace mcnd {

namespace {

constexpr double kPi = std::numbers::pi;

// Smoothed indicator of {value <= 0}, cosine profile, width eps.
inline double smoothed_indicator(double v, double eps) {
    if (v <= -eps) return 1.0;
    if (v >= eps) return 0.0;
    return 0.5 * (1.0 - v / eps - std::sin(kPi * v / eps) / kPi);
}

inline double smoothed_delta(double v, double eps) {
    if (v <= -eps || v >= eps) return 0.0;
    return 0.5 / eps * (1.0 + std::cos(kPi * v / eps));
}

void require_same_spec(const GridSpec& a, const GridSpec& b) {
    if (!(a == b)) throw shape_error("grid specs do not match");
}

} // namespace

void GridSpec::validate() const {
    if (n != 2 && n != 3) throw shape_error("dimension must be 2 or 3");
    if (!(h > 0.0)) throw shape_error("grid spacing must be positive");
    const int rd = rep_dims();
    if (n == 2 && rd != 2) throw shape_error("an n=2 grid stores exactly 2 axes");
    for (int a = 0; a < rd; ++a) {
        if (shape[a] < 8) throw shape_error("every axis needs at least 8 nodes");
    }
    if (rd == 2 && shape[2] != 1) throw shape_error("planar grids must have shape[2] == 1");
}

GridSpec make_grid(int n, double half_extent, double h) {
    GridSpec s;
    s.n = n;
    s.h = h;
    const int m = static_cast<int>(std::llround(half_extent / h));
    if (std::abs(m * h - half_extent) > 1e-9 * h)
        throw shape_error("half extent must be a multiple of h");
    const int count = 2 * m + 1;
    const int rd = (n == 3) ? 3 : 2;
    for (int a = 0; a < rd; ++a) {
        s.shape[a] = count;
        s.origin[a] = -half_extent;
    }
    s.validate();
    return s;
}

GridSpec make_slice_grid(double half_extent, double h) {
    GridSpec s = make_grid(2, half_extent, h);
    s.n = 3;
    s.validate();
    return s;
}

LevelSetField make_ball(const GridSpec& spec, const std::array<double, 3>& center,
                        double radius) {
    spec.validate();
    if (!(radius > 0.0)) throw domain_fit_error("ball radius must be positive");
    const int rd = spec.rep_dims();
    if (spec.slice() && std::abs(center[1]) > 1e-12)
        throw domain_fit_error("slice-grid balls must be centred on the x axis");
    for (int a = 0; a < rd; ++a) {
        const double lo = spec.origin[a];
        const double hi = spec.origin[a] + spec.extent(a);
        if (center[a] - radius - 3.0 * spec.h < lo || center[a] + radius + 3.0 * spec.h > hi)
            throw domain_fit_error("ball (with 3h margin) does not fit inside the grid");
    }
    LevelSetField f(spec);
    const int nx = spec.shape[0], ny = spec.shape[1], nz = spec.shape[2];
    std::size_t idx = 0;
    for (int i = 0; i < nx; ++i) {
        const double dx = spec.coord(0, i) - center[0];
        for (int j = 0; j < ny; ++j) {
            const double dy = spec.coord(1, j) - center[1];
            for (int k = 0; k < nz; ++k, ++idx) {
                const double dz = (nz > 1) ? spec.coord(2, k) - center[2] : 0.0;
                f.values[idx] = std::sqrt(dx * dx + dy * dy + dz * dz) - radius;
            }
        }
    }
    return f;
}

LevelSetField set_union(const LevelSetField& a, const LevelSetField& b) {
    require_same_spec(a.spec, b.spec);
    LevelSetField out(a.spec);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = std::min(a.values[i], b.values[i]);
    return out;
}

bool has_interface(const ScalarField& f) {
    bool any_neg = false, any_pos = false;
    for (double v : f.values) {
        if (v <= 0.0) any_neg = true;
        else any_pos = true;
        if (any_neg && any_pos) return true;
    }
    return false;
}

namespace {

// Godunov update for |grad d| = 1 from per-axis upwind neighbour values.
double eikonal_update(const double* a, int count, double h) {
    double s[3];
    std::copy(a, a + count, s);
    std::sort(s, s + count);
    double x = s[0] + h;
    if (count > 1 && x > s[1]) {
        const double d = 2.0 * h * h - (s[0] - s[1]) * (s[0] - s[1]);
        x = 0.5 * (s[0] + s[1] + std::sqrt(std::max(d, 0.0)));
        if (count > 2 && x > s[2]) {
            const double sum = s[0] + s[1] + s[2];
            const double sq = sum * sum - 3.0 * (s[0] * s[0] + s[1] * s[1] + s[2] * s[2] - h * h);
            x = (sum + std::sqrt(std::max(sq, 0.0))) / 3.0;
        }
    }
    return x;
}

} // namespace

LevelSetField redistance(const LevelSetField& f) {
    f.spec.validate();
    if (!has_interface(f)) throw no_interface_error("field has no sign change");

    const GridSpec& spec = f.spec;
    const int nx = spec.shape[0], ny = spec.shape[1], nz = spec.shape[2];
    const int rd = spec.rep_dims();
    const double h = spec.h;
    const std::size_t total = spec.node_count();
    const std::ptrdiff_t stride[3] = {static_cast<std::ptrdiff_t>(ny) * nz, nz, 1};
    const int dim[3] = {nx, ny, nz};
    constexpr double kInf = std::numeric_limits<double>::infinity();
    const auto& v = f.values;

    // Gradient-normalized first guess.  Dividing by a clamped local |grad f|
    // makes the band estimate meaningful for inputs like c*f.
    std::vector<double> w(total);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            for (int k = 0; k < nz; ++k) {
                const std::size_t id = (static_cast<std::size_t>(i) * ny + j) * nz + k;
                const int pos[3] = {i, j, k};
                double grad_sq = 0.0;
                for (int a = 0; a < rd; ++a) {
                    const double lo = pos[a] > 0 ? v[id - stride[a]] : v[id];
                    const double hi = pos[a] + 1 < dim[a] ? v[id + stride[a]] : v[id];
                    const double g = (hi - lo) / ((pos[a] > 0 && pos[a] + 1 < dim[a]) ? 2 * h : h);
                    grad_sq += g * g;
                }
                const double g = std::clamp(std::sqrt(grad_sq), 0.25, 8.0);
                w[id] = v[id] / g;
            }

    // Near the interface the normalized input is already the best distance
    // estimate available (evolved fields are smooth there; per-node crossing
    // constructions would inject kinks that curvature stencils amplify).
    // Keep it frozen and rebuild only the far field by first-order fast
    // sweeping (2^d orderings, repeated until updates die out).
    const double band_freeze = 4.5 * h;
    std::vector<double> dist(total, kInf);
    std::vector<char> frozen(total, 0);
    for (std::size_t id = 0; id < total; ++id)
        if (std::abs(w[id]) <= band_freeze) {
            dist[id] = std::abs(w[id]);
            frozen[id] = 1;
        }

    const double tol = 1e-4 * h;
    const int orderings = 1 << rd;
    for (int round = 0; round < 100; ++round) {
        double max_update = 0.0;
        for (int ord = 0; ord < orderings; ++ord) {
            const int di = (ord & 1) ? -1 : 1;
            const int dj = (ord & 2) ? -1 : 1;
            const int dk = (ord & 4) ? -1 : 1;
            const int i0 = di > 0 ? 0 : nx - 1, i1 = di > 0 ? nx : -1;
            const int j0 = dj > 0 ? 0 : ny - 1, j1 = dj > 0 ? ny : -1;
            const int k0 = dk > 0 ? 0 : nz - 1, k1 = dk > 0 ? nz : -1;
            for (int i = i0; i != i1; i += di)
                for (int j = j0; j != j1; j += dj)
                    for (int k = k0; k != k1; k += dk) {
                        const std::size_t id = (static_cast<std::size_t>(i) * ny + j) * nz + k;
                        if (frozen[id]) continue;
                        double nb[3];
                        int cnt = 0;
                        const int pos[3] = {i, j, k};
                        for (int a = 0; a < rd; ++a) {
                            double best = kInf;
                            if (pos[a] > 0) best = std::min(best, dist[id - stride[a]]);
                            if (pos[a] + 1 < dim[a]) best = std::min(best, dist[id + stride[a]]);
                            if (best < kInf) nb[cnt++] = best;
                        }
                        if (cnt == 0) continue;
                        const double x = eikonal_update(nb, cnt, h);
                        if (x < dist[id]) {
                            max_update = std::max(max_update, dist[id] - x);
                            dist[id] = x;
                        }
                    }
        }
        if (max_update < tol) break;
    }

    LevelSetField out(spec);
    for (std::size_t id = 0; id < total; ++id) {
        if (frozen[id]) {
            out.values[id] = w[id];
        } else {
            const double d = std::isfinite(dist[id]) ? dist[id] : std::abs(w[id]);
            out.values[id] = (v[id] < 0.0) ? -d : d;
        }
    }
    return out;
}

// Axisymmetric slice grids use the flux form (1/|y|) d/dy(|y| du/dy); at the
// axis row (y == 0) the limit operator u_xx + 2 u_yy applies.
double laplacian_at(const ScalarField& f, int i, int j, int k) {
    const GridSpec& spec = f.spec;
    const int ny = spec.shape[1], nz = spec.shape[2];
    const std::ptrdiff_t sx = static_cast<std::ptrdiff_t>(ny) * nz, sy = nz;
    const double inv_h2 = 1.0 / (spec.h * spec.h);
    const auto& v = f.values;
    const std::size_t id = (static_cast<std::size_t>(i) * ny + j) * nz + k;
    double lap = (v[id + sx] - 2.0 * v[id] + v[id - sx]) * inv_h2;
    if (!spec.slice()) {
        lap += (v[id + sy] - 2.0 * v[id] + v[id - sy]) * inv_h2;
        if (nz > 1) lap += (v[id + 1] - 2.0 * v[id] + v[id - 1]) * inv_h2;
        return lap;
    }
    const double y = spec.coord(1, j);
    const double h = spec.h;
    if (std::abs(y) < 0.25 * h) {
        lap += 2.0 * (v[id + sy] - 2.0 * v[id] + v[id - sy]) * inv_h2;
    } else {
        const double wn = std::abs(y + 0.5 * h), ws = std::abs(y - 0.5 * h);
        lap += (wn * (v[id + sy] - v[id]) - ws * (v[id] - v[id - sy])) * inv_h2 / std::abs(y);
    }
    return lap;
}

double mean_curvature_at(const ScalarField& f, int i, int j, int k) {
    const GridSpec& spec = f.spec;
    const int ny = spec.shape[1], nz = spec.shape[2];
    const std::ptrdiff_t sx = static_cast<std::ptrdiff_t>(ny) * nz, sy = nz, sz = 1;
    const double h = spec.h;
    const auto& v = f.values;
    const std::size_t id = (static_cast<std::size_t>(i) * ny + j) * nz + k;

    const double fx = (v[id + sx] - v[id - sx]) / (2 * h);
    const double fy = (v[id + sy] - v[id - sy]) / (2 * h);
    const double fxx = (v[id + sx] - 2 * v[id] + v[id - sx]) / (h * h);
    const double fyy = (v[id + sy] - 2 * v[id] + v[id - sy]) / (h * h);
    const double fxy =
        (v[id + sx + sy] - v[id + sx - sy] - v[id - sx + sy] + v[id - sx - sy]) / (4 * h * h);

    if (nz > 1) {
        const double fz = (v[id + sz] - v[id - sz]) / (2 * h);
        const double fzz = (v[id + sz] - 2 * v[id] + v[id - sz]) / (h * h);
        const double fxz =
            (v[id + sx + sz] - v[id + sx - sz] - v[id - sx + sz] + v[id - sx - sz]) /
            (4 * h * h);
        const double fyz =
            (v[id + sy + sz] - v[id + sy - sz] - v[id - sy + sz] + v[id - sy - sz]) /
            (4 * h * h);
        const double g2 = fx * fx + fy * fy + fz * fz;
        if (g2 < 1e-24) return 0.0;
        const double g = std::sqrt(g2);
        return (fxx * (fy * fy + fz * fz) + fyy * (fx * fx + fz * fz) +
                fzz * (fx * fx + fy * fy) -
                2 * (fx * fy * fxy + fy * fz * fyz + fx * fz * fxz)) /
               (g2 * g);
    }

    const double g2 = fx * fx + fy * fy;
    if (g2 < 1e-24) return 0.0;
    const double g = std::sqrt(g2);
    double kappa = (fxx * fy * fy - 2 * fx * fy * fxy + fyy * fx * fx) / (g2 * g);
    if (spec.slice()) {
        const double y = spec.coord(1, j);
        if (std::abs(y) < 0.25 * h) kappa += fyy / g;  // limit of (f_y/g)/y on the axis
        else kappa += (fy / g) / y;
    }
    return kappa;
}

double gradient_norm_at(const ScalarField& f, int i, int j, int k) {
    const GridSpec& spec = f.spec;
    const int ny = spec.shape[1], nz = spec.shape[2];
    const std::ptrdiff_t sx = static_cast<std::ptrdiff_t>(ny) * nz, sy = nz, sz = 1;
    const double h = spec.h;
    const auto& v = f.values;
    const std::size_t id = (static_cast<std::size_t>(i) * ny + j) * nz + k;
    const double fx = (v[id + sx] - v[id - sx]) / (2 * h);
    const double fy = (v[id + sy] - v[id - sy]) / (2 * h);
    const double fz = (nz > 1) ? (v[id + sz] - v[id - sz]) / (2 * h) : 0.0;
    return std::sqrt(fx * fx + fy * fy + fz * fz);
}

double upwind_gradient_norm(const ScalarField& f, int i, int j, int k, double speed) {
    const GridSpec& spec = f.spec;
    const int ny = spec.shape[1], nz = spec.shape[2];
    const std::ptrdiff_t stride[3] = {static_cast<std::ptrdiff_t>(ny) * nz, nz, 1};
    const double inv_h = 1.0 / spec.h;
    const auto& v = f.values;
    const std::size_t id = (static_cast<std::size_t>(i) * ny + j) * nz + k;
    const int rd = spec.rep_dims();
    double acc = 0.0;
    for (int a = 0; a < rd; ++a) {
        const double dm = (v[id] - v[id - stride[a]]) * inv_h;
        const double dp = (v[id + stride[a]] - v[id]) * inv_h;
        double g;
        if (speed > 0.0)
            g = std::max(std::max(dm, 0.0), -std::min(dp, 0.0));
        else
            g = std::max(-std::min(dm, 0.0), std::max(dp, 0.0));
        acc += g * g;
    }
    return std::sqrt(acc);
}

ScalarField curvature(const LevelSetField& f) {
    f.spec.validate();
    const GridSpec& spec = f.spec;
    ScalarField out(spec);
    const int nx = spec.shape[0], ny = spec.shape[1], nz = spec.shape[2];
    const double cap = 1.0 / spec.h;
    const int kmax = (nz > 1) ? nz - 1 : 1;
    for (int i = 1; i < nx - 1; ++i)
        for (int j = 1; j < ny - 1; ++j)
            for (int k = (nz > 1 ? 1 : 0); k < kmax; ++k)
                out.at(i, j, k) = std::clamp(mean_curvature_at(f, i, j, k), -cap, cap);
    return out;
}

namespace {

// Quadrature weight per node: trapezoid edge factors, times the pi*|y|
// revolution metric on slice grids.
struct NodeWeight {
    const GridSpec& spec;
    double base;

    explicit NodeWeight(const GridSpec& s) : spec(s) {
        base = s.slice() ? s.h * s.h : std::pow(s.h, s.rep_dims());
    }

    double operator()(int i, int j, int k) const {
        double w = base;
        if (i == 0 || i == spec.shape[0] - 1) w *= 0.5;
        if (j == 0 || j == spec.shape[1] - 1) w *= 0.5;
        if (spec.shape[2] > 1 && (k == 0 || k == spec.shape[2] - 1)) w *= 0.5;
        if (spec.slice()) w *= kPi * std::abs(spec.coord(1, j));
        return w;
    }
};

template <typename Fn>
double quadrature(const GridSpec& spec, Fn&& integrand) {
    const NodeWeight weight(spec);
    const int nx = spec.shape[0], ny = spec.shape[1], nz = spec.shape[2];
    double sum = 0.0;
    std::size_t id = 0;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            for (int k = 0; k < nz; ++k, ++id) {
                const double g = integrand(id);
                if (g != 0.0) sum += g * weight(i, j, k);
            }
    return sum;
}

} // namespace

double volume(const LevelSetField& f) {
    const double eps = 1.5 * f.spec.h;
    return quadrature(f.spec, [&](std::size_t id) {
        return smoothed_indicator(f.values[id], eps);
    });
}

double perimeter(const LevelSetField& f) {
    const GridSpec& spec = f.spec;
    const double eps = 1.5 * spec.h;
    const int nx = spec.shape[0], ny = spec.shape[1], nz = spec.shape[2];
    const std::ptrdiff_t sx = static_cast<std::ptrdiff_t>(ny) * nz, sy = nz;
    const double inv2h = 0.5 / spec.h;
    const auto& v = f.values;
    const NodeWeight weight(spec);
    double sum = 0.0;
    const int kmax = (nz > 1) ? nz - 1 : 1;
    for (int i = 1; i < nx - 1; ++i)
        for (int j = 1; j < ny - 1; ++j)
            for (int k = (nz > 1 ? 1 : 0); k < kmax; ++k) {
                const std::size_t id = (static_cast<std::size_t>(i) * ny + j) * nz + k;
                const double del = smoothed_delta(v[id], eps);
                if (del == 0.0) continue;
                const double gx = (v[id + sx] - v[id - sx]) * inv2h;
                const double gy = (v[id + sy] - v[id - sy]) * inv2h;
                const double gz = (nz > 1) ? (v[id + 1] - v[id - 1]) * inv2h : 0.0;
                sum += del * std::sqrt(gx * gx + gy * gy + gz * gz) * weight(i, j, k);
            }
    return sum;
}

double sym_diff_measure(const LevelSetField& a, const LevelSetField& b) {
    require_same_spec(a.spec, b.spec);
    const double eps = 1.5 * a.spec.h;
    return quadrature(a.spec, [&](std::size_t id) {
        return std::abs(smoothed_indicator(a.values[id], eps) -
                        smoothed_indicator(b.values[id], eps));
    });
}

double distance_integral(const LevelSetField& e, const LevelSetField& e0) {
    require_same_spec(e.spec, e0.spec);
    const double eps = 1.5 * e.spec.h;
    return quadrature(e.spec, [&](std::size_t id) {
        const double diff = std::abs(smoothed_indicator(e.values[id], eps) -
                                     smoothed_indicator(e0.values[id], eps));
        return diff == 0.0 ? 0.0 : std::abs(e0.values[id]) * diff;
    });
}

double interface_cell_measure(const LevelSetField& f) {
    const GridSpec& spec = f.spec;
    const int nx = spec.shape[0], ny = spec.shape[1], nz = spec.shape[2];
    const std::ptrdiff_t stride[3] = {static_cast<std::ptrdiff_t>(ny) * nz, nz, 1};
    const int dim[3] = {nx, ny, nz};
    const int rd = spec.rep_dims();
    const auto& v = f.values;
    const NodeWeight weight(spec);
    double sum = 0.0;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            for (int k = 0; k < nz; ++k) {
                const std::size_t id = (static_cast<std::size_t>(i) * ny + j) * nz + k;
                const int pos[3] = {i, j, k};
                bool iface = false;
                for (int a = 0; a < rd && !iface; ++a)
                    for (int dir = -1; dir <= 1 && !iface; dir += 2) {
                        const int q = pos[a] + dir;
                        if (q < 0 || q >= dim[a]) continue;
                        const double vj = v[id + dir * stride[a]];
                        if ((v[id] <= 0.0) != (vj <= 0.0)) iface = true;
                    }
                if (iface) sum += weight(i, j, k);
            }
    return sum;
}

double domain_measure(const GridSpec& spec) {
    return quadrature(spec, [](std::size_t) { return 1.0; });
}

double min_abs_on_interface(const LevelSetField& e, const ScalarField& g) {
    require_same_spec(e.spec, g.spec);
    const GridSpec& spec = e.spec;
    const int nx = spec.shape[0], ny = spec.shape[1], nz = spec.shape[2];
    const std::ptrdiff_t stride[3] = {static_cast<std::ptrdiff_t>(ny) * nz, nz, 1};
    const int dim[3] = {nx, ny, nz};
    const int rd = spec.rep_dims();
    const auto& v = e.values;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            for (int k = 0; k < nz; ++k) {
                const std::size_t id = (static_cast<std::size_t>(i) * ny + j) * nz + k;
                const int pos[3] = {i, j, k};
                for (int a = 0; a < rd; ++a) {
                    if (pos[a] + 1 >= dim[a]) continue;
                    const double vi = v[id], vj = v[id + stride[a]];
                    if ((vi <= 0.0) == (vj <= 0.0)) continue;
                    const double t = vi / (vi - vj);
                    const double gc = g.values[id] + t * (g.values[id + stride[a]] - g.values[id]);
                    best = std::min(best, std::abs(gc));
                }
            }
    return best;
}

RadiusStats interface_radius_stats(const LevelSetField& f) {
    const GridSpec& spec = f.spec;
    const int nx = spec.shape[0], ny = spec.shape[1], nz = spec.shape[2];
    const std::ptrdiff_t stride[3] = {static_cast<std::ptrdiff_t>(ny) * nz, nz, 1};
    const int dim[3] = {nx, ny, nz};
    const int rd = spec.rep_dims();
    const auto& v = f.values;

    double sum = 0.0, sum_sq = 0.0;
    RadiusStats st;
    st.min = std::numeric_limits<double>::infinity();
    st.max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            for (int k = 0; k < nz; ++k) {
                const std::size_t id = (static_cast<std::size_t>(i) * ny + j) * nz + k;
                const int pos[3] = {i, j, k};
                double x[3] = {spec.coord(0, i), spec.coord(1, j),
                               nz > 1 ? spec.coord(2, k) : 0.0};
                for (int a = 0; a < rd; ++a) {
                    if (pos[a] + 1 >= dim[a]) continue;
                    const double vi = v[id], vj = v[id + stride[a]];
                    if ((vi <= 0.0) == (vj <= 0.0)) continue;
                    const double t = vi / (vi - vj);  // crossing fraction in [0,1]
                    double p[3] = {x[0], x[1], x[2]};
                    p[a] += t * spec.h;
                    const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
                    sum += r;
                    sum_sq += r * r;
                    st.min = std::min(st.min, r);
                    st.max = std::max(st.max, r);
                    ++st.crossings;
                }
            }
    if (st.crossings == 0) return RadiusStats{};
    st.mean = sum / st.crossings;
    const double var = std::max(0.0, sum_sq / st.crossings - st.mean * st.mean);
    st.sd = std::sqrt(var);
    return st;
}

void save_grid(const ScalarField& f, const std::filesystem::path& path) {
    static_assert(std::endian::native == std::endian::little,
                  "grid dumps assume a little-endian host");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open " + path.string() + " for writing");
    const GridSpec& s = f.spec;
    os << "mcnd-grid v1\n";
    os << "n " << s.n << "\n";
    os << "shape " << s.shape[0] << " " << s.shape[1];
    if (s.rep_dims() == 3) os << " " << s.shape[2];
    os << "\n";
    std::ostringstream org;
    org.precision(17);
    org << "origin " << s.origin[0] << " " << s.origin[1];
    if (s.rep_dims() == 3) org << " " << s.origin[2];
    os << org.str() << "\n";
    std::ostringstream sh;
    sh.precision(17);
    sh << "h " << s.h;
    os << sh.str() << "\nDATA\n";
    os.write(reinterpret_cast<const char*>(f.values.data()),
             static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!os) throw io_error("write failed: " + path.string());
}

ScalarField load_grid(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("cannot open " + path.string());
    std::string line;
    auto next = [&]() -> std::string {
        if (!std::getline(is, line)) throw io_error("truncated grid dump: " + path.string());
        return line;
    };
    if (next() != "mcnd-grid v1") throw io_error("not a mcnd-grid v1 file: " + path.string());
    GridSpec s;
    {
        std::istringstream ss(next());
        std::string tag;
        ss >> tag >> s.n;
        if (tag != "n" || !ss) throw io_error("bad dimension line");
    }
    {
        std::istringstream ss(next());
        std::string tag;
        ss >> tag;
        if (tag != "shape") throw io_error("bad shape line");
        std::vector<int> c;
        int x;
        while (ss >> x) c.push_back(x);
        if (c.size() != 2 && c.size() != 3) throw io_error("bad shape line");
        s.shape = {c[0], c[1], c.size() == 3 ? c[2] : 1};
    }
    {
        std::istringstream ss(next());
        std::string tag;
        ss >> tag;
        if (tag != "origin") throw io_error("bad origin line");
        std::vector<double> c;
        double x;
        while (ss >> x) c.push_back(x);
        if (c.size() != 2 && c.size() != 3) throw io_error("bad origin line");
        s.origin = {c[0], c[1], c.size() == 3 ? c[2] : 0.0};
    }
    {
        std::istringstream ss(next());
        std::string tag;
        ss >> tag >> s.h;
        if (tag != "h" || !ss) throw io_error("bad spacing line");
    }
    if (next() != "DATA") throw io_error("missing DATA marker");
    s.validate();
    ScalarField f(s);
    is.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (static_cast<std::size_t>(is.gcount()) != f.values.size() * sizeof(double))
        throw io_error("truncated grid data: " + path.string());
    return f;
}

} // namespace mcnd
