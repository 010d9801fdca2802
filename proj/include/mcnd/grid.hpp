#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <vector>

#include "mcnd/errors.hpp"

namespace mcnd {

// Uniform node-centred Cartesian grid.
//
// n is the spatial dimension of the problem (2 or 3).  Fields are stored on
// either 2 or 3 grid axes; an n = 3 problem on a 2-axis grid is the
// axisymmetric "radial slice" representation: the plane is revolved about the
// x axis, the y coordinate acts as the cylindrical radius, and all integral
// quadratures carry the pi*|y| metric weight.  Radial configurations centred
// at the origin are represented exactly in this mode.
struct GridSpec {
    int n = 2;
    std::array<int, 3> shape{1, 1, 1};  // node counts; shape[2]==1 => planar storage
    std::array<double, 3> origin{0.0, 0.0, 0.0};
    double h = 0.0;

    int rep_dims() const { return shape[2] > 1 ? 3 : 2; }
    bool slice() const { return n == 3 && rep_dims() == 2; }

    std::size_t node_count() const {
        return static_cast<std::size_t>(shape[0]) * shape[1] * shape[2];
    }
    double coord(int axis, int idx) const { return origin[axis] + h * idx; }
    double extent(int axis) const { return h * (shape[axis] - 1); }

    bool operator==(const GridSpec&) const = default;

    void validate() const;  // throws shape_error on violation
};

// Origin-centred box [-half_extent, half_extent]^n.  half_extent must be a
// multiple of h so that the node set is symmetric about the origin.
GridSpec make_grid(int n, double half_extent, double h);
// n = 3 problem on a 2-axis slice (see GridSpec).
GridSpec make_slice_grid(double half_extent, double h);

struct ScalarField {
    GridSpec spec;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const GridSpec& s, double fill = 0.0)
        : spec(s), values(s.node_count(), fill) {}

    std::size_t index(int i, int j, int k = 0) const {
        return (static_cast<std::size_t>(i) * spec.shape[1] + j) * spec.shape[2] + k;
    }
    double& at(int i, int j, int k = 0) { return values[index(i, j, k)]; }
    double at(int i, int j, int k = 0) const { return values[index(i, j, k)]; }
};

// A ScalarField holding a signed distance function; the represented closed
// set is E = {x : value <= 0} (nonpositive inside, nonnegative outside).
struct LevelSetField : ScalarField {
    LevelSetField() = default;
    explicit LevelSetField(const GridSpec& s, double fill = 0.0) : ScalarField(s, fill) {}
    explicit LevelSetField(ScalarField f) : ScalarField(std::move(f)) {}
};

// Exact sphere SDF |x - center| - radius sampled at nodes.  The ball's
// 3h-neighbourhood must fit inside the grid extent.  On slice grids the
// centre must lie on the x axis.
LevelSetField make_ball(const GridSpec& spec, const std::array<double, 3>& center,
                        double radius);

// Pointwise min; represents the union of the two sets.  Not an exact SDF;
// redistance afterwards if distance values matter.
LevelSetField set_union(const LevelSetField& a, const LevelSetField& b);

// Rebuild f into a signed distance function without moving its zero level
// set: interface-adjacent nodes are pinned by linear interpolation of the
// input crossings, the rest is filled by first-order fast sweeping on the
// eikonal equation (2^d sweep orderings, repeated until the largest update
// falls below 1e-4*h).
LevelSetField redistance(const LevelSetField& f);

bool has_interface(const ScalarField& f);

// Mean curvature H = Laplacian of the SDF, clipped to [-1/h, 1/h].  Valid
// near the interface of a redistanced field; elsewhere it is just the
// clipped Laplacian.
ScalarField curvature(const LevelSetField& f);

// Nodal Laplacian at an interior node (axisymmetric-aware on slice grids).
double laplacian_at(const ScalarField& f, int i, int j, int k = 0);

// Geometric mean curvature div(grad f/|grad f|) at an interior node, not
// clipped.  Agrees with laplacian_at on exact SDFs but tolerates |grad f|
// drift.  Axisymmetric-aware.
double mean_curvature_at(const ScalarField& f, int i, int j, int k = 0);

// Central-difference |grad f| at an interior node.
double gradient_norm_at(const ScalarField& f, int i, int j, int k = 0);

// Godunov upwind |grad f| at an interior node for the advection term
// f_t + speed*|grad f| = 0; the branch is picked by the sign of speed.
double upwind_gradient_norm(const ScalarField& f, int i, int j, int k, double speed);

// Smoothed-Heaviside / smoothed-delta quadratures, smoothing width 1.5h.
double volume(const LevelSetField& f);
double perimeter(const LevelSetField& f);
double sym_diff_measure(const LevelSetField& a, const LevelSetField& b);
// Integral of |e0| over the symmetric difference of the two zero-sublevel
// sets; e0 must be redistanced so |e0| is the distance to its interface.
double distance_integral(const LevelSetField& e, const LevelSetField& e0);

// Measure of a one-cell-thick shell around the interface (h^n per interface
// node, metric-weighted on slice grids).
double interface_cell_measure(const LevelSetField& f);
// Total quadrature weight of the grid box (the "extent volume" that
// volume(f) + volume(complement) must reproduce).
double domain_measure(const GridSpec& spec);

// Min over the zero crossings of e of |g| interpolated at the crossing
// (e.g. g = SDF of D_in gives the distance from partial E to partial D_in).
double min_abs_on_interface(const LevelSetField& e, const ScalarField& g);

// Interface radius about the origin, collected from all axis-aligned zero
// crossings.
struct RadiusStats {
    double mean = 0.0;
    double sd = 0.0;
    double min = 0.0;
    double max = 0.0;
    int crossings = 0;
};
RadiusStats interface_radius_stats(const LevelSetField& f);

// "mcnd-grid v1" dump: ASCII header, then node values as little-endian
// 64-bit floats, row-major, last axis fastest.
void save_grid(const ScalarField& f, const std::filesystem::path& path);
ScalarField load_grid(const std::filesystem::path& path);

} // namespace mcnd
