#pragma once

#include <cmath>
#include <functional>
#include <optional>

#include "mcnd/grid.hpp"

namespace mcnd {

// Boundary data on D_in: a positive constant, optionally replaced by a
// radial profile phi(|x|).
struct BoundaryValue {
    double constant = 1.0;
    std::function<double(double)> radial;  // evaluated at |x| when set

    double operator()(double x, double y, double z = 0.0) const {
        if (!radial) return constant;
        return radial(std::sqrt(x * x + y * y + z * z));
    }
    bool is_constant() const { return !radial; }
};

// Problem data: inner obstacle D_in carrying the boundary value phi, outer
// confinement D_out (or the grid box shrunk by 2h when unbounded), and the
// constant D = sup_{z in D_out} |z|.
struct DomainConfig {
    int n = 2;
    LevelSetField d_in;
    LevelSetField d_out;    // always materialized; box SDF when unbounded
    bool bounded = false;   // false => d_out is the grid-box stand-in
    BoundaryValue phi;
    double d_sup = 0.0;

    double sup_phi() const;
    void validate() const;  // throws geometry_error

    static DomainConfig make(const GridSpec& spec, LevelSetField d_in,
                             std::optional<LevelSetField> d_out, BoundaryValue phi);
};

// Grid-box SDF shrunk inward by `inset` (stand-in for an unbounded D_out).
LevelSetField box_interior_sdf(const GridSpec& spec, double inset);

struct PotentialSolution {
    ScalarField u;
    double residual = 0.0;  // max diagonally-scaled residual (units of u)
    int iterations = 0;     // V-cycles (or fallback sweeps) used
    double min_u = 0.0;
    double max_u = 0.0;
};

// Capacity potential of (phi, D_in) relative to E = {e <= 0}: the 5/7-point
// Laplacian with first-order ghost-node Dirichlet enforcement at the
// interpolated crossings of both irregular boundaries, u = 0 on and outside
// partial E, u = phi on D_in.  Solved by geometric multigrid with red-black
// Gauss-Seidel smoothing (plain red-black SOR fallback), warm-started from
// `warm` when given.
PotentialSolution solve_capacity(const DomainConfig& domain, const LevelSetField& e,
                                 double tol = 1e-8, int max_iter = 500,
                                 const ScalarField* warm = nullptr);

// u_nu^2 extended to the 3h band around partial E: each band node is
// projected to its interface foot point and the normal derivative is sampled
// one-sidedly from inside E (offsets {0, h, 2h} along the inward normal,
// with the foot value pinned to the boundary value 0).
ScalarField normal_derivative_sq(const PotentialSolution& sol, const LevelSetField& e);

// Midpoint (face-based) quadrature of |grad u|^2, with one-sided differences
// across the interface crossings.
double dirichlet_energy(const PotentialSolution& sol, const DomainConfig& domain,
                        const LevelSetField& e);

} // namespace mcnd
