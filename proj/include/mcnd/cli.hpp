#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mcnd/errors.hpp"

namespace mcnd {

// A union of balls (or the "unbounded" marker for d_out).
struct ShapeSpec {
    struct Ball {
        std::array<double, 3> center{0.0, 0.0, 0.0};
        double radius = 0.0;
        bool operator==(const Ball&) const = default;
    };
    std::vector<Ball> balls;
    bool unbounded = false;
    bool operator==(const ShapeSpec&) const = default;
};

// Flat `key = value` run configuration.  Every field has a documented
// default; unknown keys are rejected by parse_config.
struct RunConfig {
    std::string mode = "props";  // radial | smooth | flat | compare | props
    unsigned long seed = 0;

    int grid_n = 2;
    double grid_h = 0.04;
    double grid_box = 1.92;   // half-extent; the grid covers [-box, box]^n
    bool grid_slice = false;  // n = 3 on a 2-axis axisymmetric slice

    ShapeSpec d_in;   // default: ball(0,0,0.25)
    ShapeSpec d_out;  // default: unbounded (grid box shrunk by 2h)
    ShapeSpec e0;     // initial set, default: ball(0,0,0.6)
    double phi = 1.0;

    double smooth_cfl_curvature = 0.4;
    double smooth_cfl_advect = 0.5;
    int smooth_reinit_every = 5;
    double smooth_t_end = 0.5;

    double flat_dt = 0.05;
    int flat_k_steps = 40;
    double flat_tol_rel = 1e-5;
    int flat_window = 10;
    int flat_max_inner = 500;

    double radial_l0 = 2.0;
    double radial_t_end = 50.0;
    double radial_dt = 1e-3;

    std::string output_dir = "out";
    int output_cadence = 50;
    bool output_dumps = false;

    bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
std::string render_config(const RunConfig& cfg);

// One diagnostics row of the run CSV ("t,volume,perimeter,dirichlet,
// penalty,total_energy,sym_diff_prev,min_dist_din,flags").
struct SampleRow {
    double t = 0.0;
    double volume = 0.0;
    double perimeter = 0.0;
    double dirichlet = 0.0;
    double penalty = 0.0;
    double total_energy = 0.0;
    double sym_diff_prev = 0.0;
    double min_dist_din = 0.0;
    unsigned flags = 0;
};

std::string csv_text(const std::vector<SampleRow>& rows);
void emit_csv(const std::vector<SampleRow>& rows, const std::filesystem::path& path);

// Executes the configured mode, writing CSV (and optional grid dumps) under
// cfg.output_dir.  Returns the process exit status (0 ok, 1 runtime
// failure, 2 config error).
int run_mode(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace mcnd
