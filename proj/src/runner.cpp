#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>

#include "mcnd/cli.hpp"
#include "mcnd/props.hpp"
#include "mcnd/radial.hpp"
#include "mcnd/smoothflow.hpp"

namespace mcnd {

namespace {

constexpr double kPi = std::numbers::pi;

GridSpec grid_from(const RunConfig& cfg) {
    if (cfg.grid_slice) return make_slice_grid(cfg.grid_box, cfg.grid_h);
    return make_grid(cfg.grid_n, cfg.grid_box, cfg.grid_h);
}

LevelSetField shape_field(const GridSpec& spec, const ShapeSpec& shape) {
    LevelSetField f = make_ball(spec, shape.balls.at(0).center, shape.balls.at(0).radius);
    for (std::size_t i = 1; i < shape.balls.size(); ++i)
        f = set_union(f, make_ball(spec, shape.balls[i].center, shape.balls[i].radius));
    if (shape.balls.size() > 1) f = redistance(f);
    return f;
}

DomainConfig domain_from(const RunConfig& cfg, const GridSpec& spec) {
    LevelSetField din = shape_field(spec, cfg.d_in);
    std::optional<LevelSetField> dout;
    if (!cfg.d_out.unbounded) dout = shape_field(spec, cfg.d_out);
    BoundaryValue phi;
    phi.constant = cfg.phi;
    return DomainConfig::make(spec, std::move(din), std::move(dout), phi);
}

StepControl control_from(const RunConfig& cfg) {
    StepControl ctl;
    ctl.cfl_curvature = cfg.smooth_cfl_curvature;
    ctl.cfl_advect = cfg.smooth_cfl_advect;
    ctl.reinit_every = cfg.smooth_reinit_every;
    ctl.t_end = cfg.smooth_t_end;
    return ctl;
}

InnerOpts inner_from(const RunConfig& cfg) {
    InnerOpts o;
    o.tol_rel = cfg.flat_tol_rel;
    o.window = cfg.flat_window;
    o.max_inner = cfg.flat_max_inner;
    o.cfl_curvature = cfg.smooth_cfl_curvature;
    o.cfl_advect = cfg.smooth_cfl_advect;
    o.reinit_every = cfg.smooth_reinit_every;
    return o;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open " + path.string() + " for writing");
    os << text;
    if (!os) throw io_error("write failed: " + path.string());
}

void write_radius_csv(const std::filesystem::path& path,
                      const std::vector<std::pair<double, double>>& rows) {
    std::string out = "t,radius\n";
    char buf[80];
    for (const auto& [t, r] : rows) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", t, r);
        out += buf;
    }
    write_text(path, out);
}

double ball_volume_coeff(int n) { return n == 3 ? 4.0 * kPi / 3.0 : kPi; }
double sphere_area_coeff(int n) { return n == 3 ? 4.0 * kPi : 2.0 * kPi; }

int run_radial(const RunConfig& cfg, const std::filesystem::path& dir) {
    RadialConfig rc{cfg.grid_n, cfg.phi};
    const RadialTrajectory traj = integrate(cfg.radial_l0, cfg.radial_t_end, cfg.radial_dt, rc);

    std::vector<SampleRow> rows;
    std::vector<std::pair<double, double>> radii;
    const std::size_t count = traj.samples.size();
    double prev_l = traj.L0;
    for (std::size_t k = 0; k < count; ++k) {
        const bool keep = (k % static_cast<std::size_t>(cfg.output_cadence) == 0) ||
                          k + 1 == count;
        if (!keep) continue;
        const auto [t, l] = traj.samples[k];
        SampleRow r;
        r.t = t;
        r.volume = ball_volume_coeff(rc.n) * std::pow(l, rc.n);
        r.perimeter = sphere_area_coeff(rc.n) * std::pow(l, rc.n - 1);
        r.total_energy = radial_energy(l, rc);
        r.dirichlet = r.total_energy - r.perimeter;
        r.penalty = 0.0;
        r.sym_diff_prev =
            std::abs(ball_volume_coeff(rc.n) * (std::pow(l, rc.n) - std::pow(prev_l, rc.n)));
        r.min_dist_din = l - 1.0;
        rows.push_back(r);
        radii.emplace_back(t, l);
        prev_l = l;
    }
    emit_csv(rows, dir / "diagnostics.csv");
    write_radius_csv(dir / "trajectory.csv", radii);
    return 0;
}

SampleRow row_from_state(const FlowState& s) {
    SampleRow r;
    r.t = s.t;
    r.volume = s.diag.volume;
    r.perimeter = s.diag.perimeter;
    r.dirichlet = s.diag.energy.dirichlet;
    r.penalty = s.diag.energy.penalty;
    r.total_energy = s.diag.energy.total();
    r.sym_diff_prev = s.diag.sym_diff_prev;
    r.min_dist_din = s.diag.min_dist_din;
    r.flags = s.diag.flags;
    return r;
}

std::vector<FlowState> drive_smooth(const RunConfig& cfg, const GridSpec& spec,
                                    const DomainConfig& domain) {
    const LevelSetField e0 = shape_field(spec, cfg.e0);
    const StepControl ctl = control_from(cfg);
    const FlowState s0 = init_state(domain, e0, ctl);
    return run(s0, domain, ctl, cfg.output_cadence);
}

int run_smooth(const RunConfig& cfg, const std::filesystem::path& dir) {
    const GridSpec spec = grid_from(cfg);
    const DomainConfig domain = domain_from(cfg, spec);
    const std::vector<FlowState> samples = drive_smooth(cfg, spec, domain);

    std::vector<SampleRow> rows;
    std::vector<std::pair<double, double>> radii;
    int k = 0;
    for (const FlowState& s : samples) {
        rows.push_back(row_from_state(s));
        radii.emplace_back(s.t, s.diag.radius.mean);
        if (cfg.output_dumps) {
            char name[64];
            std::snprintf(name, sizeof name, "smooth_%06d.grid", k);
            save_grid(s.e, dir / name);
        }
        ++k;
    }
    emit_csv(rows, dir / "diagnostics.csv");
    write_radius_csv(dir / "radius.csv", radii);
    return 0;
}

int run_flat(const RunConfig& cfg, const std::filesystem::path& dir) {
    const GridSpec spec = grid_from(cfg);
    const DomainConfig domain = domain_from(cfg, spec);
    const LevelSetField e0 = shape_field(spec, cfg.e0);
    const ApproximateFlow flow =
        approximate_flow(domain, e0, cfg.flat_dt, cfg.flat_k_steps, inner_from(cfg));

    std::vector<SampleRow> rows;
    std::vector<std::pair<double, double>> radii;
    for (std::size_t k = 0; k < flow.steps.size(); ++k) {
        const FlatStep& st = flow.steps[k];
        SampleRow r;
        r.t = static_cast<double>(k) * flow.dt;
        r.volume = volume(st.e);
        r.perimeter = st.energy.perimeter;
        r.dirichlet = st.energy.dirichlet;
        r.penalty = st.energy.penalty;
        r.total_energy = st.energy.total();
        r.sym_diff_prev = k == 0 ? 0.0 : sym_diff_measure(st.e, flow.steps[k - 1].e);
        r.min_dist_din = st.min_dist_din;
        r.flags = st.stationary ? 0u : kFlagNonStationary;
        rows.push_back(r);
        radii.emplace_back(r.t, interface_radius_stats(st.e).mean);
        if (cfg.output_dumps) {
            char name[64];
            std::snprintf(name, sizeof name, "flat_%03zu.grid", k);
            save_grid(st.e, dir / name);
        }
    }
    emit_csv(rows, dir / "diagnostics.csv");
    write_radius_csv(dir / "radius.csv", radii);
    return 0;
}

int run_compare(const RunConfig& cfg, const std::filesystem::path& dir, std::ostream& out) {
    if (cfg.e0.balls.size() != 1 || cfg.d_in.balls.size() != 1)
        throw geometry_error("compare mode needs single-ball e0 and d_in");
    for (int a = 0; a < 3; ++a)
        if (cfg.e0.balls[0].center[a] != 0.0 || cfg.d_in.balls[0].center[a] != 0.0)
            throw geometry_error("compare mode needs origin-centred balls");
    if (std::abs(cfg.d_in.balls[0].radius - 1.0) > 1e-12)
        throw geometry_error("compare mode needs D_in of unit radius");

    const GridSpec spec = grid_from(cfg);
    const DomainConfig domain = domain_from(cfg, spec);
    const double t_end = cfg.flat_dt * cfg.flat_k_steps;
    const double L0 = cfg.e0.balls[0].radius;

    RadialConfig rc{spec.n, cfg.phi};
    const RadialTrajectory oracle =
        integrate(L0, t_end, std::min(cfg.radial_dt, cfg.flat_dt / 16.0), rc);

    RunConfig smooth_cfg = cfg;
    smooth_cfg.smooth_t_end = t_end;
    const std::vector<FlowState> smooth_samples = drive_smooth(smooth_cfg, spec, domain);

    const LevelSetField e0 = shape_field(spec, cfg.e0);
    const ApproximateFlow flow =
        approximate_flow(domain, e0, cfg.flat_dt, cfg.flat_k_steps, inner_from(cfg));

    auto smooth_radius = [&](double t) {
        const auto& ss = smooth_samples;
        if (t <= ss.front().t) return ss.front().diag.radius.mean;
        for (std::size_t i = 1; i < ss.size(); ++i)
            if (ss[i].t >= t) {
                const double w = (t - ss[i - 1].t) / (ss[i].t - ss[i - 1].t);
                return ss[i - 1].diag.radius.mean +
                       w * (ss[i].diag.radius.mean - ss[i - 1].diag.radius.mean);
            }
        return ss.back().diag.radius.mean;
    };

    std::string text = "t,oracle_radius,smooth_radius,flat_radius\n";
    char buf[160];
    double dev_smooth = 0.0, dev_flat = 0.0;
    for (std::size_t k = 0; k < flow.steps.size(); ++k) {
        const double t = static_cast<double>(k) * flow.dt;
        const double lo = trajectory_radius(oracle, t);
        const double rs = smooth_radius(t);
        const double rf = interface_radius_stats(flow.steps[k].e).mean;
        dev_smooth = std::max(dev_smooth, std::abs(rs - lo));
        dev_flat = std::max(dev_flat, std::abs(rf - lo));
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n", t, lo, rs, rf);
        text += buf;
    }
    write_text(dir / "compare.csv", text);

    std::snprintf(buf, sizeof buf,
                  "max_dev_smooth_oracle,max_dev_flat_oracle\n%.12g,%.12g\n", dev_smooth,
                  dev_flat);
    write_text(dir / "compare_summary.csv", buf);
    out << "compare: max |smooth - oracle| = " << dev_smooth
        << ", max |flat - oracle| = " << dev_flat << "\n";
    return 0;
}

} // namespace

int run_mode(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const std::filesystem::path dir = cfg.output_dir;
        std::filesystem::create_directories(dir);
        if (cfg.mode == "radial") return run_radial(cfg, dir);
        if (cfg.mode == "smooth") return run_smooth(cfg, dir);
        if (cfg.mode == "flat") return run_flat(cfg, dir);
        if (cfg.mode == "compare") return run_compare(cfg, dir, out);
        if (cfg.mode == "props") {
            const auto outcomes = props::run_criteria({}, cfg.seed, out);
            return props::all_pass(outcomes) ? 0 : 1;
        }
        err << "unknown mode " << cfg.mode << "\n";
        return 2;
    } catch (const parse_error& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace mcnd
