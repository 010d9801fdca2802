#include "mcnd/props.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <random>

#include "mcnd/radial.hpp"
#include "mcnd/smoothflow.hpp"

namespace mcnd::props {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt(const char* pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return std::string(buf);
}

// Maximum-principle bookkeeping across every capacity solve of a run.
struct SolveStats {
    long solves = 0;
    long violations = 0;
    double worst_low = 0.0;     // most negative min(u)
    double worst_high = 0.0;    // largest max(u) - sup(phi)

    void absorb(const PotentialSolution& u, double sup_phi) {
        ++solves;
        worst_low = std::min(worst_low, u.min_u);
        worst_high = std::max(worst_high, u.max_u - sup_phi);
        if (u.min_u < -1e-10 || u.max_u > sup_phi + 1e-10) ++violations;
    }
    void merge(const SolveStats& o) {
        solves += o.solves;
        violations += o.violations;
        worst_low = std::min(worst_low, o.worst_low);
        worst_high = std::max(worst_high, o.worst_high);
    }
};

struct OracleRunResult {
    double h = 0.0;
    double max_err = 0.0;
    double seconds = 0.0;
    SolveStats stats;
};

// Smooth-flow run against the exact radius evolution: D_in the unit ball,
// phi = 1, initial ball of radius l0, box half-extent 2.16.
OracleRunResult oracle_equivalence_run(int n, bool slice, double h, double l0,
                                       double t_end) {
    const auto t0 = clock_type::now();
    const GridSpec spec = slice ? make_slice_grid(2.16, h) : make_grid(n, 2.16, h);
    DomainConfig domain = DomainConfig::make(
        spec, make_ball(spec, {0, 0, 0}, 1.0), std::nullopt, BoundaryValue{1.0, {}});

    StepControl ctl;
    ctl.t_end = t_end;
    const FlowState s0 = init_state(domain, make_ball(spec, {0, 0, 0}, l0), ctl);

    OracleRunResult res;
    res.h = h;
    const double sup = domain.sup_phi();
    auto observer = [&](const FlowState& s) {
        if (!(s.diag.flags & kFlagExtinct)) res.stats.absorb(s.u, sup);
    };
    res.stats.absorb(s0.u, sup);

    const int cadence = std::max(1, static_cast<int>(std::lround(0.01 / (0.4 * h * h / (2.0 * spec.n)))));
    const std::vector<FlowState> samples = run(s0, domain, ctl, cadence, observer);

    const RadialConfig rc{spec.n, 1.0};
    const RadialTrajectory oracle = integrate(l0, t_end, 1e-3, rc);
    for (const FlowState& s : samples)
        res.max_err = std::max(res.max_err,
                               std::abs(s.diag.radius.mean - trajectory_radius(oracle, s.t)));
    res.seconds = seconds_since(t0);
    return res;
}

struct McfResult {
    double max_err = 0.0;
    double seconds = 0.0;
    SolveStats stats;
};

// phi = 0 reduces the motion to plain mean curvature flow; a circle of
// radius r0 then shrinks along r(t) = sqrt(r0^2 - 2t).
McfResult mcf_run() {
    const auto t0 = clock_type::now();
    const double h = 0.01, r0 = 0.5, t_end = 0.04;
    const GridSpec spec = make_grid(2, 0.66, h);
    DomainConfig domain = DomainConfig::make(
        spec, make_ball(spec, {0, 0, 0}, 0.05), std::nullopt, BoundaryValue{0.0, {}});

    StepControl ctl;
    ctl.t_end = t_end;
    const FlowState s0 = init_state(domain, make_ball(spec, {0, 0, 0}, r0), ctl);

    McfResult res;
    auto observer = [&](const FlowState& s) {
        if (!(s.diag.flags & kFlagExtinct)) res.stats.absorb(s.u, 0.0);
    };
    res.stats.absorb(s0.u, 0.0);

    const std::vector<FlowState> samples = run(s0, domain, ctl, 100, observer);
    for (const FlowState& s : samples) {
        const double exact = std::sqrt(r0 * r0 - 2.0 * s.t);
        res.max_err = std::max(res.max_err, std::abs(s.diag.radius.mean - exact));
    }
    res.seconds = seconds_since(t0);
    return res;
}

struct InclusionResult {
    int pairs = 0;
    int violations = 0;
    double worst_margin = 0.0;  // most negative min(d_f - d_g) + 2h over samples
    double seconds = 0.0;
    SolveStats stats;
};

// Nested random balls evolved with identical problem data must stay nested.
InclusionResult inclusion_runs(unsigned long seed) {
    const auto t0 = clock_type::now();
    const double h = 0.04;
    const GridSpec spec = make_grid(2, 1.92, h);
    DomainConfig domain = DomainConfig::make(
        spec, make_ball(spec, {0, 0, 0}, 0.25), std::nullopt, BoundaryValue{1.0, {}});
    const double sup = domain.sup_phi();

    StepControl ctl;
    ctl.t_end = 0.5;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> inner_radius(0.5, 0.7);
    std::uniform_real_distribution<double> gap_dist(0.25, 0.45);
    std::uniform_real_distribution<double> off(-0.05, 0.05);

    InclusionResult res;
    res.worst_margin = std::numeric_limits<double>::infinity();
    for (int pair = 0; pair < 5; ++pair) {
        const double rf = inner_radius(rng);
        const double gap = gap_dist(rng);
        double fx, fy, gx, gy;
        do {
            fx = off(rng);
            fy = off(rng);
            gx = off(rng);
            gy = off(rng);
        } while (std::hypot(fx - gx, fy - gy) > gap - 0.21);

        auto observer = [&](const FlowState& s) {
            if (!(s.diag.flags & kFlagExtinct)) res.stats.absorb(s.u, sup);
        };
        const FlowState f0 = init_state(domain, make_ball(spec, {fx, fy, 0}, rf), ctl);
        const FlowState g0 = init_state(domain, make_ball(spec, {gx, gy, 0}, rf + gap), ctl);
        res.stats.absorb(f0.u, sup);
        res.stats.absorb(g0.u, sup);
        const auto fs = run(f0, domain, ctl, 125, observer);
        const auto gs = run(g0, domain, ctl, 125, observer);

        ++res.pairs;
        const std::size_t count = std::min(fs.size(), gs.size());
        for (std::size_t k = 0; k < count; ++k) {
            if (std::abs(fs[k].t - gs[k].t) > 1e-9)
                throw error("inclusion runs drifted out of time alignment");
            double margin = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < fs[k].e.values.size(); ++i)
                margin = std::min(margin, fs[k].e.values[i] - gs[k].e.values[i]);
            res.worst_margin = std::min(res.worst_margin, margin + 2.0 * h);
            if (margin < -2.0 * h) ++res.violations;
        }
    }
    res.seconds = seconds_since(t0);
    return res;
}

// Flat-flow fixture shared by the energy-monotonicity and Hoelder checks:
// axisymmetric n = 3 slice, D_in the unit ball, bounded D_out.
ApproximateFlow flat_fixture(double l0, double dt, int k_steps) {
    const GridSpec spec = make_slice_grid(2.4, 0.05);
    DomainConfig domain = DomainConfig::make(spec, make_ball(spec, {0, 0, 0}, 1.0),
                                             make_ball(spec, {0, 0, 0}, 2.3),
                                             BoundaryValue{1.0, {}});
    InnerOpts opts;
    opts.max_inner = 2000;
    return approximate_flow(domain, make_ball(spec, {0, 0, 0}, l0), dt, k_steps, opts);
}

// Lazily computed artifacts shared between checks.
struct Context {
    unsigned long seed = 0;

    std::optional<OracleRunResult> c3_n2, c3_slice;        // h = 0.02
    std::optional<OracleRunResult> c10_n2, c10_slice;      // h = 0.04
    std::optional<McfResult> c4;
    std::optional<InclusionResult> c5;
    std::optional<ApproximateFlow> flow78;

    const OracleRunResult& n2_fine() {
        if (!c3_n2) c3_n2 = oracle_equivalence_run(2, false, 0.02, 2.0, 1.0);
        return *c3_n2;
    }
    const OracleRunResult& slice_fine() {
        if (!c3_slice) c3_slice = oracle_equivalence_run(3, true, 0.02, 2.0, 1.0);
        return *c3_slice;
    }
    const OracleRunResult& n2_coarse() {
        if (!c10_n2) c10_n2 = oracle_equivalence_run(2, false, 0.04, 2.0, 1.0);
        return *c10_n2;
    }
    const OracleRunResult& slice_coarse() {
        if (!c10_slice) c10_slice = oracle_equivalence_run(3, true, 0.04, 2.0, 1.0);
        return *c10_slice;
    }
    const McfResult& mcf() {
        if (!c4) c4 = mcf_run();
        return *c4;
    }
    const InclusionResult& inclusion() {
        if (!c5) c5 = inclusion_runs(seed);
        return *c5;
    }
    const ApproximateFlow& monotone_flow() {
        if (!flow78) flow78 = flat_fixture(1.3, 0.05, 40);
        return *flow78;
    }
};

Outcome criterion_1(Context&) {
    const auto t0 = clock_type::now();
    Outcome o{1, "radial fixed point", false, "", 0.0};
    const RadialConfig rc{3, 1.0};
    const double R = r_opt(rc);
    const double resid = std::abs(R * (R - 1.0) * (R - 1.0) - 0.5);
    const double rhs = std::abs(ode_rhs(R, rc));
    o.seconds = seconds_since(t0);
    o.pass = resid <= 1e-10 && rhs <= 1e-10 && o.seconds < 1.0;
    o.detail = fmt("R_opt = %.10f, defining residual = %.2e, |ode rhs| = %.2e", R, resid, rhs);
    return o;
}

Outcome criterion_2(Context&) {
    const auto t0 = clock_type::now();
    Outcome o{2, "radial long-time convergence", false, "", 0.0};
    const RadialConfig rc{3, 1.0};
    const double R = r_opt(rc);
    double worst_gap = 0.0;
    bool monotone = true;
    for (const double l0 : {1.1, 2.0, 5.0}) {
        const RadialTrajectory traj = integrate(l0, 50.0, 1e-3, rc);
        worst_gap = std::max(worst_gap, std::abs(traj.samples.back().second - R));
        const double dir = (R > l0) ? 1.0 : -1.0;
        for (std::size_t k = 1; k < traj.samples.size(); ++k) {
            const double move = traj.samples[k].second - traj.samples[k - 1].second;
            if (dir * move < -1e-12) monotone = false;
        }
    }
    o.seconds = seconds_since(t0);
    o.pass = worst_gap <= 1e-6 && monotone && o.seconds < 1.0;
    o.detail = fmt("max |L(50) - R_opt| = %.2e, monotone = %s", worst_gap,
                   monotone ? "yes" : "no");
    return o;
}

Outcome criterion_3(Context& ctx) {
    const auto t0 = clock_type::now();
    Outcome o{3, "smooth-flow oracle equivalence", false, "", 0.0};
    const OracleRunResult& a = ctx.n2_fine();
    const OracleRunResult& b = ctx.slice_fine();
    const double tol = 3.0 * 0.02;
    o.seconds = seconds_since(t0);
    o.pass = a.max_err <= tol && b.max_err <= tol && a.seconds + b.seconds < 600.0;
    o.detail = fmt("max |radius - L(t)|: n=2 %.4f, n=3 slice %.4f (tol %.3f)", a.max_err,
                   b.max_err, tol);
    return o;
}

Outcome criterion_4(Context& ctx) {
    const auto t0 = clock_type::now();
    Outcome o{4, "mean-curvature-flow reduction (phi = 0)", false, "", 0.0};
    const McfResult& m = ctx.mcf();
    const double tol = 3.0 * 0.01;
    o.seconds = seconds_since(t0);
    o.pass = m.max_err <= tol && m.seconds < 120.0;
    o.detail = fmt("max |radius - sqrt(r0^2 - 2t)| = %.4f (tol %.3f)", m.max_err, tol);
    return o;
}

Outcome criterion_5(Context& ctx) {
    const auto t0 = clock_type::now();
    Outcome o{5, "inclusion principle for nested sets", false, "", 0.0};
    const InclusionResult& inc = ctx.inclusion();
    o.seconds = seconds_since(t0);
    o.pass = inc.violations == 0 && inc.pairs == 5;
    o.detail = fmt("%d nested pairs, %d violations, worst margin %+.4f", inc.pairs,
                   inc.violations, inc.worst_margin);
    return o;
}

Outcome criterion_6(Context& ctx) {
    const auto t0 = clock_type::now();
    Outcome o{6, "maximum principle across all solves", false, "", 0.0};
    SolveStats total;
    total.merge(ctx.n2_fine().stats);
    total.merge(ctx.slice_fine().stats);
    total.merge(ctx.mcf().stats);
    total.merge(ctx.inclusion().stats);
    o.seconds = seconds_since(t0);
    o.pass = total.violations == 0 && total.solves > 0;
    o.detail = fmt("%ld solves, %ld violations, min u = %.2e, max excess = %.2e",
                   total.solves, total.violations, total.worst_low, total.worst_high);
    return o;
}

Outcome criterion_7(Context& ctx) {
    const auto t0 = clock_type::now();
    Outcome o{7, "flat-flow energy monotonicity", false, "", 0.0};
    const ApproximateFlow& flow = ctx.monotone_flow();
    double worst_rel_increase = 0.0;
    double penalty_sum = 0.0;
    for (std::size_t k = 1; k < flow.steps.size(); ++k) {
        const double prev =
            flow.steps[k - 1].energy.dirichlet + flow.steps[k - 1].energy.perimeter;
        const double cur = flow.steps[k].energy.dirichlet + flow.steps[k].energy.perimeter;
        worst_rel_increase = std::max(worst_rel_increase, (cur - prev) / prev);
        penalty_sum += flow.steps[k].energy.penalty;
    }
    const double bulk0 = flow.steps[0].energy.dirichlet + flow.steps[0].energy.perimeter;
    o.seconds = seconds_since(t0);
    o.pass = worst_rel_increase <= 1e-4 && penalty_sum <= bulk0 * (1.0 + 1e-3);
    o.detail = fmt("worst bulk increase %.2e (tol 1e-4), sum penalties %.3f <= %.3f",
                   worst_rel_increase, penalty_sum, bulk0 * (1.0 + 1e-3));
    return o;
}

Outcome criterion_8(Context& ctx) {
    const auto t0 = clock_type::now();
    Outcome o{8, "Hoelder-in-time bound", false, "", 0.0};
    const HoelderFit fit = hoelder_check(ctx.monotone_flow());
    o.seconds = seconds_since(t0);
    o.pass = fit.violations == 0 && fit.pairs > 0;
    o.detail = fmt("fitted C = %.4f, %d pairs, %d violations of the doubled envelope",
                   fit.fitted_c, fit.pairs, fit.violations);
    return o;
}

Outcome criterion_9(Context&) {
    const auto t0 = clock_type::now();
    Outcome o{9, "flat/smooth/oracle cross-validation", false, "", 0.0};
    const double dt = 0.05, h = 0.05;
    const ApproximateFlow flow = flat_fixture(2.0, dt, 40);
    const RadialTrajectory oracle = integrate(2.0, dt * 40, 1e-3, RadialConfig{3, 1.0});
    double max_dev = 0.0;
    for (std::size_t k = 0; k < flow.steps.size(); ++k) {
        const double r = interface_radius_stats(flow.steps[k].e).mean;
        max_dev = std::max(max_dev, std::abs(r - trajectory_radius(oracle, k * dt)));
    }
    o.seconds = seconds_since(t0);
    o.pass = max_dev <= 5.0 * h;
    o.detail = fmt("max |flat radius - L(t)| = %.4f over t in [0, 2] (tol %.3f)", max_dev,
                   5.0 * h);
    return o;
}

Outcome criterion_10(Context& ctx) {
    const auto t0 = clock_type::now();
    Outcome o{10, "grid convergence of the oracle run", false, "", 0.0};
    const double fine_n2 = ctx.n2_fine().max_err;
    const double fine_slice = ctx.slice_fine().max_err;
    const double coarse_n2 = ctx.n2_coarse().max_err;
    const double coarse_slice = ctx.slice_coarse().max_err;
    const double ratio_n2 = coarse_n2 / fine_n2;
    const double ratio_slice = coarse_slice / fine_slice;
    o.seconds = seconds_since(t0);
    o.pass = ratio_n2 >= 1.5 && ratio_slice >= 1.5;
    o.detail = fmt("error h=0.04 -> h=0.02: n=2 %.4f -> %.4f (x%.2f), slice %.4f -> %.4f (x%.2f)",
                   coarse_n2, fine_n2, ratio_n2, coarse_slice, fine_slice, ratio_slice);
    return o;
}

} // namespace

std::vector<Outcome> run_criteria(std::vector<int> ids, unsigned long seed,
                                  std::ostream& log) {
    if (ids.empty()) ids = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    Context ctx;
    ctx.seed = seed;

    using Fn = Outcome (*)(Context&);
    const Fn table[] = {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                        criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};

    std::vector<Outcome> outcomes;
    for (int id : ids) {
        if (id < 1 || id > 10) throw error("criterion id out of range");
        Outcome o = table[id - 1](ctx);
        log << (o.pass ? "[PASS] " : "[FAIL] ") << o.id << " " << o.label << ": " << o.detail
            << fmt("   (%.1fs)", o.seconds) << "\n";
        log.flush();
        outcomes.push_back(std::move(o));
    }
    return outcomes;
}

bool all_pass(const std::vector<Outcome>& outcomes) {
    return std::all_of(outcomes.begin(), outcomes.end(),
                       [](const Outcome& o) { return o.pass; });
}

} // namespace mcnd::props
