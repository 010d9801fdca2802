#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mcnd/cli.hpp"

namespace mcnd {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return {};
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& v, int line, const std::string& key) {
    const std::string t = trim(v);
    char* end = nullptr;
    const double x = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size())
        throw parse_error("malformed number '" + t + "' for key " + key, line, key);
    return x;
}

long parse_integer(const std::string& v, int line, const std::string& key) {
    const double x = parse_number(v, line, key);
    const long n = static_cast<long>(x);
    if (static_cast<double>(n) != x)
        throw parse_error("expected an integer for key " + key, line, key);
    return n;
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
    const std::string t = trim(v);
    if (t == "true") return true;
    if (t == "false") return false;
    throw parse_error("expected true/false for key " + key, line, key);
}

// `ball(cx,cy[,cz],r) [+ ball(...)]*`, or `unbounded`.
ShapeSpec parse_shape(const std::string& v, int line, const std::string& key) {
    ShapeSpec spec;
    const std::string t = trim(v);
    if (t == "unbounded") {
        spec.unbounded = true;
        return spec;
    }
    std::size_t pos = 0;
    while (pos < t.size()) {
        std::size_t open = t.find('(', pos);
        if (open == std::string::npos || trim(t.substr(pos, open - pos)) != "ball")
            throw parse_error("expected ball(...) in shape for key " + key, line, key);
        std::size_t close = t.find(')', open);
        if (close == std::string::npos)
            throw parse_error("unterminated ball(...) for key " + key, line, key);
        std::vector<double> nums;
        std::string inner = t.substr(open + 1, close - open - 1);
        std::istringstream ss(inner);
        std::string piece;
        while (std::getline(ss, piece, ','))
            nums.push_back(parse_number(piece, line, key));
        if (nums.size() != 3 && nums.size() != 4)
            throw parse_error("ball(...) needs n coordinates plus a radius for key " + key,
                              line, key);
        ShapeSpec::Ball b;
        if (nums.size() == 3) b = {{nums[0], nums[1], 0.0}, nums[2]};
        else b = {{nums[0], nums[1], nums[2]}, nums[3]};
        if (!(b.radius > 0.0))
            throw parse_error("ball radius must be positive for key " + key, line, key);
        spec.balls.push_back(b);
        pos = close + 1;
        while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
        if (pos < t.size()) {
            if (t[pos] != '+')
                throw parse_error("shapes combine with '+' for key " + key, line, key);
            ++pos;
        }
    }
    if (spec.balls.empty())
        throw parse_error("empty shape for key " + key, line, key);
    return spec;
}

std::string render_shape(const ShapeSpec& s, int n) {
    if (s.unbounded) return "unbounded";
    std::string out;
    char buf[128];
    for (std::size_t i = 0; i < s.balls.size(); ++i) {
        if (i) out += " + ";
        const auto& b = s.balls[i];
        if (n == 3)
            std::snprintf(buf, sizeof buf, "ball(%.17g,%.17g,%.17g,%.17g)", b.center[0],
                          b.center[1], b.center[2], b.radius);
        else
            std::snprintf(buf, sizeof buf, "ball(%.17g,%.17g,%.17g)", b.center[0],
                          b.center[1], b.radius);
        out += buf;
    }
    return out;
}

void validate_config(const RunConfig& c, int line = 0) {
    auto fail = [&](const std::string& msg, const std::string& key) {
        throw parse_error(msg, line, key);
    };
    if (c.mode != "radial" && c.mode != "smooth" && c.mode != "flat" && c.mode != "compare" &&
        c.mode != "props")
        fail("mode must be one of radial|smooth|flat|compare|props", "mode");
    if (c.grid_n != 2 && c.grid_n != 3) fail("grid.n must be 2 or 3", "grid.n");
    if (!(c.grid_h > 0.0)) fail("grid.h must be positive", "grid.h");
    if (!(c.grid_box > 0.0)) fail("grid.box must be positive", "grid.box");
    if (c.grid_slice && c.grid_n != 3) fail("grid.slice requires grid.n = 3", "grid.slice");
    if (c.phi < 0.0) fail("domain.phi must be nonnegative", "domain.phi");
    if (!(c.flat_dt > 0.0)) fail("flat.dt must be positive", "flat.dt");
    if (c.flat_k_steps < 0) fail("flat.k_steps must be nonnegative", "flat.k_steps");
    if (c.flat_window < 1) fail("flat.window must be at least 1", "flat.window");
    if (c.flat_max_inner < 1) fail("flat.max_inner must be at least 1", "flat.max_inner");
    if (!(c.flat_tol_rel > 0.0)) fail("flat.tol_rel must be positive", "flat.tol_rel");
    if (!(c.smooth_t_end >= 0.0)) fail("smooth.t_end must be nonnegative", "smooth.t_end");
    if (c.smooth_reinit_every < 1)
        fail("smooth.reinit_every must be at least 1", "smooth.reinit_every");
    if (!(c.smooth_cfl_curvature > 0.0 && c.smooth_cfl_curvature <= 1.0))
        fail("smooth.cfl_curvature must lie in (0, 1]", "smooth.cfl_curvature");
    if (!(c.smooth_cfl_advect > 0.0 && c.smooth_cfl_advect <= 1.0))
        fail("smooth.cfl_advect must lie in (0, 1]", "smooth.cfl_advect");
    if (!(c.radial_l0 > 1.0)) fail("radial.l0 must exceed 1", "radial.l0");
    if (!(c.radial_dt > 0.0)) fail("radial.dt must be positive", "radial.dt");
    if (!(c.radial_t_end >= 0.0)) fail("radial.t_end must be nonnegative", "radial.t_end");
    if (c.output_cadence < 1) fail("output.cadence must be at least 1", "output.cadence");
    if (c.mode == "flat" || c.mode == "compare") {
        if (c.d_out.unbounded)
            fail("mode " + c.mode + " requires a bounded domain.d_out "
                 "(the flat flow is defined only with bounded D_out)",
                 "domain.d_out");
        if (!(c.phi > 0.0))
            fail("mode " + c.mode + " requires positive domain.phi", "domain.phi");
    }
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    cfg.d_in.balls = {{{0.0, 0.0, 0.0}, 0.25}};
    cfg.d_out.unbounded = true;
    cfg.e0.balls = {{{0.0, 0.0, 0.0}, 0.6}};

    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(is, raw)) {
        ++line_no;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw parse_error("expected key = value", line_no, line);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw parse_error("missing key", line_no, key);

        if (key == "mode") cfg.mode = val;
        else if (key == "seed") cfg.seed = static_cast<unsigned long>(parse_integer(val, line_no, key));
        else if (key == "grid.n") cfg.grid_n = static_cast<int>(parse_integer(val, line_no, key));
        else if (key == "grid.h") cfg.grid_h = parse_number(val, line_no, key);
        else if (key == "grid.box") cfg.grid_box = parse_number(val, line_no, key);
        else if (key == "grid.slice") cfg.grid_slice = parse_bool(val, line_no, key);
        else if (key == "domain.d_in") cfg.d_in = parse_shape(val, line_no, key);
        else if (key == "domain.d_out") cfg.d_out = parse_shape(val, line_no, key);
        else if (key == "domain.e0") cfg.e0 = parse_shape(val, line_no, key);
        else if (key == "domain.phi") cfg.phi = parse_number(val, line_no, key);
        else if (key == "smooth.cfl_curvature") cfg.smooth_cfl_curvature = parse_number(val, line_no, key);
        else if (key == "smooth.cfl_advect") cfg.smooth_cfl_advect = parse_number(val, line_no, key);
        else if (key == "smooth.reinit_every") cfg.smooth_reinit_every = static_cast<int>(parse_integer(val, line_no, key));
        else if (key == "smooth.t_end") cfg.smooth_t_end = parse_number(val, line_no, key);
        else if (key == "flat.dt") cfg.flat_dt = parse_number(val, line_no, key);
        else if (key == "flat.k_steps") cfg.flat_k_steps = static_cast<int>(parse_integer(val, line_no, key));
        else if (key == "flat.tol_rel") cfg.flat_tol_rel = parse_number(val, line_no, key);
        else if (key == "flat.window") cfg.flat_window = static_cast<int>(parse_integer(val, line_no, key));
        else if (key == "flat.max_inner") cfg.flat_max_inner = static_cast<int>(parse_integer(val, line_no, key));
        else if (key == "radial.l0") cfg.radial_l0 = parse_number(val, line_no, key);
        else if (key == "radial.t_end") cfg.radial_t_end = parse_number(val, line_no, key);
        else if (key == "radial.dt") cfg.radial_dt = parse_number(val, line_no, key);
        else if (key == "output.dir") cfg.output_dir = val;
        else if (key == "output.cadence") cfg.output_cadence = static_cast<int>(parse_integer(val, line_no, key));
        else if (key == "output.dumps") cfg.output_dumps = parse_bool(val, line_no, key);
        else throw parse_error("unknown key '" + key + "'", line_no, key);

        if (key == "domain.d_in" && cfg.d_in.unbounded)
            throw parse_error("domain.d_in cannot be unbounded", line_no, key);
        if (key == "domain.e0" && cfg.e0.unbounded)
            throw parse_error("domain.e0 cannot be unbounded", line_no, key);
    }
    validate_config(cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("cannot open config " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

std::string render_config(const RunConfig& c) {
    std::ostringstream os;
    char buf[64];
    auto num = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    os << "mode = " << c.mode << "\n";
    os << "seed = " << c.seed << "\n";
    os << "grid.n = " << c.grid_n << "\n";
    os << "grid.h = " << num(c.grid_h) << "\n";
    os << "grid.box = " << num(c.grid_box) << "\n";
    os << "grid.slice = " << (c.grid_slice ? "true" : "false") << "\n";
    os << "domain.d_in = " << render_shape(c.d_in, c.grid_n) << "\n";
    os << "domain.d_out = " << render_shape(c.d_out, c.grid_n) << "\n";
    os << "domain.e0 = " << render_shape(c.e0, c.grid_n) << "\n";
    os << "domain.phi = " << num(c.phi) << "\n";
    os << "smooth.cfl_curvature = " << num(c.smooth_cfl_curvature) << "\n";
    os << "smooth.cfl_advect = " << num(c.smooth_cfl_advect) << "\n";
    os << "smooth.reinit_every = " << c.smooth_reinit_every << "\n";
    os << "smooth.t_end = " << num(c.smooth_t_end) << "\n";
    os << "flat.dt = " << num(c.flat_dt) << "\n";
    os << "flat.k_steps = " << c.flat_k_steps << "\n";
    os << "flat.tol_rel = " << num(c.flat_tol_rel) << "\n";
    os << "flat.window = " << c.flat_window << "\n";
    os << "flat.max_inner = " << c.flat_max_inner << "\n";
    os << "radial.l0 = " << num(c.radial_l0) << "\n";
    os << "radial.t_end = " << num(c.radial_t_end) << "\n";
    os << "radial.dt = " << num(c.radial_dt) << "\n";
    os << "output.dir = " << c.output_dir << "\n";
    os << "output.cadence = " << c.output_cadence << "\n";
    os << "output.dumps = " << (c.output_dumps ? "true" : "false") << "\n";
    return os.str();
}

} // namespace mcnd
