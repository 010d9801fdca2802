#pragma once

#include <stdexcept>
#include <string>

namespace mcnd {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Grid / set construction problems.
struct shape_error : error {
    using error::error;
};
struct domain_fit_error : error {
    using error::error;
};
struct no_interface_error : error {
    using error::error;
};

// Geometry preconditions (admissibility, containment, degenerate normals).
struct geometry_error : error {
    using error::error;
};

// Iterative solver gave up before reaching tolerance.
struct convergence_error : error {
    convergence_error(const std::string& what, double residual)
        : error(what), last_residual(residual) {}
    double last_residual;
};

// Config file problems; carries the offending line and key.
struct parse_error : error {
    parse_error(const std::string& what, int line_no, std::string key_name)
        : error(what), line(line_no), key(std::move(key_name)) {}
    int line;
    std::string key;
};

struct io_error : error {
    using error::error;
};

} // namespace mcnd
