#include <cstdio>
#include <fstream>

#include "mcnd/cli.hpp"

namespace mcnd {

std::string csv_text(const std::vector<SampleRow>& rows) {
    std::string out =
        "t,volume,perimeter,dirichlet,penalty,total_energy,sym_diff_prev,min_dist_din,flags\n";
    char buf[512];
    for (const SampleRow& r : rows) {
        std::snprintf(buf, sizeof buf,
                      "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%u\n", r.t, r.volume,
                      r.perimeter, r.dirichlet, r.penalty, r.total_energy, r.sym_diff_prev,
                      r.min_dist_din, r.flags);
        out += buf;
    }
    return out;
}

void emit_csv(const std::vector<SampleRow>& rows, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);  // keep LF endings everywhere
    if (!os) throw io_error("cannot open " + path.string() + " for writing");
    os << csv_text(rows);
    if (!os) throw io_error("write failed: " + path.string());
}

} // namespace mcnd
