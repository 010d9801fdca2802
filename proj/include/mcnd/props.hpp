#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mcnd::props {

struct Outcome {
    int id = 0;
    std::string label;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs the requested checks of the property suite (1..10; empty = all) and
// prints one pass/fail line per check to `log`.  Expensive intermediate
// results are shared between checks within one call.
std::vector<Outcome> run_criteria(std::vector<int> ids, unsigned long seed,
                                  std::ostream& log);

bool all_pass(const std::vector<Outcome>& outcomes);

} // namespace mcnd::props
