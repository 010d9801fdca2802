// Acceptance suite: runs the numbered property checks and prints one
// pass/fail line per check.  Exit status 0 iff everything passed.
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <vector>

#include "mcnd/props.hpp"

int main(int argc, char** argv) {
    std::vector<int> ids;
    unsigned long seed = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            ids.push_back(std::atoi(argv[++i]));
        } else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
            seed = std::strtoul(argv[++i], nullptr, 10);
        } else {
            std::cerr << "usage: acceptance_tests [--only N]... [--seed S]\n";
            return 2;
        }
    }
    try {
        const auto outcomes = mcnd::props::run_criteria(ids, seed, std::cout);
        return mcnd::props::all_pass(outcomes) ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "acceptance suite error: " << e.what() << "\n";
        return 1;
    }
}
