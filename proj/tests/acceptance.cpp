// One line per acceptance criterion; exit status is nonzero when any fails.
#include <cstdlib>
#include <iostream>
#include <string>

#include "cellsheaf/acceptance.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = cellsheaf::kDefaultSeed;
    if (argc > 1) seed = std::stoull(argv[1]);
    auto results = cellsheaf::run_property_criteria(seed);
    results.push_back(cellsheaf::check_determinism(CELLSHEAF_CLI_PATH, seed));
    std::cout << cellsheaf::render_results(results, true);
    bool all = true;
    for (const auto& r : results) all = all && r.pass();
    std::cout << (all ? "all criteria passed" : "some criteria failed") << "\n";
    return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
