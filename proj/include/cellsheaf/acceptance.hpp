#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cellsheaf {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct CriterionResult {
    int id = 0;
    std::string title;
    /// The property held on every sample.
    bool property = false;
    /// Wall-clock budget and measured time, in seconds.
    double limit = 0;
    double seconds = 0;
    /// Deterministic counts behind the verdict.
    std::string detail;
    bool pass() const { return property && seconds < limit; }
};

CriterionResult check_hom_tables();
CriterionResult check_duality(std::uint64_t seed);
CriterionResult check_decompositions(std::uint64_t seed);
CriterionResult check_representability(std::uint64_t seed);
CriterionResult check_adjunctions(std::uint64_t seed);
CriterionResult check_transform_duality(std::uint64_t seed);
CriterionResult check_diagonal_identity(std::uint64_t seed);
CriterionResult check_index_square(std::uint64_t seed);
/// Runs `<cli> check-suite --seed <seed>` twice and compares the output bytes.
CriterionResult check_determinism(const std::string& cli_path, std::uint64_t seed);

/// Criteria 1 through 8, in order.
std::vector<CriterionResult> run_property_criteria(std::uint64_t seed);

/// One line per criterion. Without timing the text depends only on the seed.
std::string render_results(const std::vector<CriterionResult>& results, bool with_timing);

}  // namespace cellsheaf
