#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cellsheaf/sheaf.hpp"

namespace cellsheaf {

/// Seeded generator. Bounded draws use rejection sampling on the raw
/// 64-bit stream so results do not depend on the standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    std::uint64_t next() { return engine_(); }
    /// Uniform integer in [lo, hi].
    long uniform(long lo, long hi);
    bool coin() { return uniform(0, 1) == 1; }

private:
    std::mt19937_64 engine_;
};

/// Random sheaf complex: the cone of a natural map between sums of at most
/// three basic sheaves (standard, open star, skyscraper, constant) in
/// degrees -1..1, followed by a random unimodular change of basis in every
/// stalk. Stalks have dimension at most 3.
SheafComplex random_sheaf(const ComplexPtr& k, Rng& rng);
/// `count` random sheaves from one seed.
std::vector<SheafComplex> random_suite(const ComplexPtr& k, std::uint64_t seed, std::size_t count);
/// Random invertible integer matrix with determinant ±1.
Matrix random_unimodular(std::size_t n, Rng& rng);

}  // namespace cellsheaf
