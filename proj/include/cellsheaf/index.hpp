#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cellsheaf/twisted.hpp"

namespace cellsheaf {

/// Integer value per simplex.
struct ConstructibleFunction {
    std::vector<long> values;
    friend bool operator==(const ConstructibleFunction&, const ConstructibleFunction&) = default;
};

/// Multiplicity of the conormal cycle of each simplex.
struct LagrangianCycle {
    std::vector<long> multiplicity;
    friend bool operator==(const LagrangianCycle&, const LagrangianCycle&) = default;
};

/// Coefficients in the basis of standard objects.
struct K0Class {
    std::vector<long> coefficient;
    friend bool operator==(const K0Class&, const K0Class&) = default;
};

/// Stalkwise Euler characteristic.
ConstructibleFunction euler_function(const SheafComplex& f);
/// χ(std(τ)): the indicator of the faces of τ.
ConstructibleFunction standard_function(const ComplexPtr& k, SimplexId tau);
/// Solves g = Σ c_τ χ(std(τ)) by descending dimension.
K0Class mobius_invert(const ComplexPtr& k, const ConstructibleFunction& g);
/// Σ c_τ χ(std(τ)).
ConstructibleFunction k0_function(const ComplexPtr& k, const K0Class& c);
K0Class k0_class(const SheafComplex& f);
/// Signed count of the entries of a standard twisted complex: entry V = M[s]
/// contributes (-1)^s χ(M) to its simplex.
K0Class k0_from_decomposition(const TwistedComplex& t);

/// Multiplicity (-1)^{dim τ} c_τ with c = mobius_invert(g).
LagrangianCycle characteristic_cycle(const ComplexPtr& k, const ConstructibleFunction& g);
/// Inverse of characteristic_cycle.
ConstructibleFunction cycle_function(const ComplexPtr& k, const LagrangianCycle& c);
/// Σ (-1)^{dim τ} c(τ).
long index_pairing(const ComplexPtr& k, const LagrangianCycle& c);

struct IndexCheck {
    long sections_euler = 0;
    long pairing = 0;
    bool holds() const { return sections_euler == pairing; }
};
IndexCheck verify_index_theorem(const SheafComplex& f);

/// χ(D F) as a function of χ(F): σ ↦ Σ_{τ≥σ} (-1)^{dim τ} g(τ).
ConstructibleFunction dual_function(const ComplexPtr& k, const ConstructibleFunction& g);

/// Relation between CC(χ(F)) and CC(χ(D F)) on the conormal basis.
struct AntipodalReport {
    /// relation[i][j]: coefficient of conormal i in the image of conormal j.
    std::vector<std::vector<long>> relation;
    /// Applying the relation twice is the identity.
    bool involution = false;
    /// For every sample, the relation carries CC(χ(F)) to CC(χ(D F)) computed
    /// from the actual dual.
    bool consistent = false;
    /// +1 or -1 when the relation is a global sign, empty otherwise.
    std::optional<int> global_sign;
    /// Simplices whose conormal is sent to ± itself.
    std::vector<SimplexId> fixed_up_to_sign;
};
AntipodalReport antipodal_report(const ComplexPtr& k, const std::vector<SheafComplex>& samples);

struct IndexRow {
    std::string simplex;
    int dim = 0;
    long euler = 0;
    long k0 = 0;
    long cc = 0;
};
std::vector<IndexRow> index_table(const SheafComplex& f);

}  // namespace cellsheaf
