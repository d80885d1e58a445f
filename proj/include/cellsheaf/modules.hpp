#pragma once

#include <map>
#include <utility>
#include <vector>

#include "cellsheaf/twisted.hpp"

namespace cellsheaf {

/// Right dg module over the costandard basis category: a complex M(a) per
/// simplex and an action M(b) -> M(a) for every face pair a ≤ b.
class PosetModule {
public:
    /// Actions for covering pairs (facet, simplex), mapping M(simplex) -> M(facet).
    using Actions = std::map<std::pair<SimplexId, SimplexId>, GradedMatrix>;

    PosetModule() = default;
    /// Composites are derived from the covering actions and checked for
    /// associativity on codimension-two squares. Throws std::invalid_argument.
    PosetModule(ComplexPtr base, std::vector<ChainComplex> values, const Actions& cover_actions);

    const ComplexPtr& base() const { return base_; }
    const SimplicialComplex& complex() const { return *base_; }
    std::size_t size() const { return values_.size(); }
    const ChainComplex& value(SimplexId a) const { return values_.at(a); }
    const std::vector<ChainComplex>& values() const { return values_; }
    /// Action M(b) -> M(a) for a ≤ b (identity blocks when a == b).
    const GradedMatrix& action(SimplexId a, SimplexId b) const;
    ChainMap action_map(SimplexId a, SimplexId b) const;
    Actions cover_actions() const;
    bool is_zero() const;

private:
    ComplexPtr base_;
    std::vector<ChainComplex> values_;
    std::map<std::pair<SimplexId, SimplexId>, GradedMatrix> actions_;
    std::vector<GradedMatrix> identities_;
};

/// Strict model of the costandard object on a: the stalk at σ is
/// ⊕_{σ≤ρ≤a} Q placed in degree -dim ρ, with generization the projection.
SheafComplex costandard_model(const ComplexPtr& k, SimplexId a);
/// The degree-0 generator costd(a) -> costd(b) for a ≤ b, as an inclusion of models.
SheafMap costandard_inclusion(const ComplexPtr& k, SimplexId a, SimplexId b);

/// M(a) = RHom(costd(a), F), computed against the minimal standard
/// presentation of F; actions are precomposition with the generators.
PosetModule yoneda_module(const SheafComplex& f);

/// Assignment of each simplex to a group.
struct Partition {
    std::vector<std::size_t> group;
};
/// Throws std::invalid_argument unless every group is a nonempty locally closed set.
void validate_partition(const ComplexPtr& k, const Partition& p);
Partition singleton_partition(const ComplexPtr& k);
Partition one_group_partition(const ComplexPtr& k);

/// Finite-rank condition: every value is a bounded complex of total
/// dimension at most `bound`.
bool check_fr(const PosetModule& m, std::size_t bound = 1u << 20);
/// Actions between members of one group are quasi-isomorphisms.
bool check_slc(const PosetModule& m, const Partition& p);
/// Generizations between members of one group are quasi-isomorphisms.
bool is_constructible(const SheafComplex& f, const Partition& p);

/// Standard twisted complex assembled by the descending induction on
/// dimension: the entry on a is std(a) ⊗ M(a)[dim a].
TwistedComplex representation_twisted(const PosetModule& m);
/// Sheaf quasi-representing the module.
SheafComplex represent(const PosetModule& m);

/// Intermediate module after step k: the part of the module still to be
/// represented by simplices of dimension < k. Index k runs over 0..dim+1.
struct StepIntermediate {
    int k = 0;
    PosetModule module;
    /// Every value on a simplex of dimension ≥ k is acyclic.
    bool acyclic_above = false;
};
std::vector<StepIntermediate> step_intermediates(const PosetModule& m);

/// Pullback of F along the carrier map of a subdivision.
SheafComplex subdivide_sheaf(const SheafComplex& f, const Subdivision& sd);
/// Compares represent(yoneda(subdivide(F))) with subdivide(represent(yoneda(F))).
bool refine_and_compare(const SheafComplex& f, const Subdivision& sd);

/// Modules agree in value cohomology on every simplex.
bool valuewise_equal(const PosetModule& a, const PosetModule& b);

}  // namespace cellsheaf
