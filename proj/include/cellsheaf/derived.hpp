#pragma once

#include <map>
#include <utility>
#include <vector>

#include "cellsheaf/sheaf.hpp"

namespace cellsheaf {

/// Complex computing RHom over a set of simplices by summing over strict
/// chains σ0 < ... < σp of Hom(F(σ0), G(σp)), with block bookkeeping so that
/// restriction to a smaller set can be written down.
struct NerveComplex {
    ChainComplex complex;
    std::vector<std::vector<SimplexId>> chains;
    /// (chain, hom degree) -> block position
    std::map<std::pair<std::vector<SimplexId>, int>, BlockLoc> blocks;
};

/// RHom(F|W, G|W) over the set W (usually open).
NerveComplex nerve_rhom(const SheafComplex& f, const SheafComplex& g, const SimplexSet& w);
/// Restriction from the nerve complex over W to the one over W' ⊆ W.
ChainMap nerve_restriction(const NerveComplex& big, const NerveComplex& small);

/// Cellular cochains with compact support over a locally closed set:
/// ⊕_{σ∈U} F(σ)[-dim σ], D = Σ_{σ⋖τ} [σ:τ] ρ_{στ} + (-1)^{dim σ} d_F.
struct CellularChains {
    ChainComplex complex;
    /// (simplex, stalk degree) -> block position, in degree stalk degree + dim simplex
    std::map<std::pair<SimplexId, int>, BlockLoc> blocks;
};

CellularChains cellular_chains(const SheafComplex& f, const SimplexSet& u);
/// Inclusion of the chains over a smaller set (which must be closed under
/// cofaces inside the bigger one) into the chains over the bigger set.
ChainMap cellular_inclusion(const CellularChains& small, const CellularChains& big);
/// Chain map of compactly supported cochains induced by u: F -> G; both
/// chain complexes must be taken over the same set.
ChainMap cellular_map(const SheafMap& u, const CellularChains& source, const CellularChains& target);

/// Global derived homomorphisms RHom(F, G).
ChainComplex rhom_global(const SheafComplex& f, const SheafComplex& g);
std::map<int, std::size_t> rhom_dims(const SheafComplex& f, const SheafComplex& g);
/// Internal hom, stalk at σ is RHom over the star of σ.
SheafComplex sheaf_hom(const SheafComplex& f, const SheafComplex& g);
/// RΓ(K, F).
ChainComplex sections(const SheafComplex& f);
/// RΓ_c(K, F), cellular model.
ChainComplex sections_c(const SheafComplex& f);
/// RΓ_c(U, F) for a locally closed set U.
ChainComplex sections_c(const SheafComplex& f, const SimplexSet& u);
/// Costalk at σ: RΓ_c(star σ, F).
ChainComplex costalk(const SheafComplex& f, SimplexId s);

/// Verdier dual: (DF)(σ) = RΓ_c(star σ, F)^*, generization dual to the
/// inclusion of compactly supported chains.
SheafComplex verdier_dual(const SheafComplex& f);
/// Functorial on maps: D(u) goes from DG to DF for u: F -> G.
SheafMap verdier_dual(const SheafMap& u);
SheafComplex dualizing_complex(const ComplexPtr& k);

/// Rj_* j^* F for an open set, nerve model of sections over star(σ) ∩ U.
SheafComplex pushforward_open(const SheafComplex& f, const SimplexSet& open);
/// Unit F -> Rj_* j^* F.
SheafMap pushforward_open_unit(const SheafComplex& f, const SimplexSet& open);
/// i^! for a closed set Z, as a sheaf supported on Z: the cocone of the unit
/// F -> Rj_* j^* F for the open complement.
SheafComplex upper_shriek_closed(const SheafComplex& f, const SimplexSet& closed);

/// Rj_* of the constant sheaf on star(τ), replaced by its cohomology sheaf.
SheafComplex standard_star(const ComplexPtr& k, SimplexId tau);
/// j_! of the dualizing complex restricted to star(τ), replaced by its
/// cohomology sheaf when that is concentrated in one degree.
SheafComplex costandard_star(const ComplexPtr& k, SimplexId tau);

/// Rf_* by the literal formula: (f_* F)(σ) = RΓ(f^{-1}(star σ), F).
SheafComplex pushforward_nerve(const SimplicialMap& f, const SheafComplex& g);

/// Invariants of a sheaf complex up to quasi-isomorphism used to compare two
/// complexes: stalk cohomology, costalk cohomology and the cohomology of the
/// cones of all covering generization maps.
struct Signature {
    std::vector<std::map<int, std::size_t>> stalks;
    std::vector<std::map<int, std::size_t>> costalks;
    std::map<std::pair<SimplexId, SimplexId>, std::map<int, std::size_t>> generization_cones;
    friend bool operator==(const Signature& a, const Signature& b) {
        return a.stalks == b.stalks && a.costalks == b.costalks && a.generization_cones == b.generization_cones;
    }
};

Signature signature(const SheafComplex& f);
/// Compares signatures; both sheaves must live on the same complex.
bool equivalent(const SheafComplex& f, const SheafComplex& g);
/// Stalk cohomology dimensions agree.
bool stalkwise_equal(const SheafComplex& f, const SheafComplex& g);

}  // namespace cellsheaf
