#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "cellsheaf/derived.hpp"

namespace cellsheaf {

enum class Basis { standard, costandard };

std::string to_string(Basis b);

/// One summand of a twisted complex: the basis object on `simplex` tensored
/// with multiplicity[shift].
struct TwistedEntry {
    SimplexId simplex = 0;
    int shift = 0;
    ChainComplex multiplicity;
};

/// Twisted complex over a standard or costandard basis, stored in flat form:
/// a single complex whose degree-n space is the concatenation, in entry
/// order, of the degree-n spaces of multiplicity[shift]. A differential
/// component from an entry on τ to an entry on τ' must satisfy τ' ≤ τ for the
/// standard basis and τ ≤ τ' for the costandard basis.
class TwistedComplex {
public:
    TwistedComplex() = default;
    /// Throws std::invalid_argument on any inconsistency.
    TwistedComplex(Basis basis, ComplexPtr base, std::vector<TwistedEntry> entries, ChainComplex total);

    Basis basis() const { return basis_; }
    const ComplexPtr& base() const { return base_; }
    const std::vector<TwistedEntry>& entries() const { return entries_; }
    const ChainComplex& total() const { return total_; }

    /// Block of entry e in total degree n.
    BlockLoc entry_block(std::size_t e, int n) const;
    /// Entry owning basis vector i of total degree n.
    std::size_t owner(int n, std::size_t i) const;
    SimplexId owner_simplex(int n, std::size_t i) const { return entries_[owner(n, i)].simplex; }
    /// Differential component from entry `from` (degree n) to entry `to` (degree n + 1).
    Matrix component(std::size_t from, std::size_t to, int n) const;
    /// Σ over entries of (-1)^shift χ(multiplicity), per simplex (zeros omitted).
    std::map<SimplexId, long> k0() const;
    std::size_t size() const { return entries_.size(); }

private:
    Basis basis_ = Basis::standard;
    ComplexPtr base_;
    std::vector<TwistedEntry> entries_;
    ChainComplex total_;
    std::vector<ChainComplex> shifted_;                // multiplicity[shift] per entry
    std::map<int, std::vector<std::size_t>> offsets_;  // degree -> entry offsets (size entries + 1)
};

/// Assembles a twisted complex from entries and connecting components.
class TwistedBuilder {
public:
    TwistedBuilder(Basis basis, ComplexPtr base) : basis_(basis), base_(std::move(base)) {}
    std::size_t add_entry(SimplexId simplex, int shift, ChainComplex multiplicity);
    /// `blocks[n]` maps degree n of multiplicity[shift] of `from` to degree n + 1 of `to`.
    void connect(std::size_t from, std::size_t to, const GradedMatrix& blocks);
    TwistedComplex build() const;

private:
    Basis basis_;
    ComplexPtr base_;
    std::vector<TwistedEntry> entries_;
    std::vector<std::tuple<std::size_t, std::size_t, GradedMatrix>> links_;
};

/// Regroups a flat complex whose basis vectors carry simplex labels into a
/// twisted complex with one entry per simplex (shift 0), ordered by
/// decreasing dimension for the standard basis and increasing otherwise.
TwistedComplex twisted_from_labels(Basis basis, const ComplexPtr& base, const ChainComplex& flat,
                                   const std::map<int, std::vector<SimplexId>>& labels);

/// Cancels every differential component between two basis vectors with the
/// same simplex label. The result has one entry per (simplex, degree), with
/// zero internal differential.
TwistedComplex minimize(const TwistedComplex& t);

/// Sheaf complex realized by a twisted complex: standard entries use the
/// sheaves Q on closed simplices, costandard entries use D(Q on closed simplex).
SheafComplex totalize(const TwistedComplex& t);
/// Realization of a map of standard twisted complexes given in flat form.
SheafMap totalize_map(const TwistedComplex& source, const TwistedComplex& target, const GradedMatrix& flat);

/// Standard twisted complex with entries std(a) ⊗ M(a)[dim a], connected by
/// [a':a] times the given maps M(a) -> M(a') for covering pairs a' ⋖ a.
TwistedComplex standard_model(const ComplexPtr& base, const std::vector<ChainComplex>& values,
                              const std::map<std::pair<SimplexId, SimplexId>, GradedMatrix>& restrictions);

/// Standard model of F built from its costalks RΓ_c(star a, F).
TwistedComplex koszul_model(const SheafComplex& f);
/// Flat map Koszul(F) -> Koszul(G) induced by u: F -> G.
GradedMatrix koszul_model_map(const SheafMap& u, const TwistedComplex& source, const TwistedComplex& target);
/// Canonical quasi-isomorphism F -> totalize(koszul_model(F)): x in F(σ) goes
/// to Σ_{ρ≥σ} ±(ρ_{σρ} x) placed in the entry of ρ.
SheafMap koszul_comparison(const SheafComplex& f);

/// Minimal standard presentation of F.
TwistedComplex decompose_standard(const SheafComplex& f);
/// Costandard presentation: entries costd(τ) ⊗ F(τ)[-dim τ], cellular differential.
TwistedComplex decompose_costandard(const SheafComplex& f);
/// Standard twisted complex whose totalization is the Verdier dual of F.
TwistedComplex verdier_dual_twisted(const SheafComplex& f);

/// Moves every entry of a standard twisted complex along f.
TwistedComplex pushforward_twisted(const SimplicialMap& f, const TwistedComplex& t);
/// Internal hom from a sheaf into a standard twisted complex, again standard.
TwistedComplex sheaf_hom_twisted(const SheafComplex& k, const TwistedComplex& g);

}  // namespace cellsheaf
