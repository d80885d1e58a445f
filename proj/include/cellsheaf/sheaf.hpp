#pragma once

#include <map>
#include <utility>
#include <vector>

#include "cellsheaf/chain_complex.hpp"
#include "cellsheaf/simplicial.hpp"

namespace cellsheaf {

/// Bounded complex of cellular sheaves: a cochain complex per simplex and a
/// generization chain map F(σ) -> F(τ) for every face pair σ ≤ τ.
class SheafComplex {
public:
    using Covers = std::map<std::pair<SimplexId, SimplexId>, GradedMatrix>;

    SheafComplex() = default;
    /// `cover_maps` holds the degree-0 maps for covering pairs (facet, simplex);
    /// missing pairs are zero. Composites are derived and checked for
    /// functoriality. Throws std::invalid_argument.
    SheafComplex(ComplexPtr base, std::vector<ChainComplex> stalks, const Covers& cover_maps);

    const ComplexPtr& base() const { return base_; }
    const SimplicialComplex& complex() const { return *base_; }
    std::size_t size() const { return stalks_.size(); }
    const ChainComplex& stalk(SimplexId s) const { return stalks_.at(s); }
    const std::vector<ChainComplex>& stalks() const { return stalks_; }
    /// Generization blocks for a ≤ b (identity blocks when a == b).
    const GradedMatrix& generization(SimplexId a, SimplexId b) const;
    ChainMap generization_map(SimplexId a, SimplexId b) const;
    /// The cover maps this sheaf was built from.
    Covers cover_maps() const;

    bool is_zero() const;
    /// Lowest and highest degree over all stalks; lo > hi when zero.
    int lo() const;
    int hi() const;

private:
    ComplexPtr base_;
    std::vector<ChainComplex> stalks_;
    std::map<std::pair<SimplexId, SimplexId>, GradedMatrix> maps_;  // strict pairs a < b
    std::vector<GradedMatrix> identities_;
};

/// Degree-0 morphism of sheaf complexes, one chain map per simplex.
class SheafMap {
public:
    SheafMap() = default;
    /// Throws std::invalid_argument if a component is not a chain map or the
    /// components do not commute with generization.
    SheafMap(SheafComplex source, SheafComplex target, std::vector<GradedMatrix> components);

    static SheafMap identity(const SheafComplex& f);
    static SheafMap zero(const SheafComplex& source, const SheafComplex& target);

    const SheafComplex& source() const { return source_; }
    const SheafComplex& target() const { return target_; }
    const GradedMatrix& component(SimplexId s) const { return components_.at(s); }
    ChainMap component_map(SimplexId s) const;

private:
    SheafComplex source_;
    SheafComplex target_;
    std::vector<GradedMatrix> components_;
};

SheafMap compose(const SheafMap& g, const SheafMap& f);
SheafMap operator+(const SheafMap& f, const SheafMap& g);
SheafMap operator*(const Rational& s, const SheafMap& f);

/// Graded-matrix helpers; blocks are composed degree by degree.
GradedMatrix compose_blocks(const GradedMatrix& g, const GradedMatrix& f, const ChainComplex& a, const ChainComplex& b,
                            const ChainComplex& c);
bool blocks_equal(const GradedMatrix& f, const GradedMatrix& g, const ChainComplex& a, const ChainComplex& b);

SheafComplex zero_sheaf(const ComplexPtr& k);
SheafComplex constant_sheaf(const ComplexPtr& k, int degree = 0);
/// Q on a locally closed set with identity maps inside it, placed in `degree`.
SheafComplex constant_on(const ComplexPtr& k, const SimplexSet& s, int degree = 0);
/// Q on the faces of τ.
SheafComplex standard_simplex(const ComplexPtr& k, SimplexId tau);
/// Q at τ alone, in degree -dim τ.
SheafComplex costandard_simplex(const ComplexPtr& k, SimplexId tau);
SheafComplex skyscraper(const ComplexPtr& k, SimplexId tau, int degree = 0);

/// F[k], stalkwise shift.
SheafComplex shift(const SheafComplex& f, int k);
SheafMap shift(const SheafMap& f, int k);
SheafComplex direct_sum(const std::vector<SheafComplex>& parts);
SheafMap direct_sum(const std::vector<SheafMap>& parts);
/// Stalkwise mapping cone.
SheafComplex cone(const SheafMap& f);
SheafMap cone_inclusion(const SheafMap& f);
/// Stalkwise tensor product.
SheafComplex tensor(const SheafComplex& f, const SheafComplex& g);
SheafMap tensor(const SheafMap& f, const SheafMap& g);
/// Conjugates each stalk by an invertible matrix per degree.
SheafComplex change_basis(const SheafComplex& f, const std::vector<std::map<int, Matrix>>& bases);

/// F restricted to a locally closed set and extended by zero.
SheafComplex extend_by_zero(const SheafComplex& f, const SimplexSet& s);
/// j_! j^* F for an open set.
SheafComplex extend_by_zero_open(const SheafComplex& f, const SimplexSet& open);
/// i_* i^* F for a closed set.
SheafComplex pushforward_closed(const SheafComplex& f, const SimplexSet& closed);
/// Restriction to a locally closed set, as a sheaf on the same base.
SheafComplex restrict(const SheafComplex& f, const SimplexSet& s);

/// Pullback along a simplicial map: (f^* G)(σ) = G(f(σ)).
SheafComplex pullback(const SimplicialMap& f, const SheafComplex& g);
SheafMap pullback(const SimplicialMap& f, const SheafMap& u);

/// Stalkwise cohomology dimensions.
std::vector<std::map<int, std::size_t>> stalk_cohomology(const SheafComplex& f);
/// Stalk cohomology sits in a single common degree (zero stalks allowed).
bool is_formal_pure(const SheafComplex& f);
/// Replaces a sheaf whose stalk cohomology sits in one degree by its
/// cohomology sheaf. Throws if the cohomology is spread over several degrees.
SheafComplex formalize(const SheafComplex& f);

/// Stalkwise quasi-isomorphism of a map.
bool is_quasi_iso(const SheafMap& f);

}  // namespace cellsheaf
