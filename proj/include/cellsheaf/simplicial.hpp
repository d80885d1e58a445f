#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cellsheaf {

using SimplexId = std::size_t;
using VertexList = std::vector<std::size_t>;

/// Finite abstract simplicial complex on a totally ordered vertex set.
/// Simplices are stored as increasing vertex lists, sorted by dimension and
/// then lexicographically; a SimplexId is the position in that order.
class SimplicialComplex {
public:
    SimplicialComplex() = default;
    /// Closes `maximal` under faces. Vertex order is the order of `vertex_names`.
    /// `simplex_names` attaches optional labels. Throws std::invalid_argument.
    SimplicialComplex(std::vector<std::string> vertex_names, const std::vector<VertexList>& maximal,
                      const std::map<std::string, VertexList>& simplex_names = {});

    /// Same, with simplices given by vertex names.
    static SimplicialComplex from_names(std::vector<std::string> vertex_names,
                                        const std::vector<std::vector<std::string>>& maximal,
                                        const std::map<std::string, std::vector<std::string>>& simplex_names = {});

    std::size_t num_vertices() const { return vertex_names_.size(); }
    std::size_t size() const { return simplices_.size(); }
    int dimension() const;
    const std::vector<std::string>& vertex_names() const { return vertex_names_; }
    std::size_t vertex_index(const std::string& name) const;

    const VertexList& vertices(SimplexId s) const { return simplices_.at(s); }
    int dim(SimplexId s) const { return static_cast<int>(simplices_.at(s).size()) - 1; }
    std::optional<SimplexId> find(const VertexList& v) const;
    SimplexId id(const VertexList& v) const;
    SimplexId vertex_simplex(std::size_t v) const { return id({v}); }
    /// Named simplex, or a simplex written as vertex names joined by commas.
    SimplexId parse_simplex(const std::string& text) const;
    std::string label(SimplexId s) const;
    const std::map<std::string, SimplexId>& simplex_names() const { return names_; }

    /// Codimension-one faces, in increasing id order.
    const std::vector<SimplexId>& facets(SimplexId s) const { return facets_.at(s); }
    /// Codimension-one cofaces, in increasing id order.
    const std::vector<SimplexId>& cofacets(SimplexId s) const { return cofacets_.at(s); }
    /// Face relation a ≤ b.
    bool is_face(SimplexId a, SimplexId b) const;
    /// Sign (-1)^i when a is b with its i-th vertex removed; 0 if a is not a facet of b.
    int incidence(SimplexId a, SimplexId b) const;
    /// All faces of s including s, increasing id.
    std::vector<SimplexId> faces(SimplexId s) const;
    /// All simplices containing s including s, increasing id.
    std::vector<SimplexId> star(SimplexId s) const;
    std::vector<SimplexId> maximal_simplices() const;

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b);
    friend bool operator!=(const SimplicialComplex& a, const SimplicialComplex& b) { return !(a == b); }

private:
    std::vector<std::string> vertex_names_;
    std::vector<VertexList> simplices_;
    std::map<VertexList, SimplexId> index_;
    std::vector<std::vector<SimplexId>> facets_;
    std::vector<std::vector<SimplexId>> cofacets_;
    std::map<std::string, SimplexId> names_;
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

ComplexPtr make_complex(SimplicialComplex k);
/// Same object or equal complexes.
bool same_complex(const ComplexPtr& a, const ComplexPtr& b);

/// Subset of simplices as a membership mask.
using SimplexSet = std::vector<bool>;

/// Face poset of a complex: simplices ordered by inclusion.
class FacePoset {
public:
    explicit FacePoset(ComplexPtr k) : k_(std::move(k)) {}
    const SimplicialComplex& complex() const { return *k_; }
    bool leq(SimplexId a, SimplexId b) const { return k_->is_face(a, b); }
    /// Strict chains σ0 < σ1 < ... inside `subset`, ordered by length then lexicographically.
    std::vector<std::vector<SimplexId>> chains(const SimplexSet& subset) const;
    std::vector<std::vector<SimplexId>> chains() const;
    /// Covering pairs (a, b) with a a facet of b.
    std::vector<std::pair<SimplexId, SimplexId>> covers() const;

    SimplexSet all() const { return SimplexSet(k_->size(), true); }
    SimplexSet none() const { return SimplexSet(k_->size(), false); }
    /// Upward closure (open set generated by the given simplices).
    SimplexSet up_closure(const SimplexSet& s) const;
    /// Downward closure (subcomplex generated by the given simplices).
    SimplexSet down_closure(const SimplexSet& s) const;
    SimplexSet star(SimplexId s) const;
    SimplexSet closure(SimplexId s) const;
    bool is_open(const SimplexSet& s) const;
    bool is_closed(const SimplexSet& s) const;
    /// Convex in the poset: a ≤ b ≤ c with a, c in s implies b in s.
    bool is_locally_closed(const SimplexSet& s) const;

private:
    ComplexPtr k_;
};

FacePoset face_poset(const ComplexPtr& k);
SimplexSet complement(const SimplexSet& s);
SimplexSet intersection(const SimplexSet& a, const SimplexSet& b);
std::vector<SimplexId> members(const SimplexSet& s);

/// Vertex map that sends simplices to simplices.
class SimplicialMap {
public:
    SimplicialMap() = default;
    /// Throws std::invalid_argument if some simplex has no image simplex.
    SimplicialMap(ComplexPtr source, ComplexPtr target, std::vector<std::size_t> vertex_map);

    static SimplicialMap identity(const ComplexPtr& k);

    const ComplexPtr& source() const { return source_; }
    const ComplexPtr& target() const { return target_; }
    const std::vector<std::size_t>& vertex_map() const { return vertex_map_; }
    SimplexId image(SimplexId s) const { return image_.at(s); }
    /// Simplices of the source mapping into the given target set.
    SimplexSet preimage(const SimplexSet& t) const;

private:
    ComplexPtr source_;
    ComplexPtr target_;
    std::vector<std::size_t> vertex_map_;
    std::vector<SimplexId> image_;
};

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);

/// Barycentric subdivision with its carrier map: vertices are the simplices of
/// the original complex in id order, simplices are chains.
struct Subdivision {
    ComplexPtr original;
    ComplexPtr complex;
    /// Original simplex carrying each new simplex (the top of its chain).
    std::vector<SimplexId> carrier;
};

Subdivision barycentric_subdivision(const ComplexPtr& k);

/// Staircase triangulation of K × L: vertices are pairs in lexicographic
/// order, simplices are chains in the product order whose projections are
/// simplices.
struct Product {
    ComplexPtr left;
    ComplexPtr right;
    ComplexPtr complex;
    SimplicialMap p0;
    SimplicialMap p1;
    /// vertex index of (v, w)
    std::size_t vertex(std::size_t v, std::size_t w) const { return v * right->num_vertices() + w; }
};

Product staircase_product(const ComplexPtr& k, const ComplexPtr& l);

/// Diagonal v ↦ (v, v) inside the staircase square.
struct DiagonalEmbedding {
    Product product;
    SimplicialMap embedding;
    SimplexSet image;
};

DiagonalEmbedding diagonal_subcomplex(const ComplexPtr& k);

/// Simplices disjoint from s whose join with s is in the complex.
SimplicialComplex link(const SimplicialComplex& k, SimplexId s);
/// Subcomplex generated by the given simplices, re-indexed as a complex in its own right.
SimplicialComplex subcomplex(const SimplicialComplex& k, const SimplexSet& closed);

}  // namespace cellsheaf
