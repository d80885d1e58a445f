#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "cellsheaf/matrix.hpp"

namespace cellsheaf {

/// Per-degree matrices of a graded linear map. Entry n maps source degree n
/// to target degree n + (map degree). Missing entries are zero.
using GradedMatrix = std::map<int, Matrix>;

/// Bounded cochain complex of finite-dimensional rational vector spaces.
/// Differentials raise degree by one.
class ChainComplex {
public:
    ChainComplex() = default;
    /// `differentials[n]` maps degree n to degree n + 1. Throws
    /// std::invalid_argument on shape errors or when d∘d ≠ 0.
    ChainComplex(const std::map<int, std::size_t>& dims, const std::map<int, Matrix>& differentials);

    static ChainComplex concentrated(int degree, std::size_t dim);
    static ChainComplex zero() { return {}; }

    std::size_t dim(int n) const;
    /// Differential from degree n to n + 1 (possibly an empty matrix).
    const Matrix& d(int n) const;

    /// Lowest and highest degree with nonzero dimension; lo() > hi() when zero.
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
    bool is_zero() const { return dims_.empty(); }
    std::size_t total_dim() const;
    std::map<int, std::size_t> dims() const;

    friend bool operator==(const ChainComplex& a, const ChainComplex& b);
    friend bool operator!=(const ChainComplex& a, const ChainComplex& b) { return !(a == b); }

    std::string str() const;

private:
    int lo_ = 0;
    std::vector<std::size_t> dims_;  // degrees lo_ .. hi()
    std::vector<Matrix> diffs_;      // degrees lo_-1 .. hi(); first and last touch zero spaces
};

/// Homogeneous map of graded spaces commuting with differentials up to the
/// sign (-1)^degree: d f = (-1)^k f d.
class ChainMap {
public:
    ChainMap() = default;
    ChainMap(ChainComplex source, ChainComplex target, int degree, GradedMatrix blocks);

    static ChainMap identity(const ChainComplex& c);
    static ChainMap zero(const ChainComplex& source, const ChainComplex& target, int degree = 0);

    const ChainComplex& source() const { return source_; }
    const ChainComplex& target() const { return target_; }
    int degree() const { return degree_; }
    /// Block from source degree n; an empty-shaped zero matrix when absent.
    Matrix at(int n) const;
    const GradedMatrix& blocks() const { return blocks_; }

    friend bool operator==(const ChainMap& a, const ChainMap& b);

private:
    ChainComplex source_;
    ChainComplex target_;
    int degree_ = 0;
    GradedMatrix blocks_;
};

/// Sum of two maps with identical source, target and degree.
ChainMap operator+(const ChainMap& f, const ChainMap& g);
ChainMap operator*(const Rational& s, const ChainMap& f);
/// g after f.
ChainMap compose(const ChainMap& g, const ChainMap& f);
/// True if the graded matrices satisfy d f = (-1)^k f d with matching shapes.
bool is_chain_map(const ChainComplex& source, const ChainComplex& target, int degree, const GradedMatrix& blocks);

/// C[k]^n = C^{n+k}, differential multiplied by (-1)^k.
ChainComplex shift(const ChainComplex& c, int k);
/// Shifts both ends of a degree-0 map by k; the blocks are unchanged.
ChainMap shift(const ChainMap& f, int k);

ChainComplex direct_sum(const std::vector<ChainComplex>& parts);
ChainMap direct_sum(const std::vector<ChainMap>& parts);

/// Mapping cone of a degree-0 map f: A -> B.
/// cone^n = A^{n+1} ⊕ B^n, d(a, b) = (-d_A a, f a + d_B b).
ChainComplex cone(const ChainMap& f);
/// B -> cone(f), b ↦ (0, b).
ChainMap cone_inclusion(const ChainMap& f);
/// cone(f) -> A[1], (a, b) ↦ a.
ChainMap cone_projection(const ChainMap& f);

/// Tensor product with Koszul sign: d(c ⊗ e) = dc ⊗ e + (-1)^p c ⊗ de.
/// Degree n is ⊕_{p+q=n} C^p ⊗ D^q, p ascending, Kronecker order inside.
ChainComplex tensor(const ChainComplex& c, const ChainComplex& d);
/// Tensor product of two degree-0 maps.
ChainMap tensor(const ChainMap& f, const ChainMap& g);

/// Hom^n = ⊕_p Hom(C^p, D^{p+n}), p ascending, each block vectorized row-major.
/// (d f) = d_D f - (-1)^n f d_C.
ChainComplex hom_complex(const ChainComplex& c, const ChainComplex& d);
/// Placement of the blocks Hom(C^p, D^{p+n}) inside hom_complex(C, D).
struct HomLayout {
    std::map<std::pair<int, int>, std::size_t> offset;  // (p, n) -> offset in degree n
    std::map<int, std::size_t> dims;
};
HomLayout hom_layout(const ChainComplex& c, const ChainComplex& d);
/// Blocks of φ ↦ post ∘ φ ∘ pre from hom_complex(A, B) to hom_complex(A2, B2),
/// where pre: A2 -> A and post: B -> B2 are degree-0 graded matrices.
GradedMatrix hom_map_blocks(const ChainComplex& a2, const ChainComplex& a, const ChainComplex& b,
                            const ChainComplex& b2, const GradedMatrix& pre, const GradedMatrix& post);
/// Linear dual, the hom complex into Q placed in degree 0.
ChainComplex dual(const ChainComplex& c);
/// Dual of a degree-0 map: transposed blocks, reversed direction.
ChainMap dual(const ChainMap& f);

/// Dimensions of cohomology, only nonzero degrees.
std::map<int, std::size_t> cohomology_dims(const ChainComplex& c);
bool is_acyclic(const ChainComplex& c);
long euler_characteristic(const ChainComplex& c);
/// True when the cone of the degree-0 map is acyclic.
bool is_quasi_iso(const ChainMap& f);

/// Cohomology with chosen representative cocycles.
struct Cohomology {
    std::map<int, std::size_t> dims;
    std::map<int, std::vector<SparseVec>> representatives;
    /// Boundaries of degree n (image of the incoming differential), as vectors.
    std::map<int, std::vector<SparseVec>> boundaries;

    /// Coordinates of the class of cocycle `z` in degree n with respect to the
    /// chosen representatives. Throws if `z` is not a cocycle combination.
    std::vector<Rational> coordinates(int n, const SparseVec& z) const;
};

Cohomology cohomology(const ChainComplex& c);
/// Matrix of the map induced on cohomology in degree n (degree-0 maps).
Matrix induced_on_cohomology(const ChainMap& f, const Cohomology& hs, const Cohomology& ht, int n);

/// Position of a block of basis vectors inside a complex.
struct BlockLoc {
    int degree = 0;
    std::size_t offset = 0;
    std::size_t dim = 0;
};

/// Identity-on-blocks map: copies each source block to the target block with
/// the same key. Keys missing on one side are dropped.
template <class Key>
ChainMap block_projection(const ChainComplex& source, const std::map<Key, BlockLoc>& source_blocks,
                          const ChainComplex& target, const std::map<Key, BlockLoc>& target_blocks) {
    std::map<int, std::vector<Triplet>> trip;
    for (const auto& [key, t] : target_blocks) {
        auto it = source_blocks.find(key);
        if (it == source_blocks.end()) continue;
        const BlockLoc& s = it->second;
        for (std::size_t k = 0; k < t.dim; ++k) trip[t.degree].push_back({t.offset + k, s.offset + k, Rational(1)});
    }
    GradedMatrix blocks;
    for (auto& [n, tr] : trip) blocks[n] = Matrix::from_triplets(target.dim(n), source.dim(n), std::move(tr));
    return ChainMap(source, target, 0, std::move(blocks));
}

/// Builds a complex from labelled blocks placed in given degrees.
class GradedAssembler {
public:
    /// Registers a block of dimension `dim` in degree `degree`; returns its id.
    std::size_t add_block(int degree, std::size_t dim);
    /// Adds scale * m to the differential component from block `from` to block `to`.
    void add(std::size_t from, std::size_t to, const Matrix& m, const Rational& scale = Rational(1));
    void add_entry(std::size_t from, std::size_t to, std::size_t row, std::size_t col, const Rational& v);

    int degree(std::size_t block) const { return blocks_.at(block).degree; }
    std::size_t offset(std::size_t block) const { return blocks_.at(block).offset; }
    std::size_t dim(std::size_t block) const { return blocks_.at(block).dim; }
    BlockLoc loc(std::size_t block) const { return {blocks_.at(block).degree, blocks_.at(block).offset, blocks_.at(block).dim}; }
    std::size_t block_count() const { return blocks_.size(); }
    std::size_t dim_in_degree(int n) const;

    /// Throws std::invalid_argument when the result is not a complex.
    ChainComplex build() const;

private:
    struct Block {
        int degree;
        std::size_t dim;
        std::size_t offset;
    };
    std::vector<Block> blocks_;
    std::map<int, std::size_t> degree_dims_;
    std::map<int, std::vector<Triplet>> entries_;
};

/// Bigraded complex with horizontal and vertical differentials that
/// anticommute; total degree is p + q.
struct DoubleComplex {
    std::map<std::pair<int, int>, std::size_t> dims;
    /// (p, q) -> (p + 1, q)
    std::map<std::pair<int, int>, Matrix> horizontal;
    /// (p, q) -> (p, q + 1)
    std::map<std::pair<int, int>, Matrix> vertical;
};

/// Total complex, blocks ordered by p within each total degree. Throws if the
/// squares do not anticommute.
ChainComplex total_complex(const DoubleComplex& dc);

}  // namespace cellsheaf
