#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cellsheaf/rational.hpp"

namespace cellsheaf {

/// Sparse vector: (index, value) pairs sorted by index, no stored zeros.
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

/// a + c * b
SparseVec axpy(const SparseVec& a, const Rational& c, const SparseVec& b);
SparseVec scaled(const SparseVec& v, const Rational& c);
Rational entry(const SparseVec& v, std::size_t index);
std::vector<Rational> densify(const SparseVec& v, std::size_t n);
SparseVec sparsify(const std::vector<Rational>& v);

struct Triplet {
    std::size_t row;
    std::size_t col;
    Rational value;
};

/// Sparse row-major matrix over the rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);
    static Matrix from_dense(const std::vector<std::vector<Rational>>& rows, std::size_t cols);
    /// Duplicate positions are summed.
    static Matrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);
    static Matrix from_rows(std::size_t cols, std::vector<SparseVec> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const;
    bool is_zero() const;
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Rational at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Rational& v);
    void add_to(std::size_t r, std::size_t c, const Rational& v);
    const SparseVec& row(std::size_t r) const { return data_[r]; }
    void set_row(std::size_t r, SparseVec v);

    Matrix transpose() const;
    SparseVec apply(const SparseVec& x) const;
    std::vector<std::vector<Rational>> to_dense() const;
    Matrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
    /// Writes `block` with its top-left corner at (r0, c0), adding to existing entries.
    void add_block(std::size_t r0, std::size_t c0, const Matrix& block, const Rational& scale = Rational(1));

    Matrix operator-() const;
    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(const Rational& s);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
    friend Matrix operator*(const Rational& s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    std::string str() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<SparseVec> data_;
};

/// Kronecker product; index (i, j) of the result is i * b.rows() + j.
Matrix kron(const Matrix& a, const Matrix& b);
Matrix block_diagonal(const std::vector<Matrix>& blocks);

/// Incremental row echelon form over the rationals. Each stored row has
/// leading coefficient 1 at its pivot; pivots are the lowest nonzero index.
class Echelon {
public:
    explicit Echelon(std::size_t width = 0) : width_(width) {}

    /// Reduces `v` against the stored rows (leading-entry elimination).
    SparseVec reduce(SparseVec v) const;
    /// Inserts `v`; returns false if it was already in the span.
    bool insert(SparseVec v);
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    std::size_t size() const { return rows_.size(); }
    std::size_t width() const { return width_; }
    const std::map<std::size_t, SparseVec>& rows() const { return rows_; }
    /// Fully reduced rows, ordered by pivot.
    std::vector<SparseVec> reduced_rows() const;

private:
    std::size_t width_;
    std::map<std::size_t, SparseVec> rows_;
};

/// Rank via fraction-free elimination on integer-scaled rows.
std::size_t rank(const Matrix& m);
/// Basis of {x : m x = 0}: one vector per free column, in increasing column order,
/// with a 1 at that column.
std::vector<SparseVec> kernel_basis(const Matrix& m);
/// Some x with a x = b, or nothing if b is not in the column space.
std::optional<SparseVec> solve(const Matrix& a, const SparseVec& b);
/// Inverse of a square invertible matrix; throws std::domain_error otherwise.
Matrix inverse(const Matrix& m);

}  // namespace cellsheaf
