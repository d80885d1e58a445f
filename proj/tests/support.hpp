#pragma once

// Test-only oracles. Nothing here calls the library's elimination code.

#include <map>
#include <utility>
#include <vector>

#include "cellsheaf/random.hpp"
#include "cellsheaf/sheaf.hpp"

namespace oracle {

using cellsheaf::ChainComplex;
using cellsheaf::Matrix;
using cellsheaf::Rational;

using Dense = std::vector<std::vector<Rational>>;

inline Dense dense(const Matrix& m) {
    Dense d(m.rows(), std::vector<Rational>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r)) d[r][c] = v;
    return d;
}

// Textbook row reduction on a dense copy.
inline std::size_t rank(Dense m) {
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Rational f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

inline std::size_t rank(const Matrix& m) { return oracle::rank(dense(m)); }

inline std::map<int, std::size_t> cohomology(const ChainComplex& c) {
    std::map<int, std::size_t> out;
    if (c.is_zero()) return out;
    for (int n = c.lo(); n <= c.hi(); ++n) {
        std::size_t h = c.dim(n) - oracle::rank(c.d(n)) - oracle::rank(c.d(n - 1));
        if (h) out[n] = h;
    }
    return out;
}

inline std::map<int, std::size_t> nonzero(const std::map<int, std::size_t>& m) {
    std::map<int, std::size_t> out;
    for (const auto& [k, v] : m)
        if (v) out[k] = v;
    return out;
}

// Elementary pieces: `singles[n]` copies of Q in degree n and `pairs[n]`
// copies of Q --1--> Q from degree n to n + 1, then a random change of basis
// in every degree. Cohomology is `singles` by construction.
struct Planted {
    ChainComplex complex;
    std::map<int, std::size_t> cohomology;
};

inline std::pair<Matrix, Matrix> unimodular_pair(std::size_t n, cellsheaf::Rng& rng) {
    Matrix b = Matrix::identity(n), inv = Matrix::identity(n);
    if (n < 2) return {b, inv};
    for (std::size_t s = 0; s < 2 * n; ++s) {
        auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
        auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
        if (i == j) continue;
        Rational c(rng.uniform(-2, 2));
        // E = I + c e_ij; b <- E b, inv <- inv E^{-1}
        b.set_row(i, cellsheaf::axpy(b.row(i), c, b.row(j)));
        Matrix e = Matrix::identity(n);
        e.set(i, j, -c);
        inv = inv * e;
    }
    return {b, inv};
}

inline Planted planted_complex(cellsheaf::Rng& rng, int lo, int hi, long max_singles = 2, long max_pairs = 2) {
    std::map<int, std::size_t> singles, pairs, dims;
    for (int n = lo; n <= hi; ++n) {
        singles[n] = static_cast<std::size_t>(rng.uniform(0, max_singles));
        if (n < hi) pairs[n] = static_cast<std::size_t>(rng.uniform(0, max_pairs));
    }
    for (int n = lo; n <= hi; ++n) dims[n] = singles[n] + pairs[n] + (n > lo ? pairs[n - 1] : 0);
    // basis of degree n: singles, then sources of pairs[n], then targets of pairs[n-1]
    std::map<int, Matrix> d;
    for (int n = lo; n < hi; ++n) {
        Matrix m(dims[n + 1], dims[n]);
        for (std::size_t k = 0; k < pairs[n]; ++k) m.set(singles[n + 1] + pairs[n + 1] + k, singles[n] + k, Rational(1));
        d[n] = m;
    }
    std::map<int, std::pair<Matrix, Matrix>> basis;
    for (int n = lo; n <= hi; ++n) basis[n] = unimodular_pair(dims[n], rng);
    std::map<int, Matrix> twisted;
    for (int n = lo; n < hi; ++n) twisted[n] = basis[n + 1].first * d[n] * basis[n].second;
    Planted p{ChainComplex(dims, twisted), {}};
    for (const auto& [n, s] : singles)
        if (s) p.cohomology[n] = s;
    return p;
}

// H^0 of global sections of a sheaf concentrated in degree 0: families
// (x_σ) with ρ_{στ} x_σ = x_τ on every covering pair.
inline std::size_t sections_h0(const cellsheaf::SheafComplex& f) {
    const auto& k = f.complex();
    std::vector<std::size_t> off(k.size() + 1, 0);
    for (std::size_t s = 0; s < k.size(); ++s) off[s + 1] = off[s] + f.stalk(s).dim(0);
    Dense rows;
    for (std::size_t b = 0; b < k.size(); ++b)
        for (std::size_t a : k.facets(b)) {
            Matrix rho = f.generization_map(a, b).at(0);
            for (std::size_t i = 0; i < f.stalk(b).dim(0); ++i) {
                std::vector<Rational> row(off.back());
                for (std::size_t j = 0; j < f.stalk(a).dim(0); ++j)
                    if (rho.rows()) row[off[a] + j] = rho.at(i, j);
                row[off[b] + i] -= Rational(1);
                rows.push_back(row);
            }
        }
    return off.back() - (rows.empty() ? 0 : oracle::rank(rows));
}

inline long total(const std::map<int, std::size_t>& m) {
    long t = 0;
    for (const auto& [k, v] : m) t += static_cast<long>(v);
    return t;
}

}  // namespace oracle
