#include <gtest/gtest.h>

#include "cellsheaf/chain_complex.hpp"
#include "support.hpp"

using namespace cellsheaf;

namespace {

std::map<int, std::size_t> kunneth(const std::map<int, std::size_t>& a, const std::map<int, std::size_t>& b) {
    std::map<int, std::size_t> out;
    for (const auto& [p, x] : a)
        for (const auto& [q, y] : b) out[p + q] += x * y;
    return out;
}

std::map<int, std::size_t> hom_dims(const std::map<int, std::size_t>& a, const std::map<int, std::size_t>& b) {
    std::map<int, std::size_t> out;
    for (const auto& [p, x] : a)
        for (const auto& [q, y] : b) out[q - p] += x * y;
    return out;
}

long chi(const std::map<int, std::size_t>& h) {
    long c = 0;
    for (const auto& [n, v] : h) c += (n % 2 == 0 ? 1 : -1) * static_cast<long>(v);
    return c;
}

}  // namespace

TEST(ChainComplex, RejectsNonComplexes) {
    Matrix one = Matrix::identity(1);
    EXPECT_THROW(ChainComplex({{0, 1}, {1, 1}, {2, 1}}, {{0, one}, {1, one}}), std::invalid_argument);
    EXPECT_THROW(ChainComplex({{0, 1}, {1, 2}}, {{0, one}}), std::invalid_argument);
}

TEST(ChainComplex, CohomologyOfPlantedComplexes) {
    Rng rng(21);
    for (int t = 0; t < 150; ++t) {
        auto p = oracle::planted_complex(rng, -2, 2);
        EXPECT_EQ(cohomology_dims(p.complex), p.cohomology);
        EXPECT_EQ(oracle::cohomology(p.complex), p.cohomology);
    }
}

TEST(ChainComplex, ShiftMovesCohomology) {
    Rng rng(22);
    for (int t = 0; t < 30; ++t) {
        auto p = oracle::planted_complex(rng, -1, 2);
        for (int k : {-2, 1, 3}) {
            std::map<int, std::size_t> expect;
            for (const auto& [n, v] : p.cohomology) expect[n - k] = v;
            EXPECT_EQ(cohomology_dims(shift(p.complex, k)), expect);
        }
    }
}

TEST(ChainComplex, TensorAndHomFollowKunneth) {
    Rng rng(23);
    for (int t = 0; t < 40; ++t) {
        auto a = oracle::planted_complex(rng, -1, 1), b = oracle::planted_complex(rng, 0, 2);
        EXPECT_EQ(cohomology_dims(tensor(a.complex, b.complex)), kunneth(a.cohomology, b.cohomology));
        EXPECT_EQ(oracle::nonzero(cohomology_dims(hom_complex(a.complex, b.complex))),
                  oracle::nonzero(hom_dims(a.cohomology, b.cohomology)));
        EXPECT_EQ(oracle::nonzero(cohomology_dims(dual(a.complex))),
                  oracle::nonzero(hom_dims(a.cohomology, {{0, 1}})));
    }
}

TEST(ChainComplex, HomTensorAdjunctionOnDimensions) {
    Rng rng(24);
    for (int t = 0; t < 20; ++t) {
        auto a = oracle::planted_complex(rng, 0, 1, 1, 1), b = oracle::planted_complex(rng, 0, 1, 1, 1),
             c = oracle::planted_complex(rng, -1, 1, 1, 1);
        EXPECT_EQ(cohomology_dims(hom_complex(tensor(a.complex, b.complex), c.complex)),
                  cohomology_dims(hom_complex(a.complex, hom_complex(b.complex, c.complex))));
    }
}

TEST(ChainComplex, ConeIsAdditiveInEulerCharacteristic) {
    Rng rng(25);
    for (int t = 0; t < 60; ++t) {
        auto a = oracle::planted_complex(rng, -1, 1);
        ChainMap f = rng.coin() ? ChainMap::identity(a.complex) : ChainMap::zero(a.complex, a.complex);
        ChainComplex c = cone(f);
        EXPECT_EQ(euler_characteristic(c), euler_characteristic(a.complex) - euler_characteristic(a.complex));
        EXPECT_EQ(chi(oracle::cohomology(c)), 0);
        if (f == ChainMap::identity(a.complex)) EXPECT_TRUE(is_acyclic(c));
    }
}

TEST(ChainComplex, ConeLongExactSequenceBoundsCohomology) {
    Rng rng(26);
    for (int t = 0; t < 40; ++t) {
        auto a = oracle::planted_complex(rng, -1, 1), b = oracle::planted_complex(rng, -1, 1);
        ChainMap f = ChainMap::zero(a.complex, b.complex);
        // zero map: H(cone) = H(A)[1] ⊕ H(B)
        std::map<int, std::size_t> expect = b.cohomology;
        for (const auto& [n, v] : a.cohomology) expect[n - 1] += v;
        EXPECT_EQ(cohomology_dims(cone(f)), oracle::nonzero(expect));
        ChainMap pr = cone_projection(f);
        EXPECT_TRUE(is_chain_map(pr.source(), pr.target(), 0, pr.blocks()));
        EXPECT_EQ(compose(cone_projection(f), cone_inclusion(f)),
                  ChainMap::zero(b.complex, shift(a.complex, 1)));
    }
}

TEST(ChainComplex, InducedMapOnCohomologyIsFunctorial) {
    Rng rng(27);
    for (int t = 0; t < 30; ++t) {
        auto a = oracle::planted_complex(rng, -1, 1);
        Cohomology h = cohomology(a.complex);
        ChainMap id = ChainMap::identity(a.complex);
        for (const auto& [n, v] : h.dims) EXPECT_EQ(induced_on_cohomology(id, h, h, n), Matrix::identity(v));
        ChainMap twice = Rational(2) * id;
        for (const auto& [n, v] : h.dims)
            EXPECT_EQ(induced_on_cohomology(compose(twice, twice), h, h, n), Matrix::identity(v) * Rational(4));
        EXPECT_TRUE(is_quasi_iso(twice));
    }
}

TEST(ChainComplex, TotalComplexOfAnticommutingSquare) {
    DoubleComplex dc;
    dc.dims = {{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}};
    Matrix one = Matrix::identity(1);
    dc.horizontal = {{{0, 0}, one}, {{0, 1}, one}};
    dc.vertical = {{{0, 0}, one}, {{1, 0}, -one}};
    ChainComplex tot = total_complex(dc);
    EXPECT_EQ(tot.dims(), (std::map<int, std::size_t>{{0, 1}, {1, 2}, {2, 1}}));
    EXPECT_TRUE(is_acyclic(tot));
    dc.vertical[{1, 0}] = one;
    EXPECT_THROW(total_complex(dc), std::invalid_argument);
}

TEST(ChainComplex, AssemblerRejectsDSquaredNonzero) {
    GradedAssembler g;
    auto a = g.add_block(0, 1), b = g.add_block(1, 1), c = g.add_block(2, 1);
    g.add(a, b, Matrix::identity(1));
    g.add(b, c, Matrix::identity(1));
    EXPECT_THROW(g.build(), std::invalid_argument);
}

TEST(ChainComplex, TensorOfMapsIsFunctorial) {
    Rng rng(28);
    auto a = oracle::planted_complex(rng, 0, 1), b = oracle::planted_complex(rng, -1, 0);
    ChainMap f = Rational(3) * ChainMap::identity(a.complex), g = ChainMap::identity(b.complex);
    EXPECT_EQ(tensor(f, g), Rational(3) * ChainMap::identity(tensor(a.complex, b.complex)));
}
