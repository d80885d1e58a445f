#include <gtest/gtest.h>

#include "cellsheaf/fixtures.hpp"
#include "cellsheaf/twisted.hpp"
#include "support.hpp"

using namespace cellsheaf;

TEST(Twisted, BuilderRejectsComponentsAgainstTheOrder) {
    ComplexPtr i = fixture("I");
    SimplexId a = i->vertex_simplex(0), e = i->size() - 1;
    ChainComplex q = ChainComplex::concentrated(0, 1);
    {
        TwistedBuilder b(Basis::standard, i);
        auto x = b.add_entry(e, 0, q), y = b.add_entry(a, -1, q);
        b.connect(x, y, {{0, Matrix::identity(1)}});
        EXPECT_NO_THROW(b.build());
    }
    {
        TwistedBuilder b(Basis::standard, i);
        auto x = b.add_entry(a, 0, q), y = b.add_entry(e, -1, q);
        b.connect(x, y, {{0, Matrix::identity(1)}});
        EXPECT_THROW(b.build(), std::invalid_argument);
    }
}

TEST(Twisted, DecompositionsRoundTrip) {
    for (const auto& name : fixture_names()) {
        ComplexPtr k = fixture(name);
        for (const auto& f : random_suite(k, 51, 10)) {
            EXPECT_TRUE(equivalent(totalize(decompose_standard(f)), f)) << name;
            EXPECT_TRUE(equivalent(totalize(decompose_costandard(f)), f)) << name;
            EXPECT_TRUE(is_quasi_iso(koszul_comparison(f))) << name;
        }
    }
}

TEST(Twisted, MinimalPresentationHasNoSameSimplexComponents) {
    for (const auto& name : fixture_names()) {
        ComplexPtr k = fixture(name);
        for (const auto& f : random_suite(k, 52, 10)) {
            TwistedComplex t = decompose_standard(f);
            const ChainComplex& c = t.total();
            for (int n = c.lo(); n < c.hi(); ++n) {
                const Matrix& d = c.d(n);
                for (std::size_t r = 0; r < d.rows(); ++r)
                    for (const auto& [col, v] : d.row(r)) EXPECT_NE(t.owner_simplex(n, col), t.owner_simplex(n + 1, r));
            }
        }
    }
}

// RHom(costd(b), std(a)) is one-dimensional exactly when a = b and zero
// otherwise, so the multiplicity of std(τ) in a minimal presentation is the
// total dimension of RHom(costd(τ), F).
TEST(Twisted, MinimalMultiplicitiesMatchHomFromCostandards) {
    for (const char* name : {"I", "C3", "D2"}) {
        ComplexPtr k = fixture(name);
        for (const auto& f : random_suite(k, 53, 6)) {
            TwistedComplex t = decompose_standard(f);
            std::vector<long> mult(k->size(), 0);
            for (const auto& e : t.entries()) mult[e.simplex] += static_cast<long>(e.multiplicity.total_dim());
            for (SimplexId s = 0; s < k->size(); ++s)
                EXPECT_EQ(mult[s], oracle::total(oracle::cohomology(rhom_global(costandard_simplex(k, s), f)))) << name;
        }
    }
}

TEST(Twisted, BasisObjectsDecomposeToOneEntry) {
    for (const auto& name : fixture_names()) {
        ComplexPtr k = fixture(name);
        for (SimplexId s = 0; s < k->size(); ++s) {
            auto st = decompose_standard(standard_simplex(k, s));
            ASSERT_EQ(st.entries().size(), 1u);
            EXPECT_EQ(st.entries()[0].simplex, s);
            auto co = decompose_costandard(costandard_simplex(k, s));
            ASSERT_EQ(co.entries().size(), 1u);
            EXPECT_EQ(co.entries()[0].simplex, s);
        }
    }
}

TEST(Twisted, StandardModelOfASingleValue) {
    // one value Q on τ and nothing else is std(τ) shifted by dim τ
    for (const auto& name : fixture_names()) {
        ComplexPtr k = fixture(name);
        for (SimplexId t = 0; t < k->size(); ++t) {
            std::vector<ChainComplex> values(k->size());
            values[t] = ChainComplex::concentrated(0, 1);
            SheafComplex g = totalize(standard_model(k, values, {}));
            for (SimplexId s = 0; s < k->size(); ++s) {
                std::map<int, std::size_t> want;
                if (k->is_face(s, t)) want[-k->dim(t)] = 1;
                EXPECT_EQ(oracle::cohomology(g.stalk(s)), want) << name;
            }
        }
    }
}

TEST(Twisted, PushforwardAlongIdentityIsTrivial) {
    ComplexPtr k = fixture("D2");
    for (const auto& f : random_suite(k, 54, 5)) {
        TwistedComplex t = decompose_standard(f);
        EXPECT_TRUE(equivalent(totalize(pushforward_twisted(SimplicialMap::identity(k), t)), f));
    }
}

TEST(Twisted, KoszulModelIsFunctorial) {
    ComplexPtr k = fixture("I");
    for (const auto& f : random_suite(k, 55, 5)) {
        TwistedComplex t = koszul_model(f);
        SheafMap id = totalize_map(t, t, koszul_model_map(SheafMap::identity(f), t, t));
        EXPECT_TRUE(is_quasi_iso(id));
    }
}

TEST(Twisted, DualTwistedRealizesVerdierDual) {
    for (const auto& name : fixture_names()) {
        ComplexPtr k = fixture(name);
        for (const auto& f : random_suite(k, 56, 5))
            EXPECT_TRUE(equivalent(totalize(verdier_dual_twisted(f)), verdier_dual(f))) << name;
    }
}
