#include <gtest/gtest.h>

#include "cellsheaf/derived.hpp"
#include "cellsheaf/fixtures.hpp"
#include "cellsheaf/random.hpp"
#include "support.hpp"

using namespace cellsheaf;

namespace {

std::size_t stalk_total(const SheafComplex& f, SimplexId s) {
    std::size_t t = 0;
    for (const auto& [n, v] : oracle::cohomology(f.stalk(s))) t += v;
    return t;
}

}  // namespace

TEST(Sheaf, RejectsNonFunctorialData) {
    ComplexPtr d2 = fixture("D2");
    std::vector<ChainComplex> stalks(d2->size(), ChainComplex::concentrated(0, 1));
    SheafComplex::Covers maps;
    for (auto [a, b] : face_poset(d2).covers()) maps[{a, b}] = {{0, Matrix::identity(1)}};
    EXPECT_NO_THROW(SheafComplex(d2, stalks, maps));
    // flip one edge-to-triangle map: the two routes from a vertex disagree
    SimplexId top = d2->size() - 1;
    maps[{d2->facets(top)[0], top}] = {{0, -Matrix::identity(1)}};
    EXPECT_THROW(SheafComplex(d2, stalks, maps), std::invalid_argument);
}

TEST(Sheaf, BasicObjectsHaveExpectedStalks) {
    for (const auto& name : fixture_names()) {
        ComplexPtr k = fixture(name);
        for (SimplexId t = 0; t < k->size(); ++t) {
            SheafComplex std_t = standard_simplex(k, t), costd_t = costandard_simplex(k, t);
            for (SimplexId s = 0; s < k->size(); ++s) {
                EXPECT_EQ(stalk_total(std_t, s), k->is_face(s, t) ? 1u : 0u);
                EXPECT_EQ(stalk_total(costd_t, s), s == t ? 1u : 0u);
            }
            EXPECT_EQ(oracle::cohomology(costd_t.stalk(t)), (std::map<int, std::size_t>{{-k->dim(t), 1}}));
        }
    }
}

TEST(Sheaf, GlobalSectionsOfConstantSheafCountComponents) {
    ComplexPtr two = make_complex(SimplicialComplex({"0", "1", "2", "3"}, {{0, 1}, {2, 3}}));
    SheafComplex c = constant_sheaf(two);
    EXPECT_EQ(oracle::sections_h0(c), 2u);
    EXPECT_EQ(cohomology_dims(sections(c)), (std::map<int, std::size_t>{{0, 2}}));
    for (const auto& name : fixture_names()) {
        SheafComplex f = constant_sheaf(fixture(name));
        EXPECT_EQ(oracle::sections_h0(f), cohomology_dims(sections(f))[0]) << name;
    }
}

TEST(Sheaf, SectionsAgreeWithOracleInDegreeZero) {
    for (const auto& name : fixture_names()) {
        ComplexPtr k = fixture(name);
        FacePoset p = face_poset(k);
        for (SimplexId t = 0; t < k->size(); ++t) {
            for (const SheafComplex& f : {standard_simplex(k, t), constant_on(k, p.star(t)), skyscraper(k, t)}) {
                auto h = cohomology_dims(sections(f));
                EXPECT_EQ(oracle::sections_h0(f), h.count(0) ? h.at(0) : 0u) << name << " " << t;
            }
        }
    }
}

TEST(Sheaf, ChangeOfBasisPreservesStalkCohomology) {
    Rng rng(31);
    for (const auto& name : fixture_names()) {
        ComplexPtr k = fixture(name);
        for (int t = 0; t < 5; ++t) {
            SheafComplex f = random_sheaf(k, rng);
            std::vector<std::map<int, Matrix>> bases(k->size());
            for (SimplexId s = 0; s < k->size(); ++s)
                for (int n = f.stalk(s).lo(); n <= f.stalk(s).hi(); ++n)
                    bases[s][n] = oracle::unimodular_pair(f.stalk(s).dim(n), rng).first;
            SheafComplex g = change_basis(f, bases);
            EXPECT_EQ(stalk_cohomology(g), stalk_cohomology(f));
            EXPECT_TRUE(equivalent(f, g));
        }
    }
}

TEST(Sheaf, RandomSheavesRespectBounds) {
    for (const auto& name : fixture_names()) {
        ComplexPtr k = fixture(name);
        for (const auto& f : random_suite(k, 77, 25)) {
            for (SimplexId s = 0; s < k->size(); ++s) {
                EXPECT_LE(f.stalk(s).total_dim(), 3u);
                for (const auto& [n, v] : oracle::cohomology(f.stalk(s))) {
                    EXPECT_GE(n, -1);
                    EXPECT_LE(n, 1);
                    EXPECT_LE(v, 3u);
                }
            }
        }
    }
}

TEST(Sheaf, RandomSuiteIsReproducible) {
    ComplexPtr k = fixture("C3");
    auto a = random_suite(k, 5, 10), b = random_suite(k, 5, 10);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].stalks(), b[i].stalks());
        EXPECT_EQ(a[i].cover_maps(), b[i].cover_maps());
    }
}

TEST(Sheaf, ConeOfIdentityIsStalkwiseAcyclic) {
    Rng rng(32);
    ComplexPtr k = fixture("D2");
    for (int t = 0; t < 10; ++t) {
        SheafComplex f = random_sheaf(k, rng);
        SheafComplex c = cone(SheafMap::identity(f));
        for (SimplexId s = 0; s < k->size(); ++s) EXPECT_TRUE(oracle::cohomology(c.stalk(s)).empty());
        EXPECT_TRUE(is_quasi_iso(SheafMap::identity(f)));
        bool has_cohomology = false;
        for (SimplexId s = 0; s < k->size(); ++s) has_cohomology = has_cohomology || stalk_total(f, s) > 0;
        EXPECT_EQ(is_quasi_iso(SheafMap::zero(f, f)), !has_cohomology);
    }
}

TEST(Sheaf, TensorWithConstantIsIdentity) {
    Rng rng(33);
    ComplexPtr k = fixture("C3");
    for (int t = 0; t < 10; ++t) {
        SheafComplex f = random_sheaf(k, rng);
        EXPECT_TRUE(equivalent(tensor(f, constant_sheaf(k)), f));
        EXPECT_EQ(stalk_cohomology(shift(shift(f, 2), -2)), stalk_cohomology(f));
    }
}

TEST(Sheaf, ExtensionAndRestrictionSupports) {
    ComplexPtr k = fixture("D2");
    FacePoset p = face_poset(k);
    SheafComplex c = constant_sheaf(k);
    SimplexSet open = p.star(k->vertex_simplex(0));
    SheafComplex j = extend_by_zero_open(c, open), i = pushforward_closed(c, complement(open));
    for (SimplexId s = 0; s < k->size(); ++s) {
        EXPECT_EQ(stalk_total(j, s), open[s] ? 1u : 0u);
        EXPECT_EQ(stalk_total(i, s), open[s] ? 0u : 1u);
    }
    // j_! j^* Q on the open star of a vertex of a disc has no cohomology
    EXPECT_TRUE(cohomology_dims(sections(j)).empty());
    EXPECT_EQ(stalk_cohomology(restrict(c, open)), stalk_cohomology(j));
}

TEST(Sheaf, PullbackAlongCollapseIsConstant) {
    ComplexPtr d2 = fixture("D2"), pt = fixture("pt");
    SimplicialMap f(d2, pt, {0, 0, 0});
    SheafComplex g = pullback(f, constant_sheaf(pt, 1));
    EXPECT_EQ(stalk_cohomology(g), stalk_cohomology(constant_sheaf(d2, 1)));
}

TEST(Sheaf, FormalizeKeepsConcentratedCohomology) {
    ComplexPtr k = fixture("I");
    SheafComplex f = cone(SheafMap::zero(constant_sheaf(k, 0), constant_sheaf(k, 0)));
    EXPECT_FALSE(is_formal_pure(f));
    EXPECT_THROW(formalize(f), std::exception);
    SheafComplex g = standard_star(k, 0);
    EXPECT_TRUE(is_formal_pure(g));
    EXPECT_EQ(stalk_cohomology(formalize(g)), stalk_cohomology(g));
}
