#include <gtest/gtest.h>

#include "cellsheaf/fixtures.hpp"
#include "cellsheaf/kernels.hpp"
#include "cellsheaf/modules.hpp"
#include "support.hpp"

using namespace cellsheaf;

namespace {

using Dims = std::map<int, std::size_t>;

Dims kunneth(const Dims& a, const Dims& b) {
    Dims out;
    for (const auto& [p, x] : a)
        for (const auto& [q, y] : b) out[p + q] += x * y;
    return oracle::nonzero(out);
}

struct NamedMap {
    const char* name;
    SimplicialMap f;
};

std::vector<NamedMap> sample_maps() {
    ComplexPtr c3 = fixture("C3"), i = fixture("I"), d2 = fixture("D2"), pt = fixture("pt");
    return {{"C3->I", SimplicialMap(c3, i, {0, 1, 1})},
            {"D2->pt", SimplicialMap(d2, pt, {0, 0, 0})},
            {"I->I", SimplicialMap::identity(i)},
            {"D2->I", SimplicialMap(d2, i, {0, 0, 1})}};
}

}  // namespace

TEST(Kernels, ExternalProductFollowsKunneth) {
    Rng rng(71);
    for (const char* a : {"I", "C3"})
        for (const char* b : {"I", "pt"}) {
            Product p = staircase_product(fixture(a), fixture(b));
            for (int t = 0; t < 3; ++t) {
                SheafComplex f0 = random_sheaf(fixture(a), rng), f1 = random_sheaf(fixture(b), rng);
                Kernel k = external_product(f0, f1, p);
                EXPECT_EQ(oracle::cohomology(sections(k.sheaf)),
                          kunneth(oracle::cohomology(sections(f0)), oracle::cohomology(sections(f1))))
                    << a << "x" << b;
            }
        }
    Product p = staircase_product(fixture("I"), fixture("I"));
    EXPECT_THROW(external_product(constant_sheaf(fixture("C3")), constant_sheaf(fixture("I")), p), std::invalid_argument);
    EXPECT_THROW(make_kernel(p, constant_sheaf(fixture("I"))), std::invalid_argument);
}

TEST(Kernels, PushforwardMatchesLiteralFormula) {
    for (const auto& [name, f] : sample_maps())
        for (const auto& g : random_suite(f.source(), 72, 5)) {
            EXPECT_TRUE(equivalent(pushforward(f, g), pushforward_nerve(f, g))) << name;
            EXPECT_EQ(oracle::cohomology(sections(pushforward(f, g))), oracle::cohomology(sections(g))) << name;
        }
}

TEST(Kernels, PullbackPushforwardAdjunctions) {
    Rng rng(73);
    for (const auto& [name, f] : sample_maps())
        for (int t = 0; t < 4; ++t) {
            SheafComplex src = random_sheaf(f.source(), rng), tgt = random_sheaf(f.target(), rng);
            EXPECT_EQ(rhom_dims(pullback(f, tgt), src), rhom_dims(tgt, pushforward(f, src))) << name;
            EXPECT_EQ(rhom_dims(pushforward_proper(f, src), tgt), rhom_dims(src, upper_shriek(f, tgt))) << name;
        }
}

TEST(Kernels, UpperShriekOfPointIsDualizingComplex) {
    for (const auto& name : fixture_names()) {
        ComplexPtr k = fixture(name);
        SimplicialMap f(k, fixture("pt"), std::vector<std::size_t>(k->num_vertices(), 0));
        EXPECT_TRUE(equivalent(upper_shriek(f, constant_sheaf(fixture("pt"))), dualizing_complex(k))) << name;
    }
}

TEST(Kernels, GraphKernelNeedsMonotoneMap) {
    ComplexPtr i = fixture("I");
    SimplicialMap swap(i, i, {1, 0});
    EXPECT_THROW(graph_kernel(swap), std::invalid_argument);
    EXPECT_NO_THROW(graph_kernel(SimplicialMap::identity(i)));
}

TEST(Kernels, GraphKernelRealizesDirectFunctors) {
    for (const auto& [name, f] : sample_maps()) {
        Kernel g = graph_kernel(f);
        for (const auto& src : random_suite(f.source(), 74, 3)) {
            EXPECT_TRUE(equivalent(transform_star(g, src), pushforward(f, src))) << name;
            EXPECT_TRUE(equivalent(transform_shriek(g, src), pushforward_proper(f, src))) << name;
        }
        for (const auto& tgt : random_suite(f.target(), 75, 3)) {
            EXPECT_TRUE(equivalent(transform_upper_star(g, tgt), pullback(f, tgt))) << name;
            EXPECT_TRUE(equivalent(transform_upper_shriek(g, tgt), upper_shriek(f, tgt))) << name;
        }
    }
}

TEST(Kernels, DiagonalOnPointIsIdentity) {
    ComplexPtr pt = fixture("pt");
    Kernel d = diagonal_kernel(pt);
    for (int deg : {-1, 0, 2}) {
        SheafComplex f = constant_sheaf(pt, deg);
        EXPECT_TRUE(equivalent(transform_upper_star(d, f), f));
        EXPECT_TRUE(equivalent(transform_star(d, f), f));
    }
    EXPECT_EQ(diagonal_decomposition(pt).entries().size(), 1u);
}

TEST(Kernels, ZeroKernelGivesZeroTransforms) {
    ComplexPtr i = fixture("I");
    Product p = staircase_product(i, i);
    Kernel z = make_kernel(p, zero_sheaf(p.complex));
    for (const auto& f : random_suite(i, 76, 3)) {
        EXPECT_EQ(stalk_cohomology(transform_upper_star(z, f)), stalk_cohomology(zero_sheaf(i)));
        EXPECT_EQ(stalk_cohomology(transform_shriek(z, f)), stalk_cohomology(zero_sheaf(i)));
        EXPECT_EQ(stalk_cohomology(transform_star(z, f)), stalk_cohomology(zero_sheaf(i)));
    }
}

TEST(Kernels, TransformsAreFunctorialInTheKernel) {
    ComplexPtr i = fixture("I");
    Product p = staircase_product(i, i);
    Rng rng(77);
    for (int t = 0; t < 3; ++t) {
        SheafComplex k = random_sheaf(p.complex, rng);
        SheafMap id = SheafMap::identity(k);
        for (const auto& f : random_suite(i, 78 + static_cast<std::uint64_t>(t), 2)) {
            EXPECT_TRUE(is_quasi_iso(transform_upper_star_map(p, id, f)));
            EXPECT_TRUE(is_quasi_iso(transform_shriek_map(p, id, f)));
            // a transform of a cone is the cone of the transformed map
            SheafMap two = Rational(2) * id;
            SheafMap z = SheafMap::zero(k, k);
            for (const SheafMap& u : {two, z}) {
                Kernel cone_kernel = make_kernel(p, cone(u));
                EXPECT_TRUE(stalkwise_equal(transform_upper_star(cone_kernel, f),
                                            cone(transform_upper_star_map(p, u, f))));
                EXPECT_TRUE(stalkwise_equal(transform_shriek(cone_kernel, f), cone(transform_shriek_map(p, u, f))));
            }
        }
    }
}

TEST(Kernels, DualityIdentitiesOnSmallKernels) {
    ComplexPtr i = fixture("I");
    Product p = staircase_product(i, i);
    Rng rng(79);
    std::vector<SheafComplex> on0, on1;
    for (int t = 0; t < 2; ++t) {
        on0.push_back(random_sheaf(i, rng));
        on1.push_back(random_sheaf(i, rng));
    }
    EXPECT_TRUE(verify_duality_identities(diagonal_kernel(i), on0, on1).all());
    EXPECT_TRUE(verify_duality_identities(make_kernel(p, random_sheaf(p.complex, rng)), on0, on1).all());
    on1.pop_back();
    EXPECT_THROW(verify_duality_identities(diagonal_kernel(i), on0, on1), std::invalid_argument);
}

TEST(Kernels, DiagonalDecompositionRealizesDiagonal) {
    for (const char* name : {"I", "C3"}) {
        ComplexPtr k = fixture(name);
        EXPECT_TRUE(equivalent(totalize(diagonal_decomposition(k)), diagonal_kernel(k).sheaf)) << name;
        for (const auto& f : random_suite(k, 80, 3)) EXPECT_TRUE(equivalent(transform_upper_star(diagonal_kernel(k), f), f));
    }
}

TEST(Kernels, EmptyComplexIsALegalBase) {
    ComplexPtr k = make_complex(SimplicialComplex({}, {}));
    SheafComplex c = constant_sheaf(k);
    EXPECT_TRUE(cohomology_dims(sections(c)).empty());
    EXPECT_TRUE(verdier_dual(c).is_zero());
    EXPECT_EQ(decompose_standard(c).size(), 0u);
    EXPECT_TRUE(equivalent(transform_upper_star(diagonal_kernel(k), c), c));
    EXPECT_TRUE(equivalent(represent(yoneda_module(c)), c));
}
