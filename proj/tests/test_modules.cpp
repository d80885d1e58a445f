#include <gtest/gtest.h>

#include "cellsheaf/fixtures.hpp"
#include "cellsheaf/modules.hpp"
#include "support.hpp"

using namespace cellsheaf;

namespace {

PosetModule constant_module(const ComplexPtr& k, SimplexId flip_top_facet = SimplexId(-1)) {
    std::vector<ChainComplex> values(k->size(), ChainComplex::concentrated(0, 1));
    PosetModule::Actions actions;
    for (auto [a, b] : face_poset(k).covers()) actions[{a, b}] = {{0, Matrix::identity(1)}};
    if (flip_top_facet != SimplexId(-1)) {
        SimplexId top = k->size() - 1;
        actions[{k->facets(top)[flip_top_facet], top}] = {{0, -Matrix::identity(1)}};
    }
    return PosetModule(k, values, actions);
}

}  // namespace

TEST(Modules, RejectsNonAssociativeActions) {
    ComplexPtr d2 = fixture("D2");
    EXPECT_NO_THROW(constant_module(d2));
    EXPECT_THROW(constant_module(d2, 0), std::invalid_argument);
}

TEST(Modules, YonedaOfCostandardIsTheFaceIndicator) {
    for (const auto& name : fixture_names()) {
        ComplexPtr k = fixture(name);
        for (SimplexId c = 0; c < k->size(); ++c) {
            PosetModule m = yoneda_module(costandard_simplex(k, c));
            for (SimplexId a = 0; a < k->size(); ++a) {
                std::map<int, std::size_t> want;
                if (k->is_face(a, c)) want[0] = 1;
                EXPECT_EQ(oracle::cohomology(m.value(a)), want) << name;
            }
        }
    }
}

// Precomposition with the generators costd(a) -> costd(b) -> costd(c) is
// compatible with composition on H^0.
TEST(Modules, ActionsComposeOnDegreeZeroCohomology) {
    for (const char* name : {"I", "D2", "dD3"}) {
        ComplexPtr k = fixture(name);
        for (SimplexId c = 0; c < k->size(); ++c) {
            PosetModule m = yoneda_module(costandard_simplex(k, c));
            std::vector<Cohomology> h;
            for (SimplexId s = 0; s < k->size(); ++s) h.push_back(cohomology(m.value(s)));
            for (SimplexId a : k->faces(c))
                for (SimplexId b : k->faces(c)) {
                    if (!k->is_face(a, b)) continue;
                    Matrix ab = induced_on_cohomology(m.action_map(a, b), h[b], h[a], 0);
                    Matrix bc = induced_on_cohomology(m.action_map(b, c), h[c], h[b], 0);
                    Matrix ac = induced_on_cohomology(m.action_map(a, c), h[c], h[a], 0);
                    EXPECT_FALSE(ab.is_zero());
                    EXPECT_EQ(ab * bc, ac) << name;
                }
        }
    }
}

TEST(Modules, CostandardInclusionsCompose) {
    ComplexPtr k = fixture("D2");
    SimplexId top = k->size() - 1;
    for (SimplexId a = 0; a < k->size(); ++a)
        for (SimplexId b : k->star(a)) {
            if (!k->is_face(b, top)) continue;
            SheafMap ab = costandard_inclusion(k, a, b), bt = costandard_inclusion(k, b, top);
            SheafMap at = costandard_inclusion(k, a, top);
            SheafMap comp = compose(bt, ab);
            for (SimplexId s = 0; s < k->size(); ++s)
                EXPECT_TRUE(blocks_equal(comp.component(s), at.component(s), at.source().stalk(s), at.target().stalk(s)));
        }
    EXPECT_TRUE(equivalent(costandard_model(k, 0), costandard_simplex(k, 0)));
}

TEST(Modules, PartitionValidation) {
    ComplexPtr d2 = fixture("D2");
    EXPECT_NO_THROW(validate_partition(d2, singleton_partition(d2)));
    EXPECT_NO_THROW(validate_partition(d2, one_group_partition(d2)));
    Partition short_one{std::vector<std::size_t>(2, 0)};
    EXPECT_THROW(validate_partition(d2, short_one), std::invalid_argument);
    // a vertex and the triangle without the edges between them
    Partition gap{std::vector<std::size_t>(d2->size(), 1)};
    gap.group[d2->vertex_simplex(0)] = 0;
    gap.group[d2->size() - 1] = 0;
    EXPECT_THROW(validate_partition(d2, gap), std::invalid_argument);
}

TEST(Modules, StratificationChecks) {
    ComplexPtr i = fixture("I");
    SimplexId a = i->vertex_simplex(0), e = i->size() - 1;
    PosetModule whole = yoneda_module(costandard_simplex(i, e));
    PosetModule end = yoneda_module(costandard_simplex(i, a));
    EXPECT_TRUE(check_fr(whole));
    EXPECT_FALSE(check_fr(whole, 0));
    EXPECT_TRUE(check_slc(whole, one_group_partition(i)));
    EXPECT_FALSE(check_slc(end, one_group_partition(i)));
    EXPECT_TRUE(check_slc(end, singleton_partition(i)));
    EXPECT_TRUE(is_constructible(constant_sheaf(i), one_group_partition(i)));
    EXPECT_FALSE(is_constructible(standard_simplex(i, a), one_group_partition(i)));
}

TEST(Modules, RepresentInvertsYoneda) {
    for (const auto& name : fixture_names()) {
        ComplexPtr k = fixture(name);
        for (const auto& f : random_suite(k, 61, 8)) {
            PosetModule m = yoneda_module(f);
            SheafComplex r = represent(m);
            EXPECT_TRUE(equivalent(r, f)) << name;
            EXPECT_TRUE(valuewise_equal(yoneda_module(r), m)) << name;
            auto steps = step_intermediates(m);
            EXPECT_EQ(steps.size(), static_cast<std::size_t>(k->dimension() + 2));
            for (const auto& s : steps) EXPECT_TRUE(s.acyclic_above) << name << " step " << s.k;
        }
    }
}

TEST(Modules, YonedaValuesAreHomsFromCostandards) {
    for (const auto& name : fixture_names()) {
        ComplexPtr k = fixture(name);
        SheafComplex c = constant_sheaf(k);
        PosetModule m = yoneda_module(c);
        for (SimplexId s = 0; s < k->size(); ++s)
            EXPECT_EQ(oracle::cohomology(m.value(s)), oracle::cohomology(rhom_global(costandard_simplex(k, s), c))) << name;
        EXPECT_TRUE(equivalent(represent(m), c));
    }
}

TEST(Modules, RefinementCommutesWithRepresentation) {
    for (const char* name : {"I", "C3"}) {
        ComplexPtr k = fixture(name);
        Subdivision sd = barycentric_subdivision(k);
        for (const auto& f : random_suite(k, 62, 4)) EXPECT_TRUE(refine_and_compare(f, sd)) << name;
        SheafComplex fine = subdivide_sheaf(constant_sheaf(k), sd);
        EXPECT_TRUE(equivalent(fine, constant_sheaf(sd.complex)));
    }
}
