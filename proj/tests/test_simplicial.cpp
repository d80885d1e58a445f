#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "cellsheaf/fixtures.hpp"
#include "cellsheaf/simplicial.hpp"

using namespace cellsheaf;

namespace {

// f-vector by brute force over vertex subsets of the maximal simplices.
std::vector<std::size_t> f_vector(const std::vector<VertexList>& maximal) {
    std::set<VertexList> all;
    for (const auto& m : maximal) {
        std::size_t n = m.size();
        for (std::size_t mask = 1; mask < (1u << n); ++mask) {
            VertexList v;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) v.push_back(m[i]);
            all.insert(v);
        }
    }
    std::vector<std::size_t> f;
    for (const auto& v : all) {
        if (f.size() < v.size()) f.resize(v.size());
        ++f[v.size() - 1];
    }
    return f;
}

std::vector<std::size_t> f_vector(const SimplicialComplex& k) {
    std::vector<std::size_t> f(static_cast<std::size_t>(k.dimension() + 1));
    for (SimplexId s = 0; s < k.size(); ++s) ++f[static_cast<std::size_t>(k.dim(s))];
    return f;
}

long euler(const SimplicialComplex& k) {
    long c = 0;
    for (SimplexId s = 0; s < k.size(); ++s) c += k.dim(s) % 2 ? -1 : 1;
    return c;
}

}  // namespace

TEST(Simplicial, FixtureShapes) {
    EXPECT_EQ(f_vector(*fixture("I")), (std::vector<std::size_t>{2, 1}));
    EXPECT_EQ(f_vector(*fixture("C3")), (std::vector<std::size_t>{3, 3}));
    EXPECT_EQ(f_vector(*fixture("D2")), (std::vector<std::size_t>{3, 3, 1}));
    EXPECT_EQ(f_vector(*fixture("dD3")), (std::vector<std::size_t>{4, 6, 4}));
    EXPECT_EQ(euler(*fixture("C3")), 0);
    EXPECT_EQ(euler(*fixture("dD3")), 2);
    EXPECT_EQ(euler(*fixture("D2")), 1);
    EXPECT_EQ(fixture("I")->parse_simplex("e"), fixture("I")->id({0, 1}));
    EXPECT_THROW(fixture("nope"), std::invalid_argument);
}

TEST(Simplicial, FaceClosureMatchesBruteForce) {
    std::vector<VertexList> maximal{{0, 1, 2}, {1, 3}, {2, 3, 4}};
    SimplicialComplex k({"0", "1", "2", "3", "4"}, maximal);
    EXPECT_EQ(f_vector(k), f_vector(maximal));
    for (SimplexId s = 0; s < k.size(); ++s)
        for (SimplexId f : k.facets(s)) {
            EXPECT_EQ(k.dim(f) + 1, k.dim(s));
            EXPECT_NE(k.incidence(f, s), 0);
            auto co = k.cofacets(f);
            EXPECT_TRUE(std::find(co.begin(), co.end(), s) != co.end());
        }
}

TEST(Simplicial, IncidenceSquaresToZero) {
    for (const auto& name : fixture_names()) {
        ComplexPtr k = fixture(name);
        for (SimplexId a = 0; a < k->size(); ++a)
            for (SimplexId c = 0; c < k->size(); ++c) {
                if (k->dim(c) != k->dim(a) + 2) continue;
                int sum = 0;
                for (SimplexId b : k->cofacets(a)) sum += k->incidence(a, b) * k->incidence(b, c);
                EXPECT_EQ(sum, 0) << name;
            }
    }
}

TEST(Simplicial, OpenClosedAndLocallyClosed) {
    ComplexPtr k = fixture("D2");
    FacePoset p = face_poset(k);
    SimplexId v0 = k->vertex_simplex(0);
    SimplexSet st = p.star(v0), cl = p.closure(k->size() - 1);
    EXPECT_TRUE(p.is_open(st));
    EXPECT_FALSE(p.is_closed(st));
    EXPECT_TRUE(p.is_closed(cl));
    EXPECT_EQ(members(st).size(), 4u);
    EXPECT_TRUE(p.is_closed(complement(st)));
    SimplexSet gap = p.none();
    gap[v0] = true;
    gap[k->size() - 1] = true;
    EXPECT_FALSE(p.is_locally_closed(gap));
    EXPECT_TRUE(p.is_locally_closed(intersection(st, cl)));
    EXPECT_EQ(p.up_closure(gap), st);
}

TEST(Simplicial, ChainsOfTheFacePoset) {
    // chains of the face poset of a triangle = simplices of its barycentric subdivision
    ComplexPtr k = fixture("D2");
    auto chains = face_poset(k).chains();
    EXPECT_EQ(chains.size(), 7u + 12u + 6u);
    Subdivision sd = barycentric_subdivision(k);
    EXPECT_EQ(sd.complex->size(), chains.size());
    EXPECT_EQ(euler(*sd.complex), 1);
    for (SimplexId s = 0; s < sd.complex->size(); ++s) {
        SimplexId top = sd.carrier[s];
        for (std::size_t v : sd.complex->vertices(s)) EXPECT_TRUE(k->is_face(v, top));
    }
}

TEST(Simplicial, MapsRejectNonSimplicialVertexMaps) {
    ComplexPtr c3 = fixture("C3"), i = fixture("I"), d2 = fixture("D2");
    EXPECT_NO_THROW(SimplicialMap(c3, i, {0, 1, 1}));
    EXPECT_THROW(SimplicialMap(i, c3, {0, 5}), std::invalid_argument);
    ComplexPtr two = make_complex(SimplicialComplex({"x", "y"}, {{0}, {1}}));
    EXPECT_THROW(SimplicialMap(i, two, {0, 1}), std::invalid_argument);
    SimplicialMap f(d2, c3, {0, 1, 1});
    SimplicialMap g = compose(SimplicialMap(c3, i, {0, 1, 1}), f);
    for (SimplexId s = 0; s < d2->size(); ++s) EXPECT_EQ(g.image(s), SimplicialMap(c3, i, {0, 1, 1}).image(f.image(s)));
}

TEST(Simplicial, StaircaseProductOfIntervalsIsASquare) {
    ComplexPtr i = fixture("I");
    Product p = staircase_product(i, i);
    EXPECT_EQ(f_vector(*p.complex), (std::vector<std::size_t>{4, 5, 2}));
    EXPECT_EQ(euler(*p.complex), 1);
    for (SimplexId s = 0; s < p.complex->size(); ++s) {
        EXPECT_TRUE(i->is_face(p.p0.image(s), i->size() - 1));
    }
    DiagonalEmbedding d = diagonal_subcomplex(i);
    EXPECT_EQ(members(d.image).size(), 3u);
    EXPECT_TRUE(face_poset(d.product.complex).is_closed(d.image));
}

TEST(Simplicial, ProductEulerCharacteristicMultiplies) {
    for (const char* a : {"I", "C3", "D2"})
        for (const char* b : {"I", "C3", "pt"}) {
            Product p = staircase_product(fixture(a), fixture(b));
            EXPECT_EQ(euler(*p.complex), euler(*fixture(a)) * euler(*fixture(b))) << a << "x" << b;
        }
}

TEST(Simplicial, LinksOfFixtures) {
    ComplexPtr t = fixture("dD3");
    for (SimplexId v = 0; v < 4; ++v) EXPECT_EQ(f_vector(link(*t, t->vertex_simplex(v))), (std::vector<std::size_t>{3, 3}));
    ComplexPtr i = fixture("I");
    EXPECT_EQ(link(*i, i->vertex_simplex(0)).size(), 1u);
    FacePoset p = face_poset(t);
    EXPECT_EQ(subcomplex(*t, p.closure(t->size() - 1)).size(), 7u);
}
