#include "cellsheaf/kernels.hpp"

#include <stdexcept>

namespace cellsheaf {

namespace {

SheafComplex push_twisted(const SimplicialMap& f, const TwistedComplex& t) {
    return totalize(minimize(pushforward_twisted(f, t)));
}

void require_factor(const ComplexPtr& expected, const SheafComplex& f, const char* what) {
    if (!same_complex(expected, f.base())) throw std::invalid_argument(std::string(what) + " lives on the wrong factor");
}

SheafMap push_map(const SimplicialMap& p, const SheafMap& w) {
    TwistedComplex s = koszul_model(w.source()), t = koszul_model(w.target());
    GradedMatrix flat = koszul_model_map(w, s, t);
    return totalize_map(pushforward_twisted(p, s), pushforward_twisted(p, t), flat);
}

}  // namespace

Kernel make_kernel(const Product& p, SheafComplex sheaf) {
    if (!same_complex(p.complex, sheaf.base())) throw std::invalid_argument("kernel must live on the product complex");
    return Kernel{p, std::move(sheaf)};
}

Kernel external_product(const SheafComplex& f0, const SheafComplex& f1, const Product& p) {
    require_factor(p.left, f0, "left factor of an external product");
    require_factor(p.right, f1, "right factor of an external product");
    return make_kernel(p, tensor(pullback(p.p0, f0), pullback(p.p1, f1)));
}

SheafComplex pushforward(const SimplicialMap& f, const SheafComplex& g) {
    if (!same_complex(f.source(), g.base())) throw std::invalid_argument("pushforward of a sheaf on the wrong complex");
    return push_twisted(f, decompose_standard(g));
}

SheafComplex pushforward_proper(const SimplicialMap& f, const SheafComplex& g) { return pushforward(f, g); }

SheafComplex upper_shriek(const SimplicialMap& f, const SheafComplex& g) {
    if (!same_complex(f.target(), g.base())) throw std::invalid_argument("upper shriek of a sheaf on the wrong complex");
    return dual_reduced(pullback(f, dual_reduced(g)));
}

SheafComplex dual_reduced(const SheafComplex& f) { return totalize(minimize(verdier_dual_twisted(f))); }

SheafComplex sheaf_hom_reduced(const SheafComplex& k, const SheafComplex& g) {
    return totalize(minimize(sheaf_hom_twisted(k, decompose_standard(g))));
}

ChainComplex rhom_reduced(const SheafComplex& f, const SheafComplex& g) {
    return sheaf_hom_twisted(f, decompose_standard(g)).total();
}

SheafComplex transform_upper_star(const Kernel& k, const SheafComplex& f1) {
    require_factor(k.product.right, f1, "argument of the upper-star transform");
    return pushforward(k.product.p0, tensor(k.sheaf, pullback(k.product.p1, f1)));
}

SheafComplex transform_star(const Kernel& k, const SheafComplex& f0) {
    require_factor(k.product.left, f0, "argument of the star transform");
    SheafComplex g = upper_shriek(k.product.p0, f0);
    return push_twisted(k.product.p1, sheaf_hom_twisted(k.sheaf, decompose_standard(g)));
}

SheafComplex transform_shriek(const Kernel& k, const SheafComplex& f0) {
    require_factor(k.product.left, f0, "argument of the shriek transform");
    return pushforward_proper(k.product.p1, tensor(k.sheaf, pullback(k.product.p0, f0)));
}

SheafComplex transform_upper_shriek(const Kernel& k, const SheafComplex& f1) {
    require_factor(k.product.right, f1, "argument of the upper-shriek transform");
    SheafComplex g = upper_shriek(k.product.p1, f1);
    return push_twisted(k.product.p0, sheaf_hom_twisted(k.sheaf, decompose_standard(g)));
}

SheafMap transform_upper_star_map(const Product& p, const SheafMap& u, const SheafComplex& f1) {
    require_factor(p.right, f1, "argument of the upper-star transform");
    SheafComplex pulled = pullback(p.p1, f1);
    return push_map(p.p0, tensor(u, SheafMap::identity(pulled)));
}

SheafMap transform_shriek_map(const Product& p, const SheafMap& u, const SheafComplex& f0) {
    require_factor(p.left, f0, "argument of the shriek transform");
    SheafComplex pulled = pullback(p.p0, f0);
    return push_map(p.p1, tensor(u, SheafMap::identity(pulled)));
}

Kernel graph_kernel(const SimplicialMap& f) {
    Product p = staircase_product(f.source(), f.target());
    const auto& src = *f.source();
    const auto& prod = *p.complex;
    SimplexSet graph(prod.size(), false);
    for (SimplexId s = 0; s < src.size(); ++s) {
        VertexList v;
        for (std::size_t x : src.vertices(s)) v.push_back(p.vertex(x, f.vertex_map()[x]));
        auto id = prod.find(v);
        if (!id)
            throw std::invalid_argument("the graph of the map is not a subcomplex of the staircase product at simplex " +
                                        src.label(s) + "; subdivide the source so the map is monotone on simplices");
        graph[*id] = true;
    }
    return make_kernel(p, constant_on(p.complex, graph));
}

Kernel diagonal_kernel(const ComplexPtr& k) { return graph_kernel(SimplicialMap::identity(k)); }

TwistedComplex diagonal_decomposition(const ComplexPtr& k) { return decompose_standard(diagonal_kernel(k).sheaf); }

bool DualityReport::all() const {
    for (const auto& c : checks)
        if (!c.all()) return false;
    return true;
}

DualityReport verify_duality_identities(const Kernel& k, const std::vector<SheafComplex>& on_k0,
                                        const std::vector<SheafComplex>& on_k1) {
    if (on_k0.size() != on_k1.size()) throw std::invalid_argument("duality check needs paired samples");
    DualityReport r;
    for (std::size_t i = 0; i < on_k0.size(); ++i) {
        const SheafComplex& f0 = on_k0[i];
        const SheafComplex& f1 = on_k1[i];
        DualityCheck c;
        c.upper_star = equivalent(transform_upper_star(k, f1), dual_reduced(transform_upper_shriek(k, dual_reduced(f1))));
        c.upper_shriek = equivalent(transform_upper_shriek(k, f1), dual_reduced(transform_upper_star(k, dual_reduced(f1))));
        c.star = equivalent(transform_star(k, f0), dual_reduced(transform_shriek(k, dual_reduced(f0))));
        c.shriek = equivalent(transform_shriek(k, f0), dual_reduced(transform_star(k, dual_reduced(f0))));
        r.checks.push_back(c);
    }
    return r;
}

}  // namespace cellsheaf
