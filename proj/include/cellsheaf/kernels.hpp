#pragma once

#include <string>
#include <vector>

#include "cellsheaf/twisted.hpp"

namespace cellsheaf {

/// Sheaf on the staircase product K0 × K1, with its projections.
struct Kernel {
    Product product;
    SheafComplex sheaf;
};

/// Throws std::invalid_argument when the sheaf does not live on the product.
Kernel make_kernel(const Product& p, SheafComplex sheaf);

/// F0 ⊠ F1 = p0^* F0 ⊗ p1^* F1.
Kernel external_product(const SheafComplex& f0, const SheafComplex& f1, const Product& p);

/// Rf_*, computed through the minimal standard presentation: standard
/// objects push forward to standard objects.
SheafComplex pushforward(const SimplicialMap& f, const SheafComplex& g);
/// Rf_! = Rf_* since every map between finite complexes is proper.
SheafComplex pushforward_proper(const SimplicialMap& f, const SheafComplex& g);
/// f^! = D f^* D.
SheafComplex upper_shriek(const SimplicialMap& f, const SheafComplex& g);
/// Verdier dual reduced to its minimal standard presentation.
SheafComplex dual_reduced(const SheafComplex& f);
/// Internal hom Hom(K, G) through the minimal presentation of G.
SheafComplex sheaf_hom_reduced(const SheafComplex& k, const SheafComplex& g);
/// RHom(F, G) through the minimal presentation of G.
ChainComplex rhom_reduced(const SheafComplex& f, const SheafComplex& g);

/// Φ*_K(F1) = p0_!(K ⊗ p1^* F1), a sheaf on K0.
SheafComplex transform_upper_star(const Kernel& k, const SheafComplex& f1);
/// Φ_{K*}(F0) = p1_*(Hom(K, p0^! F0)), a sheaf on K1.
SheafComplex transform_star(const Kernel& k, const SheafComplex& f0);
/// Φ_{K!}(F0) = p1_!(K ⊗ p0^* F0), a sheaf on K1.
SheafComplex transform_shriek(const Kernel& k, const SheafComplex& f0);
/// Φ^!_K(F1) = p0_*(Hom(K, p1^! F1)), a sheaf on K0.
SheafComplex transform_upper_shriek(const Kernel& k, const SheafComplex& f1);

/// Map Φ*_{K}(F1) -> Φ*_{K'}(F1) induced by u: K -> K', on unreduced models.
SheafMap transform_upper_star_map(const Product& p, const SheafMap& u, const SheafComplex& f1);
/// Map Φ_{K!}(F0) -> Φ_{K'!}(F0) induced by u: K -> K', on unreduced models.
SheafMap transform_shriek_map(const Product& p, const SheafMap& u, const SheafComplex& f0);

/// Constant sheaf on the graph of f inside K0 × K1. Throws when the graph is
/// not a subcomplex of the staircase product (subdivide the source first).
Kernel graph_kernel(const SimplicialMap& f);
/// Graph of the identity.
Kernel diagonal_kernel(const ComplexPtr& k);
/// Minimal standard presentation of the diagonal kernel.
TwistedComplex diagonal_decomposition(const ComplexPtr& k);

/// Outcome of the four duality identities for one sample object.
struct DualityCheck {
    bool upper_star = false;     // Φ* ≅ D Φ^! D
    bool star = false;           // Φ_* ≅ D Φ_! D
    bool shriek = false;         // Φ_! ≅ D Φ_* D
    bool upper_shriek = false;   // Φ^! ≅ D Φ* D
    bool all() const { return upper_star && star && shriek && upper_shriek; }
};

struct DualityReport {
    std::vector<DualityCheck> checks;
    bool all() const;
};

/// Samples on K0 feed Φ_* and Φ_!; samples on K1 feed Φ* and Φ^!.
DualityReport verify_duality_identities(const Kernel& k, const std::vector<SheafComplex>& on_k0,
                                        const std::vector<SheafComplex>& on_k1);

}  // namespace cellsheaf
