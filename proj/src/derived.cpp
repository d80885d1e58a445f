#include "cellsheaf/derived.hpp"

#include <stdexcept>

namespace cellsheaf {

namespace {

Rational sign_of(int k) { return (k % 2 == 0) ? Rational(1) : Rational(-1); }

}  // namespace

NerveComplex nerve_rhom(const SheafComplex& f, const SheafComplex& g, const SimplexSet& w) {
    if (!same_complex(f.base(), g.base())) throw std::invalid_argument("hom between sheaves on different complexes");
    FacePoset poset(f.base());
    NerveComplex out;
    out.chains = poset.chains(w);

    std::map<std::pair<SimplexId, SimplexId>, ChainComplex> homs;
    auto hom_of = [&](SimplexId a, SimplexId b) -> const ChainComplex& {
        auto it = homs.find({a, b});
        if (it == homs.end()) it = homs.emplace(std::make_pair(a, b), hom_complex(f.stalk(a), g.stalk(b))).first;
        return it->second;
    };

    GradedAssembler asmb;
    std::map<std::pair<std::vector<SimplexId>, int>, std::size_t> block_id;
    for (const auto& c : out.chains) {
        const int p = static_cast<int>(c.size()) - 1;
        const ChainComplex& h = hom_of(c.front(), c.back());
        for (int m = h.lo(); m <= h.hi(); ++m) {
            if (!h.dim(m)) continue;
            std::size_t id = asmb.add_block(p + m, h.dim(m));
            block_id[{c, m}] = id;
            out.blocks[{c, m}] = asmb.loc(id);
        }
    }
    for (const auto& c : out.chains) {
        const int p = static_cast<int>(c.size()) - 1;
        const ChainComplex& h = hom_of(c.front(), c.back());
        for (int m = h.lo(); m < h.hi(); ++m) {
            auto from = block_id.find({c, m});
            auto to = block_id.find({c, m + 1});
            if (from != block_id.end() && to != block_id.end()) asmb.add(from->second, to->second, h.d(m), sign_of(p));
        }
        if (p == 0) continue;
        for (int t = 0; t <= p; ++t) {
            std::vector<SimplexId> face = c;
            face.erase(face.begin() + t);
            const ChainComplex& hf = hom_of(face.front(), face.back());
            GradedMatrix comp;
            if (t == 0) {
                comp = hom_map_blocks(f.stalk(c[0]), f.stalk(c[1]), g.stalk(c.back()), g.stalk(c.back()),
                                      f.generization(c[0], c[1]), g.generization(c.back(), c.back()));
            } else if (t == p) {
                comp = hom_map_blocks(f.stalk(c[0]), f.stalk(c[0]), g.stalk(c[p - 1]), g.stalk(c[p]),
                                      f.generization(c[0], c[0]), g.generization(c[p - 1], c[p]));
            } else {
                for (int m = hf.lo(); m <= hf.hi(); ++m)
                    if (hf.dim(m)) comp[m] = Matrix::identity(hf.dim(m));
            }
            for (const auto& [m, blk] : comp) {
                auto from = block_id.find({face, m});
                auto to = block_id.find({c, m});
                if (from == block_id.end() || to == block_id.end()) continue;
                asmb.add(from->second, to->second, blk, sign_of(t));
            }
        }
    }
    out.complex = asmb.build();
    return out;
}

ChainMap nerve_restriction(const NerveComplex& big, const NerveComplex& small) {
    for (const auto& [key, loc] : small.blocks)
        if (!big.blocks.count(key)) throw std::invalid_argument("restriction to a set that is not smaller");
    return block_projection(big.complex, big.blocks, small.complex, small.blocks);
}

CellularChains cellular_chains(const SheafComplex& f, const SimplexSet& u) {
    const auto& k = f.complex();
    if (u.size() != k.size()) throw std::invalid_argument("simplex set has the wrong size");
    if (!FacePoset(f.base()).is_locally_closed(u))
        throw std::invalid_argument("compactly supported sections need a locally closed set");
    CellularChains out;
    GradedAssembler asmb;
    std::map<std::pair<SimplexId, int>, std::size_t> id;
    for (SimplexId s = 0; s < k.size(); ++s) {
        if (!u[s]) continue;
        const auto& c = f.stalk(s);
        for (int q = c.lo(); q <= c.hi(); ++q) {
            if (!c.dim(q)) continue;
            std::size_t b = asmb.add_block(q + k.dim(s), c.dim(q));
            id[{s, q}] = b;
            out.blocks[{s, q}] = asmb.loc(b);
        }
    }
    for (const auto& [sq, b] : id) {
        auto [s, q] = sq;
        auto next = id.find({s, q + 1});
        if (next != id.end()) asmb.add(b, next->second, f.stalk(s).d(q), sign_of(k.dim(s)));
        for (SimplexId t : k.cofacets(s)) {
            if (!u[t]) continue;
            auto to = id.find({t, q});
            if (to == id.end()) continue;
            const auto& gen = f.generization(s, t);
            auto it = gen.find(q);
            if (it == gen.end()) continue;
            asmb.add(b, to->second, it->second, Rational(k.incidence(s, t)));
        }
    }
    out.complex = asmb.build();
    return out;
}

ChainMap cellular_inclusion(const CellularChains& small, const CellularChains& big) {
    for (const auto& [key, loc] : small.blocks)
        if (!big.blocks.count(key)) throw std::invalid_argument("inclusion from a set that is not smaller");
    return block_projection(small.complex, small.blocks, big.complex, big.blocks);
}

ChainMap cellular_map(const SheafMap& u, const CellularChains& source, const CellularChains& target) {
    std::map<int, std::vector<Triplet>> trip;
    for (const auto& [sq, lf] : source.blocks) {
        auto it = target.blocks.find(sq);
        if (it == target.blocks.end()) continue;
        const auto& comp = u.component(sq.first);
        auto blk = comp.find(sq.second);
        if (blk == comp.end()) continue;
        const BlockLoc& lg = it->second;
        for (std::size_t r = 0; r < blk->second.rows(); ++r)
            for (const auto& [c, v] : blk->second.row(r)) trip[lf.degree].push_back({lg.offset + r, lf.offset + c, v});
    }
    GradedMatrix blocks;
    for (auto& [n, t] : trip)
        blocks[n] = Matrix::from_triplets(target.complex.dim(n), source.complex.dim(n), std::move(t));
    return ChainMap(source.complex, target.complex, 0, std::move(blocks));
}

ChainComplex rhom_global(const SheafComplex& f, const SheafComplex& g) {
    return nerve_rhom(f, g, SimplexSet(f.size(), true)).complex;
}

std::map<int, std::size_t> rhom_dims(const SheafComplex& f, const SheafComplex& g) {
    return cohomology_dims(rhom_global(f, g));
}

SheafComplex sheaf_hom(const SheafComplex& f, const SheafComplex& g) {
    const auto& k = f.complex();
    FacePoset p(f.base());
    std::vector<NerveComplex> local;
    std::vector<ChainComplex> stalks;
    for (SimplexId s = 0; s < k.size(); ++s) {
        local.push_back(nerve_rhom(f, g, p.star(s)));
        stalks.push_back(local.back().complex);
    }
    SheafComplex::Covers covers;
    for (SimplexId b = 0; b < k.size(); ++b)
        for (SimplexId a : k.facets(b)) covers[{a, b}] = nerve_restriction(local[a], local[b]).blocks();
    return SheafComplex(f.base(), std::move(stalks), covers);
}

ChainComplex sections(const SheafComplex& f) { return rhom_global(constant_sheaf(f.base()), f); }

ChainComplex sections_c(const SheafComplex& f) { return cellular_chains(f, SimplexSet(f.size(), true)).complex; }

ChainComplex sections_c(const SheafComplex& f, const SimplexSet& u) { return cellular_chains(f, u).complex; }

ChainComplex costalk(const SheafComplex& f, SimplexId s) {
    return cellular_chains(f, FacePoset(f.base()).star(s)).complex;
}

SheafComplex verdier_dual(const SheafComplex& f) {
    const auto& k = f.complex();
    FacePoset p(f.base());
    std::vector<CellularChains> local;
    std::vector<ChainComplex> stalks;
    for (SimplexId s = 0; s < k.size(); ++s) {
        local.push_back(cellular_chains(f, p.star(s)));
        stalks.push_back(dual(local.back().complex));
    }
    SheafComplex::Covers covers;
    for (SimplexId b = 0; b < k.size(); ++b)
        for (SimplexId a : k.facets(b)) covers[{a, b}] = dual(cellular_inclusion(local[b], local[a])).blocks();
    return SheafComplex(f.base(), std::move(stalks), covers);
}

SheafMap verdier_dual(const SheafMap& u) {
    const auto& k = u.source().complex();
    FacePoset p(u.source().base());
    std::vector<GradedMatrix> comps;
    for (SimplexId s = 0; s < k.size(); ++s) {
        SimplexSet st = p.star(s);
        CellularChains cf = cellular_chains(u.source(), st);
        CellularChains cg = cellular_chains(u.target(), st);
        ChainMap m = cellular_map(u, cf, cg);
        comps.push_back(dual(m).blocks());
    }
    return SheafMap(verdier_dual(u.target()), verdier_dual(u.source()), std::move(comps));
}

SheafComplex dualizing_complex(const ComplexPtr& k) { return verdier_dual(constant_sheaf(k)); }

namespace {

std::vector<NerveComplex> local_sections(const SheafComplex& f, const SimplicialMap* map, const SimplexSet* open,
                                         const ComplexPtr& target) {
    FacePoset tp(target);
    FacePoset sp(f.base());
    SheafComplex constant = constant_sheaf(f.base());
    std::vector<NerveComplex> out;
    for (SimplexId s = 0; s < target->size(); ++s) {
        SimplexSet w = tp.star(s);
        if (map) w = map->preimage(w);
        if (open) w = intersection(w, *open);
        out.push_back(nerve_rhom(constant, f, w));
    }
    return out;
}

SheafComplex from_local_sections(const std::vector<NerveComplex>& local, const ComplexPtr& target) {
    std::vector<ChainComplex> stalks;
    for (const auto& n : local) stalks.push_back(n.complex);
    SheafComplex::Covers covers;
    for (SimplexId b = 0; b < target->size(); ++b)
        for (SimplexId a : target->facets(b)) covers[{a, b}] = nerve_restriction(local[a], local[b]).blocks();
    return SheafComplex(target, std::move(stalks), covers);
}

}  // namespace

SheafComplex pushforward_open(const SheafComplex& f, const SimplexSet& open) {
    if (!FacePoset(f.base()).is_open(open)) throw std::invalid_argument("set is not open (not closed under cofaces)");
    return from_local_sections(local_sections(f, nullptr, &open, f.base()), f.base());
}

SheafMap pushforward_open_unit(const SheafComplex& f, const SimplexSet& open) {
    if (!FacePoset(f.base()).is_open(open)) throw std::invalid_argument("set is not open (not closed under cofaces)");
    auto local = local_sections(f, nullptr, &open, f.base());
    SheafComplex target = from_local_sections(local, f.base());
    const auto& k = f.complex();
    std::vector<GradedMatrix> comps;
    for (SimplexId s = 0; s < k.size(); ++s) {
        std::map<int, std::vector<Triplet>> trip;
        for (const auto& [key, loc] : local[s].blocks) {
            const auto& [chain, m] = key;
            if (chain.size() != 1) continue;
            const auto& gen = f.generization(s, chain.front());
            auto it = gen.find(m);
            if (it == gen.end()) continue;
            for (std::size_t r = 0; r < it->second.rows(); ++r)
                for (const auto& [c, v] : it->second.row(r)) trip[m].push_back({loc.offset + r, c, v});
        }
        GradedMatrix blocks;
        for (auto& [n, t] : trip) blocks[n] = Matrix::from_triplets(target.stalk(s).dim(n), f.stalk(s).dim(n), std::move(t));
        comps.push_back(std::move(blocks));
    }
    return SheafMap(f, target, std::move(comps));
}

SheafComplex upper_shriek_closed(const SheafComplex& f, const SimplexSet& closed) {
    if (!FacePoset(f.base()).is_closed(closed)) throw std::invalid_argument("set is not closed (not a subcomplex)");
    return shift(cone(pushforward_open_unit(f, complement(closed))), -1);
}

SheafComplex standard_star(const ComplexPtr& k, SimplexId tau) {
    SheafComplex f = pushforward_open(constant_sheaf(k), FacePoset(k).star(tau));
    return formalize(f);
}

SheafComplex costandard_star(const ComplexPtr& k, SimplexId tau) {
    SheafComplex f = extend_by_zero_open(dualizing_complex(k), FacePoset(k).star(tau));
    return is_formal_pure(f) ? formalize(f) : f;
}

SheafComplex pushforward_nerve(const SimplicialMap& f, const SheafComplex& g) {
    if (!same_complex(f.source(), g.base())) throw std::invalid_argument("pushforward of a sheaf on the wrong complex");
    return from_local_sections(local_sections(g, &f, nullptr, f.target()), f.target());
}

Signature signature(const SheafComplex& f) {
    Signature s;
    s.stalks = stalk_cohomology(f);
    for (SimplexId x = 0; x < f.size(); ++x) s.costalks.push_back(cohomology_dims(costalk(f, x)));
    for (SimplexId b = 0; b < f.size(); ++b)
        for (SimplexId a : f.complex().facets(b)) {
            auto dims = cohomology_dims(cone(f.generization_map(a, b)));
            if (!dims.empty()) s.generization_cones[{a, b}] = std::move(dims);
        }
    return s;
}

bool equivalent(const SheafComplex& f, const SheafComplex& g) {
    if (!same_complex(f.base(), g.base())) return false;
    return signature(f) == signature(g);
}

bool stalkwise_equal(const SheafComplex& f, const SheafComplex& g) {
    if (!same_complex(f.base(), g.base())) return false;
    return stalk_cohomology(f) == stalk_cohomology(g);
}

}  // namespace cellsheaf
