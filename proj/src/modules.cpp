#include "cellsheaf/modules.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace cellsheaf {

namespace {

GradedMatrix identity_blocks(const ChainComplex& c) {
    GradedMatrix out;
    for (int n = c.lo(); n <= c.hi(); ++n) out[n] = Matrix::identity(c.dim(n));
    return out;
}

GradedMatrix nonzero_only(const GradedMatrix& m) {
    GradedMatrix out;
    for (const auto& [n, blk] : m)
        if (!blk.is_zero()) out[n] = blk;
    return out;
}

// Position of ρ inside the stalk at σ of the costandard model on a: degree
// -dim ρ, index among faces of a of that dimension containing σ, by id.
std::map<SimplexId, std::size_t> model_positions(const SimplicialComplex& k, SimplexId a, SimplexId s) {
    std::map<SimplexId, std::size_t> out;
    std::map<int, std::size_t> next;
    for (SimplexId rho : k.faces(a))
        if (k.is_face(s, rho)) out[rho] = next[k.dim(rho)]++;
    return out;
}

TwistedComplex restrict_entries(const TwistedComplex& t, const std::vector<bool>& keep_entry) {
    const ChainComplex& flat = t.total();
    std::map<int, std::vector<std::size_t>> keep;
    for (int n = flat.lo(); n <= flat.hi(); ++n)
        for (std::size_t i = 0; i < flat.dim(n); ++i)
            if (keep_entry[t.owner(n, i)]) keep[n].push_back(i);
    std::map<int, std::size_t> dims;
    std::map<int, Matrix> diffs;
    for (const auto& [n, idx] : keep) {
        dims[n] = idx.size();
        auto up = keep.find(n + 1);
        if (up != keep.end()) diffs[n] = flat.d(n).submatrix(up->second, idx);
    }
    std::vector<TwistedEntry> entries;
    for (std::size_t e = 0; e < t.size(); ++e)
        if (keep_entry[e]) entries.push_back(t.entries()[e]);
    return TwistedComplex(t.basis(), t.base(), std::move(entries), ChainComplex(dims, diffs));
}

}  // namespace

PosetModule::PosetModule(ComplexPtr base, std::vector<ChainComplex> values, const Actions& cover_actions)
    : base_(std::move(base)), values_(std::move(values)) {
    if (!base_) throw std::invalid_argument("module without a base complex");
    const auto& k = *base_;
    if (values_.size() != k.size())
        throw std::invalid_argument("module has " + std::to_string(values_.size()) + " values but the complex has " +
                                    std::to_string(k.size()) + " simplices");
    for (const auto& [ab, m] : cover_actions) {
        auto [a, b] = ab;
        if (a >= k.size() || b >= k.size() || k.incidence(a, b) == 0)
            throw std::invalid_argument("action given for a pair that is not a covering face pair");
        if (!is_chain_map(values_[b], values_[a], 0, m))
            throw std::invalid_argument("action " + k.label(b) + " -> " + k.label(a) + " is not a chain map");
        actions_[ab] = nonzero_only(m);
    }
    for (SimplexId b = 0; b < k.size(); ++b)
        for (SimplexId a : k.facets(b)) actions_.try_emplace({a, b});
    for (const auto& v : values_) identities_.push_back(identity_blocks(v));
    for (int codim = 2; codim <= k.dimension(); ++codim)
        for (SimplexId b = 0; b < k.size(); ++b) {
            if (k.dim(b) < codim) continue;
            for (SimplexId a : k.faces(b)) {
                if (k.dim(b) - k.dim(a) != codim) continue;
                std::optional<GradedMatrix> first;
                for (SimplexId c : k.cofacets(a)) {
                    if (!k.is_face(c, b)) continue;
                    GradedMatrix comp =
                        compose_blocks(actions_.at({a, c}), actions_.at({c, b}), values_[b], values_[c], values_[a]);
                    if (!first) {
                        first = std::move(comp);
                    } else if (!blocks_equal(*first, comp, values_[b], values_[a])) {
                        throw std::invalid_argument("module actions are not associative on the square " +
                                                    k.label(a) + " <= " + k.label(b));
                    }
                    if (codim > 2) break;
                }
                actions_[{a, b}] = std::move(*first);
            }
        }
}

const GradedMatrix& PosetModule::action(SimplexId a, SimplexId b) const {
    if (a == b) return identities_.at(a);
    auto it = actions_.find({a, b});
    if (it == actions_.end())
        throw std::invalid_argument("no action between " + base_->label(b) + " and " + base_->label(a));
    return it->second;
}

ChainMap PosetModule::action_map(SimplexId a, SimplexId b) const {
    return ChainMap(values_.at(b), values_.at(a), 0, action(a, b));
}

PosetModule::Actions PosetModule::cover_actions() const {
    Actions out;
    for (SimplexId b = 0; b < base_->size(); ++b)
        for (SimplexId a : base_->facets(b)) {
            const auto& m = actions_.at({a, b});
            if (!m.empty()) out[{a, b}] = m;
        }
    return out;
}

bool PosetModule::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](const ChainComplex& c) { return c.is_zero(); });
}

SheafComplex costandard_model(const ComplexPtr& k, SimplexId a) {
    if (a >= k->size()) throw std::invalid_argument("unknown simplex");
    TwistedBuilder b(Basis::costandard, k);
    b.add_entry(a, 0, ChainComplex::concentrated(0, 1));
    return totalize(b.build());
}

SheafMap costandard_inclusion(const ComplexPtr& k, SimplexId a, SimplexId b) {
    if (!k->is_face(a, b)) throw std::invalid_argument("costandard generator needs a face pair");
    SheafComplex ca = costandard_model(k, a), cb = costandard_model(k, b);
    std::vector<GradedMatrix> comps;
    for (SimplexId s = 0; s < k->size(); ++s) {
        auto pa = model_positions(*k, a, s), pb = model_positions(*k, b, s);
        std::map<int, std::vector<Triplet>> trip;
        for (const auto& [rho, i] : pa) trip[-k->dim(rho)].push_back({pb.at(rho), i, Rational(1)});
        GradedMatrix g;
        for (auto& [n, t] : trip) g[n] = Matrix::from_triplets(cb.stalk(s).dim(n), ca.stalk(s).dim(n), std::move(t));
        comps.push_back(std::move(g));
    }
    return SheafMap(std::move(ca), std::move(cb), std::move(comps));
}

PosetModule yoneda_module(const SheafComplex& f) {
    const auto& k = f.complex();
    const ComplexPtr& base = f.base();
    TwistedComplex d = decompose_standard(f);
    std::vector<SheafComplex> models;
    std::vector<TwistedComplex> homs;
    std::vector<ChainComplex> values;
    for (SimplexId a = 0; a < k.size(); ++a) {
        models.push_back(costandard_model(base, a));
        homs.push_back(sheaf_hom_twisted(models.back(), d));
        values.push_back(homs.back().total());
    }
    std::vector<ChainComplex> v;
    for (const auto& e : d.entries()) v.push_back(shift(e.multiplicity, e.shift));
    PosetModule::Actions actions;
    for (SimplexId b = 0; b < k.size(); ++b)
        for (SimplexId a : k.facets(b)) {
            SheafMap incl = costandard_inclusion(base, a, b);
            std::map<int, std::vector<Triplet>> trip;
            for (std::size_t e = 0; e < d.size(); ++e) {
                SimplexId tau = d.entries()[e].simplex;
                if (!k.is_face(tau, a)) continue;
                GradedMatrix blocks = hom_map_blocks(models[a].stalk(tau), models[b].stalk(tau), v[e], v[e],
                                                     incl.component(tau), identity_blocks(v[e]));
                for (const auto& [n, m] : blocks) {
                    BlockLoc src = homs[b].entry_block(e, n), dst = homs[a].entry_block(e, n);
                    for (std::size_t r = 0; r < m.rows(); ++r)
                        for (const auto& [c, x] : m.row(r)) trip[n].push_back({dst.offset + r, src.offset + c, x});
                }
            }
            GradedMatrix g;
            for (auto& [n, t] : trip) g[n] = Matrix::from_triplets(values[a].dim(n), values[b].dim(n), std::move(t));
            actions[{a, b}] = std::move(g);
        }
    return PosetModule(base, std::move(values), actions);
}

void validate_partition(const ComplexPtr& k, const Partition& p) {
    if (p.group.size() != k->size()) throw std::invalid_argument("partition must assign every simplex to a group");
    FacePoset poset(k);
    std::map<std::size_t, SimplexSet> groups;
    for (SimplexId s = 0; s < k->size(); ++s) {
        auto& g = groups.try_emplace(p.group[s], SimplexSet(k->size(), false)).first->second;
        g[s] = true;
    }
    for (const auto& [id, g] : groups)
        if (!poset.is_locally_closed(g))
            throw std::invalid_argument("partition group " + std::to_string(id) + " is not locally closed");
}

Partition singleton_partition(const ComplexPtr& k) {
    Partition p;
    for (SimplexId s = 0; s < k->size(); ++s) p.group.push_back(s);
    return p;
}

Partition one_group_partition(const ComplexPtr& k) { return Partition{std::vector<std::size_t>(k->size(), 0)}; }

bool check_fr(const PosetModule& m, std::size_t bound) {
    for (const auto& v : m.values())
        if (v.total_dim() > bound) return false;
    return true;
}

bool check_slc(const PosetModule& m, const Partition& p) {
    validate_partition(m.base(), p);
    const auto& k = m.complex();
    for (SimplexId b = 0; b < k.size(); ++b)
        for (SimplexId a : k.faces(b))
            if (a != b && p.group[a] == p.group[b] && !is_quasi_iso(m.action_map(a, b))) return false;
    return true;
}

bool is_constructible(const SheafComplex& f, const Partition& p) {
    validate_partition(f.base(), p);
    const auto& k = f.complex();
    for (SimplexId b = 0; b < k.size(); ++b)
        for (SimplexId a : k.faces(b))
            if (a != b && p.group[a] == p.group[b] && !is_quasi_iso(f.generization_map(a, b))) return false;
    return true;
}

TwistedComplex representation_twisted(const PosetModule& m) {
    std::map<std::pair<SimplexId, SimplexId>, GradedMatrix> restrictions;
    const auto& k = m.complex();
    for (SimplexId b = 0; b < k.size(); ++b)
        for (SimplexId a : k.facets(b)) restrictions[{a, b}] = m.action(a, b);
    return standard_model(m.base(), m.values(), restrictions);
}

SheafComplex represent(const PosetModule& m) { return totalize(representation_twisted(m)); }

std::vector<StepIntermediate> step_intermediates(const PosetModule& m) {
    const auto& k = m.complex();
    TwistedComplex t = representation_twisted(m);
    std::vector<StepIntermediate> out;
    for (int cut = k.dimension() + 1; cut >= 0; --cut) {
        std::vector<bool> keep(t.size());
        for (std::size_t e = 0; e < t.size(); ++e) keep[e] = k.dim(t.entries()[e].simplex) < cut;
        StepIntermediate s;
        s.k = cut;
        s.module = yoneda_module(totalize(restrict_entries(t, keep)));
        s.acyclic_above = true;
        for (SimplexId a = 0; a < k.size(); ++a)
            if (k.dim(a) >= cut && !is_acyclic(s.module.value(a))) s.acyclic_above = false;
        out.push_back(std::move(s));
    }
    return out;
}

SheafComplex subdivide_sheaf(const SheafComplex& f, const Subdivision& sd) {
    if (!same_complex(f.base(), sd.original)) throw std::invalid_argument("subdivision of another complex");
    const auto& k = *sd.complex;
    std::vector<ChainComplex> stalks;
    for (SimplexId c = 0; c < k.size(); ++c) stalks.push_back(f.stalk(sd.carrier[c]));
    SheafComplex::Covers covers;
    for (SimplexId b = 0; b < k.size(); ++b)
        for (SimplexId a : k.facets(b)) covers[{a, b}] = f.generization(sd.carrier[a], sd.carrier[b]);
    return SheafComplex(sd.complex, std::move(stalks), covers);
}

bool refine_and_compare(const SheafComplex& f, const Subdivision& sd) {
    SheafComplex fine = represent(yoneda_module(subdivide_sheaf(f, sd)));
    SheafComplex coarse = subdivide_sheaf(represent(yoneda_module(f)), sd);
    return equivalent(fine, coarse);
}

bool valuewise_equal(const PosetModule& a, const PosetModule& b) {
    if (!same_complex(a.base(), b.base())) return false;
    for (SimplexId s = 0; s < a.size(); ++s)
        if (cohomology_dims(a.value(s)) != cohomology_dims(b.value(s))) return false;
    return true;
}

}  // namespace cellsheaf
