#include "cellsheaf/sheaf.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cellsheaf {

GradedMatrix compose_blocks(const GradedMatrix& g, const GradedMatrix& f, const ChainComplex& a, const ChainComplex& b,
                            const ChainComplex& c) {
    (void)a;
    (void)b;
    (void)c;
    GradedMatrix out;
    for (const auto& [n, fm] : f) {
        auto it = g.find(n);
        if (it == g.end()) continue;
        Matrix m = it->second * fm;
        if (!m.is_zero()) out.emplace(n, std::move(m));
    }
    return out;
}

bool blocks_equal(const GradedMatrix& f, const GradedMatrix& g, const ChainComplex& a, const ChainComplex& b) {
    for (int n = a.lo(); n <= a.hi(); ++n) {
        auto fi = f.find(n);
        auto gi = g.find(n);
        bool fz = fi == f.end() || fi->second.is_zero();
        bool gz = gi == g.end() || gi->second.is_zero();
        if (fz && gz) continue;
        if (fz != gz) return false;
        if (fi->second != gi->second) return false;
    }
    (void)b;
    return true;
}

namespace {

GradedMatrix identity_blocks(const ChainComplex& c) {
    GradedMatrix out;
    for (int n = c.lo(); n <= c.hi(); ++n)
        if (c.dim(n)) out.emplace(n, Matrix::identity(c.dim(n)));
    return out;
}

GradedMatrix nonzero_only(GradedMatrix m) {
    for (auto it = m.begin(); it != m.end();) {
        if (it->second.is_zero())
            it = m.erase(it);
        else
            ++it;
    }
    return m;
}

}  // namespace

SheafComplex::SheafComplex(ComplexPtr base, std::vector<ChainComplex> stalks, const Covers& cover_maps)
    : base_(std::move(base)), stalks_(std::move(stalks)) {
    if (!base_) throw std::invalid_argument("sheaf without a base complex");
    const auto& k = *base_;
    if (stalks_.size() != k.size())
        throw std::invalid_argument("sheaf has " + std::to_string(stalks_.size()) + " stalks but the complex has " +
                                    std::to_string(k.size()) + " simplices");
    for (const auto& [ab, m] : cover_maps) {
        auto [a, b] = ab;
        if (a >= k.size() || b >= k.size() || k.incidence(a, b) == 0)
            throw std::invalid_argument("generization map given for a pair that is not a covering face pair");
        if (!is_chain_map(stalks_[a], stalks_[b], 0, m))
            throw std::invalid_argument("generization map " + k.label(a) + " -> " + k.label(b) +
                                        " is not a chain map");
        maps_[ab] = nonzero_only(m);
    }
    for (SimplexId b = 0; b < k.size(); ++b)
        for (SimplexId a : k.facets(b)) maps_.try_emplace({a, b});
    identities_.reserve(k.size());
    for (const auto& s : stalks_) identities_.push_back(identity_blocks(s));
    // Composites in order of increasing codimension.
    for (int codim = 2; codim <= k.dimension(); ++codim) {
        for (SimplexId b = 0; b < k.size(); ++b) {
            if (k.dim(b) < codim) continue;
            for (SimplexId a : k.faces(b)) {
                if (k.dim(b) - k.dim(a) != codim) continue;
                std::optional<GradedMatrix> first;
                for (SimplexId c : k.cofacets(a)) {
                    if (!k.is_face(c, b)) continue;
                    GradedMatrix comp = compose_blocks(maps_.at({c, b}), maps_.at({a, c}), stalks_[a], stalks_[c],
                                                       stalks_[b]);
                    if (!first) {
                        first = std::move(comp);
                    } else if (codim == 2 && !blocks_equal(*first, comp, stalks_[a], stalks_[b])) {
                        throw std::invalid_argument("generization maps are not functorial: the square " +
                                                    k.label(a) + " -> " + k.label(b) + " does not commute");
                    }
                    if (codim > 2) break;
                }
                maps_[{a, b}] = std::move(*first);
            }
        }
    }
}

const GradedMatrix& SheafComplex::generization(SimplexId a, SimplexId b) const {
    if (a == b) return identities_.at(a);
    auto it = maps_.find({a, b});
    if (it == maps_.end())
        throw std::invalid_argument("no generization between " + base_->label(a) + " and " + base_->label(b));
    return it->second;
}

ChainMap SheafComplex::generization_map(SimplexId a, SimplexId b) const {
    return ChainMap(stalks_.at(a), stalks_.at(b), 0, generization(a, b));
}

SheafComplex::Covers SheafComplex::cover_maps() const {
    Covers out;
    for (SimplexId b = 0; b < base_->size(); ++b)
        for (SimplexId a : base_->facets(b)) {
            const auto& m = maps_.at({a, b});
            if (!m.empty()) out[{a, b}] = m;
        }
    return out;
}

bool SheafComplex::is_zero() const {
    return std::all_of(stalks_.begin(), stalks_.end(), [](const ChainComplex& c) { return c.is_zero(); });
}

int SheafComplex::lo() const {
    int lo = 0;
    bool any = false;
    for (const auto& s : stalks_)
        if (!s.is_zero()) {
            lo = any ? std::min(lo, s.lo()) : s.lo();
            any = true;
        }
    return any ? lo : 0;
}

int SheafComplex::hi() const {
    int hi = -1;
    bool any = false;
    for (const auto& s : stalks_)
        if (!s.is_zero()) {
            hi = any ? std::max(hi, s.hi()) : s.hi();
            any = true;
        }
    return any ? hi : -1;
}

SheafMap::SheafMap(SheafComplex source, SheafComplex target, std::vector<GradedMatrix> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
    if (!same_complex(source_.base(), target_.base())) throw std::invalid_argument("sheaf map between different bases");
    const auto& k = source_.complex();
    if (components_.size() != k.size()) throw std::invalid_argument("sheaf map has the wrong number of components");
    for (SimplexId s = 0; s < k.size(); ++s) {
        components_[s] = nonzero_only(std::move(components_[s]));
        if (!is_chain_map(source_.stalk(s), target_.stalk(s), 0, components_[s]))
            throw std::invalid_argument("component at " + k.label(s) + " is not a chain map");
    }
    for (SimplexId b = 0; b < k.size(); ++b)
        for (SimplexId a : k.facets(b)) {
            auto lhs = compose_blocks(target_.generization(a, b), components_[a], source_.stalk(a), target_.stalk(a),
                                      target_.stalk(b));
            auto rhs = compose_blocks(components_[b], source_.generization(a, b), source_.stalk(a), source_.stalk(b),
                                      target_.stalk(b));
            if (!blocks_equal(lhs, rhs, source_.stalk(a), target_.stalk(b)))
                throw std::invalid_argument("sheaf map is not natural at " + k.label(a) + " -> " + k.label(b));
        }
}

SheafMap SheafMap::identity(const SheafComplex& f) {
    std::vector<GradedMatrix> c;
    for (SimplexId s = 0; s < f.size(); ++s) c.push_back(f.generization(s, s));
    return SheafMap(f, f, std::move(c));
}

SheafMap SheafMap::zero(const SheafComplex& source, const SheafComplex& target) {
    return SheafMap(source, target, std::vector<GradedMatrix>(source.size()));
}

ChainMap SheafMap::component_map(SimplexId s) const {
    return ChainMap(source_.stalk(s), target_.stalk(s), 0, components_.at(s));
}

SheafMap compose(const SheafMap& g, const SheafMap& f) {
    std::vector<GradedMatrix> c;
    for (SimplexId s = 0; s < f.source().size(); ++s)
        c.push_back(compose_blocks(g.component(s), f.component(s), f.source().stalk(s), f.target().stalk(s),
                                   g.target().stalk(s)));
    return SheafMap(f.source(), g.target(), std::move(c));
}

SheafMap operator+(const SheafMap& f, const SheafMap& g) {
    std::vector<GradedMatrix> c;
    for (SimplexId s = 0; s < f.source().size(); ++s) c.push_back((f.component_map(s) + g.component_map(s)).blocks());
    return SheafMap(f.source(), f.target(), std::move(c));
}

SheafMap operator*(const Rational& r, const SheafMap& f) {
    std::vector<GradedMatrix> c;
    for (SimplexId s = 0; s < f.source().size(); ++s) {
        GradedMatrix m = f.component(s);
        for (auto& [n, b] : m) b *= r;
        c.push_back(std::move(m));
    }
    return SheafMap(f.source(), f.target(), std::move(c));
}

SheafComplex zero_sheaf(const ComplexPtr& k) { return SheafComplex(k, std::vector<ChainComplex>(k->size()), {}); }

SheafComplex constant_on(const ComplexPtr& k, const SimplexSet& s, int degree) {
    FacePoset p(k);
    if (s.size() != k->size()) throw std::invalid_argument("simplex set has the wrong size");
    if (!p.is_locally_closed(s)) throw std::invalid_argument("constant sheaf on a set that is not locally closed");
    std::vector<ChainComplex> stalks(k->size());
    SheafComplex::Covers covers;
    for (SimplexId a = 0; a < k->size(); ++a) {
        if (!s[a]) continue;
        stalks[a] = ChainComplex::concentrated(degree, 1);
        for (SimplexId b : k->cofacets(a))
            if (s[b]) covers[{a, b}] = GradedMatrix{{degree, Matrix::identity(1)}};
    }
    return SheafComplex(k, std::move(stalks), covers);
}

SheafComplex constant_sheaf(const ComplexPtr& k, int degree) {
    return constant_on(k, SimplexSet(k->size(), true), degree);
}

SheafComplex standard_simplex(const ComplexPtr& k, SimplexId tau) { return constant_on(k, FacePoset(k).closure(tau), 0); }

SheafComplex costandard_simplex(const ComplexPtr& k, SimplexId tau) { return skyscraper(k, tau, -k->dim(tau)); }

SheafComplex skyscraper(const ComplexPtr& k, SimplexId tau, int degree) {
    SimplexSet s(k->size(), false);
    s.at(tau) = true;
    return constant_on(k, s, degree);
}

namespace {

GradedMatrix shift_blocks(const GradedMatrix& m, int k) {
    GradedMatrix out;
    for (const auto& [n, b] : m) out.emplace(n - k, b);
    return out;
}

}  // namespace

SheafComplex shift(const SheafComplex& f, int k) {
    std::vector<ChainComplex> stalks;
    for (const auto& s : f.stalks()) stalks.push_back(shift(s, k));
    SheafComplex::Covers covers;
    for (const auto& [ab, m] : f.cover_maps()) covers[ab] = shift_blocks(m, k);
    return SheafComplex(f.base(), std::move(stalks), covers);
}

SheafMap shift(const SheafMap& f, int k) {
    std::vector<GradedMatrix> c;
    for (SimplexId s = 0; s < f.source().size(); ++s) c.push_back(shift_blocks(f.component(s), k));
    return SheafMap(shift(f.source(), k), shift(f.target(), k), std::move(c));
}

SheafComplex direct_sum(const std::vector<SheafComplex>& parts) {
    if (parts.empty()) throw std::invalid_argument("direct sum of no sheaves");
    const auto& base = parts.front().base();
    for (const auto& p : parts)
        if (!same_complex(p.base(), base)) throw std::invalid_argument("direct sum over different bases");
    std::vector<ChainComplex> stalks;
    for (SimplexId s = 0; s < base->size(); ++s) {
        std::vector<ChainComplex> cs;
        for (const auto& p : parts) cs.push_back(p.stalk(s));
        stalks.push_back(direct_sum(cs));
    }
    SheafComplex::Covers covers;
    for (SimplexId b = 0; b < base->size(); ++b)
        for (SimplexId a : base->facets(b)) {
            std::vector<ChainMap> ms;
            for (const auto& p : parts) ms.push_back(p.generization_map(a, b));
            covers[{a, b}] = direct_sum(ms).blocks();
        }
    return SheafComplex(base, std::move(stalks), covers);
}

SheafMap direct_sum(const std::vector<SheafMap>& parts) {
    std::vector<SheafComplex> src, tgt;
    for (const auto& p : parts) {
        src.push_back(p.source());
        tgt.push_back(p.target());
    }
    SheafComplex s = direct_sum(src), t = direct_sum(tgt);
    std::vector<GradedMatrix> c;
    for (SimplexId x = 0; x < s.size(); ++x) {
        std::vector<ChainMap> ms;
        for (const auto& p : parts) ms.push_back(p.component_map(x));
        c.push_back(direct_sum(ms).blocks());
    }
    return SheafMap(s, t, std::move(c));
}

SheafComplex cone(const SheafMap& f) {
    const auto& k = f.source().complex();
    std::vector<ChainComplex> stalks;
    for (SimplexId s = 0; s < k.size(); ++s) stalks.push_back(cone(f.component_map(s)));
    SheafComplex::Covers covers;
    for (SimplexId b = 0; b < k.size(); ++b)
        for (SimplexId a : k.facets(b)) {
            const auto& A0 = f.source().stalk(a);
            const auto& B0 = f.target().stalk(a);
            const auto& A1 = f.source().stalk(b);
            const auto& B1 = f.target().stalk(b);
            ChainMap ra = f.source().generization_map(a, b);
            ChainMap rb = f.target().generization_map(a, b);
            GradedMatrix m;
            for (int n = stalks[a].lo(); n <= stalks[a].hi(); ++n) {
                Matrix blk(A1.dim(n + 1) + B1.dim(n), A0.dim(n + 1) + B0.dim(n));
                blk.add_block(0, 0, ra.at(n + 1));
                blk.add_block(A1.dim(n + 1), A0.dim(n + 1), rb.at(n));
                if (!blk.is_zero()) m[n] = std::move(blk);
            }
            covers[{a, b}] = std::move(m);
        }
    return SheafComplex(f.source().base(), std::move(stalks), covers);
}

SheafMap cone_inclusion(const SheafMap& f) {
    SheafComplex c = cone(f);
    std::vector<GradedMatrix> comps;
    for (SimplexId s = 0; s < c.size(); ++s) comps.push_back(cone_inclusion(f.component_map(s)).blocks());
    return SheafMap(f.target(), c, std::move(comps));
}

SheafComplex tensor(const SheafComplex& f, const SheafComplex& g) {
    if (!same_complex(f.base(), g.base())) throw std::invalid_argument("tensor product over different bases");
    const auto& k = f.complex();
    std::vector<ChainComplex> stalks;
    for (SimplexId s = 0; s < k.size(); ++s) stalks.push_back(tensor(f.stalk(s), g.stalk(s)));
    SheafComplex::Covers covers;
    for (SimplexId b = 0; b < k.size(); ++b)
        for (SimplexId a : k.facets(b))
            covers[{a, b}] = tensor(f.generization_map(a, b), g.generization_map(a, b)).blocks();
    return SheafComplex(f.base(), std::move(stalks), covers);
}

SheafMap tensor(const SheafMap& u, const SheafMap& v) {
    SheafComplex s = tensor(u.source(), v.source());
    SheafComplex t = tensor(u.target(), v.target());
    std::vector<GradedMatrix> c;
    for (SimplexId x = 0; x < s.size(); ++x) c.push_back(tensor(u.component_map(x), v.component_map(x)).blocks());
    return SheafMap(s, t, std::move(c));
}

SheafComplex change_basis(const SheafComplex& f, const std::vector<std::map<int, Matrix>>& bases) {
    const auto& k = f.complex();
    if (bases.size() != k.size()) throw std::invalid_argument("one basis change per simplex is required");
    auto mat = [&](SimplexId s, int n) -> Matrix {
        auto it = bases[s].find(n);
        return it == bases[s].end() ? Matrix::identity(f.stalk(s).dim(n)) : it->second;
    };
    std::vector<std::map<int, Matrix>> inv(k.size());
    std::vector<ChainComplex> stalks;
    for (SimplexId s = 0; s < k.size(); ++s) {
        const auto& c = f.stalk(s);
        std::map<int, std::size_t> dims = c.dims();
        for (int n = c.lo(); n <= c.hi(); ++n) inv[s][n] = inverse(mat(s, n));
        std::map<int, Matrix> diffs;
        for (int n = c.lo(); n < c.hi(); ++n) diffs[n] = mat(s, n + 1) * c.d(n) * inv[s][n];
        stalks.emplace_back(dims, diffs);
    }
    SheafComplex::Covers covers;
    for (const auto& [ab, m] : f.cover_maps()) {
        GradedMatrix out;
        for (const auto& [n, blk] : m) out[n] = mat(ab.second, n) * blk * inv[ab.first].at(n);
        covers[ab] = std::move(out);
    }
    return SheafComplex(f.base(), std::move(stalks), covers);
}

SheafComplex extend_by_zero(const SheafComplex& f, const SimplexSet& s) {
    FacePoset p(f.base());
    if (s.size() != f.size()) throw std::invalid_argument("simplex set has the wrong size");
    if (!p.is_locally_closed(s)) throw std::invalid_argument("set is not locally closed");
    std::vector<ChainComplex> stalks(f.size());
    for (SimplexId x = 0; x < f.size(); ++x)
        if (s[x]) stalks[x] = f.stalk(x);
    SheafComplex::Covers covers;
    for (const auto& [ab, m] : f.cover_maps())
        if (s[ab.first] && s[ab.second]) covers[ab] = m;
    return SheafComplex(f.base(), std::move(stalks), covers);
}

SheafComplex extend_by_zero_open(const SheafComplex& f, const SimplexSet& open) {
    if (!FacePoset(f.base()).is_open(open)) throw std::invalid_argument("set is not open (not closed under cofaces)");
    return extend_by_zero(f, open);
}

SheafComplex pushforward_closed(const SheafComplex& f, const SimplexSet& closed) {
    if (!FacePoset(f.base()).is_closed(closed)) throw std::invalid_argument("set is not closed (not a subcomplex)");
    return extend_by_zero(f, closed);
}

SheafComplex restrict(const SheafComplex& f, const SimplexSet& s) { return extend_by_zero(f, s); }

SheafComplex pullback(const SimplicialMap& f, const SheafComplex& g) {
    if (!same_complex(f.target(), g.base())) throw std::invalid_argument("pullback of a sheaf on the wrong complex");
    const auto& k = *f.source();
    std::vector<ChainComplex> stalks;
    for (SimplexId s = 0; s < k.size(); ++s) stalks.push_back(g.stalk(f.image(s)));
    SheafComplex::Covers covers;
    for (SimplexId b = 0; b < k.size(); ++b)
        for (SimplexId a : k.facets(b)) covers[{a, b}] = g.generization(f.image(a), f.image(b));
    return SheafComplex(f.source(), std::move(stalks), covers);
}

SheafMap pullback(const SimplicialMap& f, const SheafMap& u) {
    std::vector<GradedMatrix> c;
    for (SimplexId s = 0; s < f.source()->size(); ++s) c.push_back(u.component(f.image(s)));
    return SheafMap(pullback(f, u.source()), pullback(f, u.target()), std::move(c));
}

std::vector<std::map<int, std::size_t>> stalk_cohomology(const SheafComplex& f) {
    std::vector<std::map<int, std::size_t>> out;
    for (const auto& s : f.stalks()) out.push_back(cohomology_dims(s));
    return out;
}

bool is_formal_pure(const SheafComplex& f) {
    std::set<int> degrees;
    for (const auto& h : stalk_cohomology(f))
        for (const auto& [n, d] : h) degrees.insert(n);
    return degrees.size() <= 1;
}

SheafComplex formalize(const SheafComplex& f) {
    std::set<int> degrees;
    auto coh = stalk_cohomology(f);
    for (const auto& h : coh)
        for (const auto& [n, d] : h) degrees.insert(n);
    if (degrees.size() > 1) throw std::invalid_argument("stalk cohomology is not concentrated in one degree");
    if (degrees.empty()) return zero_sheaf(f.base());
    const int d = *degrees.begin();
    const auto& k = f.complex();
    std::vector<Cohomology> hs;
    std::vector<ChainComplex> stalks;
    for (SimplexId s = 0; s < k.size(); ++s) {
        hs.push_back(cohomology(f.stalk(s)));
        auto it = hs.back().dims.find(d);
        stalks.push_back(ChainComplex::concentrated(d, it == hs.back().dims.end() ? 0 : it->second));
    }
    SheafComplex::Covers covers;
    for (SimplexId b = 0; b < k.size(); ++b)
        for (SimplexId a : k.facets(b)) {
            Matrix m = induced_on_cohomology(f.generization_map(a, b), hs[a], hs[b], d);
            if (!m.is_zero()) covers[{a, b}] = GradedMatrix{{d, std::move(m)}};
        }
    return SheafComplex(f.base(), std::move(stalks), covers);
}

bool is_quasi_iso(const SheafMap& f) {
    for (SimplexId s = 0; s < f.source().size(); ++s)
        if (!is_quasi_iso(f.component_map(s))) return false;
    return true;
}

}  // namespace cellsheaf
