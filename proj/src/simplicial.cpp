#include "cellsheaf/simplicial.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cellsheaf {

namespace {

bool simplex_less(const VertexList& a, const VertexList& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

constexpr std::size_t kMaxSimplexSize = 16;

}  // namespace

SimplicialComplex::SimplicialComplex(std::vector<std::string> vertex_names, const std::vector<VertexList>& maximal,
                                     const std::map<std::string, VertexList>& simplex_names)
    : vertex_names_(std::move(vertex_names)) {
    {
        std::set<std::string> seen;
        for (const auto& n : vertex_names_) {
            if (n.empty()) throw std::invalid_argument("empty vertex name");
            if (!seen.insert(n).second) throw std::invalid_argument("duplicate vertex name \"" + n + "\"");
        }
    }
    std::set<VertexList> all;
    for (std::size_t v = 0; v < vertex_names_.size(); ++v) all.insert({v});
    for (const auto& s : maximal) {
        if (s.empty()) throw std::invalid_argument("empty simplex");
        if (s.size() > kMaxSimplexSize) throw std::invalid_argument("simplex dimension too large");
        VertexList sorted = s;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("simplex with repeated vertex");
        if (sorted.back() >= vertex_names_.size()) throw std::invalid_argument("simplex vertex out of range");
        if (all.count(sorted)) continue;
        const std::size_t k = sorted.size();
        for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
            VertexList f;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (std::size_t{1} << i)) f.push_back(sorted[i]);
            all.insert(std::move(f));
        }
    }
    simplices_.assign(all.begin(), all.end());
    std::sort(simplices_.begin(), simplices_.end(), simplex_less);
    for (SimplexId i = 0; i < simplices_.size(); ++i) index_[simplices_[i]] = i;
    facets_.resize(simplices_.size());
    cofacets_.resize(simplices_.size());
    for (SimplexId i = 0; i < simplices_.size(); ++i) {
        const auto& s = simplices_[i];
        if (s.size() < 2) continue;
        for (std::size_t j = 0; j < s.size(); ++j) {
            VertexList f = s;
            f.erase(f.begin() + static_cast<std::ptrdiff_t>(j));
            SimplexId fi = index_.at(f);
            facets_[i].push_back(fi);
            cofacets_[fi].push_back(i);
        }
        std::sort(facets_[i].begin(), facets_[i].end());
    }
    for (auto& c : cofacets_) std::sort(c.begin(), c.end());
    for (const auto& [name, verts] : simplex_names) {
        VertexList sorted = verts;
        std::sort(sorted.begin(), sorted.end());
        auto it = index_.find(sorted);
        if (it == index_.end()) throw std::invalid_argument("named simplex \"" + name + "\" is not in the complex");
        if (name.empty() || name.find(',') != std::string::npos)
            throw std::invalid_argument("invalid simplex name \"" + name + "\"");
        names_[name] = it->second;
    }
}

SimplicialComplex SimplicialComplex::from_names(std::vector<std::string> vertex_names,
                                                const std::vector<std::vector<std::string>>& maximal,
                                                const std::map<std::string, std::vector<std::string>>& simplex_names) {
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < vertex_names.size(); ++i) idx[vertex_names[i]] = i;
    auto convert = [&](const std::vector<std::string>& s) {
        VertexList out;
        for (const auto& n : s) {
            auto it = idx.find(n);
            if (it == idx.end()) throw std::invalid_argument("unknown vertex \"" + n + "\"");
            out.push_back(it->second);
        }
        return out;
    };
    std::vector<VertexList> m;
    for (const auto& s : maximal) m.push_back(convert(s));
    std::map<std::string, VertexList> names;
    for (const auto& [n, s] : simplex_names) names[n] = convert(s);
    return SimplicialComplex(std::move(vertex_names), m, names);
}

int SimplicialComplex::dimension() const { return simplices_.empty() ? -1 : static_cast<int>(simplices_.back().size()) - 1; }

std::size_t SimplicialComplex::vertex_index(const std::string& name) const {
    for (std::size_t i = 0; i < vertex_names_.size(); ++i)
        if (vertex_names_[i] == name) return i;
    throw std::invalid_argument("unknown vertex \"" + name + "\"");
}

std::optional<SimplexId> SimplicialComplex::find(const VertexList& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

SimplexId SimplicialComplex::id(const VertexList& v) const {
    auto s = find(v);
    if (!s) {
        std::ostringstream os;
        os << "no simplex with vertices {";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        os << "}";
        throw std::invalid_argument(os.str());
    }
    return *s;
}

SimplexId SimplicialComplex::parse_simplex(const std::string& text) const {
    auto named = names_.find(text);
    if (named != names_.end()) return named->second;
    VertexList v;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) v.push_back(vertex_index(part));
    std::sort(v.begin(), v.end());
    if (v.empty()) throw std::invalid_argument("empty simplex specification");
    return id(v);
}

std::string SimplicialComplex::label(SimplexId s) const {
    for (const auto& [n, id] : names_)
        if (id == s) return n;
    std::string out;
    for (std::size_t i = 0; i < simplices_.at(s).size(); ++i) out += (i ? "," : "") + vertex_names_[simplices_[s][i]];
    return out;
}

bool SimplicialComplex::is_face(SimplexId a, SimplexId b) const {
    if (a == b) return true;
    const auto& va = simplices_.at(a);
    const auto& vb = simplices_.at(b);
    if (va.size() >= vb.size()) return false;
    return std::includes(vb.begin(), vb.end(), va.begin(), va.end());
}

int SimplicialComplex::incidence(SimplexId a, SimplexId b) const {
    const auto& va = simplices_.at(a);
    const auto& vb = simplices_.at(b);
    if (va.size() + 1 != vb.size()) return 0;
    for (std::size_t i = 0; i < vb.size(); ++i) {
        VertexList f = vb;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        if (f == va) return (i % 2 == 0) ? 1 : -1;
    }
    return 0;
}

std::vector<SimplexId> SimplicialComplex::faces(SimplexId s) const {
    std::vector<SimplexId> out;
    for (SimplexId t = 0; t <= s; ++t)
        if (is_face(t, s)) out.push_back(t);
    return out;
}

std::vector<SimplexId> SimplicialComplex::star(SimplexId s) const {
    std::vector<SimplexId> out;
    for (SimplexId t = s; t < simplices_.size(); ++t)
        if (is_face(s, t)) out.push_back(t);
    return out;
}

std::vector<SimplexId> SimplicialComplex::maximal_simplices() const {
    std::vector<SimplexId> out;
    for (SimplexId s = 0; s < simplices_.size(); ++s)
        if (cofacets_[s].empty()) out.push_back(s);
    return out;
}

bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.vertex_names_ == b.vertex_names_ && a.simplices_ == b.simplices_ && a.names_ == b.names_;
}

ComplexPtr make_complex(SimplicialComplex k) { return std::make_shared<const SimplicialComplex>(std::move(k)); }

bool same_complex(const ComplexPtr& a, const ComplexPtr& b) { return a == b || (a && b && *a == *b); }

std::vector<std::vector<SimplexId>> FacePoset::chains(const SimplexSet& subset) const {
    std::vector<std::vector<SimplexId>> out;
    std::vector<SimplexId> cur;
    auto extend = [&](auto&& self) -> void {
        out.push_back(cur);
        SimplexId last = cur.back();
        for (SimplexId t : k_->star(last))
            if (t != last && subset[t]) {
                cur.push_back(t);
                self(self);
                cur.pop_back();
            }
    };
    for (SimplexId s = 0; s < k_->size(); ++s) {
        if (!subset.at(s)) continue;
        cur = {s};
        extend(extend);
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return out;
}

std::vector<std::vector<SimplexId>> FacePoset::chains() const { return chains(all()); }

std::vector<std::pair<SimplexId, SimplexId>> FacePoset::covers() const {
    std::vector<std::pair<SimplexId, SimplexId>> out;
    for (SimplexId s = 0; s < k_->size(); ++s)
        for (SimplexId f : k_->facets(s)) out.emplace_back(f, s);
    std::sort(out.begin(), out.end());
    return out;
}

SimplexSet FacePoset::up_closure(const SimplexSet& s) const {
    SimplexSet out(k_->size(), false);
    for (SimplexId a = 0; a < k_->size(); ++a)
        if (s.at(a))
            for (SimplexId b : k_->star(a)) out[b] = true;
    return out;
}

SimplexSet FacePoset::down_closure(const SimplexSet& s) const {
    SimplexSet out(k_->size(), false);
    for (SimplexId a = 0; a < k_->size(); ++a)
        if (s.at(a))
            for (SimplexId b : k_->faces(a)) out[b] = true;
    return out;
}

SimplexSet FacePoset::star(SimplexId s) const {
    SimplexSet out(k_->size(), false);
    for (SimplexId b : k_->star(s)) out[b] = true;
    return out;
}

SimplexSet FacePoset::closure(SimplexId s) const {
    SimplexSet out(k_->size(), false);
    for (SimplexId b : k_->faces(s)) out[b] = true;
    return out;
}

bool FacePoset::is_open(const SimplexSet& s) const { return up_closure(s) == s; }
bool FacePoset::is_closed(const SimplexSet& s) const { return down_closure(s) == s; }

bool FacePoset::is_locally_closed(const SimplexSet& s) const {
    return intersection(up_closure(s), down_closure(s)) == s;
}

FacePoset face_poset(const ComplexPtr& k) { return FacePoset(k); }

SimplexSet complement(const SimplexSet& s) {
    SimplexSet out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = !s[i];
    return out;
}

SimplexSet intersection(const SimplexSet& a, const SimplexSet& b) {
    if (a.size() != b.size()) throw std::invalid_argument("simplex sets over different complexes");
    SimplexSet out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
    return out;
}

std::vector<SimplexId> members(const SimplexSet& s) {
    std::vector<SimplexId> out;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i]) out.push_back(i);
    return out;
}

SimplicialMap::SimplicialMap(ComplexPtr source, ComplexPtr target, std::vector<std::size_t> vertex_map)
    : source_(std::move(source)), target_(std::move(target)), vertex_map_(std::move(vertex_map)) {
    if (!source_ || !target_) throw std::invalid_argument("simplicial map without complexes");
    if (vertex_map_.size() != source_->num_vertices())
        throw std::invalid_argument("vertex map size does not match the source vertex count");
    for (auto v : vertex_map_)
        if (v >= target_->num_vertices()) throw std::invalid_argument("vertex map value out of range");
    image_.resize(source_->size());
    for (SimplexId s = 0; s < source_->size(); ++s) {
        VertexList img;
        for (auto v : source_->vertices(s)) img.push_back(vertex_map_[v]);
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        auto t = target_->find(img);
        if (!t)
            throw std::invalid_argument("vertex map does not send simplex " + source_->label(s) +
                                        " to a simplex of the target");
        image_[s] = *t;
    }
}

SimplicialMap SimplicialMap::identity(const ComplexPtr& k) {
    std::vector<std::size_t> v(k->num_vertices());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return SimplicialMap(k, k, std::move(v));
}

SimplexSet SimplicialMap::preimage(const SimplexSet& t) const {
    SimplexSet out(source_->size(), false);
    for (SimplexId s = 0; s < source_->size(); ++s) out[s] = t.at(image_[s]);
    return out;
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
    if (!same_complex(f.target(), g.source())) throw std::invalid_argument("composition of non-composable maps");
    std::vector<std::size_t> v;
    for (auto x : f.vertex_map()) v.push_back(g.vertex_map()[x]);
    return SimplicialMap(f.source(), g.target(), std::move(v));
}

Subdivision barycentric_subdivision(const ComplexPtr& k) {
    FacePoset p(k);
    std::vector<std::string> names;
    for (SimplexId s = 0; s < k->size(); ++s) names.push_back("[" + k->label(s) + "]");
    std::vector<VertexList> simplices;
    for (const auto& c : p.chains()) simplices.push_back(VertexList(c.begin(), c.end()));
    Subdivision sd;
    sd.original = k;
    sd.complex = make_complex(SimplicialComplex(std::move(names), simplices));
    sd.carrier.resize(sd.complex->size());
    for (SimplexId s = 0; s < sd.complex->size(); ++s) sd.carrier[s] = sd.complex->vertices(s).back();
    return sd;
}

Product staircase_product(const ComplexPtr& k, const ComplexPtr& l) {
    const std::size_t nl = l->num_vertices();
    std::vector<std::string> names;
    for (const auto& a : k->vertex_names())
        for (const auto& b : l->vertex_names()) names.push_back("(" + a + "," + b + ")");
    std::vector<VertexList> simplices;
    VertexList chain, left, right;
    auto push_unique = [](VertexList& v, std::size_t x) {
        if (v.empty() || v.back() != x) {
            v.push_back(x);
            return true;
        }
        return false;
    };
    auto extend = [&](auto&& self) -> void {
        simplices.push_back(chain);
        std::size_t last = chain.back();
        std::size_t v0 = last / nl, w0 = last % nl;
        for (std::size_t v = v0; v < k->num_vertices(); ++v)
            for (std::size_t w = w0; w < nl; ++w) {
                if (v == v0 && w == w0) continue;
                bool pl = push_unique(left, v), pr = push_unique(right, w);
                if (k->find(left) && l->find(right)) {
                    chain.push_back(v * nl + w);
                    self(self);
                    chain.pop_back();
                }
                if (pl) left.pop_back();
                if (pr) right.pop_back();
            }
    };
    for (std::size_t v = 0; v < k->num_vertices(); ++v)
        for (std::size_t w = 0; w < nl; ++w) {
            chain = {v * nl + w};
            left = {v};
            right = {w};
            extend(extend);
        }
    Product p;
    p.left = k;
    p.right = l;
    p.complex = make_complex(SimplicialComplex(std::move(names), simplices));
    std::vector<std::size_t> m0, m1;
    for (std::size_t v = 0; v < k->num_vertices(); ++v)
        for (std::size_t w = 0; w < nl; ++w) {
            m0.push_back(v);
            m1.push_back(w);
        }
    p.p0 = SimplicialMap(p.complex, k, std::move(m0));
    p.p1 = SimplicialMap(p.complex, l, std::move(m1));
    return p;
}

DiagonalEmbedding diagonal_subcomplex(const ComplexPtr& k) {
    DiagonalEmbedding d;
    d.product = staircase_product(k, k);
    std::vector<std::size_t> m;
    for (std::size_t v = 0; v < k->num_vertices(); ++v) m.push_back(d.product.vertex(v, v));
    d.embedding = SimplicialMap(k, d.product.complex, std::move(m));
    d.image = SimplexSet(d.product.complex->size(), false);
    for (SimplexId s = 0; s < k->size(); ++s) d.image[d.embedding.image(s)] = true;
    return d;
}

SimplicialComplex link(const SimplicialComplex& k, SimplexId s) {
    const auto& vs = k.vertices(s);
    std::vector<VertexList> found;
    std::set<std::size_t> verts;
    for (SimplexId t = 0; t < k.size(); ++t) {
        const auto& vt = k.vertices(t);
        VertexList inter;
        std::set_intersection(vs.begin(), vs.end(), vt.begin(), vt.end(), std::back_inserter(inter));
        if (!inter.empty()) continue;
        VertexList join;
        std::set_union(vs.begin(), vs.end(), vt.begin(), vt.end(), std::back_inserter(join));
        if (!k.find(join)) continue;
        found.push_back(vt);
        verts.insert(vt.begin(), vt.end());
    }
    std::vector<std::size_t> order(verts.begin(), verts.end());
    std::map<std::size_t, std::size_t> re;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < order.size(); ++i) {
        re[order[i]] = i;
        names.push_back(k.vertex_names()[order[i]]);
    }
    for (auto& f : found)
        for (auto& v : f) v = re.at(v);
    return SimplicialComplex(std::move(names), found);
}

SimplicialComplex subcomplex(const SimplicialComplex& k, const SimplexSet& closed) {
    std::set<std::size_t> verts;
    std::vector<VertexList> found;
    for (SimplexId t = 0; t < k.size(); ++t)
        if (closed.at(t)) {
            found.push_back(k.vertices(t));
            verts.insert(k.vertices(t).begin(), k.vertices(t).end());
        }
    std::vector<std::size_t> order(verts.begin(), verts.end());
    std::map<std::size_t, std::size_t> re;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < order.size(); ++i) {
        re[order[i]] = i;
        names.push_back(k.vertex_names()[order[i]]);
    }
    for (auto& f : found)
        for (auto& v : f) v = re.at(v);
    return SimplicialComplex(std::move(names), found);
}

}  // namespace cellsheaf
