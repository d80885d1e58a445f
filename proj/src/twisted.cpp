#include "cellsheaf/twisted.hpp"

#include <algorithm>
#include <stdexcept>

namespace cellsheaf {

namespace {

Rational sign_of(int k) { return (k % 2 == 0) ? Rational(1) : Rational(-1); }

std::map<int, std::vector<std::size_t>> compute_offsets(const std::vector<ChainComplex>& parts) {
    std::map<int, std::vector<std::size_t>> out;
    int lo = 0, hi = -1;
    bool any = false;
    for (const auto& c : parts) {
        if (c.is_zero()) continue;
        lo = any ? std::min(lo, c.lo()) : c.lo();
        hi = any ? std::max(hi, c.hi()) : c.hi();
        any = true;
    }
    if (!any) return out;
    for (int n = lo; n <= hi; ++n) {
        std::vector<std::size_t> off(parts.size() + 1, 0);
        for (std::size_t e = 0; e < parts.size(); ++e) off[e + 1] = off[e] + parts[e].dim(n);
        if (off.back()) out[n] = std::move(off);
    }
    return out;
}

bool related(Basis b, const SimplicialComplex& k, SimplexId from, SimplexId to) {
    return b == Basis::standard ? k.is_face(to, from) : k.is_face(from, to);
}

// Entries sorted for a basis: standard by decreasing dimension, costandard by
// increasing; ties broken by id.
bool entry_before(Basis b, const SimplicialComplex& k, SimplexId x, SimplexId y) {
    if (k.dim(x) != k.dim(y)) return b == Basis::standard ? k.dim(x) > k.dim(y) : k.dim(x) < k.dim(y);
    return x < y;
}

// Position of each flat basis vector inside the stalk at s of a standard
// totalization, or -1 when the vector does not survive there.
std::map<int, std::vector<long>> standard_positions(const TwistedComplex& t, SimplexId s) {
    const auto& k = *t.base();
    std::map<int, std::vector<long>> out;
    const ChainComplex& flat = t.total();
    for (int n = flat.lo(); n <= flat.hi(); ++n) {
        std::vector<long> pos(flat.dim(n), -1);
        long next = 0;
        for (std::size_t i = 0; i < pos.size(); ++i)
            if (k.is_face(s, t.owner_simplex(n, i))) pos[i] = next++;
        out[n] = std::move(pos);
    }
    return out;
}

std::map<int, std::vector<std::size_t>> surviving(const std::map<int, std::vector<long>>& pos) {
    std::map<int, std::vector<std::size_t>> out;
    for (const auto& [n, p] : pos)
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] >= 0) out[n].push_back(i);
    return out;
}

ChainComplex restrict_flat(const ChainComplex& flat, const std::map<int, std::vector<std::size_t>>& keep) {
    std::map<int, std::size_t> dims;
    std::map<int, Matrix> diffs;
    static const std::vector<std::size_t> none;
    auto get = [&](int n) -> const std::vector<std::size_t>& {
        auto it = keep.find(n);
        return it == keep.end() ? none : it->second;
    };
    for (const auto& [n, idx] : keep) {
        dims[n] = idx.size();
        const auto& up = get(n + 1);
        if (!up.empty() && !idx.empty()) diffs[n] = flat.d(n).submatrix(up, idx);
    }
    return ChainComplex(dims, diffs);
}

std::vector<CellularChains> star_chains(const SheafComplex& f) {
    FacePoset p(f.base());
    std::vector<CellularChains> out;
    for (SimplexId s = 0; s < f.size(); ++s) out.push_back(cellular_chains(f, p.star(s)));
    return out;
}

std::map<std::pair<SimplexId, SimplexId>, GradedMatrix> star_inclusions(const SimplicialComplex& k,
                                                                         const std::vector<CellularChains>& c) {
    std::map<std::pair<SimplexId, SimplexId>, GradedMatrix> out;
    for (SimplexId a = 0; a < k.size(); ++a)
        for (SimplexId b : k.facets(a)) out[{b, a}] = cellular_inclusion(c[a], c[b]).blocks();
    return out;
}

std::size_t entry_of(const TwistedComplex& t, SimplexId s) {
    for (std::size_t e = 0; e < t.size(); ++e)
        if (t.entries()[e].simplex == s) return e;
    throw std::invalid_argument("no entry on simplex " + t.base()->label(s));
}

}  // namespace

std::string to_string(Basis b) { return b == Basis::standard ? "standard" : "costandard"; }

TwistedComplex::TwistedComplex(Basis basis, ComplexPtr base, std::vector<TwistedEntry> entries, ChainComplex total)
    : basis_(basis), base_(std::move(base)), entries_(std::move(entries)), total_(std::move(total)) {
    if (!base_) throw std::invalid_argument("twisted complex without a base");
    for (const auto& e : entries_) {
        if (e.simplex >= base_->size()) throw std::invalid_argument("twisted entry on an unknown simplex");
        shifted_.push_back(shift(e.multiplicity, e.shift));
    }
    offsets_ = compute_offsets(shifted_);
    for (int n = std::min(total_.lo(), offsets_.empty() ? total_.lo() : offsets_.begin()->first);
         n <= std::max(total_.hi(), offsets_.empty() ? total_.hi() : offsets_.rbegin()->first); ++n) {
        auto it = offsets_.find(n);
        std::size_t expected = it == offsets_.end() ? 0 : it->second.back();
        if (total_.dim(n) != expected)
            throw std::invalid_argument("twisted complex: total dimension mismatch in degree " + std::to_string(n));
    }
    for (int n = total_.lo(); n < total_.hi(); ++n) {
        const Matrix& d = total_.d(n);
        for (std::size_t r = 0; r < d.rows(); ++r) {
            if (d.row(r).empty()) continue;
            SimplexId to = owner_simplex(n + 1, r);
            for (const auto& [c, v] : d.row(r)) {
                SimplexId from = owner_simplex(n, c);
                if (!related(basis_, *base_, from, to))
                    throw std::invalid_argument("twisted complex: component from " + base_->label(from) + " to " +
                                                base_->label(to) + " breaks the " + to_string(basis_) + " order");
            }
        }
    }
    for (std::size_t e = 0; e < entries_.size(); ++e)
        for (int n = shifted_[e].lo(); n < shifted_[e].hi(); ++n)
            if (component(e, e, n) != shifted_[e].d(n))
                throw std::invalid_argument("twisted complex: diagonal block differs from the entry differential");
}

BlockLoc TwistedComplex::entry_block(std::size_t e, int n) const {
    if (e >= entries_.size()) throw std::out_of_range("twisted entry index");
    auto it = offsets_.find(n);
    if (it == offsets_.end()) return {n, 0, 0};
    return {n, it->second[e], it->second[e + 1] - it->second[e]};
}

std::size_t TwistedComplex::owner(int n, std::size_t i) const {
    auto it = offsets_.find(n);
    if (it == offsets_.end() || i >= it->second.back()) throw std::out_of_range("basis vector outside the complex");
    const auto& off = it->second;
    auto pos = std::upper_bound(off.begin(), off.end(), i);
    return static_cast<std::size_t>(pos - off.begin()) - 1;
}

Matrix TwistedComplex::component(std::size_t from, std::size_t to, int n) const {
    BlockLoc s = entry_block(from, n), t = entry_block(to, n + 1);
    std::vector<std::size_t> rows(t.dim), cols(s.dim);
    for (std::size_t k = 0; k < t.dim; ++k) rows[k] = t.offset + k;
    for (std::size_t k = 0; k < s.dim; ++k) cols[k] = s.offset + k;
    if (rows.empty() || cols.empty()) return Matrix(rows.size(), cols.size());
    return total_.d(n).submatrix(rows, cols);
}

std::map<SimplexId, long> TwistedComplex::k0() const {
    std::map<SimplexId, long> out;
    for (const auto& e : entries_) {
        long c = (e.shift % 2 == 0 ? 1 : -1) * euler_characteristic(e.multiplicity);
        out[e.simplex] += c;
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

std::size_t TwistedBuilder::add_entry(SimplexId simplex, int shift, ChainComplex multiplicity) {
    entries_.push_back({simplex, shift, std::move(multiplicity)});
    return entries_.size() - 1;
}

void TwistedBuilder::connect(std::size_t from, std::size_t to, const GradedMatrix& blocks) {
    if (from >= entries_.size() || to >= entries_.size()) throw std::out_of_range("twisted entry index");
    links_.emplace_back(from, to, blocks);
}

TwistedComplex TwistedBuilder::build() const {
    std::vector<ChainComplex> parts;
    for (const auto& e : entries_) parts.push_back(shift(e.multiplicity, e.shift));
    auto offsets = compute_offsets(parts);
    std::map<int, std::size_t> dims;
    for (const auto& [n, off] : offsets) dims[n] = off.back();
    auto dim_of = [&](int n) { return dims.count(n) ? dims.at(n) : std::size_t(0); };
    auto off_of = [&](int n, std::size_t e) { return offsets.count(n) ? offsets.at(n)[e] : std::size_t(0); };
    std::map<int, std::vector<Triplet>> trip;
    auto place = [&](int n, std::size_t r0, std::size_t c0, const Matrix& m) {
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (const auto& [c, v] : m.row(r)) trip[n].push_back({r0 + r, c0 + c, v});
    };
    for (std::size_t e = 0; e < parts.size(); ++e)
        for (int n = parts[e].lo(); n < parts[e].hi(); ++n) place(n, off_of(n + 1, e), off_of(n, e), parts[e].d(n));
    for (const auto& [from, to, blocks] : links_)
        for (const auto& [n, m] : blocks) {
            if (m.rows() != parts[to].dim(n + 1) || m.cols() != parts[from].dim(n))
                throw std::invalid_argument("twisted connection has the wrong shape in degree " + std::to_string(n));
            place(n, off_of(n + 1, to), off_of(n, from), m);
        }
    std::map<int, Matrix> diffs;
    for (auto& [n, t] : trip) diffs[n] = Matrix::from_triplets(dim_of(n + 1), dim_of(n), std::move(t));
    return TwistedComplex(basis_, base_, entries_, ChainComplex(dims, diffs));
}

TwistedComplex twisted_from_labels(Basis basis, const ComplexPtr& base, const ChainComplex& flat,
                                   const std::map<int, std::vector<SimplexId>>& labels) {
    const auto& k = *base;
    std::vector<SimplexId> order;
    for (const auto& [n, lab] : labels) {
        if (lab.size() != flat.dim(n)) throw std::invalid_argument("label count does not match the complex");
        order.insert(order.end(), lab.begin(), lab.end());
    }
    std::sort(order.begin(), order.end(), [&](SimplexId x, SimplexId y) { return entry_before(basis, k, x, y); });
    order.erase(std::unique(order.begin(), order.end()), order.end());

    // per degree, new position of each old index
    std::map<int, std::vector<std::size_t>> perm;
    std::map<int, std::map<SimplexId, std::vector<std::size_t>>> groups;
    for (const auto& [n, lab] : labels)
        for (std::size_t i = 0; i < lab.size(); ++i) groups[n][lab[i]].push_back(i);
    std::map<int, std::size_t> dims;
    for (auto& [n, g] : groups) {
        std::vector<std::size_t> p(flat.dim(n));
        std::size_t next = 0;
        for (SimplexId s : order) {
            auto it = g.find(s);
            if (it == g.end()) continue;
            for (std::size_t i : it->second) p[i] = next++;
        }
        perm[n] = std::move(p);
        dims[n] = next;
    }
    std::map<int, Matrix> diffs;
    for (int n = flat.lo(); n < flat.hi(); ++n) {
        const Matrix& d = flat.d(n);
        std::vector<Triplet> t;
        for (std::size_t r = 0; r < d.rows(); ++r)
            for (const auto& [c, v] : d.row(r)) t.push_back({perm[n + 1][r], perm[n][c], v});
        diffs[n] = Matrix::from_triplets(flat.dim(n + 1), flat.dim(n), std::move(t));
    }
    ChainComplex total(dims, diffs);

    std::vector<TwistedEntry> entries;
    for (SimplexId s : order) {
        std::map<int, std::vector<std::size_t>> keep;
        for (auto& [n, g] : groups) {
            auto it = g.find(s);
            if (it == g.end()) continue;
            for (std::size_t i : it->second) keep[n].push_back(perm[n][i]);
        }
        entries.push_back({s, 0, restrict_flat(total, keep)});
    }
    return TwistedComplex(basis, base, std::move(entries), std::move(total));
}

TwistedComplex minimize(const TwistedComplex& t) {
    const auto& k = *t.base();
    const ChainComplex& flat = t.total();
    using Sparse = std::map<std::size_t, std::map<std::size_t, Rational>>;
    std::map<int, Sparse> rows, cols;  // d_n: rows in degree n + 1, columns in degree n
    std::map<int, std::vector<bool>> alive;
    for (int n = flat.lo(); n <= flat.hi(); ++n) alive[n] = std::vector<bool>(flat.dim(n), true);
    for (int n = flat.lo(); n < flat.hi(); ++n) {
        const Matrix& d = flat.d(n);
        for (std::size_t r = 0; r < d.rows(); ++r)
            for (const auto& [c, v] : d.row(r)) {
                rows[n][r][c] = v;
                cols[n][c][r] = v;
            }
    }
    auto set = [&](int n, std::size_t r, std::size_t c, const Rational& v) {
        if (v.is_zero()) {
            rows[n][r].erase(c);
            cols[n][c].erase(r);
        } else {
            rows[n][r][c] = v;
            cols[n][c][r] = v;
        }
    };
    auto drop_row = [&](int n, std::size_t r) {
        auto it = rows[n].find(r);
        if (it == rows[n].end()) return;
        for (const auto& [c, v] : it->second) cols[n][c].erase(r);
        rows[n].erase(it);
    };
    auto drop_col = [&](int n, std::size_t c) {
        auto it = cols[n].find(c);
        if (it == cols[n].end()) return;
        for (const auto& [r, v] : it->second) rows[n][r].erase(c);
        cols[n].erase(it);
    };

    std::vector<SimplexId> owners;
    for (const auto& e : t.entries()) owners.push_back(e.simplex);
    std::sort(owners.begin(), owners.end());
    owners.erase(std::unique(owners.begin(), owners.end()), owners.end());

    for (SimplexId o : owners) {
        for (;;) {
            bool found = false;
            int pn = 0;
            std::size_t px = 0, py = 0;
            for (auto& [n, cmap] : cols) {
                for (auto& [x, col] : cmap) {
                    if (col.empty() || t.owner_simplex(n, x) != o) continue;
                    for (auto& [y, v] : col)
                        if (t.owner_simplex(n + 1, y) == o) {
                            found = true;
                            py = y;
                            break;
                        }
                    if (found) {
                        px = x;
                        break;
                    }
                }
                if (found) {
                    pn = n;
                    break;
                }
            }
            if (!found) break;
            const Rational alpha = rows[pn][py][px];
            std::map<std::size_t, Rational> colx = cols[pn][px], rowy = rows[pn][py];
            for (const auto& [w, a] : colx) {
                if (w == py) continue;
                for (const auto& [u, b] : rowy) {
                    if (u == px) continue;
                    Rational cur;
                    auto rw = rows[pn].find(w);
                    if (rw != rows[pn].end()) {
                        auto ce = rw->second.find(u);
                        if (ce != rw->second.end()) cur = ce->second;
                    }
                    set(pn, w, u, cur - a * b / alpha);
                }
            }
            drop_col(pn, px);
            drop_row(pn, py);
            drop_row(pn - 1, px);
            drop_col(pn + 1, py);
            alive[pn][px] = false;
            alive[pn + 1][py] = false;
        }
    }

    // one entry per (simplex, degree)
    std::vector<std::pair<SimplexId, int>> keys;
    std::map<std::pair<SimplexId, int>, std::vector<std::size_t>> members_of;
    for (const auto& [n, a] : alive)
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i]) members_of[{t.owner_simplex(n, i), n}].push_back(i);
    for (const auto& [key, m] : members_of) keys.push_back(key);
    std::sort(keys.begin(), keys.end(), [&](const auto& x, const auto& y) {
        if (x.first != y.first) return entry_before(t.basis(), k, x.first, y.first);
        return x.second < y.second;
    });
    std::map<int, std::vector<long>> pos;
    for (const auto& [n, a] : alive) pos[n] = std::vector<long>(a.size(), -1);
    std::map<int, std::size_t> dims;
    std::vector<TwistedEntry> entries;
    for (const auto& key : keys) {
        const auto& m = members_of[key];
        for (std::size_t i : m) pos[key.second][i] = static_cast<long>(dims[key.second]++);
        entries.push_back({key.first, -key.second, ChainComplex::concentrated(0, m.size())});
    }
    std::map<int, Matrix> diffs;
    for (auto& [n, rmap] : rows) {
        std::vector<Triplet> tr;
        for (const auto& [r, row] : rmap)
            for (const auto& [c, v] : row) {
                long pr = pos[n + 1][r], pc = pos[n][c];
                if (pr < 0 || pc < 0) throw std::logic_error("minimize kept a component of a cancelled vector");
                tr.push_back({static_cast<std::size_t>(pr), static_cast<std::size_t>(pc), v});
            }
        if (!tr.empty()) {
            std::size_t nr = dims.count(n + 1) ? dims[n + 1] : 0, nc = dims.count(n) ? dims[n] : 0;
            diffs[n] = Matrix::from_triplets(nr, nc, std::move(tr));
        }
    }
    return TwistedComplex(t.basis(), t.base(), std::move(entries), ChainComplex(dims, diffs));
}

SheafComplex totalize(const TwistedComplex& t) {
    const auto& k = *t.base();
    const ChainComplex& flat = t.total();
    std::vector<ChainComplex> stalks;
    SheafComplex::Covers covers;

    if (t.basis() == Basis::standard) {
        std::vector<std::map<int, std::vector<long>>> pos;
        for (SimplexId s = 0; s < k.size(); ++s) {
            pos.push_back(standard_positions(t, s));
            stalks.push_back(restrict_flat(flat, surviving(pos.back())));
        }
        for (SimplexId b = 0; b < k.size(); ++b)
            for (SimplexId a : k.facets(b)) {
                GradedMatrix g;
                for (const auto& [n, pa] : pos[a]) {
                    std::vector<Triplet> tr;
                    const auto& pb = pos[b].at(n);
                    for (std::size_t i = 0; i < pa.size(); ++i)
                        if (pa[i] >= 0 && pb[i] >= 0)
                            tr.push_back({static_cast<std::size_t>(pb[i]), static_cast<std::size_t>(pa[i]), Rational(1)});
                    if (!tr.empty())
                        g[n] = Matrix::from_triplets(stalks[b].dim(n), stalks[a].dim(n), std::move(tr));
                }
                covers[{a, b}] = std::move(g);
            }
        return SheafComplex(t.base(), std::move(stalks), covers);
    }

    // Costandard: costd(τ) is realized by the complex ⊕_{σ≤ρ≤τ} Q in degree
    // -dim ρ at σ, so that maps costd(τ) -> costd(τ') for τ ≤ τ' are inclusions.
    struct Key {
        int n;
        std::size_t v;
        SimplexId rho;
        bool operator<(const Key& o) const { return std::tie(n, v, rho) < std::tie(o.n, o.v, o.rho); }
    };
    std::vector<std::map<Key, BlockLoc>> layout(k.size());
    std::map<int, Matrix> dt;
    for (int n = flat.lo(); n <= flat.hi(); ++n) dt[n] = flat.d(n).transpose();
    for (SimplexId s = 0; s < k.size(); ++s) {
        GradedAssembler asmb;
        std::map<Key, std::size_t> id;
        for (int n = flat.lo(); n <= flat.hi(); ++n)
            for (std::size_t v = 0; v < flat.dim(n); ++v) {
                SimplexId tau = t.owner_simplex(n, v);
                if (!k.is_face(s, tau)) continue;
                for (SimplexId rho : k.faces(tau))
                    if (k.is_face(s, rho)) id[{n, v, rho}] = asmb.add_block(n - k.dim(rho), 1);
            }
        for (const auto& [key, b] : id) {
            // flat part: column v of d_n
            for (const auto& [r, x] : dt.at(key.n).row(key.v)) {
                auto to = id.find({key.n + 1, r, key.rho});
                if (to == id.end()) throw std::logic_error("costandard totalization lost a component");
                asmb.add_entry(b, to->second, 0, 0, x);
            }
            // basis part
            const int dr = k.dim(key.rho);
            for (SimplexId f : k.facets(key.rho)) {
                auto to = id.find({key.n, key.v, f});
                if (to == id.end()) continue;
                asmb.add_entry(b, to->second, 0, 0, sign_of(key.n) * -sign_of(dr) * Rational(k.incidence(f, key.rho)));
            }
        }
        ChainComplex c = asmb.build();
        for (const auto& [key, b] : id) layout[s][key] = asmb.loc(b);
        stalks.push_back(std::move(c));
    }
    for (SimplexId b = 0; b < k.size(); ++b)
        for (SimplexId a : k.facets(b))
            covers[{a, b}] = block_projection(stalks[a], layout[a], stalks[b], layout[b]).blocks();
    return SheafComplex(t.base(), std::move(stalks), covers);
}

SheafMap totalize_map(const TwistedComplex& source, const TwistedComplex& target, const GradedMatrix& flat) {
    if (source.basis() != Basis::standard || target.basis() != Basis::standard)
        throw std::invalid_argument("maps are only realized between standard twisted complexes");
    if (!same_complex(source.base(), target.base())) throw std::invalid_argument("twisted complexes on different bases");
    const auto& k = *source.base();
    SheafComplex s = totalize(source), t = totalize(target);
    std::vector<GradedMatrix> comps;
    for (SimplexId x = 0; x < k.size(); ++x) {
        auto ps = standard_positions(source, x), pt = standard_positions(target, x);
        GradedMatrix g;
        for (const auto& [n, m] : flat) {
            if (!ps.count(n) || !pt.count(n)) continue;
            const auto& a = ps[n];
            const auto& b = pt[n];
            std::vector<Triplet> tr;
            for (std::size_t r = 0; r < m.rows(); ++r) {
                if (b[r] < 0) continue;
                for (const auto& [c, v] : m.row(r))
                    if (a[c] >= 0) tr.push_back({static_cast<std::size_t>(b[r]), static_cast<std::size_t>(a[c]), v});
            }
            if (!tr.empty()) g[n] = Matrix::from_triplets(t.stalk(x).dim(n), s.stalk(x).dim(n), std::move(tr));
        }
        comps.push_back(std::move(g));
    }
    return SheafMap(std::move(s), std::move(t), std::move(comps));
}

TwistedComplex standard_model(const ComplexPtr& base, const std::vector<ChainComplex>& values,
                              const std::map<std::pair<SimplexId, SimplexId>, GradedMatrix>& restrictions) {
    const auto& k = *base;
    if (values.size() != k.size()) throw std::invalid_argument("one value per simplex is required");
    std::vector<SimplexId> order(k.size());
    for (SimplexId s = 0; s < k.size(); ++s) order[s] = s;
    std::sort(order.begin(), order.end(),
              [&](SimplexId x, SimplexId y) { return entry_before(Basis::standard, k, x, y); });
    TwistedBuilder b(Basis::standard, base);
    std::vector<std::size_t> idx(k.size());
    for (SimplexId a : order) idx[a] = b.add_entry(a, k.dim(a), values[a]);
    for (SimplexId a = 0; a < k.size(); ++a)
        for (SimplexId f : k.facets(a)) {
            auto it = restrictions.find({f, a});
            if (it == restrictions.end()) continue;
            GradedMatrix blocks;
            for (const auto& [m, mat] : it->second) blocks[m - k.dim(a)] = Rational(k.incidence(f, a)) * mat;
            b.connect(idx[a], idx[f], blocks);
        }
    return b.build();
}

TwistedComplex koszul_model(const SheafComplex& f) {
    auto chains = star_chains(f);
    std::vector<ChainComplex> values;
    for (const auto& c : chains) values.push_back(c.complex);
    return standard_model(f.base(), values, star_inclusions(f.complex(), chains));
}

GradedMatrix koszul_model_map(const SheafMap& u, const TwistedComplex& source, const TwistedComplex& target) {
    const auto& k = u.source().complex();
    auto cf = star_chains(u.source()), cg = star_chains(u.target());
    std::map<int, std::vector<Triplet>> trip;
    for (std::size_t e = 0; e < source.size(); ++e) {
        SimplexId a = source.entries()[e].simplex;
        std::size_t te = entry_of(target, a);
        ChainMap m = cellular_map(u, cf[a], cg[a]);
        for (const auto& [deg, blk] : m.blocks()) {
            int n = deg - k.dim(a);
            BlockLoc ls = source.entry_block(e, n), lt = target.entry_block(te, n);
            for (std::size_t r = 0; r < blk.rows(); ++r)
                for (const auto& [c, v] : blk.row(r)) trip[n].push_back({lt.offset + r, ls.offset + c, v});
        }
    }
    GradedMatrix out;
    for (auto& [n, t] : trip)
        out[n] = Matrix::from_triplets(target.total().dim(n), source.total().dim(n), std::move(t));
    return out;
}

SheafMap koszul_comparison(const SheafComplex& f) {
    const auto& k = f.complex();
    auto chains = star_chains(f);
    std::vector<ChainComplex> values;
    for (const auto& c : chains) values.push_back(c.complex);
    TwistedComplex model = standard_model(f.base(), values, star_inclusions(k, chains));
    SheafComplex target = totalize(model);
    std::vector<GradedMatrix> comps;
    for (SimplexId s = 0; s < k.size(); ++s) {
        auto pos = standard_positions(model, s);
        std::map<int, std::vector<Triplet>> trip;
        auto tri = [](int d) { return d * (d + 1) / 2; };
        for (SimplexId rho : k.star(s)) {
            const Rational sgn = sign_of(tri(k.dim(rho)));
            std::size_t e = entry_of(model, rho);
            const auto& gen = f.generization(s, rho);
            for (const auto& [q, m] : gen) {
                auto loc = chains[rho].blocks.find({rho, q});
                if (loc == chains[rho].blocks.end()) continue;
                BlockLoc eb = model.entry_block(e, q);
                const auto& p = pos.at(q);
                for (std::size_t r = 0; r < m.rows(); ++r)
                    for (const auto& [c, v] : m.row(r)) {
                        long row = p[eb.offset + loc->second.offset + r];
                        trip[q].push_back({static_cast<std::size_t>(row), c, sgn * v});
                    }
            }
        }
        GradedMatrix g;
        for (auto& [q, t] : trip) g[q] = Matrix::from_triplets(target.stalk(s).dim(q), f.stalk(s).dim(q), std::move(t));
        comps.push_back(std::move(g));
    }
    return SheafMap(f, std::move(target), std::move(comps));
}

TwistedComplex decompose_standard(const SheafComplex& f) { return minimize(koszul_model(f)); }

TwistedComplex decompose_costandard(const SheafComplex& f) {
    const auto& k = f.complex();
    TwistedBuilder b(Basis::costandard, f.base());
    // zero stalks contribute no entry
    std::vector<std::optional<std::size_t>> idx(k.size());
    for (SimplexId s = 0; s < k.size(); ++s)
        if (!f.stalk(s).is_zero()) idx[s] = b.add_entry(s, -k.dim(s), f.stalk(s));
    for (SimplexId s = 0; s < k.size(); ++s)
        for (SimplexId c : k.cofacets(s)) {
            if (!idx[s] || !idx[c]) continue;
            GradedMatrix blocks;
            for (const auto& [q, m] : f.generization(s, c)) blocks[q + k.dim(s)] = Rational(k.incidence(s, c)) * m;
            b.connect(*idx[s], *idx[c], blocks);
        }
    return b.build();
}

TwistedComplex verdier_dual_twisted(const SheafComplex& f) {
    CellularChains c = cellular_chains(f, SimplexSet(f.size(), true));
    ChainComplex flat = dual(c.complex);
    std::map<int, std::vector<SimplexId>> labels;
    for (int n = flat.lo(); n <= flat.hi(); ++n) labels[n] = std::vector<SimplexId>(flat.dim(n));
    for (const auto& [key, loc] : c.blocks)
        for (std::size_t i = 0; i < loc.dim; ++i) labels[-loc.degree][loc.offset + i] = key.first;
    return twisted_from_labels(Basis::standard, f.base(), flat, labels);
}

TwistedComplex pushforward_twisted(const SimplicialMap& f, const TwistedComplex& t) {
    if (t.basis() != Basis::standard) throw std::invalid_argument("pushforward needs a standard twisted complex");
    if (!same_complex(f.source(), t.base())) throw std::invalid_argument("pushforward along a map from another complex");
    std::vector<TwistedEntry> entries = t.entries();
    for (auto& e : entries) e.simplex = f.image(e.simplex);
    return TwistedComplex(Basis::standard, f.target(), std::move(entries), t.total());
}

TwistedComplex sheaf_hom_twisted(const SheafComplex& kf, const TwistedComplex& g) {
    if (g.basis() != Basis::standard) throw std::invalid_argument("internal hom needs a standard twisted complex");
    if (!same_complex(kf.base(), g.base())) throw std::invalid_argument("internal hom between different complexes");
    const auto& ents = g.entries();
    std::vector<ChainComplex> v;
    std::vector<HomLayout> lay;
    TwistedBuilder b(Basis::standard, g.base());
    for (const auto& e : ents) {
        v.push_back(shift(e.multiplicity, e.shift));
        lay.push_back(hom_layout(kf.stalk(e.simplex), v.back()));
        b.add_entry(e.simplex, 0, hom_complex(kf.stalk(e.simplex), v.back()));
    }
    for (std::size_t i = 0; i < ents.size(); ++i)
        for (std::size_t j = 0; j < ents.size(); ++j) {
            if (i == j) continue;
            const SimplexId ti = ents[i].simplex, tj = ents[j].simplex;
            if (!kf.complex().is_face(tj, ti)) continue;
            std::map<int, Matrix> blocks;
            for (const auto& [pm, off] : lay[i].offset) {
                auto [p, m] = pm;
                Matrix dji = g.component(i, j, p + m);
                if (dji.is_zero()) continue;
                auto to = lay[j].offset.find({p, m + 1});
                if (to == lay[j].offset.end()) continue;
                const auto& gen = kf.generization(tj, ti);
                auto gp = gen.find(p);
                if (gp == gen.end()) continue;
                Matrix piece = kron(dji, gp->second.transpose());
                auto it = blocks.find(m);
                if (it == blocks.end())
                    it = blocks.emplace(m, Matrix(lay[j].dims.at(m + 1), lay[i].dims.at(m))).first;
                it->second.add_block(to->second, off, piece);
            }
            if (!blocks.empty()) b.connect(i, j, blocks);
        }
    return b.build();
}

}  // namespace cellsheaf
