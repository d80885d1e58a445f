#include "cellsheaf/chain_complex.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cellsheaf {

namespace {

Rational sign_of(int k) { return (k % 2 == 0) ? Rational(1) : Rational(-1); }

const Matrix& empty_matrix() {
    static const Matrix m;
    return m;
}

}  // namespace

ChainComplex::ChainComplex(const std::map<int, std::size_t>& dims, const std::map<int, Matrix>& differentials) {
    int lo = 0, hi = -1;
    bool any = false;
    for (const auto& [n, k] : dims) {
        if (k == 0) continue;
        if (!any) {
            lo = hi = n;
            any = true;
        }
        lo = std::min(lo, n);
        hi = std::max(hi, n);
    }
    auto dim_of = [&](int n) -> std::size_t {
        auto it = dims.find(n);
        return it == dims.end() ? 0 : it->second;
    };
    for (const auto& [n, m] : differentials) {
        if (m.rows() != dim_of(n + 1) || m.cols() != dim_of(n)) {
            std::ostringstream os;
            os << "differential in degree " << n << " has shape " << m.rows() << "x" << m.cols() << ", expected "
               << dim_of(n + 1) << "x" << dim_of(n);
            throw std::invalid_argument(os.str());
        }
    }
    if (!any) return;
    lo_ = lo;
    dims_.resize(static_cast<std::size_t>(hi - lo + 1));
    for (int n = lo; n <= hi; ++n) dims_[static_cast<std::size_t>(n - lo)] = dim_of(n);
    for (int n = lo - 1; n <= hi; ++n) {
        auto it = differentials.find(n);
        diffs_.push_back(it == differentials.end() ? Matrix(dim_of(n + 1), dim_of(n)) : it->second);
    }
    for (int n = lo - 1; n < hi; ++n) {
        if (!(d(n + 1) * d(n)).is_zero())
            throw std::invalid_argument("differential does not square to zero at degree " + std::to_string(n));
    }
}

ChainComplex ChainComplex::concentrated(int degree, std::size_t dim) { return ChainComplex({{degree, dim}}, {}); }

std::size_t ChainComplex::dim(int n) const {
    if (dims_.empty() || n < lo_ || n > hi()) return 0;
    return dims_[static_cast<std::size_t>(n - lo_)];
}

const Matrix& ChainComplex::d(int n) const {
    if (dims_.empty() || n < lo_ - 1 || n > hi()) return empty_matrix();
    return diffs_[static_cast<std::size_t>(n - lo_ + 1)];
}

std::size_t ChainComplex::total_dim() const {
    std::size_t s = 0;
    for (auto k : dims_) s += k;
    return s;
}

std::map<int, std::size_t> ChainComplex::dims() const {
    std::map<int, std::size_t> out;
    for (int n = lo_; n <= hi(); ++n)
        if (dim(n)) out[n] = dim(n);
    return out;
}

bool operator==(const ChainComplex& a, const ChainComplex& b) {
    return a.lo_ == b.lo_ && a.dims_ == b.dims_ && a.diffs_ == b.diffs_;
}

std::string ChainComplex::str() const {
    std::ostringstream os;
    if (is_zero()) return "0\n";
    for (int n = lo_; n <= hi(); ++n) {
        os << "degree " << n << ": dim " << dim(n) << "\n";
        if (n < hi() && !d(n).empty()) os << d(n).str();
    }
    return os.str();
}

bool is_chain_map(const ChainComplex& s, const ChainComplex& t, int k, const GradedMatrix& blocks) {
    for (const auto& [n, m] : blocks)
        if (m.rows() != t.dim(n + k) || m.cols() != s.dim(n)) return false;
    auto block = [&](int n) {
        auto it = blocks.find(n);
        return it == blocks.end() ? Matrix(t.dim(n + k), s.dim(n)) : it->second;
    };
    int lo = std::min(s.lo(), t.lo() - k) - 1;
    int hi = std::max(s.hi(), t.hi() - k) + 1;
    for (int n = lo; n <= hi; ++n) {
        Matrix lhs = t.d(n + k) * block(n);
        Matrix rhs = block(n + 1) * s.d(n);
        if (lhs != rhs * sign_of(k)) return false;
    }
    return true;
}

ChainMap::ChainMap(ChainComplex source, ChainComplex target, int degree, GradedMatrix blocks)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree) {
    for (auto& [n, m] : blocks)
        if (!m.is_zero() || m.rows() != target_.dim(n + degree) || m.cols() != source_.dim(n))
            blocks_.emplace(n, std::move(m));
    if (!is_chain_map(source_, target_, degree_, blocks_))
        throw std::invalid_argument("graded map does not commute with the differentials");
}

ChainMap ChainMap::identity(const ChainComplex& c) {
    GradedMatrix b;
    for (int n = c.lo(); n <= c.hi(); ++n)
        if (c.dim(n)) b[n] = Matrix::identity(c.dim(n));
    return ChainMap(c, c, 0, std::move(b));
}

ChainMap ChainMap::zero(const ChainComplex& source, const ChainComplex& target, int degree) {
    return ChainMap(source, target, degree, {});
}

Matrix ChainMap::at(int n) const {
    auto it = blocks_.find(n);
    if (it != blocks_.end()) return it->second;
    return Matrix(target_.dim(n + degree_), source_.dim(n));
}

bool operator==(const ChainMap& a, const ChainMap& b) {
    if (a.source_ != b.source_ || a.target_ != b.target_ || a.degree_ != b.degree_) return false;
    for (int n = a.source_.lo(); n <= a.source_.hi(); ++n)
        if (a.at(n) != b.at(n)) return false;
    return true;
}

ChainMap operator+(const ChainMap& f, const ChainMap& g) {
    if (f.source() != g.source() || f.target() != g.target() || f.degree() != g.degree())
        throw std::invalid_argument("sum of incompatible chain maps");
    GradedMatrix b;
    for (int n = f.source().lo(); n <= f.source().hi(); ++n) b[n] = f.at(n) + g.at(n);
    return ChainMap(f.source(), f.target(), f.degree(), std::move(b));
}

ChainMap operator*(const Rational& s, const ChainMap& f) {
    GradedMatrix b;
    for (const auto& [n, m] : f.blocks()) b[n] = m * s;
    return ChainMap(f.source(), f.target(), f.degree(), std::move(b));
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    if (f.target() != g.source()) throw std::invalid_argument("composition of non-composable chain maps");
    GradedMatrix b;
    for (const auto& [n, m] : f.blocks()) b[n] = g.at(n + f.degree()) * m;
    return ChainMap(f.source(), g.target(), f.degree() + g.degree(), std::move(b));
}

ChainComplex shift(const ChainComplex& c, int k) {
    std::map<int, std::size_t> dims;
    std::map<int, Matrix> diffs;
    for (int n = c.lo(); n <= c.hi(); ++n) {
        dims[n - k] = c.dim(n);
        if (n < c.hi()) diffs[n - k] = c.d(n) * sign_of(k);
    }
    return ChainComplex(dims, diffs);
}

ChainMap shift(const ChainMap& f, int k) {
    GradedMatrix b;
    for (const auto& [n, m] : f.blocks()) b[n - k] = m;
    return ChainMap(shift(f.source(), k), shift(f.target(), k), f.degree(), std::move(b));
}

ChainComplex direct_sum(const std::vector<ChainComplex>& parts) {
    GradedAssembler a;
    std::vector<std::map<int, std::size_t>> ids(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (int n = parts[i].lo(); n <= parts[i].hi(); ++n)
            if (parts[i].dim(n)) ids[i][n] = a.add_block(n, parts[i].dim(n));
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (const auto& [n, id] : ids[i]) {
            auto next = ids[i].find(n + 1);
            if (next != ids[i].end()) a.add(id, next->second, parts[i].d(n));
        }
    return a.build();
}

ChainMap direct_sum(const std::vector<ChainMap>& parts) {
    std::vector<ChainComplex> sources, targets;
    int degree = parts.empty() ? 0 : parts.front().degree();
    for (const auto& p : parts) {
        if (p.degree() != degree) throw std::invalid_argument("direct sum of maps of different degrees");
        sources.push_back(p.source());
        targets.push_back(p.target());
    }
    ChainComplex s = direct_sum(sources), t = direct_sum(targets);
    GradedMatrix b;
    for (int n = s.lo(); n <= s.hi(); ++n) {
        Matrix m(t.dim(n + degree), s.dim(n));
        std::size_t r = 0, c = 0;
        for (const auto& p : parts) {
            m.add_block(r, c, p.at(n));
            r += p.target().dim(n + degree);
            c += p.source().dim(n);
        }
        b[n] = std::move(m);
    }
    return ChainMap(s, t, degree, std::move(b));
}

ChainComplex cone(const ChainMap& f) {
    if (f.degree() != 0) throw std::invalid_argument("cone of a map of nonzero degree");
    const auto& A = f.source();
    const auto& B = f.target();
    std::map<int, std::size_t> dims;
    std::map<int, Matrix> diffs;
    int lo = std::min(A.lo() - 1, B.lo());
    int hi = std::max(A.hi() - 1, B.hi());
    for (int n = lo; n <= hi; ++n) dims[n] = A.dim(n + 1) + B.dim(n);
    for (int n = lo; n < hi; ++n) {
        Matrix m(dims[n + 1], dims[n]);
        m.add_block(0, 0, A.d(n + 1), Rational(-1));
        m.add_block(A.dim(n + 2), 0, f.at(n + 1));
        m.add_block(A.dim(n + 2), A.dim(n + 1), B.d(n));
        diffs[n] = std::move(m);
    }
    return ChainComplex(dims, diffs);
}

ChainMap cone_inclusion(const ChainMap& f) {
    ChainComplex c = cone(f);
    GradedMatrix b;
    for (int n = f.target().lo(); n <= f.target().hi(); ++n) {
        Matrix m(c.dim(n), f.target().dim(n));
        m.add_block(f.source().dim(n + 1), 0, Matrix::identity(f.target().dim(n)));
        b[n] = std::move(m);
    }
    return ChainMap(f.target(), c, 0, std::move(b));
}

ChainMap cone_projection(const ChainMap& f) {
    ChainComplex c = cone(f);
    ChainComplex a1 = shift(f.source(), 1);
    GradedMatrix b;
    for (int n = c.lo(); n <= c.hi(); ++n) {
        Matrix m(a1.dim(n), c.dim(n));
        m.add_block(0, 0, Matrix::identity(a1.dim(n)));
        b[n] = std::move(m);
    }
    return ChainMap(c, a1, 0, std::move(b));
}

namespace {

struct TensorLayout {
    std::map<std::pair<int, int>, std::size_t> offset;  // (p, q) -> offset in degree p+q
    std::map<int, std::size_t> dims;
};

TensorLayout tensor_layout(const ChainComplex& c, const ChainComplex& d) {
    TensorLayout l;
    for (int n = c.lo() + d.lo(); n <= c.hi() + d.hi(); ++n) {
        std::size_t off = 0;
        for (int p = c.lo(); p <= c.hi(); ++p) {
            int q = n - p;
            std::size_t k = c.dim(p) * d.dim(q);
            if (k == 0) continue;
            l.offset[{p, q}] = off;
            off += k;
        }
        if (off) l.dims[n] = off;
    }
    return l;
}

}  // namespace

ChainComplex tensor(const ChainComplex& c, const ChainComplex& d) {
    if (c.is_zero() || d.is_zero()) return {};
    TensorLayout l = tensor_layout(c, d);
    std::map<int, std::vector<Triplet>> trip;
    for (const auto& [pq, off] : l.offset) {
        auto [p, q] = pq;
        int n = p + q;
        auto h = l.offset.find({p + 1, q});
        if (h != l.offset.end()) {
            Matrix m = kron(c.d(p), Matrix::identity(d.dim(q)));
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (const auto& [col, v] : m.row(r)) trip[n].push_back({h->second + r, off + col, v});
        }
        auto v = l.offset.find({p, q + 1});
        if (v != l.offset.end()) {
            Matrix m = kron(Matrix::identity(c.dim(p)), d.d(q)) * sign_of(p);
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (const auto& [col, x] : m.row(r)) trip[n].push_back({v->second + r, off + col, x});
        }
    }
    std::map<int, Matrix> diffs;
    for (auto& [n, t] : trip) {
        auto dim = [&](int k) {
            auto it = l.dims.find(k);
            return it == l.dims.end() ? std::size_t{0} : it->second;
        };
        diffs[n] = Matrix::from_triplets(dim(n + 1), dim(n), std::move(t));
    }
    return ChainComplex(l.dims, diffs);
}

ChainMap tensor(const ChainMap& f, const ChainMap& g) {
    if (f.degree() != 0 || g.degree() != 0) throw std::invalid_argument("tensor of maps of nonzero degree");
    ChainComplex s = tensor(f.source(), g.source());
    ChainComplex t = tensor(f.target(), g.target());
    TensorLayout ls = tensor_layout(f.source(), g.source());
    TensorLayout lt = tensor_layout(f.target(), g.target());
    GradedMatrix b;
    for (int n = s.lo(); n <= s.hi(); ++n) b[n] = Matrix(t.dim(n), s.dim(n));
    for (const auto& [pq, off] : ls.offset) {
        auto it = lt.offset.find(pq);
        if (it == lt.offset.end()) continue;
        b[pq.first + pq.second].add_block(it->second, off, kron(f.at(pq.first), g.at(pq.second)));
    }
    return ChainMap(s, t, 0, std::move(b));
}

ChainComplex hom_complex(const ChainComplex& c, const ChainComplex& d) {
    if (c.is_zero() || d.is_zero()) return {};
    GradedAssembler a;
    std::map<std::pair<int, int>, std::size_t> id;  // (p, n)
    for (int n = d.lo() - c.hi(); n <= d.hi() - c.lo(); ++n)
        for (int p = c.lo(); p <= c.hi(); ++p) {
            std::size_t k = c.dim(p) * d.dim(p + n);
            if (k) id[{p, n}] = a.add_block(n, k);
        }
    for (const auto& [pn, from] : id) {
        auto [p, n] = pn;
        auto left = id.find({p, n + 1});
        if (left != id.end()) a.add(from, left->second, kron(d.d(p + n), Matrix::identity(c.dim(p))));
        auto right = id.find({p - 1, n + 1});
        if (right != id.end())
            a.add(from, right->second, kron(Matrix::identity(d.dim(p + n)), c.d(p - 1).transpose()), -sign_of(n));
    }
    return a.build();
}

HomLayout hom_layout(const ChainComplex& c, const ChainComplex& d) {
    HomLayout l;
    if (c.is_zero() || d.is_zero()) return l;
    for (int n = d.lo() - c.hi(); n <= d.hi() - c.lo(); ++n) {
        std::size_t off = 0;
        for (int p = c.lo(); p <= c.hi(); ++p) {
            std::size_t k = c.dim(p) * d.dim(p + n);
            if (!k) continue;
            l.offset[{p, n}] = off;
            off += k;
        }
        if (off) l.dims[n] = off;
    }
    return l;
}

GradedMatrix hom_map_blocks(const ChainComplex& a2, const ChainComplex& a, const ChainComplex& b,
                            const ChainComplex& b2, const GradedMatrix& pre, const GradedMatrix& post) {
    HomLayout ls = hom_layout(a, b), lt = hom_layout(a2, b2);
    auto block = [](const GradedMatrix& g, int n, std::size_t rows, std::size_t cols) {
        auto it = g.find(n);
        return it == g.end() ? Matrix(rows, cols) : it->second;
    };
    std::map<int, std::vector<Triplet>> trip;
    for (const auto& [pn, off] : ls.offset) {
        auto it = lt.offset.find(pn);
        if (it == lt.offset.end()) continue;
        auto [p, n] = pn;
        Matrix post_m = block(post, p + n, b2.dim(p + n), b.dim(p + n));
        Matrix pre_m = block(pre, p, a.dim(p), a2.dim(p));
        if (post_m.is_zero() || pre_m.is_zero()) continue;
        Matrix m = kron(post_m, pre_m.transpose());
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (const auto& [col, v] : m.row(r)) trip[n].push_back({it->second + r, off + col, v});
    }
    GradedMatrix out;
    for (auto& [n, t] : trip) {
        auto dt = lt.dims.find(n), ds = ls.dims.find(n);
        Matrix m = Matrix::from_triplets(dt->second, ds->second, std::move(t));
        if (!m.is_zero()) out[n] = std::move(m);
    }
    return out;
}

ChainComplex dual(const ChainComplex& c) { return hom_complex(c, ChainComplex::concentrated(0, 1)); }

ChainMap dual(const ChainMap& f) {
    if (f.degree() != 0) throw std::invalid_argument("dual of a map of nonzero degree");
    ChainComplex s = dual(f.target()), t = dual(f.source());
    GradedMatrix b;
    for (int n = s.lo(); n <= s.hi(); ++n) b[n] = f.at(-n).transpose();
    return ChainMap(s, t, 0, std::move(b));
}

std::map<int, std::size_t> cohomology_dims(const ChainComplex& c) {
    std::map<int, std::size_t> out;
    std::map<int, std::size_t> ranks;
    for (int n = c.lo() - 1; n <= c.hi(); ++n) ranks[n] = rank(c.d(n));
    for (int n = c.lo(); n <= c.hi(); ++n) {
        std::size_t h = c.dim(n) - ranks[n] - ranks[n - 1];
        if (h) out[n] = h;
    }
    return out;
}

bool is_acyclic(const ChainComplex& c) { return cohomology_dims(c).empty(); }

long euler_characteristic(const ChainComplex& c) {
    long s = 0;
    for (int n = c.lo(); n <= c.hi(); ++n) s += ((n % 2 == 0) ? 1L : -1L) * static_cast<long>(c.dim(n));
    return s;
}

bool is_quasi_iso(const ChainMap& f) { return is_acyclic(cone(f)); }

Cohomology cohomology(const ChainComplex& c) {
    Cohomology h;
    for (int n = c.lo(); n <= c.hi(); ++n) {
        Echelon e(c.dim(n));
        Matrix in = c.d(n - 1).transpose();
        std::vector<SparseVec> bounds;
        for (std::size_t r = 0; r < in.rows(); ++r)
            if (e.insert(in.row(r))) bounds.push_back(in.row(r));
        std::vector<SparseVec> reps;
        for (auto& z : kernel_basis(c.d(n)))
            if (e.insert(z)) reps.push_back(std::move(z));
        h.boundaries[n] = std::move(bounds);
        if (!reps.empty()) {
            h.dims[n] = reps.size();
            h.representatives[n] = std::move(reps);
        }
    }
    return h;
}

std::vector<Rational> Cohomology::coordinates(int n, const SparseVec& z) const {
    auto rit = representatives.find(n);
    if (rit == representatives.end()) return {};
    const auto& reps = rit->second;
    static const std::vector<SparseVec> none;
    auto bit = boundaries.find(n);
    const auto& bounds = bit == boundaries.end() ? none : bit->second;
    std::size_t height = 0;
    for (const auto& v : reps)
        if (!v.empty()) height = std::max(height, v.back().first + 1);
    for (const auto& v : bounds)
        if (!v.empty()) height = std::max(height, v.back().first + 1);
    if (!z.empty()) height = std::max(height, z.back().first + 1);
    std::vector<SparseVec> cols = bounds;
    cols.insert(cols.end(), reps.begin(), reps.end());
    Matrix a = Matrix::from_rows(height, cols).transpose();
    auto x = solve(a, z);
    if (!x) throw std::invalid_argument("vector is not a cocycle in the represented span");
    std::vector<Rational> out(reps.size());
    for (const auto& [i, v] : *x)
        if (i >= bounds.size()) out[i - bounds.size()] = v;
    return out;
}

Matrix induced_on_cohomology(const ChainMap& f, const Cohomology& hs, const Cohomology& ht, int n) {
    auto dim = [](const Cohomology& h, int k) {
        auto it = h.dims.find(k);
        return it == h.dims.end() ? std::size_t{0} : it->second;
    };
    Matrix m(dim(ht, n + f.degree()), dim(hs, n));
    if (m.empty()) return m;
    Matrix fn = f.at(n);
    const auto& reps = hs.representatives.at(n);
    for (std::size_t j = 0; j < reps.size(); ++j) {
        auto coords = ht.coordinates(n + f.degree(), fn.apply(reps[j]));
        for (std::size_t i = 0; i < coords.size(); ++i) m.set(i, j, coords[i]);
    }
    return m;
}

std::size_t GradedAssembler::add_block(int degree, std::size_t dim) {
    std::size_t& total = degree_dims_[degree];
    blocks_.push_back({degree, dim, total});
    total += dim;
    return blocks_.size() - 1;
}

std::size_t GradedAssembler::dim_in_degree(int n) const {
    auto it = degree_dims_.find(n);
    return it == degree_dims_.end() ? 0 : it->second;
}

void GradedAssembler::add(std::size_t from, std::size_t to, const Matrix& m, const Rational& scale) {
    const Block& f = blocks_.at(from);
    const Block& t = blocks_.at(to);
    if (t.degree != f.degree + 1) throw std::invalid_argument("differential component must raise degree by one");
    if (m.rows() != t.dim || m.cols() != f.dim) throw std::invalid_argument("differential component has wrong shape");
    if (scale.is_zero()) return;
    auto& trip = entries_[f.degree];
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r)) trip.push_back({t.offset + r, f.offset + c, v * scale});
}

void GradedAssembler::add_entry(std::size_t from, std::size_t to, std::size_t row, std::size_t col, const Rational& v) {
    const Block& f = blocks_.at(from);
    const Block& t = blocks_.at(to);
    if (t.degree != f.degree + 1) throw std::invalid_argument("differential component must raise degree by one");
    if (row >= t.dim || col >= f.dim) throw std::out_of_range("differential entry outside block");
    if (v.is_zero()) return;
    entries_[f.degree].push_back({t.offset + row, f.offset + col, v});
}

ChainComplex GradedAssembler::build() const {
    std::map<int, Matrix> diffs;
    for (const auto& [n, t] : entries_) diffs[n] = Matrix::from_triplets(dim_in_degree(n + 1), dim_in_degree(n), t);
    return ChainComplex(degree_dims_, diffs);
}

ChainComplex total_complex(const DoubleComplex& dc) {
    std::vector<std::pair<int, int>> keys;
    for (const auto& [pq, k] : dc.dims)
        if (k) keys.push_back(pq);
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
        int na = a.first + a.second, nb = b.first + b.second;
        return na != nb ? na < nb : a.first < b.first;
    });
    GradedAssembler a;
    std::map<std::pair<int, int>, std::size_t> id;
    for (const auto& pq : keys) id[pq] = a.add_block(pq.first + pq.second, dc.dims.at(pq));
    auto place = [&](const std::map<std::pair<int, int>, Matrix>& comps, int dp, int dq) {
        for (const auto& [pq, m] : comps) {
            if (m.is_zero()) continue;
            auto from = id.find(pq);
            auto to = id.find({pq.first + dp, pq.second + dq});
            if (from == id.end() || to == id.end()) throw std::invalid_argument("double complex component outside support");
            a.add(from->second, to->second, m);
        }
    };
    place(dc.horizontal, 1, 0);
    place(dc.vertical, 0, 1);
    try {
        return a.build();
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("double complex squares do not anticommute: ") + e.what());
    }
}

}  // namespace cellsheaf
