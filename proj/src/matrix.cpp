#include "cellsheaf/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cellsheaf {

SparseVec axpy(const SparseVec& a, const Rational& c, const SparseVec& b) {
    if (c.is_zero() || b.empty()) return a;
    SparseVec out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, c * b[j].second);
            ++j;
        } else {
            Rational v = a[i].second + c * b[j].second;
            if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVec scaled(const SparseVec& v, const Rational& c) {
    if (c.is_zero()) return {};
    SparseVec out = v;
    for (auto& [i, x] : out) x *= c;
    return out;
}

Rational entry(const SparseVec& v, std::size_t index) {
    auto it = std::lower_bound(v.begin(), v.end(), index, [](const auto& p, std::size_t k) { return p.first < k; });
    if (it != v.end() && it->first == index) return it->second;
    return Rational(0);
}

std::vector<Rational> densify(const SparseVec& v, std::size_t n) {
    std::vector<Rational> out(n);
    for (const auto& [i, x] : v) out.at(i) = x;
    return out;
}

SparseVec sparsify(const std::vector<Rational>& v) {
    SparseVec out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) out.emplace_back(i, v[i]);
    return out;
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(i, Rational(1));
    return m;
}

Matrix Matrix::from_dense(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
        m.data_[r] = sparsify(rows[r]);
    }
    return m;
}

Matrix Matrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    Matrix m(rows, cols);
    for (std::size_t k = 0; k < entries.size();) {
        const auto r = entries[k].row, c = entries[k].col;
        if (r >= rows || c >= cols) throw std::out_of_range("triplet outside matrix");
        Rational sum;
        while (k < entries.size() && entries[k].row == r && entries[k].col == c) sum += entries[k++].value;
        if (!sum.is_zero()) m.data_[r].emplace_back(c, std::move(sum));
    }
    return m;
}

Matrix Matrix::from_rows(std::size_t cols, std::vector<SparseVec> rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!rows[r].empty() && rows[r].back().first >= cols) throw std::out_of_range("row entry outside matrix");
        m.data_[r] = std::move(rows[r]);
    }
    return m;
}

std::size_t Matrix::nnz() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const SparseVec& r) { return r.empty(); });
}

Rational Matrix::at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index");
    return entry(data_[r], c);
}

void Matrix::set(std::size_t r, std::size_t c, const Rational& v) {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index");
    auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& p, std::size_t k) { return p.first < k; });
    if (it != row.end() && it->first == c) {
        if (v.is_zero())
            row.erase(it);
        else
            it->second = v;
    } else if (!v.is_zero()) {
        row.insert(it, {c, v});
    }
}

void Matrix::add_to(std::size_t r, std::size_t c, const Rational& v) {
    if (v.is_zero()) return;
    set(r, c, at(r, c) + v);
}

void Matrix::set_row(std::size_t r, SparseVec v) {
    if (r >= rows_) throw std::out_of_range("matrix row");
    if (!v.empty() && v.back().first >= cols_) throw std::out_of_range("row entry outside matrix");
    data_[r] = std::move(v);
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, v] : data_[r]) t.data_[c].emplace_back(r, v);
    return t;
}

SparseVec Matrix::apply(const SparseVec& x) const {
    SparseVec out;
    for (std::size_t r = 0; r < rows_; ++r) {
        Rational s;
        const auto& row = data_[r];
        std::size_t i = 0, j = 0;
        while (i < row.size() && j < x.size()) {
            if (row[i].first < x[j].first)
                ++i;
            else if (x[j].first < row[i].first)
                ++j;
            else
                s += row[i++].second * x[j++].second;
        }
        if (!s.is_zero()) out.emplace_back(r, std::move(s));
    }
    return out;
}

std::vector<std::vector<Rational>> Matrix::to_dense() const {
    std::vector<std::vector<Rational>> out;
    out.reserve(rows_);
    for (const auto& r : data_) out.push_back(densify(r, cols_));
    return out;
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    std::vector<std::ptrdiff_t> col_pos(cols_, -1);
    for (std::size_t k = 0; k < cols.size(); ++k) col_pos.at(cols[k]) = static_cast<std::ptrdiff_t>(k);
    Matrix m(rows.size(), cols.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        SparseVec out;
        for (const auto& [c, v] : data_.at(rows[k]))
            if (col_pos[c] >= 0) out.emplace_back(static_cast<std::size_t>(col_pos[c]), v);
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        m.data_[k] = std::move(out);
    }
    return m;
}

void Matrix::add_block(std::size_t r0, std::size_t c0, const Matrix& block, const Rational& scale) {
    if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_) throw std::out_of_range("block outside matrix");
    if (scale.is_zero()) return;
    for (std::size_t r = 0; r < block.rows_; ++r) {
        if (block.data_[r].empty()) continue;
        SparseVec shifted;
        shifted.reserve(block.data_[r].size());
        for (const auto& [c, v] : block.data_[r]) shifted.emplace_back(c + c0, v);
        data_[r0 + r] = axpy(data_[r0 + r], scale, shifted);
    }
}

Matrix Matrix::operator-() const {
    Matrix m = *this;
    for (auto& r : m.data_)
        for (auto& [c, v] : r) v = -v;
    return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    for (std::size_t r = 0; r < rows_; ++r) data_[r] = axpy(data_[r], Rational(1), o.data_[r]);
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference shape mismatch");
    for (std::size_t r = 0; r < rows_; ++r) data_[r] = axpy(data_[r], Rational(-1), o.data_[r]);
    return *this;
}

Matrix& Matrix::operator*=(const Rational& s) {
    if (s.is_zero()) {
        for (auto& r : data_) r.clear();
        return *this;
    }
    for (auto& r : data_)
        for (auto& [c, v] : r) v *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix m(a.rows_, b.cols_);
    std::vector<Rational> acc(b.cols_);
    std::vector<char> used(b.cols_, 0);
    std::vector<std::size_t> touched;
    for (std::size_t r = 0; r < a.rows_; ++r) {
        touched.clear();
        for (const auto& [k, av] : a.data_[r]) {
            for (const auto& [c, bv] : b.data_[k]) {
                if (!used[c]) {
                    used[c] = 1;
                    touched.push_back(c);
                    acc[c] = av * bv;
                } else {
                    acc[c] += av * bv;
                }
            }
        }
        std::sort(touched.begin(), touched.end());
        SparseVec row;
        for (std::size_t c : touched) {
            if (!acc[c].is_zero()) row.emplace_back(c, acc[c]);
            used[c] = 0;
            acc[c] = Rational(0);
        }
        m.data_[r] = std::move(row);
    }
    return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Matrix::str() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_; ++r) {
        os << "[";
        for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << at(r, c);
        os << "]\n";
    }
    return os.str();
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.rows(); ++j) {
            SparseVec row;
            for (const auto& [ci, vi] : a.row(i))
                for (const auto& [cj, vj] : b.row(j)) row.emplace_back(ci * b.cols() + cj, vi * vj);
            m.set_row(i * b.rows() + j, std::move(row));
        }
    }
    return m;
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
    std::size_t rows = 0, cols = 0;
    for (const auto& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    Matrix m(rows, cols);
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        m.add_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return m;
}

SparseVec Echelon::reduce(SparseVec v) const {
    std::size_t from = 0;
    while (!v.empty()) {
        // First entry at or beyond `from` that has a pivot row.
        auto it = std::lower_bound(v.begin(), v.end(), from, [](const auto& p, std::size_t k) { return p.first < k; });
        bool found = false;
        for (; it != v.end(); ++it) {
            auto row = rows_.find(it->first);
            if (row != rows_.end()) {
                std::size_t idx = it->first;
                Rational c = -it->second;
                v = axpy(v, c, row->second);
                from = idx + 1;
                found = true;
                break;
            }
        }
        if (!found) break;
    }
    return v;
}

bool Echelon::insert(SparseVec v) {
    // Leading-entry elimination only: the stored row must have its pivot at its lowest index.
    while (!v.empty()) {
        auto row = rows_.find(v.front().first);
        if (row == rows_.end()) break;
        v = axpy(v, -v.front().second, row->second);
    }
    if (v.empty()) return false;
    Rational lead = v.front().second;
    if (!lead.is_one()) v = scaled(v, Rational(1) / lead);
    rows_.emplace(v.front().first, std::move(v));
    return true;
}

std::vector<SparseVec> Echelon::reduced_rows() const {
    std::vector<std::pair<std::size_t, SparseVec>> rows(rows_.begin(), rows_.end());
    for (std::size_t i = rows.size(); i-- > 0;) {
        const std::size_t piv = rows[i].first;
        for (std::size_t j = 0; j < i; ++j) {
            Rational c = entry(rows[j].second, piv);
            if (!c.is_zero()) rows[j].second = axpy(rows[j].second, -c, rows[i].second);
        }
    }
    std::vector<SparseVec> out;
    out.reserve(rows.size());
    for (auto& [p, r] : rows) out.push_back(std::move(r));
    return out;
}

namespace {

SparseVec primitive(SparseVec v) {
    if (v.empty()) return v;
    Rational g;
    for (const auto& [i, x] : v) g = Rational::gcd(g, x);
    if (v.front().second.sign() < 0) g = -g;
    if (!g.is_one())
        for (auto& [i, x] : v) x /= g;
    return v;
}

}  // namespace

std::size_t rank(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    const Matrix& src = m;
    Matrix t;
    const Matrix* use = &src;
    if (m.rows() > m.cols()) {
        t = m.transpose();
        use = &t;
    }
    std::map<std::size_t, SparseVec> pivots;
    for (std::size_t r = 0; r < use->rows(); ++r) {
        SparseVec v = primitive(use->row(r));
        while (!v.empty()) {
            auto it = pivots.find(v.front().first);
            if (it == pivots.end()) break;
            // v <- p * v - v_lead * row, both integral after `primitive`.
            Rational a = it->second.front().second;
            Rational b = v.front().second;
            v = primitive(axpy(scaled(v, a), -b, it->second));
        }
        if (!v.empty()) pivots.emplace(v.front().first, std::move(v));
    }
    return pivots.size();
}

std::vector<SparseVec> kernel_basis(const Matrix& m) {
    Echelon e(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
    auto rows = e.reduced_rows();
    std::vector<char> is_pivot(m.cols(), 0);
    for (const auto& r : rows) is_pivot[r.front().first] = 1;
    std::vector<SparseVec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        SparseVec v;
        for (const auto& r : rows) {
            Rational c = entry(r, f);
            if (!c.is_zero()) v.emplace_back(r.front().first, -c);
        }
        v.emplace_back(f, Rational(1));
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<SparseVec> solve(const Matrix& a, const SparseVec& b) {
    const std::size_t n = a.cols();
    Echelon e(n + 1);
    std::size_t bi = 0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        SparseVec row = a.row(r);
        while (bi < b.size() && b[bi].first < r) ++bi;
        if (bi < b.size() && b[bi].first == r) row.emplace_back(n, b[bi].second);
        e.insert(std::move(row));
    }
    if (!b.empty() && b.back().first >= a.rows()) throw std::out_of_range("right-hand side too long");
    SparseVec x;
    for (const auto& r : e.reduced_rows()) {
        if (r.front().first == n) return std::nullopt;
        Rational v = entry(r, n);
        if (!v.is_zero()) x.emplace_back(r.front().first, v);
    }
    return x;
}

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::domain_error("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    Echelon e(2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        SparseVec row = m.row(r);
        row.emplace_back(n + r, Rational(1));
        e.insert(std::move(row));
    }
    auto rows = e.reduced_rows();
    if (rows.size() != n) throw std::domain_error("matrix is singular");
    Matrix inv(n, n);
    for (const auto& r : rows) {
        if (r.front().first >= n) throw std::domain_error("matrix is singular");
        SparseVec out;
        for (const auto& [c, v] : r)
            if (c >= n) out.emplace_back(c - n, v);
        inv.set_row(r.front().first, std::move(out));
    }
    return inv;
}

}  // namespace cellsheaf
