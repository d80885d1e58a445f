#include "cellsheaf/random.hpp"

#include <limits>
#include <stdexcept>

namespace cellsheaf {

long Rng::uniform(long lo, long hi) {
    if (hi < lo) throw std::invalid_argument("empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return lo + static_cast<long>(x % span);
}

Matrix random_unimodular(std::size_t n, Rng& rng) {
    Matrix m = Matrix::identity(n);
    if (n < 2) {
        if (n == 1 && rng.coin()) m.set(0, 0, Rational(-1));
        return m;
    }
    const std::size_t steps = n + 1;
    for (std::size_t s = 0; s < steps; ++s) {
        auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
        auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 2));
        if (j >= i) ++j;
        Rational c(rng.coin() ? 1 : -1);
        // row i += c * row j
        m.set_row(i, axpy(m.row(i), c, m.row(j)));
    }
    return m;
}

namespace {

struct Atom {
    SimplexSet support;
    int degree;
};

Atom random_atom(const ComplexPtr& k, Rng& rng, int lo, int hi) {
    FacePoset p(k);
    SimplexId tau = static_cast<SimplexId>(rng.uniform(0, static_cast<long>(k->size()) - 1));
    SimplexSet s;
    switch (rng.uniform(0, 3)) {
        case 0: s = p.closure(tau); break;
        case 1: s = p.star(tau); break;
        case 2:
            s = p.none();
            s[tau] = true;
            break;
        default: s = p.all(); break;
    }
    return {s, static_cast<int>(rng.uniform(lo, hi))};
}

// A constant scalar on S ∩ T is natural from Q_S to Q_T exactly when, for
// every covering pair, both sides of the square are simultaneously defined.
bool scalar_map_is_natural(const SimplicialComplex& k, const SimplexSet& s, const SimplexSet& t) {
    for (SimplexId b = 0; b < k.size(); ++b)
        for (SimplexId a : k.facets(b)) {
            bool lhs = s[a] && t[a] && t[b];
            bool rhs = s[b] && t[b] && s[a];
            if (lhs != rhs) return false;
        }
    return true;
}

}  // namespace

SheafComplex random_sheaf(const ComplexPtr& k, Rng& rng) {
    if (k->size() == 0) return zero_sheaf(k);
    const long nb = rng.uniform(1, 2);
    const long na = rng.uniform(0, 3 - nb);
    std::vector<Atom> a, b;
    for (long i = 0; i < na; ++i) a.push_back(random_atom(k, rng, 0, 1));
    for (long i = 0; i < nb; ++i) b.push_back(random_atom(k, rng, -1, 1));

    auto sum_of = [&](const std::vector<Atom>& atoms) {
        if (atoms.empty()) return zero_sheaf(k);
        std::vector<SheafComplex> parts;
        for (const auto& x : atoms) parts.push_back(constant_on(k, x.support, x.degree));
        return direct_sum(parts);
    };
    SheafComplex sa = sum_of(a), sb = sum_of(b);

    std::vector<std::vector<Rational>> scalar(b.size(), std::vector<Rational>(a.size()));
    for (std::size_t j = 0; j < b.size(); ++j)
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i].degree == b[j].degree && scalar_map_is_natural(*k, a[i].support, b[j].support))
                scalar[j][i] = Rational(rng.uniform(-2, 2));

    std::vector<GradedMatrix> comps;
    for (SimplexId s = 0; s < k->size(); ++s) {
        std::map<int, std::vector<Triplet>> trip;
        std::map<int, std::size_t> row_count, col_count;
        std::vector<std::size_t> col_pos(a.size()), row_pos(b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i].support[s]) col_pos[i] = col_count[a[i].degree]++;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j].support[s]) row_pos[j] = row_count[b[j].degree]++;
        for (std::size_t j = 0; j < b.size(); ++j)
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i].support[s] && b[j].support[s] && !scalar[j][i].is_zero())
                    trip[a[i].degree].push_back({row_pos[j], col_pos[i], scalar[j][i]});
        GradedMatrix g;
        for (auto& [n, t] : trip) g[n] = Matrix::from_triplets(sb.stalk(s).dim(n), sa.stalk(s).dim(n), std::move(t));
        comps.push_back(std::move(g));
    }
    SheafComplex f = cone(SheafMap(sa, sb, std::move(comps)));

    std::vector<std::map<int, Matrix>> bases(k->size());
    for (SimplexId s = 0; s < k->size(); ++s) {
        const auto& c = f.stalk(s);
        for (int n = c.lo(); n <= c.hi(); ++n) bases[s][n] = random_unimodular(c.dim(n), rng);
    }
    return change_basis(f, bases);
}

std::vector<SheafComplex> random_suite(const ComplexPtr& k, std::uint64_t seed, std::size_t count) {
    Rng rng(seed);
    std::vector<SheafComplex> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_sheaf(k, rng));
    return out;
}

}  // namespace cellsheaf
