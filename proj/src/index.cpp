#include "cellsheaf/index.hpp"

#include <stdexcept>

#include "cellsheaf/derived.hpp"

namespace cellsheaf {

namespace {

long parity(int d) { return d % 2 == 0 ? 1 : -1; }

void require_size(const ComplexPtr& k, std::size_t n) {
    if (n != k->size()) throw std::invalid_argument("function size does not match the complex");
}

std::vector<SimplexId> by_descending_dim(const SimplicialComplex& k) {
    // ids are sorted by dimension, so reverse id order is descending
    std::vector<SimplexId> out(k.size());
    for (SimplexId s = 0; s < k.size(); ++s) out[s] = k.size() - 1 - s;
    return out;
}

}  // namespace

ConstructibleFunction euler_function(const SheafComplex& f) {
    ConstructibleFunction g;
    for (SimplexId s = 0; s < f.complex().size(); ++s) g.values.push_back(euler_characteristic(f.stalk(s)));
    return g;
}

ConstructibleFunction standard_function(const ComplexPtr& k, SimplexId tau) {
    ConstructibleFunction g{std::vector<long>(k->size(), 0)};
    for (SimplexId s : k->faces(tau)) g.values[s] = 1;
    return g;
}

K0Class mobius_invert(const ComplexPtr& k, const ConstructibleFunction& g) {
    require_size(k, g.values.size());
    K0Class c{std::vector<long>(k->size(), 0)};
    for (SimplexId tau : by_descending_dim(*k)) {
        long v = g.values[tau];
        for (SimplexId rho : k->star(tau))
            if (rho != tau) v -= c.coefficient[rho];
        c.coefficient[tau] = v;
    }
    return c;
}

ConstructibleFunction k0_function(const ComplexPtr& k, const K0Class& c) {
    require_size(k, c.coefficient.size());
    ConstructibleFunction g{std::vector<long>(k->size(), 0)};
    for (SimplexId tau = 0; tau < k->size(); ++tau)
        for (SimplexId s : k->faces(tau)) g.values[s] += c.coefficient[tau];
    return g;
}

K0Class k0_class(const SheafComplex& f) { return mobius_invert(f.base(), euler_function(f)); }

K0Class k0_from_decomposition(const TwistedComplex& t) {
    K0Class c{std::vector<long>(t.base()->size(), 0)};
    for (const auto& e : t.entries()) c.coefficient[e.simplex] += parity(e.shift) * euler_characteristic(e.multiplicity);
    return c;
}

LagrangianCycle characteristic_cycle(const ComplexPtr& k, const ConstructibleFunction& g) {
    K0Class c = mobius_invert(k, g);
    LagrangianCycle cc;
    for (SimplexId tau = 0; tau < k->size(); ++tau) cc.multiplicity.push_back(parity(k->dim(tau)) * c.coefficient[tau]);
    return cc;
}

ConstructibleFunction cycle_function(const ComplexPtr& k, const LagrangianCycle& cc) {
    require_size(k, cc.multiplicity.size());
    K0Class c;
    for (SimplexId tau = 0; tau < k->size(); ++tau) c.coefficient.push_back(parity(k->dim(tau)) * cc.multiplicity[tau]);
    return k0_function(k, c);
}

long index_pairing(const ComplexPtr& k, const LagrangianCycle& c) {
    require_size(k, c.multiplicity.size());
    long s = 0;
    for (SimplexId tau = 0; tau < k->size(); ++tau) s += parity(k->dim(tau)) * c.multiplicity[tau];
    return s;
}

IndexCheck verify_index_theorem(const SheafComplex& f) {
    IndexCheck r;
    r.sections_euler = euler_characteristic(sections(f));
    r.pairing = index_pairing(f.base(), characteristic_cycle(f.base(), euler_function(f)));
    return r;
}

ConstructibleFunction dual_function(const ComplexPtr& k, const ConstructibleFunction& g) {
    require_size(k, g.values.size());
    ConstructibleFunction out{std::vector<long>(k->size(), 0)};
    for (SimplexId s = 0; s < k->size(); ++s)
        for (SimplexId t : k->star(s)) out.values[s] += parity(k->dim(t)) * g.values[t];
    return out;
}

AntipodalReport antipodal_report(const ComplexPtr& k, const std::vector<SheafComplex>& samples) {
    const std::size_t n = k->size();
    auto apply = [&](const LagrangianCycle& c) { return characteristic_cycle(k, dual_function(k, cycle_function(k, c))); };

    AntipodalReport r;
    r.relation.assign(n, std::vector<long>(n, 0));
    for (SimplexId j = 0; j < n; ++j) {
        LagrangianCycle unit{std::vector<long>(n, 0)};
        unit.multiplicity[j] = 1;
        LagrangianCycle image = apply(unit);
        for (SimplexId i = 0; i < n; ++i) r.relation[i][j] = image.multiplicity[i];
    }

    r.involution = true;
    for (SimplexId j = 0; j < n && r.involution; ++j) {
        for (SimplexId i = 0; i < n; ++i) {
            long v = 0;
            for (SimplexId m = 0; m < n; ++m) v += r.relation[i][m] * r.relation[m][j];
            if (v != (i == j ? 1 : 0)) {
                r.involution = false;
                break;
            }
        }
    }

    r.consistent = true;
    for (const auto& f : samples) {
        LagrangianCycle cf = characteristic_cycle(k, euler_function(f));
        LagrangianCycle cd = characteristic_cycle(k, euler_function(verdier_dual(f)));
        if (apply(cf) != cd) r.consistent = false;
    }

    for (SimplexId j = 0; j < n; ++j) {
        bool only_diag = true;
        for (SimplexId i = 0; i < n; ++i)
            if (i != j && r.relation[i][j] != 0) only_diag = false;
        if (only_diag && (r.relation[j][j] == 1 || r.relation[j][j] == -1)) r.fixed_up_to_sign.push_back(j);
    }
    if (r.fixed_up_to_sign.size() == n && n > 0) {
        int s = static_cast<int>(r.relation[0][0]);
        bool uniform = true;
        for (SimplexId j = 0; j < n; ++j)
            if (r.relation[j][j] != s) uniform = false;
        if (uniform) r.global_sign = s;
    }
    return r;
}

std::vector<IndexRow> index_table(const SheafComplex& f) {
    const auto& k = f.base();
    ConstructibleFunction g = euler_function(f);
    K0Class c = mobius_invert(k, g);
    LagrangianCycle cc = characteristic_cycle(k, g);
    std::vector<IndexRow> rows;
    for (SimplexId s = 0; s < k->size(); ++s)
        rows.push_back({k->label(s), k->dim(s), g.values[s], c.coefficient[s], cc.multiplicity[s]});
    return rows;
}

}  // namespace cellsheaf
