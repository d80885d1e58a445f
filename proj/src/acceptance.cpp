#include "cellsheaf/acceptance.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "cellsheaf/fixtures.hpp"
#include "cellsheaf/index.hpp"
#include "cellsheaf/kernels.hpp"
#include "cellsheaf/modules.hpp"
#include "cellsheaf/random.hpp"

namespace cellsheaf {

namespace {

using Clock = std::chrono::steady_clock;

CriterionResult timed(int id, std::string title, double limit, const std::function<bool(std::ostringstream&)>& body) {
    CriterionResult r;
    r.id = id;
    r.title = std::move(title);
    r.limit = limit;
    std::ostringstream detail;
    auto start = Clock::now();
    try {
        r.property = body(detail);
    } catch (const std::exception& e) {
        r.property = false;
        detail << " error: " << e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    r.detail = detail.str();
    return r;
}

// Independent stream per (criterion, fixture) so criteria do not share draws.
std::uint64_t stream_seed(std::uint64_t seed, int criterion, std::size_t slot) {
    return seed * 1000003ULL + static_cast<std::uint64_t>(criterion) * 1009ULL + slot;
}

// Total cohomology is one-dimensional and sits in degree 0.
bool is_unit_in_degree_zero(const std::map<int, std::size_t>& dims) {
    std::size_t total = 0;
    for (const auto& [n, d] : dims) total += d;
    auto it = dims.find(0);
    return total == 1 && it != dims.end() && it->second == 1;
}

bool is_zero_dims(const std::map<int, std::size_t>& dims) {
    for (const auto& [n, d] : dims)
        if (d != 0) return false;
    return true;
}

}  // namespace

CriterionResult check_hom_tables() {
    return timed(1, "hom tables of the four bases", 10.0, [](std::ostringstream& out) {
        using Make = SheafComplex (*)(const ComplexPtr&, SimplexId);
        struct Basis {
            const char* name;
            Make make;
            bool reversed;  // table entry (a, b) computes rhom(X(b), X(a))
        };
        const std::array<Basis, 4> bases{{{"standard", standard_simplex, true},
                                          {"costandard", costandard_simplex, false},
                                          {"standard-star", standard_star, false},
                                          {"costandard-star", costandard_star, true}}};
        bool ok = true;
        for (const auto& b : bases) {
            out << " " << b.name << ":";
            for (const char* name : {"I", "C3", "D2", "dD2", "dD3"}) {
                ComplexPtr k = fixture(name);
                std::vector<SheafComplex> objs;
                for (SimplexId s = 0; s < k->size(); ++s) objs.push_back(b.make(k, s));
                std::size_t bad = 0;
                for (SimplexId x = 0; x < k->size(); ++x)
                    for (SimplexId y = 0; y < k->size(); ++y) {
                        auto dims = b.reversed ? rhom_dims(objs[y], objs[x]) : rhom_dims(objs[x], objs[y]);
                        bool expected = k->is_face(x, y);
                        bool good = expected ? is_unit_in_degree_zero(dims) : is_zero_dims(dims);
                        if (!good) ++bad;
                    }
                out << " " << name << "=" << bad;
                if (bad) ok = false;
            }
        }
        return ok;
    });
}

CriterionResult check_duality(std::uint64_t seed) {
    return timed(2, "Verdier duality on bases and random objects", 60.0, [seed](std::ostringstream& out) {
        bool ok = true;
        const auto& names = fixture_names();
        for (std::size_t i = 0; i < names.size(); ++i) {
            ComplexPtr k = fixture(names[i]);
            std::size_t good = 0, total = 0;
            for (SimplexId s = 0; s < k->size(); ++s) {
                good += stalkwise_equal(verdier_dual(costandard_simplex(k, s)), standard_simplex(k, s));
                good += stalkwise_equal(verdier_dual(costandard_star(k, s)), standard_star(k, s));
                total += 2;
            }
            for (const auto& f : random_suite(k, stream_seed(seed, 2, i), 25)) {
                good += stalkwise_equal(verdier_dual(verdier_dual(f)), f);
                ++total;
            }
            out << " " << names[i] << "=" << good << "/" << total;
            if (good != total) ok = false;
        }
        return ok;
    });
}

CriterionResult check_decompositions(std::uint64_t seed) {
    return timed(3, "standard and costandard decompositions", 60.0, [seed](std::ostringstream& out) {
        bool ok = true;
        const auto& names = fixture_names();
        for (std::size_t i = 0; i < names.size(); ++i) {
            ComplexPtr k = fixture(names[i]);
            std::size_t good = 0, total = 0;
            // the suite is the one criterion 2 draws
            for (const auto& f : random_suite(k, stream_seed(seed, 2, i), 25)) {
                good += stalkwise_equal(totalize(decompose_standard(f)), f);
                good += stalkwise_equal(totalize(decompose_costandard(f)), f);
                total += 2;
            }
            for (SimplexId s = 0; s < k->size(); ++s) {
                good += decompose_standard(standard_simplex(k, s)).entries().size() == 1;
                good += decompose_costandard(costandard_simplex(k, s)).entries().size() == 1;
                total += 2;
            }
            out << " " << names[i] << "=" << good << "/" << total;
            if (good != total) ok = false;
        }
        return ok;
    });
}

CriterionResult check_representability(std::uint64_t seed) {
    return timed(4, "representability of Yoneda modules", 120.0, [seed](std::ostringstream& out) {
        bool ok = true;
        const auto& names = fixture_names();
        for (std::size_t i = 0; i < names.size(); ++i) {
            ComplexPtr k = fixture(names[i]);
            std::size_t rep = 0, steps = 0, total = 0;
            for (const auto& f : random_suite(k, stream_seed(seed, 2, i), 25)) {
                PosetModule m = yoneda_module(f);
                rep += stalkwise_equal(represent(m), f);
                bool all = true;
                for (const auto& s : step_intermediates(m)) all = all && s.acyclic_above;
                steps += all;
                ++total;
            }
            out << " " << names[i] << "=" << rep << "," << steps << "/" << total;
            if (rep != total || steps != total) ok = false;
        }
        for (const char* name : {"I", "C3"}) {
            ComplexPtr k = fixture(name);
            Subdivision sd = barycentric_subdivision(k);
            std::size_t good = 0;
            for (const auto& f : random_suite(k, stream_seed(seed, 4, name[0]), 10)) good += refine_and_compare(f, sd);
            out << " refine-" << name << "=" << good << "/10";
            if (good != 10) ok = false;
        }
        return ok;
    });
}

CriterionResult check_adjunctions(std::uint64_t seed) {
    return timed(5, "pullback-pushforward adjunction and graph kernels", 120.0, [seed](std::ostringstream& out) {
        ComplexPtr c3 = fixture("C3"), i = fixture("I"), d2 = fixture("D2"), pt = fixture("pt");
        const std::vector<std::pair<std::string, SimplicialMap>> maps{
            {"C3->I", SimplicialMap(c3, i, {0, 1, 1})},
            {"D2->pt", SimplicialMap(d2, pt, {0, 0, 0})},
            {"I->I", SimplicialMap::identity(i)}};
        bool ok = true;
        for (std::size_t m = 0; m < maps.size(); ++m) {
            const auto& [name, f] = maps[m];
            Rng rng(stream_seed(seed, 5, m));
            std::size_t adj = 0, graph = 0;
            for (int t = 0; t < 10; ++t) {
                SheafComplex src = random_sheaf(f.source(), rng);
                SheafComplex tgt = random_sheaf(f.target(), rng);
                adj += rhom_dims(pullback(f, tgt), src) == rhom_dims(tgt, pushforward(f, src));
            }
            Kernel g = graph_kernel(f);
            for (int t = 0; t < 5; ++t) {
                SheafComplex src = random_sheaf(f.source(), rng);
                SheafComplex tgt = random_sheaf(f.target(), rng);
                graph += stalkwise_equal(transform_upper_star(g, tgt), pullback(f, tgt)) &&
                         stalkwise_equal(transform_star(g, src), pushforward(f, src)) &&
                         stalkwise_equal(transform_shriek(g, src), pushforward_proper(f, src)) &&
                         stalkwise_equal(transform_upper_shriek(g, tgt), upper_shriek(f, tgt));
            }
            out << " " << name << "=" << adj << "/10," << graph << "/5";
            if (adj != 10 || graph != 5) ok = false;
        }
        return ok;
    });
}

CriterionResult check_transform_duality(std::uint64_t seed) {
    return timed(6, "duality identities for integral transforms", 120.0, [seed](std::ostringstream& out) {
        ComplexPtr i = fixture("I");
        Product p = staircase_product(i, i);
        Rng rng(stream_seed(seed, 6, 0));
        std::vector<Kernel> kernels{diagonal_kernel(i)};
        for (int t = 0; t < 5; ++t) kernels.push_back(make_kernel(p, random_sheaf(p.complex, rng)));
        bool ok = true;
        for (std::size_t t = 0; t < kernels.size(); ++t) {
            std::vector<SheafComplex> on0, on1;
            for (int s = 0; s < 5; ++s) {
                on0.push_back(random_sheaf(i, rng));
                on1.push_back(random_sheaf(i, rng));
            }
            DualityReport r = verify_duality_identities(kernels[t], on0, on1);
            std::size_t good = 0;
            for (const auto& c : r.checks) good += c.all();
            out << " " << (t == 0 ? std::string("diagonal") : "K" + std::to_string(t)) << "=" << good << "/5";
            if (good != 5) ok = false;
        }
        return ok;
    });
}

CriterionResult check_diagonal_identity(std::uint64_t seed) {
    return timed(7, "diagonal kernel acts as the identity", 180.0, [seed](std::ostringstream& out) {
        bool ok = true;
        std::size_t slot = 0;
        for (const char* name : {"I", "C3"}) {
            ComplexPtr k = fixture(name);
            Kernel d = diagonal_kernel(k);
            std::vector<SheafComplex> costd;
            for (SimplexId s = 0; s < k->size(); ++s) costd.push_back(costandard_simplex(k, s));
            std::size_t good = 0;
            for (const auto& f : random_suite(k, stream_seed(seed, 7, slot++), 10)) {
                SheafComplex lower = transform_star(d, f), upper = transform_upper_star(d, f);
                bool g = stalkwise_equal(lower, f) && stalkwise_equal(upper, f);
                for (const auto& c : costd) g = g && rhom_dims(c, lower) == rhom_dims(c, f);
                good += g;
            }
            bool decomposition = stalkwise_equal(totalize(diagonal_decomposition(k)), d.sheaf);
            out << " " << name << "=" << good << "/10,decomposition=" << (decomposition ? "ok" : "bad");
            if (good != 10 || !decomposition) ok = false;
        }
        return ok;
    });
}

CriterionResult check_index_square(std::uint64_t seed) {
    return timed(8, "index square", 30.0, [seed](std::ostringstream& out) {
        bool ok = true;
        const auto& names = closed_fixture_names();
        for (std::size_t i = 0; i < names.size(); ++i) {
            ComplexPtr k = fixture(names[i]);
            Kernel d = diagonal_kernel(k);
            std::size_t index = 0, kernel = 0, mobius = 0;
            for (const auto& f : random_suite(k, stream_seed(seed, 8, i), 25)) {
                index += verify_index_theorem(f).holds();
                kernel += euler_function(transform_upper_star(d, f)) == euler_function(f);
            }
            for (SimplexId s = 0; s < k->size(); ++s) {
                K0Class unit{std::vector<long>(k->size(), 0)};
                unit.coefficient[s] = 1;
                mobius += mobius_invert(k, standard_function(k, s)) == unit &&
                          k0_function(k, unit) == standard_function(k, s);
            }
            out << " " << names[i] << "=" << index << "/25," << kernel << "/25,mobius " << mobius << "/" << k->size();
            if (index != 25 || kernel != 25 || mobius != k->size()) ok = false;
        }
        return ok;
    });
}

CriterionResult check_determinism(const std::string& cli_path, std::uint64_t seed) {
    return timed(9, "check-suite output is byte-identical across runs", 600.0, [&](std::ostringstream& out) {
        auto run = [&]() {
            std::string cmd = "'" + cli_path + "' check-suite --seed " + std::to_string(seed) + " 2>/dev/null";
            FILE* pipe = popen(cmd.c_str(), "r");
            if (!pipe) throw std::runtime_error("cannot start " + cli_path);
            std::string text;
            std::array<char, 4096> buf{};
            std::size_t n;
            while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) text.append(buf.data(), n);
            int status = pclose(pipe);
            return std::make_pair(status, text);
        };
        auto first = run();
        auto second = run();
        bool same = first.second == second.second && !first.second.empty();
        out << " bytes=" << first.second.size() << "," << second.second.size() << " identical=" << (same ? "yes" : "no")
            << " exit=" << first.first << "," << second.first;
        return same;
    });
}

std::vector<CriterionResult> run_property_criteria(std::uint64_t seed) {
    return {check_hom_tables(),           check_duality(seed),           check_decompositions(seed),
            check_representability(seed), check_adjunctions(seed),       check_transform_duality(seed),
            check_diagonal_identity(seed), check_index_square(seed)};
}

std::string render_results(const std::vector<CriterionResult>& results, bool with_timing) {
    std::ostringstream out;
    for (const auto& r : results) {
        out << (r.pass() ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.title << " |" << r.detail;
        if (with_timing) {
            char buf[64];
            std::snprintf(buf, sizeof buf, " | %.2fs of %.0fs", r.seconds, r.limit);
            out << buf;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace cellsheaf
