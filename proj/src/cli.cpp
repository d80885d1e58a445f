#include "cellsheaf/cli.hpp"

#include <filesystem>
#include <iomanip>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "cellsheaf/acceptance.hpp"
#include "cellsheaf/fixtures.hpp"
#include "cellsheaf/index.hpp"
#include "cellsheaf/modules.hpp"
#include "cellsheaf/random.hpp"
#include "cellsheaf/serialize.hpp"

namespace cellsheaf {

namespace {

struct Options {
    std::string base, sheaf, with, module, kernel, out, target, vertex_map, set, op, right, left_sheaf, right_sheaf;
    std::string what = "sections", basis = "standard", kind, partition = "singleton", emit = "report";
    std::string star, closure, link, product, complex_file, save_kernel;
    bool text = false, subdivide = false, diagonal = false, local = false, reduced = false, refine = false;
    bool decomposition = false;
    int shift = 0;
    std::size_t samples = 0;
    std::uint64_t seed = kDefaultSeed;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string part;
    std::istringstream in(s);
    while (std::getline(in, part, sep))
        if (!part.empty()) out.push_back(part);
    return out;
}

SimplexId simplex_arg(const SimplicialComplex& k, const std::string& text) {
    try {
        return k.parse_simplex(text);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

// Simplices separated by ';' (labels may contain commas).
SimplexSet simplex_set(const SimplicialComplex& k, const std::string& text) {
    SimplexSet s(k.size(), false);
    for (const auto& part : split(text, ';')) s[simplex_arg(k, part)] = true;
    return s;
}

Json dims_json(const std::map<int, std::size_t>& dims) {
    Json j = Json::object();
    for (const auto& [n, d] : dims)
        if (d) j[std::to_string(n)] = d;
    return j;
}

std::string dims_text(const std::map<int, std::size_t>& dims) {
    std::ostringstream out;
    bool any = false;
    for (const auto& [n, d] : dims)
        if (d) {
            out << (any ? " " : "") << "H^" << n << "=" << d;
            any = true;
        }
    return any ? out.str() : "0";
}

std::string sheaf_text(const SheafComplex& f) {
    std::ostringstream out;
    auto h = stalk_cohomology(f);
    for (SimplexId s = 0; s < f.size(); ++s)
        out << std::left << std::setw(12) << f.complex().label(s) << " " << dims_text(h[s]) << "\n";
    return out.str();
}

Json twisted_json(const TwistedComplex& t) {
    Json entries = Json::array();
    const auto& k = *t.base();
    for (const auto& e : t.entries())
        entries.push_back({{"simplex", k.label(e.simplex)}, {"shift", e.shift}, {"multiplicity", dims_json(e.multiplicity.dims())}});
    return {{"basis", to_string(t.basis())}, {"entries", entries}};
}

std::string twisted_text(const TwistedComplex& t) {
    std::ostringstream out;
    out << to_string(t.basis()) << " entries: " << t.entries().size() << "\n";
    for (const auto& e : t.entries())
        out << "  " << std::left << std::setw(12) << t.base()->label(e.simplex) << " shift " << std::setw(3) << e.shift
            << " multiplicity " << dims_text(e.multiplicity.dims()) << "\n";
    return out.str();
}

std::vector<std::size_t> parse_vertex_map(const SimplicialComplex& src, const SimplicialComplex& tgt, const std::string& text) {
    std::vector<std::optional<std::size_t>> image(src.num_vertices());
    for (const auto& pair : split(text, ',')) {
        auto eq = pair.find('=');
        if (eq == std::string::npos) throw InputError("vertex map entry \"" + pair + "\" is not of the form v=w");
        try {
            image[src.vertex_index(pair.substr(0, eq))] = tgt.vertex_index(pair.substr(eq + 1));
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < image.size(); ++v) {
        if (!image[v]) throw InputError("vertex map does not assign vertex " + src.vertex_names()[v]);
        out.push_back(*image[v]);
    }
    return out;
}

class Command {
public:
    Command(const Options& o, std::ostream& out) : o_(o), out_(out) {}

    void emit(const Json& j, const std::string& text) {
        std::string body = o_.text ? text : dump(j);
        if (o_.out.empty()) out_ << body;
        else write_file(o_.out, body);
    }
    void emit_sheaf(const SheafComplex& f) { emit(to_json(f), sheaf_text(f)); }

    ComplexPtr base() const {
        if (!o_.base.empty()) return resolve_base(o_.base);
        if (!o_.sheaf.empty() && std::filesystem::exists(o_.sheaf)) return resolve_sheaf(o_.sheaf, nullptr).base();
        throw InputError("--base is required");
    }
    SheafComplex sheaf(const ComplexPtr& k) const {
        if (o_.sheaf.empty()) throw InputError("--sheaf is required");
        return resolve_sheaf(o_.sheaf, k);
    }
    SheafComplex other(const ComplexPtr& k) const {
        if (o_.with.empty()) throw InputError("--with is required for this operation");
        return resolve_sheaf(o_.with, k);
    }
    SimplicialMap map_from(const ComplexPtr& src) const {
        if (o_.target.empty() || o_.vertex_map.empty()) throw InputError("--target and --vertex-map are required");
        ComplexPtr tgt = resolve_base(o_.target);
        auto vm = parse_vertex_map(*src, *tgt, o_.vertex_map);
        try {
            return SimplicialMap(src, tgt, vm);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    }
    Partition partition(const ComplexPtr& k) const {
        Partition p;
        if (o_.partition == "singleton") p = singleton_partition(k);
        else if (o_.partition == "one") p = one_group_partition(k);
        else {
            p.group.assign(k->size(), static_cast<std::size_t>(-1));
            auto groups = split(o_.partition, '|');
            for (std::size_t g = 0; g < groups.size(); ++g)
                for (SimplexId s : members(simplex_set(*k, groups[g]))) p.group[s] = g;
            for (SimplexId s = 0; s < k->size(); ++s)
                if (p.group[s] == static_cast<std::size_t>(-1)) throw InputError("partition misses simplex " + k->label(s));
        }
        try {
            validate_partition(k, p);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
        return p;
    }

    const Options& o_;
    std::ostream& out_;
};

int cmd_complex(Command& c) {
    const Options& o = c.o_;
    ComplexPtr k = resolve_base(o.base);
    FacePoset poset = face_poset(k);
    auto list = [&](const SimplexSet& s, const std::string& title) {
        Json j = Json::array();
        std::string text = title + ":";
        for (SimplexId x : members(s)) {
            j.push_back(k->label(x));
            text += " " + k->label(x);
        }
        c.emit({{title, j}}, text + "\n");
        return 0;
    };
    if (!o.star.empty()) return list(poset.star(simplex_arg(*k, o.star)), "star");
    if (!o.closure.empty()) return list(poset.closure(simplex_arg(*k, o.closure)), "closure");
    if (!o.vertex_map.empty()) {
        ComplexPtr tgt = resolve_base(o.target.empty() ? o.base : o.target);
        auto vm = parse_vertex_map(*k, *tgt, o.vertex_map);
        bool valid = true;
        std::string why;
        try {
            SimplicialMap(k, tgt, vm);
        } catch (const std::invalid_argument& e) {
            valid = false;
            why = e.what();
        }
        c.emit({{"valid", valid}, {"reason", why}}, std::string(valid ? "valid" : "invalid: " + why) + "\n");
        return valid ? 0 : 1;
    }
    ComplexPtr result = k;
    if (!o.link.empty()) result = make_complex(link(*k, simplex_arg(*k, o.link)));
    else if (o.subdivide) result = barycentric_subdivision(k).complex;
    else if (!o.product.empty()) result = staircase_product(k, resolve_base(o.product)).complex;
    else if (o.diagonal) {
        DiagonalEmbedding d = diagonal_subcomplex(k);
        return [&] {
            ComplexPtr p = d.product.complex;
            Json img = Json::array();
            std::string text = "diagonal in " + std::to_string(p->size()) + "-simplex product:";
            for (SimplexId s : members(d.image)) {
                img.push_back(p->label(s));
                text += " " + p->label(s);
            }
            c.emit({{"product", to_json(*p)}, {"diagonal", img}}, text + "\n");
            return 0;
        }();
    }
    std::ostringstream text;
    for (SimplexId s = 0; s < result->size(); ++s) {
        text << std::left << std::setw(16) << result->label(s) << " dim " << result->dim(s) << "  boundary";
        for (SimplexId f : result->facets(s)) text << " " << (result->incidence(f, s) > 0 ? "+" : "-") << result->label(f);
        text << "\n";
    }
    (void)poset;
    c.emit(to_json(*result), text.str());
    return 0;
}

int cmd_chain(Command& c) {
    const Options& o = c.o_;
    if (o.complex_file.empty()) throw InputError("--complex is required");
    ChainComplex a = parse_chain_complex(read_file(o.complex_file));
    auto second = [&] {
        if (o.with.empty()) throw InputError("--with is required for this operation");
        return parse_chain_complex(read_file(o.with));
    };
    ChainComplex result;
    const std::string op = o.op.empty() ? "cohomology" : o.op;
    if (op == "cohomology") {
        auto dims = cohomology_dims(a);
        long e = euler_characteristic(a);
        c.emit({{"cohomology", dims_json(dims)}, {"euler", e}}, dims_text(dims) + "\neuler " + std::to_string(e) + "\n");
        return 0;
    }
    if (op == "shift") result = shift(a, o.shift);
    else if (op == "tensor") result = tensor(a, second());
    else if (op == "hom") result = hom_complex(a, second());
    else if (op == "dual") result = dual(a);
    else if (op == "bicomplex") {
        // a ⊠ b as a double complex with the Koszul sign on the vertical differential
        ChainComplex b = second();
        DoubleComplex dc;
        for (int p = a.lo(); p <= a.hi(); ++p)
            for (int q = b.lo(); q <= b.hi(); ++q) {
                if (a.dim(p) * b.dim(q) == 0) continue;
                dc.dims[{p, q}] = a.dim(p) * b.dim(q);
                if (a.dim(p + 1)) dc.horizontal[{p, q}] = kron(a.d(p), Matrix::identity(b.dim(q)));
                if (b.dim(q + 1)) dc.vertical[{p, q}] = Rational(p % 2 == 0 ? 1 : -1) * kron(Matrix::identity(a.dim(p)), b.d(q));
            }
        result = total_complex(dc);
    } else throw InputError("unknown chain operation \"" + op + "\"");
    c.emit(to_json(result), result.str() + "\n");
    return 0;
}

int cmd_sheaf(Command& c) {
    const Options& o = c.o_;
    ComplexPtr k = c.base();
    SheafComplex f = c.sheaf(k);
    const std::string op = o.op.empty() ? "identity" : o.op;
    FacePoset poset = face_poset(k);
    auto region = [&](bool open) {
        if (o.set.empty()) throw InputError("--set is required for this operation");
        SimplexSet s = simplex_set(*k, o.set);
        if (open && !poset.is_open(s)) throw InputError("--set must be an up-set (open)");
        if (!open && !poset.is_closed(s)) throw InputError("--set must be a down-set (closed)");
        return s;
    };
    SheafComplex g;
    if (op == "identity") g = f;
    else if (op == "shift") g = shift(f, o.shift);
    else if (op == "tensor") g = tensor(f, c.other(k));
    else if (op == "sheaf-hom") g = sheaf_hom(f, c.other(k));
    else if (op == "extend-open") g = extend_by_zero_open(f, region(true));
    else if (op == "pushforward-open") g = pushforward_open(f, region(true));
    else if (op == "pushforward-closed") g = pushforward_closed(f, region(false));
    else if (op == "upper-shriek-closed") g = upper_shriek_closed(f, region(false));
    else if (op == "restrict") {
        if (o.set.empty()) throw InputError("--set is required for this operation");
        SimplexSet s = simplex_set(*k, o.set);
        if (!poset.is_locally_closed(s)) throw InputError("--set must be locally closed");
        g = restrict(f, s);
    } else if (op == "subdivide") g = subdivide_sheaf(f, barycentric_subdivision(k));
    else throw InputError("unknown sheaf operation \"" + op + "\"");
    c.emit_sheaf(g);
    return 0;
}

int cmd_map(Command& c) {
    const Options& o = c.o_;
    ComplexPtr src = c.base();
    SimplicialMap f = c.map_from(src);
    const std::string op = o.op.empty() ? "pushforward" : o.op;
    SheafComplex g;
    if (op == "pullback") g = pullback(f, c.sheaf(f.target()));
    else if (op == "upper-shriek") g = upper_shriek(f, c.sheaf(f.target()));
    else if (op == "pushforward") g = pushforward(f, c.sheaf(src));
    else if (op == "pushforward-proper") g = pushforward_proper(f, c.sheaf(src));
    else if (op == "pushforward-nerve") g = pushforward_nerve(f, c.sheaf(src));
    else throw InputError("unknown map operation \"" + op + "\"");
    c.emit_sheaf(g);
    return 0;
}

int cmd_cohomology(Command& c) {
    const Options& o = c.o_;
    ComplexPtr k = c.base();
    SheafComplex f = c.sheaf(k);
    if (o.what == "sections" || o.what == "compact") {
        ChainComplex s = o.what == "sections" ? sections(f) : sections_c(f);
        auto dims = cohomology_dims(s);
        long e = euler_characteristic(s);
        c.emit({{"what", o.what}, {"cohomology", dims_json(dims)}, {"euler", e}},
               dims_text(dims) + "\neuler " + std::to_string(e) + "\n");
        return 0;
    }
    if (o.what == "stalks" || o.what == "costalks") {
        Json j = Json::object();
        std::ostringstream text;
        for (SimplexId s = 0; s < k->size(); ++s) {
            auto dims = cohomology_dims(o.what == "stalks" ? f.stalk(s) : costalk(f, s));
            j[k->label(s)] = dims_json(dims);
            text << std::left << std::setw(12) << k->label(s) << " " << dims_text(dims) << "\n";
        }
        c.emit({{"what", o.what}, {"cohomology", j}}, text.str());
        return 0;
    }
    throw InputError("--what must be sections, compact, stalks or costalks");
}

int cmd_dual(Command& c) {
    ComplexPtr k = c.base();
    SheafComplex f = c.sheaf(k);
    c.emit_sheaf(c.o_.reduced ? dual_reduced(f) : verdier_dual(f));
    return 0;
}

int cmd_rhom(Command& c) {
    const Options& o = c.o_;
    ComplexPtr k = c.base();
    SheafComplex f = c.sheaf(k), g = c.other(k);
    if (o.local) {
        c.emit_sheaf(o.reduced ? sheaf_hom_reduced(f, g) : sheaf_hom(f, g));
        return 0;
    }
    ChainComplex r = o.reduced ? rhom_reduced(f, g) : rhom_global(f, g);
    auto dims = cohomology_dims(r);
    c.emit({{"cohomology", dims_json(dims)}}, dims_text(dims) + "\n");
    return 0;
}

int cmd_decompose(Command& c) {
    const Options& o = c.o_;
    ComplexPtr k = c.base();
    SheafComplex f = c.sheaf(k);
    TwistedComplex t;
    Json j;
    std::string text;
    bool ok = true;
    if (o.basis == "standard") {
        t = decompose_standard(f);
        bool comparison = is_quasi_iso(koszul_comparison(f));
        bool k0 = k0_from_decomposition(t) == k0_class(f);
        j["comparison_quasi_isomorphism"] = comparison;
        j["k0_matches_mobius"] = k0;
        text += std::string("comparison map quasi-isomorphism: ") + (comparison ? "yes" : "no") + "\n";
        text += std::string("K0 matches Mobius inversion: ") + (k0 ? "yes" : "no") + "\n";
        ok = comparison && k0;
    } else if (o.basis == "costandard") {
        t = decompose_costandard(f);
    } else {
        throw InputError("--basis must be standard or costandard");
    }
    SheafComplex total = totalize(t);
    if (o.emit == "sheaf") {
        c.emit_sheaf(total);
        return 0;
    }
    bool round = equivalent(total, f);
    ok = ok && round;
    Json tj = twisted_json(t);
    j["basis"] = tj["basis"];
    j["entries"] = tj["entries"];
    j["round_trip"] = round;
    c.emit(j, twisted_text(t) + text + "round trip: " + (round ? "yes" : "no") + "\n");
    return ok ? 0 : 1;
}

int cmd_represent(Command& c) {
    const Options& o = c.o_;
    PosetModule m;
    std::optional<SheafComplex> f;
    if (!o.module.empty()) {
        m = parse_module(read_file(o.module));
    } else {
        ComplexPtr k = c.base();
        f = c.sheaf(k);
        m = yoneda_module(*f);
    }
    if (o.emit == "module") {
        c.emit(to_json(m), "");
        return 0;
    }
    SheafComplex r = represent(m);
    if (o.emit == "sheaf") {
        c.emit_sheaf(r);
        return 0;
    }
    Partition p = c.partition(m.base());
    Json j;
    std::ostringstream text;
    bool ok = true;
    j["fr"] = check_fr(m);
    j["slc"] = check_slc(m, p);
    text << "f-r: " << (check_fr(m) ? "yes" : "no") << "\nS-lc: " << (check_slc(m, p) ? "yes" : "no") << "\n";
    Json steps = Json::array();
    for (const auto& s : step_intermediates(m)) {
        steps.push_back({{"k", s.k}, {"acyclic_above", s.acyclic_above}});
        text << "step " << s.k << ": acyclic on dimensions >= " << s.k << ": " << (s.acyclic_above ? "yes" : "no") << "\n";
        ok = ok && s.acyclic_above;
    }
    j["steps"] = steps;
    bool back = valuewise_equal(yoneda_module(r), m);
    j["module_round_trip"] = back;
    text << "yoneda(represent(M)) = M valuewise: " << (back ? "yes" : "no") << "\n";
    ok = ok && back;
    if (f) {
        bool eq = stalkwise_equal(r, *f);
        bool cons = is_constructible(*f, p);
        j["round_trip"] = eq;
        j["constructible"] = cons;
        text << "represent(yoneda(F)) = F stalkwise: " << (eq ? "yes" : "no") << "\nconstructible: " << (cons ? "yes" : "no")
             << "\n";
        ok = ok && eq;
        if (o.refine) {
            bool rc = refine_and_compare(*f, barycentric_subdivision(f->base()));
            j["refine_and_compare"] = rc;
            text << "refine and compare: " << (rc ? "yes" : "no") << "\n";
            ok = ok && rc;
        }
    }
    c.emit(j, text.str());
    return ok ? 0 : 1;
}

Kernel kernel_of(Command& c) {
    const Options& o = c.o_;
    if (o.kernel.empty()) throw InputError("--kernel is required");
    if (o.kernel == "diagonal") return diagonal_kernel(c.base());
    if (o.kernel == "graph") {
        SimplicialMap f = c.map_from(c.base());
        try {
            return graph_kernel(f);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    }
    if (o.kernel == "external") {
        ComplexPtr left = c.base(), right = o.right.empty() ? left : resolve_base(o.right);
        if (o.left_sheaf.empty() || o.right_sheaf.empty()) throw InputError("--left-sheaf and --right-sheaf are required");
        return external_product(resolve_sheaf(o.left_sheaf, left), resolve_sheaf(o.right_sheaf, right),
                                staircase_product(left, right));
    }
    return parse_kernel(read_file(o.kernel));
}

int cmd_transform(Command& c) {
    const Options& o = c.o_;
    Kernel k = kernel_of(c);
    if (!o.save_kernel.empty()) write_file(o.save_kernel, dump(to_json(k)));
    if (o.decomposition) {
        TwistedComplex t = decompose_standard(k.sheaf);
        c.emit(twisted_json(t), twisted_text(t));
        return 0;
    }
    if (o.samples > 0) {
        Rng rng(o.seed);
        std::vector<SheafComplex> on0, on1;
        for (std::size_t i = 0; i < o.samples; ++i) {
            on0.push_back(random_sheaf(k.product.left, rng));
            on1.push_back(random_sheaf(k.product.right, rng));
        }
        DualityReport r = verify_duality_identities(k, on0, on1);
        Json checks = Json::array();
        std::ostringstream text;
        for (std::size_t i = 0; i < r.checks.size(); ++i) {
            const auto& x = r.checks[i];
            checks.push_back({{"upper_star", x.upper_star}, {"star", x.star}, {"shriek", x.shriek}, {"upper_shriek", x.upper_shriek}});
            text << "sample " << i << ": upper-star " << x.upper_star << " star " << x.star << " shriek " << x.shriek
                 << " upper-shriek " << x.upper_shriek << "\n";
        }
        c.emit({{"checks", checks}, {"all", r.all()}}, text.str() + (r.all() ? "all hold\n" : "some fail\n"));
        return r.all() ? 0 : 1;
    }
    const std::string kind = o.kind.empty() ? "star" : o.kind;
    SheafComplex g;
    if (kind == "upper-star") g = transform_upper_star(k, c.sheaf(k.product.right));
    else if (kind == "upper-shriek") g = transform_upper_shriek(k, c.sheaf(k.product.right));
    else if (kind == "star") g = transform_star(k, c.sheaf(k.product.left));
    else if (kind == "shriek") g = transform_shriek(k, c.sheaf(k.product.left));
    else throw InputError("--kind must be upper-star, star, shriek or upper-shriek");
    c.emit_sheaf(g);
    return 0;
}

int cmd_cc_report(Command& c) {
    const Options& o = c.o_;
    ComplexPtr k = c.base();
    SheafComplex f = c.sheaf(k);
    Json rows = Json::array();
    std::ostringstream text;
    text << std::left << std::setw(12) << "simplex" << std::right << std::setw(5) << "dim" << std::setw(8) << "chi"
         << std::setw(8) << "K0" << std::setw(8) << "CC" << "\n";
    for (const auto& r : index_table(f)) {
        rows.push_back({{"simplex", r.simplex}, {"dim", r.dim}, {"chi", r.euler}, {"k0", r.k0}, {"cc", r.cc}});
        text << std::left << std::setw(12) << r.simplex << std::right << std::setw(5) << r.dim << std::setw(8) << r.euler
             << std::setw(8) << r.k0 << std::setw(8) << r.cc << "\n";
    }
    IndexCheck ic = verify_index_theorem(f);
    text << "euler(sections) " << ic.sections_euler << "  index pairing " << ic.pairing << "  "
         << (ic.holds() ? "equal" : "different") << "\n";

    std::vector<SheafComplex> samples{f};
    Rng rng(o.seed);
    for (std::size_t i = 0; i < o.samples; ++i) samples.push_back(random_sheaf(k, rng));
    AntipodalReport a = antipodal_report(k, samples);
    Json fixed = Json::array();
    for (SimplexId s : a.fixed_up_to_sign) fixed.push_back(k->label(s));
    Json ajson = {{"involution", a.involution},
                  {"consistent", a.consistent},
                  {"global_sign", a.global_sign ? Json(*a.global_sign) : Json(nullptr)},
                  {"fixed_up_to_sign", fixed},
                  {"relation", a.relation}};
    text << "duality on cycles: involution " << (a.involution ? "yes" : "no") << ", consistent with the dual "
         << (a.consistent ? "yes" : "no") << ", global sign "
         << (a.global_sign ? std::to_string(*a.global_sign) : std::string("none")) << "\n";
    c.emit({{"rows", rows},
            {"sections_euler", ic.sections_euler},
            {"pairing", ic.pairing},
            {"index_theorem", ic.holds()},
            {"antipodal", ajson}},
           text.str());
    return a.involution ? 0 : 1;
}

int cmd_check_suite(Command& c) {
    std::uint64_t seed = c.o_.seed;
    auto first = run_property_criteria(seed);
    std::string report = render_results(first, false);
    // determinism in-process: an independent second run must render identically
    CriterionResult det;
    det.id = 9;
    det.title = "report is identical across two runs";
    det.limit = 1e9;
    det.property = render_results(run_property_criteria(seed), false) == report;
    det.detail = det.property ? " identical" : " differs";
    report += render_results({det}, false);
    bool ok = det.pass();
    for (const auto& r : first) ok = ok && r.pass();
    c.out_ << report;
    if (!c.o_.out.empty()) write_file(c.o_.out, report);
    return ok ? 0 : 1;
}

}  // namespace

const std::vector<CommandInfo>& command_registry() {
    static const std::vector<CommandInfo> reg{
        {"complex", "inspect a simplicial complex",
         {"load", "save", "face_poset", "star", "closure", "link", "barycentric_subdivision", "staircase_product",
          "diagonal_subcomplex", "incidence", "validate_map"}},
        {"chain", "operations on a cochain complex",
         {"cohomology", "euler_char", "shift", "tensor", "hom_complex", "total_complex"}},
        {"sheaf", "build and transform a sheaf",
         {"constant_sheaf", "standard_simplex", "costandard_simplex", "standard_star", "costandard_star",
          "dualizing_complex", "shift", "tensor_sheaf", "sheaf_hom", "extend_by_zero_open", "pushforward_open",
          "pushforward_closed", "upper_shriek_closed", "cone", "restrict", "subdivide_sheaf", "save"}},
        {"map", "functors along a simplicial map",
         {"validate_map", "pullback", "pushforward", "pushforward_proper", "upper_shriek"}},
        {"cohomology", "sections, compact sections, stalks and costalks",
         {"sections", "sections_c", "cohomology", "euler_char"}},
        {"dual", "Verdier dual", {"verdier_dual"}},
        {"rhom", "global and local derived hom", {"rhom_global", "sheaf_hom", "hom_complex"}},
        {"decompose", "standard and costandard decompositions",
         {"decompose_standard", "decompose_costandard", "is_quasi_iso", "k0_class"}},
        {"represent", "Yoneda modules and their representing sheaves",
         {"yoneda_module", "check_fr", "check_slc", "represent", "refine_and_compare", "is_constructible",
          "subdivide_sheaf", "barycentric_subdivision"}},
        {"transform", "integral transforms",
         {"transform_upper_star", "transform_star", "transform_shriek", "transform_upper_shriek", "graph_kernel",
          "diagonal_kernel", "diagonal_decomposition", "external_product", "verify_duality_identities",
          "staircase_product"}},
        {"cc-report", "constructible functions, characteristic cycles and the index pairing",
         {"euler_function", "k0_class", "mobius_invert", "characteristic_cycle", "index_pairing",
          "verify_index_theorem", "antipodal_fixed_involution"}},
        {"check-suite", "run the acceptance battery", {}},
    };
    return reg;
}

const std::vector<std::string>& library_operations() {
    static const std::vector<std::string> ops{
        // complexes
        "cone", "shift", "cohomology", "tensor", "hom_complex", "is_quasi_iso", "euler_char", "total_complex",
        // simplicial
        "face_poset", "star", "closure", "link", "barycentric_subdivision", "staircase_product", "diagonal_subcomplex",
        "incidence", "validate_map",
        // sheaves
        "standard_simplex", "costandard_simplex", "standard_star", "costandard_star", "constant_sheaf",
        "extend_by_zero_open", "pushforward_closed", "restrict", "pushforward_open", "upper_shriek_closed",
        "rhom_global", "sheaf_hom", "tensor_sheaf", "sections", "sections_c", "verdier_dual", "dualizing_complex",
        "decompose_standard", "decompose_costandard", "subdivide_sheaf", "is_constructible",
        // modules
        "yoneda_module", "check_fr", "check_slc", "represent", "refine_and_compare",
        // kernels
        "external_product", "pullback", "pushforward", "pushforward_proper", "upper_shriek", "transform_upper_star",
        "transform_star", "transform_shriek", "transform_upper_shriek", "graph_kernel", "diagonal_kernel",
        "diagonal_decomposition", "verify_duality_identities",
        // index
        "euler_function", "k0_class", "mobius_invert", "characteristic_cycle", "index_pairing", "verify_index_theorem",
        "antipodal_fixed_involution",
        // interchange
        "load", "save"};
    return ops;
}

ComplexPtr resolve_base(const std::string& desc) {
    for (const auto& name : fixture_names())
        if (name == desc) return fixture(name);
    if (!std::filesystem::exists(desc)) throw InputError("unknown base \"" + desc + "\" (not a fixture name or file)");
    return parse_complex(read_file(desc));
}

SheafComplex resolve_sheaf(const std::string& desc, const ComplexPtr& base) {
    auto colon = desc.find(':');
    std::string head = desc.substr(0, colon), arg = colon == std::string::npos ? "" : desc.substr(colon + 1);
    static const std::set<std::string> words{"constant", "omega", "std", "costd", "stdstar", "costdstar", "sky", "zero", "random"};
    const bool keyword = words.count(head) &&
                         (colon != std::string::npos || head == "constant" || head == "omega" || head == "zero" ||
                          !std::filesystem::exists(desc));
    if (keyword) {
        if (!base) throw InputError("--base is required for sheaf \"" + desc + "\"");
        auto need_arg = [&] {
            if (arg.empty()) throw InputError("sheaf \"" + head + "\" needs an argument, as in " + head + ":<simplex>");
        };
        auto simplex = [&] {
            need_arg();
            return simplex_arg(*base, arg);
        };
        if (head == "constant") {
            int deg = 0;
            if (!arg.empty()) {
                try {
                    deg = std::stoi(arg);
                } catch (const std::exception&) {
                    throw InputError("bad degree in \"" + desc + "\"");
                }
            }
            return constant_sheaf(base, deg);
        }
        if (head == "omega") return dualizing_complex(base);
        if (head == "zero") return zero_sheaf(base);
        if (head == "std") return standard_simplex(base, simplex());
        if (head == "costd") return costandard_simplex(base, simplex());
        if (head == "stdstar") return standard_star(base, simplex());
        if (head == "costdstar") return costandard_star(base, simplex());
        if (head == "sky") return skyscraper(base, simplex());
        need_arg();
        std::uint64_t seed;
        try {
            seed = std::stoull(arg);
        } catch (const std::exception&) {
            throw InputError("bad seed in \"" + desc + "\"");
        }
        Rng rng(seed);
        return random_sheaf(base, rng);
    }
    if (!std::filesystem::exists(desc)) throw InputError("unknown sheaf \"" + desc + "\"");
    SheafComplex f = parse_sheaf(read_file(desc));
    if (base && *base != f.complex()) throw InputError("sheaf file " + desc + " lives on a different complex");
    return base ? SheafComplex(base, f.stalks(), f.cover_maps()) : f;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Constructible sheaves on simplicial complexes"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* s) {
        s->add_option("--base", o.base, "fixture name (I, C3, D2, dD2, dD3, pt) or complex JSON file");
        s->add_option("--out", o.out, "write the result to a file");
        s->add_flag("--text", o.text, "human-readable tables instead of JSON");
        s->add_option("--seed", o.seed, "seed for random samples");
    };
    auto with_sheaf = [&](CLI::App* s) {
        common(s);
        s->add_option("--sheaf", o.sheaf, "constant[:deg], omega, std:s, costd:s, stdstar:s, costdstar:s, sky:s, zero, random:seed or a file");
    };

    std::map<std::string, CLI::App*> sub;
    for (const auto& info : command_registry()) sub[info.name] = app.add_subcommand(info.name, info.summary);

    common(sub["complex"]);
    sub["complex"]->add_option("--star", o.star, "list the star of a simplex");
    sub["complex"]->add_option("--closure", o.closure, "list the closure of a simplex");
    sub["complex"]->add_option("--link", o.link, "link of a simplex");
    sub["complex"]->add_flag("--subdivide", o.subdivide, "barycentric subdivision");
    sub["complex"]->add_option("--product", o.product, "staircase product with another base");
    sub["complex"]->add_flag("--diagonal", o.diagonal, "diagonal inside the staircase square");
    sub["complex"]->add_option("--target", o.target, "target base for --vertex-map");
    sub["complex"]->add_option("--vertex-map", o.vertex_map, "check a vertex map v=w,...");

    common(sub["chain"]);
    sub["chain"]->add_option("--complex", o.complex_file, "cochain complex JSON file");
    sub["chain"]->add_option("--with", o.with, "second complex");
    sub["chain"]->add_option("--op", o.op, "cohomology, shift, tensor, hom, dual or bicomplex");
    sub["chain"]->add_option("--shift", o.shift, "shift amount");

    with_sheaf(sub["sheaf"]);
    sub["sheaf"]->add_option("--op", o.op,
                             "identity, shift, tensor, sheaf-hom, extend-open, pushforward-open, pushforward-closed, "
                             "upper-shriek-closed, restrict or subdivide");
    sub["sheaf"]->add_option("--with", o.with, "second sheaf");
    sub["sheaf"]->add_option("--set", o.set, "simplices separated by ';'");
    sub["sheaf"]->add_option("--shift", o.shift, "shift amount");

    with_sheaf(sub["map"]);
    sub["map"]->add_option("--target", o.target, "target base");
    sub["map"]->add_option("--vertex-map", o.vertex_map, "v=w,...");
    sub["map"]->add_option("--op", o.op, "pullback, pushforward, pushforward-proper, upper-shriek or pushforward-nerve");

    with_sheaf(sub["cohomology"]);
    sub["cohomology"]->add_option("--what", o.what, "sections, compact, stalks or costalks");

    with_sheaf(sub["dual"]);
    sub["dual"]->add_flag("--reduced", o.reduced, "minimal standard presentation");

    with_sheaf(sub["rhom"]);
    sub["rhom"]->add_option("--with,--to", o.with, "second argument");
    sub["rhom"]->add_flag("--local", o.local, "internal hom sheaf instead of global");
    sub["rhom"]->add_flag("--reduced", o.reduced, "compute through the minimal standard presentation");

    with_sheaf(sub["decompose"]);
    sub["decompose"]->add_option("--basis", o.basis, "standard or costandard");
    sub["decompose"]->add_option("--emit", o.emit, "report or sheaf (the totalization)");

    with_sheaf(sub["represent"]);
    sub["represent"]->add_option("--module", o.module, "module JSON file instead of a sheaf");
    sub["represent"]->add_option("--partition", o.partition, "singleton, one, or groups 'a;b|e'");
    sub["represent"]->add_flag("--refine", o.refine, "also compare under one barycentric subdivision");
    sub["represent"]->add_option("--emit", o.emit, "report, module or sheaf");

    with_sheaf(sub["transform"]);
    sub["transform"]->add_option("--kernel", o.kernel, "diagonal, graph, external or a kernel JSON file");
    sub["transform"]->add_option("--kind", o.kind, "upper-star, star, shriek or upper-shriek");
    sub["transform"]->add_option("--target", o.target, "target base of the graph");
    sub["transform"]->add_option("--vertex-map", o.vertex_map, "vertex map of the graph");
    sub["transform"]->add_option("--right", o.right, "right factor of an external product");
    sub["transform"]->add_option("--left-sheaf", o.left_sheaf, "left factor sheaf");
    sub["transform"]->add_option("--right-sheaf", o.right_sheaf, "right factor sheaf");
    sub["transform"]->add_option("--save-kernel", o.save_kernel, "write the kernel JSON");
    sub["transform"]->add_flag("--decomposition", o.decomposition, "standard decomposition of the kernel");
    sub["transform"]->add_option("--verify-duality", o.samples, "check the duality identities on N random samples");

    with_sheaf(sub["cc-report"]);
    sub["cc-report"]->add_option("--samples", o.samples, "extra random samples for the duality relation");

    sub["check-suite"]->add_option("--seed", o.seed, "seed for the random suites");
    sub["check-suite"]->add_option("--out", o.out, "also write the report to a file");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    Command c(o, out);
    using Handler = int (*)(Command&);
    static const std::map<std::string, Handler> handlers{
        {"complex", cmd_complex},       {"chain", cmd_chain},       {"sheaf", cmd_sheaf},
        {"map", cmd_map},               {"cohomology", cmd_cohomology}, {"dual", cmd_dual},
        {"rhom", cmd_rhom},             {"decompose", cmd_decompose}, {"represent", cmd_represent},
        {"transform", cmd_transform},   {"cc-report", cmd_cc_report}, {"check-suite", cmd_check_suite}};
    try {
        for (const auto& [name, s] : sub)
            if (s->parsed()) return handlers.at(name)(c);
        return 2;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace cellsheaf
