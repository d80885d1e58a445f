#include "cellsheaf/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "cellsheaf/fixtures.hpp"

namespace cellsheaf {

namespace {

// Line of every value in a syntactically valid document, keyed by JSON pointer.
class LineMap {
public:
    explicit LineMap(const std::string& text) : text_(text) {
        skip_ws();
        value("");
    }
    int line(const std::string& ptr) const {
        auto it = lines_.find(ptr);
        return it == lines_.end() ? 1 : it->second;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
    }
    void advance() {
        if (text_[pos_] == '\n') ++line_;
        ++pos_;
    }
    std::string string() {
        std::string out;
        advance();  // opening quote
        while (pos_ < text_.size() && text_[pos_] != '"') {
            if (text_[pos_] == '\\') {
                out += text_[pos_];
                advance();
            }
            out += text_[pos_];
            advance();
        }
        advance();
        return Json::parse("\"" + out + "\"").get<std::string>();
    }
    static std::string escape(const std::string& key) {
        std::string out;
        for (char c : key) {
            if (c == '~') out += "~0";
            else if (c == '/') out += "~1";
            else out += c;
        }
        return out;
    }
    void value(const std::string& ptr) {
        lines_[ptr] = line_;
        if (pos_ >= text_.size()) return;
        char c = text_[pos_];
        if (c == '{') {
            advance();
            skip_ws();
            while (pos_ < text_.size() && text_[pos_] != '}') {
                std::string key = string();
                skip_ws();
                advance();  // ':'
                skip_ws();
                value(ptr + "/" + escape(key));
                skip_ws();
                if (text_[pos_] == ',') {
                    advance();
                    skip_ws();
                }
            }
            advance();
        } else if (c == '[') {
            advance();
            skip_ws();
            std::size_t i = 0;
            while (pos_ < text_.size() && text_[pos_] != ']') {
                value(ptr + "/" + std::to_string(i++));
                skip_ws();
                if (text_[pos_] == ',') {
                    advance();
                    skip_ws();
                }
            }
            advance();
        } else if (c == '"') {
            string();
        } else {
            while (pos_ < text_.size() && !std::strchr(",]} \t\r\n", text_[pos_])) advance();
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    std::map<std::string, int> lines_;
};

struct Document {
    Json root;
    LineMap lines;
    explicit Document(const std::string& text) : root(parse(text)), lines(text) {}

    static Json parse(const std::string& text) {
        try {
            return Json::parse(text);
        } catch (const Json::parse_error& e) {
            std::size_t line = 1;
            for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
                if (text[i] == '\n') ++line;
            throw InputError("line " + std::to_string(line) + ": malformed JSON: " + e.what());
        }
    }
};

// Cursor into a document that reports errors with the line of its value.
class Node {
public:
    Node(const Document& doc, const Json& j, std::string ptr) : doc_(doc), j_(j), ptr_(std::move(ptr)) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("line " + std::to_string(doc_.lines.line(ptr_)) + ": " + (ptr_.empty() ? "/" : ptr_) + ": " +
                         msg);
    }
    bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }
    Node at(const std::string& key) const {
        if (!j_.is_object()) fail("expected an object");
        auto it = j_.find(key);
        if (it == j_.end()) fail("missing key \"" + key + "\"");
        return Node(doc_, *it, ptr_ + "/" + key);
    }
    std::vector<Node> items() const {
        if (!j_.is_array()) fail("expected an array");
        std::vector<Node> out;
        for (std::size_t i = 0; i < j_.size(); ++i) out.emplace_back(doc_, j_[i], ptr_ + "/" + std::to_string(i));
        return out;
    }
    std::vector<std::pair<std::string, Node>> members() const {
        if (!j_.is_object()) fail("expected an object");
        std::vector<std::pair<std::string, Node>> out;
        for (auto it = j_.begin(); it != j_.end(); ++it) out.emplace_back(it.key(), Node(doc_, it.value(), ptr_ + "/" + it.key()));
        return out;
    }
    long integer() const {
        if (!j_.is_number_integer()) fail("expected an integer");
        return j_.get<long>();
    }
    std::size_t count() const {
        long v = integer();
        if (v < 0) fail("expected a nonnegative integer");
        return static_cast<std::size_t>(v);
    }
    std::string str() const {
        if (!j_.is_string()) fail("expected a string");
        return j_.get<std::string>();
    }
    Rational rational() const {
        if (j_.is_number_integer()) return Rational(j_.get<std::int64_t>());
        try {
            return Rational::parse(str());
        } catch (const std::exception& e) {
            fail(std::string("bad rational: ") + e.what());
        }
    }
    bool is_string() const { return j_.is_string(); }
    const Json& json() const { return j_; }

private:
    const Document& doc_;
    const Json& j_;
    std::string ptr_;
};

void expect_type(const Node& root, const std::string& type) {
    std::string t = root.at("type").str();
    if (t != type) root.at("type").fail("expected a " + type + " document, found \"" + t + "\"");
}

Matrix read_matrix(const Node& n, std::size_t rows, std::size_t cols) {
    std::size_t r = n.at("rows").count(), c = n.at("cols").count();
    if (r != rows || c != cols)
        n.fail("matrix is " + std::to_string(r) + "x" + std::to_string(c) + ", expected " + std::to_string(rows) + "x" +
               std::to_string(cols));
    std::vector<Triplet> t;
    for (const Node& e : n.at("entries").items()) {
        auto parts = e.items();
        if (parts.size() != 3) e.fail("entry must be [row, col, value]");
        std::size_t i = parts[0].count(), j = parts[1].count();
        if (i >= r || j >= c) e.fail("entry index out of range");
        t.push_back({i, j, parts[2].rational()});
    }
    return Matrix::from_triplets(r, c, std::move(t));
}

ChainComplex read_chain_complex(const Node& n) {
    int lo = static_cast<int>(n.at("lo").integer());
    std::map<int, std::size_t> dims;
    int deg = lo;
    for (const Node& d : n.at("dims").items()) dims[deg++] = d.count();
    auto dim = [&](int k) {
        auto it = dims.find(k);
        return it == dims.end() ? std::size_t{0} : it->second;
    };
    std::map<int, Matrix> diffs;
    if (n.has("d"))
        for (const Node& d : n.at("d").items()) {
            int k = static_cast<int>(d.at("degree").integer());
            diffs[k] = read_matrix(d.at("matrix"), dim(k + 1), dim(k));
        }
    try {
        return ChainComplex(dims, diffs);
    } catch (const std::invalid_argument& e) {
        n.fail(e.what());
    }
}

ComplexPtr read_complex(const Node& n) {
    if (n.is_string()) {
        try {
            return fixture(n.str());
        } catch (const std::exception& e) {
            n.fail(e.what());
        }
    }
    std::vector<std::string> vertices;
    std::set<std::string> known;
    for (const Node& v : n.at("vertices").items()) {
        if (!known.insert(v.str()).second) v.fail("duplicate vertex \"" + v.str() + "\"");
        vertices.push_back(v.str());
    }
    // Unknown vertex names are reported at the offending entry.
    auto vertex = [&](const Node& v) {
        if (!known.count(v.str())) v.fail("unknown vertex \"" + v.str() + "\"");
        return v.str();
    };
    std::vector<std::vector<std::string>> maximal;
    for (const Node& s : n.at("maximal").items()) {
        std::vector<std::string> names;
        for (const Node& v : s.items()) names.push_back(vertex(v));
        maximal.push_back(std::move(names));
    }
    std::map<std::string, std::vector<std::string>> names;
    if (n.has("names"))
        for (const auto& [label, s] : n.at("names").members()) {
            std::vector<std::string> vs;
            for (const Node& v : s.items()) vs.push_back(vertex(v));
            names[label] = std::move(vs);
        }
    try {
        return make_complex(SimplicialComplex::from_names(vertices, maximal, names));
    } catch (const std::exception& e) {
        n.fail(e.what());
    }
}

// A simplex is its name, or the array of its vertex names.
SimplexId read_simplex(const Node& n, const SimplicialComplex& k) {
    try {
        if (n.is_string()) return k.parse_simplex(n.str());
        VertexList v;
        for (const Node& x : n.items()) v.push_back(k.vertex_index(x.str()));
        std::sort(v.begin(), v.end());
        return k.id(v);
    } catch (const std::invalid_argument& e) {
        n.fail(e.what());
    }
}

Json simplex_json(const SimplicialComplex& k, SimplexId s) {
    for (const auto& [label, id] : k.simplex_names())
        if (id == s) return label;
    Json a = Json::array();
    for (std::size_t v : k.vertices(s)) a.push_back(k.vertex_names()[v]);
    return a;
}

struct Layered {
    std::vector<ChainComplex> values;
    std::map<std::pair<SimplexId, SimplexId>, GradedMatrix> covers;
};

// Shared reader for sheaves and modules. `forward` is true when a cover map
// goes from the face to the coface.
Layered read_layered(const Node& n, const SimplicialComplex& k, const std::string& values_key, const std::string& maps_key,
                     bool forward) {
    Layered out;
    out.values.assign(k.size(), ChainComplex());
    std::vector<bool> seen(k.size(), false);
    for (const Node& s : n.at(values_key).items()) {
        SimplexId id = read_simplex(s.at("simplex"), k);
        if (seen[id]) s.at("simplex").fail("duplicate entry for simplex " + k.label(id));
        seen[id] = true;
        try {
            out.values[id] = read_chain_complex(s.at("complex"));
        } catch (const InputError& e) {
            throw InputError(std::string(e.what()) + " (at simplex " + k.label(id) + ")");
        }
    }
    if (n.has(maps_key))
        for (const Node& m : n.at(maps_key).items()) {
            SimplexId a = read_simplex(m.at("face"), k), b = read_simplex(m.at("coface"), k);
            if (k.incidence(a, b) == 0) m.fail(k.label(a) + " is not a facet of " + k.label(b));
            const ChainComplex& src = forward ? out.values[a] : out.values[b];
            const ChainComplex& dst = forward ? out.values[b] : out.values[a];
            GradedMatrix g;
            for (const Node& blk : m.at("blocks").items()) {
                int deg = static_cast<int>(blk.at("degree").integer());
                g[deg] = read_matrix(blk.at("matrix"), dst.dim(deg), src.dim(deg));
            }
            if (!out.covers.emplace(std::make_pair(a, b), std::move(g)).second) m.fail("duplicate map");
        }
    return out;
}

Json matrix_blocks(const GradedMatrix& g) {
    Json blocks = Json::array();
    for (const auto& [deg, m] : g)
        if (m.nnz() > 0) blocks.push_back({{"degree", deg}, {"matrix", to_json(m)}});
    return blocks;
}

Json layered_json(const SimplicialComplex& k, const std::vector<ChainComplex>& values,
                  const std::map<std::pair<SimplexId, SimplexId>, GradedMatrix>& covers, const std::string& values_key,
                  const std::string& maps_key) {
    Json j;
    Json vs = Json::array();
    for (SimplexId s = 0; s < k.size(); ++s)
        if (!values[s].is_zero()) vs.push_back({{"simplex", simplex_json(k, s)}, {"complex", to_json(values[s])}});
    j[values_key] = vs;
    Json ms = Json::array();
    for (const auto& [key, g] : covers) {
        Json blocks = matrix_blocks(g);
        if (blocks.empty()) continue;
        ms.push_back({{"face", simplex_json(k, key.first)}, {"coface", simplex_json(k, key.second)}, {"blocks", blocks}});
    }
    j[maps_key] = ms;
    return j;
}

template <class F>
auto guarded(const Node& n, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const InputError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        n.fail(e.what());
    }
}

SheafComplex read_sheaf_body(const Node& root, const ComplexPtr& base) {
    Layered l = read_layered(root, *base, "stalks", "maps", true);
    Node where = root.has("maps") ? root.at("maps") : root;
    return guarded(where, [&] { return SheafComplex(base, std::move(l.values), l.covers); });
}

}  // namespace

Json to_json(const Matrix& m) {
    Json entries = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r)) entries.push_back({r, c, v.str()});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Json to_json(const ChainComplex& c) {
    Json dims = Json::array(), d = Json::array();
    if (!c.is_zero()) {
        for (int n = c.lo(); n <= c.hi(); ++n) dims.push_back(c.dim(n));
        for (int n = c.lo(); n < c.hi(); ++n)
            if (c.d(n).nnz() > 0) d.push_back({{"degree", n}, {"matrix", to_json(c.d(n))}});
    }
    return {{"lo", c.is_zero() ? 0 : c.lo()}, {"dims", dims}, {"d", d}};
}

Json to_json(const SimplicialComplex& k) {
    const auto& vn = k.vertex_names();
    auto names_of = [&](SimplexId s) {
        Json a = Json::array();
        for (std::size_t v : k.vertices(s)) a.push_back(vn[v]);
        return a;
    };
    Json maximal = Json::array();
    for (SimplexId s : k.maximal_simplices()) maximal.push_back(names_of(s));
    Json names = Json::object();
    for (const auto& [label, s] : k.simplex_names()) names[label] = names_of(s);
    return {{"type", "complex"}, {"vertices", vn}, {"maximal", maximal}, {"names", names}};
}

Json to_json(const SheafComplex& f) {
    Json j = layered_json(f.complex(), f.stalks(), f.cover_maps(), "stalks", "maps");
    j["type"] = "sheaf";
    j["base"] = to_json(f.complex());
    return j;
}

Json to_json(const PosetModule& m) {
    Json j = layered_json(m.complex(), m.values(), m.cover_actions(), "values", "actions");
    j["type"] = "module";
    j["base"] = to_json(m.complex());
    return j;
}

Json to_json(const Kernel& k) {
    Json j = layered_json(k.sheaf.complex(), k.sheaf.stalks(), k.sheaf.cover_maps(), "stalks", "maps");
    j["type"] = "kernel";
    j["left"] = to_json(*k.product.left);
    j["right"] = to_json(*k.product.right);
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

ComplexPtr parse_complex(const std::string& text) {
    Document doc(text);
    Node root(doc, doc.root, "");
    expect_type(root, "complex");
    return read_complex(root);
}

ChainComplex parse_chain_complex(const std::string& text) {
    Document doc(text);
    return read_chain_complex(Node(doc, doc.root, ""));
}

SheafComplex parse_sheaf(const std::string& text) {
    Document doc(text);
    Node root(doc, doc.root, "");
    expect_type(root, "sheaf");
    return read_sheaf_body(root, read_complex(root.at("base")));
}

PosetModule parse_module(const std::string& text) {
    Document doc(text);
    Node root(doc, doc.root, "");
    expect_type(root, "module");
    ComplexPtr base = read_complex(root.at("base"));
    Layered l = read_layered(root, *base, "values", "actions", false);
    Node where = root.has("actions") ? root.at("actions") : root;
    return guarded(where, [&] { return PosetModule(base, std::move(l.values), l.covers); });
}

Kernel parse_kernel(const std::string& text) {
    Document doc(text);
    Node root(doc, doc.root, "");
    expect_type(root, "kernel");
    Product p = staircase_product(read_complex(root.at("left")), read_complex(root.at("right")));
    return make_kernel(p, read_sheaf_body(root, p.complex));
}

std::string document_type(const std::string& text) {
    Document doc(text);
    return Node(doc, doc.root, "").at("type").str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

}  // namespace cellsheaf
