#include <gtest/gtest.h>

#include <functional>

#include "cellsheaf/fixtures.hpp"
#include "cellsheaf/random.hpp"
#include "cellsheaf/serialize.hpp"
#include "support.hpp"

using namespace cellsheaf;

namespace {

std::string fixture_text(const std::string& file) { return read_file(std::string(CELLSHEAF_FIXTURE_DIR) + "/" + file); }

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

// Stalk on e is Q -> Q -> Q with both maps the identity.
const char* kBadStalk = R"({
  "base": "I",
  "maps": [],
  "stalks": [
    {
      "complex": {
        "d": [
          {"degree": 0, "matrix": {"cols": 1, "entries": [[0, 0, "1"]], "rows": 1}},
          {"degree": 1, "matrix": {"cols": 1, "entries": [[0, 0, "1"]], "rows": 1}}
        ],
        "dims": [1, 1, 1],
        "lo": 0
      },
      "simplex": "e"
    }
  ],
  "type": "sheaf"
}
)";

}  // namespace

TEST(Serialize, FixtureFilesRoundTripByteForByte) {
    for (const auto& name : fixture_names()) {
        std::string text = fixture_text(name + ".json");
        EXPECT_EQ(document_type(text), "complex");
        ComplexPtr k = parse_complex(text);
        EXPECT_EQ(*k, *fixture(name)) << name;
        EXPECT_EQ(dump(to_json(*k)), text) << name;
    }
    std::string sheaf = fixture_text("sheaf_random_C3.json");
    EXPECT_EQ(dump(to_json(parse_sheaf(sheaf))), sheaf);
    std::string module = fixture_text("module_costd_e_I.json");
    EXPECT_EQ(dump(to_json(parse_module(module))), module);
    std::string kernel = fixture_text("kernel_diagonal_I.json");
    EXPECT_EQ(dump(to_json(parse_kernel(kernel))), kernel);
}

TEST(Serialize, RandomObjectsRoundTrip) {
    for (const auto& name : fixture_names()) {
        ComplexPtr k = fixture(name);
        for (const auto& f : random_suite(k, 91, 5)) {
            std::string text = dump(to_json(f));
            SheafComplex g = parse_sheaf(text);
            EXPECT_EQ(g.stalks(), f.stalks());
            EXPECT_EQ(g.cover_maps(), f.cover_maps());
            EXPECT_EQ(dump(to_json(g)), text);
            PosetModule m = yoneda_module(f);
            std::string mt = dump(to_json(m));
            EXPECT_EQ(dump(to_json(parse_module(mt))), mt);
        }
    }
    ComplexPtr i = fixture("I");
    Product p = staircase_product(i, i);
    Rng rng(92);
    Kernel k = make_kernel(p, random_sheaf(p.complex, rng));
    std::string text = dump(to_json(k));
    EXPECT_EQ(dump(to_json(parse_kernel(text))), text);
}

TEST(Serialize, ChainComplexRoundTrip) {
    Rng rng(93);
    for (int t = 0; t < 20; ++t) {
        auto p = oracle::planted_complex(rng, -2, 1);
        EXPECT_EQ(parse_chain_complex(dump(to_json(p.complex))), p.complex);
    }
}

TEST(Serialize, NonComplexStalkNamesSimplexAndLine) {
    std::string msg = error_of([] { parse_sheaf(kBadStalk); });
    ASSERT_FALSE(msg.empty());
    EXPECT_NE(msg.find("line 6"), std::string::npos) << msg;
    EXPECT_NE(msg.find("at simplex e"), std::string::npos) << msg;
}

TEST(Serialize, SyntaxErrorsReportLines) {
    std::string msg = error_of([] { parse_complex("{\n  \"type\": \"complex\",\n  \"vertices\": [\n}\n"); });
    EXPECT_NE(msg.find("line 4"), std::string::npos) << msg;
    msg = error_of([] { parse_complex("{\n  \"type\": \"complex\",\n  \"vertices\": [\"a\"],\n  \"maximal\": [[\"z\"]]\n}\n"); });
    EXPECT_NE(msg.find("line 4"), std::string::npos) << msg;
    EXPECT_FALSE(error_of([] { parse_sheaf(R"({"type": "sheaf", "base": "nowhere", "stalks": [], "maps": []})"); }).empty());
    EXPECT_FALSE(error_of([] { read_file("/nonexistent/file.json"); }).empty());
}

TEST(Serialize, NonFunctorialMapsAreRejected) {
    SheafComplex c = constant_sheaf(fixture("D2"));
    Json j = to_json(c);
    auto& entries = j["maps"].back()["blocks"][0]["matrix"]["entries"];
    entries[0][2] = "-1";
    EXPECT_FALSE(error_of([&] { parse_sheaf(dump(j)); }).empty());
}
