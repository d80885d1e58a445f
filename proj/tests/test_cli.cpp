#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "cellsheaf/cli.hpp"
#include "cellsheaf/serialize.hpp"

using namespace cellsheaf;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

// Runs the installed binary through the shell and captures stdout.
Outcome spawn(const std::string& args) {
    std::string cmd = std::string("'") + CELLSHEAF_CLI_PATH + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    Outcome r;
    if (!pipe) {
        r.code = -1;
        return r;
    }
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + name; }

}  // namespace

TEST(Cli, CircleCohomology) {
    Outcome r = spawn("cohomology --sheaf constant --base C3");
    ASSERT_EQ(r.code, 0);
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["cohomology"]["0"], 1);
    EXPECT_EQ(j["cohomology"]["1"], 1);
    EXPECT_EQ(spawn("cohomology --sheaf constant --base C3 --text").out, "H^0=1 H^1=1\neuler 0\n");
}

TEST(Cli, DualOfCostandardPairsWithStandard) {
    std::string file = temp_path("dual_costd_e.json");
    ASSERT_EQ(spawn("dual --sheaf costd:e --base I --out '" + file + "'").code, 0);
    Outcome r = spawn("rhom --sheaf std:e --to '" + file + "' --base I --text");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "H^0=1");
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(spawn("cohomology --base nope").code, 2);
    EXPECT_EQ(spawn("cohomology --sheaf std:zz --base I").code, 2);
    EXPECT_EQ(spawn("no-such-command").code, 2);
    EXPECT_EQ(spawn("--help").code, 0);
    EXPECT_EQ(spawn("complex --base I --target I --vertex-map a=b,b=a").code, 0);
    // the swap of the interval has no graph in the staircase product
    EXPECT_EQ(spawn("transform --base I --kernel graph --target I --vertex-map a=b,b=a --sheaf constant").code, 2);
    EXPECT_EQ(spawn("sheaf --base D2 --sheaf constant --op extend-open --set 0").code, 2);
    std::string bad = temp_path("bad_stalk.json");
    write_file(bad, R"({"type": "sheaf", "base": "I", "maps": [], "stalks": [{"simplex": "e", "complex": )"
                    R"({"lo": 0, "dims": [1, 1, 1], "d": [{"degree": 0, "matrix": {"rows": 1, "cols": 1, "entries": [[0, 0, "1"]]}}, )"
                    R"({"degree": 1, "matrix": {"rows": 1, "cols": 1, "entries": [[0, 0, "1"]]}}]}}]})");
    Outcome r = run({"cohomology", "--sheaf", bad});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("at simplex e"), std::string::npos) << r.err;
}

TEST(Cli, RegistryCoversEveryOperation) {
    std::set<std::string> covered, known(library_operations().begin(), library_operations().end());
    std::set<std::string> names;
    for (const auto& c : command_registry()) {
        names.insert(c.name);
        for (const auto& op : c.operations) {
            covered.insert(op);
            EXPECT_TRUE(known.count(op)) << c.name << " lists unknown operation " << op;
        }
    }
    for (const auto& op : library_operations()) EXPECT_TRUE(covered.count(op)) << op << " is not reachable";
    for (const char* required : {"cohomology", "dual", "rhom", "decompose", "represent", "transform", "cc-report", "check-suite"})
        EXPECT_TRUE(names.count(required)) << required;
}

TEST(Cli, EveryCommandRuns) {
    std::string kernel = temp_path("kernel.json");
    const std::vector<std::vector<std::string>> cases{
        {"complex", "--base", "D2", "--text"},
        {"complex", "--base", "I", "--product", "I"},
        {"complex", "--base", "D2", "--subdivide"},
        {"complex", "--base", "dD3", "--link", "0"},
        {"complex", "--base", "C3", "--star", "0"},
        {"complex", "--base", "I", "--diagonal"},
        {"sheaf", "--base", "C3", "--sheaf", "random:3", "--op", "identity"},
        {"sheaf", "--base", "D2", "--sheaf", "constant", "--op", "extend-open", "--set", "0;0,1;0,2;0,1,2"},
        {"sheaf", "--base", "D2", "--sheaf", "constant", "--op", "pushforward-open", "--set", "0;0,1;0,2;0,1,2"},
        {"sheaf", "--base", "D2", "--sheaf", "constant", "--op", "upper-shriek-closed", "--set", "0"},
        {"sheaf", "--base", "I", "--sheaf", "std:e", "--op", "tensor", "--with", "costd:a"},
        {"sheaf", "--base", "I", "--sheaf", "std:e", "--op", "subdivide"},
        {"map", "--base", "C3", "--target", "I", "--vertex-map", "0=a,1=b,2=b", "--sheaf", "constant", "--op", "pushforward"},
        {"map", "--base", "C3", "--target", "I", "--vertex-map", "0=a,1=b,2=b", "--sheaf", "constant", "--op", "pullback"},
        {"map", "--base", "C3", "--target", "I", "--vertex-map", "0=a,1=b,2=b", "--sheaf", "constant", "--op", "upper-shriek"},
        {"cohomology", "--base", "dD3", "--sheaf", "omega", "--what", "stalks", "--text"},
        {"cohomology", "--base", "I", "--sheaf", "constant", "--what", "costalks"},
        {"cohomology", "--base", "I", "--sheaf", "constant", "--what", "compact"},
        {"dual", "--base", "D2", "--sheaf", "random:7", "--reduced"},
        {"rhom", "--base", "I", "--sheaf", "std:a", "--with", "std:e", "--local"},
        {"decompose", "--base", "C3", "--sheaf", "random:1", "--basis", "standard"},
        {"decompose", "--base", "C3", "--sheaf", "random:1", "--basis", "costandard", "--emit", "sheaf"},
        {"represent", "--base", "I", "--sheaf", "costd:e", "--partition", "one", "--refine"},
        {"represent", "--base", "I", "--sheaf", "costd:e", "--emit", "module"},
        {"transform", "--base", "I", "--kernel", "diagonal", "--kind", "star", "--sheaf", "random:2", "--save-kernel", kernel},
        {"transform", "--base", "I", "--kernel", kernel, "--kind", "upper-shriek", "--sheaf", "constant", "--verify-duality", "2"},
        {"transform", "--base", "I", "--kernel", "diagonal", "--decomposition"},
        {"cc-report", "--base", "C3", "--sheaf", "random:4", "--samples", "3", "--text"},
    };
    for (const auto& args : cases) {
        Outcome r = run(args);
        std::string joined;
        for (const auto& a : args) joined += a + " ";
        EXPECT_EQ(r.code, 0) << joined << "\n" << r.err;
        EXPECT_FALSE(r.out.empty()) << joined;
    }
}

TEST(Cli, ReportsAreDeterministic) {
    const std::vector<std::string> args{"cc-report", "--base", "dD2", "--sheaf", "random:9", "--samples", "4"};
    EXPECT_EQ(run(args).out, run(args).out);
    EXPECT_EQ(spawn("decompose --base D2 --sheaf random:5").out, spawn("decompose --base D2 --sheaf random:5").out);
}

TEST(Cli, SavedSheavesLoadBack) {
    std::string file = temp_path("saved.json");
    ASSERT_EQ(run({"sheaf", "--base", "C3", "--sheaf", "random:11", "--op", "identity", "--out", file}).code, 0);
    std::string text = read_file(file);
    EXPECT_EQ(dump(to_json(parse_sheaf(text))), text);
    EXPECT_EQ(run({"cohomology", "--sheaf", file}).code, 0);
    EXPECT_EQ(run({"cohomology", "--sheaf", file, "--base", "I"}).code, 2);
}
