#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "qsys/serialize.hpp"

using namespace qsys;
namespace fs = std::filesystem;

namespace {

struct Run {
    int         code;
    std::string out;
};

Run run(const std::string &args) {
    std::string cmd = std::string(QSYS_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE       *p   = popen(cmd.c_str(), "r");
    std::string out;
    char        buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("qsys_cli_" + std::to_string(::getpid()) + "_" +
                                           ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string path(const std::string &name) const { return (dir / name).string(); }
    std::string write(const std::string &name, const std::string &text) const {
        std::ofstream(path(name)) << text;
        return path(name);
    }
    std::string write(const std::string &name, const Json &j) const { return write(name, j.dump(1)); }
    static std::string slurp(const std::string &p) {
        std::ifstream      in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    fs::path dir;
};

QSystem m2() { return qsystem_from_dual(standard_dual(OneCell(1, 1, {{0, 0}, {0, 0}}))); }

} // namespace

TEST(Serialize, OneCellUsesOneBasedGrades) {
    OneCell X(2, 3, {{2, 1}, {0, 0}, {2, 1}});
    Json    j = to_json(X);
    EXPECT_EQ(j.dump(), R"({"src":2,"tgt":3,"grading":[[3,2],[1,1],[3,2]]})");
    EXPECT_EQ(one_cell_from_json(j), X);
}

TEST(Serialize, TwoCellRoundTripIsExact) {
    Rng  rng(1);
    auto X = random_one_cell(rng, 2, 2, 2, true);
    auto f = random_two_cell(rng, X, X);
    auto g = two_cell_from_json(Json::parse(to_json(f).dump()));
    EXPECT_EQ(residual(f, g), 0.0);
    EXPECT_EQ(to_json(f)["mat"][0][0].size(), 2u);
}

TEST(Serialize, MassOutsideSectorsIsAShapeError) {
    OneCell X(2, 1, {{0, 0}, {0, 1}});
    Json    j = to_json(id2(X));
    j["mat"][0][1] = Json::array({1.0, 0.0});
    EXPECT_THROW(two_cell_from_json(j), CellMismatch);
}

TEST(Serialize, MalformedCellsAreParseErrors) {
    EXPECT_THROW(one_cell_from_json(Json::parse(R"({"src":1,"tgt":1,"grading":[[2,1]]})")), ParseError);
    EXPECT_THROW(one_cell_from_json(Json::parse(R"({"src":1,"grading":[]})")), ParseError);
    EXPECT_THROW(two_cell_from_json(Json::parse(R"({"source":{"src":1,"tgt":1,"grading":[[1,1]]},"target":{"src":1,"tgt":1,"grading":[[1,1]]},"mat":[[1]]})")),
                 ParseError);
    EXPECT_THROW(parse_text("{"), ParseError);
    EXPECT_THROW(parse_text(R"({"schema":2})"), ParseError);
}

TEST(Serialize, ScenarioRoundTrip) {
    Rng  rng(3);
    auto s = random_scenario(rng, 3, 3);
    s.C.relations.push_back({Expr{Expr::Kind::Id, 0, Path{{}, 0}, {}}, Expr{Expr::Kind::Id, 0, Path{{}, 0}, {}}});
    auto j = scenario_file(s);
    auto t = scenario_from_file(parse_text(j.dump()));
    EXPECT_EQ(t.C.zero_cells, s.C.zero_cells);
    ASSERT_EQ(t.C.num1(), s.C.num1());
    ASSERT_EQ(t.C.num2(), s.C.num2());
    EXPECT_EQ(t.C.relations.size(), 1u);
    for (int x = 0; x < s.C.num1(); ++x) EXPECT_EQ(t.F.on1[static_cast<std::size_t>(x)], s.F.on1[static_cast<std::size_t>(x)]);
    for (int a = 0; a < s.C.num0(); ++a) EXPECT_EQ(residual(t.q.m.comp[static_cast<std::size_t>(a)], s.q.m.comp[static_cast<std::size_t>(a)]), 0.0);
    EXPECT_EQ(scenario_file(t).dump(), j.dump());
}

TEST(Serialize, UnknownLabelsAndIllTypedPaths) {
    Rng  rng(4);
    auto s = random_scenario(rng, 2, 2);
    auto j = scenario_file(s);
    auto k = j;
    k["one_cells"][0]["src"] = "nowhere";
    EXPECT_THROW(scenario_from_file(k), ParseError);
    PresentedTwoCat C;
    C.zero_cells    = {"a", "b"};
    C.gen_one_cells = {{"X", 0, 1}};
    Json f = scenario_file(constant_functor_scenario(C, m2()));
    f["two_cells"] = Json::array({Json{{"label", "f"}, {"source", Json::array({"X", "X"})}, {"target", Json::array({"X"})}}});
    EXPECT_THROW(scenario_from_file(f), IllTypedPath);
}

TEST_F(Cli, CheckTrivialAndM2) {
    EXPECT_EQ(run("check-qsystem " + write("t.json", qsystem_file(trivial_qsystem(3)))).code, 0);
    EXPECT_EQ(run("check-qsystem " + write("m.json", qsystem_file(m2()))).code, 0);
}

TEST_F(Cli, GeneratedQSystemPasses) {
    for (int n = 1; n <= 3; ++n) {
        auto f = path("g" + std::to_string(n) + ".json");
        ASSERT_EQ(run("gen --kind qsystem --size " + std::to_string(n) + " --seed 5 --out " + f).code, 0);
        EXPECT_EQ(run("check-qsystem " + f).code, 0);
    }
}

TEST_F(Cli, PerturbedQSystemNamesTheFailingAxiom) {
    auto j = qsystem_file(m2());
    j["m"]["mat"][0][0][0] = j["m"]["mat"][0][0][0].get<double>() + 1e-3;
    auto r = run("check-qsystem " + write("p.json", j));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("Q4 separability"), std::string::npos);
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run("check-qsystem " + write("bad.json", std::string("{\"schema\": 1"))).code, 2);
    EXPECT_EQ(run("check-qsystem " + path("missing.json")).code, 2);
    EXPECT_EQ(run("check-qsystem " + write("v2.json", std::string("{\"schema\": 2}"))).code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("check-qsystem " + write("m.json", qsystem_file(m2())) + " --tol -1").code, 2);
    auto j = qsystem_file(m2());
    j["i"]["target"] = to_json(OneCell(1, 1, {{0, 0}}));
    j["i"]["mat"]    = Json::array({Json::array({Json::array({1.0, 0.0})})});
    EXPECT_EQ(run("check-qsystem " + write("shape.json", j)).code, 3);
}

TEST_F(Cli, SplitWritesResult) {
    auto out = path("split.json");
    auto r   = run("split-qsystem " + write("m.json", qsystem_file(m2())) + " --out " + out);
    EXPECT_EQ(r.code, 0);
    auto j = read_file(out);
    EXPECT_EQ(j["kind"], "split");
    EXPECT_EQ(j["k"], 1);
    EXPECT_EQ(j["block_dims"], Json::array({2}));
    EXPECT_NE(r.out.find("note k = 1"), std::string::npos);
}

TEST_F(Cli, VerifyScenarioAndConstant) {
    auto sc = path("sc.json");
    ASSERT_EQ(run("gen --kind scenario --size 3 --seed 11 --out " + sc).code, 0);
    auto r = run("verify-fun " + sc + " --json");
    EXPECT_EQ(r.code, 0);
    auto j = parse_text(r.out);
    EXPECT_TRUE(j["pass"].get<bool>());
    bool seen_m = false;
    for (const auto &c : j["checks"]) {
        EXPECT_TRUE(c.contains("anchor"));
        EXPECT_TRUE(c.contains("threshold"));
        seen_m = seen_m || c["name"].get<std::string>().rfind("(m)", 0) == 0;
    }
    EXPECT_TRUE(seen_m);

    auto q = write("m2.json", qsystem_file(m2()));
    auto c = path("const.json");
    ASSERT_EQ(run("gen --kind constant --size 1 --seed 2 --from " + q + " --out " + c).code, 0);
    EXPECT_EQ(run("verify-fun " + c).code, 0);
}

TEST_F(Cli, BrokenScenarioFails) {
    Rng  rng(12);
    auto s = random_scenario(rng, 2, 3);
    s.q.i.comp[0] *= cplx(1.01, 0.0);
    EXPECT_EQ(run("verify-fun " + write("b.json", scenario_file(s))).code, 1);
}

TEST_F(Cli, ToleranceFlagsReachTheReport) {
    auto f = write("m.json", qsystem_file(m2()));
    auto j = parse_text(run("check-qsystem " + f + " --json --tol 1e-6").out);
    EXPECT_EQ(j["checks"][0]["threshold"].get<double>(), 1e-6);
    auto k = qsystem_file(m2());
    k["tolerance"] = Json{{"atol", 1e-5}};
    auto j2 = parse_text(run("check-qsystem " + write("t.json", k) + " --json").out);
    EXPECT_EQ(j2["checks"][0]["threshold"].get<double>(), 1e-5);
}

TEST_F(Cli, Determinism) {
    auto a = path("a.json"), b = path("b.json");
    ASSERT_EQ(run("gen --kind scenario --size 2 --seed 42 --out " + a).code, 0);
    ASSERT_EQ(run("gen --kind scenario --size 2 --seed 42 --out " + b).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    auto r1 = run("verify-fun " + a + " --json --seed 3"), r2 = run("verify-fun " + a + " --json --seed 3");
    EXPECT_EQ(r1.out, r2.out);
    auto s1 = path("s1.json"), s2 = path("s2.json");
    auto q  = path("q.json");
    ASSERT_EQ(run("gen --kind qsystem --size 2 --seed 9 --out " + q).code, 0);
    run("split-qsystem " + q + " --seed 1 --out " + s1);
    run("split-qsystem " + q + " --seed 1 --out " + s2);
    EXPECT_EQ(slurp(s1), slurp(s2));
}
