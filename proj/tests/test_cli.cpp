#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("cmf_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::string& args, const std::string& env = "") const {
    std::string cmd = env + " " + CMF_CLI + " " + args + " 2>" + path("stderr.txt");
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string text(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  json load(const std::string& name) const { return json::parse(text(name)); }

  void write(const std::string& name, const std::string& body) const { std::ofstream(path(name)) << body; }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, MakePointThenVerify) {
  ASSERT_EQ(run("make-point --model torus --points '1;2;-1/2' -o " + path("p.json")), 0);
  EXPECT_EQ(load("p.json")["n"], 3);
  ASSERT_EQ(run("verify -i " + path("p.json") + " -o " + path("r.json")), 0);
  json r = load("r.json");
  EXPECT_TRUE(r["pass"].get<bool>());
  EXPECT_FALSE(r["relations"].empty());
  EXPECT_FALSE(fs::exists(path("r.json.tmp")));
}

TEST_F(Cli, ForgeThenCodimOnLine) {
  ASSERT_EQ(run("make-point --model line --points '0' -o " + path("p.json")), 0);
  ASSERT_EQ(run("forge -i " + path("p.json") + " -o " + path("i.json")), 0);
  EXPECT_EQ(load("i.json")["generators"].size(), 2u);
  ASSERT_EQ(run("codim -i " + path("i.json") + " -o " + path("c.json")), 0);
  json c = load("c.json");
  EXPECT_EQ(c["stabilized"], 1);
  EXPECT_EQ(c["kmax"], 5);
  ASSERT_EQ(run("codim -i " + path("p.json") + " -o " + path("c2.json")), 0);
  EXPECT_EQ(load("c2.json"), c);
}

TEST_F(Cli, KmaxFromEnvironmentAndFlag) {
  ASSERT_EQ(run("make-point --model line --points '0;1' -o " + path("p.json")), 0);
  ASSERT_EQ(run("codim -i " + path("p.json") + " -o " + path("c.json"), "CM_FORGE_KMAX=4"), 0);
  EXPECT_EQ(load("c.json")["kmax"], 4);
  EXPECT_EQ(load("c.json")["rows"].size(), 5u);
  ASSERT_EQ(run("codim --kmax 3 -i " + path("p.json") + " -o " + path("c.json"), "CM_FORGE_KMAX=4"), 0);
  EXPECT_EQ(load("c.json")["kmax"], 3);
}

TEST_F(Cli, UnitActionKeepsRelations) {
  ASSERT_EQ(run("make-point --model torus --points '1;2' -o " + path("p.json")), 0);
  ASSERT_EQ(run("act --unit-power 1 -i " + path("p.json") + " -o " + path("q.json")), 0);
  EXPECT_NE(load("q.json")["Z"], load("p.json")["Z"]);
  ASSERT_EQ(run("verify -i " + path("q.json") + " -o " + path("r.json")), 0);
  EXPECT_TRUE(load("r.json")["pass"].get<bool>());
  ASSERT_EQ(run("act --form '2,0,1' -i " + path("p.json") + " -o " + path("w.json")), 0);
  ASSERT_EQ(run("verify -i " + path("w.json")), 0);
}

TEST_F(Cli, PlaneCurveFromFile) {
  write("cubic.json", R"({"kind": "PlaneCurve", "F": [[0, 2, "1"], [3, 0, "-1"], [0, 0, "-1"]]})");
  ASSERT_EQ(run("make-point --curve " + path("cubic.json") + " --points '0,1;2,3' -o " + path("p.json")), 0);
  ASSERT_EQ(run("commutant -i " + path("p.json") + " -o " + path("k.json")), 0);
  EXPECT_EQ(load("k.json")["commutant_dim"], 1);
  ASSERT_EQ(run("tangent -i " + path("p.json") + " -o " + path("t.json")), 0);
  EXPECT_EQ(load("t.json")["tangent_dim"], 8);
  EXPECT_EQ(load("t.json")["moduli_dim"], 4);
}

TEST_F(Cli, SchemaViolationsExitOne) {
  write("bad.json", R"({"curve": {"kind": "AffineLine"}, "n": 1, "X": [["1"]]})");
  EXPECT_EQ(run("verify -i " + path("bad.json") + " -o " + path("e.json")), 1);
  EXPECT_EQ(load("e.json")["error"]["type"], "schema");
  write("junk.json", "{not json");
  EXPECT_EQ(run("forge -i " + path("junk.json") + " -o " + path("e.json")), 1);
  EXPECT_EQ(run("verify -i " + path("missing.json") + " -o " + path("e.json")), 1);
  EXPECT_EQ(run("make-point --model line --points 'a' -o " + path("e.json")), 1);
  EXPECT_EQ(run("frobnicate"), 1);
}

TEST_F(Cli, PreconditionFailuresExitTwoWithResidual) {
  EXPECT_EQ(run("make-point --model line --points '1;1' -o " + path("e.json")), 2);
  EXPECT_EQ(load("e.json")["error"]["type"], "precondition");
  ASSERT_EQ(run("make-point --model line --points '0;1' -o " + path("p.json")), 0);
  json p = load("p.json");
  p["Z"][0][1] = "7";
  write("broken.json", p.dump());
  EXPECT_EQ(run("verify -i " + path("broken.json") + " -o " + path("r.json")), 2);
  json r = load("r.json");
  EXPECT_FALSE(r["pass"].get<bool>());
  EXPECT_TRUE(r["error"]["residual"].is_array());
  EXPECT_EQ(run("act --unit-power 1 -i " + path("p.json") + " -o " + path("e.json")), 2);
}

TEST_F(Cli, SeededRunsAreByteIdentical) {
  for (const std::string cmd : {"szego-demo --trials 20 --seed 5", "euler --model torus --trials 15 --seed 9"}) {
    SCOPED_TRACE(cmd);
    ASSERT_EQ(run(cmd + " -o " + path("a.json")), 0);
    ASSERT_EQ(run(cmd + " -o " + path("b.json")), 0);
    EXPECT_EQ(text("a.json"), text("b.json"));
  }
  json s = load("a.json");
  EXPECT_EQ(s["agree"], s["trials"]);
  EXPECT_TRUE(s["failures"].empty());
  ASSERT_EQ(run("szego-demo -o " + path("d.json")), 0);
  EXPECT_EQ(load("d.json")["trials"], 100);
  EXPECT_EQ(load("d.json")["seed"], 0);
}
