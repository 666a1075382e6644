#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace fs = std::filesystem;

namespace {

const std::string kData = MGL_TEST_DATA;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mgl_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs the tool with stdout captured in out.txt and stderr in err.txt.
  int run(const std::string& args) {
    const std::string cmd = std::string("\"") + MGL_BINARY + "\" " + args + " > \"" +
                            (dir_ / "out.txt").string() + "\" 2> \"" + (dir_ / "err.txt").string() +
                            "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string read(const fs::path& p) const {
    std::ifstream in(p.is_absolute() ? p : dir_ / p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }
  std::string out() const { return read("out.txt"); }
  std::string err() const { return read("err.txt"); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string data(const std::string& name) const { return kData + "/" + name; }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, DensityOnGraphAndMultigraphon) {
  ASSERT_EQ(run("density --F " + data("edge.mg") + " --G " + data("triangle.mg") +
                " --variant hom_leq"),
            0)
      << err();
  EXPECT_NE(out().find(",hom_leq,2,3,"), std::string::npos) << out();
  ASSERT_EQ(run("density --F " + data("edge.mg") + " --W " + data("two_block.mgw") + " --mode leq"), 0)
      << err();
  EXPECT_NE(out().find(",79,180,"), std::string::npos) << out();
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("density --F " + data("malformed.mg") + " --G " + data("triangle.mg")), 2);
  EXPECT_NE(err().find("malformed.mg:"), std::string::npos) << err();
  EXPECT_EQ(run("density --F " + data("edge.mg") + " --G " + data("nope.mg")), 2);
  EXPECT_EQ(run("density --bogus"), 2);
  EXPECT_EQ(run("density --F " + data("triangle.mg") + " --G " + data("triangle.mg") + " --budget 5"),
            3);
  EXPECT_EQ(run("sample --from graph:" + data("triangle.mg") + " --k 3"), 4);
}

TEST_F(Cli, CheckVerdicts) {
  EXPECT_EQ(run("check --param graphon:" + data("two_block.mgw") + " --k 1"), 0) << out() << err();
  EXPECT_NE(out().find("verdict: pass"), std::string::npos);
  EXPECT_EQ(run("check --param table:" + data("constant1.ptab") + " --k 1"), 1);
  EXPECT_NE(out().find("non-defectiveness: fail"), std::string::npos) << out();
  EXPECT_EQ(run("check --param graph:" + data("triangle.mg") + " --mode eq --k 2"), 1);
  EXPECT_NE(out().find("multiplicativity: fail"), std::string::npos) << out();
}

TEST_F(Cli, MobiusTableRoundTripsThroughPtab) {
  ASSERT_EQ(run("mobius --param graph:" + data("path2.mg") + " --k 2 --max-mult 2 --format ptab --out " +
                path("dagger.ptab")),
            0)
      << err();
  EXPECT_EQ(read("dagger.ptab").rfind("# mgl ", 0), 0u);
  ASSERT_EQ(run("mobius --param table:" + path("dagger.ptab") + " --k 2 --inverse"), 0) << err();
  // Entries of the upward sums are t_<= values of the path; O_2 gives 1.
  EXPECT_NE(out().find("0;0;0,1,1,1"), std::string::npos) << out();
  EXPECT_EQ(run("mobius --zeta --k 2 --max-mult 2"), 0) << err();
}

TEST_F(Cli, SampleIsByteIdentical) {
  const std::string args = "sample --from graphon:" + data("two_block.mgw") + " --k 5 --seed 7 --out ";
  ASSERT_EQ(run(args + path("a.mg")), 0) << err();
  ASSERT_EQ(run(args + path("b.mg")), 0) << err();
  EXPECT_EQ(read("a.mg"), read("b.mg"));
  EXPECT_NE(read("a.mg").find("seed=7"), std::string::npos) << read("a.mg");
  ASSERT_EQ(run("sample --from graphon:" + data("two_block.mgw") + " --k 5 --seed 8 --out " +
                path("c.mg")),
            0);
  EXPECT_NE(read("a.mg"), read("c.mg"));
}

TEST_F(Cli, SampleStatisticalTests) {
  EXPECT_EQ(run("sample --from graphon:" + data("two_block.mgw") +
                " --k 3 --seed 1 --test exchangeability --samples 5000"),
            0)
      << out() << err();
  EXPECT_NE(out().find("verdict: pass"), std::string::npos);
  EXPECT_EQ(run("sample --from graphon:" + data("two_block.mgw") +
                " --k 4 --seed 1 --test dissociation --samples 5000"),
            0)
      << out() << err();
}

TEST_F(Cli, ConsistentSequenceAndConvergence) {
  ASSERT_EQ(run("sample --consistent param:" + data("two_block.mgw") + " --n 50 --seed 1 --out-dir " +
                path("seq")),
            0)
      << err();
  EXPECT_TRUE(fs::exists(dir_ / "seq" / "G_01.mg"));
  EXPECT_TRUE(fs::exists(dir_ / "seq" / "G_50.mg"));
  const std::string manifest = read(dir_ / "seq" / "manifest.csv");
  EXPECT_NE(manifest.find("index,file,n,edges,dropped_mass\n1,G_01.mg,1,"), std::string::npos)
      << manifest;
  const std::string first = read(dir_ / "seq" / "G_50.mg");
  ASSERT_EQ(run("sample --consistent param:" + data("two_block.mgw") + " --n 50 --seed 1 --out-dir " +
                path("seq2")),
            0);
  EXPECT_EQ(read(dir_ / "seq2" / "G_50.mg"), first);

  fs::remove(dir_ / "seq" / "manifest.csv");
  const int code = run("converge --seq " + path("seq") + " --tests default --seed 2 --samples 2000");
  EXPECT_TRUE(code == 0 || code == 1) << err();
  EXPECT_NE(out().find("n,testgraph_id,value,stderr,method"), std::string::npos);
  EXPECT_NE(out().find("\n50,1,"), std::string::npos);

  fs::create_directories(dir_ / "w");
  fs::copy_file(data("two_block.mgw"), dir_ / "w" / "a.mgw");
  fs::copy_file(data("two_block.mgw"), dir_ / "w" / "b.mgw");
  EXPECT_EQ(run("converge --tight --seq " + path("w") + " --m-grid 1,2,3"), 0) << out() << err();
  EXPECT_NE(out().find("test: tightness"), std::string::npos);

  fs::create_directories(dir_ / "empty");
  EXPECT_EQ(run("converge --seq " + path("empty")), 2);
}

TEST_F(Cli, Quotient) {
  ASSERT_EQ(run("quotient --G " + data("path2.mg")), 0) << err();
  EXPECT_NE(out().find("roundtrip: pass"), std::string::npos) << out();
}
