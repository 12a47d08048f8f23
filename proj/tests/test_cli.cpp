#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "linecut/io.hpp"
#include "linecut/solver.hpp"

using namespace linecut;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("linecut_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::string& args, const std::string& stderr_file = "") const {
    std::string cmd = std::string(LINECUT_BIN) + " " + args;
    cmd += " 2>" + (stderr_file.empty() ? std::string("/dev/null") : stderr_file);
    cmd += " >" + path("stdout.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenRandomIsDeterministic) {
  ASSERT_EQ(run("gen-random --n 10 --seed 1 --out " + path("x.json")), 0);
  ASSERT_EQ(run("gen-random --n 10 --seed 1 --out " + path("y.json")), 0);
  EXPECT_EQ(read_file(path("x.json")), read_file(path("y.json")));
  EXPECT_EQ(family_from_json(parse_json(read_file(path("x.json")))).size(), 10);
  ASSERT_EQ(run("gen-random --n 10 --seed 2 --out " + path("z.json")), 0);
  EXPECT_NE(read_file(path("x.json")), read_file(path("z.json")));
}

TEST_F(Cli, PartitionVerifyRender) {
  ASSERT_EQ(run("gen-random --n 20 --seed 3 --name A --out " + path("a.json")), 0);
  ASSERT_EQ(run("gen-random --n 20 --seed 4 --name B --out " + path("b.json")), 0);
  const std::string fams = " --a " + path("a.json") + " --b " + path("b.json");
  ASSERT_EQ(run("partition --r 3 --out " + path("cert.json") + fams), 0);
  EXPECT_EQ(run("verify --cert " + path("cert.json") + fams + " --report " + path("report.json")), 0);
  EXPECT_TRUE(parse_json(read_file(path("report.json"))).at("ok").get<bool>());
  ASSERT_EQ(run("render --cert " + path("cert.json") + " --out " + path("cert.svg")), 0);
  const std::string svg = read_file(path("cert.svg"));
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST_F(Cli, TamperedCertificateExitsTwoAndNamesLeaf) {
  ASSERT_EQ(run("gen-random --n 20 --seed 5 --name A --out " + path("a.json")), 0);
  ASSERT_EQ(run("gen-random --n 20 --seed 6 --name B --out " + path("b.json")), 0);
  const std::string fams = " --a " + path("a.json") + " --b " + path("b.json");
  ASSERT_EQ(run("partition --r 2 --out " + path("cert.json") + fams), 0);
  auto cert = certificate_from_json(parse_json(read_file(path("cert.json"))));
  ASSERT_EQ(cert.tree.children.size(), 2U);
  cert.tree.children[1].b_ids.pop_back();
  write_file_atomic(path("bad.json"), dump(to_json(cert)));
  EXPECT_EQ(run("verify --cert " + path("bad.json") + fams, path("err.txt")), 2);
  const std::string err = read_file(path("err.txt"));
  EXPECT_NE(err.find("leaf 1"), std::string::npos) << err;
  EXPECT_NE(err.find("family B"), std::string::npos) << err;
}

TEST_F(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("frobnicate"), 1);
  EXPECT_EQ(run("gen-random --seed 1", path("err.txt")), 1);
  EXPECT_NE(read_file(path("err.txt")).find("--n"), std::string::npos);
  EXPECT_EQ(run("gen-random --n abc", path("err.txt")), 1);
  EXPECT_NE(read_file(path("err.txt")).find("--n"), std::string::npos);
  EXPECT_EQ(run("verify --cert /nonexistent --a /nonexistent --b /nonexistent"), 1);
  EXPECT_EQ(run("gen-pair --a 2 --r 2 --height -1 --out-a " + path("a") + " --out-b " + path("b"),
                path("err.txt")),
            1);
  EXPECT_NE(read_file(path("err.txt")).find("--height"), std::string::npos);
}

TEST_F(Cli, ThreadCapIsValidated) {
  const std::string cmd = "LINECUT_THREADS=zero " + std::string(LINECUT_BIN) + " gen-random --n 3 >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 1);
  const std::string ok = "LINECUT_THREADS=2 " + std::string(LINECUT_BIN) + " gen-random --n 3 >/dev/null 2>&1";
  EXPECT_EQ(WEXITSTATUS(std::system(ok.c_str())), 0);
}

TEST_F(Cli, MuExactAndFastAgree) {
  ASSERT_EQ(run("gen-random --n 12 --seed 7 --out " + path("f.json")), 0);
  write_file_atomic(path("h.json"), dump(to_json(Region(ConvexRegion::from_halfplane(
                                        HalfPlane::leq(Scalar(1, 3), 1, Scalar(2)))))));
  ASSERT_EQ(run("mu --exact --family " + path("f.json") + " --region " + path("h.json") + " --out " +
                path("exact.json")),
            0);
  ASSERT_EQ(run("mu --fast --family " + path("f.json") + " --region " + path("h.json") + " --out " +
                path("fast.json")),
            0);
  const Json e = parse_json(read_file(path("exact.json")));
  const Json f = parse_json(read_file(path("fast.json")));
  EXPECT_EQ(e.at("mu"), f.at("mu"));
  EXPECT_EQ(run("mu --exact --fast --family " + path("f.json") + " --region " + path("h.json")), 1);
}

TEST_F(Cli, GeneratorsWriteSidecarsAndDecimals) {
  ASSERT_EQ(run("--decimal gen-hard --a 2 --r 2 --out " + path("hard.json")), 0);
  const Json params = parse_json(read_file(path("hard.json.params.json")));
  EXPECT_EQ(params.at("epsilon"), "1/4");
  EXPECT_DOUBLE_EQ(params.at("epsilon_decimal").get<double>(), 0.25);
  ASSERT_EQ(run("gen-pair --a 2 --r 2 --height 1000000 --out-a " + path("pa.json") + " --out-b " +
                path("pb.json")),
            0);
  const Json pair = parse_json(read_file(path("pa.json.params.json")));
  EXPECT_LE(pair.at("disk_radius").get<double>(), 1.0);
  EXPECT_EQ(family_from_json(parse_json(read_file(path("pb.json")))).size(), 4);
}
