#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "fixtures.hpp"

using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "BRAUERLIFT_CACHE=") {
  std::string cmd = env + " " + BRAUERLIFT_CLI + " " + args + " 2>/dev/null";
  Run r;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
  int status = pclose(f);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path fresh_dir(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("brauerlift_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(d);
  return d;
}

}  // namespace

TEST(Cli, BlocksOfPsl27AtSeven) {
  auto r = run("blocks --group psl27 --p 7 --no-cache");
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["result"]["block_count"], 2);
  EXPECT_EQ(j["result"]["blocks"][1]["characters"], json({"7"}));
}

TEST(Cli, TrivialGroupHasOneBlock) {
  auto r = run("blocks --group trivial --p 5 --no-cache");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["result"]["block_count"], 1);
}

TEST(Cli, PrincipalTreeIsPathWithMultiplicityTwo) {
  auto r = run("brauer-tree --group psl27 --p 7 --block principal --no-cache");
  ASSERT_EQ(r.code, 0);
  auto t = json::parse(r.out)["result"];
  EXPECT_EQ(t["shape"], "path");
  EXPECT_EQ(t["edge_count"], 3);
  EXPECT_EQ(t["multiplicity"], 2);
  EXPECT_EQ(t["exceptional_degree"], 1);
  auto dot = run("brauer-tree --group psl27 --p 7 --dot --no-cache");
  EXPECT_EQ(dot.out.rfind("graph brauer_tree {", 0), 0u);
}

TEST(Cli, IdenticalConfigGivesIdenticalBytes) {
  for (const char* args : {"blocks --group a4 --p 3 --seed 9 --no-cache", "witness --group s3 --p 3 --prec 3 --no-cache",
                           "burnside idempotents --group a4 --p 2 --no-cache"}) {
    auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0) << args;
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, CacheHitMatchesRecomputation) {
  auto dir = fresh_dir("cache");
  std::string env = "BRAUERLIFT_CACHE=" + dir.string();
  std::string args = "brauer-tree --group borel21 --p 7";
  auto uncached = run(args + " --no-cache");
  auto miss = run(args, env);
  auto hit = run(args, env);
  EXPECT_EQ(uncached.out, miss.out);
  EXPECT_EQ(miss.out, hit.out);
  int files = 0;
  for (auto& e : std::filesystem::directory_iterator(dir)) {
    EXPECT_EQ(e.path().extension(), ".json");
    ++files;
  }
  EXPECT_EQ(files, 1);
  std::filesystem::remove_all(dir);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("blocks --group a4 --p 4").code, 1);
  EXPECT_EQ(run("blocks --group no_such_group --p 3").code, 1);
  EXPECT_EQ(run("blocks --p 3").code, 1);
  EXPECT_EQ(run("rouquier verify --group s3 --p 3 --prec 2").code, 0);
  EXPECT_EQ(run("fixtures check").code, 0);
}

TEST(Cli, GroupParseErrorsCarryLineNumbers) {
  auto dir = fresh_dir("parse");
  std::filesystem::create_directories(dir);
  auto path = dir / "bad.grp";
  std::ofstream(path) << "degree=3\n(1 2 3)\n(1 4)\n";
  std::string cmd = std::string(BRAUERLIFT_CLI) + " blocks --group " + path.string() + " --p 3 --no-cache 2>&1";
  FILE* f = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 512> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
  EXPECT_NE(WEXITSTATUS(pclose(f)), 0);
  EXPECT_NE(out.find("line 3"), std::string::npos) << out;
  std::filesystem::remove_all(dir);
}

TEST(Cli, LiftIdempotentFromFile) {
  auto r = run("lift-idem --input " + fixture_path("lift_triangular.json"));
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out)["result"];
  EXPECT_TRUE(j["maps_to_target"].get<bool>());
  EXPECT_TRUE(j["idempotent_check"].get<bool>());
}

TEST(Cli, BurnsideSurfaces) {
  auto marks = json::parse(run("burnside marks --group s3 --p 3 --no-cache").out)["result"];
  EXPECT_EQ(marks["matrix"], json::parse("[[6,0,0,0],[3,1,0,0],[2,0,2,0],[1,1,1,1]]"));
  auto basis = json::parse(run("burnside basis --group s3 --p 3 --no-cache").out)["result"];
  EXPECT_EQ(basis["rank"], 2);
  // [S3/C2]^2 = [S3/1] + [S3/C2]: 3 * 3 = 6 + 3 points.
  auto comp = json::parse(run("burnside compose --group s3 --p 3 --a 1 --b 1 --no-cache").out)["result"];
  EXPECT_EQ(comp["coefficients"], json::parse("[1,1,0,0]"));
}
