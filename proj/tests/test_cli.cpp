#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "genlift/cli.hpp"

namespace genlift {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "genlift");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

TEST(Cli, SpectrumPasses) {
  const Result r = run({"--no-cache", "spectrum", "--q", "7"});
  EXPECT_EQ(r.code, cli::kPass) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], "genlift.claim/1");
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(Cli, OrbitsReport) {
  const Result r = run({"--no-cache", "orbits", "--q", "5", "--aut", "--mn", "2,3"});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], "genlift.orbits/1");
  EXPECT_EQ(j["gamma_size"], 2280);
  EXPECT_EQ(j["orbits"].size(), 3u);
  EXPECT_EQ(j["aut_orbits"].size(), 19u);
  EXPECT_EQ(j["aut_group_order"], 120);
  int free23 = 0;
  for (const auto& o : j["orbits"]) free23 += o["mn_free"]["2,3"].get<bool>();
  EXPECT_EQ(free23, 1);

  const Result t = run({"--no-cache", "--format", "table", "orbits", "--q", "4"});
  EXPECT_EQ(t.code, cli::kPass);
  EXPECT_NE(t.out.find("Nielsen orbits"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"--no-cache", "verify", "remark", "--m", "5", "--q", "5"}).code, cli::kClaimFailed);
  EXPECT_EQ(run({"--no-cache", "verify", "remark", "--m", "19", "--q", "37"}).code, cli::kBudget);
  EXPECT_EQ(run({"--no-cache", "verify", "s2p2", "--q", "5"}).code, cli::kUsage);
  EXPECT_EQ(run({"--no-cache", "verify", "bogus"}).code, cli::kUsage);
  EXPECT_EQ(run({"--no-cache", "verify", "thm-iii", "--q", "7"}).code, cli::kUsage);
  EXPECT_EQ(run({"orbits"}).code, cli::kUsage);
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kPass);
  EXPECT_EQ(run({"--version"}).code, cli::kPass);
  EXPECT_EQ(run({"--no-cache", "orbits", "--q", "5", "--mn", "2x3"}).code, cli::kUsage);
  EXPECT_EQ(run({"--no-cache", "orbits", "--q", "6"}).code, cli::kUsage);
}

TEST(Cli, CosetEnumeration) {
  const std::string miller = write_temp("genlift-cli-miller.txt", "gens: x y\nrels: x^3 y^3 [x,y]^2\n");
  Result r = run({"coset-enum", miller});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["cosets"], 288);

  r = run({"coset-enum", miller, "--subgroup", "x", "--emit-table"});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["cosets"], 96);
  EXPECT_EQ(j["table"].size(), 96u);

  const std::string free2 = write_temp("genlift-cli-free.txt", "gens: x y\n");
  EXPECT_EQ(run({"coset-enum", free2, "--max", "1000"}).code, cli::kOverflow);

  const std::string bad = write_temp("genlift-cli-bad.txt", "gens: x y\nrels: x^3 y^3 [x,y\n");
  r = run({"coset-enum", bad});
  EXPECT_EQ(r.code, cli::kParse);
  EXPECT_NE(r.err.find("line 2, column 19"), std::string::npos) << r.err;

  EXPECT_EQ(run({"coset-enum", "/nonexistent/genlift.txt"}).code, cli::kUsage);
}

TEST(Cli, OutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "genlift-cli-out.json";
  const Result r = run({"--no-cache", "-o", path.string(), "verify", "miller-332"});
  EXPECT_EQ(r.code, cli::kPass) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["claim_id"], "miller-332");
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace genlift
