#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "phishpond/json_codec.hpp"
#include "test_support.hpp"

namespace phishpond {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string command = std::string(PHISHPOND_CLI) + " " + args + " 2>/dev/null";
  CliRun result;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return result;
  std::array<char, 4096> buffer;
  while (std::size_t n = std::fread(buffer.data(), 1, buffer.size(), pipe)) result.out.append(buffer.data(), n);
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("phishpond_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir);
    pack = dir / "pack.jsonl";
    std::ofstream(pack) << testing::pack_text(testing::small_pack());
  }
  void TearDown() override { fs::remove_all(dir); }

  fs::path dir;
  fs::path pack;
};

TEST_F(CliTest, AnalyzeExitCodes) {
  const CliRun example = run("analyze --json -b hsbc 'http://187.52.91.111/.www.hsbc.co.uk'");
  EXPECT_EQ(example.code, 1);
  const Json report = Json::parse(example.out);
  EXPECT_EQ(report.at("verdict"), "Phishing");
  EXPECT_EQ(report.at("primary_finding").at("rule_id"), "R1");

  EXPECT_EQ(run("analyze https://www.google.com/").code, 0);
  EXPECT_EQ(run("analyze notaurl").code, 2);
  const CliRun malformed = run("analyze --json 'http:///login'");
  EXPECT_EQ(malformed.code, 2);
  EXPECT_EQ(Json::parse(malformed.out).at("offset"), 7);
  EXPECT_EQ(run("analyze --pack " + pack.string() + " http://hsbc-secure.com/verify").code, 1);
}

TEST_F(CliTest, RulesCatalog) {
  const CliRun r = run("rules");
  EXPECT_EQ(r.code, 0);
  const Json catalog = Json::parse(r.out);
  ASSERT_EQ(catalog.size(), 7u);
  EXPECT_EQ(catalog[2].at("name"), "brand_hyphen");
}

TEST_F(CliTest, PackGenerateAndValidate) {
  const fs::path a = dir / "a.jsonl", b = dir / "b.jsonl";
  ASSERT_EQ(run("pack generate -n 36 -s 3 -o " + a.string()).code, 0);
  ASSERT_EQ(run("pack generate -n 36 -s 3 -o " + b.string()).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  const CliRun validated = run("pack validate --strict " + a.string());
  EXPECT_EQ(validated.code, 0);
  EXPECT_NE(validated.out.find("36 items, 0 errors, 0 warnings"), std::string::npos);

  const fs::path broken = dir / "broken.jsonl";
  std::ofstream(broken) << slurp(pack) << "{not json\n";
  EXPECT_NE(run("pack validate " + broken.string()).code, 0);

  const fs::path divergent = dir / "divergent.jsonl";
  std::ofstream(divergent) << slurp(pack)
                           << R"({"url":"http://hsbc-offers.com","label":"legitimate","phish_components":[],)"
                              R"("difficulty":1,"brand":"hsbc","hint":""})"
                           << "\n";
  EXPECT_EQ(run("pack validate " + divergent.string()).code, 0);
  EXPECT_NE(run("pack validate --strict " + divergent.string()).code, 0);
}

TEST_F(CliTest, SimulateAndReplay) {
  const fs::path log = dir / "session.jsonl";
  const CliRun sim = run("simulate --pack " + pack.string() + " -s 4 -p random:0.6 --help-rate 0.3 --log " + log.string());
  ASSERT_EQ(sim.code, 0);
  const Json summary = Json::parse(sim.out);
  EXPECT_EQ(summary.at("policy"), "random:0.6");
  EXPECT_EQ(run("replay --pack " + pack.string() + " " + log.string()).code, 0);

  // Tamper with one record's score.
  std::string text = slurp(log);
  const auto pos = text.find("\"score_after\":");
  ASSERT_NE(pos, std::string::npos);
  text.insert(pos + 14, "9");
  std::ofstream(log) << text;
  EXPECT_EQ(run("replay --pack " + pack.string() + " " + log.string()).code, 1);
  EXPECT_EQ(run("replay --pack " + pack.string() + " " + (dir / "missing.jsonl").string()).code, 2);
}

TEST_F(CliTest, OracleSimulationSummary) {
  const CliRun sim = run("simulate --pack " + pack.string() + " -s 2 -p oracle");
  ASSERT_EQ(sim.code, 0);
  const Json out = Json::parse(sim.out);
  EXPECT_EQ(out.at("final_phase"), "LevelComplete");
  EXPECT_EQ(out.at("summary").at("counts").at("classify_correct"), out.at("summary").at("counts").at("classify_total"));
  EXPECT_EQ(out.at("summary").at("counts").at("locate_correct"), out.at("summary").at("counts").at("locate_total"));
  EXPECT_EQ(run("simulate --pack " + pack.string() + " -s 2 -p oracle").out, sim.out);
}

TEST_F(CliTest, PackFromEnvironment) {
  const std::string env = "PHISHPOND_PACK=" + pack.string() + " ";
  const std::string command = env + PHISHPOND_CLI + " pack validate >/dev/null 2>&1";
  EXPECT_EQ(WEXITSTATUS(std::system(command.c_str())), 0);
}

}  // namespace
}  // namespace phishpond
