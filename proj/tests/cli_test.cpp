#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "homcalc/document.hpp"

using homcalc::doc::json;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(HOMCALC_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string sample(const std::string& name) { return std::string(HOMCALC_SAMPLES_DIR) + "/" + name; }

}  // namespace

TEST(Cli, DocumentedExamples) {
  CliRun a = run("pi1 --input " + sample("sl2_modcenter.json"));
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, "Z/2\n");

  CliRun b = run("pi1 --method thm-main --input " + sample("pgl2_point.json"));
  EXPECT_EQ(b.exit_code, 2);
  EXPECT_EQ(b.out, "PicNonTrivial: Pic(G) = Z/2\n");

  CliRun c = run("pi2 --input " + sample("sl2_torus.json"));
  EXPECT_EQ(c.exit_code, 0);
  EXPECT_EQ(c.out, "Z\n");

  CliRun d = run("ext0 --input " + sample("zero_to_z.json"));
  EXPECT_EQ(d.exit_code, 0);
  EXPECT_EQ(d.out, "0\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("pi1 --input " + sample("bad_root_datum.json")).exit_code, 3);
  EXPECT_EQ(run("pi1 --input " + sample("sl2_into_torus.json")).exit_code, 3);
  EXPECT_EQ(run("pi1 --input " + sample("does_not_exist.json")).exit_code, 3);
  EXPECT_EQ(run("pi1 --input " + sample("zero_to_z.json")).exit_code, 3);
  EXPECT_EQ(run("frobnicate --input " + sample("sl2_torus.json")).exit_code, 3);
  EXPECT_EQ(run("pi1 --method sideways --input " + sample("sl2_torus.json")).exit_code, 3);
  EXPECT_EQ(run("pi1").exit_code, 3);
  EXPECT_EQ(run("pi1 --method thm-pi2 --input " + sample("sl2_modcenter.json")).exit_code, 2);
  EXPECT_EQ(run("pi1 --method both --input " + sample("sl2_torus.json")).exit_code, 0);
  EXPECT_EQ(run("catalog-list").exit_code, 0);
}

TEST(Cli, ErrorsNameTheField) {
  CliRun r = run("pi1 --json --input " + sample("bad_root_datum.json"));
  json j = json::parse(r.out);
  ASSERT_EQ(j["errors"].size(), 1u);
  EXPECT_EQ(j["errors"][0]["kind"], "InvalidRootDatum");
  EXPECT_NE(j["errors"][0]["message"].get<std::string>().find("/g/root_datum"), std::string::npos);
  EXPECT_EQ(j["status"], "invalid_input");
}

TEST(Cli, StableOutputIsDeterministic) {
  for (const char* f : {"sl2_torus.json", "pgl3_point.json", "so5_torus.json"}) {
    CliRun a = run("all --json --stable --input " + sample(f));
    CliRun b = run("all --json --stable --input " + sample(f));
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(json::parse(a.out).contains("timing_ms"));
  }
  EXPECT_TRUE(json::parse(run("all --json --input " + sample("sl2_torus.json")).out).contains("timing_ms"));
}

TEST(Cli, OutputRoundTrips) {
  for (const auto& entry : fs::directory_iterator(HOMCALC_SAMPLES_DIR)) {
    const std::string name = entry.path().filename().string();
    const bool complex = name.rfind("ext0_", 0) == 0 || name == "zero_to_z.json";
    CliRun r = run(std::string(complex ? "ext0" : "all") + " --json --stable --input " + entry.path().string());
    json j = json::parse(r.out);
    EXPECT_EQ(j["exit_code"].get<int>(), r.exit_code) << name;
    for (const auto& [key, value] : j["results"].items()) {
      homcalc::InvariantFactors f = homcalc::doc::group_from_json(value, "/results/" + key);
      EXPECT_EQ(f.pretty(), value["pretty"].get<std::string>()) << name << " " << key;
      EXPECT_EQ(homcalc::doc::group_to_json(f)["torsion"], value["torsion"]);
    }
  }
}

TEST(Cli, BatchMode) {
  CliRun r = run("all --json --stable --input-dir " + std::string(HOMCALC_SAMPLES_DIR));
  json j = json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  std::size_t files = 0;
  int worst = 0;
  for (const auto& entry : fs::directory_iterator(HOMCALC_SAMPLES_DIR))
    if (entry.path().extension() == ".json") ++files;
  EXPECT_EQ(j.size(), files);
  for (const auto& doc : j) worst = std::max(worst, doc["exit_code"].get<int>());
  EXPECT_EQ(r.exit_code, worst);
  // Entries are ordered by file name.
  for (std::size_t i = 1; i < j.size(); ++i) EXPECT_LT(j[i - 1]["input"], j[i]["input"]);
}

TEST(Cli, OracleFlag) {
  CliRun r = run("ext0 --oracle --json --stable --input " + sample("ext0_reduction_mod4.json"));
  EXPECT_EQ(r.exit_code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["results"]["ext0"]["oracle"], "resolution");
  EXPECT_EQ(j["results"]["ext0"]["pretty"], "Z ⊕ Z/2");
}

TEST(Cli, CatalogList) {
  json j = json::parse(run("catalog-list --json --stable").out);
  std::vector<std::string> names;
  for (const auto& f : j["results"]["families"]) names.push_back(f["name"]);
  for (const char* want : {"SL", "GL", "PGL", "Sp", "SO", "Spin", "Torus", "Mu"})
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
}
