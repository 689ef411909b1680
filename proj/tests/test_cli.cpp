#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "mezzo/cli.hpp"

using mezzo::cli::json;

namespace {

const std::string kData = MEZZO_DATA_DIR;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "mezzo_cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = mezzo::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("mezzo_cli_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST(Cli, CohomologyOfConeOverTorusWithLine) {
  auto r = run({"cohomology", "--space", data("cone_t2.json"), "--mezzo", data("lagrangian_cone.json"), "--format",
                "structured"});
  ASSERT_EQ(r.code, 0) << r.err;
  json doc = json::parse(r.out);
  EXPECT_EQ(doc["dims"], json::array({1, 1, 0}));
  EXPECT_EQ(doc["chain_level_check"], "agrees");
  EXPECT_EQ(doc["provenance"]["stratum"], "cone.apex");
}

TEST(Cli, HarmonicDimsWithMetricMatchRefinedDims) {
  auto metric = temp_file("identity.json", "\"identity\"");
  auto r = run({"cohomology", "--space", data("suspension_t2.json"), "--mezzo", data("lagrangian_suspension.json"),
                "--metric", metric, "--format", "structured"});
  ASSERT_EQ(r.code, 0) << r.err;
  json doc = json::parse(r.out);
  EXPECT_EQ(doc["dims"], json::array({1, 1, 1, 1}));
  EXPECT_EQ(doc["harmonic_dims"], doc["dims"]);
}

TEST(Cli, FlatnessFailureNamesGenerator) {
  auto r = run({"validate", "--space", data("bundle_swap_t2.json"), "--mezzo", data("bundle_e1.json"), "--format",
                "structured"});
  EXPECT_EQ(r.code, 1);
  json doc = json::parse(r.out);
  EXPECT_FALSE(doc["valid"].get<bool>());
  EXPECT_EQ(doc["issues"][0]["kind"], "flatness");
  EXPECT_EQ(doc["issues"][0]["generator"], 0);
  EXPECT_EQ(doc["issues"][0]["stratum"], "bundle.base");

  auto ok = run({"validate", "--space", data("bundle_swap_t2.json"), "--mezzo", data("bundle_e1_plus_e2.json")});
  EXPECT_EQ(ok.code, 0) << ok.err;
}

TEST(Cli, StrataReportWittStatus) {
  auto r = run({"strata", "--space", data("cone_s2.json"), "--format", "structured"});
  ASSERT_EQ(r.code, 0) << r.err;
  json doc = json::parse(r.out);
  ASSERT_EQ(doc["strata"].size(), 2u);
  EXPECT_EQ(doc["strata"][0]["id"], "regular");
  EXPECT_EQ(doc["strata"][1]["id"], "cone.apex");
  EXPECT_EQ(doc["strata"][1]["status"], "witt");
  auto t = run({"strata", "--space", data("cone_t2.json"), "--format", "structured"});
  EXPECT_EQ(json::parse(t.out)["strata"][1]["status"], "non_witt");
}

TEST(Cli, TextAndStructuredCarryTheSameDocument) {
  for (const std::string cmd : {"strata", "cohomology", "duality", "indicial", "cheeger"}) {
    std::vector<std::string> base = {cmd, "--space", data("cone_t2.json"), "--mezzo", data("lagrangian_cone.json")};
    if (cmd == "indicial") base.insert(base.end(), {"--delta", "1"});
    auto text = run(base);
    auto structured_args = base;
    structured_args.insert(structured_args.end(), {"--format", "structured"});
    auto structured = run(structured_args);
    ASSERT_EQ(text.code, 0) << cmd << ": " << text.err;
    ASSERT_EQ(structured.code, 0) << cmd << ": " << structured.err;
    std::ostringstream rendered;
    mezzo::cli::render_text(json::parse(structured.out), rendered, 0);
    EXPECT_EQ(rendered.str(), text.out) << cmd;
  }
}

TEST(Cli, OutputIsDeterministic) {
  std::vector<std::string> args = {"indicial", "--space", data("cone_t2.json"), "--mezzo", data("lagrangian_cone.json"),
                                   "--format", "structured"};
  EXPECT_EQ(run(args).out, run(args).out);
  std::vector<std::string> cheeger = {"cheeger", "--space", data("cone_s2xs2.json"), "--format", "structured"};
  EXPECT_EQ(run(cheeger).out, run(cheeger).out);
}

TEST(Cli, IndicialWindowAndWeightGap) {
  auto r = run({"indicial", "--space", data("cone_t2.json"), "--mezzo", data("lagrangian_cone.json"), "--delta", "1",
                "--format", "structured"});
  ASSERT_EQ(r.code, 0) << r.err;
  json doc = json::parse(r.out);
  EXPECT_EQ(doc["stratum"], "cone.apex");
  EXPECT_EQ(doc["scaling"]["window_roots"], json::array({"-1"}));
  EXPECT_TRUE(doc["scaling"]["window_ok"].get<bool>());
  EXPECT_EQ(doc["weight_gap"]["line"], "-1/2");
}

TEST(Cli, CheegerDetection) {
  auto t2 = run({"cheeger", "--space", data("cone_t2.json"), "--format", "structured"});
  EXPECT_TRUE(json::parse(t2.out)["cheeger_space"].get<bool>());
  auto cp2 = run({"cheeger", "--space", data("cone_cp2.json"), "--format", "structured"});
  ASSERT_EQ(cp2.code, 0) << cp2.err;
  json doc = json::parse(cp2.out);
  EXPECT_FALSE(doc["cheeger_space"].get<bool>());
  EXPECT_EQ(doc["strata"][0]["obstruction"]["kind"], "nonzero_signature");
}

TEST(Cli, SignatureOfProjectivePlane) {
  auto r = run({"duality", "--space", data("cp2.json"), "--mezzo", "zero", "--format", "structured"});
  ASSERT_EQ(r.code, 0) << r.err;
  json doc = json::parse(r.out);
  EXPECT_EQ(std::abs(doc["signature"].get<long>()), 1);
}

TEST(Cli, MalformedInputExitsTwo) {
  auto bad = temp_file("bad.json", "{\"cone\": ");
  auto r = run({"cohomology", "--space", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("input error"), std::string::npos);
  EXPECT_EQ(run({"cohomology", "--space", data("does_not_exist.json")}).code, 2);
  EXPECT_EQ(run({"frobnicate", "--space", data("cone_t2.json")}).code, 2);
  EXPECT_EQ(run({"indicial", "--space", data("cone_t2.json"), "--mezzo", data("lagrangian_cone.json"), "--delta", "x"}).code,
            2);
}

TEST(Cli, UnknownStratumIdIsReferenceError) {
  auto m = temp_file("unknown.json", "{\"cone.apex\": [[\"1\", \"0\"]], \"nowhere\": []}");
  auto r = run({"cohomology", "--space", data("cone_t2.json"), "--mezzo", m, "--format", "structured"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)["error"]["kind"], "reference");
}

TEST(Cli, MissingAssignmentIsIncompleteness) {
  auto r = run({"cohomology", "--space", data("cone_t2.json"), "--format", "structured"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)["error"]["kind"], "incompleteness");
}
