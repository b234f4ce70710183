#include <gtest/gtest.h>

#include <filesystem>

#include "pnlogic/fixtures.hpp"
#include "pnlogic/io.hpp"
#include "pnlogic/replication.hpp"

namespace pnlogic {
namespace {

std::string model_path(const char* name) {
  return (std::filesystem::path(PNLOGIC_DATA_DIR) / "models" / name).string();
}

TEST(Load, ShippedModelsMatchFixtures) {
  EXPECT_EQ(io::model_from_json(io::read_json_file(model_path("k.json"))).frame(), fixtures::k_countermodel().frame());
  Model k = io::model_from_json(io::read_json_file(model_path("k.json")));
  EXPECT_EQ(k.valuation(), fixtures::k_countermodel().valuation());
  Model seven = io::model_from_json(io::read_json_file(model_path("seven.json")));
  EXPECT_EQ(seven.frame(), fixtures::star_without_four().frame());
  EXPECT_EQ(seven.valuation(), fixtures::star_without_four().valuation());
  Model mon = io::model_from_json(io::read_json_file(model_path("mon.json")));
  EXPECT_EQ(mon.valuation(), fixtures::mon_countermodel().valuation());
  Model birel = io::model_from_json(io::read_json_file(model_path("birel.json")));
  EXPECT_EQ(birel.frame(), fixtures::two_world_separation().frame());
}

TEST(Load, RejectsBadFiles) {
  EXPECT_THROW(io::model_from_json(io::read_json_file(model_path("out_of_range.json"))), io::FormatError);
  EXPECT_THROW(io::read_json_file(model_path("missing.json")), io::FormatError);
  using J = io::Json;
  EXPECT_THROW(io::frame_from_json(J::parse(R"({"order": []})")), io::FormatError);
  EXPECT_THROW(io::frame_from_json(J::parse(R"({"worlds": 0})")), io::FormatError);
  EXPECT_THROW(io::frame_from_json(J::parse(R"({"worlds": 17})")), io::FormatError);
  EXPECT_THROW(io::frame_from_json(J::parse(R"({"worlds": 2, "order": [[0]]})")), io::FormatError);
  EXPECT_THROW(io::frame_from_json(J::parse(R"({"worlds": 2, "order": [[0, -1]]})")), io::FormatError);
  EXPECT_THROW(io::frame_from_json(J::parse(R"({"worlds": 2, "nbhd": {"x": []}})")), io::FormatError);
  EXPECT_THROW(io::frame_from_json(J::parse(R"({"worlds": 2, "nbhd": {"2": []}})")), io::FormatError);
  EXPECT_THROW(io::frame_from_json(J::parse(R"({"worlds": 2, "nbhd": {"0": [[3]]}})")), io::FormatError);
  EXPECT_THROW(io::model_from_json(J::parse(R"({"worlds": 2, "valuation": {"P": [0]}})")), io::FormatError);
}

TEST(Load, WarnsAboutReflexivePairs) {
  std::vector<std::string> warnings;
  io::frame_from_json(io::Json::parse(R"({"worlds": 2, "order": [[0, 0]]})"), &warnings);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_EQ(warnings[0], "order: added 1 reflexive pair(s)");
  warnings.clear();
  io::frame_from_json(io::Json::parse(R"({"worlds": 1, "order": [[0, 0]]})"), &warnings);
  EXPECT_TRUE(warnings.empty());
}

TEST(RoundTrip, Models) {
  for (const Model& m : {fixtures::k_countermodel(), fixtures::star_without_four(), fixtures::mon_countermodel()}) {
    Model back = io::model_from_json(io::Json::parse(io::to_json(m).dump()));
    EXPECT_EQ(back.frame(), m.frame());
    EXPECT_EQ(back.valuation(), m.valuation());
  }
}

TEST(Serialize, Shapes) {
  io::Json k = io::to_json(fixtures::k_countermodel());
  EXPECT_EQ(k.dump(), R"({"worlds":3,"order":[[2,0]],"nbhd":{"0":[[0],[0,1,2]],"1":[[1]],"2":[[0,1,2]]},)"
                      R"("valuation":{"p":[0],"q":[0,1]}})");
  io::Json cm = io::countermodel_json(fixtures::k_countermodel(), "[](a -> b)", 2);
  EXPECT_EQ(cm["witness"]["scheme"], "[](a -> b)");
  EXPECT_EQ(cm["witness"]["world"], 2);
  EXPECT_EQ(cm["witness"]["assignment"]["q"], io::Json::parse("[0,1]"));

  io::Json r = io::to_json(check_starstar(fixtures::star_without_four().frame()));
  EXPECT_EQ(r["condition"], "starstar");
  EXPECT_FALSE(r["holds"].get<bool>());
  EXPECT_TRUE(r.contains("witness"));

  SearchOutcome o;
  o.stats.elapsed_ms = 12.5;
  EXPECT_FALSE(io::to_json(o, "a").at("stats").contains("elapsed_ms"));
  EXPECT_TRUE(io::to_json(o, "a", true).at("stats").contains("elapsed_ms"));
  EXPECT_EQ(io::to_json(o, "a")["verdict"], "exhausted-no-countermodel");
}

TEST(Serialize, ReplicationSummary) {
  auto one = replication::run_case("birel");
  ASSERT_TRUE(one);
  io::Json j = replication::to_json(std::vector<replication::CaseResult>{*one});
  EXPECT_EQ(j["passed"], 1);
  EXPECT_EQ(j["total"], 1);
  EXPECT_EQ(j["cases"][0]["name"], "birel");
  EXPECT_FALSE(replication::run_case("bogus"));
}

}  // namespace
}  // namespace pnlogic
