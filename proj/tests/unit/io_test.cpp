// Copyright 2026 The Boxforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "boxforge/io.hpp"
#include "boxforge/quantum.hpp"

namespace boxforge {
namespace {

using io::Json;

TEST(BoxJson, RoundTripIsExact) {
  const Box222 box = realize_box(tsirelson_realization());
  const Json j = io::box_to_json(box);
  EXPECT_EQ(j.at("schema"), io::kBoxSchema);
  EXPECT_EQ(io::box_from_json(Json::parse(j.dump())), box);
}

TEST(BoxJson, RejectsMalformedDocuments) {
  Json j = io::box_to_json(Box222::uniform());
  Json wrong_schema = j;
  wrong_schema["schema"] = "boxforge.box/0";
  EXPECT_THROW(io::box_from_json(wrong_schema), io::FormatError);
  Json short_table = j;
  short_table["table"].erase(0);
  EXPECT_THROW(io::box_from_json(short_table), io::FormatError);
  Json text_entry = j;
  text_entry["table"][3] = "0.25";
  EXPECT_THROW(io::box_from_json(text_entry), io::FormatError);
  Json missing = j;
  missing.erase("table");
  EXPECT_THROW(io::box_from_json(missing), io::FormatError);
  Json unnormalized = j;
  unnormalized["table"][0] = 0.5;
  EXPECT_THROW(io::box_from_json(unnormalized), InvalidBox);
}

TEST(BoxCsv, HeaderAndRowOrder) {
  const std::string csv = io::box_to_csv(make_vertex(VertexLabel::nonlocal(0, 0, 0)));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,y,a,b,p");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 17);
  EXPECT_NE(csv.find("\n0,0,0,0,0.5\n"), std::string::npos);
  EXPECT_NE(csv.find("\n1,1,1,0,0.5\n"), std::string::npos);
}

TEST(RealizationJson, RoundTripPreservesBox) {
  for (const QuantumRealization& r : {tsirelson_realization(), hardy_closed_form_realization(0.5),
                                      tilted_realization(0.3).realization}) {
    const QuantumRealization back = io::realization_from_json(Json::parse(io::realization_to_json(r).dump()));
    const Box222 a = realize_box(r), b = realize_box(back);
    for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(a.table()[i], b.table()[i], 1e-15);
  }
}

TEST(RealizationJson, RejectsNonProjector) {
  Json j = io::realization_to_json(tsirelson_realization());
  j["alice_outcome0_projectors"][0][0][0] = Json::array({0.5, 0.0});
  EXPECT_ANY_THROW(io::realization_from_json(j));
}

TEST(WiringJson, RoundTripBothKinds) {
  for (int i = 0; i < 64; ++i) {
    const auto w = SingleCopyWiring::from_index(i);
    const auto back = io::wiring_from_json(io::wiring_to_json(w));
    ASSERT_TRUE(std::holds_alternative<SingleCopyWiring>(back));
    EXPECT_EQ(std::get<SingleCopyWiring>(back), w);
  }
  const TwoCopyWiring two{TwoCopyLocalWiring::from_index(835), TwoCopyLocalWiring::from_index(40000)};
  const auto back = io::wiring_from_json(Json::parse(io::wiring_to_json(two).dump()));
  ASSERT_TRUE(std::holds_alternative<TwoCopyWiring>(back));
  EXPECT_EQ(std::get<TwoCopyWiring>(back).alice, two.alice);
  EXPECT_EQ(std::get<TwoCopyWiring>(back).bob, two.bob);
}

TEST(WiringJson, RejectsInconsistentIndexAndUnknownKind) {
  Json j = io::wiring_to_json(SingleCopyWiring::from_index(5));
  j["index"] = 6;
  EXPECT_THROW(io::wiring_from_json(j), io::FormatError);
  j["kind"] = "three-copy";
  EXPECT_THROW(io::wiring_from_json(j), io::FormatError);
}

TEST(Files, MissingAndMalformed) {
  const auto dir = std::filesystem::temp_directory_path() / "boxforge_io_test";
  std::filesystem::create_directories(dir);
  EXPECT_THROW(io::read_json_file((dir / "absent.json").string()), io::IoError);
  const auto bad = (dir / "bad.json").string();
  io::write_text_file(bad, "{\"schema\": ");
  EXPECT_THROW(io::read_json_file(bad), io::FormatError);
  EXPECT_THROW(io::write_text_file((dir / "no_such_dir" / "x.json").string(), "{}"), io::IoError);
  std::filesystem::remove_all(dir);
}

TEST(ReportCsv, FlattensEvidence) {
  VerificationReport r;
  r.claim = ClaimId::AppendixA;
  r.verdict = Verdict::Supported;
  r.evidence = {{"counts", {{"wirings", 64}}}};
  const std::string csv = io::report_to_csv(r);
  EXPECT_NE(csv.find("claim_id,AppendixA"), std::string::npos);
  EXPECT_NE(csv.find("verdict,supported"), std::string::npos);
  EXPECT_NE(csv.find("64"), std::string::npos);
}

TEST(ScanCsv, HeaderListsObjectives) {
  ScanReport report;
  report.objectives = {"chsh", "chsh_alpha=0.5"};
  SearchResult r;
  r.chsh = 2.5;
  r.chsh_alpha = {2.6};
  report.frontier = {r};
  report.top = {{r}, {r}};
  const std::string csv = io::scan_report_to_csv(report, {0.5});
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "wiring_index_A,wiring_index_B,chsh,chsh_alpha_0.5,hardy_q,set");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  const Json j = io::scan_report_to_json(report);
  EXPECT_EQ(j.at("schema"), io::kScanSchema);
}

}  // namespace
}  // namespace boxforge
