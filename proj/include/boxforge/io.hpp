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

#ifndef BOXFORGE_IO_HPP_
#define BOXFORGE_IO_HPP_

// JSON and CSV encodings of boxes, realizations, wirings and scan results.
// Every document carries a "schema" tag; readers reject unknown tags.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "boxforge/analysis.hpp"
#include "boxforge/distill.hpp"
#include "boxforge/quantum.hpp"
#include "boxforge/wiring.hpp"
#include "json.hpp"

namespace boxforge::io {

using Json = nlohmann::ordered_json;

/// Malformed documents: bad JSON, missing fields, wrong schema or shape.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Files that cannot be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kBoxSchema = "boxforge.box/1";
inline constexpr const char* kRealizationSchema = "boxforge.realization/1";
inline constexpr const char* kWiringSchema = "boxforge.wiring/1";
inline constexpr const char* kScanSchema = "boxforge.scan/1";

Json box_to_json(const Box222& box);
/// Throws FormatError on shape problems and InvalidBox on invariant violations.
Box222 box_from_json(const Json& j);
std::string box_to_csv(const Box222& box);

Json realization_to_json(const QuantumRealization& r);
QuantumRealization realization_from_json(const Json& j);

Json wiring_to_json(const SingleCopyWiring& w);
Json wiring_to_json(const TwoCopyWiring& w);
/// Either kind, dispatched on the "kind" field.
std::variant<SingleCopyWiring, TwoCopyWiring> wiring_from_json(const Json& j);

Json search_result_to_json(const SearchResult& r);
Json scan_report_to_json(const ScanReport& report);
/// One row per stored pair: wiring_index_A, wiring_index_B, chsh,
/// chsh_alpha columns, hardy_q, set ("frontier" or "top:<objective>").
std::string scan_report_to_csv(const ScanReport& report, const std::vector<double>& alphas);
std::string search_results_to_csv(const std::vector<SearchResult>& results, const std::vector<double>& alphas);

/// claim_id, verdict, then one row per leaf of the evidence tree.
std::string report_to_csv(const VerificationReport& report);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace boxforge::io

#endif  // BOXFORGE_IO_HPP_
