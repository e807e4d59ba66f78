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

#include "boxforge/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace boxforge::io {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_schema(const Json& j, const char* schema) {
  if (!j.is_object() || !j.contains("schema") || j["schema"] != schema) {
    throw FormatError(std::string("expected a document with schema \"") + schema + "\"");
  }
}

template <class F>
auto guarded(const char* what, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

Json complex_json(cplx c) { return Json::array({c.real(), c.imag()}); }

cplx complex_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_json(const CMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from(const Json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) throw FormatError("projector has the wrong number of rows");
  CMatrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    if (!j[r].is_array() || j[r].size() != dim) throw FormatError("projector has the wrong number of columns");
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = complex_from(j[r][c]);
  }
  return m;
}

const char* input_name(InputMap m) { return m == InputMap::Identity ? "identity" : "flip"; }

InputMap input_from(const std::string& s) {
  if (s == "identity") return InputMap::Identity;
  if (s == "flip") return InputMap::Flip;
  throw FormatError("input map must be \"identity\" or \"flip\"");
}

OutputMap output_from(const std::string& s) {
  if (s == "f1") return OutputMap::F1;
  if (s == "f2") return OutputMap::F2;
  if (s == "f3") return OutputMap::F3;
  if (s == "f4") return OutputMap::F4;
  throw FormatError("output map must be one of f1, f2, f3, f4");
}

Json two_copy_party_json(const TwoCopyLocalWiring& w) {
  Json branches = Json::array();
  for (const auto& b : w.branch) {
    branches.push_back(Json{{"order", b.order},
                            {"first_input", b.first_input},
                            {"second_input", Json::array({b.second_input[0], b.second_input[1]})},
                            {"final_output", Json::array({b.final_output[0], b.final_output[1], b.final_output[2],
                                                          b.final_output[3]})}});
  }
  return Json{{"index", w.index()}, {"branches", branches}};
}

std::uint8_t bit_from(const Json& j) {
  const int v = j.get<int>();
  if (v != 0 && v != 1) throw FormatError("truth-table entries must be 0 or 1");
  return static_cast<std::uint8_t>(v);
}

TwoCopyLocalWiring two_copy_party_from(const Json& j) {
  const Json& branches = j.at("branches");
  if (!branches.is_array() || branches.size() != 2) throw FormatError("two-copy wirings have two branches");
  TwoCopyLocalWiring w;
  for (int x = 0; x < 2; ++x) {
    const Json& b = branches[x];
    auto& out = w.branch[x];
    out.order = bit_from(b.at("order"));
    out.first_input = bit_from(b.at("first_input"));
    const Json& si = b.at("second_input");
    const Json& fo = b.at("final_output");
    if (si.size() != 2 || fo.size() != 4) throw FormatError("second_input has 2 bits and final_output 4");
    for (int k = 0; k < 2; ++k) out.second_input[k] = bit_from(si[k]);
    for (int k = 0; k < 4; ++k) out.final_output[k] = bit_from(fo[k]);
  }
  if (j.contains("index") && j["index"].get<int>() != w.index()) {
    throw FormatError("two-copy wiring index does not match its truth table");
  }
  return w;
}

void flatten(const Json& j, const std::string& path, std::ostringstream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, os);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
  } else {
    std::string value = j.is_number_float() ? num(j.get<double>()) : (j.is_string() ? j.get<std::string>() : j.dump());
    if (value.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : value) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      value = quoted + "\"";
    }
    os << path << ',' << value << '\n';
  }
}

}  // namespace

Json box_to_json(const Box222& box) {
  return Json{{"schema", kBoxSchema}, {"layout", "p(ab|xy) at index 8x+4y+2a+b"}, {"table", box.table()}};
}

Box222 box_from_json(const Json& j) {
  require_schema(j, kBoxSchema);
  return guarded("box", [&] {
    const Json& t = j.at("table");
    if (!t.is_array() || t.size() != 16) throw FormatError("box table must have 16 entries");
    Box222::Table table{};
    for (std::size_t i = 0; i < 16; ++i) {
      if (!t[i].is_number()) throw FormatError("box table entries must be numbers");
      table[i] = t[i].get<double>();
    }
    return Box222::from_table(table);
  });
}

std::string box_to_csv(const Box222& box) {
  std::ostringstream os;
  os << "x,y,a,b,p\n";
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) os << x << ',' << y << ',' << a << ',' << b << ',' << num(box.p(a, b, x, y)) << '\n';
  return os.str();
}

Json realization_to_json(const QuantumRealization& r) {
  Json amps = Json::array();
  for (const auto& c : r.state.amplitudes()) amps.push_back(complex_json(c));
  const auto party = [](const std::array<ProjectiveMeasurement, 2>& ms) {
    Json out = Json::array();
    for (const auto& m : ms) out.push_back(matrix_json(m.projector(0)));
    return out;
  };
  return Json{{"schema", kRealizationSchema},
              {"dims", Json::array({r.state.dim_a(), r.state.dim_b()})},
              {"state", amps},
              {"alice_outcome0_projectors", party(r.alice)},
              {"bob_outcome0_projectors", party(r.bob)}};
}

QuantumRealization realization_from_json(const Json& j) {
  require_schema(j, kRealizationSchema);
  return guarded("realization", [&] {
    const Json& dims = j.at("dims");
    if (!dims.is_array() || dims.size() != 2) throw FormatError("dims must be [dim_a, dim_b]");
    const auto da = dims[0].get<std::size_t>(), db = dims[1].get<std::size_t>();
    const Json& amps = j.at("state");
    if (!amps.is_array() || amps.size() != da * db) throw FormatError("state has the wrong number of amplitudes");
    CVector v;
    for (const auto& c : amps) v.push_back(complex_from(c));
    try {
      const auto party = [&](const Json& list, std::size_t d) {
        if (!list.is_array() || list.size() != 2) throw FormatError("each party has two measurements");
        return std::array<ProjectiveMeasurement, 2>{ProjectiveMeasurement::from_projector(matrix_from(list[0], d)),
                                                    ProjectiveMeasurement::from_projector(matrix_from(list[1], d))};
      };
      QuantumRealization r{PureState::from_amplitudes(da, db, v), party(j.at("alice_outcome0_projectors"), da),
                           party(j.at("bob_outcome0_projectors"), db)};
      r.validate();
      return r;
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("realization: ") + e.what());
    }
  });
}

Json wiring_to_json(const SingleCopyWiring& w) {
  const auto party = [](const LocalRelabeling& r) {
    return Json{{"input", input_name(r.input)}, {"output", "f" + std::to_string(static_cast<int>(r.output) + 1)}};
  };
  return Json{{"schema", kWiringSchema},
              {"kind", "single-copy"},
              {"index", w.index()},
              {"alice", party(w.alice)},
              {"bob", party(w.bob)},
              {"description", w.describe()}};
}

Json wiring_to_json(const TwoCopyWiring& w) {
  return Json{{"schema", kWiringSchema},
              {"kind", "two-copy"},
              {"alice", two_copy_party_json(w.alice)},
              {"bob", two_copy_party_json(w.bob)}};
}

std::variant<SingleCopyWiring, TwoCopyWiring> wiring_from_json(const Json& j) {
  require_schema(j, kWiringSchema);
  return guarded("wiring", [&]() -> std::variant<SingleCopyWiring, TwoCopyWiring> {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "single-copy") {
      const auto party = [](const Json& p) {
        return LocalRelabeling{input_from(p.at("input").get<std::string>()),
                               output_from(p.at("output").get<std::string>())};
      };
      SingleCopyWiring w{party(j.at("alice")), party(j.at("bob"))};
      if (j.contains("index") && j["index"].get<int>() != w.index()) {
        throw FormatError("single-copy wiring index does not match its maps");
      }
      return w;
    }
    if (kind == "two-copy") return TwoCopyWiring{two_copy_party_from(j.at("alice")), two_copy_party_from(j.at("bob"))};
    throw FormatError("wiring kind must be \"single-copy\" or \"two-copy\"");
  });
}

Json search_result_to_json(const SearchResult& r) {
  Json j{{"wiring_index_a", r.wiring_a},
         {"wiring_index_b", r.wiring_b},
         {"chsh", r.chsh},
         {"chsh_alpha", r.chsh_alpha},
         {"hardy_q", r.hardy_q ? Json(*r.hardy_q) : Json(nullptr)},
         {"pareto", r.pareto},
         {"child", r.child.table()}};
  if (!r.mixture.empty()) {
    Json terms = Json::array();
    for (const auto& t : r.mixture) {
      terms.push_back(Json{{"weight", t.weight}, {"wiring_index_a", t.wiring_a}, {"wiring_index_b", t.wiring_b}});
    }
    j["mixture"] = terms;
  }
  return j;
}

Json scan_report_to_json(const ScanReport& report) {
  Json frontier = Json::array();
  for (const auto& r : report.frontier) frontier.push_back(search_result_to_json(r));
  Json top = Json::object();
  for (std::size_t k = 0; k < report.top.size(); ++k) {
    Json list = Json::array();
    for (const auto& r : report.top[k]) list.push_back(search_result_to_json(r));
    top[report.objectives[k]] = list;
  }
  Json maxima = Json::object();
  for (std::size_t k = 0; k < report.maxima.size(); ++k) maxima[report.objectives[k]] = report.maxima[k];
  return Json{{"schema", kScanSchema},
              {"objectives", report.objectives},
              {"classes_per_party", report.classes_per_party},
              {"pairs_evaluated", report.pairs_evaluated},
              {"maxima", maxima},
              {"gold_protocol_found", report.gold.has_value()},
              {"gold", report.gold ? search_result_to_json(*report.gold) : Json(nullptr)},
              {"frontier", frontier},
              {"top", top},
              {"isa", report.isa},
              {"chunks_total", report.chunks_total},
              {"chunks_resumed", report.chunks_resumed}};
}

namespace {

void result_row(std::ostringstream& os, const SearchResult& r, const std::string& set) {
  os << r.wiring_a << ',' << r.wiring_b << ',' << num(r.chsh);
  for (double v : r.chsh_alpha) os << ',' << num(v);
  os << ',' << (r.hardy_q ? num(*r.hardy_q) : std::string()) << ',' << set << '\n';
}

std::string header(const std::vector<double>& alphas) {
  std::string h = "wiring_index_A,wiring_index_B,chsh";
  for (double a : alphas) h += ",chsh_alpha_" + num(a);
  return h + ",hardy_q,set\n";
}

}  // namespace

std::string scan_report_to_csv(const ScanReport& report, const std::vector<double>& alphas) {
  std::ostringstream os;
  os << header(alphas);
  for (const auto& r : report.frontier) result_row(os, r, "frontier");
  for (std::size_t k = 0; k < report.top.size(); ++k)
    for (const auto& r : report.top[k]) result_row(os, r, "top:" + report.objectives[k]);
  return os.str();
}

std::string search_results_to_csv(const std::vector<SearchResult>& results, const std::vector<double>& alphas) {
  std::ostringstream os;
  os << header(alphas);
  for (const auto& r : results) result_row(os, r, r.mixture.empty() ? "frontier" : "mixture");
  return os.str();
}

std::string report_to_csv(const VerificationReport& report) {
  std::ostringstream os;
  os << "key,value\n";
  os << "claim_id," << to_string(report.claim) << '\n';
  os << "verdict," << to_string(report.verdict) << '\n';
  flatten(report.parameters, "parameters", os);
  flatten(report.evidence, "evidence", os);
  return os.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace boxforge::io
