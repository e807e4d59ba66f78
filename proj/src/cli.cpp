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

#include "boxforge/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "boxforge/analysis.hpp"
#include "boxforge/distill.hpp"
#include "boxforge/io.hpp"
#include "boxforge/quantum.hpp"
#include "boxforge/wiring.hpp"

namespace boxforge::cli {
namespace {

using io::Json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

unsigned default_jobs() {
  if (const char* env = std::getenv("BOXFORGE_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

struct Common {
  std::string output;
  std::string format = "json";
  std::uint64_t seed = 0;
  unsigned jobs = default_jobs();
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-o,--output", c.output, "Write the result to this path instead of standard output");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  cmd->add_option("--seed", c.seed, "Seed for randomized steps")->capture_default_str();
  cmd->add_option("--jobs", c.jobs, "Worker threads (default: $BOXFORGE_JOBS or 1)")->check(CLI::PositiveNumber);
}

class Context {
 public:
  Context(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  void emit(const Common& c, const Json& json, const std::function<std::string()>& csv) const {
    const std::string text = c.format == "csv" ? csv() : json.dump(2) + "\n";
    if (c.output.empty()) {
      out_ << text;
    } else {
      io::write_text_file(c.output, text);
    }
  }

  std::ostream& out() const { return out_; }
  std::ostream& err() const { return err_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

BellFunctional parse_functional(const std::string& name) {
  if (name == "chsh") return BellFunctional::chsh();
  const auto colon = name.find(':');
  const std::string head = name.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : name.substr(colon + 1);
  if (head == "chsh-variant" && arg.size() == 3 && arg.find_first_not_of("01") == std::string::npos) {
    return BellFunctional::chsh_variant(arg[0] - '0', arg[1] - '0', arg[2] - '0');
  }
  if (head == "tilted" && !arg.empty()) {
    try {
      std::size_t used = 0;
      const double alpha = std::stod(arg, &used);
      if (used == arg.size() && std::isfinite(alpha)) return BellFunctional::tilted_chsh(alpha);
    } catch (const std::exception&) {
    }
  }
  throw UsageError("unknown functional \"" + name + "\" (chsh, chsh-variant:ABG, tilted:ALPHA, hardy-q)");
}

Json verdict_json(const LocalityVerdict& v) {
  if (v.is_local()) {
    Json weights = Json::object();
    const auto labels = local_labels();
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (v.witness().weights[i] > 0.0) weights[labels[i].name()] = v.witness().weights[i];
    }
    return Json{{"local", true}, {"weights", weights}};
  }
  const auto& c = v.certificate();
  const auto& f = c.functional;
  return Json{{"local", false},
              {"certificate", Json{{"source", c.source},
                                   {"correlators", f.correlators},
                                   {"alice", f.alice},
                                   {"bob", f.bob},
                                   {"offset", f.offset},
                                   {"local_bound", c.local_bound},
                                   {"value", c.value}}}};
}

Box222 make_box(const std::string& kind, const std::string& label, double theta, double a) {
  if (kind == "vertex") return make_vertex(VertexLabel::parse(label));
  if (kind == "uniform") return Box222::uniform();
  if (kind == "tsirelson") return realize_box(tsirelson_realization());
  if (kind == "hardy") return realize_box(hardy_closed_form_realization(a));
  if (kind == "tilted") return realize_box(tilted_realization(theta).realization);
  throw UsageError("unknown box kind " + kind);
}

const double kDefaultHardyA = std::sqrt((3.0 - std::sqrt(5.0)) / 2.0);

std::vector<double> default_theta_grid(int points) {
  std::vector<double> grid;
  for (int k = 1; k <= points; ++k) grid.push_back(k * (std::numbers::pi / 4.0) / (points + 1));
  return grid;
}

std::size_t per_input_classes(const std::vector<TwoCopyLocalWiring>& raw) {
  std::vector<bool> seen(65536, false);
  std::size_t count = 0;
  for (const auto& w : raw) {
    const std::uint32_t half = w.fingerprint() & 0xffffu;
    if (!seen[half]) {
      seen[half] = true;
      ++count;
    }
  }
  return count;
}

int verdict_exit(Verdict v) { return v == Verdict::Supported ? kExitOk : kExitVerificationFailed; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"boxforge: two-party Bell boxes, quantum realizations, wirings and distillation scans", "boxforge"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  Context ctx(out, err);
  Common common;
  std::function<int()> action;

  // box
  auto* box = app.add_subcommand("box", "Construct, validate and evaluate boxes");
  box->require_subcommand(1);
  std::string input, kind = "vertex", label = "NL000", functional = "chsh";
  double theta = std::numbers::pi / 8.0, visibility = 1.0, hardy_a = kDefaultHardyA;

  auto* box_make = box->add_subcommand("make", "Write a named box");
  add_common(box_make, common);
  box_make->add_option("--kind", kind, "vertex, uniform, tsirelson, hardy or tilted")
      ->check(CLI::IsMember({"vertex", "uniform", "tsirelson", "hardy", "tilted"}))
      ->capture_default_str();
  box_make->add_option("--label", label, "Vertex name such as L0110 or NL101")->capture_default_str();
  box_make->add_option("--theta", theta, "Angle for --kind tilted")->capture_default_str();
  box_make->add_option("--a", hardy_a, "State parameter for --kind hardy")->capture_default_str();
  box_make->add_option("--visibility", visibility, "Mix v * box + (1 - v) * uniform")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  box_make->callback([&] {
    action = [&] {
      const Box222 b = mix(make_box(kind, label, theta, hardy_a), Box222::uniform(), visibility);
      ctx.emit(common, io::box_to_json(b), [&] { return io::box_to_csv(b); });
      return kExitOk;
    };
  });

  auto* box_check = box->add_subcommand("check", "Validate a box file and decide locality");
  add_common(box_check, common);
  box_check->add_option("-i,--input", input, "Box JSON file")->required();
  box_check->callback([&] {
    action = [&] {
      const Box222 b = io::box_from_json(io::read_json_file(input));
      const auto d = diagnose(b.table());
      const HardyStats h = hardy_stats(b);
      const Json doc{{"valid", true},
                     {"diagnostics", Json{{"min_entry", d.min_entry},
                                          {"normalization", d.normalization},
                                          {"signaling", d.signaling}}},
                     {"chsh", evaluate(BellFunctional::chsh(), b)},
                     {"hardy", Json{{"q", h.q}, {"z01", h.z01}, {"z10", h.z10}, {"z11", h.z11},
                                    {"hardy_nonlocal", h.hardy_nonlocal()}}},
                     {"locality", verdict_json(local_membership(b))}};
      ctx.emit(common, doc, [&] {
        return "key,value\nvalid,true\nlocal," + std::string(doc["locality"]["local"].get<bool>() ? "true" : "false") +
               "\nchsh," + num(doc["chsh"].get<double>()) + "\nhardy_q," + num(h.q) + "\n";
      });
      return kExitOk;
    };
  });

  auto* box_eval = box->add_subcommand("eval", "Evaluate a Bell functional or the Hardy probability");
  add_common(box_eval, common);
  box_eval->add_option("-i,--input", input, "Box JSON file")->required();
  box_eval->add_option("--functional", functional, "chsh, chsh-variant:ABG, tilted:ALPHA or hardy-q")
      ->capture_default_str();
  box_eval->callback([&] {
    action = [&] {
      const Box222 b = io::box_from_json(io::read_json_file(input));
      const double value = functional == "hardy-q" ? hardy_stats(b).q : evaluate(parse_functional(functional), b);
      ctx.out() << num(value) << '\n';
      if (!common.output.empty()) {
        ctx.emit(common, Json{{"functional", functional}, {"value", value}},
                 [&] { return "functional,value\n" + functional + "," + num(value) + "\n"; });
      }
      return kExitOk;
    };
  });

  // realize
  auto* realize = app.add_subcommand("realize", "Quantum realizations");
  add_common(realize, common);
  std::string realize_kind = "tsirelson";
  int restarts = 200;
  realize->add_option("--kind", realize_kind, "tsirelson, hardy (optimized), hardy-closed or tilted")
      ->check(CLI::IsMember({"tsirelson", "hardy", "hardy-closed", "tilted"}))
      ->capture_default_str();
  realize->add_option("--theta", theta, "Angle for --kind tilted")->capture_default_str();
  realize->add_option("--a", hardy_a, "State parameter for --kind hardy-closed")->capture_default_str();
  realize->add_option("--restarts", restarts, "Seesaw restarts for --kind hardy")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  realize->callback([&] {
    action = [&] {
      std::optional<QuantumRealization> r;
      Json info = Json::object();
      if (realize_kind == "tsirelson") {
        r = tsirelson_realization();
      } else if (realize_kind == "hardy-closed") {
        r = hardy_closed_form_realization(hardy_a);
        info["a"] = hardy_a;
      } else if (realize_kind == "hardy") {
        const HardyOptimum opt = hardy_optimal_realization(restarts, common.seed, common.jobs);
        r = opt.realization;
        info = Json{{"a", opt.a}, {"q", opt.q}, {"restarts", restarts}, {"seed", common.seed}};
      } else {
        const TiltedRealization tr = tilted_realization(theta);
        r = tr.realization;
        info = Json{{"theta", theta},
                    {"alpha", tr.alpha},
                    {"printed_alpha", tr.printed_alpha},
                    {"tilted_quantum_max", tilted_chsh_analytic_max(tr.alpha)}};
      }
      const Box222 b = realize_box(*r);
      Json doc = io::realization_to_json(*r);
      doc["kind"] = realize_kind;
      doc["info"] = info;
      doc["box"] = io::box_to_json(b);
      ctx.emit(common, doc, [&] { return io::box_to_csv(b); });
      return kExitOk;
    };
  });

  // wire
  auto* wire = app.add_subcommand("wire", "Enumerate, canonicalize and apply wirings");
  wire->require_subcommand(1);
  std::string wire_kind = "single", wiring_path;
  auto* wire_enum = wire->add_subcommand("enumerate", "List single-copy wirings or raw two-copy tables");
  add_common(wire_enum, common);
  wire_enum->add_option("--kind", wire_kind, "single or two-copy")
      ->check(CLI::IsMember({"single", "two-copy"}))
      ->capture_default_str();
  wire_enum->callback([&] {
    action = [&] {
      if (wire_kind == "single") {
        const auto ws = enumerate_single_copy();
        Json list = Json::array();
        for (const auto& w : ws) list.push_back(io::wiring_to_json(w));
        ctx.emit(common, Json{{"kind", "single-copy"}, {"count", ws.size()}, {"wirings", list}}, [&] {
          std::string s = "index,description\n";
          for (const auto& w : ws) s += std::to_string(w.index()) + ",\"" + w.describe() + "\"\n";
          return s;
        });
      } else {
        const auto ws = enumerate_two_copy_raw();
        Json indices = Json::array();
        for (const auto& w : ws) indices.push_back(w.index());
        ctx.emit(common,
                 Json{{"kind", "two-copy"},
                      {"count", ws.size()},
                      {"bit_order", "per input x: order, first_input, second_input[0..1], final_output[0..3]; x = 0 "
                                    "in the high byte"},
                      {"indices", indices}},
                 [&] {
                   std::string s = "index,bits\n";
                   for (const auto& w : ws) {
                     std::string bits;
                     for (int k = 15; k >= 0; --k) bits += ((w.index() >> k) & 1) ? '1' : '0';
                     s += std::to_string(w.index()) + "," + bits + "\n";
                   }
                   return s;
                 });
      }
      return kExitOk;
    };
  });

  auto* wire_canon = wire->add_subcommand("canonicalize", "Group two-copy wirings into extensional classes");
  add_common(wire_canon, common);
  wire_canon->callback([&] {
    action = [&] {
      const auto raw = enumerate_two_copy_raw();
      const auto classes = canonicalize_two_copy(raw);
      std::vector<TwoCopyLocalWiring> swapped;
      for (const auto& w : raw) swapped.push_back(swap_copies(w));
      const std::size_t swapped_count = canonicalize_two_copy(swapped).size();
      const std::uint64_t c = classes.size();
      const std::uint64_t reference = 82ull * 82 * 82 * 82;
      Json list = Json::array();
      for (const auto& k : classes) {
        list.push_back(Json{{"representative", k.representative}, {"fingerprint", k.fingerprint}, {"size", k.size}});
      }
      const Json doc{{"raw_per_party", raw.size()},
                     {"classes_per_party", c},
                     {"classes_per_input", per_input_classes(raw)},
                     {"classes_after_copy_swap", swapped_count},
                     {"canonical_pairs", c * c},
                     {"canonical_pairs_squared", c * c * c * c},
                     {"reference_count", reference},
                     {"canonical_pairs_equals_reference", c * c == reference},
                     {"canonical_pairs_squared_equals_reference", c * c * c * c == reference},
                     {"classes", list}};
      ctx.emit(common, doc, [&] {
        std::string s = "representative,fingerprint,size\n";
        for (const auto& k : classes) {
          s += std::to_string(k.representative) + "," + std::to_string(k.fingerprint) + "," + std::to_string(k.size) + "\n";
        }
        return s;
      });
      return kExitOk;
    };
  });

  auto* wire_apply = wire->add_subcommand("apply", "Apply a wiring file to a box (two-copy wirings use box (x) box)");
  add_common(wire_apply, common);
  wire_apply->add_option("-w,--wiring", wiring_path, "Wiring JSON file")->required();
  wire_apply->add_option("-i,--input", input, "Box JSON file")->required();
  wire_apply->callback([&] {
    action = [&] {
      const auto w = io::wiring_from_json(io::read_json_file(wiring_path));
      const Box222 parent = io::box_from_json(io::read_json_file(input));
      const NCopyBox one = NCopyBox::from_box(parent);
      const Box222 child = std::holds_alternative<SingleCopyWiring>(w)
                               ? apply_single_copy(std::get<SingleCopyWiring>(w), parent)
                               : apply_two_copy(std::get<TwoCopyWiring>(w).alice, std::get<TwoCopyWiring>(w).bob,
                                                tensor(one, one));
      ctx.emit(common, io::box_to_json(child), [&] { return io::box_to_csv(child); });
      return kExitOk;
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Run the claim verifiers (exit 1 unless supported)");
  verify->require_subcommand(1);
  int n_max = 0, trials = 100, theta_points = 50;
  std::vector<std::size_t> dims{2, 4, 8};
  std::vector<double> thetas;

  const auto single_report = [&](const VerificationReport& r) {
    ctx.emit(common, r.to_json(), [&] { return io::report_to_csv(r); });
    return verdict_exit(r.verdict);
  };

  auto* v_prop1 = verify->add_subcommand("prop1", "Seesaw search for Hardy correlations on maximally entangled states");
  add_common(v_prop1, common);
  v_prop1->add_option("--n-max", n_max, "Largest copy number n (default 2)")->check(CLI::Range(1, 5));
  v_prop1->add_option("--restarts", restarts, "Seesaw restarts per n")->check(CLI::PositiveNumber)->capture_default_str();
  v_prop1->callback([&] {
    action = [&] {
      return single_report(verify_prop1(Prop1Options{n_max ? n_max : 2, restarts, common.seed, common.jobs, {}}));
    };
  });

  auto* v_prop2 = verify->add_subcommand("prop2", "Spectrum obstruction for the Hardy-optimal state");
  add_common(v_prop2, common);
  v_prop2->add_option("--n-max", n_max, "Largest copy number n (default 20)")->check(CLI::PositiveNumber);
  v_prop2->add_option("--restarts", restarts, "Seesaw restarts for the Hardy optimum")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  v_prop2->callback([&] {
    action = [&] { return single_report(verify_prop2(n_max ? n_max : 20, common.seed, restarts, common.jobs)); };
  });

  auto* v_thm2 = verify->add_subcommand("theorem2", "Spectrum obstructions for tilted-CHSH boxes");
  add_common(v_thm2, common);
  v_thm2->add_option("--n-max", n_max, "Largest copy number n (default 20)")->check(CLI::PositiveNumber);
  v_thm2->add_option("--theta", thetas, "Explicit angles in (0, pi/4)");
  v_thm2->add_option("--theta-points", theta_points, "Size of the default uniform grid")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  v_thm2->callback([&] {
    action = [&] {
      return single_report(verify_theorem2(thetas.empty() ? default_theta_grid(theta_points) : thetas,
                                           n_max ? n_max : 20));
    };
  });

  auto* v_lemma1 = verify->add_subcommand("lemma1", "Ricochet identity on random operators");
  add_common(v_lemma1, common);
  v_lemma1->add_option("--trials", trials, "Random pairs per dimension")->check(CLI::PositiveNumber)->capture_default_str();
  v_lemma1->add_option("--dims", dims, "Dimensions to test")->capture_default_str();
  v_lemma1->callback([&] { action = [&] { return single_report(verify_lemma1(trials, dims, common.seed)); }; });

  auto* v_appa = verify->add_subcommand("appendix-a", "Single-copy wiring counts");
  add_common(v_appa, common);
  v_appa->callback([&] { action = [&] { return single_report(verify_appendix_a()); }; });

  auto* v_all = verify->add_subcommand("all", "Run every verifier and write one report per claim into --output");
  add_common(v_all, common);
  v_all->add_option("--restarts", restarts, "Seesaw restarts")->check(CLI::PositiveNumber)->capture_default_str();
  v_all->callback([&] {
    action = [&] {
      const std::string dir = common.output.empty() ? "reports" : common.output;
      std::filesystem::create_directories(dir);
      const HardyOptimum optimum = hardy_optimal_realization(restarts, common.seed, common.jobs);
      std::vector<VerificationReport> reports;
      reports.push_back(verify_prop1(Prop1Options{2, restarts, common.seed, common.jobs, optimum.realization.state}));
      reports.push_back(verify_prop2(20, common.seed, restarts, common.jobs, optimum));
      reports.push_back(verify_theorem1(reports[0], reports[1]));
      reports.push_back(verify_theorem2(default_theta_grid(50), 20));
      reports.push_back(verify_lemma1(100, {2, 4, 8}, common.seed));
      reports.push_back(verify_appendix_a());
      bool all = true;
      for (const auto& r : reports) {
        const std::string path = (std::filesystem::path(dir) / (to_string(r.claim) + "." + common.format)).string();
        io::write_text_file(path, common.format == "csv" ? io::report_to_csv(r) : r.to_json().dump(2) + "\n");
        ctx.out() << to_string(r.claim) << ": " << to_string(r.verdict) << " -> " << path << '\n';
        all = all && r.verdict == Verdict::Supported;
      }
      return all ? kExitOk : kExitVerificationFailed;
    };
  });

  // distill
  auto* distill = app.add_subcommand("distill", "Two-copy distillation search");
  distill->require_subcommand(1);
  auto* d_scan = distill->add_subcommand("scan", "Exhaustive scan over canonical wiring pairs on box (x) box");
  add_common(d_scan, common);
  ScanOptions scan_opt;
  std::string simd_name = "auto";
  int mixture_support = 1;
  d_scan->add_option("-i,--input", input, "Parent box JSON file")->required();
  d_scan->add_option("--alpha", scan_opt.alphas, "Tilted-CHSH weights to add as objectives");
  d_scan->add_option("--top-k", scan_opt.top_k, "Results kept per objective")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  d_scan->add_flag("--hardy", scan_opt.include_hardy, "Add the Hardy probability as an objective");
  d_scan->add_option("--checkpoint-dir", scan_opt.checkpoint_dir, "Directory for resumable per-chunk results");
  d_scan->add_option("--simd", simd_name, "Kernel: auto, scalar or avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}))
      ->capture_default_str();
  d_scan->add_option("--mixture-support", mixture_support, "Allow convex mixtures of up to this many children")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  d_scan->callback([&] {
    action = [&] {
      const Box222 parent = io::box_from_json(io::read_json_file(input));
      scan_opt.jobs = common.jobs;
      if (simd_name != "auto") {
        scan_opt.isa = simd::parse_isa(simd_name);
        if (scan_opt.isa == simd::Isa::Avx2 && !simd::avx2_available()) {
          throw UsageError("AVX2 kernels are not available on this machine");
        }
      }
      if (mixture_support > 1) {
        const auto results = scan_stochastic(parent, scan_opt.alphas, mixture_support, scan_opt);
        Json list = Json::array();
        for (const auto& r : results) list.push_back(io::search_result_to_json(r));
        ctx.emit(common, Json{{"schema", "boxforge.mixtures/1"}, {"mixture_support", mixture_support}, {"results", list}},
                 [&] { return io::search_results_to_csv(results, scan_opt.alphas); });
      } else {
        const ScanReport report = scan(parent, scan_opt);
        ctx.emit(common, io::scan_report_to_json(report),
                 [&] { return io::scan_report_to_csv(report, scan_opt.alphas); });
      }
      return kExitOk;
    };
  });

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const io::FormatError& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const io::IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidBox& e) {
    err << "error: invalid box: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace boxforge::cli
