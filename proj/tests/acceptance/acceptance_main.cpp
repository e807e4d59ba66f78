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

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.  BOXFORGE_JOBS sets the worker count (default: all cores).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "boxforge/analysis.hpp"
#include "boxforge/distill.hpp"
#include "boxforge/quantum.hpp"
#include "boxforge/wiring.hpp"

namespace {

using namespace boxforge;

struct Outcome {
  bool pass = false;
  std::string detail;
};

unsigned worker_count() {
  if (const char* env = std::getenv("BOXFORGE_JOBS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Outcome vertex_algebra() {
  const auto local = local_labels();
  const auto nonlocal = nonlocal_labels();
  bool ok = local.size() == 16 && nonlocal.size() == 8;
  double worst_nl = 0.0, worst_local = -1e300;
  for (const auto& l : nonlocal) {
    const double v = evaluate(BellFunctional::chsh_variant(l.bits[0], l.bits[1], l.bits[2]), make_vertex(l));
    worst_nl = std::max(worst_nl, std::abs(v - 4.0));
  }
  for (const auto& l : local)
    for (const auto& f : chsh_variants()) worst_local = std::max(worst_local, evaluate(f, make_vertex(l)));
  ok = ok && worst_nl == 0.0 && worst_local <= 2.0;
  return {ok, fmt("%zu local + %zu nonlocal vertices; max |CHSH_v - 4| on nonlocal = %g; max variant on local = %g",
                  local.size(), nonlocal.size(), worst_nl, worst_local)};
}

Outcome tsirelson() {
  const double v = evaluate(BellFunctional::chsh(), realize_box(tsirelson_realization()));
  return {std::abs(v - 2.0 * std::numbers::sqrt2) <= 1e-9, fmt("CHSH = %.15f", v)};
}

Outcome hardy_optimum(unsigned jobs) {
  const HardyOptimum opt = hardy_optimal_realization(200, 0, jobs);
  const double target = (5.0 * std::sqrt(5.0) - 11.0) / 2.0;
  const bool ok = std::abs(opt.q - target) <= 1e-6 && opt.stats.max_zero() <= 1e-9;
  return {ok, fmt("q = %.12f (target %.12f, |diff| = %.2e), max zero cell = %.2e, a = %.9f", opt.q, target,
                  std::abs(opt.q - target), opt.stats.max_zero(), opt.a)};
}

Outcome appendix_a() {
  const VerificationReport r = verify_appendix_a();
  std::ostringstream os;
  os << "wirings = " << r.evidence["wiring_count"] << ", fixers per vertex = " << r.evidence["fixers_per_vertex"].dump()
     << ", NL000 set matches reference = " << r.evidence["nl000_fixers_match_reference"];
  return {r.verdict == Verdict::Supported, os.str()};
}

Outcome table1_demo() {
  const Box222 pr = make_vertex(VertexLabel::nonlocal(0, 0, 0));
  const LocalityVerdict forbidden = demonstrate_forbidden_map(pr);
  const LocalityVerdict allowed = demonstrate_allowed_map(pr);
  bool witness_ok = false;
  if (forbidden.is_local()) {
    double total = 0.0;
    for (double w : forbidden.witness().weights) total += w;
    witness_ok = std::abs(total - 1.0) <= 1e-9;
  }
  return {forbidden.is_local() && witness_ok && !allowed.is_local(),
          fmt("forbidden map child: %s (witness weights sum to 1: %s); allowed map child: %s",
              forbidden.is_local() ? "local" : "nonlocal", witness_ok ? "yes" : "no",
              allowed.is_local() ? "local" : "nonlocal")};
}

Outcome lemma1() {
  const VerificationReport r = verify_lemma1(100, {2, 4, 8}, 0);
  const double worst = r.evidence.value("max_deviation", -1.0);
  return {r.verdict == Verdict::Supported && worst >= 0.0 && worst < 1e-12,
          fmt("max deviation over 100 pairs x d in {2,4,8} = %.2e", worst)};
}

Outcome prop1(unsigned jobs) {
  Prop1Options o;
  o.n_max = 2;
  o.restarts = 200;
  o.jobs = jobs;
  const VerificationReport r = verify_prop1(o);
  std::ostringstream os;
  bool ok = r.verdict == Verdict::Supported;
  for (const auto& e : r.evidence["per_n"]) {
    const double q = e["best_q"].get<double>();
    ok = ok && q <= 1e-6;
    os << "n=" << e["n"] << " best_q=" << fmt("%.2e", q) << "; ";
  }
  const double control = r.evidence["control"]["best_q"].get<double>();
  ok = ok && std::abs(control - kHardyMaximum) <= 1e-4;
  os << "control q=" << fmt("%.9f", control);
  return {ok, os.str()};
}

Outcome spectrum_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 999; ++i) grid.push_back(i / 1000.0);
  grid.push_back(0.5 + 1e-9);
  int mismatches = 0, flat_checks = 0;
  for (double s : grid) {
    for (int n = 1; n <= 20; ++n) {
      const bool closed_form = s != 0.5;
      if (spectrum_obstruction(s, n) != closed_form) ++mismatches;
      if (n <= 10) {
        const auto spec = tensor_power_spectrum(s, n);
        const bool flat = std::abs(spec.front() - spec.back()) <= 1e-12 * spec.front();
        if (flat == closed_form) ++mismatches;
        ++flat_checks;
      }
    }
  }
  return {mismatches == 0, fmt("%zu s-values x n=1..20, %d spectrum cross-checks, %d mismatches", grid.size(),
                               flat_checks, mismatches)};
}

Outcome tilted_grid(unsigned jobs) {
  double worst = 0.0, worst_printed = 0.0, worst_theta = 0.0, printed_alpha_gap = 0.0;
  const int points = 50;
  for (int i = 0; i < points; ++i) {
    const double theta = (i + 0.5) * (std::numbers::pi / 4.0) / points;
    const TiltedRealization tr = tilted_realization(theta);
    const double attained = evaluate(BellFunctional::tilted_chsh(tr.alpha), realize_box(tr.realization));
    const BellSeesawResult opt = seesaw_bell(BellFunctional::tilted_chsh(tr.alpha), 20, 1000 + i, jobs);
    const double gap = std::abs(attained - opt.value);
    if (gap > worst) {
      worst = gap;
      worst_theta = theta;
    }
    worst_printed = std::max(worst_printed, std::abs(2.0 * std::sqrt(tr.alpha * tr.alpha + 1.0) - attained));
    const BellFunctional printed = BellFunctional::tilted_chsh(tr.printed_alpha);
    const double printed_attained = evaluate(printed, realize_box(tr.realization));
    printed_alpha_gap =
        std::max(printed_alpha_gap, seesaw_bell(printed, 20, 2000 + i, jobs).value - printed_attained);
  }
  return {worst <= 1e-6,
          fmt("max |attained - seesaw| = %.2e (theta = %.4f); printed bound 2 sqrt(alpha^2 + 1) differs from the "
              "attained value by up to %.4f; with alpha = 2/sqrt(1 + tan^2 2theta) the realization falls short of "
              "the optimum by up to %.2e",
              worst, worst_theta, worst_printed, printed_alpha_gap)};
}

Outcome scan_closure(unsigned jobs) {
  ScanOptions o;
  o.jobs = jobs;
  o.top_k = 1;
  const ScanReport qt = scan(realize_box(tsirelson_realization()), o);
  const ScanReport pr = scan(make_vertex(VertexLabel::nonlocal(0, 0, 0)), o);
  const double reference_total = std::pow(82.0, 4);
  const double ours = static_cast<double>(qt.classes_per_party) * static_cast<double>(qt.classes_per_party);
  const bool ok = qt.maxima[0] <= 2.0 * std::numbers::sqrt2 + 1e-9 && qt.maxima[0] >= 2.0 * std::numbers::sqrt2 - 1e-9 &&
                  std::abs(pr.maxima[0] - 4.0) <= 1e-12;
  return {ok, fmt("P_T max CHSH = %.15f, PR max CHSH = %.15f, %zu classes per party (%.0f pairs; 82^4 = %.0f), isa %s",
                  qt.maxima[0], pr.maxima[0], qt.classes_per_party, ours, reference_total, qt.isa.c_str())};
}

}  // namespace

int main() {
  const unsigned jobs = worker_count();
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "vertex algebra", vertex_algebra},
      {2, "Tsirelson realization", tsirelson},
      {3, "Hardy optimum", [&] { return hardy_optimum(jobs); }},
      {4, "single-copy wiring counts", appendix_a},
      {5, "forbidden / allowed output maps", table1_demo},
      {6, "ricochet identity", lemma1},
      {7, "no Hardy correlation from maximally entangled copies", [&] { return prop1(jobs); }},
      {8, "spectrum obstruction grid", spectrum_grid},
      {9, "tilted CHSH realizations", [&] { return tilted_grid(jobs); }},
      {10, "two-copy scan closure", [&] { return scan_closure(jobs); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %2d  %-52s %8.2f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("[INFO] criterion 11  asymptotic all-n statements: excluded (finite-n evidence in criteria 7 and 8)\n");
  std::printf("%d of %zu criteria passed (jobs = %u)\n", static_cast<int>(criteria.size()) - failures, criteria.size(),
              jobs);
  return failures == 0 ? 0 : 1;
}
