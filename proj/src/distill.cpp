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

#include "boxforge/distill.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "boxforge/lp.hpp"
#include "boxforge/wiring.hpp"
#include "json.hpp"

namespace boxforge {
namespace {

using Key = std::int64_t;

int kernel_index(int x, int y, int a, int b) { return (2 * x + a) * 4 + 2 * y + b; }

Key quantize(double v) { return std::llround(v / kObjectiveResolution); }

struct ObjectiveSet {
  std::vector<std::string> names;
  std::vector<double> weights;  // linear objectives, kernel layout, 16 per objective
  std::vector<double> offsets;
  bool hardy = false;

  std::size_t linear() const { return offsets.size(); }
  std::size_t size() const { return offsets.size() + (hardy ? 1 : 0); }
};

std::string alpha_name(double alpha) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "chsh_alpha=%.17g", alpha);
  return buf;
}

ObjectiveSet make_objectives(const std::vector<double>& alphas, bool hardy) {
  ObjectiveSet set;
  const auto add = [&](const std::string& name, const BellFunctional& f) {
    const auto w = f.table_weights();
    set.names.push_back(name);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) set.weights.push_back(0.0);
    double* dst = set.weights.data() + set.weights.size() - 16;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) dst[kernel_index(x, y, a, b)] = w[box_index(x, y, a, b)];
    set.offsets.push_back(f.offset);
  };
  add("chsh", BellFunctional::chsh());
  for (double alpha : alphas) add(alpha_name(alpha), BellFunctional::tilted_chsh(alpha));
  if (hardy) set.names.push_back("hardy_q");
  set.hardy = hardy;
  return set;
}

double kernel_hardy(const double* child) {
  const double z = std::max({child[kernel_index(0, 1, 0, 0)], child[kernel_index(1, 0, 0, 0)],
                             child[kernel_index(1, 1, 1, 1)]});
  return z <= kTolZero ? child[kernel_index(0, 0, 0, 0)] : 0.0;
}

// Pareto set over quantized keys, fed in increasing pair order.
class Frontier {
 public:
  explicit Frontier(std::size_t m) : m_(m) {}

  void offer(std::uint64_t pair, const Key* keys) {
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      if (covers(&keys_[i * m_], keys)) return;
    }
    std::size_t out = 0;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      if (covers(keys, &keys_[i * m_])) continue;
      pairs_[out] = pairs_[i];
      std::copy_n(&keys_[i * m_], m_, &keys_[out * m_]);
      ++out;
    }
    pairs_.resize(out);
    keys_.resize(out * m_);
    pairs_.push_back(pair);
    keys_.insert(keys_.end(), keys, keys + m_);
  }

  std::vector<std::uint64_t> pairs_;
  std::vector<Key> keys_;

 private:
  bool covers(const Key* lhs, const Key* rhs) const {
    for (std::size_t j = 0; j < m_; ++j) {
      if (lhs[j] < rhs[j]) return false;
    }
    return true;
  }
  std::size_t m_;
};

// Best k (key, pair) entries: larger key first, smaller pair on ties.
class TopK {
 public:
  explicit TopK(std::size_t k) : k_(k) {}

  void offer(Key key, std::uint64_t pair) {
    if (k_ == 0) return;
    const auto better = [](const std::pair<Key, std::uint64_t>& l, const std::pair<Key, std::uint64_t>& r) {
      return l.first != r.first ? l.first > r.first : l.second < r.second;
    };
    const std::pair<Key, std::uint64_t> entry{key, pair};
    if (items_.size() == k_ && !better(entry, items_.back())) return;
    items_.insert(std::upper_bound(items_.begin(), items_.end(), entry, better), entry);
    if (items_.size() > k_) items_.pop_back();
  }

  std::vector<std::pair<Key, std::uint64_t>> items_;

 private:
  std::size_t k_;
};

struct ChunkResult {
  bool done = false;
  bool resumed = false;
  std::uint64_t pairs = 0;
  std::vector<std::uint64_t> frontier_pairs;
  std::vector<Key> frontier_keys;
  std::vector<std::vector<std::pair<Key, std::uint64_t>>> top;
};

struct ScanContext {
  const ObjectiveSet* objectives = nullptr;
  std::vector<std::uint16_t> reps;
  std::vector<double> rows;    // per class, 4 x 16
  std::vector<double> panels;  // per class, 16 x 4
  std::array<double, 256> parent{};  // [sA][sB]
  simd::Isa isa = simd::Isa::Scalar;
  std::size_t top_k = 0;
};

ChunkResult run_chunk(const ScanContext& ctx, std::size_t begin, std::size_t end) {
  const ObjectiveSet& obj = *ctx.objectives;
  const std::size_t classes = ctx.reps.size();
  const std::size_t m = obj.size(), lin = obj.linear();
  Frontier frontier(m);
  std::vector<TopK> tops(m, TopK(ctx.top_k));
  std::vector<double> children(classes * simd::kChildSize);
  std::vector<double> values(classes * lin);
  std::vector<Key> keys(m);
  ChunkResult out;
  for (std::size_t ia = begin; ia < end; ++ia) {
    std::array<double, 64> v{};
    const double* ra = &ctx.rows[ia * 64];
    for (int r = 0; r < 4; ++r)
      for (int sa = 0; sa < 16; ++sa) {
        const double w = ra[r * 16 + sa];
        if (w == 0.0) continue;
        for (int sb = 0; sb < 16; ++sb) v[r * 16 + sb] += w * ctx.parent[sa * 16 + sb];
      }
    simd::panel_product(ctx.isa, v.data(), ctx.panels.data(), classes, children.data());
    simd::weighted_sums16(ctx.isa, children.data(), classes, obj.weights.data(), lin, values.data());
    for (std::size_t ib = 0; ib < classes; ++ib) {
      for (std::size_t j = 0; j < lin; ++j) keys[j] = quantize(values[ib * lin + j] + obj.offsets[j]);
      if (obj.hardy) keys[lin] = quantize(kernel_hardy(&children[ib * simd::kChildSize]));
      const std::uint64_t pair = ia * classes + ib;
      frontier.offer(pair, keys.data());
      for (std::size_t j = 0; j < m; ++j) tops[j].offer(keys[j], pair);
    }
    out.pairs += classes;
  }
  out.done = true;
  out.frontier_pairs = std::move(frontier.pairs_);
  out.frontier_keys = std::move(frontier.keys_);
  for (auto& t : tops) out.top.push_back(std::move(t.items_));
  return out;
}

std::string config_key(const Box222& parent, const ScanOptions& opt, std::size_t classes) {
  std::ostringstream os;
  os.precision(17);
  os << "parent";
  for (double p : parent.table()) os << ' ' << p;
  os << " alphas";
  for (double a : opt.alphas) os << ' ' << a;
  os << " hardy " << opt.include_hardy << " top_k " << opt.top_k << " chunk " << opt.chunk_classes << " classes "
     << classes;
  return os.str();
}

constexpr const char* kChunkSchema = "boxforge.scan-chunk/1";

std::filesystem::path chunk_path(const std::string& dir, std::size_t chunk) {
  return std::filesystem::path(dir) / ("chunk_" + std::to_string(chunk) + ".json");
}

std::optional<ChunkResult> load_chunk(const std::string& dir, std::size_t chunk, const std::string& config) {
  std::ifstream in(chunk_path(dir, chunk));
  if (!in) return std::nullopt;
  try {
    const auto j = nlohmann::json::parse(in);
    if (j.at("schema") != kChunkSchema || j.at("config") != config || j.at("chunk") != chunk) return std::nullopt;
    ChunkResult r;
    r.done = true;
    r.resumed = true;
    r.pairs = j.at("pairs").get<std::uint64_t>();
    r.frontier_pairs = j.at("frontier_pairs").get<std::vector<std::uint64_t>>();
    r.frontier_keys = j.at("frontier_keys").get<std::vector<Key>>();
    r.top = j.at("top").get<std::vector<std::vector<std::pair<Key, std::uint64_t>>>>();
    return r;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

void save_chunk(const std::string& dir, std::size_t chunk, const std::string& config, const ChunkResult& r) {
  nlohmann::json j;
  j["schema"] = kChunkSchema;
  j["config"] = config;
  j["chunk"] = chunk;
  j["pairs"] = r.pairs;
  j["frontier_pairs"] = r.frontier_pairs;
  j["frontier_keys"] = r.frontier_keys;
  j["top"] = r.top;
  const auto path = chunk_path(dir, chunk);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("scan: cannot write checkpoint " + tmp.string());
    out << j.dump() << '\n';
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

std::vector<double> SearchResult::objectives() const {
  std::vector<double> v{chsh};
  v.insert(v.end(), chsh_alpha.begin(), chsh_alpha.end());
  if (hardy_q) v.push_back(*hardy_q);
  return v;
}

SearchResult evaluate_child(std::uint16_t wiring_a, std::uint16_t wiring_b, const Box222& child,
                            const std::vector<double>& alphas, bool include_hardy) {
  SearchResult r;
  r.wiring_a = wiring_a;
  r.wiring_b = wiring_b;
  r.child = child;
  r.chsh = evaluate(BellFunctional::chsh(), child);
  for (double alpha : alphas) r.chsh_alpha.push_back(evaluate(BellFunctional::tilted_chsh(alpha), child));
  if (include_hardy) {
    const HardyStats s = hardy_stats(child);
    r.hardy_q = s.max_zero() <= kTolZero ? s.q : 0.0;
  }
  return r;
}

ScanReport scan(const Box222& parent, const ScanOptions& options) {
  if (options.top_k < 0) throw std::invalid_argument("scan: top_k must be >= 0");
  if (options.chunk_classes == 0) throw std::invalid_argument("scan: chunk_classes must be >= 1");
  for (double a : options.alphas) {
    if (!std::isfinite(a)) throw std::invalid_argument("scan: alphas must be finite");
  }
  const ObjectiveSet objectives = make_objectives(options.alphas, options.include_hardy);
  const NCopyBox single = NCopyBox::from_box(parent);
  const NCopyBox doubled = tensor(single, single);

  ScanContext ctx;
  ctx.objectives = &objectives;
  ctx.isa = options.isa.value_or(simd::active_isa());
  ctx.top_k = static_cast<std::size_t>(options.top_k);
  for (const auto& c : canonicalize_two_copy(enumerate_two_copy_raw())) ctx.reps.push_back(c.representative);
  const std::size_t classes = ctx.reps.size();
  ctx.rows.resize(classes * 64);
  ctx.panels.resize(classes * 64);
  for (std::size_t i = 0; i < classes; ++i) {
    const auto rows = TwoCopyLocalWiring::from_index(ctx.reps[i]).response_rows();
    std::copy(rows.begin(), rows.end(), &ctx.rows[i * 64]);
    for (int lane = 0; lane < 4; ++lane)
      for (int s = 0; s < 16; ++s) ctx.panels[i * 64 + s * 4 + lane] = rows[lane * 16 + s];
  }
  for (unsigned xs = 0; xs < 4; ++xs)
    for (unsigned as = 0; as < 4; ++as)
      for (unsigned ys = 0; ys < 4; ++ys)
        for (unsigned bs = 0; bs < 4; ++bs) ctx.parent[(xs * 4 + as) * 16 + ys * 4 + bs] = doubled.p(as, bs, xs, ys);

  const std::size_t chunk_count = (classes + options.chunk_classes - 1) / options.chunk_classes;
  const std::string config = config_key(parent, options, classes);
  std::vector<ChunkResult> chunks(chunk_count);
  if (!options.checkpoint_dir.empty()) {
    std::filesystem::create_directories(options.checkpoint_dir);
    for (std::size_t c = 0; c < chunk_count; ++c) {
      if (auto loaded = load_chunk(options.checkpoint_dir, c, config)) chunks[c] = std::move(*loaded);
    }
  }

  const unsigned jobs = std::max(1u, options.jobs);
  const auto worker = [&](unsigned t) {
    for (std::size_t c = t; c < chunk_count; c += jobs) {
      if (chunks[c].done) continue;
      const std::size_t begin = c * options.chunk_classes;
      chunks[c] = run_chunk(ctx, begin, std::min(classes, begin + options.chunk_classes));
      if (!options.checkpoint_dir.empty()) save_chunk(options.checkpoint_dir, c, config, chunks[c]);
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  const std::size_t m = objectives.size();
  Frontier frontier(m);
  std::vector<TopK> tops(m, TopK(ctx.top_k));
  ScanReport report;
  report.objectives = objectives.names;
  report.classes_per_party = classes;
  report.isa = std::string(simd::isa_name(ctx.isa));
  report.chunks_total = chunk_count;
  for (const auto& c : chunks) {
    report.pairs_evaluated += c.pairs;
    report.chunks_resumed += c.resumed ? 1 : 0;
    for (std::size_t i = 0; i < c.frontier_pairs.size(); ++i) frontier.offer(c.frontier_pairs[i], &c.frontier_keys[i * m]);
    for (std::size_t j = 0; j < m; ++j)
      for (const auto& [key, pair] : c.top[j]) tops[j].offer(key, pair);
  }

  const auto materialize = [&](std::uint64_t pair) {
    const std::uint16_t wa = ctx.reps[pair / classes], wb = ctx.reps[pair % classes];
    const Box222 child =
        apply_two_copy(TwoCopyLocalWiring::from_index(wa), TwoCopyLocalWiring::from_index(wb), doubled);
    return evaluate_child(wa, wb, child, options.alphas, options.include_hardy);
  };

  std::vector<std::size_t> order(frontier.pairs_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto l, auto r) { return frontier.pairs_[l] < frontier.pairs_[r]; });
  std::vector<Key> max_keys(m, std::numeric_limits<Key>::min());
  for (std::size_t i : order) {
    for (std::size_t j = 0; j < m; ++j) max_keys[j] = std::max(max_keys[j], frontier.keys_[i * m + j]);
  }
  report.maxima.assign(m, 0.0);
  std::vector<bool> max_set(m, false);
  for (std::size_t i : order) {
    SearchResult r = materialize(frontier.pairs_[i]);
    r.pareto = true;
    const auto values = r.objectives();
    bool all = true;
    for (std::size_t j = 0; j < m; ++j) {
      const bool at_max = frontier.keys_[i * m + j] == max_keys[j];
      all = all && at_max;
      if (at_max && !max_set[j]) {
        report.maxima[j] = values[j];
        max_set[j] = true;
      }
    }
    if (all && !report.gold) report.gold = r;
    report.frontier.push_back(std::move(r));
  }
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<SearchResult> list;
    for (const auto& [key, pair] : tops[j].items_) {
      SearchResult r = materialize(pair);
      r.pareto = std::binary_search(report.frontier.begin(), report.frontier.end(), r, [](const auto& l, const auto& rr) {
        return std::pair(l.wiring_a, l.wiring_b) < std::pair(rr.wiring_a, rr.wiring_b);
      });
      list.push_back(std::move(r));
    }
    report.top.push_back(std::move(list));
  }
  return report;
}

std::vector<SearchResult> scan_stochastic(const Box222& parent, const std::vector<double>& alphas, int support,
                                          const ScanOptions& options) {
  if (support < 1) throw std::invalid_argument("scan_stochastic: support must be >= 1");
  ScanOptions opt = options;
  opt.alphas = alphas;
  opt.include_hardy = false;
  const ScanReport report = scan(parent, opt);
  if (support == 1 || alphas.empty()) return report.frontier;

  const auto& det = report.frontier;
  const std::size_t n = det.size();
  std::vector<SearchResult> candidates(det.begin(), det.end());
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    for (const auto& level : det) {
      lp::Problem prob;
      prob.rows = 2;
      prob.cols = n + 1;
      prob.a.assign(prob.rows * prob.cols, 0.0);
      prob.c.assign(prob.cols, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        prob.at(0, i) = det[i].chsh;
        prob.at(1, i) = 1.0;
        prob.c[i] = det[i].chsh_alpha[j];
      }
      prob.at(0, n) = -1.0;
      prob.b = {level.chsh, 1.0};
      const lp::Solution sol = lp::solve(prob);
      if (sol.status != lp::Status::Optimal) continue;
      std::vector<MixtureTerm> terms;
      Box222::Table t{};
      for (std::size_t i = 0; i < n; ++i) {
        if (sol.x[i] <= 1e-12) continue;
        terms.push_back(MixtureTerm{sol.x[i], det[i].wiring_a, det[i].wiring_b});
        for (std::size_t e = 0; e < 16; ++e) t[e] += sol.x[i] * det[i].child.table()[e];
      }
      if (terms.size() < 2 || terms.size() > static_cast<std::size_t>(support)) continue;
      double total = 0.0;
      for (const auto& term : terms) total += term.weight;
      for (auto& term : terms) term.weight /= total;
      for (double& v : t) v /= total;
      SearchResult r = evaluate_child(terms.front().wiring_a, terms.front().wiring_b, Box222::from_table(t), alphas, false);
      r.mixture = std::move(terms);
      candidates.push_back(std::move(r));
    }
  }

  const std::size_t m = 1 + alphas.size();
  Frontier frontier(m);
  std::vector<Key> keys(m);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto values = candidates[i].objectives();
    for (std::size_t k = 0; k < m; ++k) keys[k] = quantize(values[k]);
    frontier.offer(i, keys.data());
  }
  std::vector<std::uint64_t> kept = frontier.pairs_;
  std::sort(kept.begin(), kept.end());
  std::vector<SearchResult> out;
  for (auto i : kept) {
    SearchResult r = candidates[i];
    r.pareto = true;
    out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.chsh > r.chsh; });
  return out;
}

}  // namespace boxforge
