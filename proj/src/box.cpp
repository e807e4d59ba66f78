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

#include "boxforge/box.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "boxforge/lp.hpp"

namespace boxforge {
namespace {

int sign_of(int bit) { return (bit & 1) ? -1 : 1; }

void require_bit(int value, const char* what) {
  if (value != 0 && value != 1) {
    throw std::invalid_argument(std::string("vertex label bit out of range: ") + what);
  }
}

TableDiagnostics diagnose_flat(std::span<const double> table, unsigned n_strings) {
  // Works for any copy count: table indexed ((xs*N + ys)*N + as)*N + bs.
  const unsigned N = n_strings;
  auto at = [&](unsigned xs, unsigned ys, unsigned as, unsigned bs) {
    return table[((static_cast<std::size_t>(xs) * N + ys) * N + as) * N + bs];
  };
  TableDiagnostics d;
  d.min_entry = *std::min_element(table.begin(), table.end());
  for (unsigned xs = 0; xs < N; ++xs) {
    for (unsigned ys = 0; ys < N; ++ys) {
      double total = 0.0;
      for (unsigned as = 0; as < N; ++as)
        for (unsigned bs = 0; bs < N; ++bs) total += at(xs, ys, as, bs);
      d.normalization = std::max(d.normalization, std::abs(total - 1.0));
    }
  }
  // Alice's marginal against Bob's input, and vice versa.
  for (unsigned xs = 0; xs < N; ++xs) {
    for (unsigned as = 0; as < N; ++as) {
      double ref = 0.0;
      for (unsigned bs = 0; bs < N; ++bs) ref += at(xs, 0, as, bs);
      for (unsigned ys = 1; ys < N; ++ys) {
        double m = 0.0;
        for (unsigned bs = 0; bs < N; ++bs) m += at(xs, ys, as, bs);
        d.signaling = std::max(d.signaling, std::abs(m - ref));
      }
    }
  }
  for (unsigned ys = 0; ys < N; ++ys) {
    for (unsigned bs = 0; bs < N; ++bs) {
      double ref = 0.0;
      for (unsigned as = 0; as < N; ++as) ref += at(0, ys, as, bs);
      for (unsigned xs = 1; xs < N; ++xs) {
        double m = 0.0;
        for (unsigned as = 0; as < N; ++as) m += at(xs, ys, as, bs);
        d.signaling = std::max(d.signaling, std::abs(m - ref));
      }
    }
  }
  return d;
}

void validate(const TableDiagnostics& d, const char* context) {
  std::ostringstream why;
  if (!(d.min_entry >= -kTolNorm)) why << " negative entry " << d.min_entry << ';';
  if (!(d.normalization <= kTolNorm)) why << " normalization off by " << d.normalization << ';';
  if (!(d.signaling <= kTolNs)) why << " signaling " << d.signaling << ';';
  const std::string msg = why.str();
  if (!msg.empty()) throw InvalidBox(std::string(context) + ":" + msg);
}

}  // namespace

TableDiagnostics diagnose(std::span<const double, 16> table) {
  return diagnose_flat(std::span<const double>(table.data(), table.size()), 2);
}

Box222 Box222::from_table(const Table& table) {
  for (double v : table) {
    if (!std::isfinite(v) || v > 1.0 + kTolNorm) throw InvalidBox("box table: entry outside [0,1]");
  }
  validate(diagnose(table), "box table");
  return Box222(table);
}

Box222 Box222::uniform() {
  Table t;
  t.fill(0.25);
  return Box222(t);
}

double Box222::correlator(int x, int y) const {
  double e = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) e += sign_of(a ^ b) * p(a, b, x, y);
  return e;
}

double Box222::alice_marginal(int x) const {
  double m = 0.0;
  for (int y = 0; y < 2; ++y)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) m += sign_of(a) * p(a, b, x, y);
  return 0.5 * m;
}

double Box222::bob_marginal(int y) const {
  double m = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) m += sign_of(b) * p(a, b, x, y);
  return 0.5 * m;
}

Box222 mix(const Box222& first, const Box222& second, double weight) {
  if (!(weight >= 0.0 && weight <= 1.0)) throw std::invalid_argument("mix: weight outside [0,1]");
  Box222::Table t;
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = weight * first.table()[i] + (1.0 - weight) * second.table()[i];
  }
  return Box222::from_table(t);
}

VertexLabel VertexLabel::local(int alpha, int beta, int gamma, int eta) {
  require_bit(alpha, "alpha");
  require_bit(beta, "beta");
  require_bit(gamma, "gamma");
  require_bit(eta, "eta");
  return VertexLabel{VertexKind::Local,
                     {static_cast<std::uint8_t>(alpha), static_cast<std::uint8_t>(beta),
                      static_cast<std::uint8_t>(gamma), static_cast<std::uint8_t>(eta)}};
}

VertexLabel VertexLabel::nonlocal(int alpha, int beta, int gamma) {
  require_bit(alpha, "alpha");
  require_bit(beta, "beta");
  require_bit(gamma, "gamma");
  return VertexLabel{VertexKind::Nonlocal,
                     {static_cast<std::uint8_t>(alpha), static_cast<std::uint8_t>(beta),
                      static_cast<std::uint8_t>(gamma), 0}};
}

std::string VertexLabel::name() const {
  std::string s = kind == VertexKind::Local ? "L" : "NL";
  const int count = kind == VertexKind::Local ? 4 : 3;
  for (int i = 0; i < count; ++i) s += static_cast<char>('0' + bits[i]);
  return s;
}

VertexLabel VertexLabel::parse(const std::string& name) {
  auto digits = [&](std::size_t start, std::size_t count) {
    if (name.size() != start + count) throw std::invalid_argument("bad vertex label: " + name);
    std::array<int, 4> out{};
    for (std::size_t i = 0; i < count; ++i) {
      const char c = name[start + i];
      if (c != '0' && c != '1') throw std::invalid_argument("bad vertex label: " + name);
      out[i] = c - '0';
    }
    return out;
  };
  if (name.rfind("NL", 0) == 0) {
    const auto d = digits(2, 3);
    return nonlocal(d[0], d[1], d[2]);
  }
  if (name.rfind("L", 0) == 0) {
    const auto d = digits(1, 4);
    return local(d[0], d[1], d[2], d[3]);
  }
  throw std::invalid_argument("bad vertex label: " + name);
}

std::vector<VertexLabel> local_labels() {
  std::vector<VertexLabel> out;
  for (int i = 0; i < 16; ++i) out.push_back(VertexLabel::local(i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1));
  return out;
}

std::vector<VertexLabel> nonlocal_labels() {
  std::vector<VertexLabel> out;
  for (int i = 0; i < 8; ++i) out.push_back(VertexLabel::nonlocal(i >> 2 & 1, i >> 1 & 1, i & 1));
  return out;
}

Box222 make_vertex(const VertexLabel& label) {
  Box222::Table t{};
  const int al = label.bits[0], be = label.bits[1], ga = label.bits[2], et = label.bits[3];
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          double v;
          if (label.kind == VertexKind::Local) {
            v = (a == ((al * x) ^ be) && b == ((ga * y) ^ et)) ? 1.0 : 0.0;
          } else {
            v = ((a ^ b) == ((x * y) ^ (al * x) ^ (be * y) ^ ga)) ? 0.5 : 0.0;
          }
          t[box_index(x, y, a, b)] = v;
        }
  return Box222::from_table(t);
}

BellFunctional BellFunctional::chsh() { return chsh_variant(0, 0, 0); }

BellFunctional BellFunctional::chsh_variant(int alpha, int beta, int gamma) {
  BellFunctional f;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) f.correlators[x * 2 + y] = sign_of((x * y) ^ (alpha * x) ^ (beta * y) ^ gamma);
  return f;
}

BellFunctional BellFunctional::tilted_chsh(double alpha) {
  BellFunctional f = chsh();
  f.alice[0] = alpha;
  return f;
}

std::array<double, 16> BellFunctional::table_weights() const {
  std::array<double, 16> w{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          w[box_index(x, y, a, b)] = correlators[x * 2 + y] * sign_of(a ^ b) +
                                     0.5 * alice[x] * sign_of(a) + 0.5 * bob[y] * sign_of(b);
        }
  return w;
}

BellFunctional BellFunctional::from_table_weights(std::span<const double, 16> w, double constant) {
  BellFunctional f;
  f.offset = constant;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const double v = 0.25 * w[box_index(x, y, a, b)];
          f.offset += v;
          f.alice[x] += sign_of(a) * v;
          f.bob[y] += sign_of(b) * v;
          f.correlators[x * 2 + y] += sign_of(a ^ b) * v;
        }
  return f;
}

double BellFunctional::coefficient_norm() const {
  double s = 0.0;
  for (double c : correlators) s += c * c;
  for (double m : alice) s += m * m;
  for (double m : bob) s += m * m;
  return std::sqrt(s);
}

bool BellFunctional::is_finite() const {
  auto finite = [](double v) { return std::isfinite(v); };
  return std::all_of(correlators.begin(), correlators.end(), finite) &&
         std::all_of(alice.begin(), alice.end(), finite) &&
         std::all_of(bob.begin(), bob.end(), finite) && std::isfinite(offset);
}

std::vector<BellFunctional> chsh_variants() {
  std::vector<BellFunctional> out;
  for (int i = 0; i < 8; ++i) out.push_back(BellFunctional::chsh_variant(i >> 2 & 1, i >> 1 & 1, i & 1));
  return out;
}

double evaluate(const BellFunctional& f, const Box222& box) {
  if (!f.is_finite()) throw std::invalid_argument("evaluate: non-finite functional");
  double v = f.offset;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) v += f.correlators[x * 2 + y] * box.correlator(x, y);
  for (int x = 0; x < 2; ++x) v += f.alice[x] * box.alice_marginal(x);
  for (int y = 0; y < 2; ++y) v += f.bob[y] * box.bob_marginal(y);
  return v;
}

double local_bound(const BellFunctional& f) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& label : local_labels()) best = std::max(best, evaluate(f, make_vertex(label)));
  return best;
}

double HardyStats::max_zero() const { return std::max({z01, z10, z11}); }

bool HardyStats::hardy_nonlocal(double tol_zero) const { return q > tol_zero && max_zero() <= tol_zero; }

HardyStats hardy_stats(const Box222& box) {
  return HardyStats{box.p(0, 0, 0, 0), box.p(0, 0, 0, 1), box.p(0, 0, 1, 0), box.p(1, 1, 1, 1)};
}

namespace {

lp::Problem membership_problem(std::span<const double, 16> table) {
  const auto labels = local_labels();
  lp::Problem prob;
  prob.rows = 17;
  prob.cols = labels.size();
  prob.a.assign(prob.rows * prob.cols, 0.0);
  prob.b.assign(prob.rows, 0.0);
  for (std::size_t v = 0; v < labels.size(); ++v) {
    const auto vertex = make_vertex(labels[v]);
    for (std::size_t e = 0; e < 16; ++e) prob.at(e, v) = vertex.table()[e];
    prob.at(16, v) = 1.0;
  }
  for (std::size_t e = 0; e < 16; ++e) prob.b[e] = table[e];
  prob.b[16] = 1.0;
  return prob;
}

LocalWitness witness_from(const lp::Solution& sol) {
  LocalWitness w;
  double total = 0.0;
  for (std::size_t v = 0; v < 16; ++v) total += sol.x[v];
  for (std::size_t v = 0; v < 16; ++v) w.weights[v] = sol.x[v] / total;
  return w;
}

}  // namespace

LocalityVerdict local_membership(std::span<const double, 16> table) {
  const auto diag = diagnose(table);
  if (!(diag.min_entry >= -kTolNorm && diag.normalization <= kTolNorm && diag.signaling <= kTolNs)) {
    throw InvalidBox("local_membership: ill-conditioned input (not a valid no-signaling box)");
  }
  Box222::Table copy;
  std::copy(table.begin(), table.end(), copy.begin());
  const Box222 box = Box222::from_table(copy);

  const auto prob = membership_problem(table);
  const auto sol = lp::solve(prob, kTolLp);
  if (sol.status == lp::Status::Optimal) return LocalityVerdict(witness_from(sol));

  for (const auto& f : chsh_variants()) {
    const double value = evaluate(f, box);
    if (value > 2.0 + kTolLp) return LocalityVerdict(NonlocalCertificate{f, 2.0, value, "chsh-variant"});
  }

  // Farkas vector: y.vertex + y_norm <= 0 on every vertex, > 0 on the box.
  std::array<double, 16> w{};
  std::copy_n(sol.farkas.begin(), 16, w.begin());
  BellFunctional f = BellFunctional::from_table_weights(w, sol.farkas[16]);
  const double norm = f.coefficient_norm();
  if (norm > 0.0) {
    for (double& c : f.correlators) c /= norm;
    for (double& m : f.alice) m /= norm;
    for (double& m : f.bob) m /= norm;
    f.offset /= norm;
  }
  const double bound = local_bound(f);
  const double value = evaluate(f, box);
  if (value > bound + kTolLp) return LocalityVerdict(NonlocalCertificate{f, bound, value, "lp-dual"});

  // Every facet is satisfied to within kTolLp: the box sits on the local
  // polytope's boundary up to rounding.
  const auto relaxed = lp::solve(prob, 1e3 * kTolLp);
  if (relaxed.status == lp::Status::Optimal) return LocalityVerdict(witness_from(relaxed));
  return LocalityVerdict(NonlocalCertificate{f, bound, value, "lp-dual"});
}

LocalityVerdict local_membership(const Box222& box) {
  return local_membership(std::span<const double, 16>(box.table()));
}

NCopyBox NCopyBox::from_table(int copies, std::vector<double> table) {
  if (copies < 1 || copies > 5) throw InvalidBox("n-copy box: copy count must be in 1..5");
  const std::size_t N = std::size_t{1} << copies;
  if (table.size() != N * N * N * N) throw InvalidBox("n-copy box: table size does not match copy count");
  for (double v : table) {
    if (!std::isfinite(v) || v > 1.0 + kTolNorm) throw InvalidBox("n-copy box: entry outside [0,1]");
  }
  validate(diagnose_flat(table, static_cast<unsigned>(N)), "n-copy box");
  return NCopyBox(copies, std::move(table));
}

NCopyBox NCopyBox::from_box(const Box222& box) {
  return NCopyBox(1, std::vector<double>(box.table().begin(), box.table().end()));
}

double NCopyBox::p(unsigned as, unsigned bs, unsigned xs, unsigned ys) const {
  const std::size_t N = strings();
  return table_[((xs * N + ys) * N + as) * N + bs];
}

Box222 NCopyBox::marginal(int copy) const {
  if (copy < 0 || copy >= copies_) throw std::out_of_range("NCopyBox::marginal: copy index");
  const unsigned N = static_cast<unsigned>(strings());
  Box222::Table t{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (unsigned as = 0; as < N; ++as)
        for (unsigned bs = 0; bs < N; ++bs) {
          const int a = (as >> copy) & 1, b = (bs >> copy) & 1;
          t[box_index(x, y, a, b)] += p(as, bs, static_cast<unsigned>(x) << copy, static_cast<unsigned>(y) << copy);
        }
  return Box222::from_table(t);
}

double NCopyBox::sub_party_signaling() const {
  const unsigned N = static_cast<unsigned>(strings());
  double worst = 0.0;
  for (int k = 0; k < copies_; ++k) {
    const unsigned bit = 1u << k;
    for (unsigned xs = 0; xs < N; ++xs) {
      if (xs & bit) continue;
      for (unsigned ys = 0; ys < N; ++ys)
        for (unsigned as = 0; as < N; ++as) {
          if (as & bit) continue;
          for (unsigned bs = 0; bs < N; ++bs) {
            const double m0 = p(as, bs, xs, ys) + p(as | bit, bs, xs, ys);
            const double m1 = p(as, bs, xs | bit, ys) + p(as | bit, bs, xs | bit, ys);
            worst = std::max(worst, std::abs(m0 - m1));
          }
        }
    }
    for (unsigned ys = 0; ys < N; ++ys) {
      if (ys & bit) continue;
      for (unsigned xs = 0; xs < N; ++xs)
        for (unsigned bs = 0; bs < N; ++bs) {
          if (bs & bit) continue;
          for (unsigned as = 0; as < N; ++as) {
            const double m0 = p(as, bs, xs, ys) + p(as, bs | bit, xs, ys);
            const double m1 = p(as, bs, xs, ys | bit) + p(as, bs | bit, xs, ys | bit);
            worst = std::max(worst, std::abs(m0 - m1));
          }
        }
    }
  }
  return worst;
}

NCopyBox tensor(const NCopyBox& first, const NCopyBox& second) {
  const int n1 = first.copies(), n2 = second.copies();
  const int n = n1 + n2;
  if (n > 5) throw std::invalid_argument("tensor: more than 5 copies");
  const unsigned N1 = 1u << n1, N2 = 1u << n2, N = 1u << n;
  std::vector<double> table(static_cast<std::size_t>(N) * N * N * N);
  for (unsigned x1 = 0; x1 < N1; ++x1)
    for (unsigned x2 = 0; x2 < N2; ++x2)
      for (unsigned y1 = 0; y1 < N1; ++y1)
        for (unsigned y2 = 0; y2 < N2; ++y2)
          for (unsigned a1 = 0; a1 < N1; ++a1)
            for (unsigned a2 = 0; a2 < N2; ++a2)
              for (unsigned b1 = 0; b1 < N1; ++b1)
                for (unsigned b2 = 0; b2 < N2; ++b2) {
                  const unsigned xs = x1 | (x2 << n1), ys = y1 | (y2 << n1);
                  const unsigned as = a1 | (a2 << n1), bs = b1 | (b2 << n1);
                  table[((static_cast<std::size_t>(xs) * N + ys) * N + as) * N + bs] =
                      first.p(a1, b1, x1, y1) * second.p(a2, b2, x2, y2);
                }
  return NCopyBox::from_table(n, std::move(table));
}

Fractions fractions(const Box222& box, double alpha, double tilted_bound) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("fractions: alpha must be nonnegative");
  const auto chsh = BellFunctional::chsh();
  const auto tilted = BellFunctional::tilted_chsh(alpha);
  return Fractions{(kTsirelsonBound - evaluate(chsh, box)) / chsh.coefficient_norm(),
                   (tilted_bound - evaluate(tilted, box)) / tilted.coefficient_norm()};
}

}  // namespace boxforge
