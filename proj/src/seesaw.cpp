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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>
#include <functional>
#include <numeric>

#include "boxforge/quantum.hpp"

namespace boxforge {
namespace {

using Rng = std::mt19937_64;

Rng restart_rng(std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  return Rng(seq);
}

// Runs body(r) for r in [0, count) on up to `jobs` threads.  Results must be
// written to per-index slots so the outcome does not depend on scheduling.
template <class Body>
void parallel_for(int count, unsigned jobs, Body body) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max(count, 1))));
  if (jobs == 1) {
    for (int r = 0; r < count; ++r) body(r);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&, t] {
      for (int r = static_cast<int>(t); r < count; r += static_cast<int>(jobs)) body(r);
    });
  }
  for (auto& th : pool) th.join();
}

// <psi| P (x) B |psi> = Tr(P * a_side(B))
CMatrix a_side(const CMatrix& psi, const CMatrix& on_b) { return psi * on_b.transpose() * psi.adjoint(); }
// <psi| A (x) Q |psi> = Tr(Q * b_side(A))
CMatrix b_side(const CMatrix& psi, const CMatrix& on_a) { return psi.transpose() * on_a.transpose() * psi.conjugate(); }

CMatrix hermitian_part(const CMatrix& m) {
  CMatrix h = m + m.adjoint();
  h *= 0.5;
  return h;
}

// Smallest projector of rank 1..d-1 maximizing Tr(P M): eigenvalues within
// rounding of zero are left out.
CMatrix best_projector(const CMatrix& m) {
  const auto eig = eigh(hermitian_part(m));
  const std::size_t d = eig.values.size();
  double scale = 0.0;
  for (double v : eig.values) scale = std::max(scale, std::abs(v));
  const double floor = 1e-12 * scale;
  std::size_t best_rank = 1;
  while (best_rank + 1 < d && eig.values[d - 1 - best_rank] > floor) ++best_rank;
  std::vector<std::size_t> cols;
  for (std::size_t r = 0; r < best_rank; ++r) cols.push_back(d - 1 - r);
  return projector_from_columns(eig.vectors, cols);
}

CMatrix random_projector(std::size_t d, Rng& rng) {
  std::uniform_int_distribution<std::size_t> rank_dist(1, d - 1);
  const std::size_t rank = rank_dist(rng);
  const CMatrix u = haar_unitary(d, rng);
  std::vector<std::size_t> cols(rank);
  for (std::size_t k = 0; k < rank; ++k) cols[k] = k;
  return projector_from_columns(u, cols);
}

struct HardyPoint {
  CMatrix p0, p1, q0, q1;  // outcome-0 projectors of X0, X1, Y0, Y1
};

QuantumRealization to_realization(const PureState& state, const HardyPoint& pt) {
  return QuantumRealization{state,
                            {ProjectiveMeasurement::from_projector(pt.p0), ProjectiveMeasurement::from_projector(pt.p1)},
                            {ProjectiveMeasurement::from_projector(pt.q0), ProjectiveMeasurement::from_projector(pt.q1)}};
}

HardyStats point_stats(const CMatrix& psi, const HardyPoint& pt) {
  const auto tr = [](const CMatrix& p, const CMatrix& m) { return (p * m).trace().real(); };
  const std::size_t da = psi.rows(), db = psi.cols();
  HardyStats s;
  s.q = tr(pt.p0, a_side(psi, pt.q0));
  s.z01 = tr(pt.p0, a_side(psi, pt.q1));
  s.z10 = tr(pt.p1, a_side(psi, pt.q0));
  s.z11 = tr(CMatrix::identity(da) - pt.p1, a_side(psi, CMatrix::identity(db) - pt.q1));
  return s;
}

double penalized(const HardyStats& s, double kappa) { return s.q - kappa * (s.z01 + s.z10 + s.z11); }

// Projector onto the eigenvectors of m with eigenvalue clearly above zero.
CMatrix positive_projector(const CMatrix& m) {
  const auto eig = eigh(hermitian_part(m));
  double scale = 0.0;
  for (double v : eig.values) scale = std::max(scale, std::abs(v));
  std::vector<std::size_t> cols;
  for (std::size_t k = 0; k < eig.values.size(); ++k)
    if (eig.values[k] > 1e-12 * scale && eig.values[k] > 0.0) cols.push_back(k);
  return cols.empty() ? CMatrix(m.rows(), m.cols()) : projector_from_columns(eig.vectors, cols);
}

constexpr double kChainSupport = 1e-12;

// Exactly feasible point grown from X0 alone: Y1 avoids the support X0
// leaves on B (z01 = 0), X1 covers what Y1's complement needs (z11 = 0), and
// Y0 is the best projector orthogonal to X1's image (z10 = 0).
HardyPoint chain_from_p0(const CMatrix& psi, const CMatrix& p0) {
  const std::size_t db = psi.cols();
  HardyPoint pt;
  pt.p0 = p0;
  pt.q1 = CMatrix::identity(db) - support_projector(hermitian_part(b_side(psi, p0)), kChainSupport);
  pt.p1 = support_projector(hermitian_part(a_side(psi, CMatrix::identity(db) - pt.q1)), kChainSupport);
  const CMatrix keep = CMatrix::identity(db) - support_projector(hermitian_part(b_side(psi, pt.p1)), kChainSupport);
  pt.q0 = positive_projector(keep * hermitian_part(b_side(psi, p0)) * keep);
  return pt;
}

// Mirror image of chain_from_p0, grown from Y0.
HardyPoint chain_from_q0(const CMatrix& psi, const CMatrix& q0) {
  const std::size_t da = psi.rows();
  HardyPoint pt;
  pt.q0 = q0;
  pt.p1 = CMatrix::identity(da) - support_projector(hermitian_part(a_side(psi, q0)), kChainSupport);
  pt.q1 = support_projector(hermitian_part(b_side(psi, CMatrix::identity(da) - pt.p1)), kChainSupport);
  const CMatrix keep = CMatrix::identity(da) - support_projector(hermitian_part(a_side(psi, pt.q1)), kChainSupport);
  pt.p0 = positive_projector(keep * hermitian_part(a_side(psi, q0)) * keep);
  return pt;
}

// Two-qubit polish: for X0 outcome-0 vector u, every other measurement is
// forced by the three zero conditions, leaving q as a function on the Bloch
// sphere of u.
struct QubitPolish {
  CMatrix psi;
  CMatrix psi_t;

  std::optional<HardyPoint> point(const CVector& u) const {
    const CVector ubar{std::conj(u[0]), std::conj(u[1])};
    CVector w = psi_t * ubar;
    const double wn = norm(w);
    if (wn < 1e-14) return std::nullopt;
    for (auto& c : w) c /= wn;
    const CVector r = psi * CVector{std::conj(w[0]), std::conj(w[1])};
    const double rn = norm(r);
    if (rn < 1e-14) return std::nullopt;
    const CVector e{-std::conj(r[1]) / rn, std::conj(r[0]) / rn};
    CVector x;
    try {
      x = solve(psi, e);
    } catch (const std::domain_error&) {
      return std::nullopt;
    }
    const double xn = norm(x);
    const CVector v{std::conj(x[0]) / xn, std::conj(x[1]) / xn};
    const CMatrix id = CMatrix::identity(2);
    return HardyPoint{outer(u, u), id - outer(e, e), outer(v, v), id - outer(w, w)};
  }

  static CVector bloch(double t, double phi) {
    return CVector{std::cos(t / 2.0), std::polar(1.0, phi) * std::sin(t / 2.0)};
  }

  double q(double t, double phi) const {
    const auto pt = point(bloch(t, phi));
    return pt ? point_stats(psi, *pt).q : 0.0;
  }
};

// Nelder-Mead maximization; the initial simplex steps `step` along each axis.
std::vector<double> nelder_mead_max(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> start, double step, int max_iterations = 4000) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> s(n + 1, start);
  for (std::size_t k = 0; k < n; ++k) s[k + 1][k] += step;
  std::vector<double> v(n + 1);
  for (std::size_t i = 0; i <= n; ++i) v[i] = f(s[i]);
  std::vector<std::size_t> o(n + 1);
  const auto along = [&](const std::vector<double>& c, const std::vector<double>& w, double k) {
    std::vector<double> p(n);
    for (std::size_t d = 0; d < n; ++d) p[d] = c[d] + k * (w[d] - c[d]);
    return p;
  };
  for (int iter = 0; iter < max_iterations; ++iter) {
    std::iota(o.begin(), o.end(), 0);
    std::sort(o.begin(), o.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
    const std::size_t best = o[0], second_worst = o[n - 1], worst = o[n];
    double size = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t d = 0; d < n; ++d) size = std::max(size, std::abs(s[o[i]][d] - s[best][d]));
    if (size < 1e-12) break;
    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t d = 0; d < n; ++d) c[d] += s[o[i]][d] / static_cast<double>(n);
    const auto refl = along(c, s[worst], -1.0);
    const double vr = f(refl);
    if (vr > v[best]) {
      const auto exp = along(c, s[worst], -2.0);
      const double ve = f(exp);
      if (ve > vr) {
        s[worst] = exp, v[worst] = ve;
      } else {
        s[worst] = refl, v[worst] = vr;
      }
    } else if (vr > v[second_worst]) {
      s[worst] = refl, v[worst] = vr;
    } else {
      const auto con = vr > v[worst] ? along(c, s[worst], -0.5) : along(c, s[worst], 0.5);
      const double vc = f(con);
      if (vc > std::max(vr, v[worst])) {
        s[worst] = con, v[worst] = vc;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          for (std::size_t d = 0; d < n; ++d) s[o[i]][d] = (s[o[i]][d] + s[best][d]) / 2.0;
          v[o[i]] = f(s[o[i]]);
        }
      }
    }
  }
  return s[static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin())];
}

struct RestartOutcome {
  HardyPoint last;
  double last_penalized = -std::numeric_limits<double>::infinity();
  std::optional<HardyPoint> feasible;
  HardyStats feasible_stats;
  std::vector<double> trace;
  bool converged = false;
};

RestartOutcome run_hardy_restart(const PureState& state, const CMatrix& psi, Rng& rng, const SeesawOptions& opt) {
  const std::size_t da = psi.rows(), db = psi.cols();
  const double kappa = opt.penalty;
  const CMatrix ia = CMatrix::identity(da), ib = CMatrix::identity(db);
  RestartOutcome out;
  HardyPoint pt{random_projector(da, rng), random_projector(da, rng), random_projector(db, rng),
                random_projector(db, rng)};
  double value = penalized(point_stats(psi, pt), kappa);
  for (int it = 0; it < opt.max_iterations; ++it) {
    pt.p0 = best_projector(a_side(psi, pt.q0 - kappa * pt.q1));
    pt.q0 = best_projector(b_side(psi, pt.p0 - kappa * pt.p1));
    pt.p1 = best_projector(kappa * (a_side(psi, ib - pt.q1) - a_side(psi, pt.q0)));
    pt.q1 = best_projector(kappa * (b_side(psi, ia - pt.p1) - b_side(psi, pt.p0)));
    const double next = penalized(point_stats(psi, pt), kappa);
    if (opt.record_trace) out.trace.push_back(next);
    const double gain = next - value;
    value = next;
    if (gain < opt.tolerance) {
      out.converged = true;
      break;
    }
  }
  out.last = pt;
  out.last_penalized = value;

  const auto consider = [&](const HardyPoint& cand) {
    const HardyStats s = point_stats(psi, cand);
    if (s.max_zero() > kTolZero) return;
    if (!out.feasible || s.q > out.feasible_stats.q) {
      out.feasible = cand;
      out.feasible_stats = s;
    }
  };
  consider(pt);
  consider(chain_from_p0(psi, pt.p0));
  consider(chain_from_q0(psi, pt.q0));

  if (opt.polish && da == 2 && db == 2) {
    const QubitPolish pol{psi, psi.transpose()};
    const auto eig = eigh(pt.p0);
    const CVector top{eig.vectors(0, 1), eig.vectors(1, 1)};
    double t = 2.0 * std::acos(std::clamp(std::abs(top[0]), 0.0, 1.0));
    double phi = std::arg(top[1]) - std::arg(top[0]);
    const auto f = [&](const std::vector<double>& p) { return pol.q(p[0], p[1]); };
    for (int round = 0; round < 3; ++round) {
      const auto best = nelder_mead_max(f, {t, phi}, round == 0 ? 0.05 : 1e-3, 2000);
      t = best[0];
      phi = best[1];
    }
    if (const auto cand = pol.point(QubitPolish::bloch(t, phi))) {
      try {
        to_realization(state, *cand);
        consider(*cand);
      } catch (const std::invalid_argument&) {
      }
    }
  }
  return out;
}

}  // namespace

HardySeesawResult seesaw_hardy(const PureState& state, int restarts, std::uint64_t seed, const SeesawOptions& options) {
  if (restarts < 1) throw std::invalid_argument("seesaw_hardy: restarts must be >= 1");
  if (state.dim_a() < 2 || state.dim_b() < 2) throw std::invalid_argument("seesaw_hardy: local dimensions must be >= 2");
  const CMatrix psi = state.coefficients();
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
  parallel_for(restarts, options.jobs, [&](int r) {
    Rng rng = restart_rng(seed, r);
    outcomes[static_cast<std::size_t>(r)] = run_hardy_restart(state, psi, rng, options);
  });

  HardySeesawResult result;
  result.best_penalized = -std::numeric_limits<double>::infinity();
  int best_penalized_restart = 0;
  for (int r = 0; r < restarts; ++r) {
    const auto& o = outcomes[static_cast<std::size_t>(r)];
    result.converged = result.converged && o.converged;
    if (o.last_penalized > result.best_penalized) {
      result.best_penalized = o.last_penalized;
      best_penalized_restart = r;
    }
    if (o.feasible && (!result.feasible || o.feasible_stats.q > result.best_q)) {
      result.feasible = true;
      result.best_q = o.feasible_stats.q;
      result.stats = o.feasible_stats;
      result.best_restart = r;
      result.realization = to_realization(state, *o.feasible);
    }
  }
  if (!result.feasible) {
    const auto& o = outcomes[static_cast<std::size_t>(best_penalized_restart)];
    result.best_restart = best_penalized_restart;
    result.stats = point_stats(psi, o.last);
    result.realization = to_realization(state, o.last);
  }
  result.trace = outcomes[static_cast<std::size_t>(result.best_restart)].trace;
  return result;
}

HardyOptimum hardy_optimal_realization(int restarts, std::uint64_t seed, unsigned jobs) {
  SeesawOptions opt;
  opt.jobs = jobs;
  const int probe_restarts = std::min(restarts, 12);
  const auto probe = [&](double a2) {
    return seesaw_hardy(hardy_family_state(std::sqrt(a2)), probe_restarts, seed, opt).best_q;
  };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.02, hi = 0.48;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = probe(x1), f2 = probe(x2);
  while (hi - lo > 1e-9) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = probe(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = probe(x1);
    }
  }
  const double a = std::sqrt((lo + hi) / 2.0);
  const auto final_run = seesaw_hardy(hardy_family_state(a), restarts, seed, opt);
  if (!final_run.feasible) throw std::runtime_error("hardy_optimal_realization: no feasible realization found");
  return HardyOptimum{*final_run.realization, a, final_run.best_q, final_run.stats};
}

namespace {

CMatrix sign_of(const CMatrix& m) {
  const auto eig = eigh(hermitian_part(m));
  std::vector<double> signs(eig.values.size());
  for (std::size_t k = 0; k < signs.size(); ++k) signs[k] = eig.values[k] >= 0.0 ? 1.0 : -1.0;
  return eig.vectors * CMatrix::diagonal(signs) * eig.vectors.adjoint();
}

CMatrix bell_operator(const BellFunctional& f, const std::array<CMatrix, 2>& xs, const std::array<CMatrix, 2>& ys) {
  const CMatrix i2 = CMatrix::identity(2);
  CMatrix op = cplx(f.offset) * CMatrix::identity(4);
  for (int x = 0; x < 2; ++x) {
    op += cplx(f.alice[x]) * kron(xs[x], i2);
    for (int y = 0; y < 2; ++y) op += cplx(f.correlators[2 * x + y]) * kron(xs[x], ys[y]);
  }
  for (int y = 0; y < 2; ++y) op += cplx(f.bob[y]) * kron(i2, ys[y]);
  return op;
}

CMatrix random_observable(Rng& rng) {
  const CMatrix u = haar_unitary(2, rng);
  return u * pauli::z() * u.adjoint();
}

struct BellOutcome {
  double value = -std::numeric_limits<double>::infinity();
  CVector state;
  std::array<CMatrix, 2> xs, ys;
  bool converged = false;
};

CMatrix plane_observable(double angle) {
  return cplx(std::cos(angle)) * pauli::z() + cplx(std::sin(angle)) * pauli::x();
}

// Alternates from the observables already in `out` until a step gains < 1e-15.
void refine_bell(const BellFunctional& f, BellOutcome& out) {
  const CMatrix i2 = CMatrix::identity(2);
  double value = -std::numeric_limits<double>::infinity();
  for (int it = 0; it < 20000; ++it) {
    const auto eig = eigh(bell_operator(f, out.xs, out.ys));
    CVector psi_vec(4);
    for (std::size_t k = 0; k < 4; ++k) psi_vec[k] = eig.vectors(k, 3);
    const CMatrix psi = reshape(psi_vec, 2, 2);
    for (int x = 0; x < 2; ++x) {
      CMatrix partner = cplx(f.alice[x]) * i2;
      for (int y = 0; y < 2; ++y) partner += cplx(f.correlators[2 * x + y]) * out.ys[y];
      out.xs[x] = sign_of(a_side(psi, partner));
    }
    for (int y = 0; y < 2; ++y) {
      CMatrix partner = cplx(f.bob[y]) * i2;
      for (int x = 0; x < 2; ++x) partner += cplx(f.correlators[2 * x + y]) * out.xs[x];
      out.ys[y] = sign_of(b_side(psi, partner));
    }
    const CMatrix op = bell_operator(f, out.xs, out.ys);
    const double next = inner(psi_vec, op * psi_vec).real();
    const double gain = next - value;
    value = next;
    if (gain < 1e-15) {
      out.converged = true;
      break;
    }
  }
  const auto eig = eigh(bell_operator(f, out.xs, out.ys));
  out.value = eig.values[3];
  out.state = CVector(4);
  for (std::size_t k = 0; k < 4; ++k) out.state[k] = eig.vectors(k, 3);
}

// Two starts per restart: random observables straight into the seesaw, and
// a Nelder-Mead search over traceless observables in the x-z plane (largest
// Bell-operator eigenvalue as a function of four angles) followed by the
// seesaw.  The second start escapes deterministic fixed points that trap the
// first when the quantum advantage is small.
BellOutcome run_bell_restart(const BellFunctional& f, Rng& rng) {
  BellOutcome direct;
  direct.xs = {random_observable(rng), random_observable(rng)};
  direct.ys = {random_observable(rng), random_observable(rng)};
  refine_bell(f, direct);

  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<double> start(4);
  for (double& a : start) a = angle(rng);
  const auto top_eigenvalue = [&](const std::vector<double>& a) {
    return eigh(bell_operator(f, {plane_observable(a[0]), plane_observable(a[1])},
                              {plane_observable(a[2]), plane_observable(a[3])}))
        .values[3];
  };
  std::vector<double> best = nelder_mead_max(top_eigenvalue, start, 0.3);
  best = nelder_mead_max(top_eigenvalue, best, 1e-3);
  BellOutcome planar;
  planar.xs = {plane_observable(best[0]), plane_observable(best[1])};
  planar.ys = {plane_observable(best[2]), plane_observable(best[3])};
  refine_bell(f, planar);

  return planar.value > direct.value ? planar : direct;
}

}  // namespace

BellSeesawResult seesaw_bell(const BellFunctional& functional, int restarts, std::uint64_t seed, unsigned jobs) {
  if (restarts < 1) throw std::invalid_argument("seesaw_bell: restarts must be >= 1");
  if (!functional.is_finite()) throw std::invalid_argument("seesaw_bell: functional has non-finite coefficients");
  std::vector<BellOutcome> outcomes(static_cast<std::size_t>(restarts));
  parallel_for(restarts, jobs, [&](int r) {
    Rng rng = restart_rng(seed, r);
    outcomes[static_cast<std::size_t>(r)] = run_bell_restart(functional, rng);
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r) {
    if (outcomes[r].value > outcomes[best].value) best = r;
  }
  const auto& o = outcomes[best];
  BellSeesawResult result;
  result.value = o.value;
  result.converged = o.converged;
  result.realization = QuantumRealization{
      PureState::normalized(2, 2, o.state),
      {ProjectiveMeasurement::from_observable(o.xs[0]), ProjectiveMeasurement::from_observable(o.xs[1])},
      {ProjectiveMeasurement::from_observable(o.ys[0]), ProjectiveMeasurement::from_observable(o.ys[1])}};
  return result;
}

Fractions quantum_fractions(const Box222& box, double alpha, int restarts, std::uint64_t seed) {
  const double bound = seesaw_bell(BellFunctional::tilted_chsh(alpha), restarts, seed).value;
  return fractions(box, alpha, bound);
}

}  // namespace boxforge
