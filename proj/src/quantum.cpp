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

#include "boxforge/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace boxforge {
namespace {

bool is_projector(const CMatrix& p, double tol) {
  if (!p.square() || p.hermiticity_error() > tol) return false;
  return (p * p - p).max_abs() <= tol;
}

}  // namespace

PureState PureState::from_amplitudes(std::size_t dim_a, std::size_t dim_b, CVector amplitudes) {
  if (dim_a == 0 || dim_b == 0 || amplitudes.size() != dim_a * dim_b) {
    throw std::invalid_argument("PureState: amplitude count does not match dimensions");
  }
  if (std::abs(norm(amplitudes) - 1.0) > 1e-12) throw std::invalid_argument("PureState: state is not normalized");
  return PureState(dim_a, dim_b, std::move(amplitudes));
}

PureState PureState::normalized(std::size_t dim_a, std::size_t dim_b, CVector amplitudes) {
  const double n = norm(amplitudes);
  if (!(n > 0.0)) throw std::invalid_argument("PureState: zero vector");
  for (auto& c : amplitudes) c /= n;
  return from_amplitudes(dim_a, dim_b, std::move(amplitudes));
}

PureState PureState::maximally_entangled(std::size_t d) {
  CVector amps(d * d);
  for (std::size_t i = 0; i < d; ++i) amps[i * d + i] = 1.0 / std::sqrt(static_cast<double>(d));
  return normalized(d, d, std::move(amps));
}

CMatrix PureState::coefficients() const { return reshape(amps_, dim_a_, dim_b_); }

PureState tensor_power(const PureState& state, int copies) {
  if (copies < 1) throw std::invalid_argument("tensor_power: copies must be >= 1");
  CMatrix coeff = state.coefficients();
  CMatrix acc = coeff;
  for (int k = 1; k < copies; ++k) acc = kron(acc, coeff);
  return PureState::normalized(acc.rows(), acc.cols(), acc.data());
}

ProjectiveMeasurement ProjectiveMeasurement::from_projector(CMatrix outcome0) {
  if (!is_projector(outcome0, 1e-10)) throw std::invalid_argument("ProjectiveMeasurement: not a projector");
  CMatrix p1 = CMatrix::identity(outcome0.rows()) - outcome0;
  return ProjectiveMeasurement(std::move(outcome0), std::move(p1));
}

ProjectiveMeasurement ProjectiveMeasurement::from_observable(const CMatrix& observable) {
  if (!observable.square()) throw std::invalid_argument("ProjectiveMeasurement: observable not square");
  CMatrix p0 = CMatrix::identity(observable.rows()) + observable;
  p0 *= 0.5;
  return from_projector(std::move(p0));
}

std::size_t ProjectiveMeasurement::rank(int outcome) const {
  return static_cast<std::size_t>(std::llround(projector(outcome).trace().real()));
}

void QuantumRealization::validate() const {
  for (const auto& m : alice) {
    if (m.dim() != state.dim_a()) throw std::invalid_argument("realization: Alice's measurement dimension mismatch");
  }
  for (const auto& m : bob) {
    if (m.dim() != state.dim_b()) throw std::invalid_argument("realization: Bob's measurement dimension mismatch");
  }
}

cplx expectation(const PureState& state, const CMatrix& on_a, const CMatrix& on_b) {
  if (on_a.rows() != state.dim_a() || on_b.rows() != state.dim_b()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  const CMatrix psi = state.coefficients();
  return (psi.adjoint() * on_a * psi * on_b.transpose()).trace();
}

Box222 realize_box(const QuantumRealization& r) {
  r.validate();
  Box222::Table t{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const double p = expectation(r.state, r.alice[x].projector(a), r.bob[y].projector(b)).real();
          t[box_index(x, y, a, b)] = std::max(0.0, p);
        }
  return Box222::from_table(t);
}

namespace pauli {
CMatrix identity() { return CMatrix::identity(2); }
CMatrix x() { return CMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }
CMatrix y() { return CMatrix::from_rows({{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}}); }
CMatrix z() { return CMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }
}  // namespace pauli

QuantumRealization tsirelson_realization() {
  const double r = 1.0 / std::numbers::sqrt2;
  return QuantumRealization{
      PureState::maximally_entangled(2),
      {ProjectiveMeasurement::from_observable(pauli::z()), ProjectiveMeasurement::from_observable(pauli::x())},
      {ProjectiveMeasurement::from_observable(r * (pauli::z() + pauli::x())),
       ProjectiveMeasurement::from_observable(r * (pauli::z() - pauli::x()))}};
}

namespace {

CVector unnormalized_phi_plus(std::size_t d) {
  CVector v(d * d);
  for (std::size_t m = 0; m < d; ++m) v[m * d + m] = 1.0;
  return v;
}

void require_square(const CMatrix& m, std::size_t d) {
  if (m.rows() != d || m.cols() != d) throw std::invalid_argument("ricochet_check: operators must be d x d");
}

}  // namespace

double ricochet_check(const CMatrix& x, const CMatrix& y, std::size_t d) {
  require_square(x, d);
  require_square(y, d);
  const CVector phi = unnormalized_phi_plus(d);
  return max_abs_difference(kron(x, y) * phi, kron(CMatrix::identity(d), y * x.transpose()) * phi);
}

double ricochet_wrong_order(const CMatrix& x, const CMatrix& y, std::size_t d) {
  require_square(x, d);
  require_square(y, d);
  const CVector phi = unnormalized_phi_plus(d);
  return max_abs_difference(kron(x, y) * phi, kron(CMatrix::identity(d), x.transpose() * y) * phi);
}

std::vector<double> reduced_spectrum(const PureState& state) {
  const CMatrix psi = state.coefficients();
  auto values = eigh(psi * psi.adjoint()).values;
  for (double& v : values) v = std::max(0.0, v);
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

SchmidtData schmidt(const PureState& state) {
  const CMatrix psi = state.coefficients();
  const bool a_side = state.dim_a() <= state.dim_b();
  auto values = eigh(a_side ? psi * psi.adjoint() : psi.adjoint() * psi).values;
  std::sort(values.begin(), values.end(), std::greater<>());
  SchmidtData out;
  for (double v : values) out.coefficients.push_back(std::sqrt(std::max(0.0, v)));
  return out;
}

std::vector<double> tensor_power_spectrum(double s, int n) {
  if (n < 1) throw std::domain_error("tensor_power_spectrum: n must be >= 1");
  std::vector<double> out;
  double binom = 1.0;
  for (int j = 0; j <= n; ++j) {
    const double value = std::pow(s, n - j) * std::pow(1.0 - s, j);
    for (long k = 0; k < std::lround(binom); ++k) out.push_back(value);
    binom = binom * (n - j) / (j + 1);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

bool spectrum_obstruction(double s, int n) {
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("spectrum_obstruction: s must lie in (0, 1)");
  if (n < 1) throw std::domain_error("spectrum_obstruction: n must be >= 1");
  const double top = std::pow(s, n);
  for (int j = 1; j <= n; ++j) {
    const double other = std::pow(s, n - j) * std::pow(1.0 - s, j);
    if (std::abs(top - other) <= 1e-12 * std::max(top, other)) return false;
  }
  return true;
}

bool flat_spectrum_obstruction(double c, int n) {
  if (!(c > 0.0 && c < 1.0)) throw std::domain_error("flat_spectrum_obstruction: c must lie in (0, 1)");
  if (n < 1) throw std::domain_error("flat_spectrum_obstruction: n must be >= 1");
  // A product spectrum is flat at 2^-n only if every zeta eigenvalue z
  // satisfies c z = (1 - c) z = 2^-n.
  const double flat = std::ldexp(1.0, -n);
  const double z_from_c = flat / c;
  const double z_from_complement = flat / (1.0 - c);
  return std::abs(z_from_c - z_from_complement) > 1e-12 * std::max(z_from_c, z_from_complement);
}

PureState hardy_family_state(double a) {
  if (!(a > 0.0 && 2.0 * a * a < 1.0)) throw std::domain_error("hardy_family_state: need 0 < a^2 < 1/2");
  const double b = std::sqrt(1.0 - 2.0 * a * a);
  return PureState::normalized(2, 2, CVector{0.0, a, a, b});
}

QuantumRealization hardy_closed_form_realization(double a) {
  const double b = std::sqrt(1.0 - 2.0 * a * a);
  const double n = std::sqrt(1.0 - a * a);
  const CVector alpha{b / n, -a / n};
  const CMatrix on_alpha = outer(alpha, alpha);
  const CMatrix on_one = CMatrix::from_rows({{0.0, 0.0}, {0.0, 1.0}});
  return QuantumRealization{
      hardy_family_state(a),
      {ProjectiveMeasurement::from_projector(on_alpha), ProjectiveMeasurement::from_projector(on_one)},
      {ProjectiveMeasurement::from_projector(on_alpha), ProjectiveMeasurement::from_projector(on_one)}};
}

TiltedRealization tilted_realization(double theta) {
  constexpr double kQuarterPi = std::numbers::pi / 4.0;
  if (!(theta > 0.0 && theta <= kQuarterPi + 1e-15)) {
    throw std::domain_error("tilted_realization: theta must lie in (0, pi/4]");
  }
  if (theta >= kQuarterPi - 1e-12) return TiltedRealization{tsirelson_realization(), 0.0, 0.0};

  const double c2 = std::cos(2.0 * theta), s2 = std::sin(2.0 * theta);
  const double mu = std::atan(s2);
  const auto y_obs = [&](int j) {
    return cplx(std::cos(mu)) * pauli::z() + cplx((j == 0 ? 1.0 : -1.0) * std::sin(mu)) * pauli::x();
  };
  TiltedRealization out{
      QuantumRealization{
          PureState::normalized(2, 2, CVector{std::cos(theta), 0.0, 0.0, std::sin(theta)}),
          {ProjectiveMeasurement::from_observable(pauli::z()), ProjectiveMeasurement::from_observable(pauli::x())},
          {ProjectiveMeasurement::from_observable(y_obs(0)), ProjectiveMeasurement::from_observable(y_obs(1))}},
      2.0 * c2 / std::sqrt(1.0 + s2 * s2), 2.0 * c2};
  return out;
}

double tilted_chsh_analytic_max(double alpha) { return std::sqrt(8.0 + 2.0 * alpha * alpha); }

}  // namespace boxforge
