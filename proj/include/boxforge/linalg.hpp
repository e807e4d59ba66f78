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

#ifndef BOXFORGE_LINALG_HPP_
#define BOXFORGE_LINALG_HPP_

// Small dense complex matrices (dimension up to 2^5) and a cyclic Jacobi
// eigensolver for Hermitian matrices.

#include <complex>
#include <cstddef>
#include <random>
#include <vector>

namespace boxforge {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(const std::vector<double>& values);
  /// Rows given as nested initializer lists.
  static CMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<cplx>& data() const { return data_; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conjugate() const;
  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  /// max |A - A^dagger|
  double hermiticity_error() const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(cplx scale);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator+(CMatrix lhs, const CMatrix& rhs);
CMatrix operator-(CMatrix lhs, const CMatrix& rhs);
CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);
CMatrix operator*(cplx scale, CMatrix m);
CVector operator*(const CMatrix& m, const CVector& v);

CMatrix kron(const CMatrix& a, const CMatrix& b);
/// Column vector v as a rows x cols matrix (row-major reshape).
CMatrix reshape(const CVector& v, std::size_t rows, std::size_t cols);
CMatrix outer(const CVector& u, const CVector& v);  // |u><v|
cplx inner(const CVector& u, const CVector& v);     // <u|v>
double norm(const CVector& v);
double max_abs_difference(const CVector& u, const CVector& v);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // column k pairs with values[k]
};

/// Cyclic complex Jacobi.  The input must be Hermitian up to rounding.
HermitianEigen eigh(const CMatrix& hermitian);

/// Orthogonal projector onto the span of the selected eigenvector columns.
CMatrix projector_from_columns(const CMatrix& vectors, const std::vector<std::size_t>& columns);

/// Projector onto the range of a positive semidefinite matrix, keeping
/// eigenvalues above `rel_threshold` times the largest one.
CMatrix support_projector(const CMatrix& psd, double rel_threshold = 1e-8);

/// Haar-distributed unitary (QR of a complex Ginibre matrix with phase fix).
CMatrix haar_unitary(std::size_t n, std::mt19937_64& rng);
CMatrix random_ginibre(std::size_t n, std::mt19937_64& rng);

/// Solves A x = b for square A by Gaussian elimination with partial
/// pivoting; throws std::domain_error when A is singular to working precision.
CVector solve(const CMatrix& a, const CVector& b);

}  // namespace boxforge

#endif  // BOXFORGE_LINALG_HPP_
