// Copyright 2026 The nmqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nmqc/errors.hpp"

namespace nmqc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

/// Numerical tolerances shared by every module.
namespace tol {
inline constexpr double kHermiticity = 1e-12;
inline constexpr double kTrace = 1e-12;
inline constexpr double kPsdSlack = 1e-10;
inline constexpr double kEigen = 1e-10;
}  // namespace tol

enum class Subsystem { A, B };

namespace pauli {
const Matrix2c& identity();
const Matrix2c& x();
const Matrix2c& y();
const Matrix2c& z();
/// index 0 = I, 1 = x, 2 = y, 3 = z
const Matrix2c& by_index(int i);
}  // namespace pauli

/// Kronecker product with `a` as the slow (most significant) index.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
Matrix4c kron(const Matrix2c& a, const Matrix2c& b);

bool is_hermitian(const ComplexMatrix& m, double tolerance = tol::kHermiticity);
double max_hermiticity_defect(const ComplexMatrix& m);

/// Real eigenvalues of a Hermitian matrix, ascending. Throws PreconditionError
/// when `m` deviates from Hermiticity by more than tol::kHermiticity (scaled by
/// the largest entry for matrices with entries above unit size).
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);
std::array<double, 4> hermitian_eigenvalues(const Matrix4c& m);
std::array<double, 2> hermitian_eigenvalues(const Matrix2c& m);

/// Shannon entropy (bits) of a spectrum; entries at or below zero contribute 0.
double spectrum_entropy(const double* begin, const double* end);

/// Validation summary for a candidate density matrix.
struct StateCheck {
  double trace_defect = 0.0;
  double hermiticity_defect = 0.0;
  double min_eigenvalue = 0.0;

  bool unit_trace() const { return trace_defect <= tol::kTrace; }
  bool hermitian() const { return hermiticity_defect <= tol::kHermiticity; }
  bool positive() const { return min_eigenvalue >= -tol::kPsdSlack; }
  bool ok() const { return unit_trace() && hermitian() && positive(); }
  std::string describe() const;
};

/// A density matrix of fixed dimension (4 for two qubits, 2 for one qubit).
///
/// `from_matrix` validates trace, Hermiticity and positivity. `trusted` skips
/// validation; it is used for channel outputs, which may leave the positive
/// cone in the negative-weight depolarizing regime and are checked by callers.
template <int Dim>
class DensityMatrix {
 public:
  using Matrix = Eigen::Matrix<Complex, Dim, Dim>;

  static DensityMatrix from_matrix(const Matrix& m) {
    DensityMatrix out(m);
    const StateCheck check = out.check();
    if (!check.ok()) throw PreconditionError("invalid density matrix: " + check.describe());
    return out;
  }
  static DensityMatrix trusted(const Matrix& m) { return DensityMatrix(m); }

  const Matrix& matrix() const { return m_; }
  constexpr int dim() const { return Dim; }
  double trace() const { return m_.trace().real(); }
  double purity() const { return (m_ * m_).trace().real(); }
  StateCheck check() const;

 private:
  explicit DensityMatrix(const Matrix& m) : m_(m) {}
  Matrix m_;
};

using TwoQubitState = DensityMatrix<4>;
using QubitState = DensityMatrix<2>;

QubitState partial_trace(const TwoQubitState& rho, Subsystem traced_out);
/// Partial transpose on the named subsystem. The result is Hermitian with unit
/// trace but generally not positive, hence a plain matrix.
Matrix4c partial_transpose(const Matrix4c& rho, Subsystem subsystem);
inline Matrix4c partial_transpose(const TwoQubitState& rho, Subsystem subsystem) {
  return partial_transpose(rho.matrix(), subsystem);
}

double von_neumann_entropy(const TwoQubitState& rho);
double von_neumann_entropy(const QubitState& rho);

/// Binary entropy h((1 + r) / 2) of a qubit with Bloch radius r, in bits.
double qubit_entropy_from_bloch_radius(double r);

}  // namespace nmqc
