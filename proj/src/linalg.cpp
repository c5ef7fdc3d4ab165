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

#include "nmqc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace nmqc {

namespace pauli {
namespace {
const Complex kI{0.0, 1.0};
}
const Matrix2c& identity() {
  static const Matrix2c m = Matrix2c::Identity();
  return m;
}
const Matrix2c& x() {
  static const Matrix2c m = (Matrix2c() << 0.0, 1.0, 1.0, 0.0).finished();
  return m;
}
const Matrix2c& y() {
  static const Matrix2c m = (Matrix2c() << 0.0, -kI, kI, 0.0).finished();
  return m;
}
const Matrix2c& z() {
  static const Matrix2c m = (Matrix2c() << 1.0, 0.0, 0.0, -1.0).finished();
  return m;
}
const Matrix2c& by_index(int i) {
  switch (i) {
    case 0: return identity();
    case 1: return x();
    case 2: return y();
    case 3: return z();
  }
  throw PreconditionError("pauli index must be in 0..3");
}
}  // namespace pauli

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  }
  return out;
}

double max_hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
  return max_hermiticity_defect(m) <= tolerance;
}

namespace {

void require_hermitian(const ComplexMatrix& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double defect = max_hermiticity_defect(m);
  if (defect > tol::kHermiticity * scale) {
    std::ostringstream msg;
    msg << "hermitian_eigenvalues: matrix is not Hermitian (defect " << defect << ")";
    throw PreconditionError(msg.str());
  }
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  require_hermitian(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

std::array<double, 4> hermitian_eigenvalues(const Matrix4c& m) {
  require_hermitian(m);
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(m, Eigen::EigenvaluesOnly);
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) out[i] = solver.eigenvalues()(i);
  std::sort(out.begin(), out.end());
  return out;
}

std::array<double, 2> hermitian_eigenvalues(const Matrix2c& m) {
  require_hermitian(m);
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double half_gap = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
  const double mean = 0.5 * (a + d);
  return {mean - half_gap, mean + half_gap};
}

double spectrum_entropy(const double* begin, const double* end) {
  double s = 0.0;
  for (const double* it = begin; it != end; ++it) {
    if (*it > 0.0) s -= *it * std::log2(*it);
  }
  return s;
}

std::string StateCheck::describe() const {
  std::ostringstream out;
  out << "trace defect " << trace_defect << ", hermiticity defect " << hermiticity_defect
      << ", min eigenvalue " << min_eigenvalue;
  return out.str();
}

template <int Dim>
StateCheck DensityMatrix<Dim>::check() const {
  StateCheck c;
  c.trace_defect = std::abs(m_.trace() - Complex(1.0, 0.0));
  c.hermiticity_defect = max_hermiticity_defect(m_);
  // Symmetrize before diagonalizing so the check itself cannot throw.
  const Matrix h = 0.5 * (m_ + m_.adjoint());
  const auto ev = hermitian_eigenvalues(h);
  c.min_eigenvalue = ev.front();
  return c;
}

template class DensityMatrix<4>;
template class DensityMatrix<2>;

QubitState partial_trace(const TwoQubitState& rho, Subsystem traced_out) {
  const Matrix4c& m = rho.matrix();
  Matrix2c out = Matrix2c::Zero();
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      for (int k = 0; k < 2; ++k) {
        // index = 2 * a + b
        out(r, c) += traced_out == Subsystem::B ? m(2 * r + k, 2 * c + k) : m(2 * k + r, 2 * k + c);
      }
    }
  }
  return QubitState::trusted(out);
}

Matrix4c partial_transpose(const Matrix4c& rho, Subsystem subsystem) {
  Matrix4c out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        for (int d = 0; d < 2; ++d) {
          // <ab|rho|cd>
          if (subsystem == Subsystem::A) {
            out(2 * c + b, 2 * a + d) = rho(2 * a + b, 2 * c + d);
          } else {
            out(2 * a + d, 2 * c + b) = rho(2 * a + b, 2 * c + d);
          }
        }
      }
    }
  }
  return out;
}

double von_neumann_entropy(const TwoQubitState& rho) {
  const auto ev = hermitian_eigenvalues(rho.matrix());
  return std::max(0.0, spectrum_entropy(ev.data(), ev.data() + ev.size()));
}

double von_neumann_entropy(const QubitState& rho) {
  const auto ev = hermitian_eigenvalues(rho.matrix());
  return std::max(0.0, spectrum_entropy(ev.data(), ev.data() + ev.size()));
}

double qubit_entropy_from_bloch_radius(double r) {
  r = std::clamp(r, 0.0, 1.0);
  const double up = 0.5 * (1.0 + r);
  const double down = 0.5 * (1.0 - r);
  double s = 0.0;
  if (up > 0.0) s -= up * std::log2(up);
  if (down > 0.0) s -= down * std::log2(down);
  return s;
}

}  // namespace nmqc
