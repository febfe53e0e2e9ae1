// Copyright 2026 The Zenocode Authors
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

#include "zenocode/linalg.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace zenocode {

namespace {

const Complex kI(0.0, 1.0);

template <typename Matrix, typename Vector>
Vector lstsq_impl(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size()) {
    throw DimensionMismatch("lstsq: a has " + std::to_string(a.rows()) +
                            " rows but b has " + std::to_string(b.size()) +
                            " entries");
  }
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double cutoff = sigma.size() > 0 ? kLstsqRelThreshold * sigma(0) : 0.0;
  Vector projected = svd.matrixU().adjoint() * b;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    projected(i) = sigma(i) > cutoff ? projected(i) / sigma(i)
                                     : typename Vector::Scalar(0);
  }
  return svd.matrixV() * projected;
}

}  // namespace

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix single_site(int n_qubits, int site, const ComplexMatrix& op) {
  if (site < 0 || site >= n_qubits) {
    throw IndexOutOfRange("single_site: site " + std::to_string(site) +
                          " outside register of " + std::to_string(n_qubits));
  }
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) {
    out = kron(out, q == site ? op : ComplexMatrix::Identity(2, 2));
  }
  return out;
}

ComplexMatrix two_site(int n_qubits, int site_a, const ComplexMatrix& op_a,
                       int site_b, const ComplexMatrix& op_b) {
  if (site_a == site_b) {
    throw IndexOutOfRange("two_site: sites must differ");
  }
  if (site_a < 0 || site_a >= n_qubits || site_b < 0 || site_b >= n_qubits) {
    throw IndexOutOfRange("two_site: site outside register");
  }
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) {
    if (q == site_a) {
      out = kron(out, op_a);
    } else if (q == site_b) {
      out = kron(out, op_b);
    } else {
      out = kron(out, ComplexMatrix::Identity(2, 2));
    }
  }
  return out;
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = m.norm();
  return (m - m.adjoint()).norm() <= rel_tol * scale;
}

HermEig herm_eig(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) {
    throw NotHermitian("herm_eig: matrix is not square");
  }
  if (!is_hermitian(h)) {
    throw NotHermitian("herm_eig: Hermiticity residual exceeds " +
                       std::to_string(kHermitianTol) + " (relative)");
  }
  // Symmetrize away rounding-level asymmetry before factorizing.
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error("herm_eig: eigensolver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix evolve(const ComplexMatrix& h, double t) {
  const HermEig eig = herm_eig(h);
  StateVector phases(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::exp(-kI * eig.eigenvalues(i) * t);
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

StateVector lstsq(const ComplexMatrix& a, const StateVector& b) {
  return lstsq_impl<ComplexMatrix, StateVector>(a, b);
}

RealVector lstsq(const RealMatrix& a, const RealVector& b) {
  return lstsq_impl<RealMatrix, RealVector>(a, b);
}

ComplexMatrix random_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = rng.complex_gaussian();
    }
  }
  return m;
}

ComplexMatrix haar_unitary(Eigen::Index dim, Rng& rng) {
  const ComplexMatrix g = random_gaussian_matrix(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : Complex(1.0);
  }
  return q;
}

void write_matrix(std::ostream& out, const ComplexMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  const auto flags = out.flags();
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out << m(i, j).real() << ' ' << m(i, j).imag() << '\n';
    }
  }
  out.flags(flags);
}

ComplexMatrix read_matrix(std::istream& in) {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  if (!(in >> rows >> cols) || rows <= 0 || cols <= 0) {
    throw IOError("read_matrix: bad or missing dimension header");
  }
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      double re = 0.0;
      double im = 0.0;
      if (!(in >> re >> im)) {
        throw IOError("read_matrix: truncated entry list");
      }
      m(i, j) = Complex(re, im);
    }
  }
  if (!m.allFinite()) {
    throw IOError("read_matrix: non-finite entry");
  }
  return m;
}

}  // namespace zenocode
