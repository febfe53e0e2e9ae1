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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>

#include "zenocode/exceptions.hpp"
#include "zenocode/rng.hpp"

namespace zenocode {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Relative Hermiticity tolerance shared by herm_eig and evolve.
inline constexpr double kHermitianTol = 1e-10;
// Singular values below this fraction of the largest one are truncated in
// the minimum-norm least-squares solvers.
inline constexpr double kLstsqRelThreshold = 1e-12;

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// op acting on one site of an n-qubit register, identity elsewhere.
// Site 0 is the most significant factor of the tensor product.
ComplexMatrix single_site(int n_qubits, int site, const ComplexMatrix& op);
ComplexMatrix two_site(int n_qubits, int site_a, const ComplexMatrix& op_a,
                       int site_b, const ComplexMatrix& op_b);

struct HermEig {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // unitary, columns match eigenvalues
};

// Throws NotHermitian when ||h - h^dag||_F > kHermitianTol * ||h||_F.
HermEig herm_eig(const ComplexMatrix& h);

// exp(-i h t) for Hermitian h, via eigendecomposition. The result is unitary
// to rounding, which matters for long alternating-product sequences.
ComplexMatrix evolve(const ComplexMatrix& h, double t);

// Minimum-norm x minimizing ||a x - b||_2 (truncated-SVD pseudo-inverse).
StateVector lstsq(const ComplexMatrix& a, const StateVector& b);
RealVector lstsq(const RealMatrix& a, const RealVector& b);

bool is_hermitian(const ComplexMatrix& m, double rel_tol = kHermitianTol);

// Entries i.i.d. standard complex Gaussian (unit variance per entry).
ComplexMatrix random_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

// Haar-distributed unitary: QR of a Gaussian matrix with the R-diagonal
// phases absorbed into Q.
ComplexMatrix haar_unitary(Eigen::Index dim, Rng& rng);

// Text format shared by all persisted matrices: a "rows cols" header line,
// then rows*cols lines of "re im" in row-major order, 17 significant digits
// (enough for an exact double round-trip).
void write_matrix(std::ostream& out, const ComplexMatrix& m);
ComplexMatrix read_matrix(std::istream& in);

}  // namespace zenocode
