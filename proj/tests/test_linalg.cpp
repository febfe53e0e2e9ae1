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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "oracle_helpers.hpp"
#include "zenocode/linalg.hpp"

using namespace zenocode;

namespace {

ComplexMatrix random_hermitian(Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed);
  const ComplexMatrix g = random_gaussian_matrix(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("kron identity and pauli cases") {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  CHECK(max_abs(kron(i2, i2) - ComplexMatrix::Identity(4, 4)) == 0.0);

  const ComplexMatrix xx = kron(pauli_x(), pauli_x());
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 3) = expected(1, 2) = expected(2, 1) = expected(3, 0) = 1.0;
  CHECK(max_abs(xx - expected) == 0.0);
}

TEST_CASE("kron mixed-product property on random 2x2 blocks") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = random_gaussian_matrix(2, 2, rng);
    const ComplexMatrix b = random_gaussian_matrix(2, 2, rng);
    const ComplexMatrix c = random_gaussian_matrix(2, 2, rng);
    const ComplexMatrix d = random_gaussian_matrix(2, 2, rng);
    CHECK(max_abs(kron(a, b) * kron(c, d) - kron(a * c, b * d)) < 1e-12);
  }
}

TEST_CASE("kron agrees with the naive entrywise product") {
  Rng rng(3);
  const ComplexMatrix a = random_gaussian_matrix(3, 2, rng);
  const ComplexMatrix b = random_gaussian_matrix(2, 4, rng);
  CHECK(max_abs(kron(a, b) - testing::kron_naive(a, b)) == 0.0);
}

TEST_CASE("herm_eig analytic and degenerate cases") {
  const HermEig z = herm_eig(pauli_z());
  CHECK(z.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(z.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));

  const HermEig zero = herm_eig(ComplexMatrix::Zero(4, 4));
  for (int i = 0; i < 4; ++i) CHECK(zero.eigenvalues(i) == 0.0);
}

TEST_CASE("herm_eig reconstructs random Hermitian input") {
  const ComplexMatrix h = random_hermitian(8, 5);
  const HermEig eig = herm_eig(h);
  const ComplexMatrix rebuilt = eig.eigenvectors *
                                eig.eigenvalues.cast<Complex>().asDiagonal() *
                                eig.eigenvectors.adjoint();
  CHECK((rebuilt - h).norm() < 1e-10);
  CHECK((eig.eigenvectors.adjoint() * eig.eigenvectors -
         ComplexMatrix::Identity(8, 8))
            .norm() < 1e-10);
  for (int i = 0; i + 1 < 8; ++i) {
    CHECK(eig.eigenvalues(i) <= eig.eigenvalues(i + 1));
  }
  // Eigenvalue sum equals the trace.
  CHECK(eig.eigenvalues.sum() ==
        doctest::Approx(h.trace().real()).epsilon(1e-10));
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(herm_eig(bad), NotHermitian);
  CHECK_THROWS_AS(herm_eig(ComplexMatrix::Zero(2, 3)), NotHermitian);
  CHECK_THROWS_AS(evolve(bad, 1.0), NotHermitian);
}

TEST_CASE("evolve identity, half-turn and group property") {
  const ComplexMatrix h = random_hermitian(4, 7);
  CHECK(max_abs(evolve(h, 0.0) - ComplexMatrix::Identity(4, 4)) < 1e-14);

  // exp(-i pi sigma_z) = -I.
  CHECK(max_abs(evolve(pauli_z(), M_PI) + ComplexMatrix::Identity(2, 2)) < 1e-14);

  const double t1 = 0.37;
  const double t2 = -1.21;
  CHECK((evolve(h, t1) * evolve(h, t2) - evolve(h, t1 + t2)).norm() < 1e-10);
}

TEST_CASE("evolve is unitary and time-reversible") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const ComplexMatrix h = random_hermitian(8, seed);
    const ComplexMatrix u = evolve(h, 1.7);
    CHECK((u.adjoint() * u - ComplexMatrix::Identity(8, 8)).norm() < 1e-11);
    CHECK((u.inverse() - evolve(h, -1.7)).norm() < 1e-10);
  }
}

TEST_CASE("lstsq identity and zero systems") {
  Rng rng(9);
  const StateVector b = random_gaussian_matrix(5, 1, rng).col(0);
  CHECK((lstsq(ComplexMatrix::Identity(5, 5), b) - b).norm() < 1e-13);
  CHECK(lstsq(ComplexMatrix::Zero(5, 5), b).norm() == 0.0);
}

TEST_CASE("lstsq residual is orthogonal to the column space") {
  Rng rng(21);
  const ComplexMatrix a = random_gaussian_matrix(6, 4, rng);
  const StateVector b = random_gaussian_matrix(6, 1, rng).col(0);
  const StateVector x = lstsq(a, b);
  CHECK((a.adjoint() * (a * x - b)).norm() < 1e-10);
  // Stationarity at scale.
  CHECK((a.adjoint() * (a * x - b)).norm() < 1e-9 * a.norm() * b.norm());
}

TEST_CASE("lstsq returns the minimum-norm solution on rank-deficient systems") {
  Rng rng(33);
  ComplexMatrix a(4, 3);
  const StateVector col = random_gaussian_matrix(4, 1, rng).col(0);
  a.col(0) = col;
  a.col(1) = 2.0 * col;  // rank 1
  a.col(2) = -col;
  const StateVector b = random_gaussian_matrix(4, 1, rng).col(0);
  const StateVector x = lstsq(a, b);
  // Any null-space component would increase the norm without changing a*x.
  const StateVector null1 = (StateVector(3) << 2.0, -1.0, 0.0).finished();
  const StateVector null2 = (StateVector(3) << 1.0, 0.0, 1.0).finished();
  CHECK(std::abs(null1.dot(x)) < 1e-12);
  CHECK(std::abs(null2.dot(x)) < 1e-12);
}

TEST_CASE("real lstsq overload matches the normal equations") {
  Rng rng(40);
  RealMatrix a(5, 3);
  RealVector b(5);
  for (int i = 0; i < 5; ++i) {
    b(i) = rng.gaussian();
    for (int j = 0; j < 3; ++j) a(i, j) = rng.gaussian();
  }
  const RealVector x = lstsq(a, b);
  CHECK((a.transpose() * (a * x - b)).norm() < 1e-10);
}

TEST_CASE("matrix text format round-trips bit-exactly") {
  Rng rng(77);
  const ComplexMatrix m = random_gaussian_matrix(3, 5, rng);
  std::stringstream buffer;
  write_matrix(buffer, m);
  const ComplexMatrix back = read_matrix(buffer);
  REQUIRE(back.rows() == m.rows());
  REQUIRE(back.cols() == m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      CHECK(back(i, j).real() == m(i, j).real());
      CHECK(back(i, j).imag() == m(i, j).imag());
    }
  }
}

TEST_CASE("read_matrix rejects malformed input") {
  std::stringstream empty("");
  CHECK_THROWS_AS(read_matrix(empty), IOError);
  std::stringstream truncated("2 2\n1 0\n");
  CHECK_THROWS_AS(read_matrix(truncated), IOError);
  std::stringstream bad_header("-1 2\n");
  CHECK_THROWS_AS(read_matrix(bad_header), IOError);
}

TEST_CASE("haar_unitary is unitary and seed-deterministic") {
  Rng rng_a(5);
  Rng rng_b(5);
  const ComplexMatrix u = haar_unitary(8, rng_a);
  const ComplexMatrix v = haar_unitary(8, rng_b);
  CHECK((u.adjoint() * u - ComplexMatrix::Identity(8, 8)).norm() < 1e-12);
  CHECK(max_abs(u - v) == 0.0);
}
