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

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "zenocode/errors.hpp"
#include "zenocode/linalg.hpp"

namespace zenocode {

// An (N*A) x N isometry whose columns span the protected code subspace.
// Row index convention: basis state |s> (x) |ancilla a> sits at s*A + a, so
// the reference ancilla state is a = 0 and the information bits are the
// high bits of the register.
struct Encoding {
  int n = 0;  // qubit count, 0 when the dimension is not a power of two
  int k = 0;
  ComplexMatrix isometry;
  double residual = 0.0;
  std::vector<std::pair<int, double>> trace;  // (iteration, residual)
  std::uint64_t seed = 0;

  Eigen::Index info_dim() const { return isometry.cols(); }
  Eigen::Index full_dim() const { return isometry.rows(); }
  Eigen::Index ancilla_dim() const { return isometry.rows() / isometry.cols(); }
};

// Coefficients of the linear combination that best cancels the current
// iterate: scalars gamma_m in single-vector mode (stored as 1x1 blocks),
// N x N blocks gamma_m in encoding mode. `ortho` holds the coefficients of
// the cross-column orthogonality directions (zero diagonal, encoding mode
// only).
struct GammaCoefficients {
  std::vector<ComplexMatrix> gamma;
  ComplexMatrix ortho;
};

class EncodingNotConverged : public NotConverged {
 public:
  EncodingNotConverged(int iterations, double residual, Encoding best)
      : NotConverged("find_encoding: residual " + std::to_string(residual) +
                         " after " + std::to_string(iterations) + " iterations",
                     iterations, residual),
        best(std::move(best)) {}

  Encoding best;
};

// max_m |<x|E_m|x>|, the single-vector form of the weak code condition.
double weak_residual(const StateVector& x, const ErrorSet& errors);
// max over m and column pairs of |V^dag E_m V|.
double weak_residual(const ComplexMatrix& isometry, const ErrorSet& errors);
double weak_residual(const Encoding& enc, const ErrorSet& errors);

// Deviation of the blocks V^dag E_s E_l V from c_{sl} * I with c_{sl} the
// mean block diagonal; zero exactly when the strong (exactly correctable)
// condition holds. Strictly harder than the weak condition.
double knill_residual(const Encoding& enc, const ErrorSet& errors);

GammaCoefficients gamma_step(const StateVector& x, const ErrorSet& errors);
GammaCoefficients gamma_step(const ComplexMatrix& isometry, const ErrorSet& errors);

// Update direction the gamma coefficients encode: sum_m E_m V gamma_m plus
// the cross-column part V * ortho (encoding mode).
ComplexMatrix apply_gamma(const ComplexMatrix& isometry, const ErrorSet& errors,
                          const GammaCoefficients& gamma);
StateVector apply_gamma(const StateVector& x, const ErrorSet& errors,
                        const GammaCoefficients& gamma);

struct VectorSearchResult {
  StateVector x;
  std::vector<std::pair<int, double>> trace;
};

// Iterates x -> normalize(x + step * sum_m gamma_m E_m x) from a seeded
// Gaussian start until max_m |<x|E_m|x>| <= tol.
VectorSearchResult find_code_vector(const ErrorSet& errors, std::uint64_t seed,
                                    double tol = 1e-9, int max_iter = 5000,
                                    double step = 0.5);

// Supervector form of the same iteration over the whole isometry, with the
// cross-column orthogonality conditions in the linear system and an explicit
// re-orthonormalization after every update. Throws EncodingNotConverged
// with the best iterate attached.
Encoding find_encoding(const ErrorSet& errors, int k, std::uint64_t seed,
                       double tol = 1e-9, int max_iter = 5000,
                       double step = 0.5);

// Retries find_encoding with seed, seed+1, ... and returns the first success;
// otherwise throws EncodingNotConverged carrying the best iterate seen.
Encoding find_encoding_with_restarts(const ErrorSet& errors, int k,
                                     std::uint64_t seed, double tol = 1e-9,
                                     int max_iter = 5000, int restarts = 10);

// Columns e_{s*A}: information states with the ancilla in its reference
// state. The no-constraint solution.
Encoding trivial_embedding(int full_dim, int info_dim);

// V^dag e V, the error generator seen inside the code subspace.
ComplexMatrix projected_error(const Encoding& enc, const ComplexMatrix& e);

// Closest isometry with the same column span (symmetric orthonormalization).
ComplexMatrix orthonormalize_columns(const ComplexMatrix& v);

// File layout: "encoding n k seed residual" header, the isometry in matrix
// text format, then one "iter residual" line per recorded iteration.
void write_encoding(std::ostream& out, const Encoding& enc);
Encoding read_encoding(std::istream& in);

}  // namespace zenocode
