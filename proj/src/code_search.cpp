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

#include "zenocode/code_search.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <string>

namespace zenocode {

namespace {

void check_dims(Eigen::Index state_dim, const ErrorSet& errors) {
  if (errors.size() > 0 && errors.dim != state_dim) {
    throw DimensionMismatch("error set dimension " + std::to_string(errors.dim) +
                            " does not match state dimension " +
                            std::to_string(state_dim));
  }
}

int qubit_count_or_zero(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return (Eigen::Index{1} << n) == dim ? n : 0;
}

// Hermitian pseudo-inverse solve of G y = c with eigenvalues below
// (kLstsqRelThreshold * sigma_max)^2 truncated; used for the Gram form of
// the stacked least-squares system. The fast LDLT path covers the
// non-singular case.
StateVector gram_solve(const ComplexMatrix& gram, const StateVector& rhs) {
  Eigen::LDLT<ComplexMatrix> ldlt(gram);
  if (ldlt.info() == Eigen::Success) {
    StateVector y = ldlt.solve(rhs);
    if ((gram * y - rhs).norm() <= 1e-10 * rhs.norm() + 1e-300) {
      return y;
    }
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(gram);
  const RealVector& lam = eig.eigenvalues();
  const double lam_max = lam.size() > 0 ? std::abs(lam(lam.size() - 1)) : 0.0;
  const double cutoff = lam_max * kLstsqRelThreshold * kLstsqRelThreshold;
  StateVector proj = eig.eigenvectors().adjoint() * rhs;
  for (Eigen::Index i = 0; i < proj.size(); ++i) {
    proj(i) = lam(i) > cutoff ? proj(i) / lam(i) : Complex(0.0);
  }
  return eig.eigenvectors() * proj;
}

}  // namespace

double weak_residual(const StateVector& x, const ErrorSet& errors) {
  check_dims(x.size(), errors);
  double r = 0.0;
  for (const auto& e : errors.generators) {
    r = std::max(r, std::abs(x.dot(e * x)));
  }
  return r;
}

double weak_residual(const ComplexMatrix& isometry, const ErrorSet& errors) {
  check_dims(isometry.rows(), errors);
  double r = 0.0;
  for (const auto& e : errors.generators) {
    const ComplexMatrix block = isometry.adjoint() * (e * isometry);
    r = std::max(r, block.cwiseAbs().maxCoeff());
  }
  return r;
}

double weak_residual(const Encoding& enc, const ErrorSet& errors) {
  return weak_residual(enc.isometry, errors);
}

double knill_residual(const Encoding& enc, const ErrorSet& errors) {
  check_dims(enc.full_dim(), errors);
  if (errors.size() == 0) return 0.0;
  const Eigen::Index info = enc.info_dim();
  std::vector<ComplexMatrix> ev(errors.size());
  for (int m = 0; m < errors.size(); ++m) {
    ev[m] = errors.generators[m] * enc.isometry;
  }
  double r = 0.0;
  for (int s = 0; s < errors.size(); ++s) {
    for (int l = 0; l < errors.size(); ++l) {
      ComplexMatrix block = ev[s].adjoint() * ev[l];
      const Complex c = block.trace() / static_cast<double>(info);
      block -= c * ComplexMatrix::Identity(info, info);
      r = std::max(r, block.cwiseAbs().maxCoeff());
    }
  }
  return r;
}

GammaCoefficients gamma_step(const StateVector& x, const ErrorSet& errors) {
  check_dims(x.size(), errors);
  GammaCoefficients out;
  if (errors.size() == 0) return out;
  ComplexMatrix columns(x.size(), errors.size());
  for (int m = 0; m < errors.size(); ++m) {
    columns.col(m) = errors.generators[m] * x;
  }
  const StateVector gamma = lstsq(columns, StateVector(-x));
  out.gamma.reserve(errors.size());
  for (int m = 0; m < errors.size(); ++m) {
    out.gamma.push_back(gamma.segment(m, 1));
  }
  return out;
}

GammaCoefficients gamma_step(const ComplexMatrix& isometry, const ErrorSet& errors) {
  check_dims(isometry.rows(), errors);
  const int m_count = errors.size();
  const Eigen::Index info = isometry.cols();
  GammaCoefficients out;
  out.ortho = ComplexMatrix::Zero(info, info);
  out.gamma.assign(m_count, ComplexMatrix::Zero(info, info));
  if (m_count == 0) return out;

  // Stacked system columns: E_m v_s for every (m, s), then the columns of V
  // themselves for the cross-column orthogonality conditions. The supervector
  // problem is block diagonal over the target column, with a Gram matrix
  // shared by all blocks up to one excluded column.
  const Eigen::Index mn = static_cast<Eigen::Index>(m_count) * info;
  ComplexMatrix columns(isometry.rows(), mn + info);
  for (int m = 0; m < m_count; ++m) {
    columns.middleCols(static_cast<Eigen::Index>(m) * info, info) =
        errors.generators[m] * isometry;
  }
  columns.rightCols(info) = isometry;

  const ComplexMatrix gram = columns.adjoint() * columns;
  const ComplexMatrix rhs_all = columns.adjoint() * isometry;

  for (Eigen::Index l = 0; l < info; ++l) {
    // Active unknowns: all gamma columns plus eta_s for s != l.
    const Eigen::Index active = mn + info - 1;
    ComplexMatrix gram_l(active, active);
    StateVector rhs_l(active);
    auto packed = [&](Eigen::Index i) { return i < mn + l ? i : i + 1; };
    for (Eigen::Index i = 0; i < active; ++i) {
      rhs_l(i) = -rhs_all(packed(i), l);
      for (Eigen::Index j = 0; j < active; ++j) {
        gram_l(i, j) = gram(packed(i), packed(j));
      }
    }
    const StateVector y = gram_solve(gram_l, rhs_l);
    for (int m = 0; m < m_count; ++m) {
      for (Eigen::Index s = 0; s < info; ++s) {
        out.gamma[m](s, l) = y(static_cast<Eigen::Index>(m) * info + s);
      }
    }
    for (Eigen::Index s = 0; s < info; ++s) {
      if (s == l) continue;
      out.ortho(s, l) = y(mn + (s < l ? s : s - 1));
    }
  }
  return out;
}

ComplexMatrix apply_gamma(const ComplexMatrix& isometry, const ErrorSet& errors,
                          const GammaCoefficients& gamma) {
  ComplexMatrix delta = ComplexMatrix::Zero(isometry.rows(), isometry.cols());
  for (int m = 0; m < errors.size(); ++m) {
    delta += errors.generators[m] * isometry * gamma.gamma[m];
  }
  if (gamma.ortho.size() > 0) {
    delta += isometry * gamma.ortho;
  }
  return delta;
}

StateVector apply_gamma(const StateVector& x, const ErrorSet& errors,
                        const GammaCoefficients& gamma) {
  StateVector delta = StateVector::Zero(x.size());
  for (int m = 0; m < errors.size(); ++m) {
    delta += gamma.gamma[m](0, 0) * (errors.generators[m] * x);
  }
  return delta;
}

VectorSearchResult find_code_vector(const ErrorSet& errors, std::uint64_t seed,
                                    double tol, int max_iter, double step) {
  if (errors.size() == 0) {
    throw std::invalid_argument("find_code_vector: empty error set");
  }
  if (tol <= 0.0 || max_iter < 1) {
    throw std::invalid_argument("find_code_vector: need tol > 0 and max_iter >= 1");
  }
  Rng rng(seed);
  StateVector x = random_gaussian_matrix(errors.dim, 1, rng).col(0);
  x.normalize();
  VectorSearchResult result;
  for (int it = 0; it < max_iter; ++it) {
    const double r = weak_residual(x, errors);
    result.trace.emplace_back(it, r);
    if (r <= tol) {
      result.x = x;
      return result;
    }
    const GammaCoefficients gamma = gamma_step(x, errors);
    x += step * apply_gamma(x, errors, gamma);
    const double norm = x.norm();
    if (norm < 1e-14) {
      throw ZeroNormState("find_code_vector: iterate collapsed to zero");
    }
    x /= norm;
  }
  throw NotConverged("find_code_vector: residual " +
                         std::to_string(result.trace.back().second) + " after " +
                         std::to_string(max_iter) + " iterations",
                     max_iter, result.trace.back().second);
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& v) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(v.adjoint() * v);
  const RealVector& lam = eig.eigenvalues();
  if (lam(0) <= 1e-24 * std::max(lam(lam.size() - 1), 1e-300)) {
    throw Error("orthonormalize_columns: rank-deficient column set");
  }
  RealVector inv_sqrt(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    inv_sqrt(i) = 1.0 / std::sqrt(lam(i));
  }
  return v * (eig.eigenvectors() * inv_sqrt.asDiagonal() *
              eig.eigenvectors().adjoint());
}

Encoding trivial_embedding(int full_dim, int info_dim) {
  if (info_dim < 1 || full_dim < info_dim || full_dim % info_dim != 0) {
    throw DimensionMismatch("trivial_embedding: info dimension must divide full dimension");
  }
  Encoding enc;
  const int ancilla = full_dim / info_dim;
  enc.isometry = ComplexMatrix::Zero(full_dim, info_dim);
  for (int s = 0; s < info_dim; ++s) {
    enc.isometry(static_cast<Eigen::Index>(s) * ancilla, s) = 1.0;
  }
  enc.n = qubit_count_or_zero(full_dim);
  enc.k = qubit_count_or_zero(info_dim);
  enc.residual = 0.0;
  return enc;
}

Encoding find_encoding(const ErrorSet& errors, int k, std::uint64_t seed,
                       double tol, int max_iter, double step) {
  if (k < 0) throw std::invalid_argument("find_encoding: negative k");
  if (max_iter < 1) throw std::invalid_argument("find_encoding: max_iter < 1");
  const int info = 1 << k;
  const int dim = errors.dim;
  if (errors.size() == 0) {
    Encoding enc = trivial_embedding(dim, info);
    enc.seed = seed;
    return enc;
  }
  if (dim % info != 0 || dim < 2 * info) {
    throw DimensionMismatch("find_encoding: 2^k must divide dim with a nontrivial ancilla");
  }

  Rng rng(seed);
  ComplexMatrix v = orthonormalize_columns(random_gaussian_matrix(dim, info, rng));

  Encoding enc;
  enc.n = errors.n_qubits > 0 ? errors.n_qubits : qubit_count_or_zero(dim);
  enc.k = k;
  enc.seed = seed;

  double best_r = std::numeric_limits<double>::infinity();
  ComplexMatrix best_v = v;
  for (int it = 0; it < max_iter; ++it) {
    const double r = weak_residual(v, errors);
    enc.trace.emplace_back(it, r);
    if (r < best_r) {
      best_r = r;
      best_v = v;
    }
    if (r <= tol) {
      enc.isometry = v;
      enc.residual = r;
      return enc;
    }
    const GammaCoefficients gamma = gamma_step(v, errors);
    v = orthonormalize_columns(v + step * apply_gamma(v, errors, gamma));
  }
  enc.isometry = best_v;
  enc.residual = best_r;
  throw EncodingNotConverged(max_iter, best_r, enc);
}

Encoding find_encoding_with_restarts(const ErrorSet& errors, int k,
                                     std::uint64_t seed, double tol,
                                     int max_iter, int restarts) {
  double best_r = std::numeric_limits<double>::infinity();
  Encoding best;
  int total_iters = 0;
  for (int attempt = 0; attempt <= restarts; ++attempt) {
    try {
      return find_encoding(errors, k, seed + static_cast<std::uint64_t>(attempt),
                           tol, max_iter);
    } catch (const EncodingNotConverged& e) {
      total_iters += e.iterations;
      if (e.residual < best_r) {
        best_r = e.residual;
        best = e.best;
      }
    }
  }
  throw EncodingNotConverged(total_iters, best_r, best);
}

ComplexMatrix projected_error(const Encoding& enc, const ComplexMatrix& e) {
  if (e.rows() != enc.full_dim() || e.cols() != enc.full_dim()) {
    throw DimensionMismatch("projected_error: operator does not match encoding");
  }
  return enc.isometry.adjoint() * e * enc.isometry;
}

void write_encoding(std::ostream& out, const Encoding& enc) {
  const auto flags = out.flags();
  out << "encoding " << enc.n << ' ' << enc.k << ' ' << enc.seed << ' '
      << std::setprecision(17) << enc.residual << '\n';
  out.flags(flags);
  write_matrix(out, enc.isometry);
  out << std::setprecision(17);
  for (const auto& [it, r] : enc.trace) {
    out << it << ' ' << r << '\n';
  }
  out.flags(flags);
}

Encoding read_encoding(std::istream& in) {
  std::string tag;
  Encoding enc;
  if (!(in >> tag >> enc.n >> enc.k >> enc.seed >> enc.residual) ||
      tag != "encoding") {
    throw IOError("encoding: bad header");
  }
  enc.isometry = read_matrix(in);
  if (enc.isometry.cols() < 1 || enc.isometry.rows() % enc.isometry.cols() != 0) {
    throw IOError("encoding: isometry shape is not (N*A) x N");
  }
  int it = 0;
  double r = 0.0;
  while (in >> it >> r) {
    enc.trace.emplace_back(it, r);
  }
  const ComplexMatrix gram =
      enc.isometry.adjoint() * enc.isometry -
      ComplexMatrix::Identity(enc.info_dim(), enc.info_dim());
  if (gram.cwiseAbs().maxCoeff() > 1e-10) {
    throw IOError("encoding: columns are not orthonormal");
  }
  return enc;
}

}  // namespace zenocode
