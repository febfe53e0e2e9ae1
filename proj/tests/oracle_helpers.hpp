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

// Test-only oracles, independent of the implementation paths they check.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "zenocode/code_search.hpp"
#include "zenocode/errors.hpp"
#include "zenocode/linalg.hpp"
#include "zenocode/rng.hpp"

namespace zenocode::testing {

// Entry-by-entry Kronecker product, no blocking.
inline ComplexMatrix kron_naive(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      out(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
    }
  }
  return out;
}

// Counts base-4 strings of length n with weight (non-identity sites) in 1..t.
inline std::uint64_t pauli_string_count_bruteforce(int n, int t) {
  std::uint64_t count = 0;
  const std::uint64_t total = std::uint64_t{1} << (2 * n);
  for (std::uint64_t code = 0; code < total; ++code) {
    int weight = 0;
    std::uint64_t c = code;
    for (int q = 0; q < n; ++q) {
      if ((c & 3) != 0) ++weight;
      c >>= 2;
    }
    if (weight >= 1 && weight <= t) ++count;
  }
  return count;
}

// Central finite difference of a matrix-valued function.
inline ComplexMatrix central_difference(
    const std::function<ComplexMatrix(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Derivative-free minimization of weak_residual^2 over the unit sphere via
// Nelder-Mead on the 2*dim real coordinates, with random restarts. Returns
// the best weak residual reached.
inline double sphere_minimize_weak_residual(const ErrorSet& errors,
                                            std::uint64_t seed, int restarts = 4,
                                            int max_iter = 40000) {
  const int dim = errors.dim;
  const int vars = 2 * dim;
  Rng rng(seed);

  const auto to_state = [dim](const std::vector<double>& z) {
    StateVector x(dim);
    for (int i = 0; i < dim; ++i) {
      x(i) = Complex(z[i], z[dim + i]);
    }
    const double norm = x.norm();
    if (norm < 1e-12) {
      x.setZero();
      x(0) = 1.0;
      return x;
    }
    return StateVector(x / norm);
  };
  const auto objective = [&](const std::vector<double>& z) {
    const double r = weak_residual(to_state(z), errors);
    return r * r;
  };

  double best = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < restarts; ++attempt) {
    std::vector<std::vector<double>> simplex(vars + 1, std::vector<double>(vars));
    std::vector<double> value(vars + 1);
    for (auto& vertex : simplex) {
      for (double& c : vertex) c = rng.gaussian();
    }
    for (int i = 0; i <= vars; ++i) value[i] = objective(simplex[i]);

    for (int it = 0; it < max_iter; ++it) {
      std::vector<int> order(vars + 1);
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return value[a] < value[b]; });
      const int lo = order[0];
      const int hi = order[vars];
      const int second_hi = order[vars - 1];
      if (value[lo] < 1e-24 || value[hi] - value[lo] < 1e-26) break;

      std::vector<double> centroid(vars, 0.0);
      for (int i = 0; i <= vars; ++i) {
        if (i == hi) continue;
        for (int c = 0; c < vars; ++c) centroid[c] += simplex[i][c];
      }
      for (double& c : centroid) c /= vars;

      const auto blend = [&](double alpha) {
        std::vector<double> p(vars);
        for (int c = 0; c < vars; ++c) {
          p[c] = centroid[c] + alpha * (centroid[c] - simplex[hi][c]);
        }
        return p;
      };

      std::vector<double> reflect = blend(1.0);
      const double fr = objective(reflect);
      if (fr < value[lo]) {
        std::vector<double> expand = blend(2.0);
        const double fe = objective(expand);
        if (fe < fr) {
          simplex[hi] = std::move(expand);
          value[hi] = fe;
        } else {
          simplex[hi] = std::move(reflect);
          value[hi] = fr;
        }
      } else if (fr < value[second_hi]) {
        simplex[hi] = std::move(reflect);
        value[hi] = fr;
      } else {
        std::vector<double> contract = blend(fr < value[hi] ? 0.5 : -0.5);
        const double fc = objective(contract);
        if (fc < std::min(fr, value[hi])) {
          simplex[hi] = std::move(contract);
          value[hi] = fc;
        } else {
          for (int i = 0; i <= vars; ++i) {
            if (i == lo) continue;
            for (int c = 0; c < vars; ++c) {
              simplex[i][c] = simplex[lo][c] + 0.5 * (simplex[i][c] - simplex[lo][c]);
            }
            value[i] = objective(simplex[i]);
          }
        }
      }
    }
    const double attempt_best =
        std::sqrt(*std::min_element(value.begin(), value.end()));
    best = std::min(best, attempt_best);
  }
  return best;
}

}  // namespace zenocode::testing
