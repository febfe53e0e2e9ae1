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

#include "zenocode/errors.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace zenocode {

namespace {

void checked_mul(std::uint64_t& acc, std::uint64_t factor) {
  if (factor != 0 && acc > UINT64_MAX / factor) {
    throw std::overflow_error("error_count: value exceeds 64 bits");
  }
  acc *= factor;
}

void checked_add(std::uint64_t& acc, std::uint64_t term) {
  if (acc > UINT64_MAX - term) {
    throw std::overflow_error("error_count: value exceeds 64 bits");
  }
  acc += term;
}

std::uint64_t binomial(int n, int l) {
  std::uint64_t value = 1;
  for (int i = 0; i < l; ++i) {
    checked_mul(value, static_cast<std::uint64_t>(n - i));
    value /= static_cast<std::uint64_t>(i + 1);
  }
  return value;
}

const char kAxisNames[3] = {'X', 'Y', 'Z'};

ComplexMatrix axis_matrix(char axis) {
  switch (axis) {
    case 'X': return pauli_x();
    case 'Y': return pauli_y();
    case 'Z': return pauli_z();
    default: throw Error(std::string("unknown Pauli axis ") + axis);
  }
}

// Emits one generator per axis assignment over the chosen sites.
void emit_assignments(int n, const std::vector<int>& sites, ErrorSet& out) {
  const int l = static_cast<int>(sites.size());
  std::vector<int> axes(l, 0);
  while (true) {
    std::string label(n, '.');
    ComplexMatrix gen = ComplexMatrix::Identity(1, 1);
    int next_site = 0;
    for (int q = 0; q < n; ++q) {
      if (next_site < l && sites[next_site] == q) {
        label[q] = kAxisNames[axes[next_site]];
        gen = kron(gen, axis_matrix(label[q]));
        ++next_site;
      } else {
        gen = kron(gen, ComplexMatrix::Identity(2, 2));
      }
    }
    out.generators.push_back(std::move(gen));
    out.labels.push_back(std::move(label));
    int pos = l - 1;
    while (pos >= 0 && axes[pos] == 2) {
      axes[pos--] = 0;
    }
    if (pos < 0) break;
    ++axes[pos];
  }
}

void combinations(int n, int l, std::vector<int>& sites, int start, ErrorSet& out) {
  if (static_cast<int>(sites.size()) == l) {
    emit_assignments(n, sites, out);
    return;
  }
  for (int s = start; s < n; ++s) {
    sites.push_back(s);
    combinations(n, l, sites, s + 1, out);
    sites.pop_back();
  }
}

}  // namespace

ErrorSet pauli_error_set(int n, int t, int max_dim) {
  if (n < 1 || t < 1 || t > n) {
    throw std::invalid_argument("pauli_error_set: need 1 <= t <= n");
  }
  if (n > 12) {
    throw CapExceeded("pauli_error_set: n > 12 is outside the practical cap");
  }
  const long dim = 1L << n;
  if (dim > max_dim) {
    throw CapExceeded("pauli_error_set: dimension " + std::to_string(dim) +
                      " exceeds limit " + std::to_string(max_dim));
  }
  ErrorSet set;
  set.n_qubits = n;
  set.dim = static_cast<int>(dim);
  set.weight = t;
  for (int l = 1; l <= t; ++l) {
    std::vector<int> sites;
    combinations(n, l, sites, 0, set);
  }
  return set;
}

ErrorSet random_error_set(int dim, int m, std::uint64_t seed) {
  if (dim < 2 || m < 1) {
    throw std::invalid_argument("random_error_set: need dim >= 2 and m >= 1");
  }
  ErrorSet set;
  set.n_qubits = 0;
  set.dim = dim;
  set.weight = 0;
  Rng rng(seed);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int idx = 0; idx < m; ++idx) {
    // (G + G^dag)/sqrt(2) with G standard complex Gaussian: GUE with unit
    // variance off the diagonal.
    ComplexMatrix g = random_gaussian_matrix(dim, dim, rng) * inv_sqrt2;
    ComplexMatrix h = (g + g.adjoint()) * inv_sqrt2;
    h -= (h.trace() / static_cast<double>(dim)) * ComplexMatrix::Identity(dim, dim);
    h /= h.norm();
    set.generators.push_back(std::move(h));
    set.labels.push_back("random#" + std::to_string(seed) + "/" + std::to_string(idx));
  }
  return set;
}

std::uint64_t error_count(int n, int big_k, int t) {
  if (big_k < 2 || t < 1 || t > n) {
    throw std::invalid_argument("error_count: need K >= 2 and 1 <= t <= n");
  }
  const std::uint64_t per_site =
      static_cast<std::uint64_t>(big_k) * static_cast<std::uint64_t>(big_k) - 1;
  std::uint64_t total = 0;
  for (int l = 1; l <= t; ++l) {
    std::uint64_t term = binomial(n, l);
    for (int i = 0; i < l; ++i) {
      checked_mul(term, per_site);
    }
    checked_add(total, term);
  }
  return total;
}

HammingCheck hamming_feasible(int n, int k, std::uint64_t m) {
  if (n < 1 || k < 0 || k >= n) {
    throw std::invalid_argument("hamming_feasible: need 0 <= k < n");
  }
  HammingCheck check;
  const int ancilla_bits = n - k;
  if (ancilla_bits >= 64) {
    check.feasible = true;
  } else {
    check.feasible = m <= (std::uint64_t{1} << ancilla_bits);
  }
  const double log_term =
      m > 1 ? std::log2(static_cast<double>(m)) / static_cast<double>(n) : 0.0;
  check.slack = 1.0 - static_cast<double>(k) / static_cast<double>(n) - log_term;
  return check;
}

void validate_error_set(const ErrorSet& set) {
  if (set.dim < 1) {
    throw Error("error set: nonpositive dimension");
  }
  std::set<std::string> seen;
  for (int i = 0; i < set.size(); ++i) {
    const ComplexMatrix& gen = set.generators[i];
    if (gen.rows() != set.dim || gen.cols() != set.dim) {
      throw DimensionMismatch("error set: generator " + std::to_string(i) +
                              " has wrong dimension");
    }
    const double scale = std::max(gen.norm(), 1.0);
    if ((gen - gen.adjoint()).norm() > 1e-12 * scale) {
      throw NotHermitian("error set: generator " + std::to_string(i) +
                         " is not Hermitian");
    }
    if (std::abs(gen.trace()) > 1e-12 * scale) {
      throw Error("error set: generator " + std::to_string(i) + " has nonzero trace");
    }
    if (!seen.insert(set.labels[i]).second) {
      throw Error("error set: duplicate label " + set.labels[i]);
    }
  }
  if (set.labels.size() != set.generators.size()) {
    throw Error("error set: label/generator count mismatch");
  }
}

void write_error_set(std::ostream& out, const ErrorSet& set) {
  out << "errorset " << set.n_qubits << ' ' << set.dim << ' ' << set.size()
      << ' ' << set.weight << '\n';
  for (const auto& label : set.labels) {
    out << label << '\n';
  }
  for (const auto& gen : set.generators) {
    write_matrix(out, gen);
  }
}

ErrorSet read_error_set(std::istream& in) {
  std::string tag;
  ErrorSet set;
  int count = 0;
  if (!(in >> tag >> set.n_qubits >> set.dim >> count >> set.weight) ||
      tag != "errorset" || count < 0) {
    throw IOError("error set: bad header");
  }
  set.labels.reserve(count);
  for (int i = 0; i < count; ++i) {
    std::string label;
    if (!(in >> label)) {
      throw IOError("error set: missing label " + std::to_string(i));
    }
    set.labels.push_back(std::move(label));
  }
  set.generators.reserve(count);
  for (int i = 0; i < count; ++i) {
    ComplexMatrix gen = read_matrix(in);
    // Repair a trace part if one sneaked in: it only adds a global phase.
    const Complex tr = gen.trace();
    if (std::abs(tr) > 0.0) {
      gen -= (tr / static_cast<double>(set.dim)) *
             ComplexMatrix::Identity(set.dim, set.dim);
    }
    set.generators.push_back(std::move(gen));
  }
  validate_error_set(set);
  return set;
}

}  // namespace zenocode
