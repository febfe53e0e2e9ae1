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
#include <string>
#include <vector>

#include "zenocode/linalg.hpp"

namespace zenocode {

// A set of error generators: traceless Hermitian operators acting on the
// full register, treated as Hamiltonians of coupling to random fields.
struct ErrorSet {
  int n_qubits = 0;  // 0 when the set was built on an explicit dimension
  int dim = 0;
  int weight = 0;    // Pauli weight cap t; 0 for random sets
  std::vector<ComplexMatrix> generators;
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(generators.size()); }
};

// All Pauli strings of weight 1..t on n qubits, operator norm 1 each.
// Labels are pattern strings like "X.." / ".ZY". Throws CapExceeded when
// 2^n exceeds max_dim.
ErrorSet pauli_error_set(int n, int t, int max_dim = 4096);

// m GUE-distributed Hermitian matrices (unit variance off-diagonal), made
// traceless and scaled to unit Frobenius norm. Deterministic in seed.
ErrorSet random_error_set(int dim, int m, std::uint64_t seed);

// sum_{l=1..t} C(n,l) (K^2-1)^l, exact. Throws std::overflow_error when the
// value does not fit in 64 bits.
std::uint64_t error_count(int n, int big_k, int t);

struct HammingCheck {
  bool feasible = false;  // m <= 2^(n-k)
  double slack = 0.0;     // 1 - k/n - log2(m)/n
};

HammingCheck hamming_feasible(int n, int k, std::uint64_t m);

// Checks Hermiticity/tracelessness/label uniqueness; throws on violation.
// Nonzero traces within reach of repair are handled by the reader instead.
void validate_error_set(const ErrorSet& set);

// File layout: "errorset n dim M t" header, M label lines, M matrices in the
// shared matrix text format. The reader subtracts any residual trace part
// (it only generates a global phase and breaks the code conditions).
void write_error_set(std::ostream& out, const ErrorSet& set);
ErrorSet read_error_set(std::istream& in);

}  // namespace zenocode
