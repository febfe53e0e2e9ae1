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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "zenocode/code_search.hpp"
#include "zenocode/errors.hpp"
#include "zenocode/linalg.hpp"

namespace zenocode {

enum class HamiltonianTag { h1, h2 };

struct ControlParams1 {
  double b_x = 1.0;
  std::vector<double> mu;  // per-qubit gyromagnetic ratios
};

struct ControlParams2 {
  std::array<double, 3> br = {1.0, 1.0, 0.0};  // Raman field amplitudes x,y,z
  RealMatrix mu2;                              // symmetric, used for i < j
  double delta_omega = 10.0;
};

// The two fixed drive generators: a one-body transverse coupling and a
// two-body Raman coupling. Alternating evolutions under these realize
// arbitrary unitaries once their Lie algebra closes on su(2^n).
struct ControlPair {
  int n_qubits = 0;
  ComplexMatrix h1;
  ComplexMatrix h2;
  ControlParams1 params1;
  ControlParams2 params2;
};

// sum_j b_x mu[j] sigma_x^(j).
ComplexMatrix build_h1(int n, double b_x, std::span<const double> mu);

// sum_{i<j} sum_{a,b} mu2(i,j) br[a] br[b] / delta_omega * sigma_a^(i) sigma_b^(j).
// Throws ZeroDetuning when delta_omega == 0.
ComplexMatrix build_h2(int n, const std::array<double, 3>& br,
                       const RealMatrix& mu2, double delta_omega);

// Generic non-degenerate parameters: b_x = 1, mu and mu2 seeded uniform in
// [0.5, 1.5], br = (1,1,0), delta_omega = 10.
ControlPair default_control_pair(int n, std::uint64_t seed);

// Alternating timing sequence: slot i (0-based) evolves under start_tag when
// i is even and the other Hamiltonian when i is odd. sign = -1 stands for
// reversed drive fields, i.e. both Hamiltonians negated.
struct TimingSequence {
  std::vector<double> timings;
  HamiltonianTag start_tag = HamiltonianTag::h1;
  int sign = 1;
  std::uint64_t seed = 0;
  double residual = 0.0;
  std::vector<std::pair<int, double>> trace;
  std::vector<double> beta_history;

  int length() const { return static_cast<int>(timings.size()); }
  HamiltonianTag tag_at(int slot) const {
    const bool first = slot % 2 == 0;
    return first == (start_tag == HamiltonianTag::h1) ? HamiltonianTag::h1
                                                      : HamiltonianTag::h2;
  }
};

// Per-slot factors plus prefix/suffix partial products, so the unitary and
// all length() gradients cost O(length) matrix multiplications total.
struct SequenceWork {
  std::vector<ComplexMatrix> step;    // U_i = exp(-i sign t_i H_tag(i))
  std::vector<ComplexMatrix> prefix;  // prefix[i] = U_{i-1} ... U_0, prefix[0] = I
  std::vector<ComplexMatrix> suffix;  // suffix[i] = U_{last} ... U_i, suffix[len] = I

  const ComplexMatrix& unitary() const { return prefix.back(); }
};

SequenceWork sequence_work(const TimingSequence& seq, const ControlPair& pair);

// Ordered product with slot 0 applied first; identity for an empty sequence.
ComplexMatrix sequence_unitary(const TimingSequence& seq, const ControlPair& pair);

// d(unitary)/d t_slot. The work-based overload reuses cached products.
ComplexMatrix sequence_gradient(const TimingSequence& seq, const ControlPair& pair,
                                int slot);
ComplexMatrix sequence_gradient(const SequenceWork& work, const TimingSequence& seq,
                                const ControlPair& pair, int slot);

// Reversed order with negated sign; each slot keeps its Hamiltonian, which
// flips start_tag when the length is even. Realizes the inverse unitary.
TimingSequence inverse_sequence(const TimingSequence& seq);

// ||H_tag(i)||_2 * t_i per slot; the non-holonomic regime wants these >> 1.
std::vector<double> slot_actions(const TimingSequence& seq, const ControlPair& pair);

struct SynthesisOptions {
  int m_prime = 0;
  std::uint64_t seed = 0;
  double tol = 1e-6;
  int max_iter = 2000;
  double beta0 = 1.0;
  // Give up after this many iterations without a new best residual
  // (0 disables; the full max_iter budget then applies).
  int patience = 80;
};

struct SynthesisResult {
  TimingSequence sequence;
  Encoding encoding;  // realized by the sequence
};

class SynthesisNotConverged : public NotConverged {
 public:
  SynthesisNotConverged(int iterations, double residual, SynthesisResult best)
      : NotConverged("synthesize: residual " + std::to_string(residual) +
                         " after " + std::to_string(iterations) + " iterations",
                     iterations, residual),
        best(std::move(best)) {}

  SynthesisResult best;
};

// Finds timings whose alternating product maps the reference-ancilla
// subspace onto a code subspace satisfying the weak condition. Each
// iteration solves the encoding-mode gamma step on the realized isometry,
// converts it to target increments of the projected error matrices, and
// equates them to the first-order response over all timings (a stacked real
// least-squares system); beta scales the accepted step and adapts on
// success/failure.
SynthesisResult synthesize(const ErrorSet& errors, const ControlPair& pair,
                           int k, const SynthesisOptions& options);

SynthesisResult synthesize_with_restarts(const ErrorSet& errors,
                                         const ControlPair& pair, int k,
                                         SynthesisOptions options, int restarts);

// File layout: "timings M' sign seed residual" header, one timing per line.
// Files always store forward (h1-first) sequences.
void write_timing_sequence(std::ostream& out, const TimingSequence& seq);
TimingSequence read_timing_sequence(std::istream& in);

// Two matrices plus a "key value" parameter block; the reader rebuilds both
// generators from the parameters and rejects mismatching files.
void write_control_pair(std::ostream& out, const ControlPair& pair);
ControlPair read_control_pair(std::istream& in);

}  // namespace zenocode
