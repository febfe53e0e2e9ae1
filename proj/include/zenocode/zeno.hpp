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
#include <vector>

#include "zenocode/code_search.hpp"
#include "zenocode/control.hpp"
#include "zenocode/errors.hpp"
#include "zenocode/linalg.hpp"

namespace zenocode {

// Integrated random-field actions, one row per Zeno period, one column per
// error generator. Entries are i.i.d. Gaussian with standard deviation
// `strength` (quasi-static fields: the action over a period scales with the
// period length, which the caller folds into strength).
struct FieldTrace {
  int m = 0;
  int periods = 0;
  double strength = 0.0;
  std::uint64_t seed = 0;
  RealMatrix actions;  // periods x m
};

FieldTrace make_field_trace(int m, int periods, double strength, std::uint64_t seed);

enum class NoiseMode {
  first_order,     // I - i sum phi_m E_m (keeps only the Taylor terms the
                   // protection argument uses; not unitary)
  exact,           // exp(-i sum phi_m E_m)
  ordered_product  // prod_m exp(-i phi_m E_m), slot m = 0 applied first
};

enum class ResetMode {
  postselect,  // project the ancilla on its reference state, renormalize,
               // record the success probability
  replace      // trace out the ancilla and reinstall the reference state
};

struct ZenoConfig {
  double period = 0.0;
  double total_time = 0.0;
  NoiseMode noise_mode = NoiseMode::exact;
  ResetMode reset_mode = ResetMode::postselect;

  int periods() const;
};

struct ZenoReport {
  std::vector<double> fidelity_per_cycle;  // overlap^2 with the initial state
  std::vector<double> leakage_per_cycle;   // 1 - ancilla reset success prob.
  double final_infidelity = 0.0;
  double h_e_norm = 0.0;  // mean Frobenius norm of the per-cycle effective
                          // Hamiltonian seen inside the code subspace
};

// One period of uncontrolled evolution for the given action vector.
ComplexMatrix noise_step(const ErrorSet& errors, const RealVector& actions,
                         NoiseMode mode);

// sum_m f_m V^dag E_m V: the generator of residual decoherence inside the
// code subspace. Zero exactly when the weak condition holds.
ComplexMatrix effective_hamiltonian(const Encoding& enc, const ErrorSet& errors,
                                    const RealVector& f);

// Full protection cycle per period: encode, apply the period's noise,
// decode, reset the ancilla. Throws ZeroNormState when a postselection
// probability drops below 1e-15.
ZenoReport zeno_run(const StateVector& s0, const Encoding& enc,
                    const ErrorSet& errors, const FieldTrace& fields,
                    const ZenoConfig& cfg);

// Same protocol with encode/decode realized by the timing sequence and its
// sign-reversed inverse.
ZenoReport zeno_run(const StateVector& s0, const TimingSequence& seq,
                    const ControlPair& pair, const ErrorSet& errors,
                    const FieldTrace& fields, const ZenoConfig& cfg);

// rho -> U rho U^dag with U = exp(-i h_e dt). Throws NotDensityMatrix unless
// rho is Hermitian with unit trace.
ComplexMatrix master_step(const ComplexMatrix& rho, const ComplexMatrix& h_e,
                          double dt);

struct SuppressionStats {
  int trials = 0;
  int samples = 0;               // trials * M
  double mean_normalized = 0.0;  // A^2 ||V^dag E V||_F^2 / ||E||_F^2, O(1)
  double median_normalized = 0.0;
  double stddev_normalized = 0.0;
  double mean_gain = 0.0;        // ||E||_F^2 / (A ||V^dag E V||_F^2), order A
};

// Draws Haar-random encodings and measures how much Frobenius weight of each
// error generator survives projection onto the code subspace. A generic
// encoding spreads each generator over the whole space, suppressing the
// projected weight by the ancilla dimension. When element_magnitudes is
// given, the |V^dag E V| entries of every trial are appended to it
// (trials * M * N^2 values). Trial t draws from seed + t, so results are
// bit-identical for any thread count.
SuppressionStats random_encoding_gain(int n, int k, const ErrorSet& errors,
                                      int trials, std::uint64_t seed,
                                      std::vector<double>* element_magnitudes = nullptr,
                                      int threads = 1);

// CSV with a "cycle,fidelity,leakage" header row.
void write_zeno_csv(std::ostream& out, const ZenoReport& report);

}  // namespace zenocode
