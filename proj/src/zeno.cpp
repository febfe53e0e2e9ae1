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

#include "zenocode/zeno.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numeric>
#include <ostream>

#include "zenocode/parallel.hpp"

namespace zenocode {

namespace {

const Complex kI(0.0, 1.0);

void check_field_dims(const ErrorSet& errors, const FieldTrace& fields) {
  if (fields.m != errors.size()) {
    throw DimensionMismatch("zeno_run: field trace has " +
                            std::to_string(fields.m) + " channels for " +
                            std::to_string(errors.size()) + " error generators");
  }
}

// Encode/decode callbacks let the isometry route and the timing-sequence
// route share the cycle bookkeeping.
struct Protocol {
  std::function<StateVector(const StateVector&)> encode;  // info -> full
  std::function<StateVector(const StateVector&)> decode_project;  // full -> info (unnormalized)
};

ZenoReport run_cycles(const Protocol& protocol, const StateVector& s0,
                      const ErrorSet& errors, const FieldTrace& fields,
                      const ZenoConfig& cfg, const Encoding* enc_for_he) {
  const int periods = cfg.periods();
  if (fields.periods < periods) {
    throw DimensionMismatch("zeno_run: field trace shorter than the run");
  }
  if (std::abs(s0.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("zeno_run: initial state must be normalized");
  }

  ZenoReport report;
  report.fidelity_per_cycle.reserve(periods);
  report.leakage_per_cycle.reserve(periods);

  StateVector s = s0;
  double survival = 1.0;  // product of postselection probabilities
  double he_accum = 0.0;
  for (int p = 0; p < periods; ++p) {
    const RealVector phi = fields.actions.row(p).transpose();
    StateVector psi = protocol.encode(s);
    psi = noise_step(errors, phi, cfg.noise_mode) * psi;
    StateVector raw = protocol.decode_project(psi);
    const double prob = raw.squaredNorm();
    if (prob < 1e-15) {
      throw ZeroNormState("zeno_run: postselection probability below 1e-15");
    }
    // first_order noise is not unitary; measure leakage against the actual
    // post-noise norm so it stays a probability.
    const double leak = std::clamp(1.0 - prob / psi.squaredNorm(), 0.0, 1.0);
    survival *= 1.0 - leak;
    s = raw / raw.norm();
    report.fidelity_per_cycle.push_back(std::norm(s0.dot(s)));
    report.leakage_per_cycle.push_back(leak);
    if (enc_for_he != nullptr) {
      he_accum += effective_hamiltonian(*enc_for_he, errors, phi).norm();
    }
  }
  report.final_infidelity =
      1.0 - survival * (periods > 0 ? report.fidelity_per_cycle.back() : 1.0);
  report.h_e_norm = periods > 0 ? he_accum / periods : 0.0;
  return report;
}

// Density-matrix variant for the replace reset: the ancilla is traced out
// and reinstalled every cycle, so leaked weight decoheres the information
// part instead of being discarded.
ZenoReport run_cycles_replace(const ComplexMatrix& encode_unitary,
                              const ComplexMatrix& decode_unitary,
                              const StateVector& s0, const ErrorSet& errors,
                              const FieldTrace& fields, const ZenoConfig& cfg,
                              const Encoding* enc_for_he) {
  const int periods = cfg.periods();
  if (fields.periods < periods) {
    throw DimensionMismatch("zeno_run: field trace shorter than the run");
  }
  if (std::abs(s0.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("zeno_run: initial state must be normalized");
  }
  const Eigen::Index dim = encode_unitary.rows();
  const Eigen::Index info = s0.size();
  const Eigen::Index ancilla = dim / info;

  ZenoReport report;
  ComplexMatrix rho_info = s0 * s0.adjoint();
  double he_accum = 0.0;
  for (int p = 0; p < periods; ++p) {
    const RealVector phi = fields.actions.row(p).transpose();
    // Embed with the ancilla reference state, encode, kick, decode.
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index a = 0; a < info; ++a) {
      for (Eigen::Index b = 0; b < info; ++b) {
        rho(a * ancilla, b * ancilla) = rho_info(a, b);
      }
    }
    rho = encode_unitary * rho * encode_unitary.adjoint();
    const ComplexMatrix u = noise_step(errors, phi, cfg.noise_mode);
    rho = u * rho * u.adjoint();
    rho = decode_unitary * rho * decode_unitary.adjoint();
    const double trace_now = rho.trace().real();

    double in_reference = 0.0;
    for (Eigen::Index a = 0; a < info; ++a) {
      in_reference += rho(a * ancilla, a * ancilla).real();
    }
    report.leakage_per_cycle.push_back(
        std::clamp(1.0 - in_reference / trace_now, 0.0, 1.0));

    // Trace out the ancilla, renormalize (first_order noise loses trace),
    // and reinstall the reference state.
    ComplexMatrix next = ComplexMatrix::Zero(info, info);
    for (Eigen::Index a = 0; a < info; ++a) {
      for (Eigen::Index b = 0; b < info; ++b) {
        for (Eigen::Index c = 0; c < ancilla; ++c) {
          next(a, b) += rho(a * ancilla + c, b * ancilla + c);
        }
      }
    }
    rho_info = next / trace_now;
    report.fidelity_per_cycle.push_back(
        std::real(s0.dot(rho_info * s0)));
    if (enc_for_he != nullptr) {
      he_accum += effective_hamiltonian(*enc_for_he, errors, phi).norm();
    }
  }
  report.final_infidelity =
      periods > 0 ? 1.0 - report.fidelity_per_cycle.back() : 0.0;
  report.h_e_norm = periods > 0 ? he_accum / periods : 0.0;
  return report;
}

// Deterministic unitary completion of an isometry: its columns, then the
// orthonormalized remainder of the standard basis, placed so column s*A
// carries code vector s (the decoder maps it back to |s> (x) |ancilla 0>).
ComplexMatrix complete_to_unitary(const ComplexMatrix& isometry) {
  const Eigen::Index dim = isometry.rows();
  const Eigen::Index info = isometry.cols();
  const Eigen::Index ancilla = dim / info;
  ComplexMatrix basis(dim, dim);
  Eigen::Index got = 0;
  for (Eigen::Index s = 0; s < info; ++s) {
    basis.col(got++) = isometry.col(s);
  }
  for (Eigen::Index e = 0; e < dim && got < dim; ++e) {
    StateVector cand = StateVector::Zero(dim);
    cand(e) = 1.0;
    for (Eigen::Index j = 0; j < got; ++j) {
      cand -= basis.col(j).dot(cand) * basis.col(j);
    }
    const double norm = cand.norm();
    if (norm > 1e-8) {
      basis.col(got++) = cand / norm;
    }
  }
  if (got < dim) {
    throw Error("zeno_run: failed to complete the encoding to a unitary");
  }
  // Permute: code vector s at column s*ancilla, fillers elsewhere.
  ComplexMatrix unitary(dim, dim);
  Eigen::Index filler = info;
  for (Eigen::Index col = 0; col < dim; ++col) {
    if (col % ancilla == 0) {
      unitary.col(col) = basis.col(col / ancilla);
    } else {
      unitary.col(col) = basis.col(filler++);
    }
  }
  return unitary;
}

}  // namespace

int ZenoConfig::periods() const {
  if (!(period > 0.0) || !(total_time >= period)) {
    throw std::invalid_argument("zeno config: need 0 < period <= total_time");
  }
  return static_cast<int>(std::lround(total_time / period));
}

FieldTrace make_field_trace(int m, int periods, double strength, std::uint64_t seed) {
  if (m < 0 || periods < 0 || strength < 0.0) {
    throw std::invalid_argument("field trace: negative shape or strength");
  }
  FieldTrace trace;
  trace.m = m;
  trace.periods = periods;
  trace.strength = strength;
  trace.seed = seed;
  trace.actions = RealMatrix(periods, m);
  Rng rng(seed);
  for (int p = 0; p < periods; ++p) {
    for (int j = 0; j < m; ++j) {
      trace.actions(p, j) = strength * rng.gaussian();
    }
  }
  return trace;
}

ComplexMatrix noise_step(const ErrorSet& errors, const RealVector& actions,
                         NoiseMode mode) {
  if (actions.size() != errors.size()) {
    throw DimensionMismatch("noise_step: one action per error generator required");
  }
  const Eigen::Index dim = errors.dim;
  switch (mode) {
    case NoiseMode::first_order: {
      ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
      for (int m = 0; m < errors.size(); ++m) {
        u -= kI * actions(m) * errors.generators[m];
      }
      return u;
    }
    case NoiseMode::exact: {
      ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
      for (int m = 0; m < errors.size(); ++m) {
        h += actions(m) * errors.generators[m];
      }
      return evolve(h, 1.0);
    }
    case NoiseMode::ordered_product: {
      ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
      for (int m = 0; m < errors.size(); ++m) {
        u = evolve(errors.generators[m], actions(m)) * u;
      }
      return u;
    }
  }
  throw std::invalid_argument("noise_step: unknown mode");
}

ComplexMatrix effective_hamiltonian(const Encoding& enc, const ErrorSet& errors,
                                    const RealVector& f) {
  if (f.size() != errors.size()) {
    throw DimensionMismatch("effective_hamiltonian: one amplitude per generator");
  }
  const Eigen::Index info = enc.info_dim();
  ComplexMatrix h = ComplexMatrix::Zero(info, info);
  for (int m = 0; m < errors.size(); ++m) {
    h += f(m) * projected_error(enc, errors.generators[m]);
  }
  return h;
}

ZenoReport zeno_run(const StateVector& s0, const Encoding& enc,
                    const ErrorSet& errors, const FieldTrace& fields,
                    const ZenoConfig& cfg) {
  check_field_dims(errors, fields);
  if (errors.size() > 0 && errors.dim != enc.full_dim()) {
    throw DimensionMismatch("zeno_run: encoding and error set dimensions differ");
  }
  if (s0.size() != enc.info_dim()) {
    throw DimensionMismatch("zeno_run: initial state does not fit the code");
  }
  if (cfg.reset_mode == ResetMode::replace) {
    const ComplexMatrix u = complete_to_unitary(enc.isometry);
    return run_cycles_replace(u, u.adjoint(), s0, errors, fields, cfg, &enc);
  }
  Protocol protocol;
  protocol.encode = [&enc](const StateVector& s) { return enc.isometry * s; };
  protocol.decode_project = [&enc](const StateVector& psi) {
    return (enc.isometry.adjoint() * psi).eval();
  };
  return run_cycles(protocol, s0, errors, fields, cfg, &enc);
}

ZenoReport zeno_run(const StateVector& s0, const TimingSequence& seq,
                    const ControlPair& pair, const ErrorSet& errors,
                    const FieldTrace& fields, const ZenoConfig& cfg) {
  check_field_dims(errors, fields);
  const ComplexMatrix encode = sequence_unitary(seq, pair);
  const ComplexMatrix decode = sequence_unitary(inverse_sequence(seq), pair);
  if (errors.size() > 0 && errors.dim != encode.rows()) {
    throw DimensionMismatch("zeno_run: error set does not match the control pair");
  }
  const Eigen::Index dim = encode.rows();
  const Eigen::Index info = s0.size();
  if (info < 1 || dim % info != 0) {
    throw DimensionMismatch("zeno_run: initial state does not fit the register");
  }
  const Eigen::Index ancilla = dim / info;

  Encoding realized;
  realized.k = 0;
  realized.isometry = ComplexMatrix(dim, info);
  for (Eigen::Index s = 0; s < info; ++s) {
    realized.isometry.col(s) = encode.col(s * ancilla);
  }
  if (cfg.reset_mode == ResetMode::replace) {
    return run_cycles_replace(encode, decode, s0, errors, fields, cfg, &realized);
  }
  Protocol protocol;
  protocol.encode = [&encode, ancilla, dim](const StateVector& s) {
    StateVector full = StateVector::Zero(dim);
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      full(i * ancilla) = s(i);
    }
    return (encode * full).eval();
  };
  protocol.decode_project = [&decode, ancilla, info](const StateVector& psi) {
    const StateVector full = decode * psi;
    StateVector raw(info);
    for (Eigen::Index i = 0; i < info; ++i) {
      raw(i) = full(i * ancilla);
    }
    return raw;
  };
  return run_cycles(protocol, s0, errors, fields, cfg, &realized);
}

ComplexMatrix master_step(const ComplexMatrix& rho, const ComplexMatrix& h_e,
                          double dt) {
  if (rho.rows() != rho.cols() || rho.rows() != h_e.rows()) {
    throw DimensionMismatch("master_step: dimensions disagree");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-9 ||
      std::abs(rho.trace().real() - 1.0) > 1e-9 ||
      std::abs(rho.trace().imag()) > 1e-9) {
    throw NotDensityMatrix("master_step: rho must be Hermitian with unit trace");
  }
  const ComplexMatrix u = evolve(h_e, dt);
  return u * rho * u.adjoint();
}

SuppressionStats random_encoding_gain(int n, int k, const ErrorSet& errors,
                                      int trials, std::uint64_t seed,
                                      std::vector<double>* element_magnitudes,
                                      int threads) {
  if (trials < 1) {
    throw std::invalid_argument("random_encoding_gain: need at least one trial");
  }
  if (k < 0 || k >= n) {
    throw std::invalid_argument("random_encoding_gain: need 0 <= k < n");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (errors.size() == 0 || errors.dim != dim) {
    throw DimensionMismatch("random_encoding_gain: error set must act on 2^n");
  }
  const Eigen::Index info = Eigen::Index{1} << k;
  const Eigen::Index ancilla = dim / info;
  const double a = static_cast<double>(ancilla);
  const int m_count = errors.size();
  const std::size_t per_trial_mag = static_cast<std::size_t>(m_count) * info * info;

  std::vector<double> normalized(static_cast<std::size_t>(trials) * m_count);
  std::vector<double> gain(normalized.size());
  if (element_magnitudes != nullptr) {
    element_magnitudes->resize(static_cast<std::size_t>(trials) * per_trial_mag);
  }

  auto run_trial = [&](int t) {
    Rng rng(seed + static_cast<std::uint64_t>(t));
    const ComplexMatrix u = haar_unitary(dim, rng);
    ComplexMatrix v(dim, info);
    for (Eigen::Index s = 0; s < info; ++s) {
      v.col(s) = u.col(s * ancilla);
    }
    for (int m = 0; m < m_count; ++m) {
      const ComplexMatrix h = v.adjoint() * (errors.generators[m] * v);
      const double proj2 = h.squaredNorm();
      const double full2 = errors.generators[m].squaredNorm();
      const std::size_t slot = static_cast<std::size_t>(t) * m_count + m;
      normalized[slot] = a * a * proj2 / full2;
      gain[slot] = full2 / (a * proj2);
      if (element_magnitudes != nullptr) {
        std::size_t idx = static_cast<std::size_t>(t) * per_trial_mag +
                          static_cast<std::size_t>(m) * info * info;
        for (Eigen::Index i = 0; i < info; ++i) {
          for (Eigen::Index j = 0; j < info; ++j) {
            (*element_magnitudes)[idx++] = std::abs(h(i, j));
          }
        }
      }
    }
  };
  parallel_for(trials, threads, run_trial);

  SuppressionStats stats;
  stats.trials = trials;
  stats.samples = static_cast<int>(normalized.size());
  stats.mean_normalized =
      std::accumulate(normalized.begin(), normalized.end(), 0.0) / stats.samples;
  double var = 0.0;
  for (const double g : normalized) {
    var += (g - stats.mean_normalized) * (g - stats.mean_normalized);
  }
  stats.stddev_normalized =
      stats.samples > 1 ? std::sqrt(var / (stats.samples - 1)) : 0.0;
  std::vector<double> sorted = normalized;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  stats.median_normalized = sorted[sorted.size() / 2];
  stats.mean_gain = std::accumulate(gain.begin(), gain.end(), 0.0) / stats.samples;
  return stats;
}

void write_zeno_csv(std::ostream& out, const ZenoReport& report) {
  const auto flags = out.flags();
  out << "cycle,fidelity,leakage\n" << std::setprecision(17);
  for (std::size_t p = 0; p < report.fidelity_per_cycle.size(); ++p) {
    out << p << ',' << report.fidelity_per_cycle[p] << ','
        << report.leakage_per_cycle[p] << '\n';
  }
  out.flags(flags);
}

}  // namespace zenocode
