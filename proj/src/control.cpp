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

#include "zenocode/control.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace zenocode {

namespace {

const Complex kI(0.0, 1.0);

double spectral_norm(const ComplexMatrix& h) {
  const HermEig eig = herm_eig(h);
  return std::max(std::abs(eig.eigenvalues(0)),
                  std::abs(eig.eigenvalues(eig.eigenvalues.size() - 1)));
}

// Real components of a Hermitian matrix: diagonal, then upper-triangle
// real/imag pairs. One slot per independent degree of freedom.
void pack_hermitian(const ComplexMatrix& h, double* out) {
  const Eigen::Index n = h.rows();
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    out[idx++] = h(i, i).real();
    for (Eigen::Index j = i + 1; j < n; ++j) {
      out[idx++] = h(i, j).real();
      out[idx++] = h(i, j).imag();
    }
  }
}

ComplexMatrix embed_columns(const ComplexMatrix& unitary, int info, int ancilla) {
  ComplexMatrix v(unitary.rows(), info);
  for (int s = 0; s < info; ++s) {
    v.col(s) = unitary.col(static_cast<Eigen::Index>(s) * ancilla);
  }
  return v;
}

double frobenius_sq_residual(const ComplexMatrix& v, const ErrorSet& errors) {
  double q = 0.0;
  for (const auto& e : errors.generators) {
    q += (v.adjoint() * (e * v)).squaredNorm();
  }
  return q;
}

}  // namespace

ComplexMatrix build_h1(int n, double b_x, std::span<const double> mu) {
  if (static_cast<int>(mu.size()) != n) {
    throw DimensionMismatch("build_h1: mu must have one entry per qubit");
  }
  if (n < 1 || n > 12) {
    throw CapExceeded("build_h1: qubit count outside 1..12");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  const ComplexMatrix sx = pauli_x();
  for (int j = 0; j < n; ++j) {
    h += b_x * mu[j] * single_site(n, j, sx);
  }
  return h;
}

ComplexMatrix build_h2(int n, const std::array<double, 3>& br,
                       const RealMatrix& mu2, double delta_omega) {
  if (delta_omega == 0.0) {
    throw ZeroDetuning("build_h2: zero detuning");
  }
  if (mu2.rows() != n || mu2.cols() != n) {
    throw DimensionMismatch("build_h2: mu2 must be n x n");
  }
  if (n < 2 || n > 12) {
    throw CapExceeded("build_h2: qubit count outside 2..12");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  const std::array<ComplexMatrix, 3> sigma = {pauli_x(), pauli_y(), pauli_z()};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int a = 0; a < 3; ++a) {
        if (br[a] == 0.0) continue;
        for (int b = 0; b < 3; ++b) {
          if (br[b] == 0.0) continue;
          const double coeff = mu2(i, j) * br[a] * br[b] / delta_omega;
          h += coeff * two_site(n, i, sigma[a], j, sigma[b]);
        }
      }
    }
  }
  return h;
}

ControlPair default_control_pair(int n, std::uint64_t seed) {
  Rng rng(seed);
  ControlPair pair;
  pair.n_qubits = n;
  pair.params1.b_x = 1.0;
  pair.params1.mu.resize(n);
  for (int j = 0; j < n; ++j) {
    pair.params1.mu[j] = rng.uniform(0.5, 1.5);
  }
  pair.params2.br = {1.0, 1.0, 0.0};
  pair.params2.delta_omega = 10.0;
  pair.params2.mu2 = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double value = rng.uniform(0.5, 1.5);
      pair.params2.mu2(i, j) = value;
      pair.params2.mu2(j, i) = value;
    }
  }
  pair.h1 = build_h1(n, pair.params1.b_x, pair.params1.mu);
  pair.h2 = build_h2(n, pair.params2.br, pair.params2.mu2, pair.params2.delta_omega);
  return pair;
}

SequenceWork sequence_work(const TimingSequence& seq, const ControlPair& pair) {
  const Eigen::Index dim = pair.h1.rows();
  const int len = seq.length();
  const double sign = static_cast<double>(seq.sign);
  SequenceWork work;
  work.step.resize(len);
  work.prefix.resize(len + 1);
  work.suffix.resize(len + 1);
  work.prefix[0] = ComplexMatrix::Identity(dim, dim);
  for (int i = 0; i < len; ++i) {
    const ComplexMatrix& h =
        seq.tag_at(i) == HamiltonianTag::h1 ? pair.h1 : pair.h2;
    work.step[i] = evolve(h, sign * seq.timings[i]);
    work.prefix[i + 1] = work.step[i] * work.prefix[i];
  }
  work.suffix[len] = ComplexMatrix::Identity(dim, dim);
  for (int i = len - 1; i >= 0; --i) {
    work.suffix[i] = work.suffix[i + 1] * work.step[i];
  }
  return work;
}

ComplexMatrix sequence_unitary(const TimingSequence& seq, const ControlPair& pair) {
  const Eigen::Index dim = pair.h1.rows();
  const double sign = static_cast<double>(seq.sign);
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (int i = 0; i < seq.length(); ++i) {
    const ComplexMatrix& h =
        seq.tag_at(i) == HamiltonianTag::h1 ? pair.h1 : pair.h2;
    u = evolve(h, sign * seq.timings[i]) * u;
  }
  return u;
}

ComplexMatrix sequence_gradient(const SequenceWork& work, const TimingSequence& seq,
                                const ControlPair& pair, int slot) {
  if (slot < 0 || slot >= seq.length()) {
    throw IndexOutOfRange("sequence_gradient: slot " + std::to_string(slot) +
                          " outside sequence of length " +
                          std::to_string(seq.length()));
  }
  const ComplexMatrix& h =
      seq.tag_at(slot) == HamiltonianTag::h1 ? pair.h1 : pair.h2;
  const double sign = static_cast<double>(seq.sign);
  return work.suffix[slot + 1] * (-kI * sign * h) * work.step[slot] *
         work.prefix[slot];
}

ComplexMatrix sequence_gradient(const TimingSequence& seq, const ControlPair& pair,
                                int slot) {
  if (slot < 0 || slot >= seq.length()) {
    throw IndexOutOfRange("sequence_gradient: slot " + std::to_string(slot) +
                          " outside sequence of length " +
                          std::to_string(seq.length()));
  }
  return sequence_gradient(sequence_work(seq, pair), seq, pair, slot);
}

TimingSequence inverse_sequence(const TimingSequence& seq) {
  TimingSequence inv = seq;
  std::reverse(inv.timings.begin(), inv.timings.end());
  inv.sign = -seq.sign;
  // Each timing keeps its Hamiltonian: the reversed sequence starts with the
  // last slot's tag, so even lengths flip the start tag.
  inv.start_tag = seq.length() % 2 == 0 && seq.length() > 0
                      ? (seq.start_tag == HamiltonianTag::h1 ? HamiltonianTag::h2
                                                             : HamiltonianTag::h1)
                      : seq.start_tag;
  inv.trace.clear();
  inv.beta_history.clear();
  return inv;
}

std::vector<double> slot_actions(const TimingSequence& seq, const ControlPair& pair) {
  std::vector<double> actions(seq.length());
  if (seq.length() == 0) return actions;
  const double n1 = spectral_norm(pair.h1);
  const double n2 = spectral_norm(pair.h2);
  for (int i = 0; i < seq.length(); ++i) {
    actions[i] = seq.timings[i] *
                 (seq.tag_at(i) == HamiltonianTag::h1 ? n1 : n2);
  }
  return actions;
}

SynthesisResult synthesize(const ErrorSet& errors, const ControlPair& pair,
                           int k, const SynthesisOptions& options) {
  const Eigen::Index dim = pair.h1.rows();
  if (errors.size() > 0 && errors.dim != dim) {
    throw DimensionMismatch("synthesize: error set does not match control pair");
  }
  const int info = 1 << k;
  if (dim % info != 0) {
    throw DimensionMismatch("synthesize: 2^k must divide the register dimension");
  }
  const int ancilla = static_cast<int>(dim) / info;
  const int m_count = errors.size();

  Rng rng(options.seed);
  TimingSequence seq;
  seq.seed = options.seed;
  seq.sign = 1;
  seq.start_tag = HamiltonianTag::h1;
  seq.timings.resize(options.m_prime);
  // Scale the initial window so each slot acquires an O(pi) action.
  const double scale1 = M_PI / spectral_norm(pair.h1);
  const double scale2 = M_PI / spectral_norm(pair.h2);
  for (int i = 0; i < options.m_prime; ++i) {
    seq.timings[i] = rng.uniform(0.5, 1.5) *
                     (seq.tag_at(i) == HamiltonianTag::h1 ? scale1 : scale2);
  }
  const double mean_timing =
      options.m_prime > 0
          ? std::accumulate(seq.timings.begin(), seq.timings.end(), 0.0) /
                static_cast<double>(options.m_prime)
          : 0.0;
  const double timing_floor = 1e-6 * mean_timing;

  auto realized_encoding = [&](const TimingSequence& s, double residual) {
    Encoding enc;
    enc.n = pair.n_qubits;
    enc.k = k;
    enc.seed = options.seed;
    enc.isometry = embed_columns(sequence_unitary(s, pair), info, ancilla);
    enc.residual = residual;
    return enc;
  };

  if (m_count == 0) {
    seq.residual = 0.0;
    return {seq, realized_encoding(seq, 0.0)};
  }

  const Eigen::Index rows =
      static_cast<Eigen::Index>(m_count) * info * info;  // real equations
  double beta = options.beta0;
  SequenceWork work = sequence_work(seq, pair);
  ComplexMatrix v = embed_columns(work.unitary(), info, ancilla);
  double q = frobenius_sq_residual(v, errors);
  double r = weak_residual(v, errors);

  double best_r = r;
  TimingSequence best_seq = seq;
  int since_best = 0;

  for (int it = 0; it < options.max_iter; ++it) {
    seq.trace.emplace_back(it, r);
    seq.beta_history.push_back(beta);
    if (r <= options.tol) {
      seq.residual = r;
      return {seq, realized_encoding(seq, r)};
    }

    // Target increments of the projected error matrices: the first-order
    // change a half gamma step would produce on V^dag E_m V.
    const GammaCoefficients gamma = gamma_step(v, errors);
    const ComplexMatrix dv = 0.5 * apply_gamma(v, errors, gamma);
    RealVector rhs(rows);
    std::vector<ComplexMatrix> ev(m_count);
    for (int m = 0; m < m_count; ++m) {
      ev[m] = errors.generators[m] * v;
      const ComplexMatrix half = dv.adjoint() * ev[m];
      const ComplexMatrix target = half + half.adjoint();
      pack_hermitian(target, rhs.data() + static_cast<Eigen::Index>(m) * info * info);
    }

    // First-order response of each projected error matrix to each timing.
    RealMatrix response(rows, options.m_prime);
    for (int l = 0; l < options.m_prime; ++l) {
      const ComplexMatrix w =
          embed_columns(sequence_gradient(work, seq, pair, l), info, ancilla);
      for (int m = 0; m < m_count; ++m) {
        const ComplexMatrix half = w.adjoint() * ev[m];
        const ComplexMatrix term = half + half.adjoint();
        pack_hermitian(term, response.col(l).data() +
                                 static_cast<Eigen::Index>(m) * info * info);
      }
    }

    const RealVector dt = lstsq(response, rhs);
    TimingSequence trial = seq;
    for (int i = 0; i < options.m_prime; ++i) {
      trial.timings[i] = std::max(seq.timings[i] + beta * dt(i), timing_floor);
    }
    SequenceWork trial_work = sequence_work(trial, pair);
    const ComplexMatrix trial_v = embed_columns(trial_work.unitary(), info, ancilla);
    const double trial_q = frobenius_sq_residual(trial_v, errors);

    if (trial_q > q) {
      beta = std::max(beta * 0.5, 1e-8);
      ++since_best;
    } else {
      seq.timings = trial.timings;
      work = std::move(trial_work);
      v = trial_v;
      q = trial_q;
      r = weak_residual(v, errors);
      beta = std::min(beta * 1.2, 1.0);
      if (r < best_r) {
        best_r = r;
        best_seq = seq;
        best_seq.residual = r;
        since_best = 0;
      } else {
        ++since_best;
      }
    }
    if (options.patience > 0 && since_best > options.patience) {
      break;
    }
  }
  best_seq.trace = seq.trace;
  best_seq.beta_history = seq.beta_history;
  best_seq.residual = best_r;
  SynthesisResult best{best_seq, realized_encoding(best_seq, best_r)};
  throw SynthesisNotConverged(static_cast<int>(seq.trace.size()), best_r,
                              std::move(best));
}

SynthesisResult synthesize_with_restarts(const ErrorSet& errors,
                                         const ControlPair& pair, int k,
                                         SynthesisOptions options, int restarts) {
  double best_r = std::numeric_limits<double>::infinity();
  SynthesisResult best;
  int total_iters = 0;
  const std::uint64_t seed0 = options.seed;
  for (int attempt = 0; attempt <= restarts; ++attempt) {
    options.seed = seed0 + static_cast<std::uint64_t>(attempt);
    try {
      return synthesize(errors, pair, k, options);
    } catch (const SynthesisNotConverged& e) {
      total_iters += e.iterations;
      if (e.residual < best_r) {
        best_r = e.residual;
        best = e.best;
      }
    }
  }
  throw SynthesisNotConverged(total_iters, best_r, std::move(best));
}

void write_timing_sequence(std::ostream& out, const TimingSequence& seq) {
  const auto flags = out.flags();
  out << "timings " << seq.length() << ' ' << seq.sign << ' ' << seq.seed << ' '
      << std::setprecision(17) << seq.residual << '\n';
  for (const double t : seq.timings) {
    out << t << '\n';
  }
  out.flags(flags);
}

TimingSequence read_timing_sequence(std::istream& in) {
  std::string tag;
  TimingSequence seq;
  int count = 0;
  if (!(in >> tag >> count >> seq.sign >> seq.seed >> seq.residual) ||
      tag != "timings" || count < 0 || (seq.sign != 1 && seq.sign != -1)) {
    throw IOError("timing sequence: bad header");
  }
  seq.timings.resize(count);
  for (int i = 0; i < count; ++i) {
    if (!(in >> seq.timings[i])) {
      throw IOError("timing sequence: truncated timing list");
    }
    if (!(seq.timings[i] > 0.0)) {
      throw IOError("timing sequence: timings must be positive");
    }
  }
  return seq;
}

void write_control_pair(std::ostream& out, const ControlPair& pair) {
  out << "controlpair " << pair.n_qubits << '\n';
  write_matrix(out, pair.h1);
  write_matrix(out, pair.h2);
  const auto flags = out.flags();
  out << std::setprecision(17);
  out << "b_x " << pair.params1.b_x << '\n';
  out << "mu";
  for (const double m : pair.params1.mu) out << ' ' << m;
  out << '\n';
  out << "br " << pair.params2.br[0] << ' ' << pair.params2.br[1] << ' '
      << pair.params2.br[2] << '\n';
  out << "mu2";
  for (int i = 0; i < pair.n_qubits; ++i) {
    for (int j = 0; j < pair.n_qubits; ++j) {
      out << ' ' << pair.params2.mu2(i, j);
    }
  }
  out << '\n';
  out << "delta_omega " << pair.params2.delta_omega << '\n';
  out.flags(flags);
}

ControlPair read_control_pair(std::istream& in) {
  std::string tag;
  ControlPair pair;
  if (!(in >> tag >> pair.n_qubits) || tag != "controlpair" || pair.n_qubits < 1) {
    throw IOError("control pair: bad header");
  }
  pair.h1 = read_matrix(in);
  pair.h2 = read_matrix(in);
  const int n = pair.n_qubits;
  pair.params1.mu.resize(n);
  pair.params2.mu2 = RealMatrix::Zero(n, n);
  std::string key;
  while (in >> key) {
    if (key == "b_x") {
      if (!(in >> pair.params1.b_x)) throw IOError("control pair: bad b_x");
    } else if (key == "mu") {
      for (int j = 0; j < n; ++j) {
        if (!(in >> pair.params1.mu[j])) throw IOError("control pair: bad mu");
      }
    } else if (key == "br") {
      if (!(in >> pair.params2.br[0] >> pair.params2.br[1] >> pair.params2.br[2])) {
        throw IOError("control pair: bad br");
      }
    } else if (key == "mu2") {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (!(in >> pair.params2.mu2(i, j))) throw IOError("control pair: bad mu2");
        }
      }
    } else if (key == "delta_omega") {
      if (!(in >> pair.params2.delta_omega)) throw IOError("control pair: bad delta_omega");
    } else {
      throw IOError("control pair: unknown key " + key);
    }
  }
  const ComplexMatrix h1 = build_h1(n, pair.params1.b_x, pair.params1.mu);
  const ComplexMatrix h2 = build_h2(n, pair.params2.br, pair.params2.mu2,
                                    pair.params2.delta_omega);
  if ((h1 - pair.h1).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, h1.norm()) ||
      (h2 - pair.h2).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, h2.norm())) {
    throw IOError("control pair: stored matrices do not match parameters");
  }
  return pair;
}

}  // namespace zenocode
