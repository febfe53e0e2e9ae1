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

// Batch driver for the protection pipeline:
//   gen-errors -> find-code -> synth -> simulate, plus random-study.
// All artifacts are plain text; every command echoes its effective
// configuration to <out>.config so runs can be reproduced bit for bit.
//
// Exit codes: 0 success, 2 usage/validation, 3 non-convergence, 4 I/O.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zenocode/code_search.hpp"
#include "zenocode/control.hpp"
#include "zenocode/errors.hpp"
#include "zenocode/parallel.hpp"
#include "zenocode/zeno.hpp"

namespace {

using namespace zenocode;

constexpr int kExitValidation = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitIo = 4;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IOError("cannot open input file " + path);
  }
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IOError("cannot open output file " + path);
  }
  return out;
}

// Flat "key value" echo of the subcommand's effective options.
void write_config_echo(CLI::App* cmd, const std::string& out_path) {
  std::ofstream out(out_path + ".config");
  if (!out) {
    throw IOError("cannot write config echo " + out_path + ".config");
  }
  out << cmd->config_to_str(true, false);
}

void attach_config(CLI::App* cmd) {
  cmd->set_config("--config", "", "flat key-value config file; flags override");
  auto fmt = std::make_shared<CLI::ConfigBase>();
  fmt->valueSeparator(' ');
  cmd->config_formatter(fmt);
}

int qubits_of(const ErrorSet& errors) {
  if (errors.n_qubits > 0) return errors.n_qubits;
  int n = 0;
  while ((1 << n) < errors.dim) ++n;
  return (1 << n) == errors.dim ? n : 0;
}

std::string format_double(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

// ---------------------------------------------------------------------------
// gen-errors

struct GenErrorsArgs {
  int n = 0;
  int t = 1;
  bool random = false;
  int dim = 0;
  int m = 0;
  std::uint64_t seed = 0;
  int max_dim = 4096;
  std::string axes = "XYZ";
  std::string out;
};

void run_gen_errors(CLI::App* cmd, const GenErrorsArgs& args) {
  ErrorSet set;
  if (args.random) {
    if (args.dim < 2 || args.m < 1) {
      throw CLI::ValidationError("gen-errors", "--random needs --dim >= 2 and --m >= 1");
    }
    set = random_error_set(args.dim, args.m, args.seed);
  } else {
    if (args.n < 1) {
      throw CLI::ValidationError("gen-errors", "--n must be at least 1");
    }
    set = pauli_error_set(args.n, args.t, args.max_dim);
    if (args.axes != "XYZ") {
      ErrorSet filtered;
      filtered.n_qubits = set.n_qubits;
      filtered.dim = set.dim;
      filtered.weight = set.weight;
      for (int i = 0; i < set.size(); ++i) {
        const std::string& label = set.labels[i];
        const bool keep = std::all_of(label.begin(), label.end(), [&](char c) {
          return c == '.' || args.axes.find(c) != std::string::npos;
        });
        if (keep) {
          filtered.generators.push_back(set.generators[i]);
          filtered.labels.push_back(label);
        }
      }
      if (filtered.size() == 0) {
        throw CLI::ValidationError("gen-errors", "--axes filtered out every generator");
      }
      set = std::move(filtered);
    }
  }
  auto out = open_output(args.out);
  write_error_set(out, set);
  write_config_echo(cmd, args.out);
  std::cout << "wrote " << set.size() << " generators (dim " << set.dim
            << ") to " << args.out << '\n';
}

// ---------------------------------------------------------------------------
// find-code

struct FindCodeArgs {
  std::string errors_path;
  int k = 1;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int max_iter = 5000;
  int restarts = 10;
  std::string out;
};

void report_encoding(const Encoding& enc, const ErrorSet& errors, bool converged) {
  std::cout << "converged " << (converged ? 1 : 0) << '\n'
            << "residual " << format_double(enc.residual) << '\n'
            << "iterations " << enc.trace.size() << '\n';
  if (enc.n > 0) {
    const HammingCheck check = hamming_feasible(enc.n, enc.k, errors.size());
    std::cout << "hamming_feasible " << (check.feasible ? 1 : 0) << '\n'
              << "hamming_slack " << format_double(check.slack) << '\n';
  }
  std::cout << "knill_residual " << format_double(knill_residual(enc, errors))
            << '\n';
}

int run_find_code(CLI::App* cmd, const FindCodeArgs& args) {
  auto in = open_input(args.errors_path);
  const ErrorSet errors = read_error_set(in);
  const int n = qubits_of(errors);
  if (n > 0 && args.k < n &&
      !hamming_feasible(n, args.k, errors.size()).feasible) {
    std::cerr << "warning: M=" << errors.size()
              << " exceeds the ancilla dimension; the search may not converge\n";
  }
  int exit_code = 0;
  Encoding enc;
  bool converged = true;
  try {
    enc = find_encoding_with_restarts(errors, args.k, args.seed, args.tol,
                                      args.max_iter, args.restarts);
  } catch (const EncodingNotConverged& e) {
    enc = e.best;
    converged = false;
    exit_code = kExitNotConverged;
  }
  auto out = open_output(args.out);
  write_encoding(out, enc);
  write_config_echo(cmd, args.out);
  report_encoding(enc, errors, converged);
  return exit_code;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
  std::string errors_path;
  int k = 1;
  int m_prime = 0;  // 0: slightly above M * N^2
  std::uint64_t seed = 1;
  std::uint64_t pair_seed = 1;
  std::string pair_path;
  std::string out_pair;
  double tol = 1e-6;
  int max_iter = 2000;
  double beta0 = 1.0;
  int patience = 80;
  int restarts = 5;
  bool verify_inverse = false;
  std::string out;
  std::string out_encoding;
};

int run_synth(CLI::App* cmd, const SynthArgs& args) {
  auto in = open_input(args.errors_path);
  const ErrorSet errors = read_error_set(in);
  const int n = qubits_of(errors);
  if (n == 0) {
    throw CLI::ValidationError("synth", "error set dimension must be a power of two");
  }
  ControlPair pair;
  if (!args.pair_path.empty()) {
    auto pair_in = open_input(args.pair_path);
    pair = read_control_pair(pair_in);
    if (pair.n_qubits != n) {
      throw DimensionMismatch("control pair acts on " +
                              std::to_string(pair.n_qubits) + " qubits, errors on " +
                              std::to_string(n));
    }
  } else {
    pair = default_control_pair(n, args.pair_seed);
  }

  const int info = 1 << args.k;
  const int min_timings = errors.size() * info * info;
  SynthesisOptions options;
  options.m_prime = args.m_prime > 0
                        ? args.m_prime
                        : min_timings + std::max(2, min_timings / 8);
  options.seed = args.seed;
  options.tol = args.tol;
  options.max_iter = args.max_iter;
  options.beta0 = args.beta0;
  options.patience = args.patience;
  if (options.m_prime < min_timings) {
    std::cerr << "warning: m-prime " << options.m_prime << " is below M*N^2 = "
              << min_timings << "; the timing system is underdetermined\n";
  }

  int exit_code = 0;
  SynthesisResult result;
  bool converged = true;
  try {
    result = synthesize_with_restarts(errors, pair, args.k, options, args.restarts);
  } catch (const SynthesisNotConverged& e) {
    result = e.best;
    converged = false;
    exit_code = kExitNotConverged;
  }

  auto out = open_output(args.out);
  write_timing_sequence(out, result.sequence);
  if (!args.out_encoding.empty()) {
    auto enc_out = open_output(args.out_encoding);
    write_encoding(enc_out, result.encoding);
  }
  if (!args.out_pair.empty()) {
    auto pair_out = open_output(args.out_pair);
    write_control_pair(pair_out, pair);
  }
  write_config_echo(cmd, args.out);

  const std::vector<double> actions = slot_actions(result.sequence, pair);
  const double min_action =
      actions.empty() ? 0.0 : *std::min_element(actions.begin(), actions.end());
  const double mean_action =
      actions.empty() ? 0.0
                      : std::accumulate(actions.begin(), actions.end(), 0.0) /
                            actions.size();
  const auto big = static_cast<std::size_t>(
      std::count_if(actions.begin(), actions.end(), [](double a) { return a >= 1.0; }));

  std::cout << "converged " << (converged ? 1 : 0) << '\n'
            << "residual " << format_double(result.sequence.residual) << '\n'
            << "iterations " << result.sequence.trace.size() << '\n'
            << "m_prime " << options.m_prime << '\n'
            << "min_action " << format_double(min_action) << '\n'
            << "mean_action " << format_double(mean_action) << '\n'
            << "big_action_fraction "
            << format_double(actions.empty()
                                 ? 0.0
                                 : static_cast<double>(big) / actions.size())
            << '\n';
  if (args.verify_inverse) {
    const ComplexMatrix forward = sequence_unitary(result.sequence, pair);
    const ComplexMatrix backward =
        sequence_unitary(inverse_sequence(result.sequence), pair);
    const Eigen::Index dim = forward.rows();
    const double dev = (forward * backward - ComplexMatrix::Identity(dim, dim))
                           .cwiseAbs()
                           .maxCoeff();
    std::cout << "inverse_deviation " << format_double(dev) << '\n';
  }
  return exit_code;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string errors_path;
  std::string encoding_path;
  std::string sequence_path;
  std::string pair_path;
  int k = 1;  // information qubits for the sequence route
  std::vector<double> periods_list;  // Zeno periods T
  double total_time = 1.0;
  double epsilon = 0.02;  // RMS action per period at the first T
  int seeds = 100;
  std::uint64_t seed0 = 0;
  std::string noise_mode = "exact";
  std::string reset_mode = "postselect";
  std::uint64_t s0_seed = 0;
  bool s0_random = false;
  int threads = 1;
  std::string out;
};

NoiseMode parse_noise_mode(const std::string& name) {
  if (name == "exact") return NoiseMode::exact;
  if (name == "first-order") return NoiseMode::first_order;
  if (name == "ordered") return NoiseMode::ordered_product;
  throw CLI::ValidationError("simulate", "unknown noise mode " + name);
}

ResetMode parse_reset_mode(const std::string& name) {
  if (name == "postselect") return ResetMode::postselect;
  if (name == "replace") return ResetMode::replace;
  throw CLI::ValidationError("simulate", "unknown reset mode " + name);
}

std::string period_label(double period) {
  std::ostringstream s;
  s << std::setprecision(6) << period;
  return s.str();
}

int run_simulate(CLI::App* cmd, const SimulateArgs& args) {
  auto err_in = open_input(args.errors_path);
  const ErrorSet errors = read_error_set(err_in);

  const bool use_sequence = !args.sequence_path.empty();
  if (use_sequence == !args.encoding_path.empty()) {
    throw CLI::ValidationError("simulate",
                               "give exactly one of --encoding or --sequence (with --pair)");
  }

  Encoding enc;
  TimingSequence seq;
  ControlPair pair;
  Eigen::Index info = 0;
  if (use_sequence) {
    if (args.pair_path.empty()) {
      throw CLI::ValidationError("simulate", "--sequence requires --pair");
    }
    auto seq_in = open_input(args.sequence_path);
    seq = read_timing_sequence(seq_in);
    auto pair_in = open_input(args.pair_path);
    pair = read_control_pair(pair_in);
    if (errors.dim != pair.h1.rows()) {
      throw DimensionMismatch("simulate: error set and control pair dimensions differ");
    }
    info = Eigen::Index{1} << args.k;
    if (pair.h1.rows() % info != 0) {
      throw DimensionMismatch("simulate: 2^k must divide the register dimension");
    }
  } else {
    auto enc_in = open_input(args.encoding_path);
    enc = read_encoding(enc_in);
    if (errors.size() > 0 && errors.dim != enc.full_dim()) {
      throw DimensionMismatch("simulate: error set and encoding dimensions differ");
    }
    info = enc.info_dim();
  }

  StateVector s0 = StateVector::Zero(info);
  if (args.s0_random) {
    Rng rng(args.s0_seed);
    s0 = random_gaussian_matrix(info, 1, rng).col(0);
    s0.normalize();
  } else {
    s0(0) = 1.0;
  }

  if (args.periods_list.empty()) {
    throw CLI::ValidationError("simulate", "--T needs at least one period");
  }
  const NoiseMode noise = parse_noise_mode(args.noise_mode);
  const ResetMode reset = parse_reset_mode(args.reset_mode);
  const double base_period = args.periods_list.front();

  std::ostringstream summary;
  summary << "simulate summary\n"
          << "total_time " << format_double(args.total_time) << '\n'
          << "noise_mode " << args.noise_mode << '\n'
          << "reset_mode " << args.reset_mode << '\n'
          << "seeds " << args.seeds << '\n';

  std::vector<double> mean_infidelities;
  for (const double period : args.periods_list) {
    ZenoConfig cfg;
    cfg.period = period;
    cfg.total_time = args.total_time;
    cfg.noise_mode = noise;
    cfg.reset_mode = reset;
    const int periods = cfg.periods();
    // Quasi-static fields: the per-period action scales with the period.
    const double eps = args.epsilon * period / base_period;

    std::vector<ZenoReport> reports(args.seeds);
    std::vector<int> failed(args.seeds, 0);
    parallel_for(args.seeds, args.threads, [&](int i) {
      const FieldTrace trace = make_field_trace(
          errors.size(), periods, eps, args.seed0 + static_cast<std::uint64_t>(i));
      try {
        reports[i] = use_sequence
                         ? zeno_run(s0, seq, pair, errors, trace, cfg)
                         : zeno_run(s0, enc, errors, trace, cfg);
      } catch (const ZeroNormState&) {
        failed[i] = 1;
      }
    });

    double infid_sum = 0.0;
    double infid_sq = 0.0;
    double he_sum = 0.0;
    int ok = 0;
    std::vector<double> mean_fid(periods, 0.0);
    std::vector<double> mean_leak(periods, 0.0);
    for (int i = 0; i < args.seeds; ++i) {
      if (failed[i]) {
        std::cerr << "seed " << args.seed0 + static_cast<std::uint64_t>(i)
                  << ": state fully leaked (T " << period << ")\n";
        continue;
      }
      ++ok;
      infid_sum += reports[i].final_infidelity;
      infid_sq += reports[i].final_infidelity * reports[i].final_infidelity;
      he_sum += reports[i].h_e_norm;
      for (int p = 0; p < periods; ++p) {
        mean_fid[p] += reports[i].fidelity_per_cycle[p];
        mean_leak[p] += reports[i].leakage_per_cycle[p];
      }
    }
    if (ok == 0) {
      throw ZeroNormState("simulate: every seed leaked completely");
    }
    const double mean_inf = infid_sum / ok;
    const double var = ok > 1 ? (infid_sq - ok * mean_inf * mean_inf) / (ok - 1) : 0.0;
    mean_infidelities.push_back(mean_inf);

    const std::string csv_path = args.out + "_T" + period_label(period) + ".csv";
    auto csv = open_output(csv_path);
    ZenoReport mean_report;
    for (int p = 0; p < periods; ++p) {
      mean_report.fidelity_per_cycle.push_back(mean_fid[p] / ok);
      mean_report.leakage_per_cycle.push_back(mean_leak[p] / ok);
    }
    write_zeno_csv(csv, mean_report);

    summary << "T " << format_double(period) << " periods " << periods
            << " epsilon " << format_double(eps) << " final_infidelity "
            << format_double(mean_inf) << " stddev "
            << format_double(std::sqrt(std::max(var, 0.0))) << " h_e_norm "
            << format_double(he_sum / ok) << " seeds_ok " << ok << '\n';
  }

  for (std::size_t i = 0; i + 1 < args.periods_list.size(); ++i) {
    const double denom = mean_infidelities[i + 1];
    summary << "infidelity_ratio " << format_double(args.periods_list[i]) << "/"
            << format_double(args.periods_list[i + 1]) << " "
            << format_double(denom > 0.0 ? mean_infidelities[i] / denom : 0.0)
            << " expected "
            << format_double(args.periods_list[i] / args.periods_list[i + 1])
            << '\n';
  }

  auto summary_out = open_output(args.out + "_summary.txt");
  summary_out << summary.str();
  std::cout << summary.str();
  write_config_echo(cmd, args.out);
  return 0;
}

// ---------------------------------------------------------------------------
// random-study

struct RandomStudyArgs {
  int n = 4;
  int k = 1;
  int t = 1;
  std::string errors_path;
  int trials = 50;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
  std::string hist;
};

int run_random_study(CLI::App* cmd, const RandomStudyArgs& args) {
  if (args.trials < 10) {
    std::cerr << "warning: " << args.trials
              << " trials give weak statistics; 10 or more recommended\n";
  }
  ErrorSet errors;
  if (!args.errors_path.empty()) {
    auto in = open_input(args.errors_path);
    errors = read_error_set(in);
  } else {
    errors = pauli_error_set(args.n, args.t);
  }
  std::vector<double> magnitudes;
  const SuppressionStats stats = random_encoding_gain(
      args.n, args.k, errors, args.trials, args.seed, &magnitudes, args.threads);

  const int ancilla = 1 << (args.n - args.k);
  std::ostringstream report;
  report << "random-study report\n"
         << "n " << args.n << '\n'
         << "k " << args.k << '\n'
         << "ancilla_dim " << ancilla << '\n'
         << "trials " << stats.trials << '\n'
         << "samples " << stats.samples << '\n'
         << "mean_normalized_suppression " << format_double(stats.mean_normalized)
         << '\n'
         << "median_normalized_suppression "
         << format_double(stats.median_normalized) << '\n'
         << "stddev_normalized_suppression "
         << format_double(stats.stddev_normalized) << '\n'
         << "mean_gain " << format_double(stats.mean_gain) << '\n'
         << "predicted_gain_order " << ancilla << '\n';

  auto out = open_output(args.out);
  out << report.str();
  std::cout << report.str();

  const std::string hist_path = args.hist.empty() ? args.out + ".hist" : args.hist;
  auto hist = open_output(hist_path);
  hist << std::setprecision(17);
  for (const double v : magnitudes) {
    hist << v << '\n';
  }
  write_config_echo(cmd, args.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zenocode: code search, non-holonomic control synthesis and "
               "Zeno protection simulation"};
  app.require_subcommand(1);

  GenErrorsArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen-errors", "generate an error-generator set");
  gen->add_option("--n", gen_args.n, "qubit count for a Pauli set")
      ->check(CLI::Range(1, 12));
  gen->add_option("--t", gen_args.t, "maximum Pauli weight")->capture_default_str();
  gen->add_flag("--random", gen_args.random, "draw GUE generators instead");
  gen->add_option("--dim", gen_args.dim, "dimension for --random");
  gen->add_option("--m", gen_args.m, "generator count for --random");
  gen->add_option("--seed", gen_args.seed, "random seed")->capture_default_str();
  gen->add_option("--max-dim", gen_args.max_dim, "dimension cap")->capture_default_str();
  gen->add_option("--axes", gen_args.axes, "keep only these Pauli axes")
      ->capture_default_str();
  gen->add_option("--out", gen_args.out, "output file")->required();
  attach_config(gen);

  FindCodeArgs find_args;
  CLI::App* find = app.add_subcommand("find-code", "search a weak-condition code");
  find->add_option("--errors", find_args.errors_path, "error set file")->required();
  find->add_option("--k", find_args.k, "information qubits")->required();
  find->add_option("--seed", find_args.seed, "search seed")->capture_default_str();
  find->add_option("--tol", find_args.tol, "target residual")->capture_default_str();
  find->add_option("--max-iter", find_args.max_iter, "iteration budget")->capture_default_str();
  find->add_option("--restarts", find_args.restarts, "restart budget")->capture_default_str();
  find->add_option("--out", find_args.out, "encoding output file")->required();
  attach_config(find);

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand("synth", "synthesize control timings");
  synth->add_option("--errors", synth_args.errors_path, "error set file")->required();
  synth->add_option("--k", synth_args.k, "information qubits")->required();
  synth->add_option("--m-prime", synth_args.m_prime,
                    "timing count (default: slightly above M*N^2)");
  synth->add_option("--seed", synth_args.seed, "timing seed")->capture_default_str();
  synth->add_option("--pair-seed", synth_args.pair_seed,
                    "seed for the default control pair")->capture_default_str();
  synth->add_option("--pair", synth_args.pair_path, "control pair file");
  synth->add_option("--out-pair", synth_args.out_pair, "write the control pair here");
  synth->add_option("--tol", synth_args.tol, "target residual")->capture_default_str();
  synth->add_option("--max-iter", synth_args.max_iter, "iteration budget")->capture_default_str();
  synth->add_option("--beta0", synth_args.beta0, "initial step scale")->capture_default_str();
  synth->add_option("--patience", synth_args.patience,
                    "iterations without improvement before giving up")->capture_default_str();
  synth->add_option("--restarts", synth_args.restarts, "restart budget")->capture_default_str();
  synth->add_flag("--verify-inverse", synth_args.verify_inverse,
                  "multiply the sequence by its inverse and report the deviation");
  synth->add_option("--out", synth_args.out, "timing sequence output file")->required();
  synth->add_option("--out-encoding", synth_args.out_encoding,
                    "write the realized encoding here");
  attach_config(synth);

  SimulateArgs sim_args;
  CLI::App* sim = app.add_subcommand("simulate", "run Zeno protection cycles");
  sim->add_option("--errors", sim_args.errors_path, "error set file")->required();
  sim->add_option("--encoding", sim_args.encoding_path, "encoding file");
  sim->add_option("--sequence", sim_args.sequence_path, "timing sequence file");
  sim->add_option("--pair", sim_args.pair_path, "control pair file (with --sequence)");
  sim->add_option("--k", sim_args.k, "information qubits for the sequence route")->capture_default_str();
  sim->add_option("--T", sim_args.periods_list, "Zeno periods to sweep")
      ->required()
      ->delimiter(',');
  sim->add_option("--total-time", sim_args.total_time, "protection span")->capture_default_str();
  sim->add_option("--epsilon", sim_args.epsilon,
                  "RMS action per period at the first T (scales with T)")->capture_default_str();
  sim->add_option("--seeds", sim_args.seeds, "number of field seeds")->capture_default_str();
  sim->add_option("--seed0", sim_args.seed0, "first field seed")->capture_default_str();
  sim->add_option("--noise-mode", sim_args.noise_mode,
                  "exact | first-order | ordered")->capture_default_str();
  sim->add_option("--reset-mode", sim_args.reset_mode, "postselect | replace")->capture_default_str();
  sim->add_flag("--s0-random", sim_args.s0_random,
                "random initial information state instead of basis 0");
  sim->add_option("--s0-seed", sim_args.s0_seed, "seed for --s0-random")->capture_default_str();
  sim->add_option("--threads", sim_args.threads, "worker threads over seeds")->capture_default_str();
  sim->add_option("--out", sim_args.out, "output prefix")->required();
  attach_config(sim);

  RandomStudyArgs study_args;
  CLI::App* study = app.add_subcommand("random-study",
                                       "suppression statistics of Haar-random encodings");
  study->add_option("--n", study_args.n, "qubit count")->required()
      ->check(CLI::Range(1, 12));
  study->add_option("--k", study_args.k, "information qubits")->required();
  study->add_option("--t", study_args.t, "Pauli weight of the default error set")->capture_default_str();
  study->add_option("--errors", study_args.errors_path,
                    "error set file (overrides --t)");
  study->add_option("--trials", study_args.trials, "Haar samples")->capture_default_str()
      ->check(CLI::PositiveNumber);
  study->add_option("--seed", study_args.seed, "Haar seed")->capture_default_str();
  study->add_option("--threads", study_args.threads, "worker threads over trials")->capture_default_str();
  study->add_option("--out", study_args.out, "report file")->required();
  study->add_option("--hist", study_args.hist,
                    "projected-element magnitude file (default <out>.hist)");
  attach_config(study);

  int exit_code = 0;
  gen->callback([&]() { run_gen_errors(gen, gen_args); });
  find->callback([&]() { exit_code = run_find_code(find, find_args); });
  synth->callback([&]() { exit_code = run_synth(synth, synth_args); });
  sim->callback([&]() { exit_code = run_simulate(sim, sim_args); });
  study->callback([&]() { exit_code = run_random_study(study, study_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  } catch (const IOError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const NotConverged& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNotConverged;
  } catch (const ZeroNormState& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNotConverged;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return exit_code;
}
