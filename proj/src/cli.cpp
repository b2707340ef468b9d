#include "qcorr/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcorr/state_io.hpp"
#include "qcorr/verify.hpp"

namespace qcorr::cli {

namespace {

struct RunConfig {
  std::string input;
  std::string out;
  Scheme scheme = Scheme::Closed;
  std::optional<long> shots;
  std::uint64_t seed = 1;
  long count = 0;
  std::optional<int> rank;
  int dim_b = 2;
  int mu_steps = 0;
  int register_qubits = 3;
  long trials = 200;
  std::string inject_fault = "none";
  // make-state
  std::string kind;
  double p = 0.5;
  double mu = 1.0;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15e", v);
  return buf;
}

int io_error(const std::string& path) {
  std::cerr << "error: cannot write " << path << '\n';
  return kIoError;
}

int cmd_compute(const RunConfig& cfg) {
  const bool sampled = cfg.scheme == Scheme::Sampled;
  if (sampled && !cfg.shots) {
    std::cerr << "error: --scheme sampled requires --shots\n";
    return kInputError;
  }
  if (!sampled && cfg.shots) {
    std::cerr << "error: --shots only applies to --scheme sampled\n";
    return kInputError;
  }

  std::optional<DensityMatrix> rho;
  try {
    rho = load_state(cfg.input);
  } catch (const StateValidationError& e) {
    std::cerr << "error: " << cfg.input << " is not a valid state\n";
    for (const auto& v : e.violations()) {
      std::cerr << "  " << to_string(v.kind) << ": " << v.message << '\n';
    }
    return kInputError;
  } catch (const StateFormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }

  const CorrelationReport closed = analyze(*rho);
  nlohmann::json report;
  report["d_g"] = closed.d_g;
  report["d_g_upper"] = closed.d_g_upper;
  report["negativity_sq"] = closed.negativity_sq;
  report["k"] = closed.k;
  double clamp = closed.radicand_clamp;

  switch (cfg.scheme) {
    case Scheme::Closed:
      report["scheme"] = "closed";
      report["q"] = closed.q;
      report["trace_s"] = closed.trace_s;
      report["trace_s2"] = closed.trace_s2;
      break;
    case Scheme::Traces: {
      const auto obs = observable_set(*rho);
      const double ts = trace_s_from_traces(obs);
      const double ts2 = trace_s2_from_traces(obs);
      const auto qv = q_from_moments(ts, ts2);
      report["scheme"] = "traces";
      report["q"] = qv.q;
      report["trace_s"] = ts;
      report["trace_s2"] = ts2;
      clamp = std::max(clamp, qv.radicand_clamp);
      break;
    }
    case Scheme::Projectors:
    case Scheme::Sampled: {
      const auto px = sampled ? sampled_scheme(*rho, *cfg.shots, cfg.seed) : projector_scheme(*rho);
      const auto est = q_from_measurements(px);
      report["scheme"] = sampled ? "sampled" : "projectors";
      report["q"] = est.q_hat;
      report["trace_s"] = est.trace_s_hat;
      report["trace_s2"] = est.trace_s2_hat;
      if (sampled) {
        report["shots"] = est.shots;
        report["stderr_q"] = est.stderr_q;
        report["seed"] = est.seed;
      }
      clamp = std::max(clamp, est.radicand_clamp);
      break;
    }
  }
  if (clamp > kClampReportThreshold) {
    std::cerr << "warning: negative radicand of magnitude " << clamp << " clamped to 0\n";
  }
  if (closed.arccos_clamp > kClampReportThreshold) {
    std::cerr << "warning: arccos argument exceeded 1 by " << closed.arccos_clamp << "\n";
  }

  std::ofstream out(cfg.out);
  if (!out) return io_error(cfg.out);
  out << report.dump(2) << '\n';
  if (!out) return io_error(cfg.out);
  return kSuccess;
}

int cmd_scatter(const RunConfig& cfg) {
  const int d = cfg.dim_b;
  if (cfg.rank && *cfg.rank > 2 * d) {
    std::cerr << "error: --rank must not exceed 2*dim_b\n";
    return kInputError;
  }
  std::ofstream out(cfg.out);
  if (!out) return io_error(cfg.out);
  out << "index,rank,q,d_g,negativity_sq\n";
  for (long i = 0; i < cfg.count; ++i) {
    const int rank = cfg.rank ? *cfg.rank : 1 + static_cast<int>(i % (2 * d));
    const auto rho = random_state(d, rank, derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    const auto rep = analyze(rho);
    out << i << ',' << rank << ',' << num(rep.q) << ',' << num(rep.d_g) << ','
        << num(rep.negativity_sq) << '\n';
  }
  if (!out) return io_error(cfg.out);
  return kSuccess;
}

int cmd_dqc1(const RunConfig& cfg) {
  std::ofstream out(cfg.out);
  if (!out) return io_error(cfg.out);
  out << "mu,q,d_g,negativity_sq\n";
  const ComplexMatrix u = jones_dqc1_unitary(cfg.register_qubits);
  for (int i = 0; i < cfg.mu_steps; ++i) {
    const double mu = static_cast<double>(i) / (cfg.mu_steps - 1);
    const auto rho = dqc1_output({cfg.register_qubits, mu, u});
    const auto rep = analyze(rho);
    out << num(mu) << ',' << num(rep.q) << ',' << num(rep.d_g) << ',' << num(rep.negativity_sq)
        << '\n';
  }
  if (!out) return io_error(cfg.out);
  return kSuccess;
}

// Eq. (5)-style polynomial with the sign of the Tr[rho (I ⊗ rho_B) rho (I ⊗ rho_B)]
// term flipped; `verify --inject-fault eq5-sign` must then fail.
TracePolynomial mutated_polynomial() {
  TracePolynomial poly = kTwoQubitTraceS2;
  poly[11] = -poly[11];
  return poly;
}

int cmd_verify(const RunConfig& cfg) {
  VerifyOptions options;
  options.trials = cfg.trials;
  options.seed = cfg.seed;
  if (cfg.inject_fault == "eq5-sign") options.trace_polynomial = mutated_polynomial();

  bool all = true;
  for (const auto& suite : run_all_suites(options)) {
    std::cout << (suite.passed ? "[PASS] " : "[FAIL] ") << suite.name << " (" << suite.trials
              << " trials): " << suite.detail << '\n';
    all = all && suite.passed;
  }
  return all ? kSuccess : kVerificationFailed;
}

int cmd_make_state(const RunConfig& cfg) {
  std::optional<DensityMatrix> rho;
  try {
    if (cfg.kind == "bell") {
      rho = bell_phi_plus();
    } else if (cfg.kind == "werner") {
      rho = werner_state(cfg.p);
    } else if (cfg.kind == "mixed") {
      rho = maximally_mixed(cfg.dim_b);
    } else if (cfg.kind == "random") {
      rho = random_state(cfg.dim_b, cfg.rank.value_or(2 * cfg.dim_b), cfg.seed);
    } else if (cfg.kind == "pure") {
      rho = random_pure(cfg.dim_b, cfg.seed);
    } else {
      rho = dqc1_output(jones_dqc1_config(cfg.mu, cfg.register_qubits));
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  try {
    save_state(cfg.out, *rho);
  } catch (const std::runtime_error&) {
    return io_error(cfg.out);
  }
  return kSuccess;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Observable quantum correlations (Q) and geometric discord for qubit-qudit states",
               "qcorr"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read flags from a TOML/INI file; command-line values win");

  RunConfig cfg;
  const std::map<std::string, Scheme> schemes = {{"closed", Scheme::Closed},
                                                 {"traces", Scheme::Traces},
                                                 {"projectors", Scheme::Projectors},
                                                 {"sampled", Scheme::Sampled}};

  auto* compute = app.add_subcommand("compute", "Correlation report for a state file");
  compute->add_option("--input", cfg.input, "State file (JSON)")->required()->check(CLI::ExistingFile);
  compute->add_option("--out", cfg.out, "Report file (JSON)")->required();
  compute->add_option("--scheme", cfg.scheme, "closed | traces | projectors | sampled")
      ->transform(CLI::CheckedTransformer(schemes, CLI::ignore_case));
  compute->add_option("--shots", cfg.shots, "Shots per projector (sampled scheme)")
      ->check(CLI::PositiveNumber);
  compute->add_option("--seed", cfg.seed, "Sampling seed");

  auto* scatter = app.add_subcommand("scatter", "Q, D_G and N^2 for random states (CSV)");
  scatter->add_option("--count", cfg.count, "Number of states")->required()->check(CLI::PositiveNumber);
  scatter->add_option("--seed", cfg.seed, "Seed");
  scatter->add_option("--rank", cfg.rank, "Rank of every state (default: cycle 1..2d)")
      ->check(CLI::PositiveNumber);
  scatter->add_option("--dim-b", cfg.dim_b, "Dimension of subsystem B")->check(CLI::Range(2, 64));
  scatter->add_option("--out", cfg.out, "CSV file")->required();

  auto* dqc1 = app.add_subcommand("dqc1", "Scan of the DQC1 output state over polarization (CSV)");
  dqc1->add_option("--mu-steps", cfg.mu_steps, "Grid points on [0, 1]")->required()->check(CLI::Range(2, 1000000));
  dqc1->add_option("--out", cfg.out, "CSV file")->required();
  dqc1->add_option("--register-qubits", cfg.register_qubits, "Register size n")->check(CLI::Range(1, 6));

  auto* verify = app.add_subcommand("verify", "Run the randomized invariant suites");
  verify->add_option("--trials", cfg.trials, "Trials per suite")->check(CLI::PositiveNumber);
  verify->add_option("--seed", cfg.seed, "Seed");
  verify->add_option("--inject-fault", cfg.inject_fault)
      ->check(CLI::IsMember({"none", "eq5-sign"}))
      ->group("");

  auto* make_state = app.add_subcommand("make-state", "Write a state file");
  make_state->add_option("--kind", cfg.kind, "bell | werner | mixed | random | pure | dqc1")
      ->required()
      ->check(CLI::IsMember({"bell", "werner", "mixed", "random", "pure", "dqc1"}));
  make_state->add_option("--out", cfg.out, "State file (JSON)")->required();
  make_state->add_option("--p", cfg.p, "Werner mixing")->check(CLI::Range(0.0, 1.0));
  make_state->add_option("--mu", cfg.mu, "DQC1 polarization")->check(CLI::Range(0.0, 1.0));
  make_state->add_option("--dim-b", cfg.dim_b, "Dimension of subsystem B")->check(CLI::Range(2, 64));
  make_state->add_option("--rank", cfg.rank, "Rank (random)")->check(CLI::PositiveNumber);
  make_state->add_option("--seed", cfg.seed, "Seed");
  make_state->add_option("--register-qubits", cfg.register_qubits, "Register size n (dqc1)")
      ->check(CLI::Range(1, 6));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*compute) return cmd_compute(cfg);
    if (*scatter) return cmd_scatter(cfg);
    if (*dqc1) return cmd_dqc1(cfg);
    if (*verify) return cmd_verify(cfg);
    return cmd_make_state(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("qcorr");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  argv.push_back(nullptr);
  return run(static_cast<int>(storage.size()), argv.data());
}

}  // namespace qcorr::cli
