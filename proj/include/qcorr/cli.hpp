#pragma once

#include <string>
#include <vector>

namespace qcorr::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kInputError = 2,
  kIoError = 3,
};

enum class Scheme { Closed, Traces, Projectors, Sampled };

/// Parses and runs one subcommand:
///   compute --input F --out F [--scheme closed|traces|projectors|sampled --shots N --seed K]
///   scatter --count N --seed K [--rank R --dim-b D] --out F
///   dqc1 --mu-steps N --out F [--register-qubits n]
///   verify [--trials N --seed K]
///   make-state --kind bell|werner|mixed|random|pure|dqc1 --out F [...]
/// Every flag may also come from --config FILE (TOML/INI); command-line values win.
int run(int argc, char** argv);
int run(const std::vector<std::string>& args);

}  // namespace qcorr::cli
