#ifndef SP_CLI_HPP
#define SP_CLI_HPP

#include <string>
#include <vector>

namespace sp {

/// Command-line entry point.
///
///   spcheck check --model <file|builtin:...> [--samples N] [--seed S]
///                 [--tol T] [--json|--text]
///   spcheck fuzz  --model <...> [--rounds R] [--samples N] [--seed S]
///                 [--tol T] [--json|--text]
///   spcheck demo  <spin-half|two-path|pauli>
///
/// Seed defaults to the SPCHECK_SEED environment variable, then 0.
/// Exit codes: 0 all axioms pass (or not applicable), 1 any axiom fails,
/// 2 usage, parse, or schema error.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

}  // namespace sp

#endif
