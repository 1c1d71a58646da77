#ifndef WREATHLAB_CLI_HPP_
#define WREATHLAB_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace wreathlab {

  // Exit codes of run_command.
  enum ExitCode : int {
    exit_ok            = 0,
    exit_refuted       = 1,  // refutation or counterexample found
    exit_input_error   = 2,  // malformed input, failed precondition, budget
    exit_internal      = 3,  // an internal check failed or a search bound ran out
  };

  // Runs one subcommand. args excludes the program name. The JSON report
  // goes to out (or --out), diagnostics to err.
  int run_command(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace wreathlab

#endif  // WREATHLAB_CLI_HPP_
