#ifndef TREECOMP_CLI_HPP_
#define TREECOMP_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace treecomp {

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,
  kExitGuard = 2,
  kExitCertification = 3,
};

// Runs one command; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace treecomp

#endif  // TREECOMP_CLI_HPP_
