#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hvrep {

// Runs the command-line interface.  Returns the process exit code:
//   0  success
//   2  input/usage problem (ValidationError, malformed files, bad flags)
//   3  numerical failure (NumericalError)
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace hvrep
