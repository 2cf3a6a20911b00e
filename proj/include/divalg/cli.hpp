#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace divalg {

// Runs one toolkit subcommand.  `args` holds the command line without the
// program name, e.g. {"minpoly", "--element", "1+i+j+k"}.  Results go to
// `out`, one-line diagnostics to `err`.
//
// Exit codes: 0 success / a true answer; 1 search exhausted / a false
// answer; 2 input error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace divalg
