#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace xcover::cli {

// Runs the command line given as argv-style arguments (args[0] is the program
// name). Returns the process exit status: 0 on success, 2 on usage, I/O or
// parse errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xcover::cli
