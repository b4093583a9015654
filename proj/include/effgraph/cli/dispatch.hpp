#ifndef EFFGRAPH_CLI_DISPATCH_HPP
#define EFFGRAPH_CLI_DISPATCH_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace effgraph::cli {

// Runs one command line (without the program name). Returns the process
// exit code: 0 ok, 1 usage, 2 budget exhausted, 3 contradiction or contract
// violation. Results go to `out` unless --out names a file.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace effgraph::cli

#endif  // EFFGRAPH_CLI_DISPATCH_HPP
