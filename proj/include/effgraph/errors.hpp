#ifndef EFFGRAPH_ERRORS_HPP
#define EFFGRAPH_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace effgraph {

// Root of every error the library reports. Each subclass maps onto one
// process exit code in the CLI (see ExitCode).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (x == y for adjacency, an
// injective map that is not injective, ...).
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

// A bounded search ran out of room. The question it answers is only
// semi-decidable, so this never means "no".
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

// A postcondition that holds by construction failed. Indicates a bug in
// this library or an input that does not honor its oracle contract.
class InternalContradiction : public Error {
 public:
  using Error::Error;
};

enum class ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kBudgetExhausted = 2,
  kContradiction = 3,
};

}  // namespace effgraph

#endif  // EFFGRAPH_ERRORS_HPP
