#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace warped {

// Malformed profile expression; offset is the byte position in the input
// where parsing stopped.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " (at byte " + std::to_string(offset) + ")"), offset_(offset)
    {
    }
    std::size_t offset() const noexcept
    {
        return offset_;
    }

  private:
    std::size_t offset_;
};

// Evaluation failure: argument outside the declared domain, or a
// non-finite value (e.g. a rational profile evaluated at a pole).
class EvalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Numerical failure inside a solver: step-size underflow, bracket
// failure, or disagreement between independent methods.
class SolveError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace warped
