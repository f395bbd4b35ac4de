#ifndef PPMBEAM_ERRORS_HPP
#define PPMBEAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ppmbeam {

// Invalid argument / out-of-domain input.
class DomainError : public std::invalid_argument {
public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// An iterative routine failed to converge, or a result is numerically
// untrustworthy. Carries the iteration count where meaningful.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what, long iterations = 0)
      : std::runtime_error(what), iterations_(iterations) {}
  long iterations() const noexcept { return iterations_; }

private:
  long iterations_;
};

// A grid search ended on the bracket boundary; the caller must widen the
// bracket instead of trusting an extrapolated optimum.
class BracketError : public std::runtime_error {
public:
  explicit BracketError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ppmbeam

#endif
