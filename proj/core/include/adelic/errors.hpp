#pragma once

#include <stdexcept>
#include <string>

namespace adelic {

/// Bad input: non-prime moduli, mismatched primes, malformed specs.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation was not met by the caller.
class PreconditionViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested operation needs a rational density it cannot get.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine could not reach the requested tolerance.
/// The best estimate found so far travels with the exception.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double best_real, double best_imag, double error_estimate)
      : std::runtime_error(what), best_real_(best_real), best_imag_(best_imag), error_(error_estimate) {}
  double best_real() const noexcept { return best_real_; }
  double best_imag() const noexcept { return best_imag_; }
  double error_estimate() const noexcept { return error_; }

 private:
  double best_real_;
  double best_imag_;
  double error_;
};

/// The window does not generate a Gabor frame for the lattice (lower bound
/// estimate vanishes within resolution).
class NotAFrame : public std::runtime_error {
 public:
  NotAFrame(const std::string& what, double lower, double upper)
      : std::runtime_error(what), lower_(lower), upper_(upper) {}
  double lower_bound() const noexcept { return lower_; }
  double upper_bound() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

/// An iterative inversion failed to converge; carries the spectral diagnostic
/// (estimated contraction factor of the iteration).
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double contraction)
      : std::runtime_error(what), contraction_(contraction) {}
  double contraction() const noexcept { return contraction_; }

 private:
  double contraction_;
};

}  // namespace adelic
