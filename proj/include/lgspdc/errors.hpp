#ifndef LGSPDC_ERRORS_HPP
#define LGSPDC_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace lgspdc {

/// Invalid argument or precondition violation (negative waist, negative radial index, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature ran out of its evaluation budget before meeting the
/// requested tolerance. Carries the best estimate available at that point.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::complex<double> best_estimate,
                   double error_estimate)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        error_estimate_(error_estimate) {}

  std::complex<double> best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  std::complex<double> best_estimate_;
  double error_estimate_;
};

/// An integrand hit a pole (T = 0 in the finite-crystal integrand).
class SingularNodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lgspdc

#endif
