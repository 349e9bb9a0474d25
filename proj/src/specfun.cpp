#include "lgspdc/specfun.hpp"

#include <cmath>
#include <string>

#include "lgspdc/errors.hpp"

namespace lgspdc {

namespace {

void require_nonnegative(int value, const char* name) {
  if (value < 0) {
    throw DomainError(std::string(name) + " must be nonnegative, got " +
                      std::to_string(value));
  }
}

template <class T>
T hyp2f1_series(int p_i, int p_s, int abs_l, T z) {
  require_nonnegative(p_i, "p_i");
  require_nonnegative(p_s, "p_s");
  require_nonnegative(abs_l, "abs_l");

  // term_{n+1} = term_n (n - p_i)(n - p_s) / ((n - p_i - p_s - |l|)(n + 1)) z
  const int terms = std::min(p_i, p_s);
  T sum{1};
  T term{1};
  for (int n = 0; n < terms; ++n) {
    const double ratio = (double(n - p_i) * double(n - p_s)) /
                         (double(n - p_i - p_s - abs_l) * double(n + 1));
    term *= ratio * z;
    sum += term;
  }
  return sum;
}

template <class T>
T pair_factor(int p_i, int p_s, int abs_l, T u, T v, T w) {
  using std::abs;
  const T uv = u * v;
  // Below this the hypergeometric argument w/(uv) overflows or is undefined.
  constexpr double kSingularThreshold = 1e-150;
  if (std::min(p_i, p_s) == 0 || abs(uv) > kSingularThreshold) {
    const T z = std::min(p_i, p_s) == 0 ? T{0} : w / uv;
    return (ipow(u, p_s) * ipow(v, p_i)) * hyp2f1_series(p_i, p_s, abs_l, z);
  }
  return terminating_pair_sum(p_i, p_s, abs_l, u, v, w);
}

}  // namespace

double laguerre_assoc(int p, int alpha, double x) {
  require_nonnegative(p, "p");
  require_nonnegative(alpha, "alpha");
  if (!std::isfinite(x)) throw DomainError("laguerre_assoc: x must be finite");

  double prev = 1.0;
  if (p == 0) return prev;
  double curr = 1.0 + alpha - x;
  for (int n = 1; n < p; ++n) {
    const double next =
        ((2.0 * n + 1.0 + alpha - x) * curr - (n + alpha) * prev) / (n + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

std::complex<double> hyp2f1_terminating(const HypergeometricTerminatingArgs& args) {
  return hyp2f1_series(args.p_i, args.p_s, args.abs_l, args.z);
}

double hyp2f1_terminating(int p_i, int p_s, int abs_l, double z) {
  return hyp2f1_series(p_i, p_s, abs_l, z);
}

double log_k_coefficient(int p_i, int p_s, int abs_l) {
  require_nonnegative(p_i, "p_i");
  require_nonnegative(p_s, "p_s");
  require_nonnegative(abs_l, "abs_l");
  const double numerator = std::lgamma(p_i + p_s + abs_l + 1.0);
  // Pairwise sums keep the result identical under p_i <-> p_s.
  const double bare = std::lgamma(p_i + 1.0) + std::lgamma(p_s + 1.0);
  const double shifted =
      std::lgamma(p_i + abs_l + 1.0) + std::lgamma(p_s + abs_l + 1.0);
  return numerator - 0.5 * (bare + shifted);
}

double k_coefficient(int p_i, int p_s, int abs_l) {
  return std::exp(log_k_coefficient(p_i, p_s, abs_l));
}

double laguerre_pair_factor(int p_i, int p_s, int abs_l, double u, double v, double w) {
  return pair_factor(p_i, p_s, abs_l, u, v, w);
}

std::complex<double> laguerre_pair_factor(int p_i, int p_s, int abs_l,
                                          std::complex<double> u,
                                          std::complex<double> v,
                                          std::complex<double> w) {
  return pair_factor(p_i, p_s, abs_l, u, v, w);
}

}  // namespace lgspdc
