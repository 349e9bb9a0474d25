#ifndef LGSPDC_SPECFUN_HPP
#define LGSPDC_SPECFUN_HPP

#include <algorithm>
#include <complex>

namespace lgspdc {

/// Parameters of 2F1[-p_i, -p_s; -p_i-p_s-|l|; z], which terminates after
/// min(p_i, p_s) + 1 terms.
struct HypergeometricTerminatingArgs {
  int p_i = 0;
  int p_s = 0;
  int abs_l = 0;
  std::complex<double> z{};
};

/// Associated Laguerre polynomial L_p^alpha(x) by forward three-term recurrence.
/// Throws DomainError for p < 0, alpha < 0 or non-finite x.
double laguerre_assoc(int p, int alpha, double x);

std::complex<double> hyp2f1_terminating(const HypergeometricTerminatingArgs& args);
double hyp2f1_terminating(int p_i, int p_s, int abs_l, double z);

/// (p_i+p_s+|l|)! / sqrt(p_i! p_s! (p_s+|l|)! (p_i+|l|)!), evaluated through
/// log-gamma. Symmetric in (p_i, p_s) bit for bit.
double k_coefficient(int p_i, int p_s, int abs_l);
double log_k_coefficient(int p_i, int p_s, int abs_l);

/// Integer power by repeated squaring; never goes through log, so negative
/// and complex bases are fine.
template <class T>
T ipow(T base, int exponent) {
  T result{1};
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

/// Sum_n c_n u^(p_s-n) v^(p_i-n) w^n with c_n the coefficients of the
/// terminating series above. Equals u^p_s v^p_i 2F1(...; w/(u v)) but stays
/// finite when u or v vanishes, where the hypergeometric argument is singular.
template <class T>
T terminating_pair_sum(int p_i, int p_s, int abs_l, T u, T v, T w) {
  const int terms = std::min(p_i, p_s);
  T sum{0};
  double coeff = 1.0;
  for (int n = 0; n <= terms; ++n) {
    sum += coeff * (ipow(u, p_s - n) * ipow(v, p_i - n)) * ipow(w, n);
    if (n < terms) {
      coeff *= (double(n - p_i) * double(n - p_s)) /
               (double(n - p_i - p_s - abs_l) * double(n + 1));
    }
  }
  return sum;
}

/// Same value as terminating_pair_sum, routed through hyp2f1_terminating
/// whenever u v is safely away from zero.
double laguerre_pair_factor(int p_i, int p_s, int abs_l, double u, double v, double w);
std::complex<double> laguerre_pair_factor(int p_i, int p_s, int abs_l,
                                          std::complex<double> u,
                                          std::complex<double> v,
                                          std::complex<double> w);

}  // namespace lgspdc

#endif
