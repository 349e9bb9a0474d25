#ifndef LGSPDC_QUADRATURE_HPP
#define LGSPDC_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace lgspdc {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  std::size_t max_evaluations = 200000;
};

/// A value with an absolute error bound. Integrands may return this instead
/// of a bare value (nested integration); the bound is then integrated along
/// with the value and added to each panel's error.
template <class T>
struct Estimate {
  T value{};
  double error = 0.0;
};

template <class T>
struct QuadratureResult {
  T value{};
  double abs_error = 0.0;
  double magnitude = 0.0;  // estimate of the integral of |f|
  std::size_t evaluations = 0;
  bool converged = false;
};

namespace detail {

template <class T>
struct is_estimate : std::false_type {};
template <class T>
struct is_estimate<Estimate<T>> : std::true_type {};

template <class R>
struct integrand_value {
  using type = R;
};
template <class T>
struct integrand_value<Estimate<T>> {
  using type = T;
};

// G10K21 tables. Kronrod abscissae are stored for x >= 0 with x = 0 first;
// the Gauss nodes sit at the odd Kronrod indices.
struct KronrodRule {
  static constexpr unsigned kKronrodPoints = 21;
  static constexpr unsigned kGaussPoints = 10;

  static const auto& abscissa() {
    return boost::math::quadrature::gauss_kronrod<double, kKronrodPoints>::abscissa();
  }
  static const auto& kronrod_weights() {
    return boost::math::quadrature::gauss_kronrod<double, kKronrodPoints>::weights();
  }
  static const auto& gauss_weights() {
    return boost::math::quadrature::gauss<double, kGaussPoints>::weights();
  }
};

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
  double magnitude;  // integral of |f| over the panel
};

template <class F>
auto evaluate_panel(F& f, double a, double b) {
  using R = std::invoke_result_t<F&, double>;
  using T = typename integrand_value<R>::type;
  using std::abs;

  const auto& x = KronrodRule::abscissa();
  const auto& wk = KronrodRule::kronrod_weights();
  const auto& wg = KronrodRule::gauss_weights();

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  T kronrod{0};
  T gauss{0};
  double magnitude = 0.0;
  double propagated = 0.0;

  auto sample_error = [&](double node, T& out) -> double {
    if constexpr (is_estimate<R>::value) {
      const R r = f(node);
      out = r.value;
      return r.error;
    } else {
      out = f(node);
      return 0.0;
    }
  };

  T fc{};
  const double ec = sample_error(center, fc);
  kronrod += fc * wk[0];
  magnitude += abs(fc) * wk[0];
  propagated += ec * wk[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    T fp{};
    T fm{};
    const double ep = sample_error(center + half * x[i], fp);
    const double em = sample_error(center - half * x[i], fm);
    kronrod += (fp + fm) * wk[i];
    magnitude += (abs(fp) + abs(fm)) * wk[i];
    propagated += (ep + em) * wk[i];
    if (i % 2 == 1) gauss += (fp + fm) * wg[i / 2];
  }
  kronrod *= half;
  gauss *= half;
  propagated *= std::abs(half);
  magnitude *= std::abs(half);
  return Panel<T>{a, b, kronrod, abs(kronrod - gauss) + propagated, magnitude};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (G10K21) integration of f over [a, b].
/// The panel with the largest error estimate is bisected until
/// error <= max(abs_tol, rel_tol |value|, 50 eps * integral of |f|) or the
/// evaluation budget runs out. The last term is the roundoff floor: without
/// it an integral that cancels to zero could never meet a relative target.
/// On budget exhaustion `converged` is false and the best estimate is
/// returned.
/// Panel order and summation order are fixed, so results are reproducible.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, const QuadratureConfig& config) {
  using R = std::invoke_result_t<F&, double>;
  using T = typename detail::integrand_value<R>::type;
  using std::abs;
  using PanelT = detail::Panel<T>;

  constexpr std::size_t kPerPanel = detail::KronrodRule::kKronrodPoints;

  QuadratureResult<T> result;
  if (a == b) {
    result.converged = true;
    return result;
  }

  auto by_error = [](const PanelT& lhs, const PanelT& rhs) {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.a > rhs.a;
  };

  std::vector<PanelT> heap;
  heap.push_back(detail::evaluate_panel(f, a, b));
  result.evaluations = kPerPanel;

  constexpr double kRoundoff = 50.0 * std::numeric_limits<double>::epsilon();
  struct Totals {
    T value;
    double error;
    double magnitude;
  };
  auto totals = [&heap]() {
    T value{0};
    double error = 0.0;
    double magnitude = 0.0;
    std::vector<const PanelT*> ordered;
    ordered.reserve(heap.size());
    for (const auto& p : heap) ordered.push_back(&p);
    std::sort(ordered.begin(), ordered.end(),
              [](const PanelT* l, const PanelT* r) { return l->a < r->a; });
    for (const PanelT* p : ordered) {
      value += p->value;
      error += p->error;
      magnitude += p->magnitude;
    }
    return Totals{value, error, magnitude};
  };
  auto target = [&config](const T& value, double magnitude) {
    return std::max({config.abs_tol, config.rel_tol * abs(value), kRoundoff * magnitude});
  };

  T running_value = heap.front().value;
  double running_error = heap.front().error;
  double running_magnitude = heap.front().magnitude;
  auto finish = [&](bool converged) {
    const Totals t = totals();
    result.value = t.value;
    result.abs_error = t.error;
    result.magnitude = t.magnitude;
    result.converged = converged;
    return result;
  };

  while (true) {
    if (running_error <= target(running_value, running_magnitude)) {
      // Re-sum in a fixed order so drift in the running sums cannot matter.
      const Totals t = totals();
      running_value = t.value;
      running_error = t.error;
      running_magnitude = t.magnitude;
      if (t.error <= target(t.value, t.magnitude)) return finish(true);
    }
    if (result.evaluations + 2 * kPerPanel > config.max_evaluations) {
      return finish(false);
    }

    std::pop_heap(heap.begin(), heap.end(), by_error);
    const PanelT worst = heap.back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel cannot be split further in double precision.
      std::push_heap(heap.begin(), heap.end(), by_error);
      return finish(false);
    }
    heap.pop_back();
    PanelT left = detail::evaluate_panel(f, worst.a, mid);
    PanelT right = detail::evaluate_panel(f, mid, worst.b);
    running_value += (left.value + right.value) - worst.value;
    running_error += (left.error + right.error) - worst.error;
    running_magnitude += (left.magnitude + right.magnitude) - worst.magnitude;
    heap.push_back(std::move(left));
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(std::move(right));
    std::push_heap(heap.begin(), heap.end(), by_error);
    result.evaluations += 2 * kPerPanel;
  }
}

/// Smallest x > 0 with x^n exp(-c x) <= rel * max_x' x'^n exp(-c x').
/// Used to truncate Gaussian-times-polynomial integrands.
inline double gaussian_tail_cutoff(double n, double c, double rel) {
  const double log_rel = std::log(rel);
  if (n <= 0.0) return -log_rel / c;
  const double peak = n / c;
  const double log_peak = n * std::log(peak) - c * peak;
  auto excess = [&](double x) { return n * std::log(x) - c * x - log_peak - log_rel; };
  double lo = peak;
  double hi = 2.0 * peak - log_rel / c;
  while (excess(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace lgspdc

#endif
