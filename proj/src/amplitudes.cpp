#include "lgspdc/amplitudes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lgspdc/errors.hpp"
#include "lgspdc/specfun.hpp"

namespace lgspdc {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kTailRel = 1e-18;

double parity(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// i^n for n >= 0.
cplx i_power(int n) {
  switch (n % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

Amplitude zero_amplitude(Method method) { return Amplitude{{0.0, 0.0}, method, 0.0}; }

[[noreturn]] void throw_unconverged(const char* what, cplx best, double err) {
  throw ConvergenceError(std::string(what) + ": quadrature did not reach tolerance",
                         best, err);
}

// Terms at the dimensionless crystal coordinate eps = (t + L/2) / (k_p w_p^2).
TIntegrandTerms terms_at(double gamma_i, double gamma_s, double eps) {
  const double gi2 = gamma_i * gamma_i;
  const double gs2 = gamma_s * gamma_s;
  TIntegrandTerms terms;
  terms.I = cplx(0.5 * (gi2 + 1.0), eps * gi2);
  terms.S = cplx(0.5 * (gs2 + 1.0), eps * gs2);
  terms.B = -gamma_i * gamma_s * cplx(2.0 * eps, 1.0);
  terms.T = 4.0 * terms.I * terms.S + terms.B * terms.B;
  return terms;
}

// Radius (in units where the Gaussian is exp(-c x), x = r^2 or similar)
// beyond which a degree-n polynomial times the Gaussian is negligible.
double radial_cutoff(double n, double c, double length_scale_sq) {
  return std::sqrt(gaussian_tail_cutoff(n, c, kTailRel) * length_scale_sq);
}

}  // namespace

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::analytic: return "analytic";
    case Method::crystal_integral: return "crystal_integral";
    case Method::oracle_collinear: return "oracle_collinear";
    case Method::oracle_full: return "oracle_full";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  if (name == "analytic") return Method::analytic;
  if (name == "crystal_integral" || name == "crystal") return Method::crystal_integral;
  if (name == "oracle_collinear" || name == "collinear") return Method::oracle_collinear;
  if (name == "oracle_full" || name == "full") return Method::oracle_full;
  return std::nullopt;
}

QuadratureConfig default_quadrature_1d() { return QuadratureConfig{1e-10, 0.0, 200000}; }

QuadratureConfig default_quadrature_3d() { return QuadratureConfig{1e-7, 0.0, 200000000}; }

TIntegrandTerms integrand_terms(const BeamGeometry& geom, const CrystalParams& crystal,
                                double t) {
  const double eps =
      (t + 0.5 * crystal.length()) / (crystal.k_p() * geom.w_p() * geom.w_p());
  return terms_at(geom.gamma_i(), geom.gamma_s(), eps);
}

double normalization_constant(const BeamGeometry& geom) {
  const double gi = geom.gamma_i();
  const double gs = geom.gamma_s();
  return 2.0 * std::sqrt(2.0 / kPi) * (gi * gs) / (1.0 + (gi * gi + gs * gs));
}

double thin_crystal_closed_form(const BeamGeometry& geom, const ModePair& mode) {
  mode.validate();
  const int l = mode.abs_l();
  const double gi = geom.gamma_i();
  const double gs = geom.gamma_s();
  const double sum = gi * gi + gs * gs;
  const double diff = gi * gi - gs * gs;
  const double c = 1.0 + sum;
  // Each base is divided by c once per power, which keeps every factor
  // bounded by 1 in magnitude.
  const double base_s = (1.0 + diff) / c;
  const double base_i = (1.0 - diff) / c;
  const double cross = (1.0 - sum) / (1.0 + sum);
  const double radial = laguerre_pair_factor(mode.p_i, mode.p_s, l, base_s, base_i, cross);
  return k_coefficient(mode.p_i, mode.p_s, l) * ipow(-2.0 * (gi * gs) / c, l) * radial;
}

Amplitude amplitude_analytic(const BeamGeometry& geom, const ModePair& mode) {
  mode.validate();
  if (!mode.conserves_oam()) return zero_amplitude(Method::analytic);
  const double value = normalization_constant(geom) * parity(mode.abs_l()) *
                       thin_crystal_closed_form(geom, mode);
  return Amplitude{{value, 0.0}, Method::analytic, 0.0};
}

Amplitude amplitude_crystal_integral(const BeamGeometry& geom, const CrystalParams& crystal,
                                     const ModePair& mode, const QuadratureConfig& quad) {
  mode.validate();
  if (crystal.thin()) {
    throw DomainError("amplitude_crystal_integral requires a crystal length L > 0");
  }
  if (!mode.conserves_oam()) return zero_amplitude(Method::crystal_integral);

  const int l = mode.abs_l();
  const int p_i = mode.p_i;
  const int p_s = mode.p_s;
  const double gi = geom.gamma_i();
  const double gs = geom.gamma_s();
  const double strength = crystal.strength(geom);

  // Mean of the integrand over the crystal, as an integral over s in [0, 1].
  auto integrand = [&](double s) -> cplx {
    const TIntegrandTerms k = terms_at(gi, gs, strength * s);
    if (k.T == 0.0) throw SingularNodeError("crystal integrand: T vanishes at a node");
    const cplx inv_t = 1.0 / k.T;
    const cplx base_s = (k.T - 4.0 * k.I) * inv_t;
    const cplx base_i = (k.T - 4.0 * k.S) * inv_t;
    const cplx cross = (k.T - 4.0 * k.I - 4.0 * k.S + 4.0) * inv_t;
    return ipow(2.0 * k.B * inv_t, l) * laguerre_pair_factor(p_i, p_s, l, base_s, base_i, cross) *
           inv_t;
  };
  const auto mean = integrate_adaptive(integrand, 0.0, 1.0, quad);

  const cplx prefactor = 2.0 * std::sqrt(2.0 / kPi) * (gi * gs) * i_power(l) *
                         parity(p_s + p_i) * k_coefficient(p_i, p_s, l);
  const cplx value = prefactor * mean.value;
  const double err = std::abs(prefactor) * mean.abs_error;
  if (!mean.converged) throw_unconverged("amplitude_crystal_integral", value, err);
  return Amplitude{value, Method::crystal_integral, err};
}

Amplitude amplitude_oracle_collinear(const BeamGeometry& geom, const ModePair& mode,
                                     const QuadratureConfig& quad) {
  mode.validate();
  // The azimuthal integral is 2 pi delta_{l_s, -l_i}.
  if (!mode.conserves_oam()) return zero_amplitude(Method::oracle_collinear);

  const int l = mode.abs_l();
  const double gi = geom.gamma_i();
  const double gs = geom.gamma_s();
  // Lengths in units of w_p.
  const double w_s = 1.0 / gs;
  const double w_i = 1.0 / gi;
  const double gauss = 1.0 + gs * gs + gi * gi;
  const double r_max = radial_cutoff(l + mode.p_s + mode.p_i + 0.5, gauss, 1.0);

  auto integrand = [&](double r) {
    return r * lg_radial_r(0, 0, 1.0, r) * lg_radial_r(mode.p_s, l, w_s, r) *
           lg_radial_r(mode.p_i, l, w_i, r);
  };
  const auto radial = integrate_adaptive(integrand, 0.0, r_max, quad);
  const double value = 2.0 * kPi * radial.value;
  const double err = 2.0 * kPi * radial.abs_error;
  if (!radial.converged) throw_unconverged("amplitude_oracle_collinear", value, err);
  return Amplitude{{value, 0.0}, Method::oracle_collinear, err};
}

Amplitude amplitude_oracle_full(const BeamGeometry& geom, const CrystalParams& crystal,
                                const ModePair& mode, const QuadratureConfig& quad) {
  mode.validate();
  // Phi depends on phi_i - phi_s only, so the phi_s integral gives
  // 2 pi delta_{l_s, -l_i}.
  if (!mode.conserves_oam()) return zero_amplitude(Method::oracle_full);

  const int l = mode.abs_l();
  const double gi = geom.gamma_i();
  const double gs = geom.gamma_s();
  // Everything in units of w_p; the crystal keeps only L / (k_p w_p^2).
  const BeamGeometry unit = BeamGeometry::from_gammas(gi, gs);
  const CrystalParams unit_crystal(crystal.strength(geom), 1.0);
  const double prefactor = unit_crystal.thin() ? 1.0 : unit_crystal.phasematch_prefactor();
  const double w_s = unit.w_s();
  const double w_i = unit.w_i();

  // k-space modes decay like x^(|l|/2 + p) exp(-x/2) with x = rho^2 w^2 / 2.
  const double rho_max_s = radial_cutoff(0.5 * l + mode.p_s + 0.5, 0.5, 2.0 / (w_s * w_s));
  const double rho_max_i = radial_cutoff(0.5 * l + mode.p_i + 0.5, 0.5, 2.0 / (w_i * w_i));

  std::size_t evaluations = 0;
  const std::size_t budget = quad.max_evaluations;
  constexpr std::size_t kLevelCap = 200000;

  auto integrate = [&](const QuadratureConfig& outer_cfg, const QuadratureConfig& middle_cfg,
                       const QuadratureConfig& inner_cfg) {
    auto angular = [&](double rho_s, double rho_i) -> Estimate<cplx> {
      auto f = [&](double dphi) {
        return pump_phasematch(unit, unit_crystal, rho_i, rho_s, dphi) *
               (std::cos(l * dphi) / prefactor);
      };
      const auto r = integrate_adaptive(f, 0.0, kPi, inner_cfg);
      evaluations += r.evaluations;
      return {2.0 * r.value, 2.0 * r.abs_error};
    };
    auto middle = [&](double rho_s) -> Estimate<cplx> {
      auto f = [&](double rho_i) -> Estimate<cplx> {
        const double weight = rho_i * lg_radial_k(mode.p_i, l, w_i, rho_i);
        if (weight == 0.0) return {};
        const auto a = angular(rho_s, rho_i);
        return {weight * a.value, std::abs(weight) * a.error};
      };
      const auto r = integrate_adaptive(f, 0.0, rho_max_i, middle_cfg);
      if (evaluations > budget) {
        throw ConvergenceError("amplitude_oracle_full: evaluation budget exhausted", {}, 0.0);
      }
      return {r.value, r.abs_error};
    };
    auto outer = [&](double rho_s) -> Estimate<cplx> {
      const double weight = rho_s * lg_radial_k(mode.p_s, l, w_s, rho_s);
      if (weight == 0.0) return {};
      const auto m = middle(rho_s);
      return {weight * m.value, std::abs(weight) * m.error};
    };
    return integrate_adaptive(outer, 0.0, rho_max_s, outer_cfg);
  };

  // Inner errors are propagated outward, so the summed nested error is about
  // (inner relative tolerance) x integral of |integrand|. When that integral
  // far exceeds the cancelling total (high radial orders), fixed relative
  // inner tolerances can never meet the outer target. A coarse pilot measures
  // the cancellation and the inner levels are tightened by it.
  const auto pilot = integrate(QuadratureConfig{1e-3, 0.0, 63 * 21},
                               QuadratureConfig{1e-4, 1e-6, kLevelCap},
                               QuadratureConfig{1e-5, 1e-7, kLevelCap});
  if (pilot.magnitude == 0.0) return zero_amplitude(Method::oracle_full);
  const double scale = std::max(std::abs(pilot.value), 1e-6 * pilot.magnitude);
  const double cancellation = std::max(1.0, pilot.magnitude / scale);
  const double middle_rel = 0.1 * quad.rel_tol / cancellation;
  const double inner_rel = 0.1 * middle_rel;

  const auto r = integrate(QuadratureConfig{quad.rel_tol, quad.abs_tol, kLevelCap},
                           QuadratureConfig{middle_rel, 0.1 * middle_rel * scale, kLevelCap},
                           QuadratureConfig{inner_rel, 0.1 * inner_rel * scale, kLevelCap});
  // Full k-space overlap is 2 pi r; the canonical scale is that divided by
  // 2 pi, with (-1)^|l| for the k-space phase convention.
  const cplx value = parity(l) * r.value;
  const double err = r.abs_error;
  if (!r.converged) throw_unconverged("amplitude_oracle_full", value, err);
  return Amplitude{value, Method::oracle_full, err};
}

Amplitude evaluate_amplitude(Method method, const BeamGeometry& geom,
                             const std::optional<CrystalParams>& crystal,
                             const ModePair& mode, const QuadratureConfig& quad) {
  switch (method) {
    case Method::analytic:
      return amplitude_analytic(geom, mode);
    case Method::crystal_integral:
      if (!crystal) throw DomainError("crystal_integral needs crystal parameters");
      return amplitude_crystal_integral(geom, *crystal, mode, quad);
    case Method::oracle_collinear:
      return amplitude_oracle_collinear(geom, mode, quad);
    case Method::oracle_full:
      return amplitude_oracle_full(geom, crystal.value_or(CrystalParams(0.0, 1.0)), mode, quad);
  }
  throw DomainError("unknown amplitude method");
}

}  // namespace lgspdc
