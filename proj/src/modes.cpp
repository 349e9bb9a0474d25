#include "lgspdc/modes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lgspdc/errors.hpp"
#include "lgspdc/specfun.hpp"

namespace lgspdc {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_finite(double value, const char* name) {
  if (!(std::isfinite(value) && value > 0.0)) {
    throw DomainError(std::string(name) + " must be finite and > 0");
  }
}

// sqrt(p! / (p+|l|)!) x^(|l|/2) exp(-x/2) L_p^|l|(x), without overflow for
// large indices.
double laguerre_gauss_profile(int p, int abs_l, double x) {
  const double laguerre = laguerre_assoc(p, abs_l, x);
  if (x == 0.0) return abs_l == 0 ? laguerre : 0.0;
  const double log_norm = 0.5 * (std::lgamma(p + 1.0) - std::lgamma(p + abs_l + 1.0));
  return std::exp(log_norm + 0.5 * abs_l * std::log(x) - 0.5 * x) * laguerre;
}

void validate_mode(int p, double w) {
  if (p < 0) throw DomainError("radial index p must be nonnegative");
  require_positive_finite(w, "beam waist");
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace

BeamGeometry BeamGeometry::from_waists(double w_p, double w_s, double w_i) {
  require_positive_finite(w_p, "w_p");
  require_positive_finite(w_s, "w_s");
  require_positive_finite(w_i, "w_i");
  const double gamma_s = w_p / w_s;
  const double gamma_i = w_p / w_i;
  require_positive_finite(gamma_s, "gamma_s");
  require_positive_finite(gamma_i, "gamma_i");
  return BeamGeometry(w_p, w_s, w_i, gamma_s, gamma_i);
}

BeamGeometry BeamGeometry::from_gammas(double gamma_i, double gamma_s) {
  require_positive_finite(gamma_i, "gamma_i");
  require_positive_finite(gamma_s, "gamma_s");
  const double w_s = 1.0 / gamma_s;
  const double w_i = 1.0 / gamma_i;
  require_positive_finite(w_s, "w_s");
  require_positive_finite(w_i, "w_i");
  return BeamGeometry(1.0, w_s, w_i, gamma_s, gamma_i);
}

BeamGeometry BeamGeometry::scaled(double factor) const {
  require_positive_finite(factor, "scale factor");
  const double w_p = w_p_ * factor;
  const double w_s = w_s_ * factor;
  const double w_i = w_i_ * factor;
  require_positive_finite(w_p, "w_p");
  require_positive_finite(w_s, "w_s");
  require_positive_finite(w_i, "w_i");
  return BeamGeometry(w_p, w_s, w_i, gamma_s_, gamma_i_);
}

CrystalParams::CrystalParams(double length, double k_p) : length_(length), k_p_(k_p) {
  if (!(std::isfinite(length) && length >= 0.0)) {
    throw DomainError("crystal length must be finite and >= 0");
  }
  require_positive_finite(k_p, "k_p");
}

CrystalParams CrystalParams::from_wavelength(double length, double wavelength,
                                             double refractive_index) {
  require_positive_finite(wavelength, "wavelength");
  require_positive_finite(refractive_index, "refractive index");
  return CrystalParams(length, 2.0 * kPi * refractive_index / wavelength);
}

double CrystalParams::strength(const BeamGeometry& geom) const noexcept {
  return length_ / (k_p_ * geom.w_p() * geom.w_p());
}

double CrystalParams::phasematch_prefactor() const noexcept {
  return std::sqrt(2.0 * length_ / (kPi * kPi * k_p_));
}

void ModePair::validate() const {
  if (p_s < 0 || p_i < 0) throw DomainError("radial indices must be nonnegative");
}

double lg_radial_k(int p, int l, double w, double rho) {
  validate_mode(p, w);
  const double x = 0.5 * rho * rho * w * w;
  const double sign = (p % 2 == 0) ? 1.0 : -1.0;
  return std::sqrt(w * w / (2.0 * kPi)) * sign * laguerre_gauss_profile(p, std::abs(l), x);
}

double lg_radial_r(int p, int l, double w, double r) {
  validate_mode(p, w);
  const double x = 2.0 * r * r / (w * w);
  return std::sqrt(2.0 / kPi) / w * laguerre_gauss_profile(p, std::abs(l), x);
}

std::complex<double> lg_mode_k(int p, int l, double w, TransversePoint pt) {
  const double radial = lg_radial_k(p, l, w, pt.rho);
  return std::polar(radial, l * (pt.phi + 0.5 * kPi));
}

std::complex<double> lg_mode_r(int p, int l, double w, double r, double phi) {
  const double radial = lg_radial_r(p, l, w, r);
  return std::polar(radial, l * phi);
}

std::complex<double> pump_phasematch(const BeamGeometry& geom, const CrystalParams& crystal,
                                     double rho_i, double rho_s, double dphi) {
  if (rho_i < 0.0 || rho_s < 0.0) throw DomainError("transverse moduli must be >= 0");
  // Work in units of the pump waist.
  const double qi = rho_i * geom.w_p();
  const double qs = rho_s * geom.w_p();
  const double half_sin = std::sin(0.5 * dphi);
  const double cross = 4.0 * qi * qs * half_sin * half_sin;
  const double sum_sq = (qi + qs) * (qi + qs) - cross;   // |q_i + q_s|^2
  const double diff_sq = (qi - qs) * (qi - qs) + cross;  // |q_i - q_s|^2

  const double pump = geom.w_p() / std::sqrt(2.0 * kPi) * std::exp(-0.25 * sum_sq);
  if (crystal.thin()) return {pump, 0.0};

  const double arg = 0.25 * crystal.strength(geom) * diff_sq;
  return pump * crystal.phasematch_prefactor() * sinc(arg) * std::polar(1.0, -arg);
}

}  // namespace lgspdc
