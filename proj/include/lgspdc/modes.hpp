#ifndef LGSPDC_MODES_HPP
#define LGSPDC_MODES_HPP

#include <complex>
#include <cstdlib>

namespace lgspdc {

/// Pump, signal and idler waists at the crystal face (z = 0), in meters.
class BeamGeometry {
 public:
  /// Throws DomainError unless all waists are finite and strictly positive.
  static BeamGeometry from_waists(double w_p, double w_s, double w_i);
  /// Geometry with w_p = 1 and w_s = 1/gamma_s, w_i = 1/gamma_i.
  static BeamGeometry from_gammas(double gamma_i, double gamma_s);

  double w_p() const noexcept { return w_p_; }
  double w_s() const noexcept { return w_s_; }
  double w_i() const noexcept { return w_i_; }
  double gamma_s() const noexcept { return gamma_s_; }
  double gamma_i() const noexcept { return gamma_i_; }

  /// Every waist multiplied by factor. The ratios are carried over
  /// unchanged, so anything computed from them is bit-for-bit invariant.
  BeamGeometry scaled(double factor) const;

 private:
  BeamGeometry(double w_p, double w_s, double w_i, double gamma_s, double gamma_i)
      : w_p_(w_p), w_s_(w_s), w_i_(w_i), gamma_s_(gamma_s), gamma_i_(gamma_i) {}

  double w_p_;
  double w_s_;
  double w_i_;
  double gamma_s_;
  double gamma_i_;
};

/// Crystal thickness (m) and pump wavenumber inside the medium (1/m).
class CrystalParams {
 public:
  /// L >= 0, k_p > 0, both finite.
  CrystalParams(double length, double k_p);
  /// k_p = 2 pi n / wavelength.
  static CrystalParams from_wavelength(double length, double wavelength, double refractive_index);

  double length() const noexcept { return length_; }
  double k_p() const noexcept { return k_p_; }
  bool thin() const noexcept { return length_ == 0.0; }

  /// L / (k_p w_p^2): the only combination of L and k_p that survives
  /// nondimensionalization by the pump waist.
  double strength(const BeamGeometry& geom) const noexcept;

  /// sqrt(2L / (pi^2 k_p)); the factor dropped under the thin-crystal
  /// convention.
  double phasematch_prefactor() const noexcept;

 private:
  double length_;
  double k_p_;
};

/// Joint detection mode: signal (l_s, p_s) and idler (l_i, p_i).
struct ModePair {
  int l_s = 0;
  int p_s = 0;
  int l_i = 0;
  int p_i = 0;

  /// Mode with l_s = l, l_i = -l.
  static constexpr ModePair conjugate(int l, int p_s, int p_i) {
    return ModePair{l, p_s, -l, p_i};
  }

  constexpr bool conserves_oam() const noexcept { return l_s + l_i == 0; }
  int abs_l() const noexcept { return std::abs(l_s); }
  /// Throws DomainError for negative radial indices.
  void validate() const;
};

/// Polar coordinates of a transverse wavevector q.
struct TransversePoint {
  double rho = 0.0;
  double phi = 0.0;
};

/// Normalized k-space LG mode, including the (-1)^p sign and the
/// exp[i l (phi + pi/2)] phase.
std::complex<double> lg_mode_k(int p, int l, double w, TransversePoint pt);

/// Normalized real-space LG mode at z = 0, with exp(i l phi) phase.
std::complex<double> lg_mode_r(int p, int l, double w, double r, double phi);

/// Real radial factor of lg_mode_k (everything but the azimuthal phase).
double lg_radial_k(int p, int l, double w, double rho);
/// Real radial factor of lg_mode_r.
double lg_radial_r(int p, int l, double w, double r);

/// Pump envelope times phase matching, Phi(rho_i, rho_s, phi_i - phi_s).
/// At L = 0 the sinc and phase are 1 and the sqrt(2L/(pi^2 k_p)) prefactor
/// is left out.
std::complex<double> pump_phasematch(const BeamGeometry& geom, const CrystalParams& crystal,
                                     double rho_i, double rho_s, double dphi);

}  // namespace lgspdc

#endif
