#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "lgspdc/errors.hpp"
#include "lgspdc/modes.hpp"
#include "lgspdc/quadrature.hpp"

using namespace lgspdc;
using std::numbers::pi;

namespace {

// 2-D quadrature of |mode|^2 rho drho dphi over the plane. `profile`
// returns the complex mode at (rho, phi); x_of_rho maps rho to the
// Laguerre argument so the cutoff can be placed on the Gaussian tail.
template <class Mode>
double norm_2d(Mode mode, double rho_max) {
  const QuadratureConfig inner{1e-12, 0.0, 100000};
  const QuadratureConfig outer{1e-11, 0.0, 400000};
  auto radial = [&](double rho) -> Estimate<double> {
    const auto r = integrate_adaptive(
        [&](double phi) { return std::norm(mode(rho, phi)); }, 0.0, 2.0 * pi, inner);
    return {rho * r.value, rho * r.abs_error};
  };
  return integrate_adaptive(radial, 0.0, rho_max, outer).value;
}

}  // namespace

TEST_CASE("geometry and crystal validation") {
  CHECK_THROWS_AS(BeamGeometry::from_waists(0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(BeamGeometry::from_waists(1.0, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(BeamGeometry::from_gammas(1.0, std::nan("")), DomainError);
  CHECK_THROWS_AS(CrystalParams(-1e-3, 1e7), DomainError);
  CHECK_THROWS_AS(CrystalParams(1e-3, 0.0), DomainError);
  CHECK_THROWS_AS((ModePair{0, -1, 0, 0}.validate()), DomainError);

  const auto g = BeamGeometry::from_waists(2e-3, 1e-3, 4e-3);
  CHECK(g.gamma_s() == 2.0);
  CHECK(g.gamma_i() == 0.5);
  const auto c = CrystalParams::from_wavelength(3e-3, 532e-9, 1.67);
  CHECK(c.k_p() == doctest::Approx(2.0 * pi * 1.67 / 532e-9).epsilon(1e-15));
  CHECK(c.strength(g) == doctest::Approx(3e-3 / (c.k_p() * 4e-6)).epsilon(1e-15));
  CHECK(CrystalParams(0.0, 1.0).thin());
}

TEST_CASE("lg_mode_k: examples") {
  CHECK(std::abs(lg_mode_k(0, 0, 1.0, {0.0, 0.0}) - 1.0 / std::sqrt(2.0 * pi)) <= 1e-16);
  CHECK(lg_mode_k(0, 3, 2.0, {0.0, 1.2}) == std::complex<double>(0.0, 0.0));
  for (int l : {-3, 0, 2}) {
    const auto a = lg_mode_k(2, l, 0.8, {1.3, 0.4});
    const auto b = lg_mode_k(2, l, 0.8, {1.3, 0.4 + 2.0 * pi});
    CHECK(std::abs(a - b) <= 1e-14 * std::abs(a));
  }
  CHECK_THROWS_AS(lg_mode_k(0, 0, 0.0, {1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(lg_mode_k(-1, 0, 1.0, {1.0, 0.0}), DomainError);
}

TEST_CASE("lg_mode_r: examples") {
  const double w0 = 0.37;
  CHECK(std::abs(lg_mode_r(0, 0, w0, 0.0, 0.0) - std::sqrt(2.0 / pi) / w0) <= 1e-15);
  // p = 1 at 2 r^2 / w^2 = 2: L_1^0(2) = -1, so the amplitude is the
  // Gaussian envelope with its sign flipped.
  const auto v = lg_mode_r(1, 0, 1.0, 1.0, 0.0);
  CHECK(v.real() == doctest::Approx(-std::sqrt(2.0 / pi) * std::exp(-1.0)).epsilon(1e-15));
  CHECK(lg_mode_r(1, 0, 1.0, 0.5, 0.0).real() > 0.0);
  CHECK(lg_mode_r(1, 0, 1.0, 1.5, 0.0).real() < 0.0);
}

TEST_CASE("OAM phase structure and conjugation") {
  for (int l = -6; l <= 6; ++l) {
    for (int p : {0, 1, 4}) {
      const double phi = 0.7, delta = 1.9;
      const auto a = lg_mode_k(p, l, 1.4, {0.9, phi});
      const auto b = lg_mode_k(p, l, 1.4, {0.9, phi + delta});
      CHECK(std::abs(b - a * std::polar(1.0, l * delta)) <= 1e-14 * std::abs(a) + 1e-300);
      const auto minus = lg_mode_k(p, -l, 1.4, {0.9, phi});
      CHECK(std::abs(minus) == doctest::Approx(std::abs(a)).epsilon(1e-15));
      CHECK(std::abs(minus - std::conj(a)) <= 1e-14 * std::abs(a) + 1e-300);
    }
  }
}

TEST_CASE("mode normalization by 2-D quadrature") {
  SUBCASE("real space (p, l) = (3, 2), w = 0.7") {
    const double w = 0.7;
    const double x_max = gaussian_tail_cutoff(2 + 2 * 3 + 0.5, 1.0, 1e-18);
    const double n = norm_2d([&](double r, double phi) { return lg_mode_r(3, 2, w, r, phi); },
                             w * std::sqrt(0.5 * x_max));
    CHECK(n == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("k space and real space, p <= 10, |l| <= 10") {
    double worst_k = 0.0, worst_r = 0.0;
    for (int p = 0; p <= 10; ++p) {
      for (int l = -10; l <= 10; ++l) {
        const double w = 1.3;
        const double x_max = gaussian_tail_cutoff(std::abs(l) + 2 * p + 0.5, 1.0, 1e-18);
        // x = rho^2 w^2 / 2 in k space, x = 2 r^2 / w^2 in real space
        const double nk = norm_2d([&](double rho, double phi) { return lg_mode_k(p, l, w, {rho, phi}); },
                                  std::sqrt(2.0 * x_max) / w);
        const double nr = norm_2d([&](double r, double phi) { return lg_mode_r(p, l, w, r, phi); },
                                  w * std::sqrt(0.5 * x_max));
        worst_k = std::max(worst_k, std::abs(nk - 1.0));
        worst_r = std::max(worst_r, std::abs(nr - 1.0));
      }
    }
    CHECK(worst_k <= 1e-8);
    CHECK(worst_r <= 1e-8);
  }
}

TEST_CASE("pump_phasematch: thin-crystal convention and symmetries") {
  const auto g = BeamGeometry::from_waists(2e-3, 1e-3, 1.5e-3);
  const CrystalParams thin(0.0, 2e7);
  const CrystalParams thick(5e-3, 2e7);

  CHECK(pump_phasematch(g, thin, 0.0, 0.0, 1.1) ==
        std::complex<double>(g.w_p() / std::sqrt(2.0 * pi), 0.0));

  for (double dphi : {0.0, 0.8, 2.5}) {
    for (const auto* c : {&thin, &thick}) {
      const auto a = pump_phasematch(g, *c, 310.0, 870.0, dphi);
      const auto b = pump_phasematch(g, *c, 870.0, 310.0, dphi);
      CHECK(std::abs(a - b) <= 1e-15 * std::abs(a));
      // only |dphi| matters: cos and sin^2 are even
      const auto m = pump_phasematch(g, *c, 310.0, 870.0, -dphi);
      CHECK(std::abs(a - m) <= 1e-15 * std::abs(a));
    }
  }

  // Back-to-back momenta: |q_i - q_s| = 0, sinc = 1, no phase.
  const double rho = 450.0;
  const auto v = pump_phasematch(g, thick, rho, rho, 0.0);
  const double q = rho * g.w_p();
  const double pump = g.w_p() / std::sqrt(2.0 * pi) * std::exp(-0.25 * 4.0 * q * q);
  CHECK(std::abs(v) == doctest::Approx(pump * thick.phasematch_prefactor()).epsilon(1e-14));
  CHECK(v.imag() == 0.0);

  CHECK_THROWS_AS(pump_phasematch(g, thick, -1.0, 1.0, 0.0), DomainError);
}
