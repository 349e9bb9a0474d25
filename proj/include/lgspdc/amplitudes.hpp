#ifndef LGSPDC_AMPLITUDES_HPP
#define LGSPDC_AMPLITUDES_HPP

#include <complex>
#include <optional>
#include <string_view>

#include "lgspdc/modes.hpp"
#include "lgspdc/quadrature.hpp"

namespace lgspdc {

enum class Method { analytic, crystal_integral, oracle_collinear, oracle_full };

std::string_view to_string(Method method) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

/// Coincidence amplitude C^{l_s,l_i}_{p_s,p_i}.
///
/// Every method reports the same dimensionless quantity: w_p times the
/// real-space collinear overlap of the normalized pump with the conjugated
/// signal and idler modes. Phases follow the real-space mode convention
/// exp(i l phi), which differs from the k-space convention exp[i l (phi+pi/2)]
/// by (-1)^|l| for a conjugate pair (l, -l).
struct Amplitude {
  std::complex<double> value{};
  Method method = Method::analytic;
  double abs_err_estimate = 0.0;
};

/// B, T, I, S of the finite-crystal integrand at one value of the dummy
/// variable t in [-L/2, L/2].
struct TIntegrandTerms {
  std::complex<double> B;
  std::complex<double> T;
  std::complex<double> I;
  std::complex<double> S;
};

TIntegrandTerms integrand_terms(const BeamGeometry& geom, const CrystalParams& crystal,
                                double t);

QuadratureConfig default_quadrature_1d();
QuadratureConfig default_quadrature_3d();

/// Collinear amplitude of the (0, 0, 0) mode; the constant that fixes the
/// overall scale of the analytic and crystal-integral forms.
double normalization_constant(const BeamGeometry& geom);

/// Thin-crystal closed form exactly as written in k-space conventions,
/// K (1-g_i^2+g_s^2)^p_i (1+g_i^2-g_s^2)^p_s (-2 g_i g_s)^|l| / (1+g_i^2+g_s^2)^(p_i+p_s+|l|)
///   x 2F1[-p_i, -p_s; -p_i-p_s-|l|; z].
/// Proportional to the amplitude; assumes l_s = -l_i.
double thin_crystal_closed_form(const BeamGeometry& geom, const ModePair& mode);

Amplitude amplitude_analytic(const BeamGeometry& geom, const ModePair& mode);

/// Finite-crystal amplitude as a 1-D integral over the crystal. Requires L > 0.
/// Throws ConvergenceError when the quadrature budget is exhausted and
/// SingularNodeError if T vanishes at a node.
Amplitude amplitude_crystal_integral(const BeamGeometry& geom, const CrystalParams& crystal,
                                     const ModePair& mode,
                                     const QuadratureConfig& quad = default_quadrature_1d());

/// Real-space overlap of the Gaussian pump with the conjugated signal and
/// idler modes; radial integral by adaptive quadrature.
Amplitude amplitude_oracle_collinear(const BeamGeometry& geom, const ModePair& mode,
                                     const QuadratureConfig& quad = default_quadrature_1d());

/// Brute-force k-space overlap of pump x phase matching with both modes:
/// nested adaptive quadrature over (rho_s, rho_i, phi_i - phi_s).
/// quad.max_evaluations bounds the total number of integrand calls.
Amplitude amplitude_oracle_full(const BeamGeometry& geom, const CrystalParams& crystal,
                                const ModePair& mode,
                                const QuadratureConfig& quad = default_quadrature_3d());

/// Dispatch on method. Crystal-based methods need `crystal`; oracle_full
/// falls back to the thin-crystal convention without one.
Amplitude evaluate_amplitude(Method method, const BeamGeometry& geom,
                             const std::optional<CrystalParams>& crystal,
                             const ModePair& mode, const QuadratureConfig& quad);

}  // namespace lgspdc

#endif
