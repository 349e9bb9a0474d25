#ifndef LGSPDC_ANALYSIS_HPP
#define LGSPDC_ANALYSIS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lgspdc/amplitudes.hpp"
#include "lgspdc/modes.hpp"
#include "lgspdc/quadrature.hpp"

namespace lgspdc {

/// Which amplitude method to use, with what it needs to run.
struct AmplitudeSource {
  Method method = Method::analytic;
  std::optional<CrystalParams> crystal;
  QuadratureConfig quad_1d = default_quadrature_1d();
  QuadratureConfig quad_3d = default_quadrature_3d();

  Amplitude operator()(const BeamGeometry& geom, const ModePair& mode) const;
};

enum class Normalization { max_one, sum_one };

/// P^{l,-l}_{p_s,p_i} on the square grid p_s, p_i in [0, p_max].
struct CorrelationMatrix {
  int p_max = 0;
  int l_fixed = 0;
  Normalization norm = Normalization::max_one;
  std::vector<double> entries;  // row-major: row p_s, column p_i

  int size() const noexcept { return p_max + 1; }
  double at(int p_s, int p_i) const { return entries.at(std::size_t(p_s) * size() + p_i); }
};

CorrelationMatrix pp_correlation(const BeamGeometry& geom, int l, int p_max,
                                 const AmplitudeSource& source,
                                 Normalization norm = Normalization::max_one);

/// Closed integer interval [min, max].
struct LRange {
  int min = -20;
  int max = 20;
  int size() const noexcept { return max - min + 1; }
};

/// Fixed radial indices of a spiral-bandwidth scan.
struct RadialPair {
  int p_i = 0;
  int p_s = 0;
};

enum class SweepKind { pump_ratio, width_mismatch };

struct SweepPoint {
  double value;
  BeamGeometry geometry;
};

struct SpiralBandwidthRow {
  double sweep_value;
  BeamGeometry geometry;
  std::vector<double> probabilities;  // index k <-> l = l_range.min + k
};

struct SpiralBandwidthTable {
  LRange l_range;
  SweepKind sweep_kind = SweepKind::pump_ratio;
  RadialPair mode_fix;
  std::vector<SpiralBandwidthRow> rows;

  double probability(std::size_t row, int l) const {
    return rows.at(row).probabilities.at(std::size_t(l - l_range.min));
  }
};

/// One row-normalized distribution over l per sweep point. The l range must
/// be symmetric around 0 and the sweep nonempty.
SpiralBandwidthTable spiral_bandwidth(std::span<const SweepPoint> sweep, RadialPair mode_fix,
                                      LRange l_range, const AmplitudeSource& source,
                                      SweepKind kind = SweepKind::pump_ratio);

// Sweep builders. The sweep value is always gamma_s.
/// gamma_i = gamma_s = g.
std::vector<SweepPoint> equal_width_sweep(std::span<const double> gammas);
/// Idler waist = ratio * signal waist, i.e. gamma_i = gamma_s / ratio.
std::vector<SweepPoint> width_ratio_sweep(std::span<const double> gamma_s_values, double ratio);
/// gamma_i = gamma_s + difference.
std::vector<SweepPoint> gamma_difference_sweep(std::span<const double> gamma_s_values,
                                               double difference);

struct BandwidthSummary {
  double ipr = 0.0;      // 1 / sum p^2
  double entropy = 0.0;  // -sum p ln p, nats
};

BandwidthSummary schmidt_like_summary(std::span<const double> probabilities);
BandwidthSummary schmidt_like_summary(const CorrelationMatrix& matrix);
std::vector<BandwidthSummary> schmidt_like_summary(const SpiralBandwidthTable& table);

/// Local maxima of a spiral-bandwidth row restricted to l >= 0. l = 0 counts
/// when it exceeds l = 1 (the row is mirror symmetric).
std::size_t count_local_maxima(const SpiralBandwidthTable& table, std::size_t row);

/// Modes (l, -l, p_s, p_i) for l in [-l_max, l_max], p_s, p_i in [0, p_max].
std::vector<ModePair> conjugate_mode_grid(int p_max, int l_max);

struct ComparisonRow {
  ModePair mode;
  Amplitude analytic;
  Amplitude crystal;
  Amplitude collinear;
  std::optional<Amplitude> full;
  double dev_crystal = 0.0;          // |crystal - analytic| / |analytic|
  double dev_crystal_modulus = 0.0;  // ||crystal| - |analytic|| / |analytic|
  double dev_collinear = 0.0;        // |collinear - analytic| / |analytic|
  std::optional<double> dev_full;    // |full - crystal| / |crystal|
};

struct DeviationSummary {
  double max = 0.0;
  double median = 0.0;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  DeviationSummary crystal;
  DeviationSummary crystal_modulus;
  DeviationSummary collinear;
  std::optional<DeviationSummary> full;
};

/// Evaluates every mode of the grid with each method and summarizes the
/// relative deviations. Requires L > 0. oracle_full is slow and only run
/// when include_full is set.
ComparisonReport compare_methods(const BeamGeometry& geom, const CrystalParams& crystal,
                                 std::span<const ModePair> grid,
                                 const QuadratureConfig& quad_1d = default_quadrature_1d(),
                                 bool include_full = false,
                                 const QuadratureConfig& quad_3d = default_quadrature_3d());

}  // namespace lgspdc

#endif
