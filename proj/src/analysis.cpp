#include "lgspdc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lgspdc/errors.hpp"
#include "parallel.hpp"

namespace lgspdc {

namespace {

double relative_deviation(std::complex<double> value, std::complex<double> reference) {
  const double diff = std::abs(value - reference);
  const double scale = std::abs(reference);
  return scale > 0.0 ? diff / scale : diff;
}

DeviationSummary summarize(std::vector<double> values) {
  DeviationSummary s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  s.max = values.back();
  const std::size_t mid = values.size() / 2;
  s.median = values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  return s;
}

}  // namespace

Amplitude AmplitudeSource::operator()(const BeamGeometry& geom, const ModePair& mode) const {
  const QuadratureConfig& quad = method == Method::oracle_full ? quad_3d : quad_1d;
  return evaluate_amplitude(method, geom, crystal, mode, quad);
}

CorrelationMatrix pp_correlation(const BeamGeometry& geom, int l, int p_max,
                                 const AmplitudeSource& source, Normalization norm) {
  if (p_max < 0) throw DomainError("pp_correlation: p_max must be >= 0");
  CorrelationMatrix m;
  m.p_max = p_max;
  m.l_fixed = l;
  m.norm = norm;
  const std::size_t n = std::size_t(p_max) + 1;
  m.entries.assign(n * n, 0.0);

  detail::parallel_for(n * n, [&](std::size_t cell) {
    const int p_s = int(cell / n);
    const int p_i = int(cell % n);
    m.entries[cell] = std::norm(source(geom, ModePair::conjugate(l, p_s, p_i)).value);
  });

  double scale = 0.0;
  if (norm == Normalization::max_one) {
    scale = *std::max_element(m.entries.begin(), m.entries.end());
  } else {
    scale = std::accumulate(m.entries.begin(), m.entries.end(), 0.0);
  }
  if (scale > 0.0) {
    for (double& e : m.entries) e /= scale;
  }
  return m;
}

SpiralBandwidthTable spiral_bandwidth(std::span<const SweepPoint> sweep, RadialPair mode_fix,
                                      LRange l_range, const AmplitudeSource& source,
                                      SweepKind kind) {
  if (sweep.empty()) throw DomainError("spiral_bandwidth: sweep must be nonempty");
  if (l_range.min != -l_range.max || l_range.max < 0) {
    throw DomainError("spiral_bandwidth: l range must be symmetric around 0");
  }
  if (mode_fix.p_i < 0 || mode_fix.p_s < 0) {
    throw DomainError("spiral_bandwidth: radial indices must be nonnegative");
  }

  SpiralBandwidthTable table;
  table.l_range = l_range;
  table.sweep_kind = kind;
  table.mode_fix = mode_fix;
  const std::size_t width = std::size_t(l_range.size());
  for (const SweepPoint& point : sweep) {
    table.rows.push_back({point.value, point.geometry, std::vector<double>(width, 0.0)});
  }

  detail::parallel_for(sweep.size() * width, [&](std::size_t cell) {
    SpiralBandwidthRow& row = table.rows[cell / width];
    const int l = l_range.min + int(cell % width);
    row.probabilities[cell % width] =
        std::norm(source(row.geometry, ModePair::conjugate(l, mode_fix.p_s, mode_fix.p_i)).value);
  });

  for (SpiralBandwidthRow& row : table.rows) {
    const double total = std::accumulate(row.probabilities.begin(), row.probabilities.end(), 0.0);
    if (total > 0.0) {
      for (double& p : row.probabilities) p /= total;
    }
  }
  return table;
}

std::vector<SweepPoint> equal_width_sweep(std::span<const double> gammas) {
  std::vector<SweepPoint> out;
  for (double g : gammas) out.push_back({g, BeamGeometry::from_gammas(g, g)});
  return out;
}

std::vector<SweepPoint> width_ratio_sweep(std::span<const double> gamma_s_values, double ratio) {
  if (!(ratio > 0.0)) throw DomainError("width ratio must be > 0");
  std::vector<SweepPoint> out;
  for (double g : gamma_s_values) out.push_back({g, BeamGeometry::from_gammas(g / ratio, g)});
  return out;
}

std::vector<SweepPoint> gamma_difference_sweep(std::span<const double> gamma_s_values,
                                               double difference) {
  std::vector<SweepPoint> out;
  for (double g : gamma_s_values) {
    out.push_back({g, BeamGeometry::from_gammas(g + difference, g)});
  }
  return out;
}

BandwidthSummary schmidt_like_summary(std::span<const double> probabilities) {
  double total = 0.0;
  for (double p : probabilities) {
    if (p < 0.0) throw DomainError("schmidt_like_summary: negative probability");
    total += p;
  }
  if (!(total > 0.0)) throw DomainError("schmidt_like_summary: distribution has zero mass");
  BandwidthSummary s;
  double sum_sq = 0.0;
  for (double p : probabilities) {
    const double q = p / total;
    sum_sq += q * q;
    if (q > 0.0) s.entropy -= q * std::log(q);
  }
  s.ipr = 1.0 / sum_sq;
  return s;
}

BandwidthSummary schmidt_like_summary(const CorrelationMatrix& matrix) {
  return schmidt_like_summary(std::span<const double>(matrix.entries));
}

std::vector<BandwidthSummary> schmidt_like_summary(const SpiralBandwidthTable& table) {
  std::vector<BandwidthSummary> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) out.push_back(schmidt_like_summary(row.probabilities));
  return out;
}

std::size_t count_local_maxima(const SpiralBandwidthTable& table, std::size_t row) {
  const auto& p = table.rows.at(row).probabilities;
  const std::size_t zero = std::size_t(-table.l_range.min);
  std::size_t count = 0;
  for (std::size_t k = zero; k < p.size(); ++k) {
    // Mirror symmetry makes p[zero - 1] == p[zero + 1].
    const double left = k > zero ? p[k - 1] : (k + 1 < p.size() ? p[k + 1] : 0.0);
    const double right = k + 1 < p.size() ? p[k + 1] : 0.0;
    if (p[k] > left && p[k] > right) ++count;
  }
  return count;
}

std::vector<ModePair> conjugate_mode_grid(int p_max, int l_max) {
  std::vector<ModePair> grid;
  if (p_max < 0 || l_max < 0) return grid;
  for (int l = -l_max; l <= l_max; ++l) {
    for (int p_s = 0; p_s <= p_max; ++p_s) {
      for (int p_i = 0; p_i <= p_max; ++p_i) grid.push_back(ModePair::conjugate(l, p_s, p_i));
    }
  }
  return grid;
}

ComparisonReport compare_methods(const BeamGeometry& geom, const CrystalParams& crystal,
                                 std::span<const ModePair> grid,
                                 const QuadratureConfig& quad_1d, bool include_full,
                                 const QuadratureConfig& quad_3d) {
  if (crystal.thin()) throw DomainError("compare_methods requires a crystal length L > 0");
  ComparisonReport report;
  report.rows.resize(grid.size());

  detail::parallel_for(grid.size(), [&](std::size_t k) {
    ComparisonRow& row = report.rows[k];
    row.mode = grid[k];
    row.analytic = amplitude_analytic(geom, row.mode);
    row.crystal = amplitude_crystal_integral(geom, crystal, row.mode, quad_1d);
    row.collinear = amplitude_oracle_collinear(geom, row.mode, quad_1d);
    row.dev_crystal = relative_deviation(row.crystal.value, row.analytic.value);
    row.dev_crystal_modulus = relative_deviation(std::abs(row.crystal.value),
                                                 std::abs(row.analytic.value));
    row.dev_collinear = relative_deviation(row.collinear.value, row.analytic.value);
    if (include_full) {
      row.full = amplitude_oracle_full(geom, crystal, row.mode, quad_3d);
      row.dev_full = relative_deviation(row.full->value, row.crystal.value);
    }
  });

  std::vector<double> crystal_dev, modulus_dev, collinear_dev, full_dev;
  for (const auto& row : report.rows) {
    crystal_dev.push_back(row.dev_crystal);
    modulus_dev.push_back(row.dev_crystal_modulus);
    collinear_dev.push_back(row.dev_collinear);
    if (row.dev_full) full_dev.push_back(*row.dev_full);
  }
  report.crystal = summarize(crystal_dev);
  report.crystal_modulus = summarize(modulus_dev);
  report.collinear = summarize(collinear_dev);
  if (include_full) report.full = summarize(full_dev);
  return report;
}

}  // namespace lgspdc
