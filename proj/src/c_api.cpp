#include "lgspdc/lgspdc.h"

#include <exception>
#include <new>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lgspdc/analysis.hpp"
#include "lgspdc/errors.hpp"

#ifndef LGSPDC_VERSION
#define LGSPDC_VERSION "0.0.0"
#endif

struct lgspdc_context {
  lgspdc::BeamGeometry geometry = lgspdc::BeamGeometry::from_gammas(1.0, 1.0);
  std::optional<lgspdc::CrystalParams> crystal;
  lgspdc::QuadratureConfig quad_1d = lgspdc::default_quadrature_1d();
  lgspdc::QuadratureConfig quad_3d = lgspdc::default_quadrature_3d();
};

struct lgspdc_table {
  std::variant<lgspdc::SpiralBandwidthTable, lgspdc::CorrelationMatrix> content;
  lgspdc::BeamGeometry geometry;  // context geometry, for correlation matrices
  std::vector<double> data;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

struct lgspdc_report {
  lgspdc::ComparisonReport report;
};

namespace {

thread_local std::string last_error;

lgspdc_status fail(lgspdc_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body, mapping library exceptions to status codes.
template <class Body>
lgspdc_status guarded(Body&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const lgspdc::DomainError& e) {
    return fail(LGSPDC_ERR_DOMAIN, e.what());
  } catch (const lgspdc::ConvergenceError& e) {
    return fail(LGSPDC_ERR_CONVERGENCE, e.what());
  } catch (const lgspdc::SingularNodeError& e) {
    return fail(LGSPDC_ERR_SINGULAR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LGSPDC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LGSPDC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LGSPDC_ERR_INTERNAL, "unknown error");
  }
}

std::optional<lgspdc::Method> to_method(lgspdc_method m) {
  switch (m) {
    case LGSPDC_METHOD_ANALYTIC: return lgspdc::Method::analytic;
    case LGSPDC_METHOD_CRYSTAL_INTEGRAL: return lgspdc::Method::crystal_integral;
    case LGSPDC_METHOD_ORACLE_COLLINEAR: return lgspdc::Method::oracle_collinear;
    case LGSPDC_METHOD_ORACLE_FULL: return lgspdc::Method::oracle_full;
  }
  return std::nullopt;
}

lgspdc_method from_method(lgspdc::Method m) {
  switch (m) {
    case lgspdc::Method::analytic: return LGSPDC_METHOD_ANALYTIC;
    case lgspdc::Method::crystal_integral: return LGSPDC_METHOD_CRYSTAL_INTEGRAL;
    case lgspdc::Method::oracle_collinear: return LGSPDC_METHOD_ORACLE_COLLINEAR;
    case lgspdc::Method::oracle_full: return LGSPDC_METHOD_ORACLE_FULL;
  }
  return LGSPDC_METHOD_ANALYTIC;
}

lgspdc_amplitude to_c(const lgspdc::Amplitude& a) {
  return {a.value.real(), a.value.imag(), a.abs_err_estimate, from_method(a.method)};
}

lgspdc_mode to_c(const lgspdc::ModePair& m) { return {m.l_s, m.p_s, m.l_i, m.p_i}; }

lgspdc::AmplitudeSource make_source(const lgspdc_context& ctx, lgspdc::Method method) {
  return lgspdc::AmplitudeSource{method, ctx.crystal, ctx.quad_1d, ctx.quad_3d};
}

lgspdc::QuadratureConfig* quad_slot(lgspdc_context* ctx, int dims) {
  if (dims == 1) return &ctx->quad_1d;
  if (dims == 3) return &ctx->quad_3d;
  return nullptr;
}

lgspdc_table* wrap(lgspdc::SpiralBandwidthTable table, const lgspdc::BeamGeometry& geom) {
  auto* out = new lgspdc_table{{}, geom, {}, table.rows.size(), std::size_t(table.l_range.size())};
  for (const auto& row : table.rows) {
    out->data.insert(out->data.end(), row.probabilities.begin(), row.probabilities.end());
  }
  out->content = std::move(table);
  return out;
}

lgspdc_table* wrap(lgspdc::CorrelationMatrix matrix, const lgspdc::BeamGeometry& geom) {
  const auto n = std::size_t(matrix.size());
  auto* out = new lgspdc_table{{}, geom, matrix.entries, n, n};
  out->content = std::move(matrix);
  return out;
}

lgspdc_status require_sb(const lgspdc_table* table, std::size_t row) {
  if (!table) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "null table");
  if (row >= table->rows) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "row out of range");
  return LGSPDC_OK;
}

}  // namespace

extern "C" {

const char* lgspdc_version(void) { return LGSPDC_VERSION; }

const char* lgspdc_last_error(void) { return last_error.c_str(); }

const char* lgspdc_method_name(lgspdc_method method) {
  const auto m = to_method(method);
  return m ? lgspdc::to_string(*m).data() : "unknown";
}

lgspdc_status lgspdc_context_create(lgspdc_context** out) {
  if (!out) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    *out = new lgspdc_context;
    return LGSPDC_OK;
  });
}

void lgspdc_context_destroy(lgspdc_context* ctx) { delete ctx; }

lgspdc_status lgspdc_set_waists(lgspdc_context* ctx, double w_p, double w_s, double w_i) {
  if (!ctx) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "null context");
  return guarded([&] {
    ctx->geometry = lgspdc::BeamGeometry::from_waists(w_p, w_s, w_i);
    return LGSPDC_OK;
  });
}

lgspdc_status lgspdc_set_gammas(lgspdc_context* ctx, double gamma_i, double gamma_s) {
  if (!ctx) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "null context");
  return guarded([&] {
    ctx->geometry = lgspdc::BeamGeometry::from_gammas(gamma_i, gamma_s).scaled(ctx->geometry.w_p());
    return LGSPDC_OK;
  });
}

lgspdc_status lgspdc_set_crystal(lgspdc_context* ctx, double length, double k_p) {
  if (!ctx) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "null context");
  return guarded([&] {
    ctx->crystal = lgspdc::CrystalParams(length, k_p);
    return LGSPDC_OK;
  });
}

lgspdc_status lgspdc_set_crystal_wavelength(lgspdc_context* ctx, double length,
                                            double wavelength, double refractive_index) {
  if (!ctx) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "null context");
  return guarded([&] {
    ctx->crystal = lgspdc::CrystalParams::from_wavelength(length, wavelength, refractive_index);
    return LGSPDC_OK;
  });
}

lgspdc_status lgspdc_clear_crystal(lgspdc_context* ctx) {
  if (!ctx) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "null context");
  ctx->crystal.reset();
  last_error.clear();
  return LGSPDC_OK;
}

lgspdc_status lgspdc_set_quadrature(lgspdc_context* ctx, int dims, double rel_tol,
                                    double abs_tol, size_t max_evaluations) {
  if (!ctx) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "null context");
  lgspdc::QuadratureConfig* slot = quad_slot(ctx, dims);
  if (!slot) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "dims must be 1 or 3");
  if (!(rel_tol >= 0.0) || !(abs_tol >= 0.0) || (rel_tol == 0.0 && abs_tol == 0.0)) {
    return fail(LGSPDC_ERR_DOMAIN, "tolerances must be >= 0 and not both zero");
  }
  if (max_evaluations == 0) return fail(LGSPDC_ERR_DOMAIN, "max_evaluations must be > 0");
  *slot = lgspdc::QuadratureConfig{rel_tol, abs_tol, max_evaluations};
  last_error.clear();
  return LGSPDC_OK;
}

lgspdc_status lgspdc_get_geometry(const lgspdc_context* ctx, double* w_p, double* w_s,
                                  double* w_i, double* gamma_i, double* gamma_s) {
  if (!ctx) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "null context");
  const auto& g = ctx->geometry;
  if (w_p) *w_p = g.w_p();
  if (w_s) *w_s = g.w_s();
  if (w_i) *w_i = g.w_i();
  if (gamma_i) *gamma_i = g.gamma_i();
  if (gamma_s) *gamma_s = g.gamma_s();
  return LGSPDC_OK;
}

lgspdc_status lgspdc_get_crystal(const lgspdc_context* ctx, int* has_crystal, double* length,
                                 double* k_p, double* strength) {
  if (!ctx) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "null context");
  if (has_crystal) *has_crystal = ctx->crystal ? 1 : 0;
  const auto c = ctx->crystal.value_or(lgspdc::CrystalParams(0.0, 1.0));
  if (length) *length = ctx->crystal ? c.length() : 0.0;
  if (k_p) *k_p = ctx->crystal ? c.k_p() : 0.0;
  if (strength) *strength = ctx->crystal ? c.strength(ctx->geometry) : 0.0;
  return LGSPDC_OK;
}

lgspdc_status lgspdc_get_quadrature(const lgspdc_context* ctx, int dims, double* rel_tol,
                                    double* abs_tol, size_t* max_evaluations) {
  if (!ctx) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "null context");
  const lgspdc::QuadratureConfig* slot = quad_slot(const_cast<lgspdc_context*>(ctx), dims);
  if (!slot) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "dims must be 1 or 3");
  if (rel_tol) *rel_tol = slot->rel_tol;
  if (abs_tol) *abs_tol = slot->abs_tol;
  if (max_evaluations) *max_evaluations = slot->max_evaluations;
  return LGSPDC_OK;
}

lgspdc_status lgspdc_amplitude_eval(const lgspdc_context* ctx, lgspdc_method method,
                                    lgspdc_mode mode, lgspdc_amplitude* out) {
  if (!ctx || !out) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "null argument");
  const auto m = to_method(method);
  if (!m) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "unknown method");
  try {
    const lgspdc::ModePair pair{mode.l_s, mode.p_s, mode.l_i, mode.p_i};
    *out = to_c(make_source(*ctx, *m)(ctx->geometry, pair));
  } catch (const lgspdc::ConvergenceError& e) {
    *out = {e.best_estimate().real(), e.best_estimate().imag(), e.error_estimate(), method};
    return fail(LGSPDC_ERR_CONVERGENCE, e.what());
  } catch (...) {
    return guarded([] () -> lgspdc_status { throw; });
  }
  last_error.clear();
  return LGSPDC_OK;
}

lgspdc_status lgspdc_spiral_bandwidth(const lgspdc_context* ctx, lgspdc_method method, int p_i,
                                      int p_s, int l_max, lgspdc_table** out) {
  if (!ctx || !out) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "null argument");
  const auto m = to_method(method);
  if (!m) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "unknown method");
  return guarded([&] {
    const lgspdc::SweepPoint point{ctx->geometry.gamma_s(), ctx->geometry};
    auto table = lgspdc::spiral_bandwidth(std::span(&point, 1), {p_i, p_s}, {-l_max, l_max},
                                          make_source(*ctx, *m));
    *out = wrap(std::move(table), ctx->geometry);
    return LGSPDC_OK;
  });
}

lgspdc_status lgspdc_spiral_bandwidth_sweep(const lgspdc_context* ctx, lgspdc_method method,
                                            lgspdc_sweep sweep, const double* values,
                                            size_t count, double param, int p_i, int p_s,
                                            int l_max, lgspdc_table** out) {
  if (!ctx || !out || (!values && count > 0)) {
    return fail(LGSPDC_ERR_INVALID_ARGUMENT, "null argument");
  }
  const auto m = to_method(method);
  if (!m) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "unknown method");
  return guarded([&] {
    const std::span<const double> v(values, count);
    std::vector<lgspdc::SweepPoint> points;
    lgspdc::SweepKind kind = lgspdc::SweepKind::pump_ratio;
    switch (sweep) {
      case LGSPDC_SWEEP_EQUAL_WIDTH:
        points = lgspdc::equal_width_sweep(v);
        break;
      case LGSPDC_SWEEP_WIDTH_RATIO:
        points = lgspdc::width_ratio_sweep(v, param);
        kind = lgspdc::SweepKind::width_mismatch;
        break;
      case LGSPDC_SWEEP_GAMMA_DIFF:
        points = lgspdc::gamma_difference_sweep(v, param);
        kind = lgspdc::SweepKind::width_mismatch;
        break;
      default:
        return fail(LGSPDC_ERR_INVALID_ARGUMENT, "unknown sweep kind");
    }
    for (auto& p : points) p.geometry = p.geometry.scaled(ctx->geometry.w_p());
    auto table = lgspdc::spiral_bandwidth(points, {p_i, p_s}, {-l_max, l_max},
                                          make_source(*ctx, *m), kind);
    *out = wrap(std::move(table), ctx->geometry);
    return LGSPDC_OK;
  });
}

lgspdc_status lgspdc_pp_correlation(const lgspdc_context* ctx, lgspdc_method method, int l,
                                    int p_max, lgspdc_normalization norm, lgspdc_table** out) {
  if (!ctx || !out) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "null argument");
  const auto m = to_method(method);
  if (!m) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "unknown method");
  if (norm != LGSPDC_NORM_MAX_ONE && norm != LGSPDC_NORM_SUM_ONE) {
    return fail(LGSPDC_ERR_INVALID_ARGUMENT, "unknown normalization");
  }
  return guarded([&] {
    const auto n = norm == LGSPDC_NORM_MAX_ONE ? lgspdc::Normalization::max_one
                                               : lgspdc::Normalization::sum_one;
    auto matrix = lgspdc::pp_correlation(ctx->geometry, l, p_max, make_source(*ctx, *m), n);
    *out = wrap(std::move(matrix), ctx->geometry);
    return LGSPDC_OK;
  });
}

void lgspdc_table_destroy(lgspdc_table* table) { delete table; }

lgspdc_table_kind lgspdc_table_get_kind(const lgspdc_table* table) {
  return table && table->content.index() == 1 ? LGSPDC_TABLE_CORRELATION
                                               : LGSPDC_TABLE_SPIRAL_BANDWIDTH;
}

size_t lgspdc_table_rows(const lgspdc_table* table) { return table ? table->rows : 0; }

size_t lgspdc_table_cols(const lgspdc_table* table) { return table ? table->cols : 0; }

const double* lgspdc_table_data(const lgspdc_table* table) {
  return table ? table->data.data() : nullptr;
}

lgspdc_status lgspdc_table_at(const lgspdc_table* table, size_t row, size_t col, double* out) {
  if (!table || !out) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "null argument");
  if (row >= table->rows || col >= table->cols) {
    return fail(LGSPDC_ERR_INVALID_ARGUMENT, "index out of range");
  }
  *out = table->data[row * table->cols + col];
  return LGSPDC_OK;
}

int lgspdc_table_col_offset(const lgspdc_table* table) {
  if (!table) return 0;
  if (const auto* sb = std::get_if<lgspdc::SpiralBandwidthTable>(&table->content)) {
    return sb->l_range.min;
  }
  return 0;
}

lgspdc_status lgspdc_table_row_info(const lgspdc_table* table, size_t row, double* value,
                                    double* gamma_i, double* gamma_s) {
  if (const auto s = require_sb(table, row); s != LGSPDC_OK) return s;
  if (const auto* sb = std::get_if<lgspdc::SpiralBandwidthTable>(&table->content)) {
    const auto& r = sb->rows[row];
    if (value) *value = r.sweep_value;
    if (gamma_i) *gamma_i = r.geometry.gamma_i();
    if (gamma_s) *gamma_s = r.geometry.gamma_s();
  } else {
    if (value) *value = double(row);
    if (gamma_i) *gamma_i = table->geometry.gamma_i();
    if (gamma_s) *gamma_s = table->geometry.gamma_s();
  }
  return LGSPDC_OK;
}

lgspdc_status lgspdc_table_summary(const lgspdc_table* table, size_t row, double* ipr,
                                   double* entropy) {
  if (const auto s = require_sb(table, row); s != LGSPDC_OK) return s;
  return guarded([&] {
    lgspdc::BandwidthSummary summary;
    if (const auto* sb = std::get_if<lgspdc::SpiralBandwidthTable>(&table->content)) {
      summary = lgspdc::schmidt_like_summary(sb->rows[row].probabilities);
    } else {
      if (row != 0) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "matrix summary takes row 0");
      summary = lgspdc::schmidt_like_summary(std::get<lgspdc::CorrelationMatrix>(table->content));
    }
    if (ipr) *ipr = summary.ipr;
    if (entropy) *entropy = summary.entropy;
    return LGSPDC_OK;
  });
}

lgspdc_status lgspdc_table_local_maxima(const lgspdc_table* table, size_t row, size_t* count) {
  if (const auto s = require_sb(table, row); s != LGSPDC_OK) return s;
  if (!count) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "null argument");
  const auto* sb = std::get_if<lgspdc::SpiralBandwidthTable>(&table->content);
  if (!sb) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "not a spiral-bandwidth table");
  *count = lgspdc::count_local_maxima(*sb, row);
  return LGSPDC_OK;
}

lgspdc_status lgspdc_compare(const lgspdc_context* ctx, int p_max, int l_max, int include_full,
                             lgspdc_report** out) {
  if (!ctx || !out) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "null argument");
  if (!ctx->crystal) return fail(LGSPDC_ERR_DOMAIN, "compare needs a crystal with L > 0");
  return guarded([&] {
    const auto grid = lgspdc::conjugate_mode_grid(p_max, l_max);
    auto report = lgspdc::compare_methods(ctx->geometry, *ctx->crystal, grid, ctx->quad_1d,
                                          include_full != 0, ctx->quad_3d);
    *out = new lgspdc_report{std::move(report)};
    return LGSPDC_OK;
  });
}

void lgspdc_report_destroy(lgspdc_report* report) { delete report; }

size_t lgspdc_report_size(const lgspdc_report* report) {
  return report ? report->report.rows.size() : 0;
}

lgspdc_status lgspdc_report_row(const lgspdc_report* report, size_t index,
                                lgspdc_compare_row* out) {
  if (!report || !out) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= report->report.rows.size()) {
    return fail(LGSPDC_ERR_INVALID_ARGUMENT, "index out of range");
  }
  const auto& r = report->report.rows[index];
  *out = lgspdc_compare_row{};
  out->mode = to_c(r.mode);
  out->analytic = to_c(r.analytic);
  out->crystal = to_c(r.crystal);
  out->collinear = to_c(r.collinear);
  out->has_full = r.full ? 1 : 0;
  if (r.full) out->full = to_c(*r.full);
  out->dev_crystal = r.dev_crystal;
  out->dev_crystal_modulus = r.dev_crystal_modulus;
  out->dev_collinear = r.dev_collinear;
  out->dev_full = r.dev_full.value_or(0.0);
  return LGSPDC_OK;
}

lgspdc_status lgspdc_report_summary(const lgspdc_report* report, lgspdc_deviation_kind kind,
                                    lgspdc_deviation* out) {
  if (!report || !out) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "null argument");
  const auto& r = report->report;
  lgspdc::DeviationSummary s;
  switch (kind) {
    case LGSPDC_DEV_CRYSTAL: s = r.crystal; break;
    case LGSPDC_DEV_CRYSTAL_MODULUS: s = r.crystal_modulus; break;
    case LGSPDC_DEV_COLLINEAR: s = r.collinear; break;
    case LGSPDC_DEV_FULL:
      if (!r.full) return fail(LGSPDC_ERR_INVALID_ARGUMENT, "full oracle was not run");
      s = *r.full;
      break;
    default:
      return fail(LGSPDC_ERR_INVALID_ARGUMENT, "unknown deviation kind");
  }
  *out = {s.max, s.median};
  return LGSPDC_OK;
}

}  // extern "C"
