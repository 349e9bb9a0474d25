// Exercises the shared library strictly through its C header.
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "lgspdc/lgspdc.h"

namespace {

struct Ctx {
  lgspdc_context* p = nullptr;
  Ctx() { REQUIRE(lgspdc_context_create(&p) == LGSPDC_OK); }
  ~Ctx() { lgspdc_context_destroy(p); }
};

}  // namespace

TEST_CASE("version and method names") {
  CHECK(std::strlen(lgspdc_version()) > 0);
  CHECK(std::string(lgspdc_method_name(LGSPDC_METHOD_CRYSTAL_INTEGRAL)) == "crystal_integral");
  CHECK(std::string(lgspdc_method_name(static_cast<lgspdc_method>(42))) == "unknown");
}

TEST_CASE("context defaults and setters") {
  Ctx ctx;
  double wp, ws, wi, gi, gs;
  REQUIRE(lgspdc_get_geometry(ctx.p, &wp, &ws, &wi, &gi, &gs) == LGSPDC_OK);
  CHECK(gi == 1.0);
  CHECK(gs == 1.0);
  int has = -1;
  REQUIRE(lgspdc_get_crystal(ctx.p, &has, nullptr, nullptr, nullptr) == LGSPDC_OK);
  CHECK(has == 0);

  CHECK(lgspdc_set_waists(ctx.p, 2e-3, 1e-3, 4e-3) == LGSPDC_OK);
  lgspdc_get_geometry(ctx.p, nullptr, nullptr, nullptr, &gi, &gs);
  CHECK(gi == 0.5);
  CHECK(gs == 2.0);

  // gammas keep the pump waist
  CHECK(lgspdc_set_gammas(ctx.p, 0.5, 2.0) == LGSPDC_OK);
  lgspdc_get_geometry(ctx.p, &wp, &ws, &wi, &gi, &gs);
  CHECK(wp == 2e-3);
  CHECK(gi == 0.5);
  CHECK(ws == 1e-3);

  CHECK(lgspdc_set_crystal_wavelength(ctx.p, 3e-3, 532e-9, 1.67) == LGSPDC_OK);
  double length, kp, strength;
  lgspdc_get_crystal(ctx.p, &has, &length, &kp, &strength);
  CHECK(has == 1);
  CHECK(length == 3e-3);
  CHECK(strength == doctest::Approx(3e-3 / (kp * 4e-6)).epsilon(1e-15));
  CHECK(lgspdc_clear_crystal(ctx.p) == LGSPDC_OK);
  lgspdc_get_crystal(ctx.p, &has, nullptr, nullptr, nullptr);
  CHECK(has == 0);

  CHECK(lgspdc_set_quadrature(ctx.p, 1, 1e-9, 1e-15, 5000) == LGSPDC_OK);
  double rel, abs;
  size_t evals;
  lgspdc_get_quadrature(ctx.p, 1, &rel, &abs, &evals);
  CHECK(rel == 1e-9);
  CHECK(abs == 1e-15);
  CHECK(evals == 5000);
}

TEST_CASE("error codes and last_error") {
  Ctx ctx;
  CHECK(lgspdc_set_waists(ctx.p, -1.0, 1.0, 1.0) == LGSPDC_ERR_DOMAIN);
  CHECK(std::strlen(lgspdc_last_error()) > 0);
  CHECK(lgspdc_set_gammas(ctx.p, 1.0, 1.0) == LGSPDC_OK);
  CHECK(std::strlen(lgspdc_last_error()) == 0);

  CHECK(lgspdc_set_crystal(ctx.p, 1e-3, -5.0) == LGSPDC_ERR_DOMAIN);
  CHECK(lgspdc_set_quadrature(ctx.p, 2, 1e-8, 0.0, 10) == LGSPDC_ERR_INVALID_ARGUMENT);
  CHECK(lgspdc_set_quadrature(ctx.p, 1, 0.0, 0.0, 10) == LGSPDC_ERR_DOMAIN);
  CHECK(lgspdc_set_gammas(nullptr, 1.0, 1.0) == LGSPDC_ERR_INVALID_ARGUMENT);
  CHECK(lgspdc_context_create(nullptr) == LGSPDC_ERR_INVALID_ARGUMENT);

  lgspdc_amplitude a{};
  CHECK(lgspdc_amplitude_eval(ctx.p, LGSPDC_METHOD_ANALYTIC, {0, -1, 0, 0}, &a) ==
        LGSPDC_ERR_DOMAIN);
  CHECK(lgspdc_amplitude_eval(ctx.p, static_cast<lgspdc_method>(9), {0, 0, 0, 0}, &a) ==
        LGSPDC_ERR_INVALID_ARGUMENT);
  // crystal method without a crystal
  CHECK(lgspdc_amplitude_eval(ctx.p, LGSPDC_METHOD_CRYSTAL_INTEGRAL, {0, 0, 0, 0}, &a) ==
        LGSPDC_ERR_DOMAIN);

  lgspdc_report* report = nullptr;
  CHECK(lgspdc_compare(ctx.p, 1, 1, 0, &report) == LGSPDC_ERR_DOMAIN);
  CHECK(report == nullptr);
}

TEST_CASE("convergence failure still returns the best estimate") {
  Ctx ctx;
  lgspdc_set_waists(ctx.p, 1e-3, 1e-3, 1e-3);
  lgspdc_set_crystal(ctx.p, 5.0, 1e7);
  lgspdc_set_quadrature(ctx.p, 1, 1e-14, 0.0, 42);
  lgspdc_amplitude a{};
  CHECK(lgspdc_amplitude_eval(ctx.p, LGSPDC_METHOD_CRYSTAL_INTEGRAL, {8, 6, -8, 6}, &a) ==
        LGSPDC_ERR_CONVERGENCE);
  CHECK(std::isfinite(a.re));
  CHECK(a.abs_err > 0.0);
}

TEST_CASE("amplitudes through the C API") {
  Ctx ctx;
  lgspdc_amplitude a00{}, a10{}, zero{};
  REQUIRE(lgspdc_amplitude_eval(ctx.p, LGSPDC_METHOD_ANALYTIC, {0, 0, 0, 0}, &a00) == LGSPDC_OK);
  REQUIRE(lgspdc_amplitude_eval(ctx.p, LGSPDC_METHOD_ORACLE_COLLINEAR, {0, 0, 0, 1}, &a10) ==
          LGSPDC_OK);
  CHECK(a10.method == LGSPDC_METHOD_ORACLE_COLLINEAR);
  CHECK(a10.re / a00.re == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  REQUIRE(lgspdc_amplitude_eval(ctx.p, LGSPDC_METHOD_ANALYTIC, {1, 0, 1, 0}, &zero) == LGSPDC_OK);
  CHECK(zero.re == 0.0);
  CHECK(zero.im == 0.0);
}

TEST_CASE("spiral-bandwidth tables") {
  Ctx ctx;
  lgspdc_table* t = nullptr;
  REQUIRE(lgspdc_spiral_bandwidth(ctx.p, LGSPDC_METHOD_ANALYTIC, 0, 0, 20, &t) == LGSPDC_OK);
  CHECK(lgspdc_table_get_kind(t) == LGSPDC_TABLE_SPIRAL_BANDWIDTH);
  CHECK(lgspdc_table_rows(t) == 1);
  CHECK(lgspdc_table_cols(t) == 41);
  CHECK(lgspdc_table_col_offset(t) == -20);
  double p0 = 0.0;
  REQUIRE(lgspdc_table_at(t, 0, 20, &p0) == LGSPDC_OK);
  CHECK(std::abs(p0 - 5.0 / 13.0) <= 1e-7);
  CHECK(lgspdc_table_data(t)[20] == p0);
  CHECK(lgspdc_table_at(t, 1, 0, &p0) == LGSPDC_ERR_INVALID_ARGUMENT);
  double ipr, entropy;
  REQUIRE(lgspdc_table_summary(t, 0, &ipr, &entropy) == LGSPDC_OK);
  CHECK(ipr > 1.0);
  size_t maxima = 0;
  REQUIRE(lgspdc_table_local_maxima(t, 0, &maxima) == LGSPDC_OK);
  CHECK(maxima == 1);
  lgspdc_table_destroy(t);

  const double values[] = {1.0};
  REQUIRE(lgspdc_spiral_bandwidth_sweep(ctx.p, LGSPDC_METHOD_ANALYTIC, LGSPDC_SWEEP_GAMMA_DIFF,
                                        values, 1, 2.0, 2, 2, 20, &t) == LGSPDC_OK);
  double value, gi, gs;
  REQUIRE(lgspdc_table_row_info(t, 0, &value, &gi, &gs) == LGSPDC_OK);
  CHECK(value == 1.0);
  CHECK(gi == 3.0);
  lgspdc_table_local_maxima(t, 0, &maxima);
  CHECK(maxima >= 2);
  lgspdc_table_destroy(t);

  CHECK(lgspdc_spiral_bandwidth_sweep(ctx.p, LGSPDC_METHOD_ANALYTIC,
                                      static_cast<lgspdc_sweep>(7), values, 1, 0.0, 0, 0, 3,
                                      &t) == LGSPDC_ERR_INVALID_ARGUMENT);
  CHECK(lgspdc_spiral_bandwidth_sweep(ctx.p, LGSPDC_METHOD_ANALYTIC, LGSPDC_SWEEP_EQUAL_WIDTH,
                                      values, 0, 0.0, 0, 0, 3, &t) == LGSPDC_ERR_DOMAIN);
}

TEST_CASE("correlation matrices") {
  Ctx ctx;
  lgspdc_table* t = nullptr;
  REQUIRE(lgspdc_pp_correlation(ctx.p, LGSPDC_METHOD_ANALYTIC, 0, 4, LGSPDC_NORM_SUM_ONE, &t) ==
          LGSPDC_OK);
  CHECK(lgspdc_table_get_kind(t) == LGSPDC_TABLE_CORRELATION);
  CHECK(lgspdc_table_rows(t) == 5);
  double sum = 0.0;
  for (size_t k = 0; k < 25; ++k) sum += lgspdc_table_data(t)[k];
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  double ipr = 0.0;
  CHECK(lgspdc_table_summary(t, 0, &ipr, nullptr) == LGSPDC_OK);
  CHECK(lgspdc_table_summary(t, 1, &ipr, nullptr) == LGSPDC_ERR_INVALID_ARGUMENT);
  size_t maxima;
  CHECK(lgspdc_table_local_maxima(t, 0, &maxima) == LGSPDC_ERR_INVALID_ARGUMENT);
  lgspdc_table_destroy(t);
  CHECK(lgspdc_pp_correlation(ctx.p, LGSPDC_METHOD_ANALYTIC, 0, 4,
                              static_cast<lgspdc_normalization>(3), &t) ==
        LGSPDC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("comparison reports") {
  Ctx ctx;
  lgspdc_set_waists(ctx.p, 1e-3, 1e-3, 1e-3);
  lgspdc_set_crystal_wavelength(ctx.p, 3e-3, 532e-9, 1.67);
  lgspdc_report* r = nullptr;
  REQUIRE(lgspdc_compare(ctx.p, 1, 1, 0, &r) == LGSPDC_OK);
  CHECK(lgspdc_report_size(r) == 12);
  lgspdc_compare_row row{};
  REQUIRE(lgspdc_report_row(r, 0, &row) == LGSPDC_OK);
  CHECK(row.mode.l_s == -1);
  CHECK(row.mode.l_i == 1);
  CHECK(row.has_full == 0);
  CHECK(lgspdc_report_row(r, 12, &row) == LGSPDC_ERR_INVALID_ARGUMENT);
  lgspdc_deviation d{};
  REQUIRE(lgspdc_report_summary(r, LGSPDC_DEV_CRYSTAL_MODULUS, &d) == LGSPDC_OK);
  CHECK(d.max <= 1e-3);
  CHECK(lgspdc_report_summary(r, LGSPDC_DEV_FULL, &d) == LGSPDC_ERR_INVALID_ARGUMENT);
  lgspdc_report_destroy(r);

  lgspdc_report_destroy(nullptr);
  lgspdc_table_destroy(nullptr);
  CHECK(lgspdc_report_size(nullptr) == 0);
}

TEST_CASE("sweeps keep the pump waist of the context") {
  Ctx ctx;
  lgspdc_set_waists(ctx.p, 0.05e-3, 0.05e-3, 0.05e-3);
  lgspdc_set_crystal_wavelength(ctx.p, 3e-3, 532e-9, 1.67);
  const double values[] = {1.0};
  lgspdc_table* t = nullptr;
  REQUIRE(lgspdc_spiral_bandwidth_sweep(ctx.p, LGSPDC_METHOD_CRYSTAL_INTEGRAL,
                                        LGSPDC_SWEEP_EQUAL_WIDTH, values, 1, 0.0, 0, 0, 5,
                                        &t) == LGSPDC_OK);
  lgspdc_table* direct = nullptr;
  REQUIRE(lgspdc_spiral_bandwidth(ctx.p, LGSPDC_METHOD_CRYSTAL_INTEGRAL, 0, 0, 5, &direct) ==
          LGSPDC_OK);
  for (size_t k = 0; k < 11; ++k) CHECK(lgspdc_table_data(t)[k] == lgspdc_table_data(direct)[k]);
  // a thin-crystal table differs at this strength
  lgspdc_table* thin = nullptr;
  REQUIRE(lgspdc_spiral_bandwidth(ctx.p, LGSPDC_METHOD_ANALYTIC, 0, 0, 5, &thin) == LGSPDC_OK);
  CHECK(std::abs(lgspdc_table_data(thin)[5] - lgspdc_table_data(t)[5]) > 1e-6);
  lgspdc_table_destroy(t);
  lgspdc_table_destroy(direct);
  lgspdc_table_destroy(thin);
}
