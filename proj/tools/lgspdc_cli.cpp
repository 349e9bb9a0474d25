// lgspdc command-line front end. Talks to the library only through the C API.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lgspdc/lgspdc.h"

namespace {

using json = nlohmann::ordered_json;

enum ExitCode {
  kOk = 0,
  kSelftestFailed = 1,
  kConfigError = 2,
  kConvergenceError = 3,
  kNumericalError = 4,
};

// Raised for anything the user can fix by changing flags.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A failed library call.
struct LibraryError : std::runtime_error {
  LibraryError(lgspdc_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  lgspdc_status status;
};

void check(lgspdc_status status) {
  if (status != LGSPDC_OK) throw LibraryError(status, lgspdc_last_error());
}

std::string status_name(lgspdc_status s) {
  switch (s) {
    case LGSPDC_OK: return "ok";
    case LGSPDC_ERR_DOMAIN: return "domain";
    case LGSPDC_ERR_CONVERGENCE: return "convergence";
    case LGSPDC_ERR_SINGULAR: return "singular_node";
    case LGSPDC_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case LGSPDC_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Output artifact: ordered metadata plus a column-labeled table.

using Cell = std::variant<long long, double, std::string>;

struct Artifact {
  std::string command;
  json metadata = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string render_cell(const Cell& c) {
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return fmt(*d);
  return std::get<std::string>(c);
}

std::string render_meta(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return fmt(v.get<double>());
  return v.dump();
}

std::string to_csv(const Artifact& a) {
  std::ostringstream out;
  out << "# command=" << a.command << '\n';
  for (const auto& [key, value] : a.metadata.items()) {
    out << "# " << key << '=' << render_meta(value) << '\n';
  }
  for (std::size_t i = 0; i < a.columns.size(); ++i) out << (i ? "," : "") << a.columns[i];
  out << '\n';
  for (const auto& row : a.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << render_cell(row[i]);
    out << '\n';
  }
  return out.str();
}

std::string to_json(const Artifact& a) {
  json doc;
  doc["format"] = "lgspdc";
  doc["command"] = a.command;
  doc["metadata"] = a.metadata;
  doc["columns"] = a.columns;
  json rows = json::array();
  for (const auto& row : a.rows) {
    json r = json::array();
    for (const auto& c : row) std::visit([&](const auto& v) { r.push_back(v); }, c);
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Options shared by every subcommand.

struct Options {
  std::vector<double> gamma;  // gamma_i, gamma_s
  std::optional<double> wp_mm, ws_mm, wi_mm;
  std::optional<double> length_mm, wavelength_nm, index, kp;
  std::string method = "analytic";
  std::optional<double> rel_tol, abs_tol;
  std::optional<std::size_t> max_evals;
  std::string out;
  std::string format = "csv";

  // amplitude
  int ls = 0, li = 0, ps = 0, pi = 0;
  // sb
  std::vector<int> p_pair{0, 0};  // p_i, p_s
  int l_max = 20;
  std::string sweep = "none";
  std::vector<double> values;
  double width_ratio = 1.0;
  double gamma_diff = 0.0;
  // ppcorr
  int l = 0;
  int p_max = 15;
  std::string norm = "max";
  // compare
  int cmp_p_max = 5;
  int cmp_l_max = 10;
  bool full = false;
};

struct ContextDeleter {
  void operator()(lgspdc_context* c) const { lgspdc_context_destroy(c); }
};
struct TableDeleter {
  void operator()(lgspdc_table* t) const { lgspdc_table_destroy(t); }
};
struct ReportDeleter {
  void operator()(lgspdc_report* r) const { lgspdc_report_destroy(r); }
};
using Context = std::unique_ptr<lgspdc_context, ContextDeleter>;
using Table = std::unique_ptr<lgspdc_table, TableDeleter>;
using Report = std::unique_ptr<lgspdc_report, ReportDeleter>;

void add_common(CLI::App* app, Options& o) {
  auto* geo = app->add_option_group("geometry");
  auto* gamma = geo->add_option("--gamma", o.gamma, "Width ratios GAMMA_I GAMMA_S = w_p/w_i w_p/w_s")
                    ->expected(2);
  geo->add_option("--wp-mm", o.wp_mm, "Pump waist [mm]; fixes the length scale");
  auto* ws = geo->add_option("--ws-mm", o.ws_mm, "Signal waist [mm]");
  auto* wi = geo->add_option("--wi-mm", o.wi_mm, "Idler waist [mm]");
  gamma->excludes(ws)->excludes(wi);

  auto* cry = app->add_option_group("crystal");
  cry->add_option("--L-mm", o.length_mm, "Crystal length [mm]");
  auto* wl = cry->add_option("--wavelength-nm", o.wavelength_nm, "Pump vacuum wavelength [nm]");
  auto* n = cry->add_option("--n", o.index, "Refractive index at the pump wavelength");
  auto* kp = cry->add_option("--kp", o.kp, "Pump wavenumber in the medium [1/m]");
  kp->excludes(wl)->excludes(n);

  app->add_option("--method", o.method, "analytic | crystal | collinear | full")
      ->check(CLI::IsMember({"analytic", "crystal", "crystal_integral", "collinear",
                             "oracle_collinear", "full", "oracle_full"}));
  app->add_option("--rel-tol", o.rel_tol, "Relative quadrature tolerance");
  app->add_option("--abs-tol", o.abs_tol, "Absolute quadrature tolerance");
  app->add_option("--max-evals", o.max_evals, "Quadrature evaluation budget");
  app->add_option("--out", o.out, "Output file (default: stdout)");
  app->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
}

lgspdc_method method_of(const std::string& name) {
  if (name == "analytic") return LGSPDC_METHOD_ANALYTIC;
  if (name == "crystal" || name == "crystal_integral") return LGSPDC_METHOD_CRYSTAL_INTEGRAL;
  if (name == "collinear" || name == "oracle_collinear") return LGSPDC_METHOD_ORACLE_COLLINEAR;
  return LGSPDC_METHOD_ORACLE_FULL;
}

// Without --wp-mm the pump waist is the (dimensionless) unit of length, which
// is fine for every thin-crystal quantity but leaves L/(k_p w_p^2) undefined.
void configure_geometry(lgspdc_context* ctx, const Options& o, bool required) {
  if (o.wp_mm) {
    const double wp = *o.wp_mm * 1e-3;
    check(lgspdc_set_waists(ctx, wp, wp, wp));
  }
  if (!o.gamma.empty()) {
    check(lgspdc_set_gammas(ctx, o.gamma[0], o.gamma[1]));
  } else if (o.ws_mm || o.wi_mm) {
    if (!(o.wp_mm && o.ws_mm && o.wi_mm)) {
      throw ConfigError("--wp-mm, --ws-mm and --wi-mm must be given together");
    }
    check(lgspdc_set_waists(ctx, *o.wp_mm * 1e-3, *o.ws_mm * 1e-3, *o.wi_mm * 1e-3));
  } else if (required) {
    throw ConfigError("give either --gamma GAMMA_I GAMMA_S or --wp-mm/--ws-mm/--wi-mm");
  }
}

void configure_crystal(lgspdc_context* ctx, const Options& o) {
  const bool has_k = o.kp || o.wavelength_nm || o.index;
  if (!o.length_mm) {
    if (has_k) throw ConfigError("crystal wavenumber given without --L-mm");
    return;
  }
  const double length = *o.length_mm * 1e-3;
  if (!o.wp_mm) throw ConfigError("a crystal needs --wp-mm to fix L/(k_p w_p^2)");
  if (o.kp) {
    check(lgspdc_set_crystal(ctx, length, *o.kp));
  } else if (o.wavelength_nm && o.index) {
    check(lgspdc_set_crystal_wavelength(ctx, length, *o.wavelength_nm * 1e-9, *o.index));
  } else {
    throw ConfigError("--L-mm needs either --kp or both --wavelength-nm and --n");
  }
}

void configure_quadrature(lgspdc_context* ctx, const Options& o) {
  for (int dims : {1, 3}) {
    double rel = 0.0, abs = 0.0;
    std::size_t evals = 0;
    check(lgspdc_get_quadrature(ctx, dims, &rel, &abs, &evals));
    check(lgspdc_set_quadrature(ctx, dims, o.rel_tol.value_or(rel), o.abs_tol.value_or(abs),
                                o.max_evals.value_or(evals)));
  }
}

// Domain errors raised while applying flags are configuration errors.
Context make_context(const Options& o, bool geometry_required) {
  lgspdc_context* raw = nullptr;
  check(lgspdc_context_create(&raw));
  Context ctx(raw);
  try {
    configure_geometry(ctx.get(), o, geometry_required);
    configure_crystal(ctx.get(), o);
    configure_quadrature(ctx.get(), o);
  } catch (const LibraryError& e) {
    throw ConfigError(e.what());
  }
  return ctx;
}

void describe_context(const lgspdc_context* ctx, const Options& o, Artifact& a,
                      bool with_geometry = true) {
  a.metadata["version"] = lgspdc_version();
  a.metadata["method"] = lgspdc_method_name(method_of(o.method));
  if (with_geometry) {
    double wp, ws, wi, gi, gs;
    check(lgspdc_get_geometry(ctx, &wp, &ws, &wi, &gi, &gs));
    if (o.wp_mm) {
      a.metadata["w_p_m"] = wp;
      a.metadata["w_s_m"] = ws;
      a.metadata["w_i_m"] = wi;
    }
    a.metadata["gamma_i"] = gi;
    a.metadata["gamma_s"] = gs;
  } else if (o.wp_mm) {
    double wp;
    check(lgspdc_get_geometry(ctx, &wp, nullptr, nullptr, nullptr, nullptr));
    a.metadata["w_p_m"] = wp;
  }
  int has_crystal = 0;
  double length, kp, strength;
  check(lgspdc_get_crystal(ctx, &has_crystal, &length, &kp, &strength));
  if (has_crystal) {
    a.metadata["crystal_length_m"] = length;
    a.metadata["k_p_per_m"] = kp;
    if (with_geometry) a.metadata["crystal_strength"] = strength;
  } else {
    a.metadata["crystal"] = "thin (L = 0 convention)";
  }
  for (int dims : {1, 3}) {
    double rel, abs;
    std::size_t evals;
    check(lgspdc_get_quadrature(ctx, dims, &rel, &abs, &evals));
    const std::string p = dims == 1 ? "quad_1d_" : "quad_3d_";
    a.metadata[p + "rel_tol"] = rel;
    a.metadata[p + "abs_tol"] = abs;
    a.metadata[p + "max_evals"] = evals;
  }
  a.metadata["amplitude_scale"] = "w_p times the real-space collinear overlap";
}

// ---------------------------------------------------------------------------
// Subcommands.

Artifact run_amplitude(const Options& o) {
  const Context ctx = make_context(o, true);
  Artifact a;
  a.command = "amplitude";
  describe_context(ctx.get(), o, a);
  lgspdc_amplitude amp{};
  check(lgspdc_amplitude_eval(ctx.get(), method_of(o.method), {o.ls, o.ps, o.li, o.pi}, &amp));
  a.columns = {"l_s", "p_s", "l_i", "p_i", "re", "im", "abs", "abs_sq", "abs_err"};
  const double mod = std::hypot(amp.re, amp.im);
  a.rows.push_back({o.ls, o.ps, o.li, o.pi, amp.re, amp.im, mod, mod * mod, amp.abs_err});
  return a;
}

Artifact run_sb(const Options& o) {
  const bool swept = o.sweep != "none";
  if (swept && (!o.gamma.empty() || o.ws_mm || o.wi_mm)) {
    throw ConfigError("--sweep builds its own geometries; only --wp-mm may be given");
  }
  if (swept && o.values.empty()) throw ConfigError("--sweep needs --values");
  if (!swept && !o.values.empty()) throw ConfigError("--values needs --sweep");
  if (o.l_max < 0) throw ConfigError("--l-max must be >= 0");

  const Context ctx = make_context(o, !swept);
  lgspdc_table* raw = nullptr;
  Artifact a;
  a.command = "sb";
  describe_context(ctx.get(), o, a, !swept);
  const lgspdc_method method = method_of(o.method);
  try {
    if (!swept) {
      check(lgspdc_spiral_bandwidth(ctx.get(), method, o.p_pair[0], o.p_pair[1], o.l_max, &raw));
    } else {
      lgspdc_sweep kind = LGSPDC_SWEEP_EQUAL_WIDTH;
      double param = 0.0;
      if (o.sweep == "width-ratio") {
        kind = LGSPDC_SWEEP_WIDTH_RATIO;
        param = o.width_ratio;
      } else if (o.sweep == "gamma-diff") {
        kind = LGSPDC_SWEEP_GAMMA_DIFF;
        param = o.gamma_diff;
      }
      check(lgspdc_spiral_bandwidth_sweep(ctx.get(), method, kind, o.values.data(),
                                          o.values.size(), param, o.p_pair[0], o.p_pair[1],
                                          o.l_max, &raw));
    }
  } catch (const LibraryError& e) {
    if (e.status == LGSPDC_ERR_DOMAIN || e.status == LGSPDC_ERR_INVALID_ARGUMENT) {
      throw ConfigError(e.what());
    }
    throw;
  }
  const Table table(raw);

  a.metadata["p_i"] = o.p_pair[0];
  a.metadata["p_s"] = o.p_pair[1];
  a.metadata["sweep"] = o.sweep;
  if (o.sweep == "width-ratio") a.metadata["width_ratio_wi_over_ws"] = o.width_ratio;
  if (o.sweep == "gamma-diff") a.metadata["gamma_i_minus_gamma_s"] = o.gamma_diff;
  a.metadata["l_window"] = "[" + std::to_string(-o.l_max) + "," + std::to_string(o.l_max) + "]";
  a.metadata["normalization"] = "each row sums to 1 over the l window";
  a.metadata["summary"] = "ipr = 1/sum P^2; entropy = -sum P ln P (nats)";

  a.columns = {"sweep_value", "gamma_i", "gamma_s", "ipr", "entropy", "maxima_l_ge_0"};
  const int offset = lgspdc_table_col_offset(table.get());
  const std::size_t cols = lgspdc_table_cols(table.get());
  for (std::size_t c = 0; c < cols; ++c) a.columns.push_back("l=" + std::to_string(offset + int(c)));
  const double* data = lgspdc_table_data(table.get());
  for (std::size_t r = 0; r < lgspdc_table_rows(table.get()); ++r) {
    double value, gi, gs, ipr, entropy;
    std::size_t maxima = 0;
    check(lgspdc_table_row_info(table.get(), r, &value, &gi, &gs));
    check(lgspdc_table_summary(table.get(), r, &ipr, &entropy));
    check(lgspdc_table_local_maxima(table.get(), r, &maxima));
    std::vector<Cell> row{value, gi, gs, ipr, entropy, static_cast<long long>(maxima)};
    for (std::size_t c = 0; c < cols; ++c) row.emplace_back(data[r * cols + c]);
    a.rows.push_back(std::move(row));
  }
  return a;
}

Artifact run_ppcorr(const Options& o) {
  if (o.p_max < 0) throw ConfigError("--p-max must be >= 0");
  const Context ctx = make_context(o, true);
  Artifact a;
  a.command = "ppcorr";
  describe_context(ctx.get(), o, a);
  lgspdc_table* raw = nullptr;
  const auto norm = o.norm == "sum" ? LGSPDC_NORM_SUM_ONE : LGSPDC_NORM_MAX_ONE;
  check(lgspdc_pp_correlation(ctx.get(), method_of(o.method), o.l, o.p_max, norm, &raw));
  const Table table(raw);

  double ipr, entropy;
  check(lgspdc_table_summary(table.get(), 0, &ipr, &entropy));
  a.metadata["l"] = o.l;
  a.metadata["p_max"] = o.p_max;
  a.metadata["normalization"] = o.norm == "sum" ? "entries sum to 1" : "maximum entry is 1";
  a.metadata["ipr"] = ipr;
  a.metadata["entropy"] = entropy;

  const std::size_t n = lgspdc_table_cols(table.get());
  a.columns = {"p_s"};
  for (std::size_t c = 0; c < n; ++c) a.columns.push_back("p_i=" + std::to_string(c));
  const double* data = lgspdc_table_data(table.get());
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<Cell> row{static_cast<long long>(r)};
    for (std::size_t c = 0; c < n; ++c) row.emplace_back(data[r * n + c]);
    a.rows.push_back(std::move(row));
  }
  return a;
}

Artifact run_compare(const Options& o) {
  if (!o.length_mm || *o.length_mm <= 0.0) throw ConfigError("compare needs --L-mm > 0");
  const Context ctx = make_context(o, true);
  Artifact a;
  a.command = "compare";
  describe_context(ctx.get(), o, a);
  a.metadata.erase("method");
  lgspdc_report* raw = nullptr;
  check(lgspdc_compare(ctx.get(), o.cmp_p_max, o.cmp_l_max, o.full ? 1 : 0, &raw));
  const Report report(raw);

  a.metadata["p_max"] = o.cmp_p_max;
  a.metadata["l_max"] = o.cmp_l_max;
  a.metadata["cells"] = lgspdc_report_size(report.get());
  const std::pair<lgspdc_deviation_kind, const char*> kinds[] = {
      {LGSPDC_DEV_CRYSTAL, "crystal"},
      {LGSPDC_DEV_CRYSTAL_MODULUS, "crystal_modulus"},
      {LGSPDC_DEV_COLLINEAR, "collinear"},
      {LGSPDC_DEV_FULL, "full"}};
  for (const auto& [kind, name] : kinds) {
    if (kind == LGSPDC_DEV_FULL && !o.full) continue;
    lgspdc_deviation d{};
    check(lgspdc_report_summary(report.get(), kind, &d));
    a.metadata[std::string("max_dev_") + name] = d.max;
    a.metadata[std::string("median_dev_") + name] = d.median;
  }

  a.columns = {"l_s", "l_i", "p_s", "p_i",
               "analytic_re", "analytic_im",
               "crystal_re", "crystal_im", "crystal_err",
               "collinear_re", "collinear_im", "collinear_err",
               "dev_crystal", "dev_crystal_modulus", "dev_collinear"};
  if (o.full) {
    for (const char* c : {"full_re", "full_im", "full_err", "dev_full"}) a.columns.push_back(c);
  }
  for (std::size_t i = 0; i < lgspdc_report_size(report.get()); ++i) {
    lgspdc_compare_row r{};
    check(lgspdc_report_row(report.get(), i, &r));
    std::vector<Cell> row{r.mode.l_s, r.mode.l_i, r.mode.p_s, r.mode.p_i,
                          r.analytic.re, r.analytic.im,
                          r.crystal.re, r.crystal.im, r.crystal.abs_err,
                          r.collinear.re, r.collinear.im, r.collinear.abs_err,
                          r.dev_crystal, r.dev_crystal_modulus, r.dev_collinear};
    if (o.full) {
      for (double v : {r.full.re, r.full.im, r.full.abs_err, r.dev_full}) row.emplace_back(v);
    }
    a.rows.push_back(std::move(row));
  }
  return a;
}

// ---------------------------------------------------------------------------
// selftest: oracle-equivalence checks with a pass/fail table.

struct Check {
  std::string name;
  double observed;
  double tolerance;
  bool pass() const { return observed <= tolerance; }
};

double rel_dev(lgspdc_amplitude a, lgspdc_amplitude b) {
  const double diff = std::hypot(a.re - b.re, a.im - b.im);
  const double scale = std::hypot(b.re, b.im);
  return scale > 0.0 ? diff / scale : diff;
}

lgspdc_amplitude eval(const lgspdc_context* ctx, lgspdc_method m, lgspdc_mode mode) {
  lgspdc_amplitude out{};
  check(lgspdc_amplitude_eval(ctx, m, mode, &out));
  return out;
}

int run_selftest(const Options& o) {
  const Context ctx = make_context(o, false);
  std::vector<Check> checks;

  {
    double worst = 0.0;
    int cells = 0;
    for (double gi : {0.5, 1.0, 2.0}) {
      for (double gs : {0.5, 1.0, 2.0}) {
        check(lgspdc_set_gammas(ctx.get(), gi, gs));
        for (int l = -5; l <= 5; ++l) {
          for (int ps = 0; ps <= 5; ++ps) {
            for (int pi = 0; pi <= 5; ++pi, ++cells) {
              const lgspdc_mode mode{l, ps, -l, pi};
              worst = std::max(worst, rel_dev(eval(ctx.get(), LGSPDC_METHOD_ORACLE_COLLINEAR, mode),
                                              eval(ctx.get(), LGSPDC_METHOD_ANALYTIC, mode)));
            }
          }
        }
      }
    }
    checks.push_back({"analytic vs collinear oracle (" + std::to_string(cells) + " cells)", worst,
                      1e-8});
  }
  {
    check(lgspdc_set_gammas(ctx.get(), 1.0, 1.0));
    const auto c0 = eval(ctx.get(), LGSPDC_METHOD_ANALYTIC, {0, 0, 0, 0});
    double worst = 0.0;
    for (int l = 1; l <= 10; ++l) {
      const auto c = eval(ctx.get(), LGSPDC_METHOD_ANALYTIC, {l, 0, -l, 0});
      const double ratio = (c.re * c.re + c.im * c.im) / (c0.re * c0.re + c0.im * c0.im);
      const double expected = std::pow(4.0 / 9.0, l);
      worst = std::max(worst, std::abs(ratio - expected) / expected);
    }
    checks.push_back({"|C(l)|^2/|C(0)|^2 = (4/9)^|l| at gamma = 1", worst, 1e-12});
  }
  {
    check(lgspdc_set_waists(ctx.get(), 1e-3, 1e-3, 1e-3));
    check(lgspdc_set_crystal_wavelength(ctx.get(), 1e-9, 532e-9, 1.67));
    double worst = 0.0;
    for (int l = -3; l <= 3; ++l) {
      for (int ps = 0; ps <= 3; ++ps) {
        for (int pi = 0; pi <= 3; ++pi) {
          const lgspdc_mode mode{l, ps, -l, pi};
          worst = std::max(worst, rel_dev(eval(ctx.get(), LGSPDC_METHOD_CRYSTAL_INTEGRAL, mode),
                                          eval(ctx.get(), LGSPDC_METHOD_ANALYTIC, mode)));
        }
      }
    }
    checks.push_back({"crystal integral at L = 1e-9 m vs analytic", worst, 1e-6});
  }
  {
    double worst = 0.0;
    for (lgspdc_method m : {LGSPDC_METHOD_ANALYTIC, LGSPDC_METHOD_CRYSTAL_INTEGRAL,
                            LGSPDC_METHOD_ORACLE_COLLINEAR}) {
      const auto a = eval(ctx.get(), m, {2, 0, 1, 0});
      worst = std::max(worst, std::hypot(a.re, a.im));
    }
    checks.push_back({"selection rule l_s + l_i != 0 gives 0", worst, 0.0});
  }
  {
    check(lgspdc_clear_crystal(ctx.get()));
    check(lgspdc_set_gammas(ctx.get(), 1.0, 1.0));
    lgspdc_table* raw = nullptr;
    check(lgspdc_spiral_bandwidth(ctx.get(), LGSPDC_METHOD_ANALYTIC, 0, 0, 20, &raw));
    const Table table(raw);
    double p0 = 0.0;
    check(lgspdc_table_at(table.get(), 0, 20, &p0));
    checks.push_back({"spiral bandwidth P(0) at gamma = 1 is 5/13", std::abs(p0 - 5.0 / 13.0), 1e-7});
  }

  std::ostringstream out;
  bool all = true;
  out << "lgspdc selftest " << lgspdc_version() << '\n';
  for (const auto& c : checks) {
    all = all && c.pass();
    char line[256];
    std::snprintf(line, sizeof line, "%-4s  %-48s  observed %.3e  tolerance %.1e\n",
                  c.pass() ? "PASS" : "FAIL", c.name.c_str(), c.observed, c.tolerance);
    out << line;
  }
  out << (all ? "all checks passed\n" : "some checks FAILED\n");
  std::cout << out.str();
  return all ? kOk : kSelftestFailed;
}

// ---------------------------------------------------------------------------

void emit(const Artifact& a, const Options& o) {
  const std::string text = o.format == "json" ? to_json(a) : to_csv(a);
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError("cannot open output file " + o.out);
  file << text;
  if (!file.flush()) throw ConfigError("failed writing " + o.out);
}

int report_error(const std::string& kind, const std::string& message, int code) {
  json err;
  err["error"] = {{"kind", kind}, {"message", message}, {"exit_code", code}};
  std::cerr << err.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laguerre-Gaussian mode amplitudes of SPDC biphotons"};
  app.set_version_flag("--version", std::string(lgspdc_version()));
  app.require_subcommand(1);
  Options o;

  auto* amp = app.add_subcommand("amplitude", "Single coincidence amplitude");
  add_common(amp, o);
  amp->add_option("--ls", o.ls, "Signal OAM index");
  amp->add_option("--li", o.li, "Idler OAM index");
  amp->add_option("--ps", o.ps, "Signal radial index");
  amp->add_option("--pi", o.pi, "Idler radial index");

  auto* sb = app.add_subcommand("sb", "Spiral-bandwidth table");
  add_common(sb, o);
  sb->add_option("--p", o.p_pair, "Radial indices P_I P_S")->expected(2);
  sb->add_option("--l-max", o.l_max, "Half width of the l window");
  sb->add_option("--sweep", o.sweep, "none | pump-ratio | width-ratio | gamma-diff")
      ->check(CLI::IsMember({"none", "pump-ratio", "width-ratio", "gamma-diff"}));
  sb->add_option("--values", o.values, "gamma_s values of the sweep");
  sb->add_option("--width-ratio", o.width_ratio, "w_i / w_s for --sweep width-ratio");
  sb->add_option("--gamma-diff", o.gamma_diff, "gamma_i - gamma_s for --sweep gamma-diff");

  auto* pp = app.add_subcommand("ppcorr", "Radial p-p correlation matrix");
  add_common(pp, o);
  pp->add_option("--l", o.l, "Signal OAM index (idler has -l)");
  pp->add_option("--p-max", o.p_max, "Largest radial index");
  pp->add_option("--norm", o.norm, "max | sum")->check(CLI::IsMember({"max", "sum"}));

  auto* cmp = app.add_subcommand("compare", "Cross-method comparison over a mode grid");
  add_common(cmp, o);
  cmp->add_option("--p-max", o.cmp_p_max, "Largest radial index");
  cmp->add_option("--l-max", o.cmp_l_max, "Largest |l|");
  cmp->add_flag("--full", o.full, "Also run the (slow) full k-space oracle");

  auto* st = app.add_subcommand("selftest", "Oracle-equivalence checks");
  add_common(st, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("config", e.what(), kConfigError);
  }

  try {
    if (*st) return run_selftest(o);
    Artifact a;
    if (*amp) a = run_amplitude(o);
    else if (*sb) a = run_sb(o);
    else if (*pp) a = run_ppcorr(o);
    else a = run_compare(o);
    emit(a, o);
    return kOk;
  } catch (const ConfigError& e) {
    return report_error("config", e.what(), kConfigError);
  } catch (const LibraryError& e) {
    if (e.status == LGSPDC_ERR_CONVERGENCE) {
      return report_error(status_name(e.status), e.what(), kConvergenceError);
    }
    if (e.status == LGSPDC_ERR_DOMAIN || e.status == LGSPDC_ERR_INVALID_ARGUMENT) {
      return report_error(status_name(e.status), e.what(), kConfigError);
    }
    return report_error(status_name(e.status), e.what(), kNumericalError);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), kNumericalError);
  }
}
