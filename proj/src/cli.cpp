#include "wsaw/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "wsaw/critical.hpp"
#include "wsaw/errors.hpp"
#include "wsaw/green.hpp"
#include "wsaw/lace.hpp"
#include "wsaw/torus.hpp"
#include "wsaw/walk_enum.hpp"

namespace wsaw {

namespace {

constexpr double kPolicyFraction = 0.95;
constexpr double kPolicySlack = 1e-6;  // admits z rounded to millionths

const char* error_type_name(const std::exception& e) {
  if (dynamic_cast<const argument_error*>(&e)) return "argument_error";
  if (dynamic_cast<const resource_error*>(&e)) return "resource_error";
  if (dynamic_cast<const verification_error*>(&e)) return "verification_error";
  if (dynamic_cast<const degeneracy_error*>(&e)) return "degeneracy_error";
  if (dynamic_cast<const numeric_error*>(&e)) return "numeric_error";
  return "error";
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const argument_error*>(&e)) return 2;
  if (dynamic_cast<const resource_error*>(&e)) return 3;
  return 1;
}

void validate(const RunConfig& cfg) {
  static const std::set<std::string> kCommands = {
      "enumerate", "verify",    "pi",        "green",
      "infrared",  "decompose", "bootstrap", "report"};
  if (!kCommands.count(cfg.command))
    throw argument_error("unknown command: " + cfg.command);
  if (cfg.d < 1 || cfg.d > LatticePoint::kMaxDim)
    throw argument_error("dimension out of range [1, 8]");
  if (cfg.order < 0) throw argument_error("order must be nonnegative");
  const Rational beta = rational_from_string(cfg.beta);
  if (beta < 0 || beta >= 1) throw argument_error("beta must lie in [0, 1)");
  if (cfg.box < 0) throw argument_error("box radius must be nonnegative");
  if (cfg.grid < 2 || cfg.grid % 2 != 0)
    throw argument_error("grid resolution must be even and >= 2");
  if (cfg.threads < 0) throw argument_error("threads must be nonnegative");
  if (cfg.work_limit < 1) throw argument_error("work limit must be >= 1");
  if (cfg.format != "json" && cfg.format != "csv")
    throw argument_error("format must be json or csv");
  if (cfg.z.rfind("auto:", 0) != 0) (void)rational_from_string(cfg.z);
  else if (cfg.z != "auto:0.9zc")
    throw argument_error("unknown z policy: " + cfg.z);
}

WalkWeightParams make_params(const RunConfig& cfg) {
  WalkWeightParams p;
  p.d = cfg.d;
  p.beta = rational_from_string(cfg.beta);
  p.order = cfg.order;
  p.work_limit = cfg.work_limit >= 1.8e19
                     ? UINT64_MAX
                     : static_cast<std::uint64_t>(cfg.work_limit);
  p.threads = cfg.threads;
  return p;
}

Json json_point(const LatticePoint& x, int d) {
  Json a = Json::array();
  for (int j = 0; j < d; ++j) a.push_back(x[j]);
  return a;
}

Json json_kpoint(const TorusPoint& k) {
  Json a = Json::array();
  for (int j = 0; j < k.d; ++j) a.push_back(k[j]);
  return a;
}

double eval_poly(const ZPolynomial& p, double z) {
  double acc = 0;
  for (int n = p.degree(); n >= 0; --n) acc = acc * z + to_double(p.coeff(n));
  return acc;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json zc_json(const ZcEstimate& zc) {
  Json j;
  j["zc"] = zc.zc;
  j["error_bar"] = zc.error_bar;
  j["ge_free_bound"] = zc.ge_free_bound;
  j["ratios"] = zc.ratios;
  j["accels"] = zc.accels;
  return j;
}

// resolved evaluation point plus the data needed to apply the z-policy
struct ZContext {
  Rational z;
  double zd = 0;
  std::string policy;   // the raw --z argument
  bool have_zc = false;
  ZcEstimate zc;
  std::string zc_error;
};

ZContext resolve_z(const RunConfig& cfg, const GSeries& g) {
  ZContext ctx;
  ctx.policy = cfg.z;
  try {
    ctx.zc = zc_estimate(chi_series(g), g.params.d);
    ctx.have_zc = true;
  } catch (const std::exception& e) {
    ctx.zc_error = e.what();
  }
  if (cfg.z == "auto:0.9zc") {
    if (!ctx.have_zc)
      throw argument_error("cannot resolve auto:0.9zc: " + ctx.zc_error);
    ctx.z = round_to_millionths(0.9 * ctx.zc.zc);
  } else {
    ctx.z = rational_from_string(cfg.z);
  }
  ctx.zd = to_double(ctx.z);
  return ctx;
}

// numeric evaluation of truncated series requires z below the estimated
// critical point; exact beta = 0 series terminate, so no policy applies
void enforce_policy(const ZContext& ctx, const Rational& beta) {
  if (beta == 0) return;
  if (!ctx.have_zc)
    throw argument_error("z-policy check needs a zc estimate: " +
                         ctx.zc_error);
  if (ctx.zd > kPolicyFraction * ctx.zc.zc + kPolicySlack)
    throw argument_error(
        "z = " + to_string(ctx.z) + " exceeds the evaluation policy bound " +
        fmt_double(kPolicyFraction * ctx.zc.zc) +
        " (0.95 * zc_estimate); exact commands (decompose) are exempt");
}

bool numeric_z_ok(const ZContext& ctx, const Rational& beta) {
  if (beta == 0) return true;
  return ctx.have_zc &&
         ctx.zd <= kPolicyFraction * ctx.zc.zc + kPolicySlack;
}

Json run_section(Json& ok_flag, const std::function<Json()>& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    ok_flag = false;
    return error_json(error_type_name(e), e.what());
  }
}

// ---------------------------------------------------------------- commands

CmdResult cmd_enumerate(const RunConfig& cfg) {
  GSeries g = enumerate_G(make_params(cfg));
  CmdResult res;
  res.output = cfg.format == "csv" ? series_to_csv(g.series)
                                   : dump_json(gseries_to_json(g));
  return res;
}

// first mismatching coefficient between a stored series and the fresh
// enumeration, reported as a verification failure
void compare_to_enumeration(const GSeries& file, const GSeries& fresh) {
  std::set<LatticePoint> keys;
  for (const auto& [x, p] : file.series.entries()) keys.insert(x);
  for (const auto& [x, p] : fresh.series.entries()) keys.insert(x);
  for (int n = 0; n <= file.params.order; ++n) {
    for (const auto& x : keys) {
      const Rational& a = file.series.value_at(x).coeff(n);
      const Rational& b = fresh.series.value_at(x).coeff(n);
      if (a != b) {
        std::ostringstream msg;
        msg << "input series mismatch at n=" << n << ", x=(";
        for (int c = 0; c < file.params.d; ++c)
          msg << (c ? "," : "") << x[c];
        msg << "): file has " << to_string(a) << ", enumeration gives "
            << to_string(b);
        throw verification_error(msg.str());
      }
    }
  }
}

CmdResult cmd_verify(const RunConfig& cfg) {
  if (cfg.format == "csv")
    throw argument_error("verify emits a JSON report; use --format json");
  GSeries g;
  if (cfg.input.empty()) {
    g = enumerate_G(make_params(cfg));
  } else {
    g = gseries_from_json(parse_json(read_text_file(cfg.input)));
    WalkWeightParams p = g.params;
    p.work_limit = make_params(cfg).work_limit;
    p.threads = cfg.threads;
    compare_to_enumeration(g, enumerate_G(p));
  }
  PiSeries pi = pi_from_F(invert_to_F(g));
  RecursionReport rec = verify_recursion(g, pi);

  Json doc;
  doc["command"] = "verify";
  Json meta;
  meta["d"] = g.params.d;
  meta["beta"] = to_string(g.params.beta);
  meta["order"] = g.params.order;
  if (!cfg.input.empty()) {
    meta["input"] = cfg.input;
    meta["input_matches_enumeration"] = true;
  }
  doc["meta"] = std::move(meta);
  Json rj;
  rj["order"] = rec.order;
  rj["entries_compared"] = rec.entries_compared;
  rj["nonzero_entries"] = rec.nonzero_entries;
  doc["recursion"] = std::move(rj);
  doc["pi_identically_zero"] = pi.pi.empty();
  doc["ok"] = true;
  CmdResult res;
  res.output = dump_json(doc);
  return res;
}

CmdResult cmd_pi(const RunConfig& cfg) {
  GSeries g = enumerate_G(make_params(cfg));
  PiSeries pi = pi_from_F(invert_to_F(g));
  CmdResult res;
  if (cfg.format == "csv") {
    res.output = series_to_csv(pi.pi);
    return res;
  }
  SeriesFile f;
  f.kind = "Pi";
  f.d = g.params.d;
  f.order = g.params.order;
  f.has_beta = true;
  f.beta = g.params.beta;
  f.series = pi.pi;
  res.output = dump_json(series_file_to_json(f));
  return res;
}

CmdResult cmd_green(const RunConfig& cfg) {
  // --z is read as the killing rate mu; auto:0.9zc resolves it from the
  // walk series like everywhere else
  Rational mu;
  if (cfg.z == "auto:0.9zc") {
    GSeries g = enumerate_G(make_params(cfg));
    mu = resolve_z(cfg, g).z;
  } else {
    mu = rational_from_string(cfg.z);
  }
  const double mu_d = to_double(mu);
  GreenEvaluator green(cfg.d, mu_d);
  const auto reps = reps_linf_ball(cfg.d, cfg.box);
  const auto table = green.table(reps);
  const double resid = resolvent_residual(green, cfg.box);

  CmdResult res;
  if (cfg.format == "csv") {
    std::ostringstream out;
    for (int j = 0; j < cfg.d; ++j) out << 'x' << (j + 1) << ',';
    out << "C\n";
    for (const auto& [x, v] : table) {
      for (int j = 0; j < cfg.d; ++j) out << x[j] << ',';
      out << fmt_double(v) << '\n';
    }
    res.output = out.str();
    return res;
  }

  Json doc;
  doc["command"] = "green";
  Json meta;
  meta["d"] = cfg.d;
  meta["mu"] = to_string(mu);
  meta["mass"] = green.mass();
  meta["box"] = cfg.box;
  doc["meta"] = std::move(meta);
  doc["resolvent_residual"] = resid;
  if (cfg.d >= 3) {
    doc["amplitude_a_d"] = amplitude_a_d(cfg.d);
    Json rows = Json::array();
    for (const auto& r : green_asymptotic_audit(cfg.d, cfg.box)) {
      Json row;
      row["direction"] = r.direction;
      row["absx"] = r.absx;
      row["value"] = r.value;
      row["ratio"] = r.ratio;
      rows.push_back(std::move(row));
    }
    doc["massless_asymptotics"] = std::move(rows);
  }
  Json tab = Json::array();
  for (const auto& [x, v] : table) {
    Json row;
    row["x"] = json_point(x, cfg.d);
    row["C"] = v;
    tab.push_back(std::move(row));
  }
  doc["table"] = std::move(tab);
  CmdResult res2;
  res2.output = dump_json(doc);
  return res2;
}

Json scan_json(const InfraredScan& scan) {
  Json j;
  j["L"] = scan.L;
  j["z"] = scan.z;
  j["c_est"] = scan.c_est;
  j["min_F"] = scan.min_F;
  j["F0"] = scan.F0;
  j["positive"] = scan.positive;
  j["argmin_m"] = json_point(scan.argmin_m, scan.argmin_m.dim());
  j["argmin_k"] = json_kpoint(scan.argmin_k);
  return j;
}

CmdResult cmd_infrared(const RunConfig& cfg) {
  if (cfg.format == "csv")
    throw argument_error("infrared emits a JSON report; use --format json");
  GSeries g = enumerate_G(make_params(cfg));
  PiSeries pi = pi_from_F(invert_to_F(g));
  ZContext zc = resolve_z(cfg, g);
  enforce_policy(zc, g.params.beta);
  InfraredScan scan = infrared_scan(pi, zc.zd, cfg.grid);

  Json doc;
  doc["command"] = "infrared";
  Json meta;
  meta["d"] = cfg.d;
  meta["beta"] = to_string(g.params.beta);
  meta["order"] = cfg.order;
  meta["z_policy"] = zc.policy;
  meta["z"] = to_string(zc.z);
  meta["grid"] = cfg.grid;
  doc["meta"] = std::move(meta);
  if (zc.have_zc) doc["zc"] = zc_json(zc.zc);
  doc["scan"] = scan_json(scan);
  doc["ok"] = scan.positive;
  CmdResult res;
  res.output = dump_json(doc);
  res.exit_code = scan.positive ? 0 : 1;
  return res;
}

Json decomposition_json(const Decomposition& dec) {
  Json j;
  j["lambda"] = to_string(dec.lambda);
  j["mu"] = to_string(dec.mu);
  j["lambda_double"] = to_double(dec.lambda);
  j["mu_double"] = to_double(dec.mu);
  j["mu_omega"] = to_double(dec.mu) * 2 * dec.d;
  j["pihat0"] = to_string(dec.pihat0);
  j["pi_second_moment"] = to_string(dec.pi_m2);
  j["Fhat0"] = to_string(dec.Fhat0);
  j["E_moment0"] = to_string(dec.E_m0);
  j["E_moment2"] = to_string(dec.E_m2);
  j["E_support_orbits"] = dec.E.entries().size();
  j["E_identically_zero"] = dec.E.empty();
  return j;
}

CmdResult cmd_decompose(const RunConfig& cfg) {
  if (cfg.format == "csv")
    throw argument_error("decompose emits a JSON report; use --format json");
  GSeries g = enumerate_G(make_params(cfg));
  PiSeries pi = pi_from_F(invert_to_F(g));
  ZContext zc = resolve_z(cfg, g);
  // exact arithmetic throughout: exempt from the numeric z-policy
  Decomposition dec = build_E(pi, zc.z);

  Json doc;
  doc["command"] = "decompose";
  Json meta;
  meta["d"] = cfg.d;
  meta["beta"] = to_string(g.params.beta);
  meta["order"] = cfg.order;
  meta["z_policy"] = zc.policy;
  meta["z"] = to_string(zc.z);
  doc["meta"] = std::move(meta);
  if (zc.have_zc) doc["zc"] = zc_json(zc.zc);
  doc["decomposition"] = decomposition_json(dec);
  SeriesFile ef;
  ef.kind = "E";
  ef.d = cfg.d;
  ef.order = 0;
  ef.has_beta = true;
  ef.beta = g.params.beta;
  ef.has_z = true;
  ef.z = zc.z;
  ef.series = dec.E;
  doc["E"] = series_file_to_json(ef);
  doc["ok"] = true;
  CmdResult res;
  res.output = dump_json(doc);
  return res;
}

Json bootstrap_json(const BootstrapReport& br, int d) {
  Json j;
  j["z"] = br.z;
  j["box"] = br.box;
  j["b"] = br.b;
  j["argmax"] = json_point(br.argmax, d);
  j["on_boundary"] = br.on_boundary;
  j["le_threshold_2"] = br.b <= 2.0;
  j["le_threshold_3"] = br.b <= 3.0;
  return j;
}

CmdResult cmd_bootstrap(const RunConfig& cfg) {
  if (cfg.format == "csv")
    throw argument_error("bootstrap emits a JSON report; use --format json");
  GSeries g = enumerate_G(make_params(cfg));
  ZContext zc = resolve_z(cfg, g);
  enforce_policy(zc, g.params.beta);
  BootstrapReport br = bootstrap_b(g, zc.zd, cfg.box);

  Json doc;
  doc["command"] = "bootstrap";
  Json meta;
  meta["d"] = cfg.d;
  meta["beta"] = to_string(g.params.beta);
  meta["order"] = cfg.order;
  meta["z_policy"] = zc.policy;
  meta["z"] = to_string(zc.z);
  meta["box"] = cfg.box;
  doc["meta"] = std::move(meta);
  if (zc.have_zc) doc["zc"] = zc_json(zc.zc);
  doc["bootstrap"] = bootstrap_json(br, cfg.d);
  doc["ok"] = true;
  CmdResult res;
  res.output = dump_json(doc);
  return res;
}

CmdResult cmd_report(const RunConfig& cfg) {
  if (cfg.format == "csv")
    throw argument_error(
        "report emits a JSON document (CSV side tables are written "
        "alongside); use --format json");
  GSeries g = enumerate_G(make_params(cfg));
  const Rational beta = g.params.beta;
  const double beta_d = to_double(beta);
  const int N = g.params.order;

  Json ok = true;
  Json doc;
  doc["command"] = "report";
  CmdResult res;

  // kernel and evaluation point; everything downstream depends on these
  PiSeries pi = pi_from_F(invert_to_F(g));
  ZContext zc = resolve_z(cfg, g);
  const bool z_ok = numeric_z_ok(zc, beta);
  const char* kPolicyMsg =
      "z exceeds the 0.95 * zc_estimate numeric evaluation policy";

  Json meta;
  meta["format"] = "wsaw-report";
  meta["version"] = 1;
  meta["d"] = cfg.d;
  meta["beta"] = to_string(beta);
  meta["order"] = N;
  meta["box"] = cfg.box;
  meta["grid"] = cfg.grid;
  meta["z_policy"] = zc.policy;
  meta["z"] = to_string(zc.z);
  doc["meta"] = std::move(meta);

  doc["zc"] = run_section(ok, [&]() -> Json {
    if (!zc.have_zc) throw argument_error(zc.zc_error);
    return zc_json(zc.zc);
  });

  doc["pi_decay"] = run_section(ok, [&]() -> Json {
    if (!z_ok) throw argument_error(kPolicyMsg);
    PiDecayAudit a = pi_decay_audit(pi, zc.zd, beta);
    Json j;
    j["exponent"] = a.exponent;
    j["K"] = a.K;
    j["K_prev_order"] = a.K_prev_order;
    j["stable"] = a.stable;
    j["max_abs_pi"] = a.max_abs_pi;
    return j;
  });

  // exact decomposition: exempt from the numeric z-policy
  Decomposition dec;
  bool have_dec = false;
  doc["decomposition"] = run_section(ok, [&]() -> Json {
    dec = build_E(pi, zc.z);
    have_dec = true;
    return decomposition_json(dec);
  });

  doc["infrared"] = run_section(ok, [&]() -> Json {
    if (!z_ok) throw argument_error(kPolicyMsg);
    InfraredScan scan = infrared_scan(pi, zc.zd, cfg.grid);
    return scan_json(scan);
  });

  doc["ehat_scaling"] = run_section(ok, [&]() -> Json {
    if (!have_dec) throw argument_error("decomposition unavailable");
    Json j;
    j["exact_zero"] = dec.E.empty();
    Json fits = Json::array();
    if (!dec.E.empty()) {
      if (!z_ok) throw argument_error(kPolicyMsg);
      EhatScalingAudit audit = ehat_scaling_audit(dec.E);
      for (const auto& f : audit.fits) {
        Json row;
        row["order"] = f.order;
        row["slope"] = f.slope;
        row["expected_slope"] = 4.0 - f.order;
        row["amplitude"] = f.amplitude;
        fits.push_back(std::move(row));
      }
    }
    j["fits"] = std::move(fits);
    return j;
  });

  doc["fhat_l1"] = run_section(ok, [&]() -> Json {
    if (!have_dec) throw argument_error("decomposition unavailable");
    Json j;
    j["exact_zero"] = dec.E.empty();
    if (dec.E.empty()) {
      j["rows"] = Json::array();
      return j;
    }
    if (!z_ok) throw argument_error(kPolicyMsg);
    const double mu_d = to_double(dec.mu);
    if (mu_d * 2 * cfg.d >= 1 - 1e-12)
      throw numeric_error("fhat audit needs a massive Green function");
    // coarse/fine pair: the refinement change estimates the quadrature
    // error of the grid mean near the k = 0 singularity
    const int L_fine = std::min(cfg.grid, 32);
    const int L_coarse = std::max(2, L_fine / 2);
    FhatL1Audit fine = fhat_l1_audit(dec.E, g, zc.zd, mu_d, L_fine);
    FhatL1Audit coarse = fhat_l1_audit(dec.E, g, zc.zd, mu_d, L_coarse);
    j["L"] = fine.L;
    j["L_coarse"] = coarse.L;
    bool warn = false;
    Json rows = Json::array();
    for (std::size_t i = 0; i < fine.rows.size(); ++i) {
      const auto& r = fine.rows[i];
      Json row;
      row["pattern"] = r.pattern;
      row["l1_mean"] = r.l1_mean;
      row["ratio_to_beta"] = r.l1_mean / beta_d;
      const double prev = coarse.rows[i].l1_mean;
      const double change =
          r.l1_mean == 0 ? 0 : std::fabs(r.l1_mean - prev) / r.l1_mean;
      row["refinement_change"] = change;
      warn = warn || change > 0.1;
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["accuracy_warning"] = warn;
    return j;
  });

  BootstrapReport br;
  doc["bootstrap"] = run_section(ok, [&]() -> Json {
    if (!z_ok) throw argument_error(kPolicyMsg);
    br = bootstrap_b(g, zc.zd, cfg.box);
    return bootstrap_json(br, cfg.d);
  });

  doc["green_f"] = run_section(ok, [&]() -> Json {
    if (!have_dec) throw argument_error("decomposition unavailable");
    if (!z_ok) throw argument_error(kPolicyMsg);
    const double mu_d = to_double(dec.mu);
    GreenEvaluator green(cfg.d, mu_d);
    FTable ft = build_f(dec, g, green, cfg.box);
    const auto reps = reps_linf_ball(cfg.d, cfg.box);
    const auto ctab = green.table(reps);

    Json j;
    j["mu"] = to_string(dec.mu);
    j["mass"] = green.mass();
    j["box"] = cfg.box;
    j["f_exactly_zero"] = ft.exact_zero;
    j["max_abs_residual"] = ft.max_abs_residual;
    j["max_abs_G"] = ft.max_abs_G;
    j["resolvent_residual"] = resolvent_residual(green, cfg.box);
    double fhat0 = 0;
    for (const auto& [x, v] : ft.f)
      fhat0 += v * double(orbit_size(x));
    j["fhat0"] = fhat0;
    j["fhat0_over_beta"] = beta_d > 0 ? fhat0 / beta_d : 0.0;

    // axis decay fits for G and f
    std::vector<std::pair<double, double>> gpts, fpts;
    for (int r = 1; r <= cfg.box; ++r) {
      LatticePoint x(cfg.d);
      x[0] = r;
      gpts.emplace_back(r, eval_poly(g.series.value_at(x), zc.zd));
      if (!ft.exact_zero) {
        auto it = ft.f.find(orbit_representative(x));
        if (it != ft.f.end()) fpts.emplace_back(r, it->second);
      }
    }
    auto fit_json = [](const DecayFit& f) {
      Json fj;
      fj["exponent"] = f.exponent;
      fj["stderr"] = f.stderr_slope;
      fj["amplitude"] = f.amplitude;
      fj["n_used"] = f.n_used;
      return fj;
    };
    Json fits;
    fits["G_axis"] = fit_json(decay_fit(gpts));
    if (fpts.size() >= 3) fits["f_axis"] = fit_json(decay_fit(fpts));
    j["decay"] = std::move(fits);

    // CSV side table for plotting
    std::ostringstream csv;
    for (int c = 0; c < cfg.d; ++c) csv << 'x' << (c + 1) << ',';
    csv << "absx,G,C,f,ratio\n";
    for (const auto& x : reps) {
      const double gval = eval_poly(g.series.value_at(x), zc.zd);
      const double cval = ctab.at(x);
      double fval = 0;
      if (!ft.exact_zero) {
        auto it = ft.f.find(x);
        if (it != ft.f.end()) fval = it->second;
      }
      for (int c = 0; c < cfg.d; ++c) csv << x[c] << ',';
      csv << fmt_double(std::sqrt(double(x.norm2()))) << ','
          << fmt_double(gval) << ',' << fmt_double(cval) << ','
          << fmt_double(fval) << ',' << fmt_double(gval / cval) << '\n';
    }
    res.side_files["tables.csv"] = csv.str();
    return j;
  });

  doc["truncation_sensitivity"] = run_section(ok, [&]() -> Json {
    if (N < 1) throw argument_error("order too small for a sensitivity row");
    GSeries g1 = g;
    g1.params.order = N - 1;
    g1.series = g.series.truncated(N - 1);
    PiSeries pi1 = pi_from_F(invert_to_F(g1));

    Json rows = Json::array();
    auto add_row = [&rows](const char* name, double full, double reduced) {
      Json row;
      row["quantity"] = name;
      row["value"] = full;
      row["value_prev_order"] = reduced;
      row["abs_change"] = std::fabs(full - reduced);
      rows.push_back(std::move(row));
    };

    if (zc.have_zc) {
      try {
        ZcEstimate zc1 = zc_estimate(chi_series(g1), cfg.d);
        add_row("zc", zc.zc.zc, zc1.zc);
      } catch (const std::exception&) {
        // too few series coefficients at N-1; skip the row
      }
    }
    if (have_dec) {
      Decomposition dec1 = lambda_mu(pi1, zc.z);
      add_row("lambda", to_double(dec.lambda), to_double(dec1.lambda));
      add_row("mu", to_double(dec.mu), to_double(dec1.mu));
    }
    if (z_ok) {
      InfraredScan s1 = infrared_scan(pi1, zc.zd, cfg.grid);
      InfraredScan s0 = infrared_scan(pi, zc.zd, cfg.grid);
      add_row("c_est", s0.c_est, s1.c_est);
      add_row("min_F", s0.min_F, s1.min_F);
      BootstrapReport b1 = bootstrap_b(g1, zc.zd, cfg.box);
      add_row("b", br.b, b1.b);
    }
    Json j;
    j["order_full"] = N;
    j["order_reduced"] = N - 1;
    j["rows"] = std::move(rows);
    return j;
  });

  doc["ok"] = ok;
  res.exit_code = ok.get<bool>() ? 0 : 1;
  res.output = dump_json(doc);
  return res;
}

}  // namespace

CmdResult run_command(const RunConfig& cfg) {
  try {
    validate(cfg);
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
    if (cfg.command == "enumerate") return cmd_enumerate(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "pi") return cmd_pi(cfg);
    if (cfg.command == "green") return cmd_green(cfg);
    if (cfg.command == "infrared") return cmd_infrared(cfg);
    if (cfg.command == "decompose") return cmd_decompose(cfg);
    if (cfg.command == "bootstrap") return cmd_bootstrap(cfg);
    return cmd_report(cfg);
  } catch (const std::exception& e) {
    CmdResult res;
    res.exit_code = exit_code_for(e);
    res.output = dump_json(error_json(error_type_name(e), e.what()));
    return res;
  }
}

}  // namespace wsaw
