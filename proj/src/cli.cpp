#include "rwc/cli.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rwc/arith.hpp"
#include "rwc/eisenstein.hpp"
#include "rwc/errors.hpp"
#include "rwc/mainterm.hpp"
#include "rwc/moments.hpp"
#include "rwc/parallel.hpp"
#include "rwc/specfun.hpp"
#include "rwc/spectral.hpp"

namespace rwc::cli {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::pair<std::string, Command>> kCommands{
    {"moment-scan", Command::moment_scan}, {"mainterm", Command::mainterm},
    {"voronoi-verify", Command::voronoi_verify}, {"spectral-sum", Command::spectral_sum},
    {"bessel", Command::bessel}, {"zeta", Command::zeta}, {"selftest", Command::selftest}};

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string csv_cell(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return format_double(*d);
  if (auto i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (auto b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return csv_field(std::get<std::string>(c));
}

ordered_json json_cell(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return std::isfinite(*d) ? ordered_json(*d) : ordered_json(nullptr);
  if (auto i = std::get_if<std::int64_t>(&c)) return *i;
  if (auto b = std::get_if<bool>(&c)) return *b;
  return std::get<std::string>(c);
}

std::vector<double> number_list(const json& v, const std::string& key) {
  std::vector<double> r;
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw UsageError("config key " + key + " must be a number or an array of numbers");
  for (const auto& e : v) {
    if (!e.is_number()) throw UsageError("config key " + key + " must hold numbers");
    r.push_back(e.get<double>());
  }
  return r;
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw UsageError("config key " + key + " must be a number");
  return v.get<double>();
}

std::string text(const json& v, const std::string& key) {
  if (!v.is_string()) throw UsageError("config key " + key + " must be a string");
  return v.get<std::string>();
}

unsigned positive_count(double v, const std::string& what) {
  if (!(v >= 1) || v != std::floor(v) || v > 4096) throw UsageError(what + " must be an integer in [1, 4096]");
  return static_cast<unsigned>(v);
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw UsageError("format must be csv or json, got " + s);
}

// moment-scan

Outcome moment_scan(const RunConfig& cfg) {
  Outcome o;
  o.report.columns = {"T", "Y", "raw", "correction", "regularized", "ratio"};
  moments::MomentOptions opts;
  opts.grid.refine = cfg.refine;
  opts.threads = cfg.parallelism;
  opts.tolerance = cfg.tolerance;
  std::vector<double> Ts = cfg.T.empty() ? std::vector<double>{8, 16, 32} : cfg.T;
  for (const auto& r : moments::rwc_scan(Ts, cfg.Y, cfg.k, opts)) {
    o.report.rows.push_back({r.T, r.Y, r.raw, r.correction, r.regularized, r.ratio});
    if (!r.error.empty()) {
      o.verified = false;
      o.failures.push_back("T=" + format_double(r.T) + ": " + r.error);
    }
  }
  return o;
}

// mainterm

Outcome mainterm_table(const RunConfig& cfg) {
  Outcome o;
  o.report.columns = {"T", "M1", "M2", "tail", "asymptotic", "ratio"};
  std::vector<double> Ts = cfg.T.empty() ? std::vector<double>{20} : cfg.T;
  for (double T : Ts) {
    auto v = mainterm::mainterm_residue_numeric(T);
    double a = mainterm::mainterm_asymptotic(T);
    o.report.rows.push_back({T, v.M1, v.M2, v.tail, a, v.M1 / a});
  }
  return o;
}

// voronoi-verify

Outcome voronoi_verify(const RunConfig& cfg) {
  Outcome o;
  o.report.columns = {"kind", "h", "c", "scale", "T", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
                      "gap", "dual_terms", "tolerance", "pass"};
  mainterm::VoronoiOptions opts;
  opts.sigma = cfg.sigma;
  opts.step = cfg.step;
  opts.threads = cfg.parallelism;
  const mainterm::BumpFunction phi(1, 2, 0.5);
  struct Case {
    mainterm::Kind kind;
    std::int64_t h, c;
    double scale, T;
  };
  std::vector<Case> cases;
  for (auto hc : {std::pair<std::int64_t, std::int64_t>{1, 1}, {2, 5}, {3, 7}})
    for (double scale : {50.0, 200.0}) cases.push_back({mainterm::Kind::tau, hc.first, hc.second, scale, 0});
  for (double T : cfg.T.empty() ? std::vector<double>{5} : cfg.T)
    cases.push_back({mainterm::Kind::tau_shifted, 1, 3, 100, T});
  for (const auto& k : cases) {
    bool tau = k.kind == mainterm::Kind::tau;
    double tol = tau ? cfg.gap_tolerance : cfg.shifted_gap_tolerance;
    auto r = mainterm::voronoi_identity_check(k.kind, k.h, k.c, k.scale, k.T, phi, opts);
    bool pass = r.gap < tol;
    std::string kind = tau ? "tau" : "tau_shifted";
    o.report.rows.push_back({kind, k.h, k.c, k.scale, k.T, r.lhs.real(), r.lhs.imag(), r.rhs.real(),
                             r.rhs.imag(), r.gap, r.dual_terms, tol, pass});
    if (!pass) {
      o.verified = false;
      o.failures.push_back(kind + " (h,c,N)=(" + std::to_string(k.h) + "," + std::to_string(k.c) + "," +
                           format_double(k.scale) + ") gap " + format_double(r.gap));
    }
  }
  return o;
}

// spectral-sum

Outcome spectral_table(const RunConfig& cfg) {
  Outcome o;
  o.report.columns = {"t", "parity", "term", "partial_sum", "law", "partial_over_law"};
  spectral::SpectralDataset ds = spectral::load_dataset(cfg.data);
  if (cfg.eps > 0) ds = spectral::bulk_filter(ds, cfg.eps);
  std::vector<double> terms(ds.records.size());
  parallel_for(terms.size(), cfg.parallelism,
               [&](std::size_t i) { terms[i] = spectral::spectral_term(ds.records[i], ds.T); });
  const double law = spectral::spectral_law(ds.T);
  double partial = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    partial += terms[i];
    const auto& r = ds.records[i];
    o.report.rows.push_back({r.t, std::string(r.parity == spectral::Parity::even ? "even" : "odd"), terms[i],
                             partial, law, partial / law});
  }
  return o;
}

// bessel, zeta

Outcome bessel_table(const RunConfig& cfg) {
  Outcome o;
  o.report.columns = {"T", "x", "value", "turning_point"};
  for (double T : cfg.T.empty() ? std::vector<double>{10} : cfg.T)
    for (double x : cfg.x) {
      auto v = specfun::bessel_k_imag_scaled(T, x);
      o.report.rows.push_back({T, x, v.value, v.turning_point});
    }
  return o;
}

Outcome zeta_table(const RunConfig& cfg) {
  Outcome o;
  o.report.columns = {"re", "im", "zeta_re", "zeta_im", "xi_re", "xi_im"};
  for (double a : cfg.re)
    for (double b : cfg.im) {
      ComplexValue s(a, b);
      ComplexValue z = specfun::zeta_complex(s), x = specfun::xi_complete(s);
      o.report.rows.push_back({a, b, z.real(), z.imag(), x.real(), x.imag()});
    }
  return o;
}

// selftest

double rel(ComplexValue a, ComplexValue b) { return std::abs(a - b) / std::abs(b); }

ComplexValue gamma_r(ComplexValue z) { return std::pow(kPi, -z / 2.0) * specfun::gamma_complex(z / 2.0); }

Outcome selftest(const RunConfig& cfg) {
  Outcome o;
  o.report.columns = {"invariant", "value", "tolerance", "pass"};
  auto record = [&](const std::string& name, double value, double tol) {
    bool pass = value <= tol;
    o.report.rows.push_back({name, value, tol, pass});
    if (!pass) {
      o.verified = false;
      o.failures.push_back(name + " (value " + format_double(value) + ", tolerance " + format_double(tol) + ")");
    }
  };

  record("gamma_half", rel(specfun::gamma_complex(0.5), std::sqrt(kPi)), 1e-14);
  record("zeta_two", rel(specfun::zeta_complex(2.0), kPi * kPi / 6), 1e-13);
  record("xi_functional_equation",
         rel(specfun::xi_complete(ComplexValue(0.3, 5)), specfun::xi_complete(ComplexValue(0.7, -5))), 1e-9);
  record("bessel_order_zero",
         rel(specfun::bessel_k_imag_scaled(0, 1.3).value, boost::math::cyl_bessel_k(0, 1.3)), 1e-12);

  double mismatches = 0;
  for (std::int64_t c = 1; c <= 60; ++c)
    for (std::int64_t m = -60; m <= 60; ++m)
      if (arith::ramanujan_sum(c, m) != arith::ramanujan_sum_direct(c, m)) ++mismatches;
  record("ramanujan_paths", mismatches, 0);

  double weil = 0;
  for (std::int64_t c : {7, 30, 64, 97, 105})
    for (std::int64_t n : {1, 3, 12})
      for (std::int64_t m : {1, 5, 30}) {
        double bound = static_cast<double>(arith::divisor_count(c)) *
                       std::sqrt(static_cast<double>(arith::gcd(arith::gcd(n, m), c))) * std::sqrt(double(c));
        weil = std::max(weil, std::abs(arith::kloosterman({n, m, c})) / bound);
      }
  record("kloosterman_weil_ratio", weil, 1 + 1e-12);

  {
    eisenstein::EisensteinEvaluator ev(8);
    double worst = 0;
    for (auto z : {eisenstein::Point{0.1, 0.9}, eisenstein::Point{-0.3, 1.2}, eisenstein::Point{0.45, 0.95}}) {
      double d = z.x * z.x + z.y * z.y;
      worst = std::max(worst, rel(eisenstein::eval_E(ev, {-z.x / d, z.y / d}), eisenstein::eval_E(ev, z)));
    }
    record("modular_invariance", worst, 1e-7);
  }

  {
    moments::CorrectionCoefficients c;
    if (cfg.inject_fault == "a2") c.c2 = 3;
    const double T = 8, Y = 10, h = 1e-3;
    ComplexValue phi = eisenstein::scattering_phi(T);
    auto f = [&](double y) { return moments::regularization_correction(phi, T, y, 2, c); };
    double fd = (f(Y - 2 * h) - 8 * f(Y - h) + 8 * f(Y + h) - f(Y + 2 * h)) / (12 * h);
    ComplexValue w = std::exp(ComplexValue(0, -2 * T * std::log(Y)));
    record("moment_correction_A2", std::abs(fd - std::pow(std::abs(1.0 + phi * w), 4)), 1e-8);
  }

  {
    ComplexValue z = specfun::zeta_complex(ComplexValue(1, 20));
    double expect = std::pow(std::abs(z), 4) / (kPi * kPi / 6);
    record("dirichlet_F_origin", rel(mainterm::dirichlet_F(0.0, 0.0, 10), expect), 1e-10);
  }

  {
    mainterm::VoronoiOptions opts;
    opts.threads = cfg.parallelism;
    auto r = mainterm::voronoi_identity_check(mainterm::Kind::tau, 1, 1, 50, 0, mainterm::BumpFunction(1, 2, 0.5),
                                              opts);
    record("voronoi_tau_gap", r.gap, 1e-6);
  }

  record("weight_H_leading",
         std::abs(mainterm::weight_H(40, 40).value / mainterm::weight_H_leading(40, 40) - 1), 0.02);

  {
    const double T = 10, t = 5;
    spectral::MaassFormRecord r;
    r.t = t;
    r.L_half = r.L_shift_abs = r.L_sym2 = 1;
    r.T_dataset = T;
    const ComplexValue it(0, t), sh(0.5, 2 * T);
    double a = std::abs(gamma_r(sh + it) * gamma_r(sh - it)), b = std::abs(gamma_r(0.5 + it) * gamma_r(0.5 - it));
    double expect = std::cosh(kPi * t) / 2 * a * a * b * b / std::pow(std::abs(specfun::xi_complete({1, 2 * T})), 4);
    record("spectral_one_term", rel(spectral::spectral_term(r, T), expect), 1e-10);
  }
  return o;
}

}  // namespace

Command parse_command(const std::string& name) {
  for (const auto& [n, c] : kCommands)
    if (n == name) return c;
  throw UsageError("unknown command " + name);
}

std::string command_name(Command c) {
  for (const auto& [n, k] : kCommands)
    if (k == c) return n;
  return "?";
}

void validate(const RunConfig& cfg) {
  auto finite = [](double v) { return std::isfinite(v); };
  for (double T : cfg.T)
    if (!(T > 0) || !finite(T)) throw UsageError("T values must be finite and > 0");
  if (!(cfg.Y > 1) || !finite(cfg.Y)) throw UsageError("Y must be > 1");
  if (cfg.k != 1 && cfg.k != 2) throw UsageError("k must be 1 or 2");
  if (!(cfg.refine > 0) || !finite(cfg.refine)) throw UsageError("refine must be > 0");
  if (!(cfg.tolerance > 0)) throw UsageError("tolerance must be > 0");
  if (!(cfg.gap_tolerance > 0) || !(cfg.shifted_gap_tolerance > 0)) throw UsageError("gap tolerances must be > 0");
  if (!(cfg.sigma > 0) || !finite(cfg.sigma)) throw UsageError("sigma must be > 0");
  if (!(cfg.step > 0) || !(cfg.step <= 1)) throw UsageError("step must lie in (0, 1]");
  for (double x : cfg.x)
    if (!(x > 0) || !finite(x)) throw UsageError("x values must be finite and > 0");
  for (double a : cfg.re)
    for (double b : cfg.im) {
      if (!finite(a) || !finite(b)) throw UsageError("re/im values must be finite");
      if (a == 1 && b == 0) throw UsageError("s = 1 is the pole of zeta");
    }
  if (cfg.eps != 0 && !(cfg.eps > 0 && cfg.eps < 0.5)) throw UsageError("eps must lie in (0, 0.5)");
  if (cfg.parallelism < 1) throw UsageError("parallelism must be >= 1");
  if (!cfg.inject_fault.empty()) {
    if (cfg.inject_fault != "a2") throw UsageError("unknown fault " + cfg.inject_fault + " (known: a2)");
    if (cfg.command != Command::selftest) throw UsageError("--inject-fault applies to selftest only");
  }
  if (cfg.command == Command::spectral_sum && cfg.data.empty()) throw UsageError("spectral-sum needs --data");
}

void apply_config_json(RunConfig& cfg, const std::string& text_in) {
  json doc;
  try {
    doc = json::parse(text_in);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, v] : doc.items()) {
    if (key == "T") cfg.T = number_list(v, key);
    else if (key == "Y") cfg.Y = number(v, key);
    else if (key == "k") {
      double k = number(v, key);
      if (k != 1 && k != 2) throw UsageError("k must be 1 or 2");
      cfg.k = static_cast<int>(k);
    } else if (key == "refine") cfg.refine = number(v, key);
    else if (key == "tolerance") cfg.tolerance = number(v, key);
    else if (key == "gap_tolerance") cfg.gap_tolerance = number(v, key);
    else if (key == "shifted_gap_tolerance") cfg.shifted_gap_tolerance = number(v, key);
    else if (key == "sigma") cfg.sigma = number(v, key);
    else if (key == "step") cfg.step = number(v, key);
    else if (key == "x") cfg.x = number_list(v, key);
    else if (key == "re") cfg.re = number_list(v, key);
    else if (key == "im") cfg.im = number_list(v, key);
    else if (key == "data") cfg.data = text(v, key);
    else if (key == "eps") cfg.eps = number(v, key);
    else if (key == "out") cfg.out = text(v, key);
    else if (key == "format") {
      cfg.format = parse_format(text(v, key));
      cfg.format_set = true;
    } else if (key == "parallelism") cfg.parallelism = positive_count(number(v, key), "parallelism");
    else if (key == "inject_fault") cfg.inject_fault = text(v, key);
    else throw UsageError("unknown config key " + key);
  }
}

Outcome execute(const RunConfig& cfg) {
  validate(cfg);
  Outcome o;
  switch (cfg.command) {
    case Command::moment_scan: o = moment_scan(cfg); break;
    case Command::mainterm: o = mainterm_table(cfg); break;
    case Command::voronoi_verify: o = voronoi_verify(cfg); break;
    case Command::spectral_sum: o = spectral_table(cfg); break;
    case Command::bessel: o = bessel_table(cfg); break;
    case Command::zeta: o = zeta_table(cfg); break;
    case Command::selftest: o = selftest(cfg); break;
  }
  o.report.command = command_name(cfg.command);
  return o;
}

std::string format_report(const Report& report, Format format) {
  for (const auto& row : report.rows)
    if (row.size() != report.columns.size()) throw InvariantError("report rows must match the column count");
  if (format == Format::csv) {
    std::string s;
    for (std::size_t i = 0; i < report.columns.size(); ++i) s += (i ? "," : "") + csv_field(report.columns[i]);
    s += "\n";
    for (const auto& row : report.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_cell(row[i]);
      s += "\n";
    }
    return s;
  }
  ordered_json doc;
  doc["command"] = report.command;
  doc["columns"] = report.columns;
  doc["rows"] = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json r = ordered_json::array();
    for (const auto& c : row) r.push_back(json_cell(c));
    doc["rows"].push_back(r);
  }
  return doc.dump(2) + "\n";
}

void emit_report(const Report& report, Format format, const std::string& path) {
  const std::string body = format_report(report, format);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << body;
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

int run_command(const RunConfig& cfg_in, std::ostream& out, std::ostream& err) {
  RunConfig cfg = cfg_in;
  if (!cfg.format_set && cfg.command == Command::voronoi_verify) cfg.format = Format::json;
  Outcome o;
  try {
    o = execute(cfg);
    if (cfg.out.empty()) out << format_report(o.report, cfg.format);
    else emit_report(o.report, cfg.format, cfg.out);
  } catch (const UsageError& e) {
    err << "rwc_lab: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    err << "rwc_lab: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    err << "rwc_lab: " << e.what() << "\n";
    return 1;
  } catch (const SchemaError& e) {
    err << "rwc_lab: " << e.what() << "\n";
    return 1;
  } catch (const InvariantError& e) {
    err << "rwc_lab: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "rwc_lab: " << command_name(cfg.command) << " failed: " << e.what() << "\n";
    return 2;
  }
  if (!o.verified) {
    for (const auto& f : o.failures) err << "rwc_lab: " << o.report.command << ": failed: " << f << "\n";
    return 2;
  }
  return 0;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical laboratory for moments of Eisenstein series"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string config_path, format_text, fault;
  std::vector<double> Ts, xs, res, ims;
  double Y = 0, refine = 0, tol = 0, gap = 0, sgap = 0, sigma = 0, step = 0, eps = 0;
  int k = 0;
  std::string data, out_path;
  unsigned parallelism = 0;

  app.add_option("--config", config_path, "JSON config file; flags win over its keys");
  auto* oT = app.add_option("--T", Ts, "Spectral heights, comma separated")->delimiter(',');
  auto* oY = app.add_option("--Y", Y, "Truncation height (moment-scan)");
  auto* ok = app.add_option("--k", k, "Moment: 1 (second) or 2 (fourth)");
  auto* oref = app.add_option("--refine", refine, "Grid refinement factor");
  auto* otol = app.add_option("--tolerance", tol, "Moment quadrature relative tolerance");
  auto* ogap = app.add_option("--gap-tolerance", gap, "Voronoi gap tolerance, kind tau");
  auto* osgap = app.add_option("--shifted-gap-tolerance", sgap, "Voronoi gap tolerance, kind tau_shifted");
  auto* osig = app.add_option("--sigma", sigma, "Voronoi dual contour abscissa");
  auto* ostep = app.add_option("--step", step, "Voronoi dual contour step");
  auto* ox = app.add_option("--x", xs, "Bessel arguments, comma separated")->delimiter(',');
  auto* ore = app.add_option("--re", res, "Real parts of s (zeta)")->delimiter(',');
  auto* oim = app.add_option("--im", ims, "Imaginary parts of s (zeta)")->delimiter(',');
  auto* odata = app.add_option("--data", data, "Spectral dataset (JSON)");
  auto* oeps = app.add_option("--eps", eps, "Restrict spectral-sum to the bulk window for this eps");
  auto* oout = app.add_option("--out", out_path, "Output file (default stdout)");
  auto* ofmt = app.add_option("--format", format_text, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  auto* opar = app.add_option("--parallelism", parallelism, "Worker threads (default RWC_LAB_THREADS or 1)");
  auto* ofault = app.add_option("--inject-fault", fault, "selftest: corrupt a constant (a2)");

  const std::vector<std::pair<std::string, std::string>> help{
      {"moment-scan", "Regularized moments. CSV: T,Y,raw,correction,regularized,ratio"},
      {"mainterm", "Main term M1, M2 against the asymptotic. CSV: T,M1,M2,tail,asymptotic,ratio"},
      {"voronoi-verify",
       "Voronoi identity matrix (JSON default). Columns: kind,h,c,scale,T,lhs_re,lhs_im,rhs_re,rhs_im,gap,"
       "dual_terms,tolerance,pass"},
      {"spectral-sum", "Spectral sum from a dataset. CSV: t,parity,term,partial_sum,law,partial_over_law"},
      {"bessel", "Scaled K_{iT}(x). CSV: T,x,value,turning_point"},
      {"zeta", "zeta(s) and xi(s). CSV: re,im,zeta_re,zeta_im,xi_re,xi_im"},
      {"selftest", "Invariant suite. CSV: invariant,value,tolerance,pass"}};
  for (const auto& [name, desc] : help) app.add_subcommand(name, desc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  RunConfig cfg;
  try {
    cfg.command = parse_command(app.get_subcommands().front()->get_name());
    if (const char* env = std::getenv("RWC_LAB_THREADS"); env && *env) {
      char* end = nullptr;
      double v = std::strtod(env, &end);
      if (*end != '\0') throw UsageError("RWC_LAB_THREADS must be an integer");
      cfg.parallelism = positive_count(v, "RWC_LAB_THREADS");
    }
    if (!config_path.empty()) {
      std::ifstream in(config_path, std::ios::binary);
      if (!in) throw UsageError("cannot open config " + config_path);
      std::stringstream ss;
      ss << in.rdbuf();
      apply_config_json(cfg, ss.str());
    }
  } catch (const UsageError& e) {
    err << "rwc_lab: " << e.what() << "\n";
    return 1;
  }
  if (oT->count()) cfg.T = Ts;
  if (oY->count()) cfg.Y = Y;
  if (ok->count()) cfg.k = k;
  if (oref->count()) cfg.refine = refine;
  if (otol->count()) cfg.tolerance = tol;
  if (ogap->count()) cfg.gap_tolerance = gap;
  if (osgap->count()) cfg.shifted_gap_tolerance = sgap;
  if (osig->count()) cfg.sigma = sigma;
  if (ostep->count()) cfg.step = step;
  if (ox->count()) cfg.x = xs;
  if (ore->count()) cfg.re = res;
  if (oim->count()) cfg.im = ims;
  if (odata->count()) cfg.data = data;
  if (oeps->count()) cfg.eps = eps;
  if (oout->count()) cfg.out = out_path;
  if (ofmt->count()) {
    cfg.format = parse_format(format_text);
    cfg.format_set = true;
  }
  if (opar->count()) cfg.parallelism = parallelism;
  if (ofault->count()) cfg.inject_fault = fault;
  return run_command(cfg, out, err);
}

}  // namespace rwc::cli
