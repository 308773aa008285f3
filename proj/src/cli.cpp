#include "balltrace/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>

#include "balltrace/report.hpp"

namespace balltrace {

namespace {

struct Options {
  int d = 0;
  double nu = 0.0;
  bool nu_given = false;
  std::string pairs, symbols, f, g, alpha;
  int shells = 0;
  int degree = 0;
  std::vector<int> degrees;
  std::vector<double> ps;
  double c = 0.0;
  int power = 0;
  std::string format = "json";
  std::string out_path, csv_path;
  std::uint64_t seed = 0;
  std::uint64_t samples = 200000;
  int threads = 0;
  std::string path = "auto";
  double tolerance = -1.0;
};

void require(bool ok, const std::string& param, const std::string& what) {
  if (!ok) throw domain_error(param, what);
}

void check_d(const Options& o) { require(o.d >= 1 && o.d <= max_dimension, "d", "must be in 1..8"); }

double resolve_nu(const Options& o) {
  const double nu = o.nu_given ? o.nu : o.d;
  require(nu >= o.d, "nu", "must be >= d");
  return nu;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path);
  if (!f) throw std::runtime_error("cannot write " + o.out_path);
  f << text;
}

void emit_json(const Options& o, std::ostream& out, const Json& j) { emit(o, out, dump_json(j) + "\n"); }

void write_csv_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

Json base_config(const std::string& command, const Options& o) {
  Json c;
  c["command"] = command;
  c["d"] = o.d;
  c["threads"] = omp_get_max_threads();
  c["seed"] = o.seed;
  return c;
}

FitOptions fit_options(const Options& o) {
  FitOptions f;
  if (o.tolerance > 0) f.tolerance = o.tolerance;
  return f;
}

std::vector<int> parse_alpha(const std::string& s, int d) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    int x = 0;
    try {
      x = std::stoi(item, &pos);
    } catch (const std::exception&) {
      throw domain_error("alpha", "not an integer: '" + item + "'");
    }
    require(pos == item.size() && x >= 0, "alpha", "entries must be non-negative integers");
    v.push_back(x);
  }
  require(static_cast<int>(v.size()) == d, "alpha", "needs exactly d = " + std::to_string(d) + " entries");
  return v;
}

int cmd_dixmier(const Options& o, std::ostream& out) {
  check_d(o);
  const double nu = resolve_nu(o);
  require(o.shells >= 1, "shells", "must be >= 1");
  const auto path = parse_path(o.path);
  const auto pairs = parse_pairs(o.pairs, o.d);
  const auto r = trace_formula_experiment(pairs, nu, o.shells, path, fit_options(o));
  Json j = to_json(r);
  Json cfg = base_config("dixmier", o);
  cfg["nu"] = nu;
  cfg["pairs"] = o.pairs;
  cfg["shells"] = o.shells;
  cfg["path"] = o.path;
  cfg["tolerance"] = fit_options(o).tolerance;
  j["exact_window"] = r.run.exact_degree;
  j["config"] = cfg;
  if (!o.csv_path.empty()) {
    std::ostringstream ss;
    write_curve_csv(ss, r.run.fit.curves);
    write_csv_file(o.csv_path, ss.str());
  }
  if (o.format == "csv") {
    std::ostringstream ss;
    write_curve_csv(ss, r.run.fit.curves);
    emit(o, out, ss.str());
  } else {
    emit_json(o, out, j);
  }
  return r.run.stable() ? exit_ok : exit_unstable;
}

int cmd_hankel(const Options& o, std::ostream& out) {
  check_d(o);
  const double nu = resolve_nu(o);
  require(o.shells >= 1, "shells", "must be >= 1");
  const auto path = parse_path(o.path);
  const auto f = parse_symbol(o.f, o.d);
  require(f.is_holomorphic(), "f", "must be holomorphic");
  const auto r = hankel_experiment(f, nu, o.shells, path, fit_options(o));
  Json j = to_json(r);
  Json cfg = base_config("hankel", o);
  cfg["nu"] = nu;
  cfg["f"] = o.f;
  cfg["shells"] = o.shells;
  cfg["path"] = o.path;
  cfg["tolerance"] = fit_options(o).tolerance;
  j["exact_window"] = r.run.exact_degree;
  j["config"] = cfg;
  if (!o.csv_path.empty()) {
    std::ostringstream ss;
    write_curve_csv(ss, r.run.fit.curves);
    write_csv_file(o.csv_path, ss.str());
  }
  emit_json(o, out, j);
  return r.run.stable() ? exit_ok : exit_unstable;
}

int cmd_calibrate(const Options& o, std::ostream& out) {
  check_d(o);
  require(o.c >= 0.0, "c", "must be >= 0");
  require(o.shells >= 1, "shells", "must be >= 1");
  const int power = o.power > 0 ? o.power : o.d;
  const auto r = calibrate_model(o.c, o.d, o.shells, power, fit_options(o));
  Json j = to_json(r);
  Json cfg = base_config("calibrate-model", o);
  cfg["c"] = o.c;
  cfg["shells"] = o.shells;
  cfg["power"] = power;
  cfg["tolerance"] = fit_options(o).tolerance;
  j["exact_window"] = o.shells;
  j["config"] = cfg;
  if (!o.csv_path.empty()) {
    std::ostringstream ss;
    write_curve_csv(ss, r.fit.curves);
    write_csv_file(o.csv_path, ss.str());
  }
  emit_json(o, out, j);
  return r.fit.stable ? exit_ok : exit_unstable;
}

int cmd_helton_howe(const Options& o, std::ostream& out) {
  check_d(o);
  const double nu = resolve_nu(o);
  require(o.degree >= 1, "degree", "must be >= 1");
  const auto syms = parse_symbol_list(o.symbols, o.d);
  const auto r = helton_howe_experiment(syms, nu, o.degree);
  Json j = to_json(r);
  Json cfg = base_config("helton-howe", o);
  cfg["nu"] = nu;
  cfg["symbols"] = o.symbols;
  cfg["degree"] = o.degree;
  j["config"] = cfg;
  if (!o.csv_path.empty() || o.format == "csv") {
    std::ostringstream ss;
    ss << "n,re,im\n" << std::setprecision(17);
    for (std::size_t n = 0; n < r.partial_traces.size(); ++n)
      ss << n << ',' << r.partial_traces[n].real() << ',' << r.partial_traces[n].imag() << '\n';
    if (!o.csv_path.empty()) write_csv_file(o.csv_path, ss.str());
    if (o.format == "csv") {
      emit(o, out, ss.str());
      return exit_ok;
    }
  }
  emit_json(o, out, j);
  return exit_ok;
}

int cmd_verify(const Options& o, std::ostream& out) {
  check_d(o);
  const double nu = resolve_nu(o);
  const MultiIndex alpha(parse_alpha(o.alpha, o.d));
  require(o.degree >= alpha.degree(), "degree", "must be >= |alpha|");
  const double tol = o.tolerance > 0 ? o.tolerance : 1e-12;
  const auto r = verify_intertwiner(alpha, nu, o.degree);
  Json j;
  j["deviation"] = r.deviation;
  j["tolerance"] = tol;
  j["passed"] = r.deviation <= tol;
  j["exact_window"] = r.window;
  Json cfg = base_config("verify-intertwiner", o);
  cfg["nu"] = nu;
  cfg["alpha"] = alpha.to_vector();
  cfg["degree"] = o.degree;
  j["config"] = cfg;
  emit_json(o, out, j);
  return r.deviation <= tol ? exit_ok : exit_failure;
}

int cmd_bracket(const Options& o, std::ostream& out) {
  check_d(o);
  const auto f = parse_symbol(o.f, o.d);
  const auto g = parse_symbol(o.g, o.d);
  const auto b = boundary_poisson(f, g);
  const auto reduced = reduce_on_sphere(b);
  const auto I = sphere_integral(reduced);
  Json j;
  j["bracket"] = b.to_string();
  j["reduced"] = reduced.to_string();
  j["integral"] = to_json(I);
  Json cfg = base_config("bracket", o);
  cfg["f"] = o.f;
  cfg["g"] = o.g;
  j["config"] = cfg;
  emit_json(o, out, j);
  return exit_ok;
}

int cmd_schatten(const Options& o, std::ostream& out) {
  check_d(o);
  const double nu = resolve_nu(o);
  const auto f = parse_symbol(o.f, o.d);
  require(f.is_holomorphic(), "f", "must be holomorphic");
  require(!o.degrees.empty(), "degree", "give at least one window");
  require(!o.ps.empty(), "p", "give at least one exponent");
  require(o.samples >= 1, "samples", "must be >= 1");
  const auto rows = schatten_profile(f, nu, o.degrees, o.ps, o.seed, o.samples);
  if (o.format == "json") {
    Json j;
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    j["rows"] = arr;
    Json cfg = base_config("schatten-profile", o);
    cfg["nu"] = nu;
    cfg["f"] = o.f;
    cfg["degrees"] = o.degrees;
    cfg["p"] = o.ps;
    cfg["samples"] = o.samples;
    j["config"] = cfg;
    emit_json(o, out, j);
    return exit_ok;
  }
  std::ostringstream ss;
  char buf[256];
  if (o.format == "csv") {
    ss << "p,window,partial,integral,provenance,ratio\n";
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "%.17g,%d,%.17g,%.17g,%s,%.17g\n", r.p, r.window, r.partial,
                    r.integral.approx.real(), r.integral.provenance == Provenance::closed_form ? "closed-form" : "monte-carlo",
                    r.ratio);
      ss << buf;
    }
  } else {
    std::snprintf(buf, sizeof buf, "%8s %8s %22s %22s %12s %14s\n", "p", "window", "partial", "integral", "source", "ratio");
    ss << buf;
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "%8.4g %8d %22.15g %22.15g %12s %14.8g\n", r.p, r.window, r.partial,
                    r.integral.approx.real(), r.integral.provenance == Provenance::closed_form ? "exact" : "monte-carlo",
                    r.ratio);
      ss << buf;
    }
  }
  emit(o, out, ss.str());
  return exit_ok;
}

int cmd_spectrum(const Options& o, std::ostream& out) {
  check_d(o);
  const double nu = resolve_nu(o);
  require(o.degree >= 0, "degree", "must be >= 0");
  require(o.pairs.empty() != o.f.empty(), "pairs", "give exactly one of --pairs or --f");
  std::optional<BlockOperator> op;
  std::string source;
  if (!o.pairs.empty()) {
    op = commutator_product(parse_pairs(o.pairs, o.d), nu, o.degree);
    source = "commutator product";
  } else {
    const auto f = parse_symbol(o.f, o.d);
    require(f.is_holomorphic(), "f", "must be holomorphic");
    const int power = o.power > 0 ? o.power : 1;
    std::vector<SymbolPair> pairs(static_cast<std::size_t>(power), {f.conj(), f});
    op = commutator_product(pairs, nu, o.degree);
    source = "hankel gram power";
  }
  const auto spec = hermitian_eigen(*op, 0, o.degree);
  std::ostringstream csv;
  if (!o.csv_path.empty() || o.format == "csv") write_csv(csv, spec);
  if (!o.csv_path.empty()) write_csv_file(o.csv_path, csv.str());
  if (o.format == "csv") {
    emit(o, out, csv.str());
    return exit_ok;
  }
  Json j = to_json(spec);
  j["source"] = source;
  j["exact_window"] = op->exact_degree();
  j["truncation"] = op->max_degree();
  Json cfg = base_config("spectrum", o);
  cfg["nu"] = nu;
  cfg["pairs"] = o.pairs;
  cfg["f"] = o.f;
  cfg["power"] = o.power > 0 ? o.power : 1;
  cfg["degree"] = o.degree;
  j["config"] = cfg;
  emit_json(o, out, j);
  return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Dixmier-trace laboratory for Toeplitz and Hankel operators on the unit ball", "balltrace"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  auto common = [&](CLI::App* sc) {
    sc->add_option("--d", o.d, "complex dimension")->required();
    sc->add_option_function<double>("--nu", [&](const double& v) { o.nu = v; o.nu_given = true; },
                                    "weight parameter nu >= d (default: d, the Hardy space)");
    sc->add_option("--out", o.out_path, "write the report to this file instead of stdout");
    sc->add_option("--seed", o.seed, "random seed for Monte Carlo oracles");
    sc->add_option("--threads", o.threads, "worker threads (default: BALLTRACE_THREADS or all cores)");
  };
  auto fitting = [&](CLI::App* sc) {
    sc->add_option("--shells", o.shells, "number of shells in the spectrum")->required();
    sc->add_option("--path", o.path, "auto | closed-form | dense")->check(CLI::IsMember({"auto", "closed-form", "dense"}));
    sc->add_option("--tolerance", o.tolerance, "relative stability tolerance of the fit (default 0.01)");
    sc->add_option("--csv", o.csv_path, "also write the partial-sum curve as CSV");
  };

  auto* dix = app.add_subcommand("dixmier", "Dixmier trace of a product of commutators vs the boundary integral");
  common(dix);
  fitting(dix);
  dix->add_option("--pairs", o.pairs, "symbol pairs: \"f1,g1;f2,g2;...\"")->required();
  dix->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  auto* han = app.add_subcommand("hankel", "Dixmier trace of |H_conj(f)|^(2d) vs the boundary integral");
  common(han);
  fitting(han);
  han->add_option("--f", o.f, "holomorphic symbol")->required();
  han->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));

  auto* hh = app.add_subcommand("helton-howe", "partial traces of the antisymmetrized product vs the wedge integral");
  common(hh);
  hh->add_option("--symbols", o.symbols, "2d comma-separated symbols")->required();
  hh->add_option("--degree", o.degree, "exact window for the partial traces")->required();
  hh->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  hh->add_option("--csv", o.csv_path, "also write the partial traces as CSV");

  auto* cal = app.add_subcommand("calibrate-model", "Dixmier trace of the model operator (c - rho(Delta))^(-d)");
  common(cal);
  cal->add_option("--c", o.c, "shift c >= 0");
  cal->add_option("--shells", o.shells, "number of shells M")->required();
  cal->add_option("--power", o.power, "exponent (default d)");
  cal->add_option("--tolerance", o.tolerance, "relative stability tolerance of the fit (default 0.01)");
  cal->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));
  cal->add_option("--csv", o.csv_path, "also write the partial-sum curve as CSV");

  auto* ver = app.add_subcommand("verify-intertwiner", "Toeplitz operator of z^alpha vs the Fock-side formula");
  common(ver);
  ver->add_option("--alpha", o.alpha, "multi-index, e.g. 1,1")->required();
  ver->add_option("--degree", o.degree, "truncation degree")->required();
  ver->add_option("--tolerance", o.tolerance, "allowed deviation (default 1e-12)");
  ver->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));

  auto* br = app.add_subcommand("bracket", "boundary Poisson bracket {f,g}_b and its sphere integral");
  common(br);
  br->add_option("--f", o.f, "first symbol")->required();
  br->add_option("--g", o.g, "second symbol")->required();
  br->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));

  auto* sch = app.add_subcommand("schatten-profile", "partial Schatten sums of H_conj(f) vs the ball integral");
  common(sch);
  sch->add_option("--f", o.f, "holomorphic symbol")->required();
  sch->add_option("--degree", o.degrees, "comma-separated windows")->required()->delimiter(',');
  sch->add_option("--p", o.ps, "comma-separated exponents")->required()->delimiter(',');
  sch->add_option("--samples", o.samples, "Monte Carlo samples for non-even p");
  o.format = "table";
  sch->add_option("--format", o.format, "table | csv | json")->check(CLI::IsMember({"table", "csv", "json"}));

  auto* spc = app.add_subcommand("spectrum", "raw shell spectra of a commutator product or Hankel power");
  common(spc);
  spc->add_option("--pairs", o.pairs, "symbol pairs: \"f1,g1;f2,g2\"");
  spc->add_option("--f", o.f, "holomorphic symbol; the operator is [T_conj(f), T_f]^power");
  spc->add_option("--power", o.power, "power for --f (default 1)");
  spc->add_option("--degree", o.degree, "exact window")->required();
  spc->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  spc->add_option("--csv", o.csv_path, "also write the spectrum as CSV");

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_validation;
  }
  // the table default only applies to schatten-profile
  if (!sch->parsed() && o.format == "table") o.format = "json";

  if (o.threads < 0) {
    err << "error: threads: must be >= 0\n";
    return exit_validation;
  }
  int threads = o.threads;
  if (threads == 0)
    if (const char* env = std::getenv("BALLTRACE_THREADS")) threads = std::atoi(env);
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (dix->parsed()) return cmd_dixmier(o, out);
    if (han->parsed()) return cmd_hankel(o, out);
    if (hh->parsed()) return cmd_helton_howe(o, out);
    if (cal->parsed()) return cmd_calibrate(o, out);
    if (ver->parsed()) return cmd_verify(o, out);
    if (br->parsed()) return cmd_bracket(o, out);
    if (sch->parsed()) return cmd_schatten(o, out);
    if (spc->parsed()) return cmd_spectrum(o, out);
  } catch (const domain_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_failure;
  }
  return exit_failure;
}

}  // namespace balltrace
