#include "balltrace/experiments.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace balltrace {

SpectralPath parse_path(const std::string& s) {
  if (s == "auto") return SpectralPath::automatic;
  if (s == "closed-form") return SpectralPath::closed_form;
  if (s == "dense") return SpectralPath::dense;
  throw domain_error("path", "expected auto, closed-form or dense, got '" + s + "'");
}

std::string to_string(SpectralPath p) {
  switch (p) {
    case SpectralPath::automatic: return "auto";
    case SpectralPath::closed_form: return "closed-form";
    case SpectralPath::dense: return "dense";
  }
  return "?";
}

std::optional<std::vector<CommutatorFactor>> closed_form_factors(const std::vector<SymbolPair>& pairs) {
  std::vector<CommutatorFactor> out;
  for (const auto& [f, g] : pairs) {
    if (f.size() != 1 || g.size() != 1) return std::nullopt;
    const auto& [kf, cf] = *f.terms().begin();
    const auto& [kg, cg] = *g.terms().begin();
    const MultiIndex zero(f.dim());
    const Complex c = cf.value() * cg.value();
    if (kf.first == zero && kg.second == zero && kf.second == kg.first && kf.second.degree() > 0)
      out.push_back({kf.second, c});
    else if (kf.second == zero && kg.first == zero && kf.first == kg.second && kf.first.degree() > 0)
      out.push_back({kf.first, -c});
    else
      return std::nullopt;
  }
  return out;
}

namespace {

void check_pairs(const std::vector<SymbolPair>& pairs, double nu) {
  if (pairs.empty()) throw domain_error("pairs", "at least one pair is needed");
  const int d = pairs.front().first.dim();
  for (const auto& [f, g] : pairs)
    if (f.dim() != d || g.dim() != d) throw domain_error("pairs", "symbols live in different dimensions");
  if (!(nu >= d)) throw domain_error("nu", "must be >= d");
}

}  // namespace

BlockOperator commutator_product(const std::vector<SymbolPair>& pairs, double nu, int shells) {
  check_pairs(pairs, nu);
  int margin = 0;
  for (const auto& [f, g] : pairs) margin += f.total_degree() + g.total_degree();
  margin = std::max(margin, 1);
  for (int truncation = shells + margin;; truncation += margin) {
    std::optional<BlockOperator> prod;
    for (const auto& [f, g] : pairs) {
      BlockOperator c = commutator(toeplitz(f, nu, truncation), toeplitz(g, nu, truncation));
      prod = prod ? compose(*prod, c) : std::move(c);
    }
    if (prod->exact_degree() >= shells) return std::move(*prod);
    if (truncation > shells + 8 * margin)
      throw std::logic_error("could not reach the requested exact window");
  }
}

SpectralRun commutator_product_run(const std::vector<SymbolPair>& pairs, double nu, int shells, SpectralPath path,
                                   const FitOptions& opt) {
  check_pairs(pairs, nu);
  if (shells < 1) throw domain_error("shells", "must be >= 1");
  const int d = pairs.front().first.dim();
  SpectralRun run;
  run.shells = shells;
  auto factors = path == SpectralPath::dense ? std::nullopt : closed_form_factors(pairs);
  if (path == SpectralPath::closed_form && !factors)
    throw domain_error("path", "closed form needs every pair to be a monomial and its conjugate");

  if (factors) {
    run.path = SpectralPath::closed_form;
    std::vector<MultiIndex> as;
    for (const auto& f : *factors) {
      as.push_back(f.a);
      run.scalar *= f.scalar;
    }
    const ClosedFormSpectrum src(d, nu, as, 1.0, 0, shells);
    run.fit = dixmier_estimate(src, opt);
    run.kappa = run.scalar * run.fit.kappa;
    run.exact_degree = shells;
    return run;
  }

  run.path = SpectralPath::dense;
  const BlockOperator prod = commutator_product(pairs, nu, shells);
  run.truncation = prod.max_degree();
  run.exact_degree = prod.exact_degree();
  OperatorFit of = dixmier_of_operator(prod, 0, shells, opt);
  run.kappa = of.kappa;
  run.fit = std::move(of.hermitian);
  run.anti_hermitian = std::move(of.anti_hermitian);
  run.eigen_residual = of.eigen_residual;
  return run;
}

TraceFormulaReport trace_formula_experiment(const std::vector<SymbolPair>& pairs, double nu, int shells, SpectralPath path,
                                     const FitOptions& opt) {
  check_pairs(pairs, nu);
  const int d = pairs.front().first.dim();
  if (static_cast<int>(pairs.size()) != d)
    throw domain_error("pairs", "expected " + std::to_string(d) + " pairs, got " + std::to_string(pairs.size()));
  TraceFormulaReport r;
  r.d = d;
  r.nu = nu;
  r.pairs = pairs;
  r.run = commutator_product_run(pairs, nu, shells, path, opt);
  PolySymbol prod = PolySymbol::constant(d, 1);
  for (const auto& [f, g] : pairs) prod = prod * boundary_poisson(f, g);
  r.integrand = reduce_on_sphere(prod);
  r.integral = sphere_integral(r.integrand);
  r.model_constant = 1.0 / std::tgamma(d + 1.0);
  const bool zero = r.integral.exact ? r.integral.exact->is_zero() : std::abs(r.integral.approx) < 1e-300;
  if (!zero) {
    r.ratio = r.run.kappa / r.integral.approx;
    r.factorial_ratio = *r.ratio * std::tgamma(d + 1.0);
  }
  return r;
}

HankelReport hankel_experiment(const PolySymbol& f, double nu, int shells, SpectralPath path, const FitOptions& opt) {
  if (!f.is_holomorphic()) throw domain_error("f", "Hankel experiment needs a holomorphic symbol");
  const int d = f.dim();
  HankelReport r;
  r.d = d;
  r.nu = nu;
  r.f = f;
  const std::vector<SymbolPair> pairs(static_cast<std::size_t>(d), {f.conj(), f});
  r.run = commutator_product_run(pairs, nu, shells, path, opt);
  r.density = hankel_density(f);
  r.integral = sphere_integral(reduce_on_sphere(r.density.pow(d)));
  r.bracket_integral = sphere_integral(reduce_on_sphere(boundary_poisson(f.conj(), f).pow(d)));
  r.model_constant = 1.0 / std::tgamma(d + 1.0);
  const double I = r.integral.approx.real();
  if (I != 0.0) {
    r.ratio = r.run.kappa.real() / I;
    r.factorial_ratio = *r.ratio * std::tgamma(d + 1.0);
  }
  return r;
}

CalibrationReport calibrate_model(double c, int d, int shells, int power, const FitOptions& opt) {
  CalibrationReport r;
  r.c = c;
  r.d = d;
  r.shells = shells;
  r.power = power;
  r.fit = dixmier_estimate(ModelSpectrum(c, d, shells, power), opt);
  r.literal_value = std::pow(std::numbers::pi, -d);
  r.expected = power == d ? r.literal_value / std::tgamma(d + 1.0) : 0.0;
  if (r.fit.kappa != 0.0) r.quotient = log_quotient_range(r.fit.curves.positive, r.fit.kappa, 10000, 1000000);
  return r;
}

HeltonHoweReport helton_howe_experiment(const std::vector<PolySymbol>& symbols, double nu, int window) {
  if (symbols.empty()) throw domain_error("symbols", "no symbols given");
  const int d = symbols.front().dim();
  if (static_cast<int>(symbols.size()) != 2 * d)
    throw domain_error("symbols", "expected " + std::to_string(2 * d) + " symbols for d = " + std::to_string(d));
  if (!(nu >= d)) throw domain_error("nu", "must be >= d");
  if (window < 1) throw domain_error("degree", "must be >= 1");
  HeltonHoweReport r;
  r.d = d;
  r.nu = nu;
  r.symbols = symbols;
  r.window = window;
  int margin = 0;
  for (const auto& s : symbols) margin += s.total_degree();
  margin = std::max(margin, 1);
  std::optional<BlockOperator> a;
  for (int truncation = window + margin;; truncation += margin) {
    std::vector<BlockOperator> ops;
    for (const auto& s : symbols) ops.push_back(toeplitz(s, nu, truncation));
    a = antisymmetrize(ops);
    if (a->exact_degree() >= window) break;
    if (truncation > window + 8 * margin) throw std::logic_error("could not reach the requested exact window");
  }
  r.truncation = a->max_degree();
  r.exact_degree = a->exact_degree();
  r.partial_traces = partial_traces(*a, window);

  // t(N) = t_inf + b / (N + 1) on the upper half of the window
  const int lo = window / 2;
  double sx = 0, sxx = 0, n = 0;
  Complex sy{}, sxy{};
  for (int N = lo; N <= window; ++N) {
    const double x = 1.0 / (N + 1.0);
    const Complex y = r.partial_traces[static_cast<std::size_t>(N)];
    sx += x;
    sxx += x * x;
    sy += y;
    sxy += x * y;
    n += 1;
  }
  const double den = n * sxx - sx * sx;
  if (den > 0) {
    r.rate = (n * sxy - sx * sy) / den;
    r.limit = (sy - r.rate * sx) / n;
  } else {
    r.limit = r.partial_traces.back();
  }
  r.wedge = wedge_integral(symbols);
  if (std::abs(r.wedge.value) > 0) r.constant = r.limit / r.wedge.value;
  return r;
}

IntegralValue weighted_ball_integral(const PolySymbol& g, double p, std::uint64_t seed, std::uint64_t samples) {
  if (!(p > 0.0)) throw domain_error("p", "must be > 0");
  const int d = g.dim();
  const double half = p / 2.0;
  if (half == std::floor(half) && half <= 64) {
    // (1-|z|^2)^p dm = [pi^d Gamma(p+1)/Gamma(p+d+1)] d mu_{p+d+1}
    const double nu = p + d + 1.0;
    const double c = std::pow(std::numbers::pi, d) * std::exp(std::lgamma(p + 1.0) - std::lgamma(nu));
    return IntegralValue::from_approx(ball_integral(g.pow(static_cast<int>(half)), nu).approx * c);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  detail::Neumaier acc;
  std::vector<std::complex<double>> z(static_cast<std::size_t>(d));
  for (std::uint64_t s = 0; s < samples; ++s) {
    double norm = 0;
    for (auto& zj : z) {
      zj = {normal(rng), normal(rng)};
      norm += std::norm(zj);
    }
    const double radius = std::pow(unit(rng), 1.0 / (2.0 * d));
    const double scale = radius / std::sqrt(norm);
    for (auto& zj : z) zj *= scale;
    const double val = std::max(g.evaluate(z).real(), 0.0);
    acc.add(std::pow(1.0 - radius * radius, p) * std::pow(val, half));
  }
  const double volume = ball_volume(d);
  return IntegralValue::from_approx(acc.value() / static_cast<double>(samples) * volume, Provenance::monte_carlo);
}

std::vector<SchattenRow> schatten_profile(const PolySymbol& f, double nu, const std::vector<int>& windows,
                                          const std::vector<double>& ps, std::uint64_t seed, std::uint64_t samples) {
  if (!f.is_holomorphic()) throw domain_error("f", "needs a holomorphic symbol");
  for (int w : windows)
    if (w < 0) throw domain_error("degree", "windows must be >= 0");
  for (double p : ps)
    if (!(p > 0.0)) throw domain_error("p", "must be > 0");
  const PolySymbol density = hankel_density(f);
  std::vector<IntegralValue> integrals;
  for (double p : ps) integrals.push_back(weighted_ball_integral(density, p, seed, samples));
  std::vector<SchattenRow> rows;
  for (int w : windows) {
    const BlockOperator g = hankel_gram(f, nu, w + std::max(1, f.total_degree()));
    for (std::size_t i = 0; i < ps.size(); ++i) {
      SchattenRow row;
      row.p = ps[i];
      row.window = w;
      // g = |H|^2 is positive, so its singular values are mu(H)^2
      row.partial = schatten_partial(g, ps[i] / 2.0, w);
      row.integral = integrals[i];
      row.ratio = row.integral.approx.real() != 0.0 ? row.partial / row.integral.approx.real() : 0.0;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace balltrace
