#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "balltrace/dixmier.hpp"
#include "balltrace/integrate.hpp"
#include "balltrace/symbol.hpp"

namespace balltrace {

enum class SpectralPath { automatic, closed_form, dense };

SpectralPath parse_path(const std::string& s);
std::string to_string(SpectralPath p);

using SymbolPair = std::pair<PolySymbol, PolySymbol>;

/// scalar * [T_conj(z^a), T_{z^a}]
struct CommutatorFactor {
  MultiIndex a;
  Complex scalar;
};

/// Recognizes pairs (c1 conj(z^a), c2 z^a) and (c1 z^a, c2 conj(z^a)),
/// whose commutators are diagonal with known entries. Empty if any pair is
/// of another shape.
std::optional<std::vector<CommutatorFactor>> closed_form_factors(const std::vector<SymbolPair>& pairs);

/// Dixmier estimate of prod_j [T_{f_j}, T_{g_j}] on H_nu.
struct SpectralRun {
  SpectralPath path = SpectralPath::dense;
  int shells = 0;      ///< last shell included in the spectrum
  int truncation = 0;  ///< matrix truncation degree (dense path)
  int exact_degree = 0;
  Complex scalar{1.0, 0.0};  ///< closed form: spectrum of the unit-scaled product times this
  Complex kappa{};
  DixmierFit fit;
  std::optional<DixmierFit> anti_hermitian;
  double eigen_residual = 0.0;
  bool stable() const { return fit.stable && (!anti_hermitian || anti_hermitian->stable); }
};

SpectralRun commutator_product_run(const std::vector<SymbolPair>& pairs, double nu, int shells, SpectralPath path,
                                   const FitOptions& opt = {});

/// The dense operator used by the dense path, exact on shells <= shells.
BlockOperator commutator_product(const std::vector<SymbolPair>& pairs, double nu, int shells);

struct TraceFormulaReport {
  int d = 0;
  double nu = 0.0;
  std::vector<SymbolPair> pairs;
  SpectralRun run;
  PolySymbol integrand{1};  ///< prod_j {f_j, g_j}_b reduced on the sphere
  IntegralValue integral;
  std::optional<Complex> ratio;            ///< kappa / I
  std::optional<Complex> factorial_ratio;  ///< d! kappa / I
  double model_constant = 1.0;             ///< 1/d!, the ratio the model calibration predicts
  double literal_ratio = 1.0;              ///< the ratio as literally asserted
};

TraceFormulaReport trace_formula_experiment(const std::vector<SymbolPair>& pairs, double nu, int shells,
                                     SpectralPath path = SpectralPath::automatic, const FitOptions& opt = {});

struct HankelReport {
  int d = 0;
  double nu = 0.0;
  PolySymbol f{1};
  SpectralRun run;  ///< spectrum of [T_conj(f), T_f]^d
  PolySymbol density{1};  ///< |grad f|^2 - |Rf|^2
  IntegralValue integral;          ///< int_S density^d
  IntegralValue bracket_integral;  ///< int_S {conj f, f}_b^d = (-1)^d integral
  std::optional<double> ratio;
  std::optional<double> factorial_ratio;
  double model_constant = 1.0;
  double literal_ratio = 1.0;
};

HankelReport hankel_experiment(const PolySymbol& f, double nu, int shells,
                               SpectralPath path = SpectralPath::automatic, const FitOptions& opt = {});

struct CalibrationReport {
  double c = 0.0;
  int d = 0, shells = 0, power = 0;
  DixmierFit fit;
  double expected = 0.0;       ///< 1/(d! pi^d) when power == d, else 0
  double literal_value = 0.0;  ///< 1/pi^d
  /// S(N)/(kappa log N) over N in [1e4, 1e6]
  QuotientRange quotient;
};

CalibrationReport calibrate_model(double c, int d, int shells, int power, const FitOptions& opt = {});

struct HeltonHoweReport {
  int d = 0;
  double nu = 0.0;
  std::vector<PolySymbol> symbols;
  int window = 0, truncation = 0, exact_degree = 0;
  std::vector<Complex> partial_traces;  ///< windows 0..window
  Complex limit{};  ///< intercept of t(N) = t_inf + b/(N+1) over N in [window/2, window]
  Complex rate{};
  WedgeIntegral wedge;
  Complex constant{};  ///< limit / wedge value
};

HeltonHoweReport helton_howe_experiment(const std::vector<PolySymbol>& symbols, double nu, int window);

struct SchattenRow {
  double p = 0.0;
  int window = 0;
  double partial = 0.0;  ///< sum of mu^p over singular values of H_conj(f) on shells <= window
  IntegralValue integral;  ///< int_B (1-|z|^2)^p (|grad f|^2-|Rf|^2)^(p/2) dm
  double ratio = 0.0;
};

std::vector<SchattenRow> schatten_profile(const PolySymbol& f, double nu, const std::vector<int>& windows,
                                          const std::vector<double>& ps, std::uint64_t seed,
                                          std::uint64_t samples = 200000);

/// int_B (1-|z|^2)^p g^(p/2) dm for a nonnegative real polynomial g:
/// exact when p/2 is an integer, seeded Monte Carlo otherwise.
IntegralValue weighted_ball_integral(const PolySymbol& g, double p, std::uint64_t seed, std::uint64_t samples);

}  // namespace balltrace
