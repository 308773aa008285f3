#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "balltrace/core.hpp"
#include "balltrace/exact.hpp"
#include "balltrace/symbol.hpp"

namespace balltrace {

enum class Provenance { closed_form, monte_carlo };

struct IntegralValue {
  std::optional<ExactComplex> exact;
  std::complex<double> approx{};
  Provenance provenance = Provenance::closed_form;

  static IntegralValue from_exact(ExactComplex z) {
    IntegralValue v;
    v.approx = z.to_complex();
    v.exact = std::move(z);
    return v;
  }
  static IntegralValue from_approx(std::complex<double> z, Provenance p = Provenance::closed_form) {
    IntegralValue v;
    v.approx = z;
    v.provenance = p;
    return v;
  }
};

/// Integral of z^a conj(z)^b over the unit sphere of C^d against the
/// normalized surface measure: 0 unless a == b, else (d-1)! a! / (d-1+|a|)!.
IntegralValue sphere_monomial(const MultiIndex& a, const MultiIndex& b);

/// Linear extension of sphere_monomial. Exact when f has exact coefficients;
/// inexact coefficients are summed with compensation.
IntegralValue sphere_integral(const PolySymbol& f);

/// Integral over the ball against the probability measure d mu_nu
/// (nu > d): 0 unless a == b, else a!/(nu)_{|a|}.
IntegralValue ball_monomial(const MultiIndex& a, const MultiIndex& b, double nu);
IntegralValue ball_integral(const PolySymbol& f, double nu);

/// Integral of df_1 ^ ... ^ df_{2d} over the ball.
struct WedgeIntegral {
  /// det of the coframe coefficient matrix (rows df_i in the basis
  /// dz_1..dz_d, dzbar_1..dzbar_d).
  PolySymbol determinant{1};
  /// Integral of the determinant against normalized Lebesgue measure
  /// (= d mu_{d+1}).
  IntegralValue raw;
  /// raw * vol(B^d), vol(B^d) = pi^d / d!.
  std::complex<double> scaled;
  /// dz_1^..^dz_d^dzbar_1^..^dzbar_d = form_constant * (Lebesgue volume form);
  /// form_constant = (-1)^{d(d-1)/2} (-2i)^d.
  std::complex<double> form_constant;
  /// scaled * form_constant: the integral of the 2d-form itself.
  std::complex<double> value;
};

WedgeIntegral wedge_integral(const std::vector<PolySymbol>& fs);

/// pi^d / d!.
double ball_volume(int d);

}  // namespace balltrace
