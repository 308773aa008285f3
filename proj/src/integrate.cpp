#include "balltrace/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace balltrace {

namespace {

Rational factorial(int n) {
  boost::multiprecision::cpp_int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return Rational(r);
}

Rational multi_factorial(const MultiIndex& a) {
  Rational r = 1;
  for (int j = 0; j < a.dim(); ++j) r *= factorial(a[j]);
  return r;
}

// Neumaier-compensated complex accumulator.
struct CompensatedSum {
  std::complex<double> sum{}, comp{};
  void add(std::complex<double> x) {
    auto step = [](double& s, double& c, double v) {
      const double t = s + v;
      c += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
      s = t;
    };
    double sr = sum.real(), si = sum.imag(), cr = comp.real(), ci = comp.imag();
    step(sr, cr, x.real());
    step(si, ci, x.imag());
    sum = {sr, si};
    comp = {cr, ci};
  }
  std::complex<double> value() const { return sum + comp; }
};

template <class MonomialFn>
IntegralValue integrate_linear(const PolySymbol& f, MonomialFn&& monomial) {
  if (f.is_exact()) {
    ExactComplex acc;
    for (const auto& [key, c] : f.terms()) {
      if (key.first != key.second) continue;
      acc = acc + c.exact() * ExactComplex(monomial(key.first));
    }
    return IntegralValue::from_exact(acc);
  }
  CompensatedSum acc;
  for (const auto& [key, c] : f.terms()) {
    if (key.first != key.second) continue;
    acc.add(c.value() * static_cast<double>(monomial(key.first)));
  }
  return IntegralValue::from_approx(acc.value());
}

Rational sphere_weight(const MultiIndex& a) {
  const int d = a.dim();
  return factorial(d - 1) * multi_factorial(a) / factorial(d - 1 + a.degree());
}

Rational ball_weight(const MultiIndex& a, const Rational& nu) {
  Rational poch = 1;
  for (int k = 0; k < a.degree(); ++k) poch *= nu + k;
  return multi_factorial(a) / poch;
}


}  // namespace

IntegralValue sphere_monomial(const MultiIndex& a, const MultiIndex& b) {
  if (a.dim() != b.dim()) throw domain_error("d", "exponent dimension mismatch");
  if (a != b) return IntegralValue::from_exact(ExactComplex(0));
  return IntegralValue::from_exact(ExactComplex(sphere_weight(a)));
}

IntegralValue sphere_integral(const PolySymbol& f) {
  return integrate_linear(f, [](const MultiIndex& a) { return sphere_weight(a); });
}

IntegralValue ball_monomial(const MultiIndex& a, const MultiIndex& b, double nu) {
  if (a.dim() != b.dim()) throw domain_error("d", "exponent dimension mismatch");
  if (!(nu > a.dim())) throw domain_error("nu", "ball integrals need nu > d");
  if (a != b) return IntegralValue::from_exact(ExactComplex(0));
  return IntegralValue::from_exact(ExactComplex(ball_weight(a, rational_from_double(nu))));
}

IntegralValue ball_integral(const PolySymbol& f, double nu) {
  if (!(nu > f.dim())) throw domain_error("nu", "ball integrals need nu > d");
  const Rational q = rational_from_double(nu);
  return integrate_linear(f, [&](const MultiIndex& a) { return ball_weight(a, q); });
}

double ball_volume(int d) {
  return std::pow(std::numbers::pi, d) / std::tgamma(d + 1.0);
}

WedgeIntegral wedge_integral(const std::vector<PolySymbol>& fs) {
  if (fs.empty() || fs.size() % 2 != 0) throw domain_error("symbols", "wedge integral needs 2d symbols");
  const int d = fs.front().dim();
  if (static_cast<int>(fs.size()) != 2 * d)
    throw domain_error("symbols", "expected exactly " + std::to_string(2 * d) + " symbols");
  const int n = 2 * d;

  // rows: df_i; columns: dz_1..dz_d, dzbar_1..dzbar_d
  std::vector<std::vector<PolySymbol>> rows;
  for (const auto& f : fs) {
    if (f.dim() != d) throw domain_error("d", "symbols live in different dimensions");
    std::vector<PolySymbol> row;
    for (int j = 0; j < d; ++j) row.push_back(d_holo(j, f));
    for (int j = 0; j < d; ++j) row.push_back(d_anti(j, f));
    rows.push_back(std::move(row));
  }

  // Leibniz expansion over permutations; n = 2d <= 16 in principle, but the
  // artifact only ever asks for d <= 3.
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  PolySymbol det(d);
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)];
    PolySymbol term = PolySymbol::constant(d, inversions % 2 ? -1 : 1);
    for (int i = 0; i < n && !term.is_zero(); ++i)
      term = term * rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    det = det + term;
  } while (std::next_permutation(perm.begin(), perm.end()));

  WedgeIntegral w{det, ball_integral(det, d + 1.0), {}, {}, {}};
  w.scaled = w.raw.approx * ball_volume(d);
  const double sign = (d * (d - 1) / 2) % 2 ? -1.0 : 1.0;
  w.form_constant = sign * std::pow(std::complex<double>(0.0, -2.0), d);
  w.value = w.scaled * w.form_constant;
  return w;
}

}  // namespace balltrace
