#include "balltrace/dixmier.hpp"

#include <numbers>
#include <stdexcept>

namespace balltrace {

ModelSpectrum::ModelSpectrum(double c, int dim, int shells, int power) : c_(c), dim_(dim), shells_(shells), power_(power) {
  if (!(c >= 0.0)) throw domain_error("c", "must be >= 0");
  if (dim < 1 || dim > max_dimension) throw domain_error("d", "must be in 1..8");
  if (shells < 1) throw domain_error("shells", "must be >= 1");
  if (power < 1) throw domain_error("power", "must be >= 1");
}

double ModelSpectrum::value(int m) const {
  return std::pow(c_ + std::numbers::pi * (m + 0.5 * dim_), -static_cast<double>(power_));
}

ShellSpectrum model_eigenvalues(double c, int dim, int shells, int power) {
  const ModelSpectrum src(c, dim, shells, power);
  ShellSpectrum out(dim, 0);
  for (int m = 0; m <= shells; ++m) out.push_shell({{src.value(m), shell_dim(dim, m)}});
  return out;
}

ClosedFormSpectrum::ClosedFormSpectrum(int dim, double nu, std::vector<MultiIndex> factors, double scale, int first,
                                       int last)
    : dim_(dim), nu_(nu), factors_(std::move(factors)), scale_(scale), first_(first), last_(last) {
  if (dim < 1 || dim > max_dimension) throw domain_error("d", "must be in 1..8");
  if (!(nu >= dim)) throw domain_error("nu", "must be >= d");
  if (factors_.empty() || factors_.size() > 8) throw domain_error("pairs", "need between 1 and 8 factors");
  for (const auto& a : factors_)
    if (a.dim() != dim) throw domain_error("pairs", "factor exponent has the wrong dimension");
  if (first < 0 || last < first) throw domain_error("shells", "empty or negative shell range");
  unit_factors_ = true;
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    const MultiIndex& a = factors_[f];
    if (a.degree() != 1) {
      unit_factors_ = false;
      break;
    }
    for (int i = 0; i < dim; ++i)
      if (a[i] == 1) axis_[f] = i;
  }
}

double ClosedFormSpectrum::value(const MultiIndex& beta) const {
  const int m = beta.degree();
  double v = scale_;
  for (const auto& a : factors_) {
    double raise = 1.0, lower = 0.0;
    for (int i = 0; i < dim_; ++i) raise *= pochhammer(beta[i] + 1.0, a[i]);
    raise /= pochhammer(nu_ + m, a.degree());
    if (auto below = beta.minus(a)) {
      lower = 1.0;
      for (int i = 0; i < dim_; ++i) lower *= pochhammer((*below)[i] + 1.0, a[i]);
      lower /= pochhammer(nu_ + m - a.degree(), a.degree());
    }
    v *= raise - lower;
  }
  return v;
}

namespace detail {

Curves curves_from_bins(const std::vector<BinTable>& chunks, std::int64_t base_key, std::uint64_t total,
                        double threshold) {
  Curves out;
  out.eigenvalue_count = total;
  out.completeness_threshold = threshold;
  for (int sign = 0; sign < 2; ++sign) {
    auto& pts = (sign == 0 ? out.positive : out.negative).points;
    std::uint64_t n = 0;
    Neumaier s;
    // Bin 0 straddles the threshold and is never complete.
    for (int k = bin_count - 1; k >= 1; --k) {
      const std::size_t slot = static_cast<std::size_t>(k) * 2 + static_cast<std::size_t>(sign);
      std::uint64_t cnt = 0;
      for (const auto& t : chunks) {
        cnt += t.count[slot];
        s.add(t.sum[slot].s);
        s.add(t.sum[slot].c);
      }
      if (cnt == 0) continue;
      n += cnt;
      pts.push_back({n, s.value(), bin_edge(base_key + k)});
    }
  }
  return out;
}

Curves curves_from_values(std::vector<double> values, std::uint64_t total, double threshold) {
  Curves out;
  out.eigenvalue_count = total;
  out.completeness_threshold = threshold;
  for (int sign = 0; sign < 2; ++sign) {
    std::vector<double> part;
    for (double v : values)
      if ((v > 0.0) == (sign == 0) && std::abs(v) > threshold) part.push_back(std::abs(v));
    std::sort(part.begin(), part.end(), std::greater<>());
    auto& pts = (sign == 0 ? out.positive : out.negative).points;
    Neumaier s;
    for (std::size_t i = 0; i < part.size(); ++i) {
      s.add(part[i]);
      if (i + 1 == part.size() || part[i + 1] != part[i]) pts.push_back({i + 1, s.value(), part[i]});
    }
  }
  return out;
}

}  // namespace detail

namespace {

struct LineFit {
  double slope = 0.0, intercept = 0.0, rms = 0.0;
  std::size_t n = 0;
};

LineFit least_squares(const std::vector<CurvePoint>& pts, double log_lo, double log_hi) {
  LineFit f;
  double sx = 0, sy = 0;
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : pts) {
    const double x = std::log(static_cast<double>(p.n));
    if (x < log_lo || x > log_hi) continue;
    xy.emplace_back(x, p.sum);
    sx += x;
    sy += p.sum;
  }
  f.n = xy.size();
  if (f.n < 2) return f;
  const double mx = sx / static_cast<double>(f.n), my = sy / static_cast<double>(f.n);
  double sxx = 0, sxy = 0;
  for (auto [x, y] : xy) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx <= 0.0) {
    f.n = 1;
    return f;
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (auto [x, y] : xy) {
    const double r = y - (f.slope * x + f.intercept);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / static_cast<double>(f.n));
  return f;
}

}  // namespace

PartFit fit_part(const PartialSumCurve& curve, const FitOptions& opt) {
  PartFit pf;
  for (const auto& p : curve.points)
    if (p.n >= 100) pf.macaev_bound = std::max(pf.macaev_bound, p.sum / std::log(static_cast<double>(p.n)));
  const std::uint64_t n_max = curve.points.empty() ? 0 : curve.points.back().n;
  if (n_max < 40) {
    pf.finite_rank = true;
    pf.n_hi = n_max;
    return pf;
  }
  const auto n_lo = std::max<std::uint64_t>(10, static_cast<std::uint64_t>(std::ceil(opt.window_fraction * n_max)));
  const double lo = std::log(static_cast<double>(n_lo)), hi = std::log(static_cast<double>(n_max));
  const LineFit all = least_squares(curve.points, lo, hi);
  pf.n_lo = n_lo;
  pf.n_hi = n_max;
  pf.points = all.n;
  if (all.n < 2) {
    pf.stability = std::numeric_limits<double>::infinity();
    return pf;
  }
  pf.kappa = all.slope;
  pf.intercept = all.intercept;
  pf.residual = all.rms;
  for (int i = 0; i < 3; ++i) {
    const LineFit sub = least_squares(curve.points, lo + (hi - lo) * i / 3.0, lo + (hi - lo) * (i + 1) / 3.0);
    pf.stability = sub.n < 2 ? std::numeric_limits<double>::infinity()
                             : std::max(pf.stability, std::abs(sub.slope - all.slope));
  }
  return pf;
}

DixmierFit fit_curves(Curves curves, const FitOptions& opt) {
  if (curves.eigenvalue_count < opt.min_eigenvalues)
    throw domain_error("shells", "spectrum has " + std::to_string(curves.eigenvalue_count) +
                                     " eigenvalues; at least " + std::to_string(opt.min_eigenvalues) + " needed");
  DixmierFit fit;
  fit.positive = fit_part(curves.positive, opt);
  fit.negative = fit_part(curves.negative, opt);
  fit.kappa = fit.positive.kappa - fit.negative.kappa;
  fit.intercept = fit.positive.intercept - fit.negative.intercept;
  const PartFit& dom = fit.negative.n_hi > fit.positive.n_hi ? fit.negative : fit.positive;
  fit.n_lo = dom.n_lo;
  fit.n_hi = dom.n_hi;
  fit.residual = std::hypot(fit.positive.residual, fit.negative.residual);
  fit.stability = fit.positive.stability + fit.negative.stability;
  fit.stable = fit.stability <= opt.tolerance * std::abs(fit.kappa) + 1e-6;
  fit.macaev_bound = std::max(fit.positive.macaev_bound, fit.negative.macaev_bound);
  fit.eigenvalue_count = curves.eigenvalue_count;
  fit.completeness_threshold = curves.completeness_threshold;
  fit.curves = std::move(curves);
  return fit;
}

QuotientRange log_quotient_range(const PartialSumCurve& curve, double kappa, std::uint64_t lo, std::uint64_t hi) {
  QuotientRange q{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), 0};
  for (const auto& p : curve.points) {
    if (p.n < lo || p.n > hi || p.n < 2) continue;
    const double v = p.sum / (kappa * std::log(static_cast<double>(p.n)));
    q.min = std::min(q.min, v);
    q.max = std::max(q.max, v);
    ++q.points;
  }
  if (q.points == 0) q.min = q.max = 0.0;
  return q;
}

OperatorFit dixmier_of_operator(const BlockOperator& a, int first, int last, const FitOptions& opt) {
  const BlockOperator adj = a.adjoint();
  OperatorFit out;
  const BlockOperator h = (a + adj).scaled(0.5);
  const ShellSpectrum hs = hermitian_eigen(h, first, last);
  out.hermitian = dixmier_estimate(hs, opt);
  out.eigen_residual = hs.residual;
  out.kappa = out.hermitian.kappa;
  const BlockOperator k = (a - adj).scaled(Complex(0.0, -0.5));
  if (max_abs_entry(k, last) > 1e-14 * max_abs_entry(a, last)) {
    const ShellSpectrum ks = hermitian_eigen(k, first, last);
    out.anti_hermitian = dixmier_estimate(ks, opt);
    out.eigen_residual = std::max(out.eigen_residual, ks.residual);
    out.kappa += Complex(0.0, out.anti_hermitian->kappa);
  }
  return out;
}

}  // namespace balltrace
