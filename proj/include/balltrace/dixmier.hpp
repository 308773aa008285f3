#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "balltrace/core.hpp"
#include "balltrace/operator.hpp"
#include "balltrace/spectral.hpp"

namespace balltrace {

/// Anything that can list the eigenvalues (value, multiplicity) of a
/// degree-diagonal operator shell by shell.
template <class S>
concept SpectrumSource = requires(const S& s, int m) {
  { s.first_shell() } -> std::convertible_to<int>;
  { s.last_shell() } -> std::convertible_to<int>;
  s.for_each_value(m, [](double, std::uint64_t) {});
};

/// (c - rho(Delta))^(-power) on the Fock space: value (c + pi(m + d/2))^(-power)
/// with multiplicity shell_dim(d, m), shells 0..M.
class ModelSpectrum {
public:
  ModelSpectrum(double c, int dim, int shells, int power);

  int first_shell() const noexcept { return 0; }
  int last_shell() const noexcept { return shells_; }
  double value(int m) const;

  template <class Fn>
  void for_each_value(int m, Fn&& fn) const {
    fn(value(m), shell_dim(dim_, m));
  }

private:
  double c_;
  int dim_, shells_, power_;
};

/// Eigenvalues of the diagonal operator scale * prod_j [T_conj(z^a_j), T_{z^a_j}]
/// on H_nu. Each commutator is diagonal in e_beta with value
///   (beta+1)_a / (nu+m)_|a| - [beta >= a] (beta-a+1)_a / (nu+m-|a|)_|a|.
class ClosedFormSpectrum {
public:
  ClosedFormSpectrum(int dim, double nu, std::vector<MultiIndex> factors, double scale, int first_shell,
                     int last_shell);

  int first_shell() const noexcept { return first_; }
  int last_shell() const noexcept { return last_; }
  int dim() const noexcept { return dim_; }
  double nu() const noexcept { return nu_; }
  const std::vector<MultiIndex>& factors() const noexcept { return factors_; }
  double scale() const noexcept { return scale_; }

  /// Single eigenvalue, for tests.
  double value(const MultiIndex& beta) const;

  template <class Fn>
  void for_each_value(int m, Fn&& fn) const {
    const std::size_t nf = factors_.size();
    std::array<double, 8> up{}, down{};
    for (std::size_t f = 0; f < nf; ++f) {
      const int k = factors_[f].degree();
      up[f] = 1.0 / pochhammer(nu_ + m, k);
      down[f] = m >= k ? 1.0 / pochhammer(nu_ + m - k, k) : 0.0;
    }
    if (unit_factors_) {
      if (dim_ == 2) {
        for (int k = 0; k <= m; ++k) {
          const std::array<int, 2> b{m - k, k};
          double v = scale_;
          for (std::size_t f = 0; f < nf; ++f) {
            const int bi = b[static_cast<std::size_t>(axis_[f])];
            v *= (bi + 1) * up[f] - bi * down[f];
          }
          fn(v, std::uint64_t{1});
        }
        return;
      }
    }
    std::array<int, max_dimension> e{};
    int used = 0;
    for (;;) {
      e[static_cast<std::size_t>(dim_ - 1)] = m - used;
      double v = scale_;
      for (std::size_t f = 0; f < nf; ++f) {
        const MultiIndex& a = factors_[f];
        double p1 = up[f], p2 = down[f];
        for (int i = 0; i < dim_; ++i) {
          const int ai = a[i];
          const int bi = e[static_cast<std::size_t>(i)];
          for (int t = 0; t < ai; ++t) {
            p1 *= bi + 1 + t;
            p2 *= bi - ai + 1 + t;
          }
          if (bi < ai) p2 = 0.0;
        }
        v *= p1 - p2;
      }
      fn(v, std::uint64_t{1});
      int j = dim_ - 2;
      while (j >= 0) {
        if (used < m) {
          ++e[static_cast<std::size_t>(j)];
          ++used;
          break;
        }
        used -= e[static_cast<std::size_t>(j)];
        e[static_cast<std::size_t>(j)] = 0;
        --j;
      }
      if (j < 0) return;
    }
  }

private:
  int dim_;
  double nu_;
  std::vector<MultiIndex> factors_;
  double scale_;
  int first_, last_;
  bool unit_factors_ = false;  // every factor is some e_i
  std::array<int, 8> axis_{};
};

/// Shells 0..M of (c - rho(Delta))^(-d), one entry per shell with multiplicity.
ShellSpectrum model_eigenvalues(double c, int dim, int shells, int power);
inline ShellSpectrum model_eigenvalues(double c, int dim, int shells) {
  return model_eigenvalues(c, dim, shells, dim);
}

struct CurvePoint {
  std::uint64_t n;  ///< number of eigenvalues of this sign with |value| >= edge
  double sum;       ///< sum of their absolute values
  double edge;
};

/// Partial sums of one sign part, sampled at binned threshold edges. Every
/// point is an exact partial sum S(n) of the values sorted by decreasing
/// magnitude, restricted to values above the completeness threshold.
struct PartialSumCurve {
  std::vector<CurvePoint> points;
};

struct Curves {
  PartialSumCurve positive, negative;
  std::uint64_t eigenvalue_count = 0;  ///< everything visited, thresholded or not
  /// Largest |value| on the outermost shell. Values at or below it may have
  /// partners in unvisited shells, so only larger ones enter the curves.
  double completeness_threshold = 0.0;
};

namespace detail {

inline constexpr int sub_bins_per_octave = 64;
inline constexpr int bin_shift = 52 - 6;
inline constexpr int bin_count = sub_bins_per_octave * 56;

inline std::int64_t bin_key(double v) { return static_cast<std::int64_t>(std::bit_cast<std::uint64_t>(v) >> bin_shift); }
inline double bin_edge(std::int64_t key) { return std::bit_cast<double>(static_cast<std::uint64_t>(key) << bin_shift); }

struct Neumaier {
  double s = 0.0, c = 0.0;
  void add(double x) {
    const double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

struct BinTable {
  std::vector<std::uint64_t> count;
  std::vector<Neumaier> sum;
  explicit BinTable(std::size_t n) : count(2 * n, 0), sum(2 * n) {}
};

Curves curves_from_bins(const std::vector<BinTable>& chunks, std::int64_t base_key, std::uint64_t total,
                        double threshold);
Curves curves_from_values(std::vector<double> above_threshold, std::uint64_t total, double threshold);

}  // namespace detail

/// One streaming pass over the source: values are binned by their bit
/// pattern (64 bins per octave) into per-chunk tables that are merged in
/// chunk order, so the result does not depend on the thread count.
template <SpectrumSource S>
Curves partial_sum_curves(const S& src) {
  const int first = src.first_shell(), last = src.last_shell();
  if (last < first) throw domain_error("shells", "empty spectrum");
  double t = 0.0;
  src.for_each_value(last, [&](double v, std::uint64_t) { t = std::max(t, std::abs(v)); });

  const int nshells = last - first + 1;
  const int nchunks = std::min(nshells, 128);
  std::vector<std::uint64_t> totals(static_cast<std::size_t>(nchunks), 0);
  auto chunk_begin = [&](int c) { return first + static_cast<int>(static_cast<long long>(nshells) * c / nchunks); };

  if (t == 0.0) {
    // Finite rank within the visited shells; nonzero values are expected to
    // be few, so keep them all.
    std::vector<std::vector<double>> kept(static_cast<std::size_t>(nchunks));
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < nchunks; ++c) {
      auto& out = kept[static_cast<std::size_t>(c)];
      std::uint64_t n = 0;
      for (int m = chunk_begin(c); m < chunk_begin(c + 1); ++m)
        src.for_each_value(m, [&](double v, std::uint64_t mult) {
          n += mult;
          if (v != 0.0) out.insert(out.end(), mult, v);
        });
      totals[static_cast<std::size_t>(c)] = n;
    }
    std::vector<double> all;
    for (auto& k : kept) all.insert(all.end(), k.begin(), k.end());
    std::uint64_t total = 0;
    for (auto n : totals) total += n;
    return detail::curves_from_values(std::move(all), total, 0.0);
  }

  const std::int64_t base = detail::bin_key(t);
  constexpr std::int64_t top = detail::bin_count - 1;
  std::vector<detail::BinTable> tables(static_cast<std::size_t>(nchunks), detail::BinTable(0));
#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < nchunks; ++c) {
    detail::BinTable tab(detail::bin_count);
    std::uint64_t n = 0;
    for (int m = chunk_begin(c); m < chunk_begin(c + 1); ++m)
      src.for_each_value(m, [&](double v, std::uint64_t mult) {
        n += mult;
        const double a = std::abs(v);
        if (!(a > t)) return;
        const std::int64_t k = std::min(detail::bin_key(a) - base, top);
        const std::size_t slot = static_cast<std::size_t>(k) * 2 + (v < 0.0);
        tab.count[slot] += mult;
        tab.sum[slot].add(mult == 1 ? a : a * static_cast<double>(mult));
      });
    totals[static_cast<std::size_t>(c)] = n;
    tables[static_cast<std::size_t>(c)] = std::move(tab);
  }
  std::uint64_t total = 0;
  for (auto n : totals) total += n;
  return detail::curves_from_bins(tables, base, total, t);
}

struct FitOptions {
  double window_fraction = 0.25;  ///< window is [fraction * N_max, N_max]
  double tolerance = 0.01;        ///< relative stability tolerance
  std::uint64_t min_eigenvalues = 1000;
};

struct PartFit {
  double kappa = 0.0;
  double intercept = 0.0;
  std::uint64_t n_lo = 0, n_hi = 0;
  std::size_t points = 0;
  double residual = 0.0;
  double stability = 0.0;
  /// The part has too few complete eigenvalues for a window (N_max < 40);
  /// it contributes 0, as a finite-rank operator would.
  bool finite_rank = false;
  /// max S(N)/log N over curve points with N >= 100; 0 when there are none.
  double macaev_bound = 0.0;
};

struct DixmierFit {
  double kappa = 0.0;  ///< positive-part slope minus negative-part slope
  double intercept = 0.0;
  std::uint64_t n_lo = 0, n_hi = 0;  ///< window of the dominant part
  double residual = 0.0;
  double stability = 0.0;
  bool stable = true;
  double macaev_bound = 0.0;
  PartFit positive, negative;
  std::uint64_t eigenvalue_count = 0;
  double completeness_threshold = 0.0;
  Curves curves;
};

/// Least-squares fit of S(N) = kappa log N + a on the window of one part.
PartFit fit_part(const PartialSumCurve& curve, const FitOptions& opt);
DixmierFit fit_curves(Curves curves, const FitOptions& opt = {});

template <SpectrumSource S>
DixmierFit dixmier_estimate(const S& src, const FitOptions& opt = {}) {
  return fit_curves(partial_sum_curves(src), opt);
}

/// min and max of S(N) / (kappa log N) over curve points with N in [lo, hi].
struct QuotientRange {
  double min = 0.0, max = 0.0;
  std::size_t points = 0;
};
QuotientRange log_quotient_range(const PartialSumCurve& curve, double kappa, std::uint64_t lo, std::uint64_t hi);

struct OperatorFit {
  Complex kappa;
  DixmierFit hermitian;
  std::optional<DixmierFit> anti_hermitian;  ///< absent when A is Hermitian
  double eigen_residual = 0.0;
  bool stable() const { return hermitian.stable && (!anti_hermitian || anti_hermitian->stable); }
};

/// kappa(A) = kappa((A+A*)/2) + i kappa((A-A*)/(2i)) on shells [first, last].
OperatorFit dixmier_of_operator(const BlockOperator& a, int first_shell, int last_shell, const FitOptions& opt = {});

}  // namespace balltrace
