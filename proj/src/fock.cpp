#include "balltrace/fock.hpp"

#include <cmath>
#include <numbers>

namespace balltrace {

double FockBasis::norm_sq(const MultiIndex& beta) {
  return std::exp(beta.log_factorial()) / std::pow(std::numbers::pi, beta.degree());
}

BlockOperator rho_delta(int dim, int max_degree) {
  BlockOperator r(dim, std::nullopt, max_degree);
  r.ensure_shift(0);
#pragma omp parallel for schedule(dynamic)
  for (int m = 0; m <= max_degree; ++m) {
    auto& blk = r.mutable_block(m, 0);
    blk.setIdentity();
    blk *= Complex(-std::numbers::pi * (m + 0.5 * dim));
  }
  return r;
}

BlockOperator ladder(int dim, int j, LadderKind kind, int max_degree) {
  if (j < 1 || j > dim) throw domain_error("j", "ladder index must be in 1..d");
  const int s = kind == LadderKind::create ? 1 : -1;
  const int idx = j - 1;
  BlockOperator r(dim, std::nullopt, max_degree);
  r.ensure_shift(s);
#pragma omp parallel for schedule(dynamic)
  for (int m = 0; m <= max_degree; ++m) {
    if (!r.has_block(m, s)) continue;
    std::vector<Eigen::Triplet<Complex>> trip;
    std::size_t col = 0;
    for_each_in_shell(dim, m, [&](const MultiIndex& beta) {
      const int bj = beta[idx];
      if (kind == LadderKind::create) {
        const MultiIndex up = beta + MultiIndex::unit(dim, idx);
        trip.emplace_back(static_cast<Eigen::Index>(shell_rank(up)), static_cast<Eigen::Index>(col),
                          std::sqrt(std::numbers::pi * (bj + 1)));
      } else if (bj > 0) {
        const MultiIndex down = *beta.minus(MultiIndex::unit(dim, idx));
        trip.emplace_back(static_cast<Eigen::Index>(shell_rank(down)), static_cast<Eigen::Index>(col),
                          -std::sqrt(std::numbers::pi * bj));
      }
      ++col;
    });
    r.mutable_block(m, s).setFromTriplets(trip.begin(), trip.end());
  }
  return r;
}

IntertwinerCheck verify_intertwiner(const MultiIndex& alpha, double nu, int max_degree) {
  const int d = alpha.dim();
  if (!(nu >= d)) throw domain_error("nu", "must be >= d");
  if (max_degree < alpha.degree()) throw domain_error("degree", "must be >= |alpha|");
  const int k = alpha.degree();

  BlockOperator lhs = toeplitz(PolySymbol::monomial(alpha, MultiIndex(d)), nu, max_degree);
  lhs = lhs.relabeled(std::nullopt);

  // pi^k (nu - d/2 - rho(Delta)/pi)_k, read off rho(Delta) shell by shell
  const BlockOperator delta = rho_delta(d, max_degree);
  BlockOperator rhs(d, std::nullopt, max_degree);
  rhs.ensure_shift(0);
  for (int m = 0; m <= max_degree; ++m) {
    const double rho = delta.block(m, 0).coeff(0, 0).real();
    const double x = nu - 0.5 * d - rho / std::numbers::pi;
    auto& blk = rhs.mutable_block(m, 0);
    blk.setIdentity();
    blk *= Complex(1.0 / std::sqrt(std::pow(std::numbers::pi, k) * pochhammer(x, k)));
  }
  for (int j = 0; j < d; ++j) {
    const BlockOperator up = ladder(d, j + 1, LadderKind::create, max_degree);
    for (int t = 0; t < alpha[j]; ++t) rhs = compose(up, rhs);
  }
  const int window = std::min(lhs.exact_degree(), rhs.exact_degree());
  const double dev = max_abs_difference(lhs, rhs, window);
  return {dev, window, std::move(lhs), std::move(rhs)};
}

}  // namespace balltrace
