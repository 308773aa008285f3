#pragma once

// Serial, deliberately naive implementations used as oracles in tests and
// as baselines in the benchmarks. None of them is shell-aware.

#include <cstdint>
#include <vector>

#include "balltrace/dixmier.hpp"
#include "balltrace/operator.hpp"
#include "balltrace/symbol.hpp"

namespace balltrace::reference {

/// Toeplitz matrix on GradedBasis(d, N) from the Gram route: the squared
/// entry |<z^a zbar^b e_g, e_h>|^2 = (||z^(g+a)||^2)^2 / (||z^g||^2 ||z^h||^2)
/// is formed in exact rationals from the monomial norms a!/(nu)_|a|.
/// nu must be a dyadic rational (any double is).
DenseBlock toeplitz_dense(const PolySymbol& f, double nu, int max_degree);

/// Plain dense product.
DenseBlock compose_dense(const DenseBlock& a, const DenseBlock& b);

/// All eigenvalues of a dense Hermitian matrix, ascending, one solve.
std::vector<double> hermitian_eigenvalues(const DenseBlock& a);

/// Values sorted by decreasing magnitude and their running sums.
struct SortedSums {
  std::vector<double> values;  ///< |values|, descending
  std::vector<double> sums;    ///< sums[n-1] = S(n)
};
SortedSums sorted_partial_sums(std::vector<double> magnitudes);

/// Materializes every value of the source, splits by sign and sorts.
template <SpectrumSource S>
std::pair<SortedSums, SortedSums> materialize(const S& src) {
  std::vector<double> pos, neg;
  for (int m = src.first_shell(); m <= src.last_shell(); ++m)
    src.for_each_value(m, [&](double v, std::uint64_t mult) {
      auto& out = v < 0 ? neg : pos;
      if (v != 0.0) out.insert(out.end(), mult, std::abs(v));
    });
  return {sorted_partial_sums(std::move(pos)), sorted_partial_sums(std::move(neg))};
}

}  // namespace balltrace::reference
