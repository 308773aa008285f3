#include "balltrace/reference.hpp"

#include <algorithm>
#include <functional>

#include <Eigen/Eigenvalues>

#include "balltrace/exact.hpp"

namespace balltrace::reference {

namespace {

Rational norm_sq(const MultiIndex& a, const Rational& nu) {
  boost::multiprecision::cpp_int num = 1;
  for (int j = 0; j < a.dim(); ++j)
    for (int k = 2; k <= a[j]; ++k) num *= k;
  Rational den = 1;
  for (int k = 0; k < a.degree(); ++k) den *= nu + k;
  return Rational(num) / den;
}

}  // namespace

DenseBlock toeplitz_dense(const PolySymbol& f, double nu, int max_degree) {
  const int d = f.dim();
  if (nu < d) throw domain_error("nu", "must be >= d");
  const GradedBasis basis(d, max_degree);
  const Rational q = rational_from_double(nu);
  const auto n = static_cast<Eigen::Index>(basis.size());
  DenseBlock t = DenseBlock::Zero(n, n);
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const MultiIndex& g = basis[col];
    for (const auto& [key, c] : f.terms()) {
      const MultiIndex up = g + key.first;
      const auto h = up.minus(key.second);
      if (!h || h->degree() > max_degree) continue;
      const Rational top = norm_sq(up, q);
      const Rational sq = top * top / (norm_sq(g, q) * norm_sq(*h, q));
      t(static_cast<Eigen::Index>(basis.index_of(*h)), static_cast<Eigen::Index>(col)) +=
          c.value() * std::sqrt(static_cast<double>(sq));
    }
  }
  return t;
}

DenseBlock compose_dense(const DenseBlock& a, const DenseBlock& b) { return a * b; }

std::vector<double> hermitian_eigenvalues(const DenseBlock& a) {
  const Eigen::SelfAdjointEigenSolver<DenseBlock> es(a, Eigen::EigenvaluesOnly);
  const auto& v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

SortedSums sorted_partial_sums(std::vector<double> magnitudes) {
  std::sort(magnitudes.begin(), magnitudes.end(), std::greater<>());
  SortedSums s;
  s.sums.reserve(magnitudes.size());
  long double acc = 0;
  for (double v : magnitudes) {
    acc += v;
    s.sums.push_back(static_cast<double>(acc));
  }
  s.values = std::move(magnitudes);
  return s;
}

}  // namespace balltrace::reference
