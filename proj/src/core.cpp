#include "balltrace/core.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace balltrace {

MultiIndex::MultiIndex(int dim) : dim_(dim) {
  if (dim < 1 || dim > max_dimension)
    throw domain_error("d", "dimension must lie in [1, " + std::to_string(max_dimension) + "]");
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents)
    : MultiIndex(std::vector<int>(exponents)) {}

MultiIndex::MultiIndex(const std::vector<int>& exponents)
    : MultiIndex(static_cast<int>(exponents.size())) {
  for (int j = 0; j < dim_; ++j) set(j, exponents[static_cast<std::size_t>(j)]);
}

MultiIndex MultiIndex::unit(int dim, int j) {
  MultiIndex e(dim);
  e.set(j, 1);
  return e;
}

void MultiIndex::set(int j, int value) {
  if (value < 0) throw domain_error("exponent", "must be non-negative");
  auto& slot = e_[static_cast<std::size_t>(j)];
  degree_ += value - slot;
  slot = value;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  MultiIndex r(*this);
  for (int j = 0; j < dim_; ++j) r.set(j, e_[static_cast<std::size_t>(j)] + other[j]);
  return r;
}

std::optional<MultiIndex> MultiIndex::minus(const MultiIndex& other) const {
  if (!dominates(other)) return std::nullopt;
  MultiIndex r(*this);
  for (int j = 0; j < dim_; ++j) r.set(j, e_[static_cast<std::size_t>(j)] - other[j]);
  return r;
}

bool MultiIndex::dominates(const MultiIndex& other) const noexcept {
  for (int j = 0; j < dim_; ++j)
    if (e_[static_cast<std::size_t>(j)] < other[j]) return false;
  return true;
}

double MultiIndex::log_factorial() const {
  double s = 0.0;
  for (int j = 0; j < dim_; ++j) s += std::lgamma(e_[static_cast<std::size_t>(j)] + 1.0);
  return s;
}

std::vector<int> MultiIndex::to_vector() const {
  return {e_.begin(), e_.begin() + dim_};
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (int j = 0; j < dim_; ++j) os << (j ? "," : "") << e_[static_cast<std::size_t>(j)];
  os << ')';
  return os.str();
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) noexcept {
  if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  for (int j = 0; j < a.dim_; ++j)
    if (auto c = a[j] <=> b[j]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("binomial overflow");
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t shell_dim(int d, int m) {
  if (d < 1) throw domain_error("d", "must be >= 1");
  if (m < 0) return 0;
  return binomial(d + m - 1, d - 1);
}

double pochhammer(double x, int k) {
  if (k < 0) throw domain_error("k", "must be >= 0");
  double p = 1.0;
  for (int i = 0; i < k; ++i) p *= x + i;
  return p;
}

double log_pochhammer(double x, int k) {
  if (x <= 0.0) throw domain_error("x", "log_pochhammer needs x > 0");
  return std::lgamma(x + k) - std::lgamma(x);
}

double monomial_norm_sq(const MultiIndex& a, double nu) {
  if (nu < a.dim()) throw domain_error("nu", "must be >= d");
  // a!/(nu)_{|a|}: pair each factorial factor with one Pochhammer factor.
  double r = 1.0;
  int k = 0;
  for (int j = 0; j < a.dim(); ++j)
    for (int t = 1; t <= a[j]; ++t, ++k) r *= t / (nu + k);
  return r;
}

std::size_t shell_rank(const MultiIndex& beta) {
  const int d = beta.dim();
  std::size_t rank = 0;
  int rest = beta.degree();
  for (int j = 0; j + 1 < d; ++j) {
    for (int v = 0; v < beta[j]; ++v) rank += shell_dim(d - j - 1, rest - v);
    rest -= beta[j];
  }
  return rank;
}

GradedBasis::GradedBasis(int dim, int max_degree) : dim_(dim), max_degree_(max_degree) {
  if (dim < 1 || dim > max_dimension) throw domain_error("d", "dimension out of range");
  if (max_degree < 0) throw domain_error("max_degree", "must be >= 0");
  indices_.reserve(binomial(dim + max_degree, dim));
  offsets_.push_back(0);
  for (int m = 0; m <= max_degree; ++m) {
    for_each_in_shell(dim, m, [&](const MultiIndex& a) { indices_.push_back(a); });
    offsets_.push_back(indices_.size());
  }
}

std::size_t GradedBasis::rank_in_shell(const MultiIndex& a) const {
  if (a.dim() != dim_ || a.degree() > max_degree_) throw domain_error("index", "not in basis");
  return shell_rank(a);
}

}  // namespace balltrace
