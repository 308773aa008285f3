#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace balltrace {

/// Raised when a numeric parameter violates a documented precondition.
/// The parameter name is kept so the CLI can report it.
class domain_error : public std::invalid_argument {
public:
  domain_error(std::string parameter, const std::string& what)
      : std::invalid_argument(parameter + ": " + what), parameter_(std::move(parameter)) {}

  const std::string& parameter() const noexcept { return parameter_; }

private:
  std::string parameter_;
};

inline constexpr int max_dimension = 8;

/// Exponent vector in N^d. Ordered graded-lexicographically: total degree
/// first, then exponents compared left to right.
class MultiIndex {
public:
  MultiIndex() = default;

  explicit MultiIndex(int dim);
  MultiIndex(std::initializer_list<int> exponents);
  explicit MultiIndex(const std::vector<int>& exponents);

  static MultiIndex unit(int dim, int j);

  int dim() const noexcept { return dim_; }
  int degree() const noexcept { return degree_; }

  int operator[](int j) const noexcept { return e_[static_cast<std::size_t>(j)]; }
  void set(int j, int value);

  MultiIndex operator+(const MultiIndex& other) const;
  /// Componentwise difference; empty when some component would go negative.
  std::optional<MultiIndex> minus(const MultiIndex& other) const;
  /// True when every component is >= the corresponding one of `other`.
  bool dominates(const MultiIndex& other) const noexcept;

  /// log(a!) = sum_j log(a_j!).
  double log_factorial() const;
  std::vector<int> to_vector() const;
  std::string to_string() const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) noexcept {
    return a.dim_ == b.dim_ && a.e_ == b.e_;
  }
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) noexcept;

private:
  int dim_ = 0;
  int degree_ = 0;
  std::array<int, max_dimension> e_{};
};

/// binomial(n, k) as an unsigned 64-bit integer; throws on overflow.
std::uint64_t binomial(int n, int k);

/// Number of monomials of total degree m in d variables, binomial(d+m-1, d-1).
std::uint64_t shell_dim(int d, int m);

/// Ascending product x (x+1) ... (x+k-1); the empty product is 1.
double pochhammer(double x, int k);

/// log of the Pochhammer symbol for x > 0.
double log_pochhammer(double x, int k);

/// Squared norm of z^a in H_nu, a!/(nu)_{|a|}. Formed as a running product
/// of ratios so it neither overflows nor loses precision for large degrees.
double monomial_norm_sq(const MultiIndex& a, double nu);

/// Calls fn(beta) for every beta with |beta| = m, in graded-lex order.
template <class Fn>
void for_each_in_shell(int d, int m, Fn&& fn) {
  MultiIndex beta(d);
  // Odometer over the first d-1 components; the last one absorbs the rest.
  std::array<int, max_dimension> e{};
  int used = 0;
  for (;;) {
    for (int j = 0; j + 1 < d; ++j) beta.set(j, e[static_cast<std::size_t>(j)]);
    beta.set(d - 1, m - used);
    fn(static_cast<const MultiIndex&>(beta));
    // advance: increment the rightmost of the first d-1 slots that can grow
    int j = d - 2;
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

/// Graded lexicographic enumeration of {a in N^d : |a| <= max_degree}.
class GradedBasis {
public:
  GradedBasis(int dim, int max_degree);

  int dim() const noexcept { return dim_; }
  int max_degree() const noexcept { return max_degree_; }
  std::size_t size() const noexcept { return indices_.size(); }

  const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }

  /// Offset of the first index of shell m inside the global ordering.
  std::size_t shell_offset(int m) const { return offsets_.at(static_cast<std::size_t>(m)); }
  std::size_t shell_size(int m) const {
    return offsets_.at(static_cast<std::size_t>(m) + 1) - offsets_.at(static_cast<std::size_t>(m));
  }
  /// Position of `a` inside its own shell.
  std::size_t rank_in_shell(const MultiIndex& a) const;
  /// Position of `a` in the global ordering.
  std::size_t index_of(const MultiIndex& a) const { return shell_offset(a.degree()) + rank_in_shell(a); }

private:
  int dim_;
  int max_degree_;
  std::vector<MultiIndex> indices_;
  std::vector<std::size_t> offsets_;
};

/// Rank of beta among the shell |beta| in graded-lex order, computed
/// combinatorially (no table).
std::size_t shell_rank(const MultiIndex& beta);

}  // namespace balltrace
