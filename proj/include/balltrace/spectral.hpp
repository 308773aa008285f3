#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include <nlohmann/json.hpp>

#include "balltrace/operator.hpp"

namespace balltrace {

struct Eigenvalue {
  double value;
  std::uint64_t multiplicity = 1;
};

/// Eigenvalues of a degree-diagonal Hermitian operator, grouped by shell.
/// Inside each shell values are ascending.
class ShellSpectrum {
public:
  ShellSpectrum(int dim, int first_shell);

  int dim() const noexcept { return dim_; }
  int first_shell() const noexcept { return first_shell_; }
  int last_shell() const noexcept { return first_shell_ + static_cast<int>(shells_.size()) - 1; }
  bool empty() const noexcept { return shells_.empty(); }

  void push_shell(std::vector<Eigenvalue> values);
  const std::vector<Eigenvalue>& shell(int m) const {
    return shells_.at(static_cast<std::size_t>(m - first_shell_));
  }

  template <class Fn>
  void for_each_value(int m, Fn&& fn) const {
    for (const auto& e : shell(m)) fn(e.value, e.multiplicity);
  }

  std::uint64_t count() const;
  /// All eigenvalues (multiplicities expanded), sorted by decreasing |value|.
  std::vector<double> sorted_by_magnitude() const;

  double residual = 0.0;

private:
  int dim_;
  int first_shell_;
  std::vector<std::vector<Eigenvalue>> shells_;
};

/// Per-shell eigendecomposition of the Hermitian operator A on shells
/// [first, last]. Requires last <= exact_degree, no nonzero off-diagonal
/// shift blocks inside the range, and A Hermitian to 1e-12 (relative to its
/// largest entry). Throws when the residual max ||Av - lv|| / ||A|| exceeds
/// 1e-9. Diagonal blocks are read off directly.
ShellSpectrum hermitian_eigen(const BlockOperator& a, int first_shell, int last_shell);

/// Sum of mu^p over the singular values of the compression of A to shells
/// <= window.
double schatten_partial(const BlockOperator& a, double p, int window);

/// Sum of diagonal entries over shells <= window.
Complex partial_trace(const BlockOperator& a, int window);
/// Running partial traces for windows 0..window.
std::vector<Complex> partial_traces(const BlockOperator& a, int window);

/// "shell,index,value" rows, multiplicities expanded.
void write_csv(std::ostream& os, const ShellSpectrum& s);
nlohmann::ordered_json to_json(const ShellSpectrum& s);

}  // namespace balltrace
