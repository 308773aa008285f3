#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "balltrace/core.hpp"
#include "balltrace/symbol.hpp"

namespace balltrace {

using Complex = std::complex<double>;
using SparseBlock = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;
using DenseBlock = Eigen::MatrixXcd;

/// Truncated operator on span{e_beta : |beta| <= max_degree}, stored as
/// degree-graded blocks. Block (m, s) maps shell m to shell m + s and has
/// shape shell_dim(d, m+s) x shell_dim(d, m); rows and columns follow the
/// graded-lex order of each shell.
///
/// exact_degree: every entry whose source and target degrees are both
/// <= exact_degree equals the corresponding matrix element of the
/// untruncated operator.
class BlockOperator {
public:
  /// `nu` is empty for operators on the Fock space.
  BlockOperator(int dim, std::optional<double> nu, int max_degree);

  int dim() const noexcept { return dim_; }
  std::optional<double> nu() const noexcept { return nu_; }
  int max_degree() const noexcept { return max_degree_; }
  int exact_degree() const noexcept { return exact_degree_; }
  void set_exact_degree(int e) { exact_degree_ = e; }

  std::vector<int> shifts() const;
  bool has_shift(int s) const { return blocks_.count(s) != 0; }
  /// Largest positive shift (0 if none) and largest downward shift magnitude.
  int max_raise() const;
  int max_lower() const;
  bool is_degree_diagonal() const;

  /// True when block (m, s) exists, i.e. the shift is stored and the
  /// target shell is inside the truncation.
  bool has_block(int m, int s) const;
  const SparseBlock& block(int m, int s) const;
  /// Makes every block of shift s exist (zero-filled). Not thread-safe;
  /// call before parallel fills.
  void ensure_shift(int s);
  SparseBlock& mutable_block(int m, int s);

  /// Dense copy of block (m, s); zero matrix of the right shape if absent.
  DenseBlock dense_block(int m, int s) const;

  std::size_t basis_size(int max_shell) const;

  BlockOperator adjoint() const;
  /// Same matrices viewed on another space (the relabeling U: e_beta -> E_beta
  /// when moving to the Fock side).
  BlockOperator relabeled(std::optional<double> nu) const {
    BlockOperator r = *this;
    r.nu_ = nu;
    return r;
  }
  BlockOperator scaled(Complex c) const;

  friend BlockOperator operator+(const BlockOperator& a, const BlockOperator& b);
  friend BlockOperator operator-(const BlockOperator& a, const BlockOperator& b);

private:
  void require_compatible(const BlockOperator& other) const;
  friend BlockOperator compose(const BlockOperator& a, const BlockOperator& b);

  int dim_;
  std::optional<double> nu_;
  int max_degree_;
  int exact_degree_;
  std::map<int, std::vector<SparseBlock>> blocks_;
};

/// Truncation of T_f to degrees <= max_degree on H_nu (nu >= d; nu = d is
/// the Hardy space). Requires max_degree >= total degree of f.
BlockOperator toeplitz(const PolySymbol& f, double nu, int max_degree);

/// Product AB per shell. exact_degree(AB) = min(E_A, E_B) - k where
/// k = min(max raise of B, max lowering of A): only intermediates above the
/// window can be missing, and they can only be reached that way.
BlockOperator compose(const BlockOperator& a, const BlockOperator& b);
BlockOperator commutator(const BlockOperator& a, const BlockOperator& b);

/// Sum over permutations of sign * A_s(1) ... A_s(n).
BlockOperator antisymmetrize(const std::vector<BlockOperator>& ops);

/// Largest |A - B| entry with source and target degree <= window.
double max_abs_difference(const BlockOperator& a, const BlockOperator& b, int window);
double max_abs_entry(const BlockOperator& a, int window);

struct HankelGram {
  BlockOperator op;  ///< [T_conj(f), T_f]
  double route_deviation;  ///< vs T_{|f|^2} - T_f T_conj(f), on the exact window
};

/// |H_conj(f)|^2 = [T_conj(f), T_f] for holomorphic f, built two ways.
/// Throws std::logic_error when the routes disagree by more than
/// 1e-12 * max(1, largest entry) on the exact window.
HankelGram hankel_gram_checked(const PolySymbol& f, double nu, int max_degree);
BlockOperator hankel_gram(const PolySymbol& f, double nu, int max_degree);

/// Dense matrix of the operator restricted to degrees <= window, in the
/// global graded-lex order of GradedBasis(d, window).
DenseBlock dense_window(const BlockOperator& a, int window);

}  // namespace balltrace
