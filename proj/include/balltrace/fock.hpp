#pragma once

#include "balltrace/core.hpp"
#include "balltrace/operator.hpp"

namespace balltrace {

/// Orthonormal basis E_beta = w^beta / ||w^beta|| of the Fock space
/// F = {entire f : int |f|^2 exp(-pi |w|^2) dm < inf}, where
/// ||w^beta||^2 = beta! / pi^|beta|. Same graded order as GradedBasis.
class FockBasis {
public:
  FockBasis(int dim, int max_degree) : basis_(dim, max_degree) {}

  int dim() const noexcept { return basis_.dim(); }
  int max_degree() const noexcept { return basis_.max_degree(); }
  const GradedBasis& graded() const noexcept { return basis_; }

  static double norm_sq(const MultiIndex& beta);

private:
  GradedBasis basis_;
};

/// rho(Delta): -pi (m + d/2) on shell m.
BlockOperator rho_delta(int dim, int max_degree);

enum class LadderKind { create, annihilate };

/// rho(dbar_j) = pi w_j (create): E_beta -> sqrt(pi (beta_j + 1)) E_{beta + e_j}
/// rho(d_j) = -d/dw_j (annihilate): E_beta -> -sqrt(pi beta_j) E_{beta - e_j}
/// j is 1-based.
BlockOperator ladder(int dim, int j, LadderKind kind, int max_degree);

struct IntertwinerCheck {
  double deviation;  ///< max entrywise |lhs - rhs| on the exact window
  int window;
  BlockOperator lhs, rhs;
};

/// Compares U T_{z^alpha} U* (toeplitz on H_nu, relabeled to the Fock basis)
/// with rho(dbar)^alpha * [pi^|alpha| (nu - d/2 - rho(Delta)/pi)_|alpha|]^(-1/2).
IntertwinerCheck verify_intertwiner(const MultiIndex& alpha, double nu, int max_degree);

}  // namespace balltrace
