#ifndef SP_TOLERANCES_HPP
#define SP_TOLERANCES_HPP

namespace sp {

/// Numerical thresholds used by every comparison in the library.
/// All comparisons are absolute; nothing is scaled by operand magnitude.
struct Tolerances {
  /// Slack for equalities between similarities (p-values).
  double tol_eq = 1e-9;
  /// Maximum pairwise similarity tolerated inside an ortho-set.
  double tol_orth = 1e-9;
  /// Below this a similarity is treated as exactly zero (degenerate guard
  /// for projections and phase denominators).
  double rho_floor = 1e-12;
  /// Eigenvalue clustering / spectral-membership threshold.
  double tol_eig = 1e-8;
};

/// Throws InvalidState unless every field is strictly positive and < 1e-3.
void validate(const Tolerances& tol);

}  // namespace sp

#endif
