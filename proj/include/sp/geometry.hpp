#ifndef SP_GEOMETRY_HPP
#define SP_GEOMETRY_HPP

#include <optional>
#include <vector>

#include "sp/model.hpp"

namespace sp {

struct OrthoCheck {
  bool ok = true;
  /// Largest pairwise similarity found (0 for empty/singleton lists).
  double worst_pair = 0.0;
};

/// Pairwise similarity <= tol_orth and no two members equivalent.
OrthoCheck is_ortho_set(const SpModel& m, const std::vector<State>& states);

/// Validating constructor; throws NotOrthoSet.
OrthoSet make_ortho_set(const SpModel& m, std::vector<State> states);

/// Closed span of an ortho-set. Linear kinds cache the embedded orthogonal
/// projector; finite kinds carry the basis only.
struct Subspace {
  OrthoSet basis;
  Matrix projector;  // dimension x dimension for linear kinds, 0x0 otherwise

  Index dim() const { return static_cast<Index>(basis.size()); }
};

Subspace span_of(const SpModel& m, OrthoSet basis);

/// p(x, X) against the cached projector (linear) or the basis sum (finite).
double similarity(const SpModel& m, const State& x, const Subspace& X);

/// p(x, X) >= 1 - tol_eq.
bool member(const SpModel& m, const State& x, const Subspace& X);

/// The state y orthogonal to every member of A with p(x,A) + p(x,y) = 1:
/// the normalized residual of x off the span of A (classical models return
/// x itself; matrix models search the finite state set).
/// Throws AlreadyInSubspace if p(x,A) >= 1 - tol_eq, AxiomViolation if a
/// matrix model declares no witness.
State o_project(const SpModel& m, const State& x, const OrthoSet& A);

/// Folds singleton o-projections over A in list order; equivalent to the
/// bulk o_project for valid models.
State cascade_o_project(const SpModel& m, const State& x, const OrthoSet& A);

/// t(x, X): the state of the closed span of X nearest to x, satisfying
/// p(x, z) = p(x, t) p(t, z) for every z in the span.
/// Throws OrthogonalToSubspace if p(x, X) <= rho_floor; AxiomViolation if a
/// matrix model declares no witness.
State project(const SpModel& m, const State& x, const Subspace& X);

/// Completes A to a basis of the whole model (or of `within` when given;
/// A must lie inside `within`). Result starts with A's members. Candidates
/// are processed in canonical order and kept when the squared residual
/// exceeds tol_orth; residuals are re-orthogonalized in a second pass.
OrthoSet extend_to_basis(const SpModel& m, const OrthoSet& A,
                         const std::optional<Subspace>& within = std::nullopt);

/// Basis sizes agree (bases of one subspace always have equal size).
bool dimension_check(const OrthoSet& A, const OrthoSet& B);

/// Span of the states extend_to_basis adds to X's basis.
Subspace complement(const SpModel& m, const Subspace& X);

/// Span of the union of bases; throws NotOrthogonal unless X ⟂ Y within
/// tol_orth.
Subspace ortho_sum(const SpModel& m, const Subspace& X, const Subspace& Y);

/// Largest subspace contained in both: eigenvectors of P_X P_Y P_X with
/// eigenvalue >= 1 - tol_eig (per sector for sectored models); index / greedy
/// search for finite kinds.
Subspace intersection(const SpModel& m, const Subspace& X, const Subspace& Y);

/// Every basis member of X lies in the closed span of Y (p >= 1 - tol_eq).
bool subspace_leq(const SpModel& m, const Subspace& X, const Subspace& Y);

}  // namespace sp

#endif
