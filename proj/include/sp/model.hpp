#ifndef SP_MODEL_HPP
#define SP_MODEL_HPP

#include <Eigen/Dense>
#include <vector>

#include "sp/state.hpp"
#include "sp/tolerances.hpp"

namespace sp {

enum class ModelKind { Classical, Hilbert, Sectored, Matrix };

/// A state space together with its similarity function.
///
/// Classical: n distinct states, similarity is the Kronecker delta.
/// Hilbert:   unit vectors in C^d, similarity |<x,y>|^2 (inner product
///            conjugates the first argument).
/// Sectored:  unit vectors supported in a single sector of a direct sum;
///            cross-sector similarity is exactly 0.
/// Matrix:    n states with an explicitly declared similarity table, used
///            to exercise the axiom checker on (possibly broken) inputs.
struct SpModel {
  ModelKind kind = ModelKind::Hilbert;
  /// State count (Classical/Matrix) or total embedded dimension
  /// (Hilbert/Sectored).
  Index dimension = 0;
  /// Per-sector dimensions. Hilbert models hold a single sector {d}.
  std::vector<Index> sectors;
  /// Embedding offset of each sector into the direct-sum coordinates.
  std::vector<Index> offsets;
  /// Declared similarity table (Matrix kind only).
  Eigen::MatrixXd table;
  Tolerances tol;

  bool linear() const {
    return kind == ModelKind::Hilbert || kind == ModelKind::Sectored;
  }
  bool finite() const { return !linear(); }
  /// Number of distinct classical/matrix states; dimension for linear kinds.
  Index state_count() const { return dimension; }
};

SpModel make_classical(Index n, Tolerances tol = {});
SpModel make_hilbert(Index d, Tolerances tol = {});
SpModel make_sectored(const std::vector<Index>& dims, Tolerances tol = {});
SpModel make_matrix(Eigen::MatrixXd table, Tolerances tol = {});

/// Throws InvalidState unless `x` is a well-formed state of `m`
/// (kind, dimension, sector and index ranges, unit norm within tol_eq).
void validate_state(const SpModel& m, const State& x);

/// Canonical states: basis vector k (linear kinds, sector inferred from the
/// embedded coordinate) or index k (finite kinds).
State canonical_state(const SpModel& m, Index k);

/// Embeds a linear-model state into direct-sum coordinates (Hilbert states
/// pass through). Throws InvalidState for finite kinds.
Vector embed(const SpModel& m, const State& x);

/// Inverse of embed: classifies a unit direct-sum vector as a state.
/// The vector must be supported in a single sector within tol_orth.
State extract(const SpModel& m, const Vector& v);

/// Transition probability p(x, y). Symmetric, in [0, 1] up to rounding.
double similarity(const SpModel& m, const State& x, const State& y);

/// 1 - p(x, y), computed without cancellation near p = 1 (linear kinds use
/// the squared norm of y's orthogonal residual off x).
double similarity_defect(const SpModel& m, const State& x, const State& y);

/// p(x, A) = sum of p(x, a) over the ortho-set A. Empty set gives 0.
/// Validates A against the model unless it is already marked validated
/// (throws NotOrthoSet).
double similarity_to_set(const SpModel& m, const State& x, const OrthoSet& A);

/// p(x, y) >= 1 - tol_eq.
bool states_equivalent(const SpModel& m, const State& x, const State& y);

}  // namespace sp

#endif
