#ifndef SP_OBSERVABLES_HPP
#define SP_OBSERVABLES_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "sp/geometry.hpp"

namespace sp {

/// One spectral part: a real value attached to an eigen-subspace.
struct ObservablePart {
  double value = 0.0;
  Subspace space;
};

/// Finite spectral decomposition: pairwise-orthogonal eigen-subspaces whose
/// bases union to a basis of the whole model, with distinct bounded values.
struct Observable {
  std::vector<ObservablePart> parts;

  double bound() const;  // max |value|
};

/// Validating constructor; throws InvalidState on duplicate values or
/// non-finite values, NotOrthogonal on overlapping parts, AxiomViolation if
/// the union of bases does not span the model.
Observable make_observable(const SpModel& m, std::vector<ObservablePart> parts);

/// Classical observable from a value table (one real per state); level sets
/// become the eigen-subspaces. Values closer than tol_eig are merged.
Observable make_classical_observable(const SpModel& m,
                                     const std::vector<double>& values);

/// Spectral bridge: eigendecomposes a Hermitian matrix in the model's
/// embedded coordinates and clusters eigenvalues within tol_eig.
/// Throws NotHermitian unless H is Hermitian within tol_eq; InvalidState if
/// H mixes sectors of a sectored model or the model is finite.
Observable hermitian_to_observable(const SpModel& m, const Matrix& H);

/// Same observable with every value scaled by c (c != 0); the action on
/// states is invariant, the mean scales by c.
Observable rescale(const Observable& obs, double c);

/// Measurement-free action: r(a) = normalized (sum_j value_j P_j) a, with
/// r(a) = a when the image is below rho_floor. Classical models return a;
/// matrix models search for a state matching the eigen-probability
/// redistribution (AxiomViolation when none exists).
State apply(const SpModel& m, const Observable& obs, const State& a);

/// states_equivalent(apply(obs, a), a). The law under test elsewhere:
/// fixed iff some part holds a entirely.
bool fixed_point_check(const SpModel& m, const Observable& obs,
                       const State& a);

/// Mean value at x: sum_j value_j p(x, X_j). Bounded by bound().
double mean_value(const SpModel& m, const Observable& obs, const State& x);

/// Slack of the mean transport bound
///   |mean(x) - mean(y)| <= (sum_j |value_j|) (sqrt(1-p(x,y)) + (1-p(x,y))):
/// bound minus |difference| (>= -tol_eq expected).
double mean_continuity_slack(const SpModel& m, const Observable& obs,
                             const State& x, const State& y);

struct SignCheck {
  /// False when the configuration defines no comparison (a pair value within
  /// tol_eig of zero, or omega undefined on either side).
  bool applicable = false;
  /// |omega(r(a), b) - s * omega(a, b)| with s = sign(value_j * value_k).
  double defect = 0.0;
};

/// Interference-sign law for the part pair (j, k): omega against the context
/// (X_j, X_k) is preserved when value_j value_k > 0 and negated when < 0.
SignCheck check_omega_signs(const SpModel& m, const Observable& obs,
                            std::size_t j, std::size_t k, const State& a,
                            const State& b);

/// Similarity-preserving map on states.
using Morphism = std::function<State(const State&)>;

/// Morphism acting by a unitary matrix in embedded coordinates.
/// Throws InvalidState unless U is unitary within tol_eq (and block-diagonal
/// over sectors for sectored models) or the model is finite.
Morphism unitary_morphism(const SpModel& m, const Matrix& U);

/// Morphism acting by an injective index map (classical/matrix kinds).
Morphism index_morphism(const SpModel& m, std::vector<Index> image);

struct MorphismCheck {
  /// Largest |p(f(x),f(y)) - p(x,y)| observed.
  double preservation_defect = 0.0;
  /// Largest violation of "f(x) ~ f(y) implies x ~ y" observed (0 when
  /// injectivity held on every sample).
  double injectivity_defect = 0.0;
};

MorphismCheck check_morphism(const SpModel& m, const Morphism& f,
                             long samples, std::uint64_t seed);

struct InvariantBasisCheck {
  /// False when f does not fix every member of B (precondition).
  bool applicable = false;
  /// Largest violation across the three laws: p(x,X) = p(f(x),X); f maps the
  /// closed span of X into itself; t(f(x),X) ~ f(t(x,X)).
  double defect = 0.0;
};

/// X is the span of the members of B selected by `part` (indices into B).
InvariantBasisCheck check_invariant_basis(const SpModel& m, const Morphism& f,
                                          const OrthoSet& B,
                                          const std::vector<std::size_t>& part,
                                          long samples, std::uint64_t seed);

}  // namespace sp

#endif
