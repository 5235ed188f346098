#ifndef SP_PHASES_HPP
#define SP_PHASES_HPP

#include <optional>

#include "sp/geometry.hpp"

namespace sp {

/// A pair of orthogonal subspaces X ⟂ Y with their orthogonal sum Z cached.
struct PhaseContext {
  Subspace X, Y, Z;
};

/// Throws NotOrthogonal unless X ⟂ Y.
PhaseContext make_phase_context(const SpModel& m, Subspace X, Subspace Y);

/// Interference excess of p(a,b) over the incoherent two-path contribution:
///   alpha = p(a,b) - p(a,X) p(b,X) p(t(a,X), t(b,X))
///                  - p(a,Y) p(b,Y) p(t(a,Y), t(b,Y)).
/// A projection factor whose weight is below rho_floor contributes 0.
/// Throws OrthogonalToSubspace if p(a,Z) or p(b,Z) <= rho_floor.
double alpha(const SpModel& m, const PhaseContext& ctx, const State& a,
             const State& b);

/// Maximum possible |alpha|:
///   rho = 2 sqrt(p(a,X) p(b,X) p(a,Y) p(b,Y)
///                p(t(a,X), t(b,X)) p(t(a,Y), t(b,Y))).
double rho(const SpModel& m, const PhaseContext& ctx, const State& a,
           const State& b);

/// alpha / rho in [-1, 1]; empty when rho <= rho_floor.
std::optional<double> omega(const SpModel& m, const PhaseContext& ctx,
                            const State& a, const State& b);

/// Relative phase in [0, 2pi) between the two projected overlaps:
///   phase = arg<t(a,Y), t(b,Y)> - arg<t(a,X), t(b,X)>  (mod 2pi),
/// using the canonical vector projections. Satisfies antisymmetry mod 2pi
/// and alpha = rho cos(phase) for all subspace dimensions; triple additivity
/// holds when X and Y are one-dimensional.
/// Throws PhaseUndefined for models without phase structure (classical,
/// matrix) and for degenerate overlaps.
double phase(const SpModel& m, const PhaseContext& ctx, const State& a,
             const State& b);

/// Margin rho - |alpha| (>= -tol_eq expected when b lies in the closed span
/// of Z; a may be any state). Degenerate configurations report 0. Never
/// throws.
double check_inequality(const SpModel& m, const PhaseContext& ctx,
                        const State& a, const State& b);

/// Slack of the transport bound
///   p(x,z) <= p(y,z) + sqrt(1 - p(x,y)) + (1 - p(x,y)):
/// returns the right side minus the left side (>= -tol_eq expected for all
/// states of a valid model). Uses the cancellation-free defect.
double continuity_bound(const SpModel& m, const State& x, const State& y,
                        const State& z);

}  // namespace sp

#endif
