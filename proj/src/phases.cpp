#include "sp/phases.hpp"

#include <cmath>
#include <string>

#include "sp/errors.hpp"

namespace sp {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// The six weights entering alpha and rho. A branch whose entry weight is at
// or below rho_floor is dropped entirely (its projection is undefined but
// its contribution has vanishing magnitude).
struct BranchTerms {
  double paX = 0, pbX = 0, ptX = 1;  // p(a,X), p(b,X), p(t(a,X), t(b,X))
  double paY = 0, pbY = 0, ptY = 1;
  bool x_live = false, y_live = false;
};

BranchTerms branch_terms(const SpModel& m, const PhaseContext& ctx,
                         const State& a, const State& b) {
  BranchTerms t;
  t.paX = similarity(m, a, ctx.X);
  t.pbX = similarity(m, b, ctx.X);
  t.paY = similarity(m, a, ctx.Y);
  t.pbY = similarity(m, b, ctx.Y);
  const double floor = m.tol.rho_floor;
  if (t.paX > floor && t.pbX > floor) {
    t.ptX = similarity(m, project(m, a, ctx.X), project(m, b, ctx.X));
    t.x_live = true;
  }
  if (t.paY > floor && t.pbY > floor) {
    t.ptY = similarity(m, project(m, a, ctx.Y), project(m, b, ctx.Y));
    t.y_live = true;
  }
  return t;
}

void require_in_sum(const SpModel& m, const PhaseContext& ctx, const State& a,
                    const State& b) {
  double paZ = similarity(m, a, ctx.Z);
  double pbZ = similarity(m, b, ctx.Z);
  if (paZ <= m.tol.rho_floor || pbZ <= m.tol.rho_floor) {
    throw OrthogonalToSubspace("state orthogonal to the two-path sum: p(a,Z) = " +
                               std::to_string(paZ) + ", p(b,Z) = " +
                               std::to_string(pbZ));
  }
}

double alpha_from(const SpModel& m, const State& a, const State& b,
                  const BranchTerms& t) {
  double value = similarity(m, a, b);
  if (t.x_live) value -= t.paX * t.pbX * t.ptX;
  if (t.y_live) value -= t.paY * t.pbY * t.ptY;
  return value;
}

double rho_from(const BranchTerms& t) {
  double product = t.paX * t.pbX * t.paY * t.pbY;
  if (t.x_live) product *= t.ptX;
  if (t.y_live) product *= t.ptY;
  if (product <= 0.0) return 0.0;
  return 2.0 * std::sqrt(product);
}

}  // namespace

PhaseContext make_phase_context(const SpModel& m, Subspace X, Subspace Y) {
  PhaseContext ctx;
  ctx.Z = ortho_sum(m, X, Y);  // throws NotOrthogonal on overlap
  ctx.X = std::move(X);
  ctx.Y = std::move(Y);
  return ctx;
}

double alpha(const SpModel& m, const PhaseContext& ctx, const State& a,
             const State& b) {
  require_in_sum(m, ctx, a, b);
  return alpha_from(m, a, b, branch_terms(m, ctx, a, b));
}

double rho(const SpModel& m, const PhaseContext& ctx, const State& a,
           const State& b) {
  require_in_sum(m, ctx, a, b);
  return rho_from(branch_terms(m, ctx, a, b));
}

std::optional<double> omega(const SpModel& m, const PhaseContext& ctx,
                            const State& a, const State& b) {
  require_in_sum(m, ctx, a, b);
  BranchTerms t = branch_terms(m, ctx, a, b);
  double r = rho_from(t);
  if (r <= m.tol.rho_floor) return std::nullopt;
  return alpha_from(m, a, b, t) / r;
}

double phase(const SpModel& m, const PhaseContext& ctx, const State& a,
             const State& b) {
  if (!m.linear()) {
    throw PhaseUndefined("model carries no phase structure");
  }
  require_in_sum(m, ctx, a, b);
  BranchTerms t = branch_terms(m, ctx, a, b);
  if (!t.x_live || !t.y_live) {
    throw PhaseUndefined("a two-path branch has vanishing weight");
  }
  Vector va = embed(m, a);
  Vector vb = embed(m, b);
  Vector taX = ctx.X.projector * va;
  Vector tbX = ctx.X.projector * vb;
  Vector taY = ctx.Y.projector * va;
  Vector tbY = ctx.Y.projector * vb;
  Complex innerX = (taX / taX.norm()).dot(tbX / tbX.norm());
  Complex innerY = (taY / taY.norm()).dot(tbY / tbY.norm());
  if (std::norm(innerX) <= m.tol.rho_floor ||
      std::norm(innerY) <= m.tol.rho_floor) {
    throw PhaseUndefined("projected overlap vanishes");
  }
  double value = std::arg(innerY) - std::arg(innerX);
  value = std::fmod(value, kTwoPi);
  if (value < 0.0) value += kTwoPi;
  return value;
}

double check_inequality(const SpModel& m, const PhaseContext& ctx,
                        const State& a, const State& b) {
  double paZ = similarity(m, a, ctx.Z);
  double pbZ = similarity(m, b, ctx.Z);
  if (paZ <= m.tol.rho_floor || pbZ <= m.tol.rho_floor) return 0.0;
  BranchTerms t = branch_terms(m, ctx, a, b);
  return rho_from(t) - std::abs(alpha_from(m, a, b, t));
}

double continuity_bound(const SpModel& m, const State& x, const State& y,
                        const State& z) {
  double defect = similarity_defect(m, x, y);
  if (defect < 0.0) defect = 0.0;  // guard rounding before sqrt
  return similarity(m, y, z) + std::sqrt(defect) + defect -
         similarity(m, x, z);
}

}  // namespace sp
