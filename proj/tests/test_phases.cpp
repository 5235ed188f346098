#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sp/errors.hpp"
#include "sp/phases.hpp"
#include "sp/random.hpp"

using namespace sp;

namespace {

constexpr double kPi = 3.14159265358979323846;

State hvec(std::initializer_list<Complex> cs) {
  Vector v(static_cast<Index>(cs.size()));
  Index i = 0;
  for (Complex c : cs) v[i++] = c;
  return HilbertState{v / v.norm()};
}

PhaseContext axes_context(const SpModel& m) {
  return make_phase_context(
      m, span_of(m, make_ortho_set(m, {canonical_state(m, 0)})),
      span_of(m, make_ortho_set(m, {canonical_state(m, 1)})));
}

double wrap_2pi(double t) {
  double w = std::fmod(t, 2 * kPi);
  if (w < 0) w += 2 * kPi;
  return w;
}

}  // namespace

TEST_CASE("opposite equatorial states interfere destructively") {
  SpModel m = make_hilbert(2);
  PhaseContext ctx = axes_context(m);
  State a = hvec({1, 1});
  State b = hvec({1, -1});

  CHECK(std::abs(alpha(m, ctx, a, b) - (-0.5)) <= 1e-12);
  CHECK(std::abs(rho(m, ctx, a, b) - 0.5) <= 1e-12);
  auto w = omega(m, ctx, a, b);
  REQUIRE(w.has_value());
  CHECK(std::abs(*w - (-1.0)) <= 1e-12);
  CHECK(std::abs(phase(m, ctx, a, b) - kPi) <= 1e-9);
}

TEST_CASE("a sixth-turn relative phase shows up in omega and phase") {
  SpModel m = make_hilbert(2);
  PhaseContext ctx = axes_context(m);
  State a = hvec({1, 1});
  State b = hvec({Complex(1, 0), std::polar(1.0, kPi / 3)});

  auto w = omega(m, ctx, a, b);
  REQUIRE(w.has_value());
  CHECK(std::abs(*w - 0.5) <= 1e-9);
  CHECK(std::abs(phase(m, ctx, a, b) - kPi / 3) <= 1e-9);
  CHECK(std::abs(alpha(m, ctx, a, b) -
                 rho(m, ctx, a, b) * std::cos(phase(m, ctx, a, b))) <= 1e-12);
}

TEST_CASE("phase is antisymmetric modulo a full turn") {
  SpModel m = make_hilbert(3);
  std::mt19937_64 rng(41);
  OrthoSet f = random_frame(m, 2, rng);
  PhaseContext ctx =
      make_phase_context(m, span_of(m, make_ortho_set(m, {f.members[0]})),
                         span_of(m, make_ortho_set(m, {f.members[1]})));
  for (int i = 0; i < 30; ++i) {
    State a = random_state(m, rng);
    State b = random_state(m, rng);
    double fwd, rev;
    try {
      fwd = phase(m, ctx, a, b);
      rev = phase(m, ctx, b, a);
    } catch (const Error&) {
      continue;  // degenerate overlap for this draw
    }
    double sum = wrap_2pi(fwd + rev);
    double gap = std::min(sum, 2 * kPi - sum);
    CHECK(gap <= 1e-9);
  }
}

TEST_CASE("alpha equals rho cos phase with higher-dimensional arms") {
  SpModel m = make_hilbert(5);
  std::mt19937_64 rng(43);
  OrthoSet f = random_frame(m, 4, rng);
  Subspace X = span_of(m, make_ortho_set(m, {f.members[0], f.members[1]}));
  Subspace Y = span_of(m, make_ortho_set(m, {f.members[2], f.members[3]}));
  PhaseContext ctx = make_phase_context(m, X, Y);
  for (int i = 0; i < 40; ++i) {
    // The identity presumes b inside the two-path sum; a is unrestricted.
    State a = random_state(m, rng);
    State b = random_span_state(m, ctx.Z.basis, rng);
    double al = alpha(m, ctx, a, b);
    double r = rho(m, ctx, a, b);
    CHECK(r >= -1e-15);
    if (r <= 1e-9) continue;
    double ph = phase(m, ctx, a, b);
    CHECK(std::abs(al - r * std::cos(ph)) <= 1e-9);
    CHECK(std::abs(al) <= r + 1e-12);
  }
}

TEST_CASE("interference bound holds for in-span second arguments") {
  SpModel m = make_sectored({2, 3});
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 15; ++trial) {
    OrthoSet f = random_frame(m, 3, rng);
    Subspace X = span_of(m, make_ortho_set(m, {f.members[0]}));
    Subspace Y = span_of(m, make_ortho_set(m, {f.members[1], f.members[2]}));
    PhaseContext ctx = make_phase_context(m, X, Y);
    for (int i = 0; i < 20; ++i) {
      State a = random_state(m, rng);
      State b = random_span_state(m, ctx.Z.basis, rng);
      CHECK(check_inequality(m, ctx, a, b) >= -1e-9);
    }
  }
}

TEST_CASE("classical interference quantities vanish identically") {
  SpModel c = make_classical(4);
  PhaseContext ctx = make_phase_context(
      c, span_of(c, make_ortho_set(c, {ClassicalState{0}})),
      span_of(c, make_ortho_set(c, {ClassicalState{1}, ClassicalState{2}})));
  for (Index a = 0; a < 3; ++a) {  // a with weight in Z
    for (Index b = 0; b < 3; ++b) {  // b inside Z
      double al = alpha(c, ctx, ClassicalState{a}, ClassicalState{b});
      double r = rho(c, ctx, ClassicalState{a}, ClassicalState{b});
      CHECK(al == 0.0);
      CHECK(r == 0.0);
      CHECK_FALSE(omega(c, ctx, ClassicalState{a}, ClassicalState{b})
                      .has_value());
    }
  }
  // Index 3 carries no weight in Z at all, so the quantities are undefined.
  CHECK_THROWS_AS(alpha(c, ctx, ClassicalState{3}, ClassicalState{0}),
                  OrthogonalToSubspace);
  CHECK_THROWS_AS(phase(c, ctx, ClassicalState{0}, ClassicalState{1}),
                  PhaseUndefined);
}

TEST_CASE("degenerate weights contribute zero instead of failing") {
  SpModel m = make_hilbert(3);
  PhaseContext ctx = make_phase_context(
      m, span_of(m, make_ortho_set(m, {canonical_state(m, 0)})),
      span_of(m, make_ortho_set(m, {canonical_state(m, 1)})));
  State a = canonical_state(m, 0);  // entirely inside X, no Y weight
  State b = hvec({1, 1, 0});
  CHECK(std::abs(alpha(m, ctx, a, b) - 0.0) <= 1e-12);
  CHECK(rho(m, ctx, a, b) == 0.0);
  CHECK_FALSE(omega(m, ctx, a, b).has_value());
  CHECK(check_inequality(m, ctx, a, b) >= 0.0);

  State off = canonical_state(m, 2);  // orthogonal to Z
  CHECK_THROWS_AS(alpha(m, ctx, off, b), OrthogonalToSubspace);
  CHECK(check_inequality(m, ctx, off, b) == 0.0);
}

TEST_CASE("phase context construction rejects overlapping arms") {
  SpModel m = make_hilbert(2);
  Subspace X = span_of(m, make_ortho_set(m, {canonical_state(m, 0)}));
  Subspace Xagain = span_of(m, make_ortho_set(m, {hvec({1, 1})}));
  CHECK_THROWS_AS(make_phase_context(m, X, Xagain), NotOrthogonal);
}

TEST_CASE("transport bound slack is non-negative and tight at coincidence") {
  SpModel m = make_hilbert(4);
  std::mt19937_64 rng(53);
  for (int i = 0; i < 400; ++i) {
    State x = random_state(m, rng);
    State y = (i % 4 == 0) ? perturb_state(m, x, 1e-5, rng)
                           : random_state(m, rng);
    State z = random_state(m, rng);
    CHECK(continuity_bound(m, x, y, z) >= -1e-9);
  }
  State x = random_state(m, rng);
  State z = random_state(m, rng);
  CHECK(std::abs(continuity_bound(m, x, x, z)) <= 1e-7);
}
