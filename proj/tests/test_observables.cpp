#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sp/errors.hpp"
#include "sp/observables.hpp"
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

Subspace axis(const SpModel& m, Index k) {
  return span_of(m, make_ortho_set(m, {canonical_state(m, k)}));
}

Observable two_level(const SpModel& m, double v0, double v1) {
  return make_observable(m, {{v0, axis(m, 0)}, {v1, axis(m, 1)}});
}

}  // namespace

TEST_CASE("observable construction validates structure") {
  SpModel m = make_hilbert(2);
  CHECK_THROWS_AS(make_observable(m, {}), InvalidState);
  CHECK_THROWS_AS(make_observable(m, {{1.0, axis(m, 0)}, {1.0, axis(m, 1)}}),
                  InvalidState);
  CHECK_THROWS_AS(
      make_observable(m, {{std::nan(""), axis(m, 0)}, {1.0, axis(m, 1)}}),
      InvalidState);
  Subspace diag = span_of(m, make_ortho_set(m, {hvec({1, 1})}));
  CHECK_THROWS_AS(make_observable(m, {{1.0, axis(m, 0)}, {2.0, diag}}),
                  NotOrthogonal);
  CHECK_THROWS_AS(make_observable(m, {{1.0, axis(m, 0)}}), AxiomViolation);

  Observable ok = two_level(m, 2.0, 1.0);
  CHECK(ok.parts.size() == 2);
  CHECK(ok.bound() == 2.0);
}

TEST_CASE("classical observables group level sets") {
  SpModel c = make_classical(3);
  Observable obs = make_classical_observable(c, {3.0, 1.0, 3.0});
  CHECK(obs.parts.size() == 2);
  for (const auto& part : obs.parts) {
    if (part.value == 1.0) CHECK(part.space.dim() == 1);
    if (part.value == 3.0) CHECK(part.space.dim() == 2);
  }
  CHECK(std::abs(mean_value(c, obs, ClassicalState{1}) - 1.0) <= 1e-15);
  CHECK(std::abs(mean_value(c, obs, ClassicalState{2}) - 3.0) <= 1e-15);
  CHECK_THROWS_AS(make_classical_observable(c, {1.0, 2.0}), InvalidState);
}

TEST_CASE("hermitian matrices decompose into value parts") {
  SpModel m = make_hilbert(2);
  Matrix sz(2, 2);
  sz << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
  Observable obs = hermitian_to_observable(m, sz);
  REQUIRE(obs.parts.size() == 2);
  CHECK(obs.parts.front().value < obs.parts.back().value);

  State a = hvec({std::sqrt(0.8), std::sqrt(0.2)});
  CHECK(std::abs(mean_value(m, obs, a) - 0.6) <= 1e-12);

  Matrix nonherm(2, 2);
  nonherm << Complex(0, 0), Complex(1, 0), Complex(0, 1), Complex(0, 0);
  CHECK_THROWS_AS(hermitian_to_observable(m, nonherm), NotHermitian);

  SpModel m3 = make_hilbert(3);
  Matrix degen = Matrix::Zero(3, 3);
  degen(0, 0) = Complex(1, 0);
  degen(1, 1) = Complex(1, 0);
  degen(2, 2) = Complex(2, 0);
  Observable d = hermitian_to_observable(m3, degen);
  REQUIRE(d.parts.size() == 2);
  CHECK(d.parts.front().space.dim() == 2);
  CHECK(d.parts.back().space.dim() == 1);

  SpModel s = make_sectored({1, 1});
  Matrix mixing(2, 2);
  mixing << Complex(1, 0), Complex(0.5, 0), Complex(0.5, 0), Complex(-1, 0);
  CHECK_THROWS_AS(hermitian_to_observable(s, mixing), InvalidState);
  CHECK_THROWS_AS(hermitian_to_observable(make_classical(2), sz),
                  InvalidState);
}

TEST_CASE("the action redistributes eigen-probabilities") {
  SpModel m = make_hilbert(2);
  Observable obs = two_level(m, 2.0, 1.0);
  State a = hvec({std::sqrt(0.8), std::sqrt(0.2)});
  State r = apply(m, obs, a);
  // 4*0.8 / (4*0.8 + 1*0.2) = 16/17
  CHECK(std::abs(similarity(m, r, canonical_state(m, 0)) - 16.0 / 17.0) <=
        1e-12);
  CHECK(std::abs(similarity(m, r, canonical_state(m, 1)) - 1.0 / 17.0) <=
        1e-12);

  CHECK(fixed_point_check(m, obs, canonical_state(m, 0)));
  CHECK(fixed_point_check(m, obs, canonical_state(m, 1)));
  CHECK_FALSE(fixed_point_check(m, obs, a));

  // A vanishing image leaves the state untouched (and fixed).
  Observable zeroed = two_level(m, 0.0, 1.0);
  State e0 = canonical_state(m, 0);
  CHECK(states_equivalent(m, apply(m, zeroed, e0), e0));
  CHECK(fixed_point_check(m, zeroed, e0));

  SpModel c = make_classical(3);
  Observable cobs = make_classical_observable(c, {1.0, 2.0, 3.0});
  CHECK(std::get<ClassicalState>(apply(c, cobs, ClassicalState{1})).index ==
        1);
  CHECK(fixed_point_check(c, cobs, ClassicalState{1}));
}

TEST_CASE("eigen-probability formula holds on random configurations") {
  SpModel m = make_hilbert(4);
  std::mt19937_64 rng(61);
  std::vector<double> values = {1.0, 2.0, 3.0, -1.0};
  for (int trial = 0; trial < 20; ++trial) {
    OrthoSet f = random_frame(m, 4, rng);
    std::vector<ObservablePart> parts;
    for (std::size_t j = 0; j < 4; ++j) {
      parts.push_back(
          {values[j], span_of(m, make_ortho_set(m, {f.members[j]}))});
    }
    Observable obs = make_observable(m, parts);
    State a = random_state(m, rng);
    State r = apply(m, obs, a);
    double denom = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
      denom += values[j] * values[j] * similarity(m, a, f.members[j]);
    }
    for (std::size_t j = 0; j < 4; ++j) {
      double expected =
          values[j] * values[j] * similarity(m, a, f.members[j]) / denom;
      CHECK(std::abs(similarity(m, r, f.members[j]) - expected) <= 1e-9);
    }
  }
}

TEST_CASE("rescaling keeps the action and scales the mean") {
  SpModel m = make_hilbert(3);
  std::mt19937_64 rng(67);
  Matrix h = Matrix::Zero(3, 3);
  h(0, 0) = Complex(1, 0);
  h(1, 1) = Complex(-2, 0);
  h(2, 2) = Complex(0.5, 0);
  Observable obs = hermitian_to_observable(m, h);
  Observable scaled = rescale(obs, -3.0);
  for (int i = 0; i < 20; ++i) {
    State a = random_state(m, rng);
    CHECK(states_equivalent(m, apply(m, obs, a), apply(m, scaled, a)));
    CHECK(std::abs(mean_value(m, scaled, a) + 3.0 * mean_value(m, obs, a)) <=
          1e-12);
  }
  CHECK_THROWS_AS(rescale(obs, 0.0), InvalidState);
}

TEST_CASE("means respect the bound and the transport inequality") {
  SpModel m = make_hilbert(4);
  std::mt19937_64 rng(71);
  Matrix h = Matrix::Zero(4, 4);
  h(0, 0) = Complex(1, 0);
  h(1, 1) = Complex(-1, 0);
  h(2, 2) = Complex(2, 0);
  h(3, 3) = Complex(-0.25, 0);
  Observable obs = hermitian_to_observable(m, h);
  for (int i = 0; i < 300; ++i) {
    State x = random_state(m, rng);
    State y = (i % 3 == 0) ? perturb_state(m, x, 1e-4, rng)
                           : random_state(m, rng);
    CHECK(std::abs(mean_value(m, obs, x)) <= obs.bound() + 1e-12);
    CHECK(mean_continuity_slack(m, obs, x, y) >= -1e-9);
  }
}

TEST_CASE("the action preserves or negates interference signs") {
  SpModel m = make_hilbert(2);
  State a = hvec({1, 1});
  State b = hvec({Complex(1, 0), std::polar(1.0, kPi / 3)});

  Observable negating = two_level(m, 1.0, -1.0);
  SignCheck neg = check_omega_signs(m, negating, 0, 1, a, b);
  REQUIRE(neg.applicable);
  CHECK(neg.defect <= 1e-9);

  Observable preserving = two_level(m, 2.0, 1.0);
  SignCheck pos = check_omega_signs(m, preserving, 0, 1, a, b);
  REQUIRE(pos.applicable);
  CHECK(pos.defect <= 1e-9);

  Observable zero_pair = two_level(m, 0.0, 1.0);
  CHECK_FALSE(check_omega_signs(m, zero_pair, 0, 1, a, b).applicable);
  CHECK_FALSE(
      check_omega_signs(m, preserving, 0, 1, canonical_state(m, 0), b)
          .applicable);
}

TEST_CASE("unitary morphisms preserve similarity") {
  SpModel m = make_hilbert(4);
  std::mt19937_64 rng(73);
  Morphism f = unitary_morphism(m, haar_unitary(4, rng));
  MorphismCheck mc = check_morphism(m, f, 200, 99);
  CHECK(mc.preservation_defect <= 1e-9);
  CHECK(mc.injectivity_defect == 0.0);

  CHECK_THROWS_AS(unitary_morphism(m, Matrix::Ones(4, 4)), InvalidState);
  CHECK_THROWS_AS(unitary_morphism(m, haar_unitary(3, rng)), InvalidState);

  SpModel s = make_sectored({2, 2});
  Matrix block = Matrix::Zero(4, 4);
  block.topLeftCorner(2, 2) = haar_unitary(2, rng);
  block.bottomRightCorner(2, 2) = haar_unitary(2, rng);
  MorphismCheck sc = check_morphism(s, unitary_morphism(s, block), 200, 99);
  CHECK(sc.preservation_defect <= 1e-9);

  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 2) = Complex(1, 0);
  swap(1, 3) = Complex(1, 0);
  swap(2, 0) = Complex(1, 0);
  swap(3, 1) = Complex(1, 0);
  CHECK_THROWS_AS(unitary_morphism(s, swap), InvalidState);
}

TEST_CASE("index morphisms permute finite models") {
  SpModel c = make_classical(4);
  Morphism f = index_morphism(c, {2, 3, 1, 0});
  MorphismCheck mc = check_morphism(c, f, 200, 5);
  CHECK(mc.preservation_defect == 0.0);
  CHECK(mc.injectivity_defect == 0.0);
  CHECK(std::get<ClassicalState>(f(ClassicalState{0})).index == 2);

  CHECK_THROWS_AS(index_morphism(c, {0, 0, 1, 2}), InvalidState);
  CHECK_THROWS_AS(index_morphism(c, {0, 1, 2, 7}), InvalidState);
  CHECK_THROWS_AS(index_morphism(c, {0, 1}), InvalidState);
  CHECK_THROWS_AS(index_morphism(make_hilbert(2), {1, 0}), InvalidState);
}

TEST_CASE("invariant bases transport projections through the morphism") {
  SpModel m = make_hilbert(3);
  Matrix u = Matrix::Zero(3, 3);
  u(0, 0) = Complex(1, 0);
  u(1, 1) = std::polar(1.0, 0.7);
  u(2, 2) = std::polar(1.0, -1.3);
  Morphism f = unitary_morphism(m, u);
  OrthoSet basis = extend_to_basis(m, OrthoSet{});
  InvariantBasisCheck ic = check_invariant_basis(m, f, basis, {0, 1}, 80, 7);
  REQUIRE(ic.applicable);
  CHECK(ic.defect <= 1e-9);

  std::mt19937_64 rng(79);
  Morphism g = unitary_morphism(m, haar_unitary(3, rng));
  CHECK_FALSE(check_invariant_basis(m, g, basis, {0, 1}, 80, 7).applicable);
}
