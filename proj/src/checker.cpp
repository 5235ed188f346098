#include "sp/checker.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "sp/errors.hpp"
#include "sp/geometry.hpp"
#include "sp/io.hpp"
#include "sp/observables.hpp"
#include "sp/phases.hpp"
#include "sp/random.hpp"

namespace sp {

namespace {

using nlohmann::ordered_json;

// Sampling profile: the fuzz driver raises near_fraction round over round
// and switches on the structured two-path perturbation sweep.
struct Profile {
  double near_fraction = 0.1;
  bool family_sweep = false;
};

// Caps keeping exhaustive finite-model quantification bounded.
constexpr long kCliqueCap = 20000;
constexpr long kTupleCap = 100000;

struct Tracker {
  double worst = std::numeric_limits<double>::infinity();
  bool failed = false;
  ordered_json witness = ordered_json::object();
  long samples = 0;

  template <typename WitnessFn>
  void add(double margin, bool violated, WitnessFn&& wf) {
    ++samples;
    if (margin < worst) {
      worst = margin;
      witness = wf();
    }
    if (violated) failed = true;
  }

  AxiomReport finalize(Axiom axiom, std::uint64_t seed) const {
    AxiomReport r;
    r.axiom = axiom;
    r.seed = seed;
    r.samples = samples;
    if (samples == 0) {
      r.verdict = Verdict::NotApplicable;
      r.worst_margin = 0.0;
    } else {
      r.verdict = failed ? Verdict::Fail : Verdict::Pass;
      r.worst_margin = worst;
      r.witness = witness;
    }
    return r;
  }
};

ordered_json set_witness(const SpModel& m, const OrthoSet& A) {
  ordered_json arr = ordered_json::array();
  for (const State& a : A.members) arr.push_back(state_to_json(m, a));
  return arr;
}

Index sector_of(const SpModel& m, const State& x) {
  if (m.kind == ModelKind::Sectored) return std::get<SectoredState>(x).sector;
  return 0;
}

bool near_hit(Profile prof, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(rng) < prof.near_fraction;
}

double log_uniform(double lo_exp, double hi_exp, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(lo_exp, hi_exp);
  return std::pow(10.0, u(rng));
}

// A state close to the span of A: sqrt(1-eta) within + sqrt(eta) residual.
// Falls back to a plain random state when no residual direction exists.
State near_span_state(const SpModel& m, const OrthoSet& A, double eta,
                      std::mt19937_64& rng) {
  if (A.empty()) return random_state(m, rng);
  State u = random_span_state(m, A, rng);
  Index sec = sector_of(m, u);
  for (int attempt = 0; attempt < 4; ++attempt) {
    State w0 = random_state_in_sector(m, sec, rng);
    Vector r = embed(m, w0);
    for (const State& a : A.members) {
      Vector e = embed(m, a);
      r -= e * e.dot(r);
    }
    if (r.squaredNorm() < 1e-10) continue;
    r /= r.norm();
    Vector v = std::sqrt(1.0 - eta) * embed(m, u) + std::sqrt(eta) * r;
    return extract(m, v / v.norm());
  }
  return random_state(m, rng);
}

Matrix blockdiag_haar(const SpModel& m, std::mt19937_64& rng) {
  Matrix U = Matrix::Zero(m.dimension, m.dimension);
  for (std::size_t s = 0; s < m.sectors.size(); ++s) {
    U.block(m.offsets[s], m.offsets[s], m.sectors[s], m.sectors[s]) =
        haar_unitary(m.sectors[s], rng);
  }
  return U;
}

Matrix random_hermitian(const SpModel& m, bool degenerate,
                        std::mt19937_64& rng) {
  if (!degenerate) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix H = Matrix::Zero(m.dimension, m.dimension);
    for (std::size_t s = 0; s < m.sectors.size(); ++s) {
      Index d = m.sectors[s];
      Matrix g(d, d);
      for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) g(i, j) = Complex(normal(rng), normal(rng));
      }
      H.block(m.offsets[s], m.offsets[s], d, d) = (g + Matrix(g.adjoint())) / 2.0;
    }
    return H;
  }
  // Spectral construction from a small value grid: repeated values exercise
  // the clustering path, zeros exercise the vanishing-image convention.
  static const double grid[] = {-1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
  std::uniform_int_distribution<int> pick(0, 5);
  Matrix U = blockdiag_haar(m, rng);
  Matrix H = Matrix::Zero(m.dimension, m.dimension);
  for (Index k = 0; k < m.dimension; ++k) {
    H += grid[pick(rng)] * (U.col(k) * U.col(k).adjoint());
  }
  return H;
}

// ---------------------------------------------------------------------------
// Linear-model evaluators (Monte Carlo over Haar samples).
// ---------------------------------------------------------------------------

AxiomReport check_symmetry_linear(const SpModel& m, const CheckConfig& cfg,
                                  const Profile& prof, std::uint64_t seed) {
  Tracker t;
  std::mt19937_64 rng(seed);
  for (long i = 0; i < cfg.samples; ++i) {
    State x = random_state(m, rng);
    State y = near_hit(prof, rng)
                  ? perturb_state(m, x, log_uniform(-9, -2, rng), rng)
                  : random_state(m, rng);
    double viol = std::abs(similarity(m, x, y) - similarity(m, y, x));
    t.add(-viol, viol > m.tol.tol_eq, [&] {
      ordered_json w;
      w["x"] = state_to_json(m, x);
      w["y"] = state_to_json(m, y);
      return w;
    });
  }
  return t.finalize(Axiom::Symmetry, seed);
}

AxiomReport check_non_negativity_linear(const SpModel& m,
                                        const CheckConfig& cfg,
                                        const Profile& prof,
                                        std::uint64_t seed) {
  Tracker t;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> ksize(0, m.dimension);
  for (long i = 0; i < cfg.samples; ++i) {
    State x = random_state(m, rng);
    double p;
    ordered_json against;
    if (i % 2 == 0) {
      State y = near_hit(prof, rng)
                    ? perturb_state(m, x, log_uniform(-9, -2, rng), rng)
                    : random_state(m, rng);
      p = similarity(m, x, y);
      against = state_to_json(m, y);
    } else {
      // Projector quadratic forms may round a hair below zero; they must
      // stay within tol_eq of the cone.
      OrthoSet A = random_frame(m, ksize(rng), rng);
      p = similarity(m, x, span_of(m, A));
      against = set_witness(m, A);
    }
    t.add(p, p < -m.tol.tol_eq, [&] {
      ordered_json w;
      w["x"] = state_to_json(m, x);
      w["against"] = against;
      return w;
    });
  }
  return t.finalize(Axiom::NonNegativity, seed);
}

AxiomReport check_boundedness_linear(const SpModel& m, const CheckConfig& cfg,
                                     const Profile& prof, std::uint64_t seed) {
  Tracker t;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> ksize(0, m.dimension);
  for (long i = 0; i < cfg.samples; ++i) {
    if (i % 4 == 3) {
      // Reflexivity half: p(x, x) = 1.
      State x = random_state(m, rng);
      double viol = std::abs(1.0 - similarity(m, x, x));
      t.add(-viol, viol > m.tol.tol_eq, [&] {
        ordered_json w;
        w["x"] = state_to_json(m, x);
        return w;
      });
      continue;
    }
    Index k = ksize(rng);
    OrthoSet A = random_frame(m, k, rng);
    State x = near_hit(prof, rng)
                  ? near_span_state(m, A, log_uniform(-12, -3, rng), rng)
                  : random_state(m, rng);
    double margin = 1.0 - similarity_to_set(m, x, A);
    double allowance = static_cast<double>(std::max<Index>(k, 1)) * m.tol.tol_eq;
    t.add(margin, margin < -allowance, [&] {
      ordered_json w;
      w["x"] = state_to_json(m, x);
      w["A"] = set_witness(m, A);
      return w;
    });
  }
  return t.finalize(Axiom::Boundedness, seed);
}

AxiomReport check_o_projection_linear(const SpModel& m, const CheckConfig& cfg,
                                      const Profile& prof, std::uint64_t seed) {
  Tracker t;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> ksize(0, std::max<Index>(m.dimension - 1, 0));
  for (long i = 0; i < cfg.samples; ++i) {
    OrthoSet A = random_frame(m, ksize(rng), rng);
    State x = near_hit(prof, rng)
                  ? near_span_state(m, A, log_uniform(-6, -2, rng), rng)
                  : random_state(m, rng);
    double pA = similarity_to_set(m, x, A);
    if (pA >= 1.0 - m.tol.tol_eq) continue;
    State y = o_project(m, x, A);
    double orth = 0.0;
    for (const State& a : A.members) {
      orth = std::max(orth, similarity(m, y, a));
    }
    double partition = std::abs(pA + similarity(m, x, y) - 1.0);
    double viol = std::max(orth, partition);
    t.add(-viol, viol > m.tol.tol_eq, [&] {
      ordered_json w;
      w["x"] = state_to_json(m, x);
      w["A"] = set_witness(m, A);
      w["y"] = state_to_json(m, y);
      return w;
    });
  }
  return t.finalize(Axiom::OProjection, seed);
}

AxiomReport check_factorization_linear(const SpModel& m,
                                       const CheckConfig& cfg,
                                       const Profile& prof,
                                       std::uint64_t seed) {
  Tracker t;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> ksize(1, m.dimension);
  for (long i = 0; i < cfg.samples; ++i) {
    OrthoSet A = random_frame(m, ksize(rng), rng);
    Subspace X = span_of(m, A);
    State x;
    if (near_hit(prof, rng)) {
      // Almost orthogonal to X: the projection weight sits near rho_floor.
      OrthoSet full = extend_to_basis(m, A);
      OrthoSet rest;
      rest.validated = true;
      rest.members.assign(full.members.begin() +
                              static_cast<std::ptrdiff_t>(A.size()),
                          full.members.end());
      if (rest.empty()) {
        x = random_state(m, rng);
      } else {
        x = near_span_state(m, rest, log_uniform(-10, -4, rng), rng);
      }
    } else {
      x = random_state(m, rng);
    }
    if (similarity(m, x, X) <= m.tol.rho_floor) continue;
    State tproj = project(m, x, X);
    State z = random_span_state(m, A, rng);
    double viol = std::abs(similarity(m, x, z) -
                           similarity(m, x, tproj) * similarity(m, tproj, z));
    t.add(-viol, viol > m.tol.tol_eq, [&] {
      ordered_json w;
      w["x"] = state_to_json(m, x);
      w["X"] = set_witness(m, A);
      w["t"] = state_to_json(m, tproj);
      w["z"] = state_to_json(m, z);
      return w;
    });
  }
  return t.finalize(Axiom::Factorization, seed);
}

// In-span state leaning on X with weight (1 - eta) and on Y with eta.
// Returns nothing when the sector structure admits no such combination.
std::optional<State> lopsided_span_state(const SpModel& m, const Subspace& X,
                                         const Subspace& Y, double eta,
                                         std::mt19937_64& rng) {
  State u = random_span_state(m, X.basis, rng);
  Index sec = sector_of(m, u);
  std::vector<const State*> same;
  for (const State& b : Y.basis.members) {
    if (sector_of(m, b) == sec) same.push_back(&b);
  }
  if (same.empty()) return std::nullopt;
  Vector w = Vector::Zero(m.dimension);
  Vector coeff = Vector::Zero(static_cast<Index>(same.size()));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Index c = 0; c < coeff.size(); ++c) {
    coeff[c] = Complex(normal(rng), normal(rng));
  }
  for (std::size_t c = 0; c < same.size(); ++c) {
    w += coeff[static_cast<Index>(c)] * embed(m, *same[c]);
  }
  if (w.squaredNorm() < 1e-12) return std::nullopt;
  w /= w.norm();
  Vector v = std::sqrt(1.0 - eta) * embed(m, u) + std::sqrt(eta) * w;
  return extract(m, v / v.norm());
}

void sweep_two_path(const SpModel& m, std::mt19937_64& rng, Tracker& cont,
                    Tracker* ineq) {
  // Structured boundary families inside one two-dimensional frame.
  Index sec = -1;
  for (std::size_t s = 0; s < m.sectors.size(); ++s) {
    if (m.sectors[s] >= 2) {
      sec = static_cast<Index>(s);
      break;
    }
  }
  if (sec < 0) return;
  State us = random_state_in_sector(m, sec, rng);
  Vector u = embed(m, us);
  Vector w;
  for (int attempt = 0;; ++attempt) {
    Vector g = embed(m, random_state_in_sector(m, sec, rng));
    w = g - u * u.dot(g);
    if (w.squaredNorm() > 1e-10 || attempt > 8) break;
  }
  if (w.squaredNorm() <= 1e-10) return;
  w /= w.norm();

  static const double rs[] = {0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.95};
  static const double epss[] = {0.0, 1e-8, 1e-5, 1e-3, 1e-2};
  static const double dels[] = {0.0, 1e-8, 1e-5, 1e-3, 1e-1};
  OrthoSet su;
  su.validated = true;
  su.members.push_back(extract(m, u));
  OrthoSet sw;
  sw.validated = true;
  sw.members.push_back(extract(m, w));
  PhaseContext ctx;
  bool have_ctx = false;
  if (ineq) {
    ctx = make_phase_context(m, span_of(m, su), span_of(m, sw));
    have_ctx = true;
  }
  for (double r : rs) {
    for (double eps : epss) {
      for (double del : dels) {
        double r2 = std::clamp(r - eps, 0.0, 1.0);
        Vector vx = std::sqrt(r) * u + std::sqrt(1.0 - r) * w;
        Vector vy = std::sqrt(r2) * u +
                    std::sqrt(1.0 - r2) * std::polar(1.0, del) * w;
        State x = extract(m, vx / vx.norm());
        State y = extract(m, vy / vy.norm());
        State z = us;
        double margin = continuity_bound(m, x, y, z);
        cont.add(margin, margin < -m.tol.tol_eq, [&] {
          ordered_json j;
          j["x"] = state_to_json(m, x);
          j["y"] = state_to_json(m, y);
          j["z"] = state_to_json(m, z);
          return j;
        });
        if (have_ctx) {
          double im = check_inequality(m, ctx, x, y);
          ineq->add(im, im < -m.tol.tol_eq, [&] {
            ordered_json j;
            j["a"] = state_to_json(m, x);
            j["b"] = state_to_json(m, y);
            j["X"] = set_witness(m, su);
            j["Y"] = set_witness(m, sw);
            return j;
          });
        }
      }
    }
  }
}

AxiomReport check_inequality_linear(const SpModel& m, const CheckConfig& cfg,
                                    const Profile& prof, std::uint64_t seed) {
  Tracker t;
  std::mt19937_64 rng(seed);
  if (m.dimension >= 2) {
    std::uniform_int_distribution<Index> kx(1, m.dimension - 1);
    for (long i = 0; i < cfg.samples; ++i) {
      Index nx = kx(rng);
      std::uniform_int_distribution<Index> ky(1, m.dimension - nx);
      Index ny = ky(rng);
      OrthoSet frame = random_frame(m, nx + ny, rng);
      OrthoSet bx, by;
      bx.validated = by.validated = true;
      bx.members.assign(frame.members.begin(), frame.members.begin() + nx);
      by.members.assign(frame.members.begin() + nx, frame.members.end());
      Subspace X = span_of(m, bx);
      Subspace Y = span_of(m, by);
      PhaseContext ctx = make_phase_context(m, X, Y);

      State b;
      if (near_hit(prof, rng)) {
        auto lop = lopsided_span_state(m, ctx.X, ctx.Y,
                                       log_uniform(-10, -2, rng), rng);
        b = lop ? *lop : random_span_state(m, ctx.Z.basis, rng);
      } else {
        b = random_span_state(m, ctx.Z.basis, rng);
      }
      State a = near_hit(prof, rng)
                    ? perturb_state(m, b, log_uniform(-6, -1, rng), rng)
                    : random_state(m, rng);
      double margin = check_inequality(m, ctx, a, b);
      t.add(margin, margin < -m.tol.tol_eq, [&] {
        ordered_json w;
        w["a"] = state_to_json(m, a);
        w["b"] = state_to_json(m, b);
        w["X"] = set_witness(m, bx);
        w["Y"] = set_witness(m, by);
        return w;
      });
    }
    if (prof.family_sweep) sweep_two_path(m, rng, t, &t);
  }
  // family_sweep writes Inequality entries through the same tracker; an
  // absence of two-dimensional structure leaves the family not applicable.
  return t.finalize(Axiom::Inequality, seed);
}

AxiomReport check_continuity_linear(const SpModel& m, const CheckConfig& cfg,
                                    const Profile& prof, std::uint64_t seed) {
  Tracker t;
  std::mt19937_64 rng(seed);
  for (long i = 0; i < cfg.samples; ++i) {
    State x = random_state(m, rng);
    State y = near_hit(prof, rng)
                  ? perturb_state(m, x, log_uniform(-9, -1, rng), rng)
                  : random_state(m, rng);
    State z = near_hit(prof, rng)
                  ? perturb_state(m, x, log_uniform(-6, -1, rng), rng)
                  : random_state(m, rng);
    double margin = continuity_bound(m, x, y, z);
    t.add(margin, margin < -m.tol.tol_eq, [&] {
      ordered_json w;
      w["x"] = state_to_json(m, x);
      w["y"] = state_to_json(m, y);
      w["z"] = state_to_json(m, z);
      return w;
    });
  }
  if (prof.family_sweep) sweep_two_path(m, rng, t, nullptr);
  return t.finalize(Axiom::Continuity, seed);
}

AxiomReport check_observable_laws_linear(const SpModel& m,
                                         const CheckConfig& cfg,
                                         const Profile& prof,
                                         std::uint64_t seed) {
  Tracker t;
  std::mt19937_64 rng(seed);
  const double sub_eq = m.tol.tol_eq;
  const double sub_omega = 1e-7;
  long groups = std::max<long>(cfg.samples / 25, 1);
  for (long g = 0; g < groups; ++g) {
    bool degenerate = near_hit(prof, rng) || g % 3 == 2;
    Matrix H = random_hermitian(m, degenerate, rng);
    Observable obs = hermitian_to_observable(m, H);
    ordered_json obs_tag;
    obs_tag["parts"] = obs.parts.size();
    obs_tag["values"] = ordered_json::array();
    for (const auto& part : obs.parts) obs_tag["values"].push_back(part.value);

    auto add_law = [&](const char* law, double viol, double subtol,
                       const State* a) {
      t.add(subtol - viol, viol > subtol, [&] {
        ordered_json w;
        w["law"] = law;
        w["observable"] = obs_tag;
        if (a) w["a"] = state_to_json(m, *a);
        return w;
      });
    };

    for (int rep = 0; rep < 5; ++rep) {
      State a = random_state(m, rng);

      // Parts partition every state's weight.
      double total = 0.0;
      for (const auto& part : obs.parts) total += similarity(m, a, part.space);
      add_law("partition", std::abs(total - 1.0),
              sub_eq * static_cast<double>(obs.parts.size()), &a);

      // Mean stays within the value bound.
      double mean = mean_value(m, obs, a);
      add_law("mean_bound", std::max(0.0, std::abs(mean) - obs.bound()),
              sub_eq, &a);

      // Mean transport bound.
      State y = near_hit(prof, rng)
                    ? perturb_state(m, a, log_uniform(-8, -1, rng), rng)
                    : random_state(m, rng);
      add_law("mean_transport",
              std::max(0.0, -mean_continuity_slack(m, obs, a, y)), sub_eq, &a);

      // Probability redistribution under the action.
      State ra = apply(m, obs, a);
      double denom = 0.0;
      for (const auto& part : obs.parts) {
        denom += part.value * part.value * similarity(m, a, part.space);
      }
      if (denom > m.tol.rho_floor) {
        double viol = 0.0;
        for (const auto& part : obs.parts) {
          double scale = part.value * part.value / denom;
          for (const State& bmem : part.space.basis.members) {
            viol = std::max(viol, std::abs(similarity(m, ra, bmem) -
                                           scale * similarity(m, a, bmem)));
          }
        }
        add_law("redistribution", viol, sub_eq * 10.0, &a);
      }

      // Action is invariant under rescaling the values.
      double c = rep % 2 == 0 ? 2.5 : -1.0;
      State rb = apply(m, rescale(obs, c), a);
      add_law("rescale", 1.0 - similarity(m, ra, rb), sub_eq, &a);

      // States inside one part are fixed points.
      std::uniform_int_distribution<std::size_t> pickp(0, obs.parts.size() - 1);
      const auto& part = obs.parts[pickp(rng)];
      State inpart = random_span_state(m, part.space.basis, rng);
      add_law("fixed_point",
              1.0 - similarity(m, apply(m, obs, inpart), inpart), sub_eq,
              &inpart);
    }

    // Interference-sign transport between two parts.
    if (obs.parts.size() >= 2) {
      for (int rep = 0; rep < 3; ++rep) {
        std::uniform_int_distribution<std::size_t> pickp(0, obs.parts.size() - 1);
        std::size_t j = pickp(rng), k = pickp(rng);
        if (j == k) continue;
        OrthoSet joint;
        joint.validated = true;
        joint.members = obs.parts[j].space.basis.members;
        joint.members.insert(joint.members.end(),
                             obs.parts[k].space.basis.members.begin(),
                             obs.parts[k].space.basis.members.end());
        State b = random_span_state(m, joint, rng);
        State a = random_state(m, rng);
        SignCheck sc = check_omega_signs(m, obs, j, k, a, b);
        if (sc.applicable) add_law("omega_sign", sc.defect, sub_omega, &a);
      }
    }
  }
  return t.finalize(Axiom::ObservableLaws, seed);
}

AxiomReport check_morphism_laws_linear(const SpModel& m,
                                       const CheckConfig& cfg,
                                       const Profile& prof,
                                       std::uint64_t seed) {
  Tracker t;
  std::mt19937_64 rng(seed);
  const double sub_eq = m.tol.tol_eq;
  const double sub_inv = 1e-7;
  long groups = std::max<long>(cfg.samples / 25, 1);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  for (long g = 0; g < groups; ++g) {
    Matrix U = blockdiag_haar(m, rng);
    Morphism f = unitary_morphism(m, U);
    for (int rep = 0; rep < 8; ++rep) {
      State x = random_state(m, rng);
      State y = near_hit(prof, rng)
                    ? perturb_state(m, x, log_uniform(-9, -2, rng), rng)
                    : random_state(m, rng);
      double viol = std::abs(similarity(m, f(x), f(y)) - similarity(m, x, y));
      t.add(sub_eq - viol, viol > sub_eq, [&] {
        ordered_json w;
        w["law"] = "preservation";
        w["x"] = state_to_json(m, x);
        w["y"] = state_to_json(m, y);
        return w;
      });
    }

    // A unitary fixing a basis member-wise must respect the span laws of
    // every sub-basis: build one from per-member phases.
    OrthoSet B = random_frame(m, m.dimension, rng);
    Matrix P = Matrix::Zero(m.dimension, m.dimension);
    for (const State& bmem : B.members) {
      Vector e = embed(m, bmem);
      P += std::polar(1.0, angle(rng)) * (e * e.adjoint());
    }
    Morphism fp = unitary_morphism(m, P);
    std::vector<std::size_t> part;
    std::uniform_int_distribution<int> coin(0, 1);
    for (std::size_t i = 0; i < B.members.size(); ++i) {
      if (coin(rng)) part.push_back(i);
    }
    InvariantBasisCheck ic =
        check_invariant_basis(m, fp, B, part, 4, split_seed(seed, 100 + static_cast<std::uint64_t>(g)));
    if (ic.applicable) {
      t.add(sub_inv - ic.defect, ic.defect > sub_inv, [&] {
        ordered_json w;
        w["law"] = "invariant_basis";
        w["B"] = set_witness(m, B);
        return w;
      });
    }
  }
  return t.finalize(Axiom::MorphismLaws, seed);
}

// ---------------------------------------------------------------------------
// Finite-model evaluators (exhaustive over the state set, budget-capped).
// ---------------------------------------------------------------------------

double table_p(const SpModel& m, Index i, Index j) {
  if (m.kind == ModelKind::Classical) return i == j ? 1.0 : 0.0;
  return m.table(i, j);
}

// All pairwise-orthogonal index sets (orthogonality read symmetrically),
// in lexicographic order starting with the empty set.
std::vector<std::vector<Index>> ortho_index_sets(const SpModel& m) {
  std::vector<std::vector<Index>> out;
  std::vector<Index> cur;
  std::function<void(Index)> rec = [&](Index start) {
    if (static_cast<long>(out.size()) >= kCliqueCap) return;
    out.push_back(cur);
    for (Index c = start; c < m.dimension; ++c) {
      bool ok = true;
      for (Index b : cur) {
        if (std::max(table_p(m, b, c), table_p(m, c, b)) > m.tol.tol_orth) {
          ok = false;
          break;
        }
      }
      if (ok) {
        cur.push_back(c);
        rec(c + 1);
        cur.pop_back();
      }
    }
  };
  rec(0);
  return out;
}

OrthoSet index_set(const std::vector<Index>& idx) {
  OrthoSet s;
  s.validated = true;
  for (Index i : idx) s.members.push_back(ClassicalState{i});
  return s;
}

ordered_json index_witness(const std::vector<Index>& idx) {
  ordered_json arr = ordered_json::array();
  for (Index i : idx) {
    ordered_json s;
    s["kind"] = "classical_state";
    s["index"] = i;
    arr.push_back(s);
  }
  return arr;
}

AxiomReport check_symmetry_finite(const SpModel& m, std::uint64_t seed) {
  Tracker t;
  for (Index i = 0; i < m.dimension && t.samples < kTupleCap; ++i) {
    for (Index j = i + 1; j < m.dimension && t.samples < kTupleCap; ++j) {
      double viol = std::abs(table_p(m, i, j) - table_p(m, j, i));
      t.add(-viol, viol > m.tol.tol_eq, [&] {
        ordered_json w;
        w["x"] = state_to_json(m, ClassicalState{i});
        w["y"] = state_to_json(m, ClassicalState{j});
        return w;
      });
    }
  }
  if (m.dimension == 1) {
    double viol = std::abs(table_p(m, 0, 0) - table_p(m, 0, 0));
    t.add(-viol, false, [&] {
      ordered_json w;
      w["x"] = state_to_json(m, ClassicalState{0});
      w["y"] = state_to_json(m, ClassicalState{0});
      return w;
    });
  }
  return t.finalize(Axiom::Symmetry, seed);
}

AxiomReport check_non_negativity_finite(const SpModel& m, std::uint64_t seed) {
  Tracker t;
  for (Index i = 0; i < m.dimension && t.samples < kTupleCap; ++i) {
    for (Index j = 0; j < m.dimension && t.samples < kTupleCap; ++j) {
      double p = table_p(m, i, j);
      t.add(p, p < -m.tol.tol_eq, [&] {
        ordered_json w;
        w["x"] = state_to_json(m, ClassicalState{i});
        w["y"] = state_to_json(m, ClassicalState{j});
        return w;
      });
    }
  }
  return t.finalize(Axiom::NonNegativity, seed);
}

AxiomReport check_boundedness_finite(const SpModel& m, std::uint64_t seed) {
  Tracker t;
  auto sets = ortho_index_sets(m);
  for (Index x = 0; x < m.dimension; ++x) {
    double viol = std::abs(1.0 - table_p(m, x, x));
    t.add(-viol, viol > m.tol.tol_eq, [&] {
      ordered_json w;
      w["x"] = state_to_json(m, ClassicalState{x});
      return w;
    });
  }
  for (Index x = 0; x < m.dimension; ++x) {
    for (const auto& idx : sets) {
      if (t.samples >= kTupleCap) break;
      double total = 0.0;
      for (Index a : idx) total += table_p(m, x, a);
      double margin = 1.0 - total;
      double allowance =
          static_cast<double>(std::max<std::size_t>(idx.size(), 1)) *
          m.tol.tol_eq;
      t.add(margin, margin < -allowance, [&] {
        ordered_json w;
        w["x"] = state_to_json(m, ClassicalState{x});
        w["A"] = index_witness(idx);
        return w;
      });
    }
  }
  return t.finalize(Axiom::Boundedness, seed);
}

AxiomReport check_o_projection_finite(const SpModel& m, std::uint64_t seed) {
  Tracker t;
  auto sets = ortho_index_sets(m);
  for (Index x = 0; x < m.dimension; ++x) {
    for (const auto& idx : sets) {
      if (t.samples >= kTupleCap) break;
      double pA = 0.0;
      for (Index a : idx) pA += table_p(m, x, a);
      if (pA >= 1.0 - m.tol.tol_eq) continue;
      double best = std::numeric_limits<double>::infinity();
      Index besty = -1;
      for (Index y = 0; y < m.dimension; ++y) {
        double orth = 0.0;
        for (Index a : idx) {
          orth = std::max(orth,
                          std::max(table_p(m, y, a), table_p(m, a, y)));
        }
        double partition = std::abs(pA + table_p(m, x, y) - 1.0);
        double viol = std::max(orth, partition);
        if (viol < best) {
          best = viol;
          besty = y;
        }
      }
      t.add(-best, best > m.tol.tol_eq, [&] {
        ordered_json w;
        w["x"] = state_to_json(m, ClassicalState{x});
        w["A"] = index_witness(idx);
        if (besty >= 0) {
          w["best_candidate"] = state_to_json(m, ClassicalState{besty});
        }
        return w;
      });
    }
  }
  return t.finalize(Axiom::OProjection, seed);
}

// Indices within the closed span of an index set.
std::vector<Index> span_indices(const SpModel& m, const std::vector<Index>& idx) {
  std::vector<Index> span;
  for (Index z = 0; z < m.dimension; ++z) {
    double total = 0.0;
    for (Index a : idx) total += table_p(m, z, a);
    if (total >= 1.0 - m.tol.tol_eq) span.push_back(z);
  }
  return span;
}

AxiomReport check_factorization_finite(const SpModel& m, std::uint64_t seed) {
  Tracker t;
  auto sets = ortho_index_sets(m);
  for (const auto& idx : sets) {
    if (idx.empty()) continue;
    if (t.samples >= kTupleCap) break;
    auto span = span_indices(m, idx);
    for (Index x = 0; x < m.dimension; ++x) {
      double pX = 0.0;
      for (Index a : idx) pX += table_p(m, x, a);
      if (pX <= m.tol.rho_floor) continue;
      // The unique projection witness inside the span.
      Index tw = -1;
      for (Index y : span) {
        if (std::abs(table_p(m, x, y) - pX) > m.tol.tol_eq) continue;
        bool ok = true;
        for (Index z : span) {
          if (std::abs(table_p(m, x, z) -
                       table_p(m, x, y) * table_p(m, y, z)) > m.tol.tol_eq) {
            ok = false;
            break;
          }
        }
        if (ok) {
          tw = y;
          break;
        }
      }
      if (tw < 0) {
        t.add(-1.0, true, [&] {
          ordered_json w;
          w["x"] = state_to_json(m, ClassicalState{x});
          w["X"] = index_witness(idx);
          w["missing_projection"] = true;
          return w;
        });
        continue;
      }
      for (Index z : span) {
        double viol = std::abs(table_p(m, x, z) -
                               table_p(m, x, tw) * table_p(m, tw, z));
        t.add(-viol, viol > m.tol.tol_eq, [&] {
          ordered_json w;
          w["x"] = state_to_json(m, ClassicalState{x});
          w["X"] = index_witness(idx);
          w["t"] = state_to_json(m, ClassicalState{tw});
          w["z"] = state_to_json(m, ClassicalState{z});
          return w;
        });
      }
    }
  }
  return t.finalize(Axiom::Factorization, seed);
}

AxiomReport check_inequality_finite(const SpModel& m, std::uint64_t seed) {
  Tracker t;
  auto sets = ortho_index_sets(m);
  for (std::size_t i = 0; i < sets.size() && t.samples < kTupleCap; ++i) {
    if (sets[i].empty()) continue;
    for (std::size_t j = 0; j < sets.size() && t.samples < kTupleCap; ++j) {
      if (sets[j].empty() || i == j) continue;
      bool disjoint_orth = true;
      for (Index a : sets[i]) {
        for (Index b : sets[j]) {
          if (a == b ||
              std::max(table_p(m, a, b), table_p(m, b, a)) > m.tol.tol_orth) {
            disjoint_orth = false;
            break;
          }
        }
        if (!disjoint_orth) break;
      }
      if (!disjoint_orth) continue;
      PhaseContext ctx;
      try {
        ctx = make_phase_context(m, span_of(m, index_set(sets[i])),
                                 span_of(m, index_set(sets[j])));
      } catch (const Error&) {
        continue;
      }
      std::vector<Index> zbar;
      {
        std::vector<Index> joint = sets[i];
        joint.insert(joint.end(), sets[j].begin(), sets[j].end());
        zbar = span_indices(m, joint);
      }
      for (Index a = 0; a < m.dimension && t.samples < kTupleCap; ++a) {
        for (Index b : zbar) {
          if (t.samples >= kTupleCap) break;
          double margin;
          try {
            margin = check_inequality(m, ctx, ClassicalState{a},
                                      ClassicalState{b});
          } catch (const Error&) {
            continue;  // missing projection witnesses fail Factorization
          }
          t.add(margin, margin < -m.tol.tol_eq, [&] {
            ordered_json w;
            w["a"] = state_to_json(m, ClassicalState{a});
            w["b"] = state_to_json(m, ClassicalState{b});
            w["X"] = index_witness(sets[i]);
            w["Y"] = index_witness(sets[j]);
            return w;
          });
        }
      }
    }
  }
  return t.finalize(Axiom::Inequality, seed);
}

AxiomReport check_continuity_finite(const SpModel& m, std::uint64_t seed) {
  Tracker t;
  for (Index x = 0; x < m.dimension && t.samples < kTupleCap; ++x) {
    for (Index y = 0; y < m.dimension && t.samples < kTupleCap; ++y) {
      double defect = std::max(0.0, 1.0 - table_p(m, x, y));
      double step = std::sqrt(defect) + defect;
      for (Index z = 0; z < m.dimension && t.samples < kTupleCap; ++z) {
        double margin = table_p(m, y, z) + step - table_p(m, x, z);
        t.add(margin, margin < -m.tol.tol_eq, [&] {
          ordered_json w;
          w["x"] = state_to_json(m, ClassicalState{x});
          w["y"] = state_to_json(m, ClassicalState{y});
          w["z"] = state_to_json(m, ClassicalState{z});
          return w;
        });
      }
    }
  }
  return t.finalize(Axiom::Continuity, seed);
}

AxiomReport check_observable_laws_finite(const SpModel& m,
                                         const CheckConfig& cfg,
                                         std::uint64_t seed) {
  Tracker t;
  if (m.kind == ModelKind::Matrix) {
    // A bare similarity table carries no canonical observables.
    return t.finalize(Axiom::ObservableLaws, seed);
  }
  std::mt19937_64 rng(seed);
  static const double grid[] = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
  std::uniform_int_distribution<int> pick(0, 6);
  long groups = std::max<long>(cfg.samples / 25, 1);
  const double sub_eq = m.tol.tol_eq;
  for (long g = 0; g < groups; ++g) {
    std::vector<double> values;
    for (Index i = 0; i < m.dimension; ++i) values.push_back(grid[pick(rng)]);
    Observable obs = make_classical_observable(m, values);
    ordered_json obs_tag;
    obs_tag["parts"] = obs.parts.size();

    auto add_law = [&](const char* law, double viol, double subtol) {
      t.add(subtol - viol, viol > subtol, [&] {
        ordered_json w;
        w["law"] = law;
        w["observable"] = obs_tag;
        return w;
      });
    };

    for (Index x = 0; x < m.dimension; ++x) {
      ClassicalState a{x};
      double total = 0.0;
      for (const auto& part : obs.parts) total += similarity(m, a, part.space);
      add_law("partition", std::abs(total - 1.0),
              sub_eq * static_cast<double>(obs.parts.size()));
      double mean = mean_value(m, obs, a);
      add_law("mean_bound", std::max(0.0, std::abs(mean) - obs.bound()),
              sub_eq);
      add_law("fixed_point", 1.0 - similarity(m, apply(m, obs, a), a), sub_eq);
      State rb = apply(m, rescale(obs, -2.0), a);
      add_law("rescale", 1.0 - similarity(m, apply(m, obs, a), rb), sub_eq);
      for (Index y = 0; y < m.dimension; ++y) {
        add_law("mean_transport",
                std::max(0.0, -mean_continuity_slack(m, obs, a,
                                                     ClassicalState{y})),
                sub_eq);
      }
    }
  }
  return t.finalize(Axiom::ObservableLaws, seed);
}

AxiomReport check_morphism_laws_finite(const SpModel& m,
                                       const CheckConfig& cfg,
                                       std::uint64_t seed) {
  Tracker t;
  if (m.kind == ModelKind::Matrix) {
    // Automorphisms of an arbitrary table are not canonically generated.
    return t.finalize(Axiom::MorphismLaws, seed);
  }
  std::mt19937_64 rng(seed);
  long groups = std::max<long>(cfg.samples / 25, 1);
  const double sub_eq = m.tol.tol_eq;
  for (long g = 0; g < groups; ++g) {
    std::vector<Index> image(static_cast<std::size_t>(m.dimension));
    std::iota(image.begin(), image.end(), Index{0});
    std::shuffle(image.begin(), image.end(), rng);
    Morphism f = index_morphism(m, image);
    MorphismCheck mc = check_morphism(m, f, 20, split_seed(seed, 200 + static_cast<std::uint64_t>(g)));
    t.add(sub_eq - mc.preservation_defect, mc.preservation_defect > sub_eq,
          [&] {
            ordered_json w;
            w["law"] = "preservation";
            return w;
          });
    t.add(sub_eq - mc.injectivity_defect, mc.injectivity_defect > sub_eq, [&] {
      ordered_json w;
      w["law"] = "injectivity";
      return w;
    });

    // Permutation fixing a random subset pointwise.
    std::vector<std::size_t> part;
    std::vector<Index> rest;
    std::uniform_int_distribution<int> coin(0, 1);
    for (Index i = 0; i < m.dimension; ++i) {
      if (coin(rng)) {
        part.push_back(static_cast<std::size_t>(i));
      } else {
        rest.push_back(i);
      }
    }
    std::vector<Index> fiximg(static_cast<std::size_t>(m.dimension));
    std::iota(fiximg.begin(), fiximg.end(), Index{0});
    std::vector<Index> shuffled = rest;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (std::size_t i = 0; i < rest.size(); ++i) {
      fiximg[static_cast<std::size_t>(rest[i])] = shuffled[i];
    }
    OrthoSet B;
    B.validated = true;
    for (Index i = 0; i < m.dimension; ++i) B.members.push_back(ClassicalState{i});
    InvariantBasisCheck ic = check_invariant_basis(
        m, index_morphism(m, fiximg), B, part, 10,
        split_seed(seed, 300 + static_cast<std::uint64_t>(g)));
    if (ic.applicable) {
      t.add(sub_eq - ic.defect, ic.defect > sub_eq, [&] {
        ordered_json w;
        w["law"] = "invariant_basis";
        w["part"] = index_witness(std::vector<Index>(part.begin(), part.end()));
        return w;
      });
    }
  }
  return t.finalize(Axiom::MorphismLaws, seed);
}

std::vector<AxiomReport> run_profile(const SpModel& m, const CheckConfig& cfg,
                                     const Profile& prof) {
  std::vector<AxiomReport> out;
  for (int ax = 0; ax < 9; ++ax) {
    Axiom axiom = static_cast<Axiom>(ax);
    std::uint64_t seed = split_seed(cfg.seed, static_cast<std::uint64_t>(ax));
    if (m.linear()) {
      switch (axiom) {
        case Axiom::Symmetry:
          out.push_back(check_symmetry_linear(m, cfg, prof, seed));
          break;
        case Axiom::NonNegativity:
          out.push_back(check_non_negativity_linear(m, cfg, prof, seed));
          break;
        case Axiom::Boundedness:
          out.push_back(check_boundedness_linear(m, cfg, prof, seed));
          break;
        case Axiom::OProjection:
          out.push_back(check_o_projection_linear(m, cfg, prof, seed));
          break;
        case Axiom::Factorization:
          out.push_back(check_factorization_linear(m, cfg, prof, seed));
          break;
        case Axiom::Inequality:
          out.push_back(check_inequality_linear(m, cfg, prof, seed));
          break;
        case Axiom::Continuity:
          out.push_back(check_continuity_linear(m, cfg, prof, seed));
          break;
        case Axiom::ObservableLaws:
          out.push_back(check_observable_laws_linear(m, cfg, prof, seed));
          break;
        case Axiom::MorphismLaws:
          out.push_back(check_morphism_laws_linear(m, cfg, prof, seed));
          break;
      }
    } else {
      switch (axiom) {
        case Axiom::Symmetry:
          out.push_back(check_symmetry_finite(m, seed));
          break;
        case Axiom::NonNegativity:
          out.push_back(check_non_negativity_finite(m, seed));
          break;
        case Axiom::Boundedness:
          out.push_back(check_boundedness_finite(m, seed));
          break;
        case Axiom::OProjection:
          out.push_back(check_o_projection_finite(m, seed));
          break;
        case Axiom::Factorization:
          out.push_back(check_factorization_finite(m, seed));
          break;
        case Axiom::Inequality:
          out.push_back(check_inequality_finite(m, seed));
          break;
        case Axiom::Continuity:
          out.push_back(check_continuity_finite(m, seed));
          break;
        case Axiom::ObservableLaws:
          out.push_back(check_observable_laws_finite(m, cfg, seed));
          break;
        case Axiom::MorphismLaws:
          out.push_back(check_morphism_laws_finite(m, cfg, seed));
          break;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<AxiomReport> run_suite(const SpModel& m, const CheckConfig& cfg) {
  return run_profile(m, cfg, Profile{});
}

std::vector<AxiomReport> run_fuzz(const SpModel& m, const CheckConfig& cfg,
                                  int rounds) {
  std::vector<AxiomReport> merged;
  for (int r = 0; r < std::max(rounds, 1); ++r) {
    Profile prof;
    prof.near_fraction = std::min(0.8, 0.2 * std::pow(2.0, r));
    prof.family_sweep = true;
    CheckConfig round_cfg = cfg;
    round_cfg.seed = split_seed(cfg.seed, 7000 + static_cast<std::uint64_t>(r));
    std::vector<AxiomReport> reports = run_profile(m, round_cfg, prof);
    if (merged.empty()) {
      merged = std::move(reports);
      continue;
    }
    for (std::size_t i = 0; i < merged.size(); ++i) {
      AxiomReport& acc = merged[i];
      const AxiomReport& cur = reports[i];
      acc.samples += cur.samples;
      if (cur.verdict == Verdict::NotApplicable) continue;
      if (acc.verdict == Verdict::NotApplicable ||
          cur.worst_margin < acc.worst_margin) {
        acc.worst_margin = cur.worst_margin;
        acc.witness = cur.witness;
        acc.seed = cur.seed;
      }
      if (cur.verdict == Verdict::Fail) acc.verdict = Verdict::Fail;
      if (cur.verdict == Verdict::Pass && acc.verdict == Verdict::NotApplicable) {
        acc.verdict = Verdict::Pass;
      }
    }
  }
  return merged;
}

std::string model_descriptor(const SpModel& m) {
  switch (m.kind) {
    case ModelKind::Classical:
      return "classical:" + std::to_string(m.dimension);
    case ModelKind::Hilbert:
      return "hilbert:" + std::to_string(m.dimension);
    case ModelKind::Sectored: {
      std::string out = "sectored:";
      for (std::size_t s = 0; s < m.sectors.size(); ++s) {
        if (s) out += ",";
        out += std::to_string(m.sectors[s]);
      }
      return out;
    }
    case ModelKind::Matrix:
      return "matrix:" + std::to_string(m.dimension);
  }
  return "unknown";
}

nlohmann::ordered_json report_document(const SpModel& m,
                                       const CheckConfig& cfg,
                                       const std::vector<AxiomReport>& reports) {
  ordered_json doc;
  doc["model"] = model_descriptor(m);
  doc["config"]["samples"] = cfg.samples;
  doc["config"]["seed"] = cfg.seed;
  doc["reports"] = ordered_json::array();
  for (const auto& r : reports) doc["reports"].push_back(to_json(r));
  doc["all_pass"] = all_pass(reports);
  return doc;
}

}  // namespace sp
