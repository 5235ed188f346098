#include "sp/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sp/errors.hpp"
#include "sp/phases.hpp"
#include "sp/random.hpp"

namespace sp {

double Observable::bound() const {
  double b = 0.0;
  for (const auto& part : parts) b = std::max(b, std::abs(part.value));
  return b;
}

Observable make_observable(const SpModel& m,
                           std::vector<ObservablePart> parts) {
  if (parts.empty()) throw InvalidState("observable needs at least one part");
  for (const auto& part : parts) {
    if (!std::isfinite(part.value)) {
      throw InvalidState("part value must be finite");
    }
    for (const State& b : part.space.basis.members) validate_state(m, b);
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (std::abs(parts[i].value - parts[j].value) <= m.tol.tol_eig) {
        throw InvalidState("part values must be distinct");
      }
      for (const State& a : parts[i].space.basis.members) {
        for (const State& b : parts[j].space.basis.members) {
          double p = similarity(m, a, b);
          if (p > m.tol.tol_orth) {
            throw NotOrthogonal("parts " + std::to_string(i) + " and " +
                                std::to_string(j) + " overlap: p = " +
                                std::to_string(p));
          }
        }
      }
    }
  }
  std::size_t total = 0;
  for (const auto& part : parts) total += part.space.basis.size();
  if (m.linear()) {
    if (static_cast<Index>(total) != m.dimension) {
      throw AxiomViolation("part bases do not span the model");
    }
  } else {
    OrthoSet joint;
    joint.validated = true;
    for (const auto& part : parts) {
      joint.members.insert(joint.members.end(),
                           part.space.basis.members.begin(),
                           part.space.basis.members.end());
    }
    for (Index i = 0; i < m.dimension; ++i) {
      if (similarity_to_set(m, ClassicalState{i}, joint) < 1.0 - m.tol.tol_eq) {
        throw AxiomViolation("part bases do not span the model");
      }
    }
  }
  Observable obs;
  obs.parts = std::move(parts);
  return obs;
}

namespace {

// Groups sorted (value, payload) pairs whenever adjacent values are within
// tol_eig; returns cluster boundaries over the sorted order.
template <typename T>
std::vector<std::vector<T>> cluster_by_value(
    std::vector<std::pair<double, T>>& entries, double tol_eig,
    std::vector<double>* means) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::vector<T>> clusters;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i == 0 || entries[i].first - entries[i - 1].first > tol_eig) {
      clusters.emplace_back();
      means->push_back(0.0);
    }
    clusters.back().push_back(std::move(entries[i].second));
    means->back() += entries[i].first;
  }
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    (*means)[c] /= static_cast<double>(clusters[c].size());
  }
  return clusters;
}

}  // namespace

Observable make_classical_observable(const SpModel& m,
                                     const std::vector<double>& values) {
  if (m.kind != ModelKind::Classical) {
    throw InvalidState("value-table observables need a classical model");
  }
  if (static_cast<Index>(values.size()) != m.dimension) {
    throw InvalidState("one value per state required");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidState("values must be finite");
  }
  std::vector<std::pair<double, Index>> entries;
  for (Index i = 0; i < m.dimension; ++i) {
    entries.emplace_back(values[static_cast<std::size_t>(i)], i);
  }
  std::vector<double> means;
  auto clusters = cluster_by_value(entries, m.tol.tol_eig, &means);
  std::vector<ObservablePart> parts;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    std::sort(clusters[c].begin(), clusters[c].end());
    OrthoSet basis;
    basis.validated = true;
    for (Index i : clusters[c]) basis.members.push_back(ClassicalState{i});
    parts.push_back(ObservablePart{means[c], span_of(m, std::move(basis))});
  }
  return make_observable(m, std::move(parts));
}

Observable hermitian_to_observable(const SpModel& m, const Matrix& H) {
  if (!m.linear()) {
    throw InvalidState("spectral decomposition needs a linear model");
  }
  if (H.rows() != m.dimension || H.cols() != m.dimension) {
    throw InvalidState("matrix does not match the model dimension");
  }
  if ((H - Matrix(H.adjoint())).cwiseAbs().maxCoeff() > m.tol.tol_eq) {
    throw NotHermitian("matrix is not Hermitian");
  }
  // Sector purity: every cross-sector block must vanish.
  for (std::size_t s = 0; s < m.sectors.size(); ++s) {
    for (std::size_t r = 0; r < m.sectors.size(); ++r) {
      if (r == s) continue;
      if (H.block(m.offsets[r], m.offsets[s], m.sectors[r], m.sectors[s])
              .cwiseAbs()
              .maxCoeff() > m.tol.tol_eq) {
        throw InvalidState("matrix mixes sectors");
      }
    }
  }
  std::vector<std::pair<double, State>> entries;
  for (std::size_t s = 0; s < m.sectors.size(); ++s) {
    Matrix block = H.block(m.offsets[s], m.offsets[s], m.sectors[s], m.sectors[s]);
    block = (block + Matrix(block.adjoint())) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(block);
    for (Index i = 0; i < m.sectors[s]; ++i) {
      Vector v = es.eigenvectors().col(i);
      State st = m.kind == ModelKind::Hilbert
                     ? State{HilbertState{std::move(v)}}
                     : State{SectoredState{static_cast<Index>(s), std::move(v)}};
      entries.emplace_back(es.eigenvalues()[i], std::move(st));
    }
  }
  std::vector<double> means;
  auto clusters = cluster_by_value(entries, m.tol.tol_eig, &means);
  std::vector<ObservablePart> parts;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    OrthoSet basis;
    basis.validated = true;
    basis.members = std::move(clusters[c]);
    parts.push_back(ObservablePart{means[c], span_of(m, std::move(basis))});
  }
  return make_observable(m, std::move(parts));
}

Observable rescale(const Observable& obs, double c) {
  if (c == 0.0) throw InvalidState("rescaling factor must be nonzero");
  Observable out = obs;
  for (auto& part : out.parts) part.value *= c;
  return out;
}

State apply(const SpModel& m, const Observable& obs, const State& a) {
  validate_state(m, a);
  if (m.kind == ModelKind::Classical) return a;

  if (m.kind == ModelKind::Matrix) {
    double denom = 0.0;
    for (const auto& part : obs.parts) {
      denom += part.value * part.value * similarity(m, a, part.space);
    }
    if (denom <= m.tol.rho_floor) return a;
    for (Index y = 0; y < m.dimension; ++y) {
      ClassicalState cand{y};
      bool matches = true;
      for (const auto& part : obs.parts) {
        double scale = part.value * part.value / denom;
        for (const State& b : part.space.basis.members) {
          if (std::abs(similarity(m, cand, b) -
                       scale * similarity(m, a, b)) > m.tol.tol_eq) {
            matches = false;
            break;
          }
        }
        if (!matches) break;
      }
      if (matches) return cand;
    }
    throw AxiomViolation("table declares no image state for the action");
  }

  Vector v = embed(m, a);
  Vector w = Vector::Zero(m.dimension);
  for (const auto& part : obs.parts) {
    w += part.value * (part.space.projector * v);
  }
  double n2 = w.squaredNorm();
  if (n2 <= m.tol.rho_floor) return a;
  return extract(m, w / std::sqrt(n2));
}

bool fixed_point_check(const SpModel& m, const Observable& obs,
                       const State& a) {
  return states_equivalent(m, apply(m, obs, a), a);
}

double mean_value(const SpModel& m, const Observable& obs, const State& x) {
  double mean = 0.0;
  for (const auto& part : obs.parts) {
    mean += part.value * similarity(m, x, part.space);
  }
  return mean;
}

double mean_continuity_slack(const SpModel& m, const Observable& obs,
                             const State& x, const State& y) {
  double weight = 0.0;
  for (const auto& part : obs.parts) weight += std::abs(part.value);
  double defect = similarity_defect(m, x, y);
  if (defect < 0.0) defect = 0.0;
  double bound = weight * (std::sqrt(defect) + defect);
  return bound - std::abs(mean_value(m, obs, x) - mean_value(m, obs, y));
}

SignCheck check_omega_signs(const SpModel& m, const Observable& obs,
                            std::size_t j, std::size_t k, const State& a,
                            const State& b) {
  if (j >= obs.parts.size() || k >= obs.parts.size() || j == k) {
    throw InvalidState("part indices out of range");
  }
  // Values within the spectral resolution of zero define no sign; below
  // that scale the transported component drowns in projection roundoff.
  if (std::abs(obs.parts[j].value) <= m.tol.tol_eig ||
      std::abs(obs.parts[k].value) <= m.tol.tol_eig) {
    return {};
  }
  double s = obs.parts[j].value * obs.parts[k].value;
  try {
    PhaseContext ctx =
        make_phase_context(m, obs.parts[j].space, obs.parts[k].space);
    auto before = omega(m, ctx, a, b);
    if (!before) return {};
    auto after = omega(m, ctx, apply(m, obs, a), b);
    if (!after) return {};
    double expected = s > 0 ? *before : -*before;
    return {true, std::abs(*after - expected)};
  } catch (const Error&) {
    return {};
  }
}

Morphism unitary_morphism(const SpModel& m, const Matrix& U) {
  if (!m.linear()) throw InvalidState("unitary morphisms need a linear model");
  if (U.rows() != m.dimension || U.cols() != m.dimension) {
    throw InvalidState("matrix does not match the model dimension");
  }
  Matrix defect = U.adjoint() * U - Matrix::Identity(m.dimension, m.dimension);
  if (defect.cwiseAbs().maxCoeff() > m.tol.tol_eq) {
    throw InvalidState("matrix is not unitary");
  }
  for (std::size_t s = 0; s < m.sectors.size(); ++s) {
    for (std::size_t r = 0; r < m.sectors.size(); ++r) {
      if (r == s) continue;
      if (U.block(m.offsets[r], m.offsets[s], m.sectors[r], m.sectors[s])
              .cwiseAbs()
              .maxCoeff() > m.tol.tol_eq) {
        throw InvalidState("matrix mixes sectors");
      }
    }
  }
  return [m, U](const State& x) { return extract(m, U * embed(m, x)); };
}

Morphism index_morphism(const SpModel& m, std::vector<Index> image) {
  if (!m.finite()) throw InvalidState("index morphisms need a finite model");
  if (static_cast<Index>(image.size()) != m.dimension) {
    throw InvalidState("one image per state required");
  }
  std::vector<bool> seen(image.size(), false);
  for (Index v : image) {
    if (v < 0 || v >= m.dimension) throw InvalidState("image index out of range");
    if (seen[static_cast<std::size_t>(v)]) {
      throw InvalidState("image must be injective");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  return [image = std::move(image)](const State& x) -> State {
    const auto* c = std::get_if<ClassicalState>(&x);
    if (!c || c->index < 0 ||
        c->index >= static_cast<Index>(image.size())) {
      throw InvalidState("state does not fit the index morphism");
    }
    return ClassicalState{image[static_cast<std::size_t>(c->index)]};
  };
}

MorphismCheck check_morphism(const SpModel& m, const Morphism& f,
                             long samples, std::uint64_t seed) {
  MorphismCheck out;
  std::mt19937_64 rng(split_seed(seed, 0));
  for (long i = 0; i < samples; ++i) {
    State x = random_state(m, rng);
    State y = random_state(m, rng);
    double p = similarity(m, x, y);
    double pf = similarity(m, f(x), f(y));
    out.preservation_defect =
        std::max(out.preservation_defect, std::abs(pf - p));
    if (pf >= 1.0 - m.tol.tol_eq && p < 1.0 - m.tol.tol_eq) {
      out.injectivity_defect =
          std::max(out.injectivity_defect, (1.0 - m.tol.tol_eq) - p);
    }
  }
  return out;
}

InvariantBasisCheck check_invariant_basis(const SpModel& m, const Morphism& f,
                                          const OrthoSet& B,
                                          const std::vector<std::size_t>& part,
                                          long samples, std::uint64_t seed) {
  for (const State& b : B.members) {
    if (!states_equivalent(m, f(b), b)) return {};
  }
  OrthoSet selected;
  selected.validated = B.validated;
  for (std::size_t idx : part) {
    if (idx >= B.members.size()) throw InvalidState("part index out of range");
    selected.members.push_back(B.members[idx]);
  }
  Subspace X = span_of(m, std::move(selected));

  InvariantBasisCheck out;
  out.applicable = true;
  std::mt19937_64 rng(split_seed(seed, 1));
  for (long i = 0; i < samples; ++i) {
    State x = random_state(m, rng);
    double px = similarity(m, x, X);
    double pfx = similarity(m, f(x), X);
    out.defect = std::max(out.defect, std::abs(px - pfx));
    if (!X.basis.empty()) {
      State u = random_span_state(m, X.basis, rng);
      out.defect = std::max(out.defect, 1.0 - similarity(m, f(u), X));
      if (px > m.tol.rho_floor && pfx > m.tol.rho_floor) {
        State t1 = project(m, f(x), X);
        State t2 = f(project(m, x, X));
        out.defect = std::max(out.defect, 1.0 - similarity(m, t1, t2));
      }
    }
  }
  return out;
}

}  // namespace sp
