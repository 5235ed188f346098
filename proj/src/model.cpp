#include "sp/model.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "sp/errors.hpp"

namespace sp {

void validate(const Tolerances& tol) {
  const double fields[] = {tol.tol_eq, tol.tol_orth, tol.rho_floor,
                           tol.tol_eig};
  for (double f : fields) {
    if (!(f > 0.0) || !(f < 1e-3)) {
      throw InvalidState("tolerance out of range (0, 1e-3): " +
                         std::to_string(f));
    }
  }
}

SpModel make_classical(Index n, Tolerances tol) {
  if (n < 1) throw EmptyModel("classical model needs at least one state");
  validate(tol);
  SpModel m;
  m.kind = ModelKind::Classical;
  m.dimension = n;
  m.tol = tol;
  return m;
}

SpModel make_hilbert(Index d, Tolerances tol) {
  if (d < 1) throw EmptyModel("hilbert model needs dimension >= 1");
  validate(tol);
  SpModel m;
  m.kind = ModelKind::Hilbert;
  m.dimension = d;
  m.sectors = {d};
  m.offsets = {0};
  m.tol = tol;
  return m;
}

SpModel make_sectored(const std::vector<Index>& dims, Tolerances tol) {
  if (dims.empty()) throw EmptyModel("sectored model needs at least one sector");
  validate(tol);
  SpModel m;
  m.kind = ModelKind::Sectored;
  m.sectors = dims;
  Index total = 0;
  for (Index d : dims) {
    if (d < 1) throw EmptyModel("sector dimensions must be >= 1");
    m.offsets.push_back(total);
    total += d;
  }
  m.dimension = total;
  m.tol = tol;
  return m;
}

SpModel make_matrix(Eigen::MatrixXd table, Tolerances tol) {
  if (table.rows() < 1) throw EmptyModel("matrix model needs at least one state");
  if (table.rows() != table.cols()) {
    throw InvalidState("similarity table must be square");
  }
  validate(tol);
  SpModel m;
  m.kind = ModelKind::Matrix;
  m.dimension = table.rows();
  m.table = std::move(table);
  m.tol = tol;
  return m;
}

namespace {

const ClassicalState& as_index(const SpModel& m, const State& x) {
  const auto* c = std::get_if<ClassicalState>(&x);
  if (!c) throw InvalidState("state kind does not fit a finite model");
  if (c->index < 0 || c->index >= m.dimension) {
    throw InvalidState("state index out of range");
  }
  return *c;
}

// Returns (sector, amplitude vector reference) after range checks.
std::pair<Index, const Vector*> as_linear(const SpModel& m, const State& x) {
  if (m.kind == ModelKind::Hilbert) {
    const auto* h = std::get_if<HilbertState>(&x);
    if (!h) throw InvalidState("state kind does not fit a hilbert model");
    if (h->amplitudes.size() != m.dimension) {
      throw InvalidState("amplitude vector has wrong dimension");
    }
    return {0, &h->amplitudes};
  }
  const auto* s = std::get_if<SectoredState>(&x);
  if (!s) throw InvalidState("state kind does not fit a sectored model");
  if (s->sector < 0 || s->sector >= static_cast<Index>(m.sectors.size())) {
    throw InvalidState("sector out of range");
  }
  if (s->amplitudes.size() != m.sectors[static_cast<std::size_t>(s->sector)]) {
    throw InvalidState("amplitude vector does not match its sector dimension");
  }
  return {s->sector, &s->amplitudes};
}

double table_value(const SpModel& m, Index i, Index j) {
  if (m.kind == ModelKind::Classical) return i == j ? 1.0 : 0.0;
  return m.table(i, j);
}

}  // namespace

void validate_state(const SpModel& m, const State& x) {
  if (m.finite()) {
    as_index(m, x);
    return;
  }
  auto [sector, v] = as_linear(m, x);
  (void)sector;
  if (std::abs(v->squaredNorm() - 1.0) > m.tol.tol_eq) {
    throw InvalidState("state vector is not unit norm");
  }
}

State canonical_state(const SpModel& m, Index k) {
  if (k < 0 || k >= m.dimension) throw InvalidState("canonical index out of range");
  if (m.finite()) return ClassicalState{k};
  if (m.kind == ModelKind::Hilbert) {
    Vector v = Vector::Zero(m.dimension);
    v[k] = Complex(1.0, 0.0);
    return HilbertState{std::move(v)};
  }
  // Locate the sector containing embedded coordinate k.
  for (std::size_t s = 0; s < m.sectors.size(); ++s) {
    Index off = m.offsets[s];
    if (k < off + m.sectors[s]) {
      Vector v = Vector::Zero(m.sectors[s]);
      v[k - off] = Complex(1.0, 0.0);
      return SectoredState{static_cast<Index>(s), std::move(v)};
    }
  }
  throw InvalidState("canonical index out of range");
}

Vector embed(const SpModel& m, const State& x) {
  if (m.finite()) throw InvalidState("finite models have no embedding");
  auto [sector, v] = as_linear(m, x);
  if (m.kind == ModelKind::Hilbert) return *v;
  Vector out = Vector::Zero(m.dimension);
  out.segment(m.offsets[static_cast<std::size_t>(sector)], v->size()) = *v;
  return out;
}

State extract(const SpModel& m, const Vector& v) {
  if (m.finite()) throw InvalidState("finite models have no embedding");
  if (v.size() != m.dimension) throw InvalidState("embedded vector has wrong dimension");
  if (m.kind == ModelKind::Hilbert) return HilbertState{v};
  Index best = -1;
  double rest = 0.0;
  double best_norm = -1.0;
  for (std::size_t s = 0; s < m.sectors.size(); ++s) {
    double ns = v.segment(m.offsets[s], m.sectors[s]).squaredNorm();
    if (ns > best_norm) {
      if (best >= 0) rest += best_norm;
      best_norm = ns;
      best = static_cast<Index>(s);
    } else {
      rest += ns;
    }
  }
  if (rest > m.tol.tol_orth) {
    throw InvalidState("embedded vector mixes sectors");
  }
  return SectoredState{best,
                       v.segment(m.offsets[static_cast<std::size_t>(best)],
                                 m.sectors[static_cast<std::size_t>(best)])};
}

double similarity(const SpModel& m, const State& x, const State& y) {
  if (m.finite()) {
    return table_value(m, as_index(m, x).index, as_index(m, y).index);
  }
  auto [sx, vx] = as_linear(m, x);
  auto [sy, vy] = as_linear(m, y);
  if (sx != sy) return 0.0;
  return std::norm(vx->dot(*vy));
}

double similarity_defect(const SpModel& m, const State& x, const State& y) {
  if (m.finite()) {
    return 1.0 - table_value(m, as_index(m, x).index, as_index(m, y).index);
  }
  auto [sx, vx] = as_linear(m, x);
  auto [sy, vy] = as_linear(m, y);
  if (sx != sy) return 1.0;
  // Squared norm of y's residual off x: equals 1 - |<x,y>|^2 for unit
  // vectors, but stays accurate when the overlap is within rounding of 1.
  Vector r = *vy - *vx * vx->dot(*vy);
  return r.squaredNorm();
}

double similarity_to_set(const SpModel& m, const State& x, const OrthoSet& A) {
  if (!A.validated) {
    for (const State& a : A.members) validate_state(m, a);
    for (std::size_t i = 0; i < A.members.size(); ++i) {
      for (std::size_t j = i + 1; j < A.members.size(); ++j) {
        double p = similarity(m, A.members[i], A.members[j]);
        if (p > m.tol.tol_orth) {
          throw NotOrthoSet("set members " + std::to_string(i) + " and " +
                            std::to_string(j) + " overlap: p = " +
                            std::to_string(p));
        }
      }
    }
  }
  double total = 0.0;
  for (const State& a : A.members) total += similarity(m, x, a);
  return total;
}

bool states_equivalent(const SpModel& m, const State& x, const State& y) {
  return similarity(m, x, y) >= 1.0 - m.tol.tol_eq;
}

}  // namespace sp
