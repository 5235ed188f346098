#include "sp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sp/errors.hpp"

namespace sp {

OrthoCheck is_ortho_set(const SpModel& m, const std::vector<State>& states) {
  OrthoCheck oc;
  for (const State& s : states) validate_state(m, s);
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      double p = similarity(m, states[i], states[j]);
      oc.worst_pair = std::max(oc.worst_pair, p);
    }
  }
  oc.ok = oc.worst_pair <= m.tol.tol_orth;
  return oc;
}

OrthoSet make_ortho_set(const SpModel& m, std::vector<State> states) {
  OrthoCheck oc = is_ortho_set(m, states);
  if (!oc.ok) {
    throw NotOrthoSet("members overlap: worst pair similarity " +
                      std::to_string(oc.worst_pair));
  }
  return OrthoSet{std::move(states), true};
}

namespace {

void ensure_validated(const SpModel& m, const OrthoSet& A) {
  if (A.validated) return;
  OrthoCheck oc = is_ortho_set(m, A.members);
  if (!oc.ok) {
    throw NotOrthoSet("members overlap: worst pair similarity " +
                      std::to_string(oc.worst_pair));
  }
}

Index index_of(const State& s) { return std::get<ClassicalState>(s).index; }

}  // namespace

Subspace span_of(const SpModel& m, OrthoSet basis) {
  ensure_validated(m, basis);
  basis.validated = true;
  Subspace X;
  if (m.linear()) {
    X.projector = Matrix::Zero(m.dimension, m.dimension);
    for (const State& a : basis.members) {
      Vector e = embed(m, a);
      X.projector += e * e.adjoint();
    }
  }
  X.basis = std::move(basis);
  return X;
}

double similarity(const SpModel& m, const State& x, const Subspace& X) {
  if (m.finite()) return similarity_to_set(m, x, X.basis);
  Vector v = embed(m, x);
  return v.dot(X.projector * v).real();
}

bool member(const SpModel& m, const State& x, const Subspace& X) {
  return similarity(m, x, X) >= 1.0 - m.tol.tol_eq;
}

State o_project(const SpModel& m, const State& x, const OrthoSet& A) {
  ensure_validated(m, A);
  validate_state(m, x);
  OrthoSet checked{A.members, true};
  double pA = similarity_to_set(m, x, checked);
  if (pA >= 1.0 - m.tol.tol_eq) {
    throw AlreadyInSubspace("p(x, A) = " + std::to_string(pA));
  }

  if (m.kind == ModelKind::Classical) return x;

  if (m.kind == ModelKind::Matrix) {
    Index xi = index_of(x);
    for (Index y = 0; y < m.dimension; ++y) {
      bool orthogonal = true;
      for (const State& a : A.members) {
        if (m.table(y, index_of(a)) > m.tol.tol_orth) {
          orthogonal = false;
          break;
        }
      }
      if (!orthogonal) continue;
      if (std::abs(pA + m.table(xi, y) - 1.0) <= m.tol.tol_eq) {
        return ClassicalState{y};
      }
    }
    throw AxiomViolation("table declares no residual witness for state " +
                         std::to_string(xi));
  }

  Vector v = embed(m, x);
  std::vector<Vector> basis;
  basis.reserve(A.members.size());
  for (const State& a : A.members) basis.push_back(embed(m, a));
  Vector r = v;
  for (const Vector& e : basis) r -= e * e.dot(v);
  for (const Vector& e : basis) r -= e * e.dot(r);  // re-orthogonalize
  double n = r.norm();
  if (!(n > 0.0)) {
    throw AlreadyInSubspace("residual vanished");
  }
  return extract(m, r / n);
}

State cascade_o_project(const SpModel& m, const State& x, const OrthoSet& A) {
  ensure_validated(m, A);
  State y = x;
  for (const State& a : A.members) {
    OrthoSet single{{a}, true};
    y = o_project(m, y, single);
  }
  return y;
}

State project(const SpModel& m, const State& x, const Subspace& X) {
  validate_state(m, x);
  double pX = similarity(m, x, X);
  if (pX <= m.tol.rho_floor) {
    throw OrthogonalToSubspace("p(x, X) = " + std::to_string(pX));
  }
  if (m.kind == ModelKind::Classical) return x;
  if (m.kind == ModelKind::Matrix) {
    Index xi = index_of(x);
    std::vector<Index> span;
    for (Index z = 0; z < m.dimension; ++z) {
      if (similarity_to_set(m, ClassicalState{z}, X.basis) >= 1.0 - m.tol.tol_eq) {
        span.push_back(z);
      }
    }
    for (Index y : span) {
      if (std::abs(m.table(xi, y) - pX) > m.tol.tol_eq) continue;
      bool factorizes = true;
      for (Index z : span) {
        if (std::abs(m.table(xi, z) - m.table(xi, y) * m.table(y, z)) >
            m.tol.tol_eq) {
          factorizes = false;
          break;
        }
      }
      if (factorizes) return ClassicalState{y};
    }
    throw AxiomViolation("table declares no projection witness for state " +
                         std::to_string(xi));
  }
  Vector w = X.projector * embed(m, x);
  return extract(m, w / w.norm());
}

OrthoSet extend_to_basis(const SpModel& m, const OrthoSet& A,
                         const std::optional<Subspace>& within) {
  ensure_validated(m, A);
  if (within) {
    for (const State& a : A.members) {
      if (!member(m, a, *within)) {
        throw InvalidState("set member lies outside the target subspace");
      }
    }
  }

  if (m.finite()) {
    std::vector<State> scan;
    if (within) {
      scan = within->basis.members;
    } else {
      for (Index i = 0; i < m.dimension; ++i) scan.push_back(ClassicalState{i});
    }
    OrthoSet out{A.members, true};
    Index cap = m.dimension + 1;
    for (Index guard = 0; guard < cap; ++guard) {
      const State* missing = nullptr;
      for (const State& x : scan) {
        if (similarity_to_set(m, x, out) < 1.0 - m.tol.tol_eq) {
          missing = &x;
          break;
        }
      }
      if (!missing) return out;
      out.members.push_back(o_project(m, *missing, out));
      if (static_cast<Index>(out.members.size()) > m.dimension) {
        throw AxiomViolation("basis completion exceeded the state count");
      }
    }
    throw AxiomViolation("basis completion did not terminate");
  }

  std::vector<Vector> kept;
  kept.reserve(static_cast<std::size_t>(m.dimension));
  for (const State& a : A.members) kept.push_back(embed(m, a));
  OrthoSet out{A.members, true};

  auto try_candidate = [&](const Vector& c) {
    Vector r = c;
    for (const Vector& e : kept) r -= e * e.dot(c);
    for (const Vector& e : kept) r -= e * e.dot(r);
    if (r.squaredNorm() > m.tol.tol_orth) {
      r /= r.norm();
      kept.push_back(r);
      out.members.push_back(extract(m, r));
    }
  };

  if (within) {
    for (const State& b : within->basis.members) try_candidate(embed(m, b));
  } else {
    for (Index k = 0; k < m.dimension; ++k) {
      try_candidate(embed(m, canonical_state(m, k)));
    }
  }
  return out;
}

bool dimension_check(const OrthoSet& A, const OrthoSet& B) {
  return A.size() == B.size();
}

Subspace complement(const SpModel& m, const Subspace& X) {
  OrthoSet full = extend_to_basis(m, X.basis);
  OrthoSet added;
  added.validated = true;
  added.members.assign(full.members.begin() +
                           static_cast<std::ptrdiff_t>(X.basis.size()),
                       full.members.end());
  return span_of(m, std::move(added));
}

Subspace ortho_sum(const SpModel& m, const Subspace& X, const Subspace& Y) {
  double worst = 0.0;
  for (const State& a : X.basis.members) {
    for (const State& b : Y.basis.members) {
      worst = std::max(worst, similarity(m, a, b));
    }
  }
  if (worst > m.tol.tol_orth) {
    throw NotOrthogonal("subspaces overlap: worst cross pair " +
                        std::to_string(worst));
  }
  OrthoSet joint;
  joint.validated = true;
  joint.members = X.basis.members;
  joint.members.insert(joint.members.end(), Y.basis.members.begin(),
                       Y.basis.members.end());
  return span_of(m, std::move(joint));
}

Subspace intersection(const SpModel& m, const Subspace& X, const Subspace& Y) {
  OrthoSet basis;
  basis.validated = true;

  if (m.kind == ModelKind::Classical) {
    for (Index i = 0; i < m.dimension; ++i) {
      ClassicalState s{i};
      if (similarity_to_set(m, s, X.basis) >= 1.0 - m.tol.tol_eq &&
          similarity_to_set(m, s, Y.basis) >= 1.0 - m.tol.tol_eq) {
        basis.members.push_back(s);
      }
    }
    return span_of(m, std::move(basis));
  }

  if (m.kind == ModelKind::Matrix) {
    std::vector<Index> chosen;
    for (Index i = 0; i < m.dimension; ++i) {
      ClassicalState s{i};
      if (similarity_to_set(m, s, X.basis) < 1.0 - m.tol.tol_eq) continue;
      if (similarity_to_set(m, s, Y.basis) < 1.0 - m.tol.tol_eq) continue;
      bool orthogonal = true;
      for (Index b : chosen) {
        if (m.table(i, b) > m.tol.tol_orth) {
          orthogonal = false;
          break;
        }
      }
      if (orthogonal) {
        chosen.push_back(i);
        basis.members.push_back(s);
      }
    }
    return span_of(m, std::move(basis));
  }

  for (std::size_t s = 0; s < m.sectors.size(); ++s) {
    Index d = m.sectors[s];
    Index off = m.offsets[s];
    Matrix px = X.projector.block(off, off, d, d);
    Matrix py = Y.projector.block(off, off, d, d);
    Matrix prod = px * py * px;
    prod = (prod + Matrix(prod.adjoint())) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(prod);
    for (Index i = 0; i < d; ++i) {
      if (es.eigenvalues()[i] >= 1.0 - m.tol.tol_eig) {
        Vector v = es.eigenvectors().col(i);
        if (m.kind == ModelKind::Hilbert) {
          basis.members.push_back(HilbertState{std::move(v)});
        } else {
          basis.members.push_back(
              SectoredState{static_cast<Index>(s), std::move(v)});
        }
      }
    }
  }
  return span_of(m, std::move(basis));
}

bool subspace_leq(const SpModel& m, const Subspace& X, const Subspace& Y) {
  for (const State& a : X.basis.members) {
    if (similarity(m, a, Y) < 1.0 - m.tol.tol_eq) return false;
  }
  return true;
}

}  // namespace sp
