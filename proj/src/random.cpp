#include "sp/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sp/errors.hpp"

namespace sp {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed ^ (stream * 0x9E3779B97F4A7C15ULL);
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

Vector gaussian_vector(Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(d);
  for (Index i = 0; i < d; ++i) {
    v[i] = Complex(normal(rng), normal(rng));
  }
  return v;
}

Vector haar_in_dim(Index d, std::mt19937_64& rng) {
  Vector v = gaussian_vector(d, rng);
  double n = v.norm();
  while (n < 1e-12) {  // astronomically unlikely; retry for safety
    v = gaussian_vector(d, rng);
    n = v.norm();
  }
  return v / n;
}

}  // namespace

State random_state(const SpModel& m, std::mt19937_64& rng) {
  if (m.finite()) {
    std::uniform_int_distribution<Index> pick(0, m.dimension - 1);
    return ClassicalState{pick(rng)};
  }
  if (m.kind == ModelKind::Hilbert) {
    return HilbertState{haar_in_dim(m.dimension, rng)};
  }
  std::uniform_int_distribution<std::size_t> pick(0, m.sectors.size() - 1);
  Index s = static_cast<Index>(pick(rng));
  return random_state_in_sector(m, s, rng);
}

State random_state_in_sector(const SpModel& m, Index sector,
                             std::mt19937_64& rng) {
  if (!m.linear()) throw InvalidState("finite models have no sectors");
  if (sector < 0 || sector >= static_cast<Index>(m.sectors.size())) {
    throw InvalidState("sector out of range");
  }
  Vector v = haar_in_dim(m.sectors[static_cast<std::size_t>(sector)], rng);
  if (m.kind == ModelKind::Hilbert) return HilbertState{std::move(v)};
  return SectoredState{sector, std::move(v)};
}

Matrix haar_unitary(Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      g(i, j) = Complex(normal(rng), normal(rng));
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  Matrix r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) {
    Complex rj = r(j, j);
    double a = std::abs(rj);
    Complex phase = a > 0 ? rj / a : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

OrthoSet random_frame(const SpModel& m, Index k, std::mt19937_64& rng) {
  if (k < 0) throw InvalidState("frame size must be non-negative");
  OrthoSet out;
  out.validated = true;
  if (k == 0) return out;

  if (m.kind == ModelKind::Classical) {
    if (k > m.dimension) throw InvalidState("frame larger than state count");
    std::vector<Index> idx(static_cast<std::size_t>(m.dimension));
    std::iota(idx.begin(), idx.end(), Index{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    for (Index i = 0; i < k; ++i) out.members.push_back(ClassicalState{idx[static_cast<std::size_t>(i)]});
    return out;
  }

  if (m.kind == ModelKind::Matrix) {
    std::vector<Index> idx(static_cast<std::size_t>(m.dimension));
    std::iota(idx.begin(), idx.end(), Index{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<Index> chosen;
    for (Index c : idx) {
      bool ok = true;
      for (Index b : chosen) {
        if (m.table(c, b) > m.tol.tol_orth || m.table(b, c) > m.tol.tol_orth) {
          ok = false;
          break;
        }
      }
      if (ok) {
        chosen.push_back(c);
        if (static_cast<Index>(chosen.size()) == k) break;
      }
    }
    if (static_cast<Index>(chosen.size()) < k) {
      throw InvalidState("table admits no orthogonal set of the requested size");
    }
    for (Index c : chosen) out.members.push_back(ClassicalState{c});
    return out;
  }

  if (k > m.dimension) throw InvalidState("frame larger than total dimension");
  // Columns of per-sector Haar unitaries give sector-pure orthonormal
  // vectors; a random subset of k of them is a Haar-random frame.
  std::vector<std::pair<Index, Index>> slots;  // (sector, column)
  for (std::size_t s = 0; s < m.sectors.size(); ++s) {
    for (Index c = 0; c < m.sectors[s]; ++c) {
      slots.emplace_back(static_cast<Index>(s), c);
    }
  }
  std::shuffle(slots.begin(), slots.end(), rng);
  std::vector<Matrix> units(m.sectors.size());
  for (Index i = 0; i < k; ++i) {
    auto [s, c] = slots[static_cast<std::size_t>(i)];
    Matrix& u = units[static_cast<std::size_t>(s)];
    if (u.size() == 0) u = haar_unitary(m.sectors[static_cast<std::size_t>(s)], rng);
    Vector col = u.col(c);
    if (m.kind == ModelKind::Hilbert) {
      out.members.push_back(HilbertState{std::move(col)});
    } else {
      out.members.push_back(SectoredState{s, std::move(col)});
    }
  }
  return out;
}

State random_span_state(const SpModel& m, const OrthoSet& A,
                        std::mt19937_64& rng) {
  if (A.empty()) throw InvalidState("cannot sample from an empty span");
  if (m.finite()) {
    std::uniform_int_distribution<std::size_t> pick(0, A.members.size() - 1);
    return A.members[pick(rng)];
  }
  if (m.kind == ModelKind::Hilbert) {
    Vector coeff = haar_in_dim(static_cast<Index>(A.members.size()), rng);
    Vector v = Vector::Zero(m.dimension);
    for (std::size_t i = 0; i < A.members.size(); ++i) {
      v += coeff[static_cast<Index>(i)] * embed(m, A.members[i]);
    }
    return extract(m, v / v.norm());
  }
  // Sectored: combine only members of one sector, chosen uniformly among
  // the sectors represented in A.
  std::vector<Index> present;
  for (const State& a : A.members) {
    Index s = std::get<SectoredState>(a).sector;
    if (std::find(present.begin(), present.end(), s) == present.end()) {
      present.push_back(s);
    }
  }
  std::uniform_int_distribution<std::size_t> pick(0, present.size() - 1);
  Index s = present[pick(rng)];
  std::vector<const SectoredState*> members;
  for (const State& a : A.members) {
    const auto& ss = std::get<SectoredState>(a);
    if (ss.sector == s) members.push_back(&ss);
  }
  Vector coeff = haar_in_dim(static_cast<Index>(members.size()), rng);
  Vector v = Vector::Zero(m.sectors[static_cast<std::size_t>(s)]);
  for (std::size_t i = 0; i < members.size(); ++i) {
    v += coeff[static_cast<Index>(i)] * members[i]->amplitudes;
  }
  return SectoredState{s, v / v.norm()};
}

State perturb_state(const SpModel& m, const State& x, double sigma,
                    std::mt19937_64& rng) {
  validate_state(m, x);
  if (m.finite()) return x;
  if (m.kind == ModelKind::Hilbert) {
    const Vector& v = std::get<HilbertState>(x).amplitudes;
    Vector w = v + sigma * gaussian_vector(v.size(), rng);
    return HilbertState{w / w.norm()};
  }
  const auto& s = std::get<SectoredState>(x);
  Vector w = s.amplitudes + sigma * gaussian_vector(s.amplitudes.size(), rng);
  return SectoredState{s.sector, w / w.norm()};
}

}  // namespace sp
