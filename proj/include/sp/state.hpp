#ifndef SP_STATE_HPP
#define SP_STATE_HPP

#include <Eigen/Dense>
#include <complex>
#include <variant>
#include <vector>

namespace sp {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// State of a classical model or of a declared-table (matrix) model:
/// an index into the finite state set.
struct ClassicalState {
  Index index = 0;
};

/// State of a Hilbert model: a unit vector of complex amplitudes.
struct HilbertState {
  Vector amplitudes;
};

/// State of a sectored model: a unit vector inside one sector.
/// Cross-sector superpositions are not states of the model.
struct SectoredState {
  Index sector = 0;
  Vector amplitudes;
};

using State = std::variant<ClassicalState, HilbertState, SectoredState>;

/// Finite list of pairwise-orthogonal, pairwise-inequivalent states.
/// `validated` records that orthogonality was checked against a model;
/// make_ortho_set and the library's own constructions set it.
struct OrthoSet {
  std::vector<State> members;
  bool validated = false;

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
};

}  // namespace sp

#endif
