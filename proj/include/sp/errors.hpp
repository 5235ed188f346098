#ifndef SP_ERRORS_HPP
#define SP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A state payload does not fit the model (wrong kind, dimension, sector,
/// index range, or norm), or a configuration value is out of range.
struct InvalidState : Error { using Error::Error; };

/// A model was requested with no states (n < 1, d < 1, empty sector list).
struct EmptyModel : Error { using Error::Error; };

/// A state list violates pairwise orthogonality (or repeats a state).
struct NotOrthoSet : Error { using Error::Error; };

/// o_project called on a state already inside the target span.
struct AlreadyInSubspace : Error { using Error::Error; };

/// A declared model fails to provide a state an axiom promises to exist.
struct AxiomViolation : Error { using Error::Error; };

/// Projection requested onto a subspace the state has (near-)zero
/// similarity to.
struct OrthogonalToSubspace : Error { using Error::Error; };

/// Orthogonal sum of two subspaces that are not orthogonal.
struct NotOrthogonal : Error { using Error::Error; };

/// Matrix handed to the spectral bridge is not Hermitian.
struct NotHermitian : Error { using Error::Error; };

/// Relative phase requested where it is undefined (degenerate overlap or a
/// model without phase structure).
struct PhaseUndefined : Error { using Error::Error; };

/// Fixture file is not valid JSON.
struct ParseError : Error { using Error::Error; };

/// Fixture JSON parses but does not match the documented schema.
struct SchemaError : Error { using Error::Error; };

}  // namespace sp

#endif
