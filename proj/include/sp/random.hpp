#ifndef SP_RANDOM_HPP
#define SP_RANDOM_HPP

#include <cstdint>
#include <random>

#include "sp/model.hpp"

namespace sp {

/// Derives an independent 64-bit stream seed (splitmix64 of seed ^ stream).
/// Keeps batch results independent of batch count and evaluation order.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream);

/// Uniform state of the model: Haar for linear kinds (normalized i.i.d.
/// standard complex Gaussians; sector chosen uniformly for sectored models),
/// uniform index for finite kinds.
State random_state(const SpModel& m, std::mt19937_64& rng);

/// Haar state inside a fixed sector of a linear model.
State random_state_in_sector(const SpModel& m, Index sector,
                             std::mt19937_64& rng);

/// Haar-distributed d x d unitary (QR of a complex Gaussian matrix with the
/// R-diagonal phase correction).
Matrix haar_unitary(Index d, std::mt19937_64& rng);

/// k pairwise-orthogonal states: random columns of per-sector Haar unitaries
/// (linear kinds) or distinct indices with pairwise zero table entries
/// (finite kinds). Throws InvalidState if k exceeds what the model supports.
OrthoSet random_frame(const SpModel& m, Index k, std::mt19937_64& rng);

/// Unit-norm random combination of the members of A (linear kinds):
/// a state of the closed span. Throws InvalidState on empty A. Members of
/// different sectors are combined only within one uniformly chosen sector.
State random_span_state(const SpModel& m, const OrthoSet& A,
                        std::mt19937_64& rng);

/// `x` nudged by complex Gaussian noise of scale `sigma`, renormalized.
/// Finite kinds return x unchanged.
State perturb_state(const SpModel& m, const State& x, double sigma,
                    std::mt19937_64& rng);

}  // namespace sp

#endif
