#pragma once

// Counter-based seeding and Haar samplers on the classical compact groups.

#include <cstdint>
#include <random>

#include "symdom/types.hpp"

namespace symdom {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
// Independent stream for (base seed, purpose tag, trial index); no shared state.
Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

CMat haar_unitary(int n, Rng& rng);
Mat haar_orthogonal(int n, Rng& rng);
Mat haar_special_orthogonal(int n, Rng& rng);
// Uniform point of the unit ball of C^n.
CVec uniform_complex_ball(int n, double radius, Rng& rng);

}  // namespace symdom
