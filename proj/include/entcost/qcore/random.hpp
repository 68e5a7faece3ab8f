#pragma once

#include "entcost/qcore/types.hpp"

#include <cstdint>
#include <random>

namespace entcost::qcore {

/// Entries are independent standard complex Gaussians (real and imaginary
/// parts each N(0,1)), the ensemble behind Hilbert-Schmidt sampling.
CMat ginibre(int rows, int cols, std::mt19937_64& rng);

CMat haar_unitary(int d, std::mt19937_64& rng);

/// rho = G G^dag / tr(G G^dag) with G a d x rank Ginibre matrix, d = dimA*dimB.
BipartiteState random_state(int dim_a, int dim_b, int rank, std::uint64_t seed);

/// Splits a root seed into independent per-index streams.
std::uint64_t split_seed(std::uint64_t root, std::uint64_t index);

} // namespace entcost::qcore
