#pragma once

// Seeded random instances for property checks over the discrete module.

#include <cstddef>

#include "qdl/discrete_hilbert.hpp"
#include "qdl/rng.hpp"

namespace qdl {

// G G* / tr(G G*) with G a complex Gaussian d x d matrix.
DensityMatrix random_density_matrix(std::size_t d, UniformStream& rng);

// Diagonal density matrix with Dirichlet(1, ..., 1) weights.
DensityMatrix random_ensemble(std::size_t d, UniformStream& rng);

DiscreteDistribution random_distribution(std::size_t d, UniformStream& rng);

// Q factor of a complex Gaussian matrix, column phases fixed by R's diagonal.
UnitaryBasis random_unitary(std::size_t d, UniformStream& rng);

// Row-stochastic matrix: row j is P(observed | true s_j).
Eigen::MatrixXd random_stochastic(std::size_t d, UniformStream& rng);

}  // namespace qdl
