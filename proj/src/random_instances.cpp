#include "qdl/random_instances.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qdl {

namespace {

CMatrix complex_gaussian(std::size_t d, UniformStream& rng) {
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index l = 0; l < n; ++l) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(j, l) = Complex(re, im);
    }
  return g;
}

}  // namespace

DensityMatrix random_density_matrix(std::size_t d, UniformStream& rng) {
  const CMatrix g = complex_gaussian(d, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

DiscreteDistribution random_distribution(std::size_t d, UniformStream& rng) {
  std::vector<double> p(d);
  double total = 0.0;
  for (auto& x : p) {
    x = -std::log(rng.uniform());
    total += x;
  }
  for (auto& x : p) x /= total;
  // absorb the last ulp of round-off so the sum is 1 to machine precision
  double head = 0.0;
  for (std::size_t j = 0; j + 1 < d; ++j) head += p[j];
  p.back() = std::max(0.0, 1.0 - head);
  return DiscreteDistribution(std::move(p));
}

DensityMatrix random_ensemble(std::size_t d, UniformStream& rng) {
  return ensemble_from_distribution(random_distribution(d, rng));
}

UnitaryBasis random_unitary(std::size_t d, UniformStream& rng) {
  const CMatrix g = complex_gaussian(d, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return UnitaryBasis(std::move(q));
}

Eigen::MatrixXd random_stochastic(std::size_t d, UniformStream& rng) {
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double total = 0.0;
    for (Eigen::Index o = 0; o < n; ++o) {
      m(j, o) = -std::log(rng.uniform());
      total += m(j, o);
    }
    m.row(j) /= total;
  }
  return m;
}

}  // namespace qdl
